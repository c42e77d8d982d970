#pragma once

#include <string>
#include <vector>

#include "regpat/counter_machine.hpp"
#include "regpat/pattern.hpp"
#include "regpat/reduction.hpp"

namespace regpat {

struct VerifyOptions {
    std::size_t max_len = 20;
    /// Stratum (a): every word up to min(max_len, exhaustive_len).
    std::size_t exhaustive_len = 14;
    /// Stratum (b): v0u0v for corpus words u with |u| <= min(corpus_len, max_len - 12).
    std::size_t corpus_len = 35;
};

struct Violation {
    std::string check;  // L1, L2 or GAP
    Word word;
    std::string detail;
};

struct VerifyReport {
    VerifyOptions options;
    std::size_t exhaustive_bound = 0;
    std::size_t corpus_bound = 0;
    std::size_t exhaustive_words = 0;
    std::size_t corpus_words = 0;
    std::vector<Violation> violations;
    /// Checked words in L_E(alpha) \ L_E(beta), shortlex order.
    std::vector<Word> gap;

    bool ok() const noexcept { return violations.empty(); }
    /// One line naming both strata and their sizes.
    std::string strata() const;
};

/// Candidate middles u: encodings of short (possibly invalid) computations and
/// of bounded accepting computations, plus single edits of each (symbol
/// deletion/insertion, configuration deletion/duplication, state renumbering,
/// counter changes). Only words with |u| <= max_u_len and no ### are kept.
/// Shortlex order.
std::vector<Word> mutation_corpus(const TwoCounterAutomaton& a, std::size_t max_u_len);

/// v0u0v when `w` has that shape with |u|_### = 0.
std::optional<Word> framed_middle(std::string_view w);

/// Checks, over both strata:
///   L1   w in L(beta)  implies w in L(alpha)
///   L2   w in L(alpha) and w not v0u0v  implies w in L(beta)
///   GAP  w in L(alpha) \ L(beta)  iff  w = v0u0v with u in ValC(A)
VerifyReport verify_reduction(const TwoCounterAutomaton& a, const ConstrainedPattern& alpha,
                              const ConstrainedPattern& beta, const VerifyOptions& options);

VerifyReport verify_reduction(const TwoCounterAutomaton& a, const VerifyOptions& options);

}  // namespace regpat
