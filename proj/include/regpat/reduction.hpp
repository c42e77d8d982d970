#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "regpat/counter_machine.hpp"
#include "regpat/pattern.hpp"

namespace regpat {

/// Which rule of the construction produced a predicate.
struct Provenance {
    enum class Rule { Structure, NonFinalEnd, CounterChange, InvalidTransition };

    Rule rule = Rule::Structure;
    std::size_t state = 0;   // NonFinalEnd
    int counter = 1;         // CounterChange: 1 or 2
    bool increment = true;   // CounterChange
    Transition signature{};  // InvalidTransition

    /// "structure", "nonfinal(q1)", "counter(2,dec)", "invalid(q0,1,1,q1,+1,0)".
    std::string tag() const;
    /// Inverse of tag(); throws ParseError.
    static Provenance parse(std::string_view tag);

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Terminal-free constrained pattern over fresh variables.
struct Predicate {
    Provenance provenance;
    Pattern gamma;
    ConstraintMap constraints;

    ConstrainedPattern constrained() const { return ConstrainedPattern(gamma, constraints); }
};

/// 0###0
Word delimiter();

/// Constraint text over {0,#}; for a larger alphabet it is intersected with (0|#)*.
std::string restrict_to_binary(std::string_view text, const Alphabet& alphabet);

/// (##00*#0^5(00)*#0^5(00)*)+##
Dfa good_structure_dfa(const Alphabet& alphabet);

/// x_v a1 x_v yt. Throws AlphabetError when 0 or # is missing.
ConstrainedPattern build_alpha(const Alphabet& alphabet = Alphabet::binary());

/// L_E(alpha) as one automaton: L(a1)L(yt) + v L(a1) v L(yt).
Dfa alpha_language_dfa(const Alphabet& alphabet = Alphabet::binary());

/// Malformed-structure predicate. Variables use role names (y); build_beta renames them.
/// State blocks after the first are bounded by `state_count`, and the first
/// block must encode `initial`.
Predicate predicate_structure(std::size_t state_count, std::size_t initial = 0,
                              const Alphabet& alphabet = Alphabet::binary());

/// Ends-in-non-final-state predicate for q. Throws Error when q is final or out of range.
Predicate predicate_nonfinal(const TwoCounterAutomaton& a, std::size_t q,
                             const Alphabet& alphabet = Alphabet::binary());

/// Counter-change predicates: ctr1-inc, ctr1-dec, ctr2-inc, ctr2-dec.
std::vector<Predicate> predicates_counter_change(const Alphabet& alphabet = Alphabet::binary());

/// Invalid-transition predicate for one signature. Throws Error for a signature that decrements a
/// counter tested to be zero.
Predicate predicate_invalid_transition(const Transition& signature, const Alphabet& alphabet = Alphabet::binary());

/// Invalid-transition predicates: every well-formed signature absent from the machine, in
/// lexicographic (j, c1, c2, k, r1, r2) order.
std::vector<Predicate> predicates_invalid_transition(const TwoCounterAutomaton& a,
                                                     const Alphabet& alphabet = Alphabet::binary());

struct RuleCounts {
    std::size_t structure = 0;
    std::size_t nonfinal = 0;
    std::size_t counter_change = 0;
    std::size_t invalid_transition = 0;
};

struct ReductionOutput {
    ConstrainedPattern alpha;
    ConstrainedPattern beta;
    /// With their final variable names (p<k>_<role>).
    std::vector<Predicate> predicates;
    Word v;
    std::size_t mu = 0;
    RuleCounts counts;
    std::size_t states = 0;
    std::size_t stored_transitions = 0;
};

/// All predicates in rule order, variables renamed to p<k>_<role>, wrapped
/// as w<k> gamma_k w<k>, followed by zt.
ReductionOutput build_beta(const TwoCounterAutomaton& a, const Alphabet& alphabet = Alphabet::binary());

/// Builds beta from predicates that already carry their final names. Throws
/// Error when a variable is shared between predicates or clashes with w<k>/zt.
ConstrainedPattern assemble_beta(const std::vector<Predicate>& predicates, const Alphabet& alphabet);

/// w = v m v with m a non-empty word of L_E(gamma).
bool predicate_matches(const Predicate& p, std::string_view w);

/// One emptiness fact: a concatenation of constraint languages (erased
/// variables dropped) intersected with L_G and with 0 L_G 0.
struct SideCondition {
    std::string predicate;   // provenance tag
    std::string expression;  // e.g. "L(y1)L(x1)L(x1)"
    bool empty_with_lg = false;
    bool empty_with_framed_lg = false;
};

/// The six conditions per counter-change predicate (one or two of y1,y2,y3 kept).
std::vector<SideCondition> counter_change_side_conditions(const Alphabet& alphabet = Alphabet::binary());

/// Every proper subset of y1..y5 kept (x blocks always kept) for each invalid-transition
/// predicate of `a`.
std::vector<SideCondition> invalid_transition_erasure_conditions(const TwoCounterAutomaton& a,
                                                                 const Alphabet& alphabet = Alphabet::binary());

/// Over-approximation of the erasure of `p`: each variable occurrence is an
/// independent copy of its language; variables outside `kept` that are in
/// `erasable` become the empty word.
Dfa erasure_language(const Predicate& p, const std::vector<std::string>& erasable,
                     const std::vector<std::string>& kept);

/// predicates.json: v, mu, the mu formula, and per predicate its index, tag,
/// pattern text and constraint texts.
std::string predicates_to_json(const ReductionOutput& out);
/// Throws ParseError.
std::vector<Predicate> predicates_from_json(std::string_view text, const Alphabet& alphabet);

}  // namespace regpat
