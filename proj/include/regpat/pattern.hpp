#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "regpat/alphabet.hpp"
#include "regpat/automata.hpp"

namespace regpat {

/// E: variables may be erased. NE: every variable maps to a non-empty word.
enum class Mode { E, NE };

struct Terminal {
    char symbol;
    friend bool operator==(const Terminal&, const Terminal&) = default;
};

struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternItem = std::variant<Terminal, Variable>;

/// Non-empty word over terminals and variables.
class Pattern {
public:
    /// Throws Error on an empty item list or an empty variable name.
    explicit Pattern(std::vector<PatternItem> items);

    const std::vector<PatternItem>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }

    /// Distinct variables in order of first occurrence.
    std::vector<std::string> variables() const;
    bool is_terminal_free() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::vector<PatternItem> items_;
};

/// Variable name -> assigned word.
using Substitution = std::map<std::string, Word, std::less<>>;

/// Variable -> regular language. Unmapped variables get the full language.
class ConstraintMap {
public:
    explicit ConstraintMap(Alphabet alphabet);

    /// Throws AlphabetError when `language` is over a different alphabet.
    void set(const std::string& var, Dfa language, std::optional<std::string> source = std::nullopt);
    /// Compiles `regex_text` and keeps it as the source text.
    void set(const std::string& var, std::string_view regex_text);

    const Dfa& at(std::string_view var) const;
    bool contains(std::string_view var) const;
    /// Regex text the constraint was built from, when known.
    std::optional<std::string> source(std::string_view var) const;

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    /// Names with an explicit constraint, sorted.
    std::vector<std::string> constrained_variables() const;

private:
    struct Entry {
        Dfa language;
        std::optional<std::string> source;
    };

    Alphabet alphabet_;
    Dfa universe_;
    std::map<std::string, Entry, std::less<>> entries_;
};

class ConstrainedPattern {
public:
    /// Throws AlphabetError when a terminal is outside the constraint alphabet.
    ConstrainedPattern(Pattern pattern, ConstraintMap constraints);

    const Pattern& pattern() const noexcept { return pattern_; }
    const ConstraintMap& constraints() const noexcept { return constraints_; }
    const Alphabet& alphabet() const noexcept { return constraints_.alphabet(); }

private:
    Pattern pattern_;
    ConstraintMap constraints_;
};

/// Throws Error when a variable of `p` is unassigned.
Word apply_substitution(const Pattern& p, const Substitution& h);

/// Every variable in `vars` is assigned and its word is in its constraint.
bool is_r_valid(const Substitution& h, const ConstraintMap& c, const std::vector<std::string>& vars);

/// Exact backtracking decider for w in L_E / L_NE of a constrained pattern.
///
/// The matcher precomputes per-variable automata once and can be queried
/// repeatedly. Failed search states (item, word position, live bindings) are
/// memoized per query.
namespace detail {
struct Plan;
}

class Matcher {
public:
    Matcher(const ConstrainedPattern& cp, Mode mode);

    /// Decision only; stops at the first witness found. Throws AlphabetError.
    bool matches(std::string_view w);

    /// Canonical witness: minimal total length of the distinct variables'
    /// words; ties go to the lexicographically smallest vector of binding
    /// lengths in first-occurrence order. Throws AlphabetError.
    std::optional<Substitution> witness(std::string_view w);

private:
    struct Choice {
        std::size_t cost;
        std::size_t length;
    };

    void load(std::string_view w);
    bool search(std::size_t item, std::size_t pos);
    bool expand(std::size_t item, std::size_t pos);
    std::size_t best(std::size_t item, std::size_t pos);
    std::string state_key(std::size_t item, std::size_t pos) const;

    std::shared_ptr<const detail::Plan> plan_;

    // Per-query state.
    std::string_view word_;
    std::vector<int> symbols_;
    std::vector<std::size_t> bind_start_;
    std::vector<std::size_t> bind_len_;
    std::vector<std::uint32_t> fail_stamp_;
    std::uint32_t generation_ = 0;
    bool any_failure_ = false;
    std::unordered_set<std::string> failed_;
    std::unordered_map<std::string, Choice> best_;
};

/// One-shot Matcher::witness.
std::optional<Substitution> membership(std::string_view w, const ConstrainedPattern& cp, Mode mode);

/// All words of length <= max_len in the language, shortlex order.
///
/// Independent oracle: walks r-valid substitutions item by item (each
/// variable's words come straight from its automaton, capped at max_len) and
/// deduplicates identical (prefix, live bindings) states. Never calls Matcher.
std::vector<Word> enumerate_language(const ConstrainedPattern& cp, Mode mode, std::size_t max_len);

struct EquivalenceResult {
    enum class Side { First, Second };

    bool equal = true;
    /// Shortlex-smallest word in exactly one of the two bounded languages.
    std::optional<Word> counterexample;
    /// Which language contains the counterexample.
    std::optional<Side> side;
};

/// Compares enumerate_language outputs. Throws AlphabetError on differing alphabets.
EquivalenceResult bounded_equivalence(const ConstrainedPattern& a, const ConstrainedPattern& b, Mode mode,
                                      std::size_t max_len);

/// Searches the bounded language for a word rejected by `property`.
///
/// Equivalent to enumerating every word of length <= max_len and testing it,
/// but collapses prefixes that agree on (length, property state, live
/// bindings), and treats single-occurrence variables through a product with
/// the property automaton. Exact at the given bound. Returns a violating word
/// if one exists.
std::optional<Word> find_property_violation(const ConstrainedPattern& cp, Mode mode, std::size_t max_len,
                                            const Dfa& property);

}  // namespace regpat
