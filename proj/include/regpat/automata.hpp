#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "regpat/alphabet.hpp"
#include "regpat/regex.hpp"

namespace regpat {

using State = std::uint32_t;

/// Nondeterministic automaton with epsilon moves. States are dense integers.
class Nfa {
public:
    static constexpr int kEpsilon = -1;

    struct Edge {
        int symbol;  // alphabet index, or kEpsilon
        State target;
    };

    explicit Nfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    State add_state();
    void add_edge(State from, int symbol, State to);
    void add_initial(State s);
    void set_accepting(State s, bool accepting = true);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return edges_.size(); }
    std::span<const State> initial() const noexcept { return initial_; }
    bool is_accepting(State s) const { return accepting_.at(s); }
    std::span<const Edge> edges(State s) const { return edges_.at(s); }

    /// Copies `other` in, returning the offset added to its state ids.
    State absorb(const Nfa& other);

    /// Direct subset simulation; throws AlphabetError on a foreign symbol.
    bool accepts(std::string_view w) const;

    /// Sorted epsilon closure of `states` (in place).
    void close(std::vector<State>& states) const;

private:
    Alphabet alphabet_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<State> initial_;
    std::vector<bool> accepting_;
};

/// Complete deterministic automaton. Immutable once built.
class Dfa {
public:
    /// `table[s * |alphabet| + a]` is the successor of `s` on symbol index `a`.
    /// Throws Error unless the table is total and every id is in range.
    Dfa(Alphabet alphabet, std::size_t states, std::vector<State> table, State initial,
        std::vector<bool> accepting);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return accepting_.size(); }
    State initial() const noexcept { return initial_; }
    bool is_accepting(State s) const { return accepting_[s]; }
    State next(State s, int symbol_index) const {
        return table_[static_cast<std::size_t>(s) * alphabet_.size() + static_cast<std::size_t>(symbol_index)];
    }

    /// Throws AlphabetError on a foreign symbol.
    bool accepts(std::string_view w) const;

    /// States from which some accepting state is reachable.
    const std::vector<bool>& live() const noexcept { return live_; }

    /// Length of the shortest accepted word, if any.
    std::optional<std::size_t> min_length() const noexcept { return min_length_; }

private:
    Alphabet alphabet_;
    std::vector<State> table_;
    State initial_;
    std::vector<bool> accepting_;
    std::vector<bool> live_;
    std::optional<std::size_t> min_length_;
};

/// Thompson construction. Throws AlphabetError for a literal outside `alphabet`.
Nfa compile(const Regex& r, const Alphabet& alphabet);

/// Subset construction. Subsets are numbered in BFS order over the alphabet
/// order, so the result is deterministic; the empty subset is the sink.
Dfa determinize(const Nfa& n);

Dfa complement(const Dfa& d);
Dfa intersect(const Dfa& a, const Dfa& b);
Dfa union_of(const Dfa& a, const Dfa& b);
Nfa concat(const Dfa& a, const Dfa& b);

Nfa to_nfa(const Dfa& d);
Nfa concat(const Nfa& a, const Nfa& b);
Nfa alternate(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& n);
Nfa plus(const Nfa& n);

bool accepts(const Dfa& d, std::string_view w);
bool is_empty(const Dfa& d);

/// Moore partition refinement over the reachable part.
Dfa minimize(const Dfa& d);

/// Words avoiding `factor`, via the KMP failure automaton.
/// Throws Error when `factor` is empty.
Dfa factor_avoid(const Alphabet& alphabet, std::string_view factor);

Dfa universal_language(const Alphabet& alphabet);
Dfa empty_language(const Alphabet& alphabet);
Dfa nonempty_words(const Alphabet& alphabet);

/// Accepted words of length <= max_len, in shortlex order.
std::vector<Word> words_up_to(const Dfa& d, std::size_t max_len);

/// Same language (symmetric difference is empty).
bool equivalent(const Dfa& a, const Dfa& b);

}  // namespace regpat
