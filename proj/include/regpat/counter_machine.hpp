#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regpat/alphabet.hpp"

namespace regpat {

/// (q, m1, m2). State is an index into Q.
struct Configuration {
    std::size_t state = 0;
    std::size_t m1 = 0;
    std::size_t m2 = 0;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

using Computation = std::vector<Configuration>;

/// (from, c1, c2) -> (to, r1, r2). c_i in {0,1} is the zero test, r_i in {-1,0,1}.
struct Transition {
    std::size_t from = 0;
    int c1 = 0;
    int c2 = 0;
    std::size_t to = 0;
    int r1 = 0;
    int r2 = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

std::string to_string(const Transition& t);
std::string to_string(const Configuration& c);

/// Nondeterministic 2-counter automaton without input.
class TwoCounterAutomaton {
public:
    /// Throws MachineError on out-of-range ids, bad c/r values, or a transition
    /// that decrements a counter it tests for zero. Duplicate transitions are
    /// merged; transitions and finals are kept sorted.
    TwoCounterAutomaton(std::size_t states, std::size_t initial, std::vector<std::size_t> finals,
                        std::vector<Transition> transitions);

    std::size_t state_count() const noexcept { return states_; }
    std::size_t initial() const noexcept { return initial_; }
    const std::vector<std::size_t>& finals() const noexcept { return finals_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }

    bool is_final(std::size_t q) const;
    bool has_transition(const Transition& t) const;

private:
    std::size_t states_;
    std::size_t initial_;
    std::vector<std::size_t> finals_;
    std::vector<Transition> transitions_;
};

/// {"states", "initial", "finals", "transitions": [{from,c1,c2,to,r1,r2}]}.
/// Throws ParseError for malformed JSON or missing fields, MachineError for
/// an ill-formed machine.
TwoCounterAutomaton parse_machine_json(std::string_view text);
std::string machine_to_json(const TwoCounterAutomaton& a);

/// One-step successors in transition order.
std::vector<Configuration> successors(const TwoCounterAutomaton& a, const Configuration& c);

bool is_accepting_computation(const TwoCounterAutomaton& a, const Computation& seq);

/// Accepting computations with at most `max_steps` configurations whose
/// counters stay <= `max_counter`. Ordered by length, then lexicographically.
std::vector<Computation> find_accepting_computations(const TwoCounterAutomaton& a, std::size_t max_steps,
                                                     std::size_t max_counter);

/// 0^{1+i} # 0^{5+2 m1} # 0^{5+2 m2}
Word encode_config(const Configuration& c);
/// ## enc(C1) ## ... ## enc(Cn) ##
Word encode_computation(const Computation& seq);

struct Malformed {
    std::size_t position;
    std::string reason;
};

/// Strict inverse of encode_computation. With `state_count`, state indices
/// >= state_count are rejected; without it any index is accepted.
std::variant<Computation, Malformed> decode_computation(std::string_view w,
                                                        std::optional<std::size_t> state_count);

bool in_valc(const TwoCounterAutomaton& a, std::string_view w);

}  // namespace regpat
