#include "regpat/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "regpat/error.hpp"

namespace regpat {

// ---------------------------------------------------------------------------
// Nfa

State Nfa::add_state() {
    edges_.emplace_back();
    accepting_.push_back(false);
    return static_cast<State>(edges_.size() - 1);
}

void Nfa::add_edge(State from, int symbol, State to) {
    if (from >= size() || to >= size()) throw Error("Nfa::add_edge: state out of range");
    if (symbol != kEpsilon && (symbol < 0 || static_cast<std::size_t>(symbol) >= alphabet_.size())) {
        throw AlphabetError("Nfa::add_edge: symbol index out of range");
    }
    edges_[from].push_back(Edge{symbol, to});
}

void Nfa::add_initial(State s) {
    if (s >= size()) throw Error("Nfa::add_initial: state out of range");
    if (std::find(initial_.begin(), initial_.end(), s) == initial_.end()) initial_.push_back(s);
}

void Nfa::set_accepting(State s, bool accepting) {
    if (s >= size()) throw Error("Nfa::set_accepting: state out of range");
    accepting_[s] = accepting;
}

State Nfa::absorb(const Nfa& other) {
    if (!(other.alphabet_ == alphabet_)) throw AlphabetError("cannot combine automata over different alphabets");
    const auto offset = static_cast<State>(size());
    for (std::size_t s = 0; s < other.size(); ++s) {
        add_state();
        accepting_.back() = other.accepting_[s];
    }
    for (std::size_t s = 0; s < other.size(); ++s) {
        for (const auto& e : other.edges_[s]) {
            edges_[offset + s].push_back(Edge{e.symbol, e.target + offset});
        }
    }
    return offset;
}

void Nfa::close(std::vector<State>& states) const {
    std::vector<bool> seen(size(), false);
    std::vector<State> stack;
    for (State s : states) {
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    }
    states.clear();
    while (!stack.empty()) {
        const State s = stack.back();
        stack.pop_back();
        states.push_back(s);
        for (const auto& e : edges_[s]) {
            if (e.symbol == kEpsilon && !seen[e.target]) {
                seen[e.target] = true;
                stack.push_back(e.target);
            }
        }
    }
    std::sort(states.begin(), states.end());
}

bool Nfa::accepts(std::string_view w) const {
    alphabet_.check_word(w);
    std::vector<State> current(initial_.begin(), initial_.end());
    close(current);
    std::vector<State> next;
    for (char c : w) {
        const int a = alphabet_.index_of(c);
        next.clear();
        for (State s : current) {
            for (const auto& e : edges_[s]) {
                if (e.symbol == a) next.push_back(e.target);
            }
        }
        close(next);
        current.swap(next);
        if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(), [&](State s) { return accepting_[s]; });
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(Alphabet alphabet, std::size_t states, std::vector<State> table, State initial,
         std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)), table_(std::move(table)), initial_(initial), accepting_(std::move(accepting)) {
    if (states == 0) throw Error("Dfa needs at least one state");
    if (accepting_.size() != states) throw Error("Dfa: accepting vector size mismatch");
    if (table_.size() != states * alphabet_.size()) throw Error("Dfa: transition table is not total");
    if (initial_ >= states) throw Error("Dfa: initial state out of range");
    for (State t : table_) {
        if (t >= states) throw Error("Dfa: transition target out of range");
    }

    // Backward reachability from accepting states.
    std::vector<std::vector<State>> reverse(states);
    for (std::size_t s = 0; s < states; ++s) {
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            reverse[table_[s * alphabet_.size() + a]].push_back(static_cast<State>(s));
        }
    }
    live_.assign(states, false);
    std::vector<State> stack;
    for (std::size_t s = 0; s < states; ++s) {
        if (accepting_[s]) {
            live_[s] = true;
            stack.push_back(static_cast<State>(s));
        }
    }
    while (!stack.empty()) {
        const State s = stack.back();
        stack.pop_back();
        for (State p : reverse[s]) {
            if (!live_[p]) {
                live_[p] = true;
                stack.push_back(p);
            }
        }
    }

    // Forward BFS for the shortest accepted word.
    std::vector<std::size_t> dist(states, SIZE_MAX);
    std::deque<State> queue{initial_};
    dist[initial_] = 0;
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        if (accepting_[s]) {
            min_length_ = dist[s];
            break;
        }
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            const State t = next(s, static_cast<int>(a));
            if (dist[t] == SIZE_MAX) {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
}

bool Dfa::accepts(std::string_view w) const {
    State s = initial_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int a = alphabet_.index_of(w[i]);
        if (a < 0) alphabet_.check_word(w);
        s = next(s, a);
    }
    return accepting_[s];
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

struct Fragment {
    State start;
    State end;
};

Fragment thompson(Nfa& n, const Regex& r) {
    const State s = n.add_state();
    const State e = n.add_state();
    switch (r.kind()) {
        case Regex::Kind::Empty:
            break;
        case Regex::Kind::Epsilon:
            n.add_edge(s, Nfa::kEpsilon, e);
            break;
        case Regex::Kind::Literal: {
            const int a = n.alphabet().index_of(r.symbol());
            if (a < 0) {
                throw AlphabetError(std::string("regex literal '") + r.symbol() + "' is not in alphabet {" +
                                    std::string(n.alphabet().symbols()) + "}");
            }
            n.add_edge(s, a, e);
            break;
        }
        case Regex::Kind::Concat: {
            State cursor = s;
            for (const auto& part : r.children()) {
                const Fragment f = thompson(n, part);
                n.add_edge(cursor, Nfa::kEpsilon, f.start);
                cursor = f.end;
            }
            n.add_edge(cursor, Nfa::kEpsilon, e);
            break;
        }
        case Regex::Kind::Union:
            for (const auto& option : r.children()) {
                const Fragment f = thompson(n, option);
                n.add_edge(s, Nfa::kEpsilon, f.start);
                n.add_edge(f.end, Nfa::kEpsilon, e);
            }
            break;
        case Regex::Kind::Star:
        case Regex::Kind::Plus: {
            const Fragment f = thompson(n, r.children().front());
            n.add_edge(s, Nfa::kEpsilon, f.start);
            n.add_edge(f.end, Nfa::kEpsilon, f.start);
            n.add_edge(f.end, Nfa::kEpsilon, e);
            if (r.kind() == Regex::Kind::Star) n.add_edge(s, Nfa::kEpsilon, e);
            break;
        }
    }
    return {s, e};
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) {
        throw AlphabetError("alphabet mismatch: {" + std::string(a.symbols()) + "} vs {" + std::string(b.symbols()) +
                            "}");
    }
}

template <typename Combine>
Dfa product(const Dfa& a, const Dfa& b, Combine combine) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto id_of = [&](State x, State y) {
        const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
        auto [it, inserted] = ids.try_emplace(key, static_cast<State>(pairs.size()));
        if (inserted) pairs.emplace_back(x, y);
        return it->second;
    };
    id_of(a.initial(), b.initial());
    std::vector<State> table;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t sym = 0; sym < k; ++sym) {
            const auto [x, y] = pairs[i];
            table.push_back(id_of(a.next(x, static_cast<int>(sym)), b.next(y, static_cast<int>(sym))));
        }
    }
    std::vector<bool> accepting(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        accepting[i] = combine(a.is_accepting(pairs[i].first), b.is_accepting(pairs[i].second));
    }
    return Dfa(a.alphabet(), pairs.size(), std::move(table), 0, std::move(accepting));
}

}  // namespace

Nfa compile(const Regex& r, const Alphabet& alphabet) {
    Nfa n(alphabet);
    const Fragment f = thompson(n, r);
    n.add_initial(f.start);
    n.set_accepting(f.end);
    return n;
}

Dfa determinize(const Nfa& n) {
    const std::size_t k = n.alphabet().size();
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> subsets;
    auto id_of = [&](std::vector<State> subset) {
        auto [it, inserted] = ids.try_emplace(subset, static_cast<State>(subsets.size()));
        if (inserted) subsets.push_back(std::move(subset));
        return it->second;
    };

    std::vector<State> start(n.initial().begin(), n.initial().end());
    n.close(start);
    id_of(std::move(start));

    std::vector<State> table;
    std::vector<State> move;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t sym = 0; sym < k; ++sym) {
            move.clear();
            for (State s : subsets[i]) {
                for (const auto& e : n.edges(s)) {
                    if (e.symbol == static_cast<int>(sym)) move.push_back(e.target);
                }
            }
            n.close(move);
            table.push_back(id_of(move));
        }
    }
    std::vector<bool> accepting(subsets.size(), false);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        accepting[i] = std::any_of(subsets[i].begin(), subsets[i].end(), [&](State s) { return n.is_accepting(s); });
    }
    return Dfa(n.alphabet(), subsets.size(), std::move(table), 0, std::move(accepting));
}

Dfa complement(const Dfa& d) {
    const std::size_t k = d.alphabet().size();
    std::vector<State> table;
    table.reserve(d.size() * k);
    std::vector<bool> accepting(d.size());
    for (std::size_t s = 0; s < d.size(); ++s) {
        for (std::size_t a = 0; a < k; ++a) table.push_back(d.next(static_cast<State>(s), static_cast<int>(a)));
        accepting[s] = !d.is_accepting(static_cast<State>(s));
    }
    return Dfa(d.alphabet(), d.size(), std::move(table), d.initial(), std::move(accepting));
}

Dfa intersect(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && y; });
}

Dfa union_of(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x || y; });
}

Nfa to_nfa(const Dfa& d) {
    Nfa n(d.alphabet());
    for (std::size_t s = 0; s < d.size(); ++s) {
        n.add_state();
        n.set_accepting(static_cast<State>(s), d.is_accepting(static_cast<State>(s)));
    }
    for (std::size_t s = 0; s < d.size(); ++s) {
        for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
            n.add_edge(static_cast<State>(s), static_cast<int>(a), d.next(static_cast<State>(s), static_cast<int>(a)));
        }
    }
    n.add_initial(d.initial());
    return n;
}

Nfa concat(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    Nfa out(a.alphabet());
    out.absorb(a);
    const State offset = out.absorb(b);
    for (State s : a.initial()) out.add_initial(s);
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (!a.is_accepting(static_cast<State>(s))) continue;
        out.set_accepting(static_cast<State>(s), false);
        for (State t : b.initial()) out.add_edge(static_cast<State>(s), Nfa::kEpsilon, t + offset);
    }
    return out;
}

Nfa concat(const Dfa& a, const Dfa& b) { return concat(to_nfa(a), to_nfa(b)); }

Nfa alternate(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    Nfa out(a.alphabet());
    out.absorb(a);
    const State offset = out.absorb(b);
    for (State s : a.initial()) out.add_initial(s);
    for (State s : b.initial()) out.add_initial(s + offset);
    return out;
}

Nfa star(const Nfa& n) {
    Nfa out(n.alphabet());
    const State hub = out.add_state();
    out.set_accepting(hub);
    const State offset = out.absorb(n);
    out.add_initial(hub);
    for (State s : n.initial()) out.add_edge(hub, Nfa::kEpsilon, s + offset);
    for (std::size_t s = 0; s < n.size(); ++s) {
        if (n.is_accepting(static_cast<State>(s))) out.add_edge(static_cast<State>(s) + offset, Nfa::kEpsilon, hub);
    }
    return out;
}

Nfa plus(const Nfa& n) {
    Nfa out(n.alphabet());
    out.absorb(n);
    for (State s : n.initial()) out.add_initial(s);
    for (std::size_t s = 0; s < n.size(); ++s) {
        if (!n.is_accepting(static_cast<State>(s))) continue;
        for (State t : n.initial()) out.add_edge(static_cast<State>(s), Nfa::kEpsilon, t);
    }
    return out;
}

bool accepts(const Dfa& d, std::string_view w) { return d.accepts(w); }

bool is_empty(const Dfa& d) { return !d.live()[d.initial()]; }

Dfa minimize(const Dfa& d) {
    const std::size_t k = d.alphabet().size();

    // Reachable part, in BFS order.
    std::vector<int> order_of(d.size(), -1);
    std::vector<State> reachable{d.initial()};
    order_of[d.initial()] = 0;
    for (std::size_t i = 0; i < reachable.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const State t = d.next(reachable[i], static_cast<int>(a));
            if (order_of[t] < 0) {
                order_of[t] = static_cast<int>(reachable.size());
                reachable.push_back(t);
            }
        }
    }
    const std::size_t n = reachable.size();

    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = d.is_accepting(reachable[i]) ? 1 : 0;
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> signatures;
        std::vector<std::size_t> refined(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> sig{cls[i]};
            for (std::size_t a = 0; a < k; ++a) {
                sig.push_back(cls[static_cast<std::size_t>(order_of[d.next(reachable[i], static_cast<int>(a))])]);
            }
            refined[i] = signatures.try_emplace(std::move(sig), signatures.size()).first->second;
        }
        const std::size_t count = signatures.size();
        cls.swap(refined);
        if (count == classes) break;
        classes = count;
    }

    // Renumber classes by BFS from the initial class so the result is canonical.
    std::vector<int> final_id(classes, -1);
    std::vector<std::size_t> representative;
    final_id[cls[0]] = 0;
    representative.push_back(0);
    for (std::size_t i = 0; i < representative.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const auto t = static_cast<std::size_t>(order_of[d.next(reachable[representative[i]], static_cast<int>(a))]);
            if (final_id[cls[t]] < 0) {
                final_id[cls[t]] = static_cast<int>(representative.size());
                representative.push_back(t);
            }
        }
    }
    std::vector<State> table;
    std::vector<bool> accepting(representative.size());
    for (std::size_t c = 0; c < representative.size(); ++c) {
        const State s = reachable[representative[c]];
        accepting[c] = d.is_accepting(s);
        for (std::size_t a = 0; a < k; ++a) {
            const auto t = static_cast<std::size_t>(order_of[d.next(s, static_cast<int>(a))]);
            table.push_back(static_cast<State>(final_id[cls[t]]));
        }
    }
    return Dfa(d.alphabet(), representative.size(), std::move(table), 0, std::move(accepting));
}

Dfa factor_avoid(const Alphabet& alphabet, std::string_view factor) {
    if (factor.empty()) throw Error("factor_avoid: factor must be non-empty");
    alphabet.check_word(factor);
    const std::size_t m = factor.size();
    const std::size_t k = alphabet.size();

    // Longest proper border of each prefix.
    std::vector<std::size_t> border(m, 0);
    for (std::size_t i = 1, len = 0; i < m;) {
        if (factor[i] == factor[len]) {
            border[i++] = ++len;
        } else if (len > 0) {
            len = border[len - 1];
        } else {
            border[i++] = 0;
        }
    }

    // State q < m: longest suffix read so far that is a prefix of `factor` has length q.
    // State m: factor seen (sink).
    std::vector<State> table((m + 1) * k);
    for (std::size_t q = 0; q <= m; ++q) {
        for (std::size_t a = 0; a < k; ++a) {
            State target;
            if (q == m) {
                target = static_cast<State>(m);
            } else if (factor[q] == alphabet.symbol(a)) {
                target = static_cast<State>(q + 1);
            } else if (q == 0) {
                target = 0;
            } else {
                target = table[border[q - 1] * k + a];
            }
            table[q * k + a] = target;
        }
    }
    std::vector<bool> accepting(m + 1, true);
    accepting[m] = false;
    return Dfa(alphabet, m + 1, std::move(table), 0, std::move(accepting));
}

Dfa universal_language(const Alphabet& alphabet) {
    return Dfa(alphabet, 1, std::vector<State>(alphabet.size(), 0), 0, {true});
}

Dfa empty_language(const Alphabet& alphabet) {
    return Dfa(alphabet, 1, std::vector<State>(alphabet.size(), 0), 0, {false});
}

Dfa nonempty_words(const Alphabet& alphabet) {
    std::vector<State> table(2 * alphabet.size(), 1);
    return Dfa(alphabet, 2, std::move(table), 0, {false, true});
}

std::vector<Word> words_up_to(const Dfa& d, std::size_t max_len) {
    std::vector<Word> out;
    std::vector<std::pair<Word, State>> layer;
    if (d.live()[d.initial()]) layer.emplace_back(Word{}, d.initial());
    for (std::size_t len = 0; !layer.empty(); ++len) {
        for (const auto& [w, s] : layer) {
            if (d.is_accepting(s)) out.push_back(w);
        }
        if (len == max_len) break;
        std::vector<std::pair<Word, State>> next;
        for (const auto& [w, s] : layer) {
            for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
                const State t = d.next(s, static_cast<int>(a));
                if (d.live()[t]) next.emplace_back(w + d.alphabet().symbol(a), t);
            }
        }
        layer.swap(next);
    }
    return out;
}

bool equivalent(const Dfa& a, const Dfa& b) {
    return is_empty(intersect(a, complement(b))) && is_empty(intersect(b, complement(a)));
}

}  // namespace regpat
