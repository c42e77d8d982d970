#include "regpat/pattern.hpp"

#include <algorithm>
#include <cstring>
#include <functional>

#include "regpat/error.hpp"
#include "regpat/regex_syntax.hpp"

namespace regpat {

Pattern::Pattern(std::vector<PatternItem> items) : items_(std::move(items)) {
    if (items_.empty()) throw Error("pattern must be non-empty");
    for (const auto& item : items_) {
        if (const auto* v = std::get_if<Variable>(&item); v && v->name.empty()) {
            throw Error("variable name must be non-empty");
        }
    }
}

std::vector<std::string> Pattern::variables() const {
    std::vector<std::string> out;
    for (const auto& item : items_) {
        if (const auto* v = std::get_if<Variable>(&item)) {
            if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
        }
    }
    return out;
}

bool Pattern::is_terminal_free() const {
    return std::none_of(items_.begin(), items_.end(),
                        [](const PatternItem& i) { return std::holds_alternative<Terminal>(i); });
}

ConstraintMap::ConstraintMap(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), universe_(universal_language(alphabet_)) {}

void ConstraintMap::set(const std::string& var, Dfa language, std::optional<std::string> source) {
    if (!(language.alphabet() == alphabet_)) {
        throw AlphabetError("constraint for '" + var + "' is over alphabet {" +
                            std::string(language.alphabet().symbols()) + "}, expected {" +
                            std::string(alphabet_.symbols()) + "}");
    }
    entries_.insert_or_assign(var, Entry{std::move(language), std::move(source)});
}

void ConstraintMap::set(const std::string& var, std::string_view regex_text) {
    set(var, compile_regex_text(regex_text, alphabet_), std::string(regex_text));
}

const Dfa& ConstraintMap::at(std::string_view var) const {
    const auto it = entries_.find(var);
    return it == entries_.end() ? universe_ : it->second.language;
}

bool ConstraintMap::contains(std::string_view var) const { return entries_.find(var) != entries_.end(); }

std::optional<std::string> ConstraintMap::source(std::string_view var) const {
    const auto it = entries_.find(var);
    if (it == entries_.end()) return std::nullopt;
    return it->second.source;
}

std::vector<std::string> ConstraintMap::constrained_variables() const {
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

ConstrainedPattern::ConstrainedPattern(Pattern pattern, ConstraintMap constraints)
    : pattern_(std::move(pattern)), constraints_(std::move(constraints)) {
    for (const auto& item : pattern_.items()) {
        if (const auto* t = std::get_if<Terminal>(&item); t && !alphabet().contains(t->symbol)) {
            throw AlphabetError(std::string("terminal '") + t->symbol + "' is not in alphabet {" +
                                std::string(alphabet().symbols()) + "}");
        }
    }
}

Word apply_substitution(const Pattern& p, const Substitution& h) {
    Word out;
    for (const auto& item : p.items()) {
        if (const auto* t = std::get_if<Terminal>(&item)) {
            out.push_back(t->symbol);
            continue;
        }
        const auto& name = std::get<Variable>(item).name;
        const auto it = h.find(name);
        if (it == h.end()) throw Error("variable '" + name + "' is unassigned");
        out += it->second;
    }
    return out;
}

bool is_r_valid(const Substitution& h, const ConstraintMap& c, const std::vector<std::string>& vars) {
    for (const auto& name : vars) {
        const auto it = h.find(name);
        if (it == h.end()) return false;
        if (!c.alphabet().contains_word(it->second) || !c.at(name).accepts(it->second)) return false;
    }
    return true;
}

namespace detail {

constexpr std::size_t kUnreachable = SIZE_MAX;

struct Plan {
    struct Var {
        std::string name;
        Dfa language;
        std::size_t first;
        std::size_t last;
        std::size_t min_len;
    };
    struct Item {
        int var;  // -1 for a terminal
        char symbol;
        bool first_occurrence;
    };

    Alphabet alphabet;
    std::vector<Var> vars;
    std::vector<Item> items;
    std::vector<std::size_t> suffix_min;    // size n+1
    std::vector<std::vector<int>> live;     // live[i]: first < i <= last, ascending

    Plan(const ConstrainedPattern& cp, Mode mode) : alphabet(cp.alphabet()) {
        const auto& raw = cp.pattern().items();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (const auto* t = std::get_if<Terminal>(&raw[i])) {
                items.push_back({-1, t->symbol, false});
                continue;
            }
            const auto& name = std::get<Variable>(raw[i]).name;
            auto it = std::find_if(vars.begin(), vars.end(), [&](const Var& v) { return v.name == name; });
            if (it == vars.end()) {
                Dfa language = cp.constraints().at(name);
                if (mode == Mode::NE) language = intersect(language, nonempty_words(alphabet));
                const std::size_t min_len = language.min_length().value_or(kUnreachable);
                vars.push_back({name, std::move(language), i, i, min_len});
                items.push_back({static_cast<int>(vars.size() - 1), '\0', true});
            } else {
                it->last = i;
                items.push_back({static_cast<int>(it - vars.begin()), '\0', false});
            }
        }

        const std::size_t n = items.size();
        suffix_min.assign(n + 1, 0);
        for (std::size_t i = n; i-- > 0;) {
            const std::size_t here = items[i].var < 0 ? 1 : vars[static_cast<std::size_t>(items[i].var)].min_len;
            const std::size_t rest = suffix_min[i + 1];
            suffix_min[i] = (here == kUnreachable || rest == kUnreachable) ? kUnreachable : here + rest;
        }

        live.assign(n + 1, {});
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t v = 0; v < vars.size(); ++v) {
                if (vars[v].first < i && i <= vars[v].last) live[i].push_back(static_cast<int>(v));
            }
        }
    }
};

}  // namespace detail

using detail::kUnreachable;

namespace {

void append_raw(std::string& key, std::size_t value) {
    char buf[sizeof value];
    std::memcpy(buf, &value, sizeof value);
    key.append(buf, sizeof value);
}

}  // namespace

Matcher::Matcher(const ConstrainedPattern& cp, Mode mode)
    : plan_(std::make_shared<const detail::Plan>(cp, mode)) {}

void Matcher::load(std::string_view w) {
    plan_->alphabet.check_word(w);
    word_ = w;
    symbols_.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) symbols_[i] = plan_->alphabet.index_of(w[i]);
    bind_start_.assign(plan_->vars.size(), 0);
    bind_len_.assign(plan_->vars.size(), 0);
    const std::size_t cells = (plan_->items.size() + 1) * (w.size() + 1);
    if (fail_stamp_.size() < cells) fail_stamp_.resize(cells, 0);
    if (++generation_ == 0) {
        std::fill(fail_stamp_.begin(), fail_stamp_.end(), 0);
        generation_ = 1;
    }
    any_failure_ = false;
    failed_.clear();
    best_.clear();
}

std::string Matcher::state_key(std::size_t item, std::size_t pos) const {
    std::string key;
    append_raw(key, item);
    append_raw(key, pos);
    for (int v : plan_->live[item]) {
        const auto i = static_cast<std::size_t>(v);
        append_raw(key, bind_len_[i]);
        key.append(word_.substr(bind_start_[i], bind_len_[i]));
    }
    return key;
}

bool Matcher::search(std::size_t item, std::size_t pos) {
    const auto& plan = *plan_;
    if (item == plan.items.size()) return pos == word_.size();
    if (plan.suffix_min[item] > word_.size() - pos) return false;

    const bool flat = plan.live[item].empty();
    const std::size_t cell = item * (word_.size() + 1) + pos;
    if (any_failure_) {
        if (flat ? fail_stamp_[cell] == generation_ : failed_.count(state_key(item, pos)) > 0) return false;
    }
    if (expand(item, pos)) return true;
    any_failure_ = true;
    if (flat) {
        fail_stamp_[cell] = generation_;
    } else {
        failed_.insert(state_key(item, pos));
    }
    return false;
}

bool Matcher::expand(std::size_t item, std::size_t pos) {
    const auto& plan = *plan_;
    const auto& it = plan.items[item];
    const std::size_t rest = word_.size() - pos;
    if (it.var < 0) return rest > 0 && word_[pos] == it.symbol && search(item + 1, pos + 1);

    const auto v = static_cast<std::size_t>(it.var);
    if (!it.first_occurrence) {
        const std::size_t len = bind_len_[v];
        if (len > rest || word_.substr(pos, len) != word_.substr(bind_start_[v], len)) return false;
        return search(item + 1, pos + len);
    }

    const Dfa& d = plan.vars[v].language;
    const auto& live = d.live();
    const std::size_t max_len = rest - plan.suffix_min[item + 1];
    State s = d.initial();
    for (std::size_t len = 0;; ++len) {
        if (len >= plan.vars[v].min_len && d.is_accepting(s)) {
            bind_start_[v] = pos;
            bind_len_[v] = len;
            if (search(item + 1, pos + len)) return true;
        }
        if (len == max_len) break;
        s = d.next(s, symbols_[pos + len]);
        if (!live[s]) break;
    }
    return false;
}

bool Matcher::matches(std::string_view w) {
    load(w);
    return search(0, 0);
}

std::size_t Matcher::best(std::size_t item, std::size_t pos) {
    const auto& plan = *plan_;
    if (item == plan.items.size()) return pos == word_.size() ? 0 : kUnreachable;
    const std::size_t rest = word_.size() - pos;
    if (plan.suffix_min[item] > rest) return kUnreachable;

    std::string key = state_key(item, pos);
    if (const auto found = best_.find(key); found != best_.end()) return found->second.cost;

    Choice choice{kUnreachable, 0};
    const auto& it = plan.items[item];
    if (it.var < 0) {
        if (rest > 0 && word_[pos] == it.symbol) choice.cost = best(item + 1, pos + 1);
    } else {
        const auto v = static_cast<std::size_t>(it.var);
        if (!it.first_occurrence) {
            const std::size_t len = bind_len_[v];
            if (len <= rest && word_.substr(pos, len) == word_.substr(bind_start_[v], len)) {
                choice.cost = best(item + 1, pos + len);
            }
        } else {
            const Dfa& d = plan.vars[v].language;
            const auto& live = d.live();
            const std::size_t max_len = rest - plan.suffix_min[item + 1];
            State s = d.initial();
            for (std::size_t len = 0;; ++len) {
                if (len >= plan.vars[v].min_len && d.is_accepting(s)) {
                    bind_start_[v] = pos;
                    bind_len_[v] = len;
                    const std::size_t sub = best(item + 1, pos + len);
                    if (sub != kUnreachable && len + sub < choice.cost) choice = {len + sub, len};
                }
                if (len == max_len) break;
                s = d.next(s, symbols_[pos + len]);
                if (!live[s]) break;
            }
        }
    }
    best_.emplace(std::move(key), choice);
    return choice.cost;
}

std::optional<Substitution> Matcher::witness(std::string_view w) {
    load(w);
    if (!search(0, 0)) return std::nullopt;
    if (best(0, 0) == kUnreachable) throw Error("witness reconstruction failed");

    const auto& plan = *plan_;
    std::size_t pos = 0;
    for (std::size_t item = 0; item < plan.items.size(); ++item) {
        const auto& it = plan.items[item];
        if (it.var < 0) {
            ++pos;
            continue;
        }
        const auto v = static_cast<std::size_t>(it.var);
        if (it.first_occurrence) {
            const std::size_t len = best_.at(state_key(item, pos)).length;
            bind_start_[v] = pos;
            bind_len_[v] = len;
        }
        pos += bind_len_[v];
    }

    Substitution h;
    for (std::size_t v = 0; v < plan.vars.size(); ++v) {
        h.emplace(plan.vars[v].name, Word(word_.substr(bind_start_[v], bind_len_[v])));
    }
    return h;
}

std::optional<Substitution> membership(std::string_view w, const ConstrainedPattern& cp, Mode mode) {
    return Matcher(cp, mode).witness(w);
}

namespace {

constexpr char kSep = '\x1f';

/// Calls `emit(word)` for every accepted word of `d` up to `max_len`,
/// walking the automaton depth first.
void for_each_word(const Dfa& d, std::size_t max_len, const std::function<void(const Word&)>& emit) {
    const auto& live = d.live();
    Word buf;
    std::function<void(State)> walk = [&](State s) {
        if (d.is_accepting(s)) emit(buf);
        if (buf.size() == max_len) return;
        for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
            const State t = d.next(s, static_cast<int>(a));
            if (!live[t]) continue;
            buf.push_back(d.alphabet().symbol(a));
            walk(t);
            buf.pop_back();
        }
    };
    if (live[d.initial()]) walk(d.initial());
}

std::vector<std::string_view> split_key(std::string_view key) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = key.find(kSep, start);
        if (at == std::string_view::npos) {
            out.push_back(key.substr(start));
            return out;
        }
        out.push_back(key.substr(start, at - start));
        start = at + 1;
    }
}

std::size_t index_in(const std::vector<int>& vars, int v) {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
}

/// Bindings for live[item + 1], given bindings aligned to live[item] and the
/// fresh binding of `var` (if item is its first occurrence).
template <typename Out>
void next_bindings(const detail::Plan& plan, std::size_t item, const std::vector<std::string_view>& old,
                   std::string_view fresh, Out&& out) {
    const auto& before = plan.live[item];
    const int current = plan.items[item].var;
    for (int v : plan.live[item + 1]) {
        out(v == current && plan.items[item].first_occurrence ? fresh : old[index_in(before, v)]);
    }
}

void sort_shortlex(std::vector<Word>& words, const Alphabet& a) {
    std::sort(words.begin(), words.end(), [&](const Word& x, const Word& y) { return a.shortlex_less(x, y); });
}

}  // namespace

std::vector<Word> enumerate_language(const ConstrainedPattern& cp, Mode mode, std::size_t max_len) {
    const detail::Plan plan(cp, mode);
    std::unordered_set<std::string> layer{std::string()};

    for (std::size_t item = 0; item < plan.items.size(); ++item) {
        std::unordered_set<std::string> next;
        const auto& it = plan.items[item];
        for (const auto& key : layer) {
            const auto fields = split_key(key);
            const std::string_view prefix = fields.front();
            const std::vector<std::string_view> old(fields.begin() + 1, fields.end());
            if (plan.suffix_min[item] > max_len - prefix.size()) continue;
            const std::size_t budget = max_len - prefix.size() - plan.suffix_min[item + 1];

            auto push = [&](std::string_view piece, std::string_view fresh) {
                std::string k(prefix);
                k.append(piece);
                next_bindings(plan, item, old, fresh, [&](std::string_view b) {
                    k.push_back(kSep);
                    k.append(b);
                });
                next.insert(std::move(k));
            };

            if (it.var < 0) {
                push(std::string_view(&it.symbol, 1), {});
            } else if (!it.first_occurrence) {
                const std::string_view bound = old[index_in(plan.live[item], it.var)];
                if (bound.size() <= budget) push(bound, {});
            } else {
                const auto& var = plan.vars[static_cast<std::size_t>(it.var)];
                for_each_word(var.language, budget, [&](const Word& u) { push(u, u); });
            }
        }
        layer = std::move(next);
    }

    std::vector<Word> out(layer.begin(), layer.end());
    sort_shortlex(out, plan.alphabet);
    return out;
}

EquivalenceResult bounded_equivalence(const ConstrainedPattern& a, const ConstrainedPattern& b, Mode mode,
                                      std::size_t max_len) {
    if (!(a.alphabet() == b.alphabet())) throw AlphabetError("bounded_equivalence: alphabets differ");
    const auto la = enumerate_language(a, mode, max_len);
    const auto lb = enumerate_language(b, mode, max_len);
    const Alphabet& alpha = a.alphabet();

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < la.size() && j < lb.size() && la[i] == lb[j]) {
        ++i;
        ++j;
    }
    EquivalenceResult r;
    if (i == la.size() && j == lb.size()) return r;
    r.equal = false;
    const bool first = j == lb.size() || (i < la.size() && alpha.shortlex_less(la[i], lb[j]));
    r.counterexample = first ? la[i] : lb[j];
    r.side = first ? EquivalenceResult::Side::First : EquivalenceResult::Side::Second;
    return r;
}

namespace {

struct Arrival {
    std::size_t length;
    State property_state;
    Word representative;
};

/// Words of L(var) of length <= max_len, run from property state `p`: for each
/// reachable (length, end state) the first word found in BFS order.
std::vector<Arrival> product_arrivals(const Dfa& var, const Dfa& property, State p, std::size_t max_len) {
    const auto& live = var.live();
    const std::size_t k = property.size();
    std::vector<Arrival> out;
    std::unordered_map<std::size_t, Word> layer;
    if (live[var.initial()]) layer.emplace(static_cast<std::size_t>(var.initial()) * k + p, Word());
    for (std::size_t len = 0; !layer.empty(); ++len) {
        std::vector<bool> seen(k, false);
        std::vector<std::pair<std::size_t, const Word*>> ordered;
        for (const auto& [cell, word] : layer) ordered.emplace_back(cell, &word);
        std::sort(ordered.begin(), ordered.end());
        for (const auto& [cell, word] : ordered) {
            const auto q = static_cast<State>(cell % k);
            if (var.is_accepting(static_cast<State>(cell / k)) && !seen[q]) {
                seen[q] = true;
                out.push_back({len, q, *word});
            }
        }
        if (len == max_len) break;
        std::unordered_map<std::size_t, Word> next;
        for (const auto& [cell, word] : ordered) {
            const auto s = static_cast<State>(cell / k);
            const auto q = static_cast<State>(cell % k);
            for (std::size_t a = 0; a < var.alphabet().size(); ++a) {
                const State t = var.next(s, static_cast<int>(a));
                if (!live[t]) continue;
                const State r = property.next(q, static_cast<int>(a));
                Word w = *word;
                w.push_back(var.alphabet().symbol(a));
                next.emplace(static_cast<std::size_t>(t) * k + r, std::move(w));
            }
        }
        layer = std::move(next);
    }
    return out;
}

State run(const Dfa& d, State s, std::string_view w) {
    for (char c : w) s = d.next(s, d.alphabet().index_of(c));
    return s;
}

}  // namespace

std::optional<Word> find_property_violation(const ConstrainedPattern& cp, Mode mode, std::size_t max_len,
                                            const Dfa& property) {
    if (!(cp.alphabet() == property.alphabet())) throw AlphabetError("property alphabet differs");
    const detail::Plan plan(cp, mode);

    // Key: length, property state, then live bindings; value: a representative prefix.
    std::unordered_map<std::string, Word> layer;
    auto make_key = [](std::size_t len, State q) {
        std::string key;
        append_raw(key, len);
        append_raw(key, q);
        return key;
    };
    layer.emplace(make_key(0, property.initial()), Word());

    std::map<std::pair<int, State>, std::vector<Arrival>> arrivals;

    for (std::size_t item = 0; item < plan.items.size(); ++item) {
        std::unordered_map<std::string, Word> next;
        const auto& it = plan.items[item];
        for (const auto& [key, rep] : layer) {
            std::size_t len;
            std::size_t q_raw;
            std::memcpy(&len, key.data(), sizeof len);
            std::memcpy(&q_raw, key.data() + sizeof len, sizeof q_raw);
            const auto q = static_cast<State>(q_raw);
            const auto fields = split_key(std::string_view(key).substr(2 * sizeof(std::size_t)));
            const std::vector<std::string_view> old(fields.begin() + 1, fields.end());
            if (plan.suffix_min[item] > max_len - len) continue;
            const std::size_t budget = max_len - len - plan.suffix_min[item + 1];

            auto push = [&](std::string_view piece, State q2, std::string_view fresh) {
                std::string k = make_key(len + piece.size(), q2);
                next_bindings(plan, item, old, fresh, [&](std::string_view b) {
                    k.push_back(kSep);
                    k.append(b);
                });
                if (next.count(k) == 0) next.emplace(std::move(k), rep + std::string(piece));
            };

            if (it.var < 0) {
                push(std::string_view(&it.symbol, 1), property.next(q, plan.alphabet.index_of(it.symbol)), {});
                continue;
            }
            const auto& var = plan.vars[static_cast<std::size_t>(it.var)];
            if (!it.first_occurrence) {
                const std::string_view bound = old[index_in(plan.live[item], it.var)];
                if (bound.size() <= budget) push(bound, run(property, q, bound), {});
            } else if (var.last > item) {
                for_each_word(var.language, budget, [&](const Word& u) { push(u, run(property, q, u), u); });
            } else {
                auto found = arrivals.find({it.var, q});
                if (found == arrivals.end()) {
                    found = arrivals.emplace(std::make_pair(it.var, q),
                                             product_arrivals(var.language, property, q, max_len)).first;
                }
                for (const auto& a : found->second) {
                    if (a.length <= budget) push(a.representative, a.property_state, {});
                }
            }
        }
        layer = std::move(next);
    }

    std::optional<Word> worst;
    for (const auto& [key, rep] : layer) {
        std::size_t q_raw;
        std::memcpy(&q_raw, key.data() + sizeof(std::size_t), sizeof q_raw);
        if (property.is_accepting(static_cast<State>(q_raw))) continue;
        if (!worst || plan.alphabet.shortlex_less(rep, *worst)) worst = rep;
    }
    return worst;
}

}  // namespace regpat
