#include "regpat/counter_machine.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "regpat/error.hpp"

namespace regpat {

std::string to_string(const Transition& t) {
    return "(q" + std::to_string(t.from) + "," + std::to_string(t.c1) + "," + std::to_string(t.c2) + ") -> (q" +
           std::to_string(t.to) + "," + std::to_string(t.r1) + "," + std::to_string(t.r2) + ")";
}

std::string to_string(const Configuration& c) {
    return "(q" + std::to_string(c.state) + "," + std::to_string(c.m1) + "," + std::to_string(c.m2) + ")";
}

TwoCounterAutomaton::TwoCounterAutomaton(std::size_t states, std::size_t initial, std::vector<std::size_t> finals,
                                         std::vector<Transition> transitions)
    : states_(states), initial_(initial), finals_(std::move(finals)), transitions_(std::move(transitions)) {
    if (states_ == 0) throw MachineError("machine needs at least one state");
    if (initial_ >= states_) throw MachineError("initial state q" + std::to_string(initial_) + " out of range");
    for (auto q : finals_) {
        if (q >= states_) throw MachineError("final state q" + std::to_string(q) + " out of range");
    }
    for (const auto& t : transitions_) {
        const std::string name = "transition " + to_string(t);
        if (t.from >= states_ || t.to >= states_) throw MachineError(name + ": state out of range");
        if ((t.c1 != 0 && t.c1 != 1) || (t.c2 != 0 && t.c2 != 1)) throw MachineError(name + ": c must be 0 or 1");
        if (t.r1 < -1 || t.r1 > 1 || t.r2 < -1 || t.r2 > 1) throw MachineError(name + ": r must be -1, 0 or 1");
        if ((t.c1 == 0 && t.r1 == -1) || (t.c2 == 0 && t.r2 == -1)) {
            throw MachineError(name + ": decrements a counter that is tested to be zero");
        }
    }
    std::sort(finals_.begin(), finals_.end());
    finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
}

bool TwoCounterAutomaton::is_final(std::size_t q) const {
    return std::binary_search(finals_.begin(), finals_.end(), q);
}

bool TwoCounterAutomaton::has_transition(const Transition& t) const {
    return std::binary_search(transitions_.begin(), transitions_.end(), t);
}

namespace {

using nlohmann::json;

long long require_int(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"", 1, 1);
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(where + ": \"" + key + "\" must be an integer", 1, 1);
    return v.get<long long>();
}

std::size_t require_index(const json& obj, const char* key, const std::string& where) {
    const long long v = require_int(obj, key, where);
    if (v < 0) throw MachineError(where + ": \"" + key + "\" must be non-negative");
    return static_cast<std::size_t>(v);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

TwoCounterAutomaton parse_machine_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
    if (!doc.is_object()) throw ParseError("machine must be a JSON object", 1, 1);

    const std::size_t states = require_index(doc, "states", "machine");
    const std::size_t initial = doc.contains("initial") ? require_index(doc, "initial", "machine") : 0;

    std::vector<std::size_t> finals;
    if (doc.contains("finals")) {
        if (!doc["finals"].is_array()) throw ParseError("machine: \"finals\" must be an array", 1, 1);
        for (const auto& f : doc["finals"]) {
            if (!f.is_number_integer() || f.get<long long>() < 0) {
                throw ParseError("machine: finals must be non-negative integers", 1, 1);
            }
            finals.push_back(f.get<std::size_t>());
        }
    }

    std::vector<Transition> transitions;
    if (doc.contains("transitions")) {
        if (!doc["transitions"].is_array()) throw ParseError("machine: \"transitions\" must be an array", 1, 1);
        std::size_t k = 0;
        for (const auto& t : doc["transitions"]) {
            const std::string where = "transitions[" + std::to_string(k++) + "]";
            transitions.push_back({require_index(t, "from", where), static_cast<int>(require_int(t, "c1", where)),
                                   static_cast<int>(require_int(t, "c2", where)), require_index(t, "to", where),
                                   static_cast<int>(require_int(t, "r1", where)),
                                   static_cast<int>(require_int(t, "r2", where))});
        }
    }
    return TwoCounterAutomaton(states, initial, std::move(finals), std::move(transitions));
}

std::string machine_to_json(const TwoCounterAutomaton& a) {
    json doc;
    doc["states"] = a.state_count();
    doc["initial"] = a.initial();
    doc["finals"] = a.finals();
    doc["transitions"] = json::array();
    for (const auto& t : a.transitions()) {
        doc["transitions"].push_back({{"from", t.from}, {"c1", t.c1}, {"c2", t.c2},
                                      {"to", t.to}, {"r1", t.r1}, {"r2", t.r2}});
    }
    return doc.dump(2) + "\n";
}

std::vector<Configuration> successors(const TwoCounterAutomaton& a, const Configuration& c) {
    std::vector<Configuration> out;
    const int c1 = c.m1 == 0 ? 0 : 1;
    const int c2 = c.m2 == 0 ? 0 : 1;
    for (const auto& t : a.transitions()) {
        if (t.from != c.state || t.c1 != c1 || t.c2 != c2) continue;
        out.push_back({t.to, static_cast<std::size_t>(static_cast<long long>(c.m1) + t.r1),
                       static_cast<std::size_t>(static_cast<long long>(c.m2) + t.r2)});
    }
    return out;
}

bool is_accepting_computation(const TwoCounterAutomaton& a, const Computation& seq) {
    if (seq.empty()) return false;
    if (seq.front() != Configuration{a.initial(), 0, 0}) return false;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i].state >= a.state_count()) return false;
        const auto next = successors(a, seq[i]);
        if (std::find(next.begin(), next.end(), seq[i + 1]) == next.end()) return false;
    }
    return seq.back().state < a.state_count() && a.is_final(seq.back().state);
}

std::vector<Computation> find_accepting_computations(const TwoCounterAutomaton& a, std::size_t max_steps,
                                                     std::size_t max_counter) {
    std::vector<Computation> found;
    if (max_steps == 0) return found;
    std::deque<Computation> queue{{Configuration{a.initial(), 0, 0}}};
    while (!queue.empty()) {
        Computation path = std::move(queue.front());
        queue.pop_front();
        if (a.is_final(path.back().state)) found.push_back(path);
        if (path.size() == max_steps) continue;
        for (const auto& next : successors(a, path.back())) {
            if (next.m1 > max_counter || next.m2 > max_counter) continue;
            Computation longer = path;
            longer.push_back(next);
            queue.push_back(std::move(longer));
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const Computation& x, const Computation& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return found;
}

namespace {

void append_config(Word& w, const Configuration& c) {
    w.append(1 + c.state, '0');
    w += '#';
    w.append(5 + 2 * c.m1, '0');
    w += '#';
    w.append(5 + 2 * c.m2, '0');
}

}  // namespace

Word encode_config(const Configuration& c) {
    Word w;
    append_config(w, c);
    return w;
}

Word encode_computation(const Computation& seq) {
    std::size_t n = 2;
    for (const auto& c : seq) n += c.state + 2 * (c.m1 + c.m2) + 15;
    Word w;
    w.reserve(n);
    w += "##";
    for (const auto& c : seq) {
        append_config(w, c);
        w += "##";
    }
    return w;
}

std::variant<Computation, Malformed> decode_computation(std::string_view w,
                                                        std::optional<std::size_t> state_count) {
    std::size_t pos = 0;
    auto zeros = [&] {
        const std::size_t start = pos;
        while (pos < w.size() && w[pos] == '0') ++pos;
        return pos - start;
    };
    auto expect_hash = [&](std::size_t count) {
        for (std::size_t i = 0; i < count; ++i, ++pos) {
            if (pos >= w.size() || w[pos] != '#') return false;
        }
        return true;
    };

    std::size_t hashes = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == '#') {
            ++hashes;
        } else if (w[i] != '0') {
            return Malformed{i, std::string("symbol '") + w[i] + "' is not 0 or #"};
        }
    }
    if (!expect_hash(2)) return Malformed{0, "missing leading ##"};
    if (pos == w.size()) return Malformed{pos, "no configuration"};

    Computation seq;
    seq.reserve(hashes / 4);
    while (pos < w.size()) {
        Configuration c;
        const std::size_t state_at = pos;
        const std::size_t q = zeros();
        if (q == 0) return Malformed{state_at, "empty state block"};
        c.state = q - 1;
        if (state_count && c.state >= *state_count) {
            return Malformed{state_at, "state q" + std::to_string(c.state) + " out of range"};
        }
        std::size_t* counters[] = {&c.m1, &c.m2};
        for (std::size_t k = 0; k < 2; ++k) {
            if (!expect_hash(1)) return Malformed{pos, "expected # before counter " + std::to_string(k + 1)};
            const std::size_t at = pos;
            const std::size_t n = zeros();
            if (n < 5) return Malformed{at, "counter block shorter than 00000"};
            if (n % 2 == 0) return Malformed{at, "even counter block"};
            *counters[k] = (n - 5) / 2;
        }
        const std::size_t sep = pos;
        if (!expect_hash(2)) return Malformed{sep, "expected ## after configuration"};
        seq.push_back(c);
    }
    return seq;
}

bool in_valc(const TwoCounterAutomaton& a, std::string_view w) {
    const auto decoded = decode_computation(w, a.state_count());
    const auto* seq = std::get_if<Computation>(&decoded);
    return seq && is_accepting_computation(a, *seq);
}

}  // namespace regpat
