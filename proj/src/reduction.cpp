#include "regpat/reduction.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "regpat/dsl.hpp"
#include "regpat/error.hpp"
#include "regpat/regex_syntax.hpp"

namespace regpat {

namespace {

const char* const kWrapper = "() | 0###0";
const char* const kAlpha1 = "() | (0.*0 & !(.*###.*))";
const char* const kYTilde = "!(0###0 (0.*0 & !(.*###.*)) 0###0)";
const char* const kGood = "(##00*#00000(00)*#00000(00)*)+##";
const char* const kEvenBlocks = "(00)*";

std::string zeros(std::size_t n) { return std::string(n, '0'); }

std::string signed_digit(int r) { return r > 0 ? "+1" : (r < 0 ? "-1" : "0"); }

/// Compiles constraint texts once per build.
class TextCompiler {
public:
    explicit TextCompiler(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }

    /// Returns the restricted source text and its automaton.
    std::pair<std::string, const Dfa*> get(std::string_view binary_text) {
        std::string text = restrict_to_binary(binary_text, alphabet_);
        auto it = cache_.find(text);
        if (it == cache_.end()) it = cache_.emplace(text, compile_regex_text(text, alphabet_)).first;
        return {text, &it->second};
    }

private:
    Alphabet alphabet_;
    std::unordered_map<std::string, Dfa> cache_;
};

using RoleText = std::pair<std::string, std::string>;

Predicate make_predicate(Provenance prov, const std::vector<std::string>& gamma, const std::vector<RoleText>& roles,
                         TextCompiler& tc) {
    std::vector<PatternItem> items;
    for (const auto& name : gamma) items.emplace_back(Variable{name});
    ConstraintMap c(tc.alphabet());
    for (const auto& [role, text] : roles) {
        auto [source, dfa] = tc.get(text);
        c.set(role, *dfa, source);
    }
    return Predicate{prov, Pattern(std::move(items)), std::move(c)};
}

Predicate structure(std::size_t state_count, std::size_t initial, TextCompiler& tc) {
    if (state_count == 0 || initial >= state_count) throw Error("structure predicate: bad state bounds");
    std::string states = "(";
    for (std::size_t i = 1; i <= state_count; ++i) {
        if (i > 1) states += "|";
        states += zeros(i);
    }
    states += ")";
    const std::string good = "##" + zeros(1 + initial) + "#00000#00000(##" + states + "#00000(00)*#00000(00)*)*##";
    Provenance p;
    p.rule = Provenance::Rule::Structure;
    return make_predicate(p, {"y"}, {{"y", "() | 0 (!(" + good + ") & !(.*###.*)) 0"}}, tc);
}

Predicate nonfinal(const TwoCounterAutomaton& a, std::size_t q, TextCompiler& tc) {
    if (q >= a.state_count()) throw Error("nonfinal predicate: q" + std::to_string(q) + " out of range");
    if (a.is_final(q)) throw Error("nonfinal predicate: q" + std::to_string(q) + " is final");
    Provenance p;
    p.rule = Provenance::Rule::NonFinalEnd;
    p.state = q;
    return make_predicate(p, {"y"}, {{"y", "() | 0 (.*##" + zeros(1 + q) + "#0+#0+## & !(.*###.*)) 0"}}, tc);
}

std::vector<Predicate> counter_change(TextCompiler& tc) {
    const std::vector<std::string> gamma{"y1", "x1", "y2", "x1", "y3"};
    struct Variant {
        int counter;
        bool increment;
        const char* y1;
        const char* y2;
        const char* y3;
    };
    const Variant variants[] = {
        {1, true, "() | (0.*0#0 & !(.*###.*))", "() | 0000 # 00000 0* ## 0+ # 0000 00(00)+",
         "() | (0#0.*0 & !(.*###.*))"},
        {1, false, "() | (0.*0#0 & !(.*###.*))", "() | 0000 00(00)+ # 00000 0* ## 0+ # 0000",
         "() | (0#0.*0 & !(.*###.*))"},
        {2, true, "() | (0.*0#00 & !(.*###.*))", "() | 000 ## 0+ # 00000 0* # 000 00(00)+",
         "() | (00##.*0 & !(.*###.*))"},
        {2, false, "() | (0.*0#00 & !(.*###.*))", "() | 000 00(00)+ ## 0+ # 00000 0* # 000",
         "() | (00##.*0 & !(.*###.*))"},
    };
    std::vector<Predicate> out;
    for (const auto& v : variants) {
        Provenance p;
        p.rule = Provenance::Rule::CounterChange;
        p.counter = v.counter;
        p.increment = v.increment;
        out.push_back(make_predicate(p, gamma, {{"y1", v.y1}, {"x1", kEvenBlocks}, {"y2", v.y2}, {"y3", v.y3}}, tc));
    }
    return out;
}

Predicate invalid_transition(const Transition& s, TextCompiler& tc) {
    if ((s.c1 == 0 && s.r1 == -1) || (s.c2 == 0 && s.r2 == -1)) {
        throw Error("invalid-transition predicate: signature " + to_string(s) + " decrements a zero counter");
    }
    // Lengths of the 0-runs around the x blocks.
    const std::size_t l1 = s.c1 == 1 ? 6 : 4;
    const std::size_t l2 = s.c2 == 1 ? 6 : 4;
    const auto r1 = static_cast<std::size_t>(static_cast<long long>(l1) + 2 * s.r1);
    const auto r2 = static_cast<std::size_t>(static_cast<long long>(l2) - 2 + 2 * s.r2);

    std::vector<std::string> gamma{"y1"};
    if (s.c1 == 1) gamma.push_back("x1");
    gamma.push_back("y2");
    if (s.c2 == 1) gamma.push_back("x2");
    gamma.push_back("y3");
    if (s.c1 == 1) gamma.push_back("x1");
    gamma.push_back("y4");
    if (s.c2 == 1) gamma.push_back("x2");
    gamma.push_back("y5");

    std::vector<RoleText> roles{
        {"y1", "() | ((0 | 0.*0) ##" + zeros(1 + s.from) + "#0 & !(.*###.*))"},
        {"y2", "() | " + zeros(l1) + "#0"},
        {"y3", "() | " + zeros(l2) + "##" + zeros(1 + s.to) + "#" + zeros(r1)},
        {"y4", "() | 0#" + zeros(r2)},
        {"y5", "() | (000##0 (() | .*0) & !(.*###.*))"},
    };
    if (s.c1 == 1) roles.emplace_back("x1", kEvenBlocks);
    if (s.c2 == 1) roles.emplace_back("x2", kEvenBlocks);

    Provenance p;
    p.rule = Provenance::Rule::InvalidTransition;
    p.signature = s;
    return make_predicate(p, gamma, roles, tc);
}

std::vector<Transition> absent_signatures(const TwoCounterAutomaton& a) {
    std::vector<Transition> out;
    const std::size_t n = a.state_count();
    for (std::size_t j = 0; j < n; ++j) {
        for (int c1 = 0; c1 <= 1; ++c1) {
            for (int c2 = 0; c2 <= 1; ++c2) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (int r1 = -1; r1 <= 1; ++r1) {
                        if (c1 == 0 && r1 == -1) continue;
                        for (int r2 = -1; r2 <= 1; ++r2) {
                            if (c2 == 0 && r2 == -1) continue;
                            const Transition t{j, c1, c2, k, r1, r2};
                            if (!a.has_transition(t)) out.push_back(t);
                        }
                    }
                }
            }
        }
    }
    return out;
}

Predicate rename(const Predicate& p, std::size_t index) {
    const std::string prefix = "p" + std::to_string(index) + "_";
    std::vector<PatternItem> items;
    for (const auto& item : p.gamma.items()) items.emplace_back(Variable{prefix + std::get<Variable>(item).name});
    ConstraintMap c(p.constraints.alphabet());
    for (const auto& name : p.gamma.variables()) c.set(prefix + name, p.constraints.at(name), p.constraints.source(name));
    return Predicate{p.provenance, Pattern(std::move(items)), std::move(c)};
}

void check_binary_symbols(const Alphabet& alphabet) {
    if (!alphabet.contains('0') || !alphabet.contains('#')) {
        throw AlphabetError("the reduction needs symbols 0 and # in the alphabet");
    }
}

}  // namespace

std::string Provenance::tag() const {
    switch (rule) {
        case Rule::Structure:
            return "structure";
        case Rule::NonFinalEnd:
            return "nonfinal(q" + std::to_string(state) + ")";
        case Rule::CounterChange:
            return "counter(" + std::to_string(counter) + "," + (increment ? "inc" : "dec") + ")";
        case Rule::InvalidTransition:
            return "invalid(q" + std::to_string(signature.from) + "," + std::to_string(signature.c1) + "," +
                   std::to_string(signature.c2) + ",q" + std::to_string(signature.to) + "," +
                   signed_digit(signature.r1) + "," + signed_digit(signature.r2) + ")";
    }
    return {};
}

Provenance Provenance::parse(std::string_view tag) {
    auto fail = [&]() -> Provenance { throw ParseError("bad provenance tag '" + std::string(tag) + "'", 1, 1); };
    Provenance p;
    if (tag == "structure") return p;

    const auto open = tag.find('(');
    if (open == std::string_view::npos || tag.back() != ')') return fail();
    const std::string_view head = tag.substr(0, open);
    std::vector<std::string> args;
    std::string cur;
    for (char c : tag.substr(open + 1, tag.size() - open - 2)) {
        if (c == ',') {
            args.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    args.push_back(cur);

    auto state = [&](const std::string& s) -> std::size_t {
        if (s.size() < 2 || s[0] != 'q' || !std::all_of(s.begin() + 1, s.end(), ::isdigit)) fail();
        return std::stoul(s.substr(1));
    };
    auto bit = [&](const std::string& s) -> int {
        if (s != "0" && s != "1") fail();
        return s == "1" ? 1 : 0;
    };
    auto delta = [&](const std::string& s) -> int {
        if (s == "+1" || s == "1") return 1;
        if (s == "0") return 0;
        if (s == "-1") return -1;
        fail();
        return 0;
    };

    if (head == "nonfinal" && args.size() == 1) {
        p.rule = Rule::NonFinalEnd;
        p.state = state(args[0]);
    } else if (head == "counter" && args.size() == 2) {
        p.rule = Rule::CounterChange;
        if (args[0] != "1" && args[0] != "2") fail();
        if (args[1] != "inc" && args[1] != "dec") fail();
        p.counter = args[0] == "1" ? 1 : 2;
        p.increment = args[1] == "inc";
    } else if (head == "invalid" && args.size() == 6) {
        p.rule = Rule::InvalidTransition;
        p.signature = {state(args[0]), bit(args[1]), bit(args[2]), state(args[3]), delta(args[4]), delta(args[5])};
    } else {
        fail();
    }
    return p;
}

Word delimiter() { return "0###0"; }

std::string restrict_to_binary(std::string_view text, const Alphabet& alphabet) {
    check_binary_symbols(alphabet);
    if (alphabet.size() == 2) return std::string(text);
    return "(" + std::string(text) + ") & (0|#)*";
}

Dfa good_structure_dfa(const Alphabet& alphabet) {
    return compile_regex_text(restrict_to_binary(kGood, alphabet), alphabet);
}

ConstrainedPattern build_alpha(const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    ConstraintMap c(alphabet);
    for (const auto& [name, text] : {RoleText{"xv", kWrapper}, RoleText{"a1", kAlpha1}, RoleText{"yt", kYTilde}}) {
        auto [source, dfa] = tc.get(text);
        c.set(name, *dfa, source);
    }
    return ConstrainedPattern(Pattern({Variable{"xv"}, Variable{"a1"}, Variable{"xv"}, Variable{"yt"}}), std::move(c));
}

Dfa alpha_language_dfa(const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    const Dfa& a1 = *tc.get(kAlpha1).second;
    const Dfa& yt = *tc.get(kYTilde).second;
    const Dfa v = *tc.get(delimiter()).second;
    const Dfa bare = minimize(determinize(concat(a1, yt)));
    const Dfa framed = minimize(determinize(concat(concat(to_nfa(v), to_nfa(a1)), concat(to_nfa(v), to_nfa(yt)))));
    return minimize(union_of(bare, framed));
}

Predicate predicate_structure(std::size_t state_count, std::size_t initial, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    return structure(state_count, initial, tc);
}

Predicate predicate_nonfinal(const TwoCounterAutomaton& a, std::size_t q, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    return nonfinal(a, q, tc);
}

std::vector<Predicate> predicates_counter_change(const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    return counter_change(tc);
}

Predicate predicate_invalid_transition(const Transition& signature, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    return invalid_transition(signature, tc);
}

std::vector<Predicate> predicates_invalid_transition(const TwoCounterAutomaton& a, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    std::vector<Predicate> out;
    for (const auto& s : absent_signatures(a)) out.push_back(invalid_transition(s, tc));
    return out;
}

ConstrainedPattern assemble_beta(const std::vector<Predicate>& predicates, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    std::vector<PatternItem> items;
    ConstraintMap c(alphabet);
    auto claim = [&](const std::string& name) {
        if (c.contains(name)) throw Error("variable '" + name + "' occurs in more than one part of beta");
    };
    const auto [wrapper_text, wrapper] = tc.get(kWrapper);
    for (std::size_t k = 0; k < predicates.size(); ++k) {
        const std::string w = "w" + std::to_string(k + 1);
        claim(w);
        c.set(w, *wrapper, wrapper_text);
        items.emplace_back(Variable{w});
        for (const auto& name : predicates[k].gamma.variables()) {
            claim(name);
            c.set(name, predicates[k].constraints.at(name), predicates[k].constraints.source(name));
        }
        for (const auto& item : predicates[k].gamma.items()) {
            if (!std::holds_alternative<Variable>(item)) throw Error("predicates must be terminal-free");
            items.push_back(item);
        }
        items.emplace_back(Variable{w});
    }
    claim("zt");
    const auto [yt_text, yt] = tc.get(kYTilde);
    c.set("zt", *yt, yt_text);
    items.emplace_back(Variable{"zt"});
    return ConstrainedPattern(Pattern(std::move(items)), std::move(c));
}

ReductionOutput build_beta(const TwoCounterAutomaton& a, const Alphabet& alphabet) {
    TextCompiler tc(alphabet);
    std::vector<Predicate> raw;
    RuleCounts counts;

    raw.push_back(structure(a.state_count(), a.initial(), tc));
    counts.structure = 1;
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        if (a.is_final(q)) continue;
        raw.push_back(nonfinal(a, q, tc));
        ++counts.nonfinal;
    }
    for (auto& p : counter_change(tc)) {
        raw.push_back(std::move(p));
        ++counts.counter_change;
    }
    for (const auto& s : absent_signatures(a)) {
        raw.push_back(invalid_transition(s, tc));
        ++counts.invalid_transition;
    }

    std::vector<Predicate> named;
    for (std::size_t k = 0; k < raw.size(); ++k) named.push_back(rename(raw[k], k + 1));
    ConstrainedPattern beta = assemble_beta(named, alphabet);
    return ReductionOutput{build_alpha(alphabet),     std::move(beta), std::move(named), delimiter(),
                           raw.size(),                counts,          a.state_count(),  a.transitions().size()};
}

bool predicate_matches(const Predicate& p, std::string_view w) {
    const Word v = delimiter();
    if (w.size() <= 2 * v.size()) return false;
    if (w.substr(0, v.size()) != v || w.substr(w.size() - v.size()) != v) return false;
    const std::string_view middle = w.substr(v.size(), w.size() - 2 * v.size());
    if (!p.constraints.alphabet().contains_word(middle)) return false;
    return Matcher(p.constrained(), Mode::E).matches(middle);
}

Dfa erasure_language(const Predicate& p, const std::vector<std::string>& erasable,
                     const std::vector<std::string>& kept) {
    const Alphabet& alphabet = p.constraints.alphabet();
    std::optional<Nfa> acc;
    for (const auto& item : p.gamma.items()) {
        const auto& name = std::get<Variable>(item).name;
        const bool erased = std::find(erasable.begin(), erasable.end(), name) != erasable.end() &&
                            std::find(kept.begin(), kept.end(), name) == kept.end();
        if (erased) continue;
        Nfa part = to_nfa(p.constraints.at(name));
        acc = acc ? concat(*acc, part) : std::move(part);
    }
    if (!acc) return compile_regex_text("()", alphabet);
    return minimize(determinize(*acc));
}

namespace {

std::vector<SideCondition> subset_conditions(const Predicate& p, const std::vector<std::string>& ys,
                                             std::size_t min_kept, const Dfa& lg, const Dfa& framed) {
    std::vector<SideCondition> out;
    const std::size_t n = ys.size();
    // Subsets ordered by size, then by position, to list them the way they are usually written.
    for (std::size_t size = min_kept; size < n; ++size) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
            std::vector<std::string> kept;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) kept.push_back(ys[i]);
            }
            std::string expr;
            for (const auto& item : p.gamma.items()) {
                const auto& name = std::get<Variable>(item).name;
                const bool is_y = std::find(ys.begin(), ys.end(), name) != ys.end();
                if (is_y && std::find(kept.begin(), kept.end(), name) == kept.end()) continue;
                expr += "L(" + name + ")";
            }
            if (expr.empty()) expr = "{()}";
            const Dfa lang = erasure_language(p, ys, kept);
            out.push_back({p.provenance.tag(), expr, is_empty(intersect(lang, lg)), is_empty(intersect(lang, framed))});
        }
    }
    return out;
}

Dfa framed_good_structure(const Alphabet& alphabet) {
    return compile_regex_text(restrict_to_binary(std::string("0 ") + kGood + " 0", alphabet), alphabet);
}

}  // namespace

std::vector<SideCondition> counter_change_side_conditions(const Alphabet& alphabet) {
    const Dfa lg = good_structure_dfa(alphabet);
    const Dfa framed = framed_good_structure(alphabet);
    std::vector<SideCondition> out;
    for (const auto& p : predicates_counter_change(alphabet)) {
        auto conds = subset_conditions(p, {"y1", "y2", "y3"}, 1, lg, framed);
        out.insert(out.end(), conds.begin(), conds.end());
    }
    return out;
}

std::vector<SideCondition> invalid_transition_erasure_conditions(const TwoCounterAutomaton& a,
                                                                 const Alphabet& alphabet) {
    const Dfa lg = good_structure_dfa(alphabet);
    const Dfa framed = framed_good_structure(alphabet);
    std::vector<SideCondition> out;
    for (const auto& p : predicates_invalid_transition(a, alphabet)) {
        auto conds = subset_conditions(p, {"y1", "y2", "y3", "y4", "y5"}, 0, lg, framed);
        out.insert(out.end(), conds.begin(), conds.end());
    }
    return out;
}

std::string predicates_to_json(const ReductionOutput& out) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["v"] = out.v;
    doc["mu"] = out.mu;
    doc["mu_formula"] = {
        {"expression", "1 + |Q\\F| + 4 + (25*|Q|^2 - |delta|)"},
        {"structure", out.counts.structure},
        {"nonfinal", out.counts.nonfinal},
        {"counter_change", out.counts.counter_change},
        {"invalid_transition", out.counts.invalid_transition},
        {"states", out.states},
        {"stored_transitions", out.stored_transitions},
    };
    doc["predicates"] = ordered_json::array();
    for (std::size_t k = 0; k < out.predicates.size(); ++k) {
        const auto& p = out.predicates[k];
        ordered_json constraints = ordered_json::object();
        for (const auto& name : p.gamma.variables()) constraints[name] = p.constraints.source(name).value_or("");
        doc["predicates"].push_back({{"index", k + 1},
                                     {"provenance", p.provenance.tag()},
                                     {"pattern", format_pattern(p.gamma)},
                                     {"constraints", std::move(constraints)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<Predicate> predicates_from_json(std::string_view text, const Alphabet& alphabet) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
    }
    if (!doc.is_object() || !doc.contains("predicates") || !doc["predicates"].is_array()) {
        throw ParseError("predicates file needs a \"predicates\" array", 1, 1);
    }
    std::vector<Predicate> out;
    std::size_t k = 0;
    for (const auto& entry : doc["predicates"]) {
        const std::string where = "predicates[" + std::to_string(k++) + "]";
        if (!entry.is_object() || !entry.contains("provenance") || !entry.contains("pattern") ||
            !entry.contains("constraints") || !entry["provenance"].is_string() || !entry["pattern"].is_string() ||
            !entry["constraints"].is_object()) {
            throw ParseError(where + ": needs provenance, pattern and constraints", 1, 1);
        }
        const Provenance prov = Provenance::parse(entry["provenance"].get<std::string>());
        Pattern gamma = parse_pattern(entry["pattern"].get<std::string>(), alphabet);
        ConstraintMap c(alphabet);
        for (const auto& [name, value] : entry["constraints"].items()) {
            if (!value.is_string()) throw ParseError(where + ": constraint of '" + name + "' must be a string", 1, 1);
            try {
                c.set(name, compile_regex_text(value.get<std::string>(), alphabet), value.get<std::string>());
            } catch (const ParseError& e) {
                throw ParseError(where + "." + name + ": " + e.what(), e.line(), e.column());
            }
        }
        out.push_back(Predicate{prov, std::move(gamma), std::move(c)});
    }
    return out;
}

}  // namespace regpat
