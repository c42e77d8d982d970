#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "regpat/cli.hpp"
#include "regpat/counter_machine.hpp"
#include "regpat/dsl.hpp"
#include "regpat/error.hpp"
#include "regpat/pattern.hpp"
#include "regpat/reduction.hpp"
#include "regpat/verify.hpp"

namespace py = pybind11;
using namespace regpat;

namespace {

Mode to_mode(const std::string& m) {
    if (m == "E") return Mode::E;
    if (m == "NE") return Mode::NE;
    throw py::value_error("mode must be 'E' or 'NE'");
}

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

Configuration to_config(const Triple& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }

std::vector<Triple> to_triples(const Computation& c) {
    std::vector<Triple> out;
    for (const auto& conf : c) out.emplace_back(conf.state, conf.m1, conf.m2);
    return out;
}

Computation to_computation(const std::vector<Triple>& seq) {
    Computation c;
    for (const auto& t : seq) c.push_back(to_config(t));
    return c;
}

/// Pattern text plus constraint-file text, parsed once.
class PyPattern {
public:
    PyPattern(const std::string& pattern, const std::string& constraints, const std::string& alphabet)
        : cp_(parse_pattern(pattern, Alphabet(alphabet)), parse_constraints(constraints, Alphabet(alphabet))) {}

    explicit PyPattern(ConstrainedPattern cp) : cp_(std::move(cp)) {}

    bool matches(const std::string& w, const std::string& mode) const {
        return Matcher(cp_, to_mode(mode)).matches(w);
    }

    std::optional<std::map<std::string, std::string>> witness(const std::string& w, const std::string& mode) const {
        const auto h = membership(w, cp_, to_mode(mode));
        if (!h) return std::nullopt;
        return std::map<std::string, std::string>(h->begin(), h->end());
    }

    std::vector<std::string> enumerate(std::size_t max_len, const std::string& mode) const {
        return enumerate_language(cp_, to_mode(mode), max_len);
    }

    std::vector<std::string> variables() const { return cp_.pattern().variables(); }
    std::string pattern_text() const { return format_pattern(cp_.pattern()); }
    const ConstrainedPattern& get() const { return cp_; }

private:
    ConstrainedPattern cp_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pattern languages with regular constraints and the 2-counter reduction";

    py::register_exception<Error>(m, "RegpatError", PyExc_ValueError);

    py::class_<PyPattern>(m, "ConstrainedPattern")
        .def(py::init<const std::string&, const std::string&, const std::string&>(), py::arg("pattern"),
             py::arg("constraints") = "", py::arg("alphabet") = "0#")
        .def("matches", &PyPattern::matches, py::arg("word"), py::arg("mode") = "E")
        .def("witness", &PyPattern::witness, py::arg("word"), py::arg("mode") = "E",
             "Canonical witness substitution, or None.")
        .def("enumerate", &PyPattern::enumerate, py::arg("max_len"), py::arg("mode") = "E",
             "Words up to max_len in shortlex order.")
        .def_property_readonly("variables", &PyPattern::variables)
        .def("__repr__", [](const PyPattern& p) { return "<ConstrainedPattern " + p.pattern_text() + ">"; });

    m.def(
        "bounded_equivalence",
        [](const PyPattern& a, const PyPattern& b, std::size_t max_len, const std::string& mode) {
            const auto r = regpat::bounded_equivalence(a.get(), b.get(), to_mode(mode), max_len);
            std::optional<std::string> side;
            if (r.side) side = *r.side == EquivalenceResult::Side::First ? "first" : "second";
            return std::make_tuple(r.equal, r.counterexample, side);
        },
        py::arg("a"), py::arg("b"), py::arg("max_len"), py::arg("mode") = "E",
        "(equal, counterexample, side containing it)");

    py::class_<TwoCounterAutomaton>(m, "Machine")
        .def_static("from_json", [](const std::string& text) { return parse_machine_json(text); })
        .def_property_readonly("states", &TwoCounterAutomaton::state_count)
        .def_property_readonly("initial", &TwoCounterAutomaton::initial)
        .def_property_readonly("finals", &TwoCounterAutomaton::finals)
        .def("to_json", [](const TwoCounterAutomaton& a) { return machine_to_json(a); });

    m.def(
        "successors",
        [](const TwoCounterAutomaton& a, const Triple& c) {
            std::vector<Triple> out;
            for (const auto& s : regpat::successors(a, to_config(c))) out.emplace_back(s.state, s.m1, s.m2);
            return out;
        },
        py::arg("machine"), py::arg("config"));
    m.def(
        "find_accepting_computations",
        [](const TwoCounterAutomaton& a, std::size_t max_steps, std::size_t max_counter) {
            std::vector<std::vector<Triple>> out;
            for (const auto& c : regpat::find_accepting_computations(a, max_steps, max_counter)) {
                out.push_back(to_triples(c));
            }
            return out;
        },
        py::arg("machine"), py::arg("max_steps"), py::arg("max_counter"));
    m.def("encode_config", [](const Triple& c) { return regpat::encode_config(to_config(c)); });
    m.def("encode_computation",
          [](const std::vector<Triple>& seq) { return regpat::encode_computation(to_computation(seq)); });
    m.def(
        "decode_computation",
        [](const std::string& w, std::optional<std::size_t> states) {
            auto r = regpat::decode_computation(w, states);
            if (auto* bad = std::get_if<regpat::Malformed>(&r)) {
                throw py::value_error("malformed at " + std::to_string(bad->position) + ": " + bad->reason);
            }
            return to_triples(std::get<Computation>(r));
        },
        py::arg("word"), py::arg("states") = py::none());
    m.def("in_valc", &regpat::in_valc, py::arg("machine"), py::arg("word"));

    m.def(
        "reduce",
        [](const TwoCounterAutomaton& a) {
            const auto r = build_beta(a);
            py::dict d;
            d["mu"] = r.mu;
            d["alpha"] = PyPattern(r.alpha);
            d["beta"] = PyPattern(r.beta);
            d["alpha_pattern"] = format_pattern(r.alpha.pattern());
            d["alpha_constraints"] = format_constraints(r.alpha);
            d["beta_pattern"] = format_pattern(r.beta.pattern());
            d["beta_constraints"] = format_constraints(r.beta);
            d["predicates_json"] = predicates_to_json(r);
            return d;
        },
        py::arg("machine"));

    m.def(
        "verify",
        [](const TwoCounterAutomaton& a, std::size_t max_len, std::size_t exhaustive_len, std::size_t corpus_len) {
            const auto r = verify_reduction(a, VerifyOptions{max_len, exhaustive_len, corpus_len});
            py::list violations;
            for (const auto& v : r.violations) violations.append(py::make_tuple(v.check, v.word, v.detail));
            py::dict d;
            d["ok"] = r.ok();
            d["gap"] = r.gap;
            d["violations"] = violations;
            d["strata"] = r.strata();
            return d;
        },
        py::arg("machine"), py::arg("max_len") = 20, py::arg("exhaustive_len") = 14, py::arg("corpus_len") = 35);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = regpat::run_cli(args, out, err);
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "(exit code, stdout, stderr)");
}
