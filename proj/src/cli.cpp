#include "regpat/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regpat/counter_machine.hpp"
#include "regpat/dsl.hpp"
#include "regpat/error.hpp"
#include "regpat/pattern.hpp"
#include "regpat/reduction.hpp"
#include "regpat/verify.hpp"

namespace regpat {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

/// Bad input: files that do not parse, unreadable paths, ill-formed machines.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput(path + ": cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw BadInput(path.string() + ": cannot write file");
    out << content;
    if (!out) throw BadInput(path.string() + ": write failed");
}

std::string show(const Word& w) { return w.empty() ? "<eps>" : w; }

Mode parse_mode(const std::string& m) { return m == "NE" ? Mode::NE : Mode::E; }

struct Globals {
    std::string alphabet = "0#";
    std::string format = "text";

    bool json() const { return format == "json"; }
};

ConstrainedPattern load_pattern(const std::string& pattern_path, const std::string& constraint_path,
                                const Alphabet& alphabet) {
    auto located = [](const std::string& path, auto&& fn) {
        try {
            return fn();
        } catch (const ParseError& e) {
            throw BadInput(path + ":" + e.what());
        }
    };
    Pattern p = located(pattern_path, [&] { return parse_pattern(read_file(pattern_path), alphabet); });
    ConstraintMap c = located(constraint_path, [&] { return parse_constraints(read_file(constraint_path), alphabet); });
    return ConstrainedPattern(std::move(p), std::move(c));
}

TwoCounterAutomaton load_machine(const std::string& path) {
    try {
        return parse_machine_json(read_file(path));
    } catch (const ParseError& e) {
        throw BadInput(path + ":" + e.what());
    } catch (const MachineError& e) {
        throw BadInput(path + ": " + e.what());
    }
}

int cmd_match(const Globals& g, const std::string& pat, const std::string& cst, std::string word,
              const std::string& mode, std::ostream& out) {
    const Alphabet alphabet(g.alphabet);
    const ConstrainedPattern cp = load_pattern(pat, cst, alphabet);
    if (word == "<eps>") word.clear();
    try {
        alphabet.check_word(word);
    } catch (const AlphabetError& e) {
        throw BadInput(std::string("word: ") + e.what());
    }
    const auto h = membership(word, cp, parse_mode(mode));
    if (g.json()) {
        ordered_json doc{{"command", "match"}, {"status", "ok"}, {"mode", mode}, {"word", word}, {"member", h.has_value()}};
        if (h) {
            ordered_json witness = ordered_json::object();
            for (const auto& name : cp.pattern().variables()) witness[name] = h->at(name);
            doc["witness"] = std::move(witness);
        }
        out << doc.dump() << "\n";
        return kExitOk;
    }
    if (!h) {
        out << "NOT-MEMBER\n";
        return kExitOk;
    }
    out << "MEMBER\n";
    for (const auto& name : cp.pattern().variables()) out << name << " = " << show(h->at(name)) << "\n";
    return kExitOk;
}

int cmd_enum(const Globals& g, const std::string& pat, const std::string& cst, const std::string& mode,
             std::size_t max_len, std::ostream& out) {
    const Alphabet alphabet(g.alphabet);
    const ConstrainedPattern cp = load_pattern(pat, cst, alphabet);
    const auto words = enumerate_language(cp, parse_mode(mode), max_len);
    if (g.json()) {
        out << ordered_json{{"command", "enum"}, {"status", "ok"}, {"mode", mode}, {"max_len", max_len},
                            {"count", words.size()}}.dump()
            << "\n";
        for (const auto& w : words) out << ordered_json{{"word", w}}.dump() << "\n";
        return kExitOk;
    }
    out << "enum mode=" << mode << " max-len=" << max_len << " count=" << words.size() << "\n";
    for (const auto& w : words) out << show(w) << "\n";
    return kExitOk;
}

int cmd_simulate(const Globals& g, const std::string& machine, std::size_t max_steps, std::size_t max_counter,
                 bool encode, std::ostream& out) {
    const TwoCounterAutomaton a = load_machine(machine);
    const auto found = find_accepting_computations(a, max_steps, max_counter);
    if (g.json()) {
        out << ordered_json{{"command", "simulate"}, {"status", "ok"}, {"max_steps", max_steps},
                            {"max_counter", max_counter}, {"count", found.size()}}.dump()
            << "\n";
        for (const auto& c : found) {
            ordered_json seq = ordered_json::array();
            for (const auto& conf : c) seq.push_back({conf.state, conf.m1, conf.m2});
            ordered_json line{{"computation", std::move(seq)}};
            if (encode) line["encoding"] = encode_computation(c);
            out << line.dump() << "\n";
        }
        return kExitOk;
    }
    out << "simulate max-steps=" << max_steps << " max-counter=" << max_counter << " count=" << found.size() << "\n";
    for (const auto& c : found) {
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << to_string(c[i]);
        out << "\n";
        if (encode) out << "  enc = " << encode_computation(c) << "\n";
    }
    return kExitOk;
}

int cmd_reduce(const Globals& g, const std::string& machine, const std::string& out_dir, std::ostream& out) {
    const TwoCounterAutomaton a = load_machine(machine);
    const ReductionOutput r = build_beta(a, Alphabet(g.alphabet));

    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw BadInput(out_dir + ": " + ec.message());
    const std::vector<std::pair<std::string, std::string>> files{
        {"alpha.pat", format_pattern(r.alpha.pattern()) + "\n"},
        {"alpha.cst", format_constraints(r.alpha)},
        {"beta.pat", format_pattern(r.beta.pattern()) + "\n"},
        {"beta.cst", format_constraints(r.beta)},
        {"predicates.json", predicates_to_json(r)},
    };
    for (const auto& [name, content] : files) write_file(dir / name, content);

    if (g.json()) {
        ordered_json files_json = ordered_json::array();
        for (const auto& f : files) files_json.push_back((dir / f.first).string());
        out << ordered_json{{"command", "reduce"},
                            {"status", "ok"},
                            {"mu", r.mu},
                            {"structure", r.counts.structure},
                            {"nonfinal", r.counts.nonfinal},
                            {"counter_change", r.counts.counter_change},
                            {"invalid_transition", r.counts.invalid_transition},
                            {"files", std::move(files_json)}}
                   .dump()
            << "\n";
        return kExitOk;
    }
    out << "mu = " << r.mu << "\n"
        << "structure = " << r.counts.structure << "\n"
        << "nonfinal = " << r.counts.nonfinal << "\n"
        << "counter_change = " << r.counts.counter_change << "\n"
        << "invalid_transition = " << r.counts.invalid_transition << "\n";
    for (const auto& f : files) out << "wrote " << (dir / f.first).string() << "\n";
    return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& machine, const VerifyOptions& options,
               const std::string& override_path, std::ostream& out) {
    const Alphabet alphabet(g.alphabet);
    const TwoCounterAutomaton a = load_machine(machine);
    const ReductionOutput r = build_beta(a, alphabet);
    ConstrainedPattern beta = r.beta;
    if (!override_path.empty()) {
        try {
            beta = assemble_beta(predicates_from_json(read_file(override_path), alphabet), alphabet);
        } catch (const ParseError& e) {
            throw BadInput(override_path + ":" + e.what());
        } catch (const Error& e) {
            throw BadInput(override_path + ": " + e.what());
        }
    }
    const VerifyReport report = verify_reduction(a, r.alpha, beta, options);

    if (g.json()) {
        out << ordered_json{{"command", "verify"},
                            {"status", report.ok() ? "ok" : "violation"},
                            {"max_len", options.max_len},
                            {"exhaustive_len", report.exhaustive_bound},
                            {"corpus_len", report.corpus_bound},
                            {"exhaustive_words", report.exhaustive_words},
                            {"corpus_words", report.corpus_words},
                            {"strata", report.strata()},
                            {"gap", report.gap}}
                   .dump()
            << "\n";
        for (const auto& v : report.violations) {
            out << ordered_json{{"violation", v.check}, {"word", v.word}, {"detail", v.detail}}.dump() << "\n";
        }
        return report.ok() ? kExitOk : kExitViolation;
    }
    out << "verify max-len=" << options.max_len << " exhaustive-len=" << report.exhaustive_bound
        << " corpus-len=" << report.corpus_bound << "\n"
        << report.strata() << "\n";
    for (const auto& v : report.violations) out << "VIOLATION " << v.check << " " << show(v.word) << ": " << v.detail << "\n";
    out << "GAP = {";
    for (std::size_t i = 0; i < report.gap.size(); ++i) out << (i ? ", " : "") << show(report.gap[i]);
    out << "}\n" << (report.ok() ? "PASS" : "FAIL") << "\n";
    return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pattern languages with regular constraints, and the 2-counter reduction."};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--alphabet", g.alphabet, "ordered symbols")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string pat;
    std::string cst;
    std::string word;
    std::string mode = "E";
    std::size_t max_len = 20;
    std::string machine;
    std::size_t max_steps = 10;
    std::size_t max_counter = 3;
    bool encode = false;
    std::string out_dir;
    VerifyOptions verify_options;
    std::string override_path;

    auto* match = app.add_subcommand("match", "decide membership and print a witness");
    match->fallthrough();
    match->add_option("pattern", pat, "pattern file")->required();
    match->add_option("constraints", cst, "constraint file")->required();
    match->add_option("word", word, "word (<eps> for the empty word)")->required();
    match->add_option("--mode", mode)->check(CLI::IsMember({"E", "NE"}))->capture_default_str();

    auto* enumerate = app.add_subcommand("enum", "list the language up to a length");
    enumerate->fallthrough();
    enumerate->add_option("pattern", pat, "pattern file")->required();
    enumerate->add_option("constraints", cst, "constraint file")->required();
    enumerate->add_option("--mode", mode)->check(CLI::IsMember({"E", "NE"}))->capture_default_str();
    enumerate->add_option("--max-len", max_len)->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "bounded search for accepting computations");
    simulate->fallthrough();
    simulate->add_option("machine", machine, "machine JSON")->required();
    simulate->add_option("--max-steps", max_steps, "configurations per computation")->capture_default_str();
    simulate->add_option("--max-counter", max_counter)->capture_default_str();
    simulate->add_flag("--encode", encode, "print enc(...) of each computation");

    auto* reduce = app.add_subcommand("reduce", "emit the alpha/beta pattern pair");
    reduce->fallthrough();
    reduce->add_option("machine", machine, "machine JSON")->required();
    reduce->add_option("--out-dir", out_dir)->required();

    auto* verify = app.add_subcommand("verify", "check the reduction on bounded words");
    verify->fallthrough();
    verify->add_option("machine", machine, "machine JSON")->required();
    verify->add_option("--max-len", verify_options.max_len)->capture_default_str();
    verify->add_option("--exhaustive-len", verify_options.exhaustive_len)->capture_default_str();
    verify->add_option("--corpus-len", verify_options.corpus_len)->capture_default_str();
    verify->add_option("--predicates-override", override_path, "predicates.json replacing the generated beta");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }

    try {
        (void)Alphabet(g.alphabet);
        if (*match) return cmd_match(g, pat, cst, word, mode, out);
        if (*enumerate) return cmd_enum(g, pat, cst, mode, max_len, out);
        if (*simulate) return cmd_simulate(g, machine, max_steps, max_counter, encode, out);
        if (*reduce) return cmd_reduce(g, machine, out_dir, out);
        if (*verify) return cmd_verify(g, machine, verify_options, override_path, out);
    } catch (const BadInput& e) {
        err << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const Error& e) {
        err << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

}  // namespace regpat
