#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "regpat/cli.hpp"
#include "regpat/dsl.hpp"
#include "regpat/reduction.hpp"
#include "regpat/verify.hpp"

using namespace regpat;
namespace fs = std::filesystem;

namespace {

const std::string kExamples = REGPAT_EXAMPLES_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("regpat_tests_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("framed middles") {
        CHECK(framed_middle("0###00##00###0") == Word("##"));
        CHECK(framed_middle("0###0000###0") == Word(""));
        CHECK_FALSE(framed_middle("0###0##0###0"));
        CHECK_FALSE(framed_middle("0###00###00###0"));
        CHECK_FALSE(framed_middle(""));
    }

    TEST_CASE("mutation corpus") {
        const TwoCounterAutomaton a(2, 0, {1}, {{0, 0, 0, 1, 0, 0}});
        const auto corpus = mutation_corpus(a, 35);
        CHECK(std::is_sorted(corpus.begin(), corpus.end(),
                             [](const Word& x, const Word& y) { return Alphabet::binary().shortlex_less(x, y); }));
        CHECK(std::adjacent_find(corpus.begin(), corpus.end()) == corpus.end());
        for (const auto& u : corpus) {
            CHECK(u.size() <= 35);
            CHECK(u.find("###") == Word::npos);
        }
        CHECK(std::find(corpus.begin(), corpus.end(), "##0#00000#00000##00#00000#00000##") != corpus.end());
        CHECK(std::find(corpus.begin(), corpus.end(), "##0#00000#00000##") != corpus.end());
    }

    TEST_CASE("small bounds") {
        const TwoCounterAutomaton a(2, 0, {1}, {{0, 0, 0, 1, 0, 0}});
        const auto zero = verify_reduction(a, VerifyOptions{0, 14, 35});
        CHECK(zero.ok());
        CHECK(zero.exhaustive_words == 1);
        CHECK(zero.corpus_words == 0);
        CHECK(zero.gap.empty());

        const auto r = verify_reduction(a, VerifyOptions{20, 12, 35});
        CHECK(r.ok());
        CHECK(r.gap.empty());
        CHECK(r.exhaustive_words == Alphabet::binary().words_up_to(12).size());
        CHECK(r.corpus_bound == 8);
        CHECK(r.strata().find("(a) all words of length <= 12") != std::string::npos);
    }

    TEST_CASE("a broken beta is caught") {
        const TwoCounterAutomaton a(2, 0, {1}, {{0, 0, 0, 1, 0, 0}});
        auto preds = build_beta(a).predicates;
        preds.erase(preds.begin());  // drop the structure predicate
        const auto beta = assemble_beta(preds, Alphabet::binary());
        const auto r = verify_reduction(a, build_alpha(), beta, VerifyOptions{24, 8, 35});
        CHECK_FALSE(r.ok());
    }
}

TEST_SUITE("cli") {
    TEST_CASE("match") {
        const fs::path dir = scratch("match");
        write(dir / "p.pat", "x1 'a' 'b' x2 x2\n");
        write(dir / "p.cst", "");
        const auto r = cli({"--alphabet", "ab", "match", (dir / "p.pat").string(), (dir / "p.cst").string(), "aaaabbaba"});
        CHECK(r.code == kExitOk);
        const auto ls = lines(r.out);
        REQUIRE(ls.size() == 3);
        CHECK(ls[0] == "MEMBER");
        // Any valid witness is acceptable; rebuild the word from it.
        Substitution h;
        for (std::size_t i = 1; i < ls.size(); ++i) {
            const auto eq = ls[i].find(" = ");
            const std::string value = ls[i].substr(eq + 3);
            h[ls[i].substr(0, eq)] = value == "<eps>" ? "" : value;
        }
        CHECK(apply_substitution(parse_pattern("x1 'a' 'b' x2 x2", Alphabet("ab")), h) == "aaaabbaba");

        write(dir / "q.pat", "x1 x2 x3");
        const auto ne = cli({"--alphabet", "ab", "match", (dir / "q.pat").string(), (dir / "p.cst").string(), "ab",
                             "--mode", "NE"});
        CHECK(ne.code == kExitOk);
        CHECK(ne.out == "NOT-MEMBER\n");

        const auto js = cli({"--alphabet", "ab", "--format", "json", "match", (dir / "p.pat").string(),
                             (dir / "p.cst").string(), "aaaab"});
        const auto doc = nlohmann::json::parse(lines(js.out).at(0));
        CHECK(doc["member"] == true);
        CHECK(doc["status"] == "ok");
    }

    TEST_CASE("malformed input") {
        const fs::path dir = scratch("bad");
        write(dir / "p.pat", "x 'q'");
        write(dir / "p.cst", "x : (0");
        const auto r = cli({"match", (dir / "p.pat").string(), (dir / "p.cst").string(), "0"});
        CHECK(r.code == kExitMalformed);
        CHECK(r.err.find("1:") != std::string::npos);
        CHECK(cli({"simulate", kExamples + "/bad_decrement.json"}).code == kExitMalformed);
        CHECK(cli({"simulate", (dir / "missing.json").string()}).code == kExitMalformed);
        CHECK(cli({"frobnicate"}).code == kExitMalformed);
        CHECK(cli({}).code == kExitMalformed);
    }

    TEST_CASE("enum") {
        const fs::path dir = scratch("enum");
        write(dir / "x.pat", "x");
        write(dir / "x.cst", "x : () | 0###0");
        const auto e = cli({"enum", (dir / "x.pat").string(), (dir / "x.cst").string(), "--max-len", "5"});
        CHECK(e.code == kExitOk);
        CHECK(e.out == "enum mode=E max-len=5 count=2\n<eps>\n0###0\n");
        const auto ne =
            cli({"enum", (dir / "x.pat").string(), (dir / "x.cst").string(), "--max-len", "5", "--mode", "NE"});
        CHECK(ne.out == "enum mode=NE max-len=5 count=1\n0###0\n");
    }

    TEST_CASE("simulate") {
        const auto r = cli({"simulate", kExamples + "/a1.json", "--max-steps", "3", "--max-counter", "2", "--encode"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("count=1") != std::string::npos);
        CHECK(r.out.find("enc = ##0#00000#00000##00#00000#00000##") != std::string::npos);
        const auto none = cli({"simulate", kExamples + "/a1_no_final.json"});
        CHECK(none.code == kExitOk);
        CHECK(none.out.find("count=0") != std::string::npos);
    }

    TEST_CASE("reduce is reproducible and round trips") {
        const fs::path d1 = scratch("reduce1");
        const fs::path d2 = scratch("reduce2");
        const auto r1 = cli({"reduce", kExamples + "/a1.json", "--out-dir", d1.string()});
        const auto r2 = cli({"reduce", kExamples + "/a1.json", "--out-dir", d2.string()});
        CHECK(r1.code == kExitOk);
        CHECK(r1.out.find("mu = 105") != std::string::npos);
        for (const auto* f : {"alpha.pat", "alpha.cst", "beta.pat", "beta.cst", "predicates.json"}) {
            CHECK_MESSAGE(slurp(d1 / f) == slurp(d2 / f), f);
            CHECK_FALSE(slurp(d1 / f).empty());
        }
        const auto doc = nlohmann::json::parse(slurp(d1 / "predicates.json"));
        CHECK(doc["mu"] == doc["predicates"].size());

        const auto eps = cli({"match", (d1 / "alpha.pat").string(), (d1 / "alpha.cst").string(), "<eps>"});
        CHECK(eps.code == kExitOk);
        CHECK(lines(eps.out).at(0) == "MEMBER");
        CHECK(cli({"match", (d1 / "beta.pat").string(), (d1 / "beta.cst").string(), "0"}).code == kExitOk);

        const auto ea = cli({"enum", (d1 / "alpha.pat").string(), (d1 / "alpha.cst").string(), "--max-len", "10"});
        const auto eb = cli({"enum", (d1 / "beta.pat").string(), (d1 / "beta.cst").string(), "--max-len", "10"});
        CHECK(ea.code == kExitOk);
        CHECK(ea.out == eb.out);
    }

    TEST_CASE("verify and a corrupted predicate file") {
        const auto ok = cli({"verify", kExamples + "/a1.json", "--max-len", "20"});
        CHECK(ok.code == kExitOk);
        CHECK(ok.out.find("GAP = {}") != std::string::npos);
        CHECK(lines(ok.out).back() == "PASS");

        const fs::path dir = scratch("verify");
        REQUIRE(cli({"reduce", kExamples + "/a1.json", "--out-dir", dir.string()}).code == kExitOk);
        auto doc = nlohmann::ordered_json::parse(slurp(dir / "predicates.json"));
        doc["predicates"].erase(0);
        write(dir / "broken.json", doc.dump(2));
        const auto bad = cli({"verify", kExamples + "/a1.json", "--max-len", "24", "--exhaustive-len", "8",
                              "--predicates-override", (dir / "broken.json").string()});
        CHECK(bad.code == kExitViolation);
        CHECK(bad.out.find("VIOLATION") != std::string::npos);
        CHECK(lines(bad.out).back() == "FAIL");
    }
}
