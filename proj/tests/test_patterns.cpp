#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "regpat/dsl.hpp"
#include "regpat/error.hpp"
#include "regpat/pattern.hpp"
#include "regpat/reduction.hpp"

using namespace regpat;

namespace {

const Alphabet kBin = Alphabet::binary();

ConstrainedPattern cp_of(std::string_view pattern, std::string_view constraints, const Alphabet& a = kBin) {
    return ConstrainedPattern(parse_pattern(pattern, a), parse_constraints(constraints, a));
}

std::vector<Word> filter_members(const ConstrainedPattern& cp, Mode mode, std::size_t n) {
    std::vector<Word> out;
    for (const auto& w : cp.alphabet().words_up_to(n)) {
        if (oracle::naive_member(w, cp, mode)) out.push_back(w);
    }
    return out;
}

std::size_t total_length(const Substitution& h) {
    std::size_t n = 0;
    for (const auto& [name, word] : h) n += word.size();
    return n;
}

}  // namespace

TEST_SUITE("patterns") {
    TEST_CASE("substitution") {
        const Alphabet ab("ab");
        const Pattern p = parse_pattern("x1 'a' 'b' x2 x2", ab);
        CHECK(apply_substitution(p, {{"x1", "aaa"}, {"x2", "ba"}}) == "aaaabbaba");
        CHECK(apply_substitution(p, {{"x1", "aaa"}, {"x2", ""}}) == "aaaab");
        CHECK(apply_substitution(parse_pattern("x y x", ab), {{"x", ""}, {"y", ""}}).empty());
        CHECK_THROWS_AS(apply_substitution(p, {{"x1", "a"}}), Error);
        CHECK(p.variables() == std::vector<std::string>{"x1", "x2"});
        CHECK_FALSE(p.is_terminal_free());
        CHECK_THROWS_AS(Pattern({}), Error);
    }

    TEST_CASE("r-validity") {
        ConstraintMap c(kBin);
        c.set("x", "() | 0###0");
        CHECK(is_r_valid({{"x", "0###0"}}, c, {"x"}));
        CHECK_FALSE(is_r_valid({{"x", "0#0"}}, c, {"x"}));
        CHECK(is_r_valid({{"y", "#0#0##"}}, c, {"y"}));
        CHECK_FALSE(is_r_valid({}, c, {"y"}));
        CHECK(c.source("x") == "() | 0###0");
        CHECK_FALSE(c.source("y"));
        CHECK_THROWS_AS(c.set("z", universal_language(Alphabet("ab"))), AlphabetError);
    }

    TEST_CASE("terminals must be in the alphabet") {
        const Pattern p({Terminal{'a'}});
        CHECK_THROWS_AS(ConstrainedPattern(p, ConstraintMap(kBin)), AlphabetError);
    }

    TEST_CASE("witness on the alpha pattern") {
        const ConstrainedPattern alpha = build_alpha();
        const auto h = membership("0###00###0", alpha, Mode::E);
        REQUIRE(h);
        CHECK(h->at("xv") == "0###0");
        CHECK(h->at("a1").empty());
        CHECK(h->at("yt").empty());

        const auto e = membership("", alpha, Mode::E);
        REQUIRE(e);
        for (const auto& [name, word] : *e) CHECK(word.empty());
        CHECK_FALSE(membership("", alpha, Mode::NE));
    }

    TEST_CASE("single variable, NE") {
        const auto cp = cp_of("xv", "xv : () | 0###0");
        const auto h = membership("0###0", cp, Mode::NE);
        REQUIRE(h);
        CHECK(h->at("xv") == "0###0");
        CHECK(enumerate_language(cp, Mode::E, 5) == std::vector<Word>{"", "0###0"});
        CHECK(enumerate_language(cp, Mode::NE, 5) == std::vector<Word>{"0###0"});
        CHECK(enumerate_language(cp_of("x x", "x : () | 0###0"), Mode::E, 10) == std::vector<Word>{"", "0###00###0"});
    }

    TEST_CASE("alpha slice matches a filter of all short words") {
        const ConstrainedPattern alpha = build_alpha();
        const auto listed = enumerate_language(alpha, Mode::E, 5);
        CHECK(listed == filter_members(alpha, Mode::E, 5));
        const Dfa& yt = alpha.constraints().at("yt");
        for (const auto& w : kBin.words_up_to(5)) {
            if (yt.accepts(w)) CHECK(std::find(listed.begin(), listed.end(), w) != listed.end());
        }
        CHECK(listed.front().empty());
    }

    TEST_CASE("bounded equivalence") {
        const auto x = cp_of("x", "x : () | 0");
        const auto y = cp_of("y", "y : () | #");
        CHECK(bounded_equivalence(x, x, Mode::E, 6).equal);
        const auto r = bounded_equivalence(x, y, Mode::E, 1);
        CHECK_FALSE(r.equal);
        CHECK(r.counterexample == "0");
        CHECK(r.side == EquivalenceResult::Side::First);

        const auto star = cp_of("x", "x : .*");
        const auto plus = cp_of("y", "y : .+");
        for (std::size_t n = 0; n <= 8; ++n) CHECK(bounded_equivalence(star, plus, Mode::NE, n).equal);
        CHECK_FALSE(bounded_equivalence(star, plus, Mode::E, 0).equal);
    }

    TEST_CASE("NE rejects too-short words") {
        const Alphabet ab("ab");
        CHECK_FALSE(Matcher(cp_of("x1 x2 x3", "", ab), Mode::NE).matches("ab"));
        CHECK(Matcher(cp_of("x1 x2 x3", "", ab), Mode::E).matches("ab"));
        CHECK_THROWS_AS(Matcher(cp_of("x", "", ab), Mode::E).matches("0"), AlphabetError);
    }

    TEST_CASE("canonical witness minimises total binding length") {
        const Alphabet ab("ab");
        const auto cp = cp_of("x y x", "", ab);
        const auto h = membership("abab", cp, Mode::E);
        REQUIRE(h);
        CHECK(total_length(*h) == 2);
        CHECK(h->at("x") == "ab");
        CHECK(h->at("y").empty());
        // Equal totals: the earlier variable takes the shorter word.
        const auto g = membership("ab", cp_of("x y", "", ab), Mode::E);
        REQUIRE(g);
        CHECK(g->at("x").empty());
        CHECK(g->at("y") == "ab");
    }

    TEST_CASE("property: matcher, witness and enumerator agree with brute force") {
        oracle::Gen gen(99);
        const std::vector<std::string> langs{".*", "()|0", "0+", "(0#)*", "#.*", "!(.*##.*)", "() | 0###0", "0.*0"};
        for (int trial = 0; trial < 80; ++trial) {
            const std::size_t vars = 1 + gen.below(3);
            const std::size_t len = 1 + gen.below(5);
            std::vector<PatternItem> items;
            for (std::size_t i = 0; i < len; ++i) {
                if (gen.below(3) == 0) {
                    items.push_back(Terminal{gen.coin() ? '0' : '#'});
                } else {
                    items.push_back(Variable{"v" + std::to_string(gen.below(vars))});
                }
            }
            ConstraintMap c(kBin);
            for (std::size_t v = 0; v < vars; ++v) {
                if (gen.coin()) c.set("v" + std::to_string(v), langs[gen.below(langs.size())]);
            }
            const ConstrainedPattern cp(Pattern(items), c);
            for (Mode mode : {Mode::E, Mode::NE}) {
                const auto expected = filter_members(cp, mode, 7);
                CHECK(enumerate_language(cp, mode, 7) == expected);
                Matcher m(cp, mode);
                const std::set<Word> members(expected.begin(), expected.end());
                for (const auto& w : kBin.words_up_to(7)) {
                    const bool in = members.count(w) > 0;
                    CHECK(m.matches(w) == in);
                    const auto h = m.witness(w);
                    CHECK(h.has_value() == in);
                    if (h) {
                        CHECK(apply_substitution(cp.pattern(), *h) == w);
                        CHECK(is_r_valid(*h, cp.constraints(), cp.pattern().variables()));
                        if (mode == Mode::NE) {
                            for (const auto& [name, word] : *h) CHECK_FALSE(word.empty());
                        }
                    }
                }
                // The property search finds a violation iff some listed word is rejected.
                const Dfa avoid = factor_avoid(kBin, "##");
                const auto bad = find_property_violation(cp, mode, 7, avoid);
                bool any = false;
                for (const auto& w : expected) any = any || !avoid.accepts(w);
                CHECK(bad.has_value() == any);
                if (bad) {
                    CHECK_FALSE(avoid.accepts(*bad));
                    CHECK(members.count(*bad) == 1);
                }
            }
        }
    }
}

TEST_SUITE("dsl") {
    TEST_CASE("pattern text round trip") {
        const Pattern p = parse_pattern("  xv '0' a1\n xv '#' yt ", kBin);
        CHECK(p.size() == 6);
        CHECK(format_pattern(p) == "xv '0' a1 xv '#' yt");
        CHECK(parse_pattern(format_pattern(p), kBin) == p);
    }

    TEST_CASE("pattern errors") {
        try {
            (void)parse_pattern("x\n  'a'", kBin);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() == 4);
        }
        CHECK_THROWS_AS(parse_pattern("", kBin), ParseError);
        CHECK_THROWS_AS(parse_pattern("9x", kBin), ParseError);
        CHECK_THROWS_AS(parse_pattern("'0", kBin), ParseError);
    }

    TEST_CASE("constraint files") {
        const ConstraintMap c = parse_constraints("\nx : () | 0###0\n\ny:0+\n", kBin);
        CHECK(c.constrained_variables() == std::vector<std::string>{"x", "y"});
        CHECK(c.at("y").accepts("000"));
        CHECK_FALSE(c.at("y").accepts(""));
        try {
            (void)parse_constraints("x : 0\ny : 0 | (#", kBin);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() > 4);
        }
        CHECK_THROWS_AS(parse_constraints("x : 0\nx : #", kBin), ParseError);
        CHECK_THROWS_AS(parse_constraints("x 0", kBin), ParseError);
        CHECK_THROWS_AS(parse_constraints("x : a", kBin), ParseError);
    }

    TEST_CASE("constraint text round trip") {
        const auto cp = ConstrainedPattern(parse_pattern("y x y", kBin), parse_constraints("x : 0+\ny : ()|#", kBin));
        const std::string text = format_constraints(cp);
        CHECK(text == "y : ()|#\nx : 0+\n");
        const ConstraintMap again = parse_constraints(text, kBin);
        for (const auto& v : {"x", "y"}) CHECK(equivalent(again.at(v), cp.constraints().at(v)));
    }

    TEST_CASE("identifiers") {
        CHECK(is_identifier("p12_y3"));
        CHECK(is_identifier("_"));
        CHECK_FALSE(is_identifier(""));
        CHECK_FALSE(is_identifier("1x"));
        CHECK_FALSE(is_identifier("a-b"));
    }
}
