#include "doctest.h"
#include "oracles.hpp"
#include "regpat/counter_machine.hpp"
#include "regpat/error.hpp"
#include "regpat/reduction.hpp"

using namespace regpat;

namespace {

TwoCounterAutomaton a1() { return TwoCounterAutomaton(2, 0, {1}, {{0, 0, 0, 1, 0, 0}}); }

/// Independent encoder written from the definition.
Word enc(std::size_t q, std::size_t m1, std::size_t m2) {
    return std::string(1 + q, '0') + "#" + std::string(5 + 2 * m1, '0') + "#" + std::string(5 + 2 * m2, '0');
}

}  // namespace

TEST_SUITE("counter_machine") {
    TEST_CASE("validation") {
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 0, {1}, {{0, 0, 0, 0, -1, 0}}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 0, {1}, {{0, 1, 0, 0, 0, -1}}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 2, {1}, {}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 0, {2}, {}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 0, {}, {{0, 2, 0, 0, 0, 0}}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(2, 0, {}, {{0, 0, 0, 0, 2, 0}}), MachineError);
        CHECK_THROWS_AS(TwoCounterAutomaton(0, 0, {}, {}), MachineError);
        try {
            TwoCounterAutomaton(1, 0, {}, {{0, 0, 0, 0, -1, 0}});
        } catch (const MachineError& e) {
            CHECK(std::string(e.what()).find("(q0,0,0) -> (q0,-1,0)") != std::string::npos);
        }
        const TwoCounterAutomaton dup(2, 0, {1, 1}, {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0}});
        CHECK(dup.transitions().size() == 1);
        CHECK(dup.finals().size() == 1);
        CHECK(dup.is_final(1));
        CHECK(dup.has_transition({0, 0, 0, 1, 0, 0}));
    }

    TEST_CASE("json") {
        const auto a = parse_machine_json(
            R"({"states": 2, "initial": 0, "finals": [1], "transitions": [{"from": 0, "c1": 0, "c2": 0, "to": 1, "r1": 0, "r2": 0}]})");
        CHECK(a.state_count() == 2);
        CHECK(a.transitions().size() == 1);
        const auto again = parse_machine_json(machine_to_json(a));
        CHECK(again.transitions() == a.transitions());
        CHECK(again.finals() == a.finals());
        CHECK_THROWS_AS(parse_machine_json("{"), ParseError);
        CHECK_THROWS_AS(parse_machine_json(R"({"initial": 0})"), ParseError);
        CHECK_THROWS_AS(parse_machine_json(R"({"states": 1, "initial": 0, "finals": [], "transitions": [{"from": 0, "c1": 0, "c2": 0, "to": 0, "r1": -1, "r2": 0}]})"),
                        MachineError);
    }

    TEST_CASE("successors") {
        CHECK(successors(a1(), {0, 0, 0}) == std::vector<Configuration>{{1, 0, 0}});
        const TwoCounterAutomaton inc(1, 0, {}, {{0, 0, 0, 0, 1, 0}});
        CHECK(successors(inc, {0, 0, 0}) == std::vector<Configuration>{{0, 1, 0}});
        CHECK(successors(inc, {0, 1, 0}).empty());
        const TwoCounterAutomaton none(3, 0, {}, {});
        CHECK(successors(none, {2, 4, 1}).empty());
    }

    TEST_CASE("accepting computations") {
        const TwoCounterAutomaton fin0(1, 0, {0}, {});
        CHECK(is_accepting_computation(fin0, {{0, 0, 0}}));
        CHECK(is_accepting_computation(a1(), {{0, 0, 0}, {1, 0, 0}}));
        CHECK_FALSE(is_accepting_computation(a1(), {{1, 0, 0}}));
        CHECK_FALSE(is_accepting_computation(a1(), {}));
        CHECK_FALSE(is_accepting_computation(a1(), {{0, 0, 0}, {1, 0, 1}}));

        CHECK(find_accepting_computations(a1(), 3, 2) == std::vector<Computation>{{{0, 0, 0}, {1, 0, 0}}});
        CHECK(find_accepting_computations(a1(), 1, 5).empty());
        CHECK(find_accepting_computations(TwoCounterAutomaton(2, 0, {}, {{0, 0, 0, 1, 0, 0}}), 6, 3).empty());
    }

    TEST_CASE("encoding examples") {
        CHECK(encode_config({0, 0, 0}) == "0#00000#00000");
        CHECK(encode_config({2, 1, 0}) == "000#0000000#00000");
        CHECK(encode_config({0, 0, 2}) == "0#00000#000000000");
        CHECK(encode_computation({{0, 0, 0}}) == "##0#00000#00000##");
        CHECK(encode_computation({}) == "##");
    }

    TEST_CASE("decoding rejects malformed words") {
        for (const char* bad : {"##0#0000#00000##", "", "##", "0#00000#00000", "##0#00000#00000#", "###0#00000#00000##",
                                "##0#00000#00000##0##", "##0##00000#00000##", "##0#00000#00000###"}) {
            const auto r = decode_computation(bad, std::nullopt);
            CHECK_MESSAGE(std::holds_alternative<Malformed>(r), bad);
        }
        CHECK(std::holds_alternative<Malformed>(decode_computation("##000#00000#00000##", 2)));
        CHECK(std::holds_alternative<Computation>(decode_computation("##000#00000#00000##", 3)));
    }

    TEST_CASE("valid computations") {
        const Word w = "##0#00000#00000##00#00000#00000##";
        CHECK(in_valc(a1(), w));
        CHECK_FALSE(in_valc(a1(), ""));
        CHECK_FALSE(in_valc(TwoCounterAutomaton(2, 0, {}, {{0, 0, 0, 1, 0, 0}}), w));
        CHECK_FALSE(in_valc(a1(), "##0#00000#00000##"));
    }

    TEST_CASE("property: encoding agrees with the definition and round trips") {
        const Dfa lg = good_structure_dfa(Alphabet::binary());
        std::vector<Configuration> configs;
        for (std::size_t q = 0; q <= 3; ++q) {
            for (std::size_t m1 = 0; m1 <= 3; ++m1) {
                for (std::size_t m2 = 0; m2 <= 3; ++m2) configs.push_back({q, m1, m2});
            }
        }
        for (const auto& c : configs) CHECK(encode_config(c) == enc(c.state, c.m1, c.m2));
        oracle::Gen gen(3);
        for (int trial = 0; trial < 400; ++trial) {
            Computation seq(1 + gen.below(4));
            Word expected = "##";
            for (auto& c : seq) {
                c = configs[gen.below(configs.size())];
                expected += enc(c.state, c.m1, c.m2) + "##";
            }
            const Word w = encode_computation(seq);
            CHECK(w == expected);
            CHECK(oracle::good_structure(w));
            CHECK(lg.accepts(w));
            const auto back = decode_computation(w, 4);
            REQUIRE(std::holds_alternative<Computation>(back));
            CHECK(std::get<Computation>(back) == seq);
        }
    }

    TEST_CASE("property: decoding accepts exactly the structure language") {
        for (const auto& w : Alphabet::binary().words_up_to(18)) {
            const bool decodes = std::holds_alternative<Computation>(decode_computation(w, std::nullopt));
            if (decodes != oracle::good_structure(w)) FAIL_CHECK(w);
        }
    }

    TEST_CASE("property: step relation and search agree with brute force") {
        oracle::Gen gen(11);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n = 1 + gen.below(3);
            std::vector<Transition> table;
            for (std::size_t k = 0; k < 5; ++k) {
                Transition t{gen.below(n), static_cast<int>(gen.below(2)), static_cast<int>(gen.below(2)), gen.below(n),
                             static_cast<int>(gen.below(3)) - 1, static_cast<int>(gen.below(3)) - 1};
                if (t.c1 == 0 && t.r1 < 0) t.r1 = 0;
                if (t.c2 == 0 && t.r2 < 0) t.r2 = 0;
                table.push_back(t);
            }
            std::vector<std::size_t> finals;
            for (std::size_t q = 0; q < n; ++q) {
                if (gen.coin()) finals.push_back(q);
            }
            const TwoCounterAutomaton a(n, 0, finals, table);
            for (std::size_t q = 0; q < n; ++q) {
                for (std::size_t m1 = 0; m1 <= 2; ++m1) {
                    for (std::size_t m2 = 0; m2 <= 2; ++m2) {
                        auto got = successors(a, {q, m1, m2});
                        std::sort(got.begin(), got.end());
                        CHECK(got == oracle::step(a, {q, m1, m2}));
                    }
                }
            }
            const auto found = find_accepting_computations(a, 4, 2);
            CHECK(found == oracle::accepting_computations(a, 4, 2));
            for (const auto& c : found) {
                CHECK(is_accepting_computation(a, c));
                CHECK(in_valc(a, encode_computation(c)));
            }
        }
    }
}
