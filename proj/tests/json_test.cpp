#include <catch2/catch_amalgamated.hpp>

#include "rideal/json_io.hpp"
#include "rideal/ranker.hpp"
#include "support/test_support.hpp"

using namespace rideal;
using testsupport::RandomSource;

TEST_CASE("automaton json round trip") {
    SECTION("language and structure survive on random automata") {
        RandomSource rnd(90210);
        for (int i = 0; i < 40; ++i) {
            Nfa a = rnd.random_nfa(5, 3);
            Nfa back = nfa_from_json(to_json(a));
            CHECK(back.state_count() == a.state_count());
            CHECK(compare(back, a, CompareMode::Equivalent).ok);
            CHECK(to_json(back) == to_json(a));
        }
    }
    SECTION("deterministic automata load as dfas with inferred completeness") {
        Dfa md = to_minimal_dfa(testsupport::fixture_ab_astar());
        Dfa back = dfa_from_json(to_json(md));
        CHECK(back.is_complete);
        CHECK(compare(back, md, CompareMode::Equivalent).ok);
        Dfa partial = trim_dfa(md);
        CHECK_FALSE(dfa_from_json(to_json(partial)).is_complete);
    }
    SECTION("nondeterministic input is rejected as a dfa") {
        Nfa a(Alphabet("a"));
        State p = a.add_state(true);
        State q = a.add_state();
        a.add_transition(p, 'a', p);
        a.add_transition(p, 'a', q);
        a.mark_initial(p);
        CHECK_THROWS_AS(dfa_from_json(to_json(a)), std::invalid_argument);
    }
    SECTION("unknown state names are rejected") {
        json j = to_json(parse_regex("a", Alphabet("a")));
        j["initial"].push_back("nope");
        CHECK_THROWS_AS(nfa_from_json(j), std::invalid_argument);
    }
    SECTION("output is byte-stable") {
        Dfa md = to_minimal_dfa(testsupport::hierarchy_one_pass());
        CHECK(to_json(md).dump(2) == to_json(md).dump(2));
        CHECK(to_json(dfa_from_json(to_json(md))).dump(2) == to_json(md).dump(2));
    }
}

TEST_CASE("two-way json round trip") {
    TwoWayAutomaton t = testsupport::flip_po2dfa_acab();
    json j = to_json(t);
    CHECK(j.contains("right_states"));
    CHECK(j.contains("left_states"));
    TwoWayAutomaton back = two_way_from_json(j);
    CHECK(back.state_count() == t.state_count());
    CHECK(validate(back).empty());
    CHECK(compare(to_nfa(to_one_way_dfa(back)), to_nfa(to_one_way_dfa(t)),
                  CompareMode::Equivalent).ok);
    CHECK(to_json(back) == j);

    SECTION("markers appear as '>' and '<'") {
        bool has_left = false, has_right = false;
        for (const auto& tr : j["transitions"]) {
            has_left = has_left || tr[1] == ">";
            has_right = has_right || tr[1] == "<";
        }
        CHECK(has_left);
        CHECK(has_right);
    }
    SECTION("duplicate transitions are a determinism violation") {
        json bad = j;
        bad["transitions"].push_back({"q0", "a", "q3"});  // q0 already moves on a
        CHECK_THROWS_AS(two_way_from_json(bad), std::invalid_argument);
    }
    SECTION("states must be partitioned") {
        json bad = j;
        bad["left_states"].push_back("q0");  // q0 is right-moving already
        CHECK_THROWS_AS(two_way_from_json(bad), std::invalid_argument);
    }
}

TEST_CASE("staiger-wagner json carries the table") {
    Dfa d = to_minimal_dfa(testsupport::fixture_ab_astar());
    StaigerWagnerAutomaton b = to_staiger_wagner(to_nfa(d));
    json j = to_json(b);
    REQUIRE(j.contains("table"));
    StaigerWagnerAutomaton back = sw_from_json(j);
    CHECK(compare(sw_to_nfa(back), sw_to_nfa(b), CompareMode::Equivalent).ok);
    CHECK(to_json(back) == j);
}

TEST_CASE("monomial json uses explicit empty blocks") {
    Monomial p{Alphabet("abc"), {"ac", "", "abc"}, "ab"};
    json j = to_json(p);
    CHECK(j["blocks"].size() == 3);
    CHECK(j["blocks"][1].is_array());
    CHECK(j["blocks"][1].empty());
    CHECK(j["markers"] == json::array({"a", "b"}));
}

TEST_CASE("classification report json shape") {
    auto report = classify(testsupport::hierarchy_one_pass(), "h1");
    json j = to_json(report);
    CHECK(j["language"]["source"] == "h1");
    CHECK(j["language"]["minimal_dfa_states"] == 4);
    CHECK(j["properties"].size() == 11);
    CHECK(j["properties"]["right_ideal"]["verdict"] == true);
    CHECK(j["properties"]["right_ideal"].contains("route"));
    CHECK(j["properties"]["right_ideal"].contains("evidence"));
    CHECK(j["cross_checks"].size() == 11);
}

TEST_CASE("monoid dump is byte-stable and self-consistent") {
    auto [m, p] = transition_monoid(to_minimal_dfa(testsupport::fixture_ab_astar()));
    auto g = green_classes(m);
    json j = monoid_to_json(m, p, g);
    CHECK(j["size"] == 5);
    CHECK(j["table"].size() == 25);
    CHECK(j["representatives"][0] == "");
    CHECK(monoid_to_json(m, p, g).dump() == j.dump());
}
