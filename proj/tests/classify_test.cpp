#include <catch2/catch_amalgamated.hpp>

#include "rideal/classify.hpp"
#include "rideal/two_way.hpp"
#include "support/test_support.hpp"

using namespace rideal;
using testsupport::RandomSource;

TEST_CASE("check_shape") {
    SECTION("flip holds on the complete minimal dfa of a right ideal") {
        CHECK(check_shape(to_minimal_dfa(testsupport::fixture_ab_astar()), ShapeKind::Flip));
    }
    SECTION("prefixes of ab give a fully accepting trim dfa") {
        Dfa md = to_minimal_dfa(parse_regex("%e|a|ab", Alphabet("ab")));
        CHECK_FALSE(check_shape(md, ShapeKind::FullyAccepting));  // the sink is not final
        CHECK(check_shape(trim(to_nfa(md)), ShapeKind::FullyAccepting));
    }
    SECTION("single looping state that is initial and final is a path automaton") {
        Nfa a(Alphabet("ab"));
        State q = a.add_state(true);
        a.add_transition(q, 'a', q);
        a.add_transition(q, 'b', q);
        a.mark_initial(q);
        CHECK(check_shape(a, ShapeKind::Path));
        CHECK(check_shape(a, ShapeKind::Weak));
    }
    SECTION("weak fails on a mixed component") {
        Dfa md = to_minimal_dfa(parse_regex("(aa)*", Alphabet("a")));
        CHECK_FALSE(check_shape(md, ShapeKind::Weak));
    }
}

TEST_CASE("brute_force_oracle") {
    SECTION("abA* is consistent with right ideal up to length 6") {
        auto res = brute_force_oracle(testsupport::fixture_ab_astar(),
                                      LanguageProperty::RightIdeal, 6);
        CHECK_FALSE(res.refuted());
    }
    SECTION("abA* plus the word a is refuted with the one-letter witness") {
        Nfa a = parse_regex("ab(a|b)*|a", Alphabet("ab"));
        auto res = brute_force_oracle(a, LanguageProperty::RightIdeal, 3);
        REQUIRE(res.refuted());
        CHECK(res.witness.find("\"a\"") != std::string::npos);
        CHECK(res.witness.find("\"aa\"") != std::string::npos);
    }
    SECTION("the empty-word language is prefix-closed") {
        auto res = brute_force_oracle(parse_regex("%e", Alphabet("ab")),
                                      LanguageProperty::PrefixClosed, 4);
        CHECK_FALSE(res.refuted());
    }
    SECTION("factorial refutation names the factor") {
        auto res = brute_force_oracle(testsupport::fixture_ab_astar(),
                                      LanguageProperty::Factorial, 4);
        CHECK(res.refuted());
    }
    SECTION("max_len must be positive") {
        CHECK_THROWS_AS(brute_force_oracle(parse_regex("a", Alphabet("a")),
                                           LanguageProperty::RightIdeal, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("classify on the hierarchy fixtures") {
    SECTION("{a,c}*ab{a,b,c}*") {
        auto report = classify(testsupport::hierarchy_one_pass(), "h1");
        CHECK(report.verdict(LanguageProperty::RightIdeal));
        CHECK(report.verdict(LanguageProperty::BcRightIdeals));
        CHECK(report.verdict(LanguageProperty::InDA));
        CHECK_FALSE(report.verdict(LanguageProperty::PrefixClosed));
        CHECK_FALSE(report.verdict(LanguageProperty::LeftIdeal));
    }
    SECTION("{a,b,c}*ab{b,c}*") {
        auto report = classify(testsupport::hierarchy_po2dfa_only(), "h2");
        CHECK(report.verdict(LanguageProperty::InDA));
        CHECK_FALSE(report.verdict(LanguageProperty::BcRightIdeals));
        CHECK(report.verdict(LanguageProperty::LeftIdeal));
        CHECK(report.verdict(LanguageProperty::BcLeftIdeals));
    }
    SECTION("{a,b,c}*ab{a,b,c}*") {
        auto report = classify(testsupport::hierarchy_no_po2dfa(), "h3");
        CHECK(report.verdict(LanguageProperty::TwoSidedIdeal));
        CHECK_FALSE(report.verdict(LanguageProperty::InDA));
        CHECK(report.verdict(LanguageProperty::Aperiodic));
        CHECK(report.verdict(LanguageProperty::BcTwoSidedIdeals));
    }
}

TEST_CASE("report invariants hold on random inputs") {
    RandomSource rnd(112233);
    for (int i = 0; i < 60; ++i) {
        Dfa md = rnd.random_minimal_dfa(5, 3, 160);
        auto report = classify(md, "random");
        bool right = report.verdict(LanguageProperty::RightIdeal);
        bool left = report.verdict(LanguageProperty::LeftIdeal);
        bool two = report.verdict(LanguageProperty::TwoSidedIdeal);
        bool prefix = report.verdict(LanguageProperty::PrefixClosed);
        bool suffix = report.verdict(LanguageProperty::SuffixClosed);
        bool factorial = report.verdict(LanguageProperty::Factorial);
        bool bc_r = report.verdict(LanguageProperty::BcRightIdeals);
        bool bc_l = report.verdict(LanguageProperty::BcLeftIdeals);
        bool bc_2 = report.verdict(LanguageProperty::BcTwoSidedIdeals);

        CHECK(two == (right && left));
        CHECK(factorial == (prefix && suffix));
        CHECK(bc_2 == (bc_r && bc_l));
        if (right) CHECK(bc_r);
        if (left) CHECK(bc_l);
        if (two) CHECK(bc_2);

        for (const auto& [name, note] : report.cross_checks) {
            INFO(name << ": " << note);
            CHECK(note.find("DISAGREE") == std::string::npos);
            CHECK(note.find("REFUTES-AFFIRMED") == std::string::npos);
        }
    }
}

TEST_CASE("factorial equals prefix-closed in both directions") {
    RandomSource rnd(445566);
    for (int i = 0; i < 40; ++i) {
        Dfa md = rnd.random_minimal_dfa(4, 2, 120);
        auto report = classify(md, "random");
        auto rev_report = classify(reverse(to_nfa(md)), "reversed");
        CHECK(report.verdict(LanguageProperty::Factorial) ==
              (report.verdict(LanguageProperty::PrefixClosed) &&
               rev_report.verdict(LanguageProperty::PrefixClosed)));
        CHECK(report.verdict(LanguageProperty::SuffixClosed) ==
              rev_report.verdict(LanguageProperty::PrefixClosed));
    }
}

TEST_CASE("classify accepts two-way input by converting it first") {
    auto report = classify(testsupport::flip_po2dfa_acab(), "acab-po2dfa");
    CHECK(report.verdict(LanguageProperty::RightIdeal));
    CHECK(report.verdict(LanguageProperty::InDA));
    CHECK(report.verdict(LanguageProperty::BcRightIdeals));
    CHECK_FALSE(report.verdict(LanguageProperty::LeftIdeal));
}

TEST_CASE("classify on the empty and full languages") {
    auto empty_report = classify(parse_regex("%0", Alphabet("ab")), "empty");
    auto full_report = classify(parse_regex("(a|b)*", Alphabet("ab")), "full");
    for (LanguageProperty p : kAllProperties) {
        CHECK(empty_report.verdict(p));
        CHECK(full_report.verdict(p));
    }
}
