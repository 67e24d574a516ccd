#include <catch2/catch_amalgamated.hpp>

#include "rideal/automata.hpp"
#include "rideal/regex.hpp"
#include "support/test_support.hpp"

using namespace rideal;
using testsupport::all_words;
using testsupport::RandomSource;

namespace {

/// Hand-written complete minimal DFA of abA* over {a,b}: start, after-a,
/// accepting sink, dead sink.
Dfa hand_dfa_ab_astar() {
    Dfa d(Alphabet("ab"));
    State start = d.add_state();
    State after_a = d.add_state();
    State acc = d.add_state(true);
    State dead = d.add_state();
    d.set_transition(start, 'a', after_a);
    d.set_transition(start, 'b', dead);
    d.set_transition(after_a, 'a', dead);
    d.set_transition(after_a, 'b', acc);
    for (State q : {acc, dead}) {
        d.set_transition(q, 'a', q);
        d.set_transition(q, 'b', q);
    }
    d.initial = start;
    d.recompute_complete();
    return d;
}

Nfa empty_language_nfa(const Alphabet& alphabet) { return Nfa(alphabet); }

}  // namespace

TEST_CASE("alphabet and word helpers") {
    SECTION("letters are sorted and deduplicated") {
        Alphabet a("bab");
        CHECK(a.letters() == "ab");
        CHECK(a.size() == 2);
        CHECK(a.contains('a'));
        CHECK_FALSE(a.contains('c'));
        CHECK(a.index('b') == 1);
        CHECK_FALSE(a.index('z'));
    }
    SECTION("empty alphabets and marker symbols are rejected") {
        CHECK_THROWS_AS(Alphabet(""), std::invalid_argument);
        CHECK_THROWS_AS(Alphabet("a>"), std::invalid_argument);
        CHECK_THROWS_AS(Alphabet("<a"), std::invalid_argument);
    }
    SECTION("alph collects the letters occurring in a word") {
        CHECK(alph("banana") == "abn");
        CHECK(alph("").empty());
    }
    SECTION("letter_at is 1-based and bounds-checked") {
        CHECK(letter_at("abc", 1) == 'a');
        CHECK(letter_at("abc", 3) == 'c');
        CHECK_THROWS_AS(letter_at("abc", 0), std::out_of_range);
        CHECK_THROWS_AS(letter_at("abc", 4), std::out_of_range);
    }
}

TEST_CASE("minimal dfa of fixture languages") {
    SECTION("A* collapses to one accepting state") {
        Dfa md = to_minimal_dfa(parse_regex("(a|b)*", Alphabet("ab")));
        CHECK(md.state_count() == 1);
        CHECK(md.accepting[0]);
        CHECK(md.is_complete);
    }
    SECTION("abA* has the four canonical states") {
        Dfa md = to_minimal_dfa(testsupport::fixture_ab_astar());
        CHECK(md.state_count() == 4);
        CHECK(compare(to_nfa(md), to_nfa(hand_dfa_ab_astar()), CompareMode::Equivalent).ok);
    }
    SECTION("empty language still needs its sink") {
        Dfa md = to_minimal_dfa(empty_language_nfa(Alphabet("ab")));
        CHECK(md.state_count() == 1);
        CHECK_FALSE(md.accepting[0]);
        CHECK(md.is_complete);
    }
    SECTION("idempotent") {
        for (const char* expr : {"ab(a|b)*", "(a|b)*ba", "a?b+", "%e", "%0"}) {
            Dfa once = to_minimal_dfa(parse_regex(expr, Alphabet("ab")));
            Dfa twice = to_minimal_dfa(once);
            CHECK(once.state_count() == twice.state_count());
            CHECK(compare(once, twice, CompareMode::Equivalent).ok);
        }
    }
}

TEST_CASE("minimization reaches the Myhill-Nerode bound on random automata") {
    RandomSource rnd(20240501);
    for (int i = 0; i < 200; ++i) {
        Nfa a = rnd.random_nfa(5, 3);
        Dfa md = to_minimal_dfa(a);
        CHECK(md.state_count() == testsupport::table_filling_state_count(a));
        for (const auto& w : all_words(a.alphabet, 8))
            if (accepts(a, w) != accepts(md, w))
                FAIL("membership mismatch on \"" << w << "\" (case " << i << ")");
    }
}

TEST_CASE("complete") {
    SECTION("complete input is returned unchanged") {
        Dfa d = hand_dfa_ab_astar();
        Dfa c = complete(d);
        CHECK(c.state_count() == d.state_count());
        CHECK(compare(c, d, CompareMode::Equivalent).ok);
    }
    SECTION("partial acceptor of the empty word gains a sink") {
        Dfa d(Alphabet("a"));
        d.add_state(true);
        d.initial = 0;
        d.recompute_complete();
        REQUIRE_FALSE(d.is_complete);
        Dfa c = complete(d);
        CHECK(c.state_count() == 2);
        CHECK(c.is_complete);
        for (const auto& w : all_words(d.alphabet, 4))
            CHECK(accepts(c, w) == w.empty());
    }
    SECTION("empty-final partial dfa still recognizes the empty language") {
        Dfa d(Alphabet("ab"));
        d.add_state(false);
        d.initial = 0;
        Dfa c = complete(d);
        CHECK(c.is_complete);
        for (const auto& w : all_words(d.alphabet, 3)) CHECK_FALSE(accepts(c, w));
    }
}

TEST_CASE("trim") {
    SECTION("dead sink of abA* disappears") {
        Nfa t = trim(to_nfa(hand_dfa_ab_astar()));
        CHECK(t.state_count() == 3);
        CHECK(compare(t, testsupport::fixture_ab_astar(), CompareMode::Equivalent).ok);
    }
    SECTION("empty language trims to no states") {
        Dfa md = to_minimal_dfa(empty_language_nfa(Alphabet("ab")));
        CHECK(trim(to_nfa(md)).state_count() == 0);
    }
    SECTION("already trim stays put") {
        Nfa a = parse_regex("ab", Alphabet("ab"));
        Nfa t = trim(a);
        CHECK(t.state_count() == a.state_count());
    }
}

TEST_CASE("reverse") {
    SECTION("reverse of abA* is A*ba") {
        Nfa rev = reverse(testsupport::fixture_ab_astar());
        Nfa expect = parse_regex("(a|b)*ba", Alphabet("ab"));
        for (const auto& w : all_words(Alphabet("ab"), 6))
            CHECK(accepts(rev, w) == accepts(expect, w));
    }
    SECTION("reverse of the empty-word language") {
        Nfa rev = reverse(parse_regex("%e", Alphabet("ab")));
        CHECK(accepts(rev, ""));
        CHECK_FALSE(accepts(rev, "a"));
    }
    SECTION("involution") {
        RandomSource rnd(7);
        for (int i = 0; i < 50; ++i) {
            Nfa a = rnd.random_nfa(5, 2);
            CHECK(compare(reverse(reverse(a)), a, CompareMode::Equivalent).ok);
        }
    }
}

TEST_CASE("combine and complement") {
    Alphabet ab("ab");
    SECTION("union with the empty language is the identity") {
        Dfa empty = to_minimal_dfa(empty_language_nfa(ab));
        Dfa lang = to_minimal_dfa(parse_regex("a(a|b)*b", ab));
        CHECK(compare(combine(empty, lang, SetOp::Union), lang, CompareMode::Equivalent).ok);
    }
    SECTION("marked words: LaA* minus LaA+ recovers b*a for L = b*") {
        Dfa upper = to_minimal_dfa(parse_regex("b*a(a|b)*", ab));
        Dfa strict = to_minimal_dfa(parse_regex("b*a(a|b)+", ab));
        Dfa diff = combine(upper, strict, SetOp::Difference);
        CHECK(compare(to_nfa(diff), parse_regex("b*a", ab), CompareMode::Equivalent).ok);
    }
    SECTION("complement is an involution") {
        Dfa lang = to_minimal_dfa(parse_regex("(ab)*", ab));
        CHECK(compare(complement(complement(lang)), lang, CompareMode::Equivalent).ok);
    }
    SECTION("complement requires completeness") {
        Dfa d(ab);
        d.add_state(true);
        d.initial = 0;
        CHECK_THROWS_AS(complement(d), std::invalid_argument);
    }
    SECTION("alphabet mismatch is rejected") {
        Dfa x = to_minimal_dfa(parse_regex("a", Alphabet("a")));
        Dfa y = to_minimal_dfa(parse_regex("a", Alphabet("ab")));
        CHECK_THROWS_AS(combine(x, y, SetOp::Union), std::invalid_argument);
    }
    SECTION("De Morgan on random pairs") {
        RandomSource rnd(99);
        Alphabet ab2("ab");
        for (int i = 0; i < 60; ++i) {
            Dfa x = rnd.random_complete_dfa(ab2, 4);
            Dfa y = rnd.random_complete_dfa(ab2, 4);
            Dfa lhs = combine(x, y, SetOp::Difference);
            Dfa rhs = combine(x, complement(complete(y)), SetOp::Intersection);
            CHECK(compare(lhs, rhs, CompareMode::Equivalent).ok);
        }
    }
}

TEST_CASE("compare") {
    Alphabet ab("ab");
    Nfa ab_astar = testsupport::fixture_ab_astar();
    Nfa a_astar = parse_regex("a(a|b)*", ab);
    SECTION("self equivalence") {
        CHECK(compare(ab_astar, ab_astar, CompareMode::Equivalent).ok);
    }
    SECTION("inclusion abA* in aA*") {
        CHECK(compare(ab_astar, a_astar, CompareMode::Included).ok);
        auto rev = compare(a_astar, ab_astar, CompareMode::Included);
        CHECK_FALSE(rev.ok);
        REQUIRE(rev.counterexample);
        CHECK(*rev.counterexample == "a");
    }
    SECTION("shortlex-least witness of non-equivalence") {
        auto res = compare(ab_astar, a_astar, CompareMode::Equivalent);
        CHECK_FALSE(res.ok);
        REQUIRE(res.counterexample);
        // "a" is the least word in the symmetric difference: it lies in aA*
        // but not in abA*, and no shorter word separates the languages.
        CHECK(*res.counterexample == "a");
        CHECK(accepts(a_astar, *res.counterexample));
        CHECK_FALSE(accepts(ab_astar, *res.counterexample));
    }
    SECTION("witness is shortlex-least on random pairs") {
        RandomSource rnd(4242);
        for (int i = 0; i < 60; ++i) {
            Nfa x = rnd.random_nfa(ab, 4);
            Nfa y = rnd.random_nfa(ab, 4);
            auto res = compare(x, y, CompareMode::Equivalent);
            std::string expected;
            bool found = false;
            for (const auto& w : all_words(x.alphabet, 7)) {
                if (accepts(x, w) != accepts(y, w)) {
                    expected = w;
                    found = true;
                    break;
                }
            }
            if (found) {
                REQUIRE_FALSE(res.ok);
                REQUIRE(res.counterexample);
                CHECK(*res.counterexample == expected);
            } else if (!res.ok) {
                REQUIRE(res.counterexample);
                CHECK(res.counterexample->size() > 7);
            }
        }
    }
}

TEST_CASE("enumerate_words") {
    SECTION("abA* up to length 3") {
        auto words = enumerate_words(testsupport::fixture_ab_astar(), 3);
        CHECK(words == std::vector<std::string>{"ab", "aba", "abb"});
    }
    SECTION("empty language") {
        CHECK(enumerate_words(empty_language_nfa(Alphabet("ab")), 5).empty());
    }
    SECTION("A* over one letter") {
        auto words = enumerate_words(parse_regex("a*", Alphabet("a")), 2);
        CHECK(words == std::vector<std::string>{"", "a", "aa"});
    }
    SECTION("agrees with membership and stays in shortlex order") {
        RandomSource rnd(31337);
        for (int i = 0; i < 40; ++i) {
            Nfa a = rnd.random_nfa(4, 3);
            auto words = enumerate_words(a, 5);
            std::vector<std::string> expected;
            for (const auto& w : all_words(a.alphabet, 5))
                if (accepts(a, w)) expected.push_back(w);
            CHECK(words == expected);
        }
    }
}

TEST_CASE("strongly connected components") {
    SECTION("minimal abA* dfa has four singleton components") {
        auto scc = strongly_connected_components(to_nfa(hand_dfa_ab_astar()));
        CHECK(scc.components.size() == 4);
    }
    SECTION("full self-loop state is one component") {
        Nfa a(Alphabet("ab"));
        State q = a.add_state(true);
        a.add_transition(q, 'a', q);
        a.add_transition(q, 'b', q);
        a.mark_initial(q);
        CHECK(strongly_connected_components(a).components.size() == 1);
    }
    SECTION("two-cycle collapses into one component") {
        Nfa a(Alphabet("ab"));
        State p = a.add_state();
        State q = a.add_state();
        a.add_transition(p, 'a', q);
        a.add_transition(q, 'b', p);
        a.mark_initial(p);
        auto scc = strongly_connected_components(a);
        CHECK(scc.components.size() == 1);
        CHECK(scc.components[0] == std::vector<State>{p, q});
    }
    SECTION("component order respects reachability") {
        RandomSource rnd(555);
        for (int i = 0; i < 40; ++i) {
            Nfa a = rnd.random_nfa(6, 2);
            auto scc = strongly_connected_components(a);
            for (std::size_t q = 0; q < a.state_count(); ++q)
                for (const auto& succ : a.next[q])
                    for (State t : succ)
                        CHECK(scc.component_of[q] <= scc.component_of[t]);
        }
    }
}

TEST_CASE("nfa membership matches the minimal dfa on short words") {
    RandomSource rnd(606060);
    for (int i = 0; i < 50; ++i) {
        Nfa a = rnd.random_nfa(5, 3);
        Dfa md = to_minimal_dfa(a);
        for (const auto& w : all_words(a.alphabet, 8))
            if (accepts(a, w) != accepts(md, w))
                FAIL("mismatch on \"" << w << "\" (case " << i << ")");
    }
}
