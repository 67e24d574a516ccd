#pragma once

#include <random>
#include <string>
#include <vector>

#include "rideal/classify.hpp"
#include "rideal/regex.hpp"
#include "rideal/two_way.hpp"

namespace testsupport {

using namespace rideal;

// ---------------------------------------------------------------------------
// Word enumeration for exhaustive checks
// ---------------------------------------------------------------------------

inline std::vector<std::string> all_words(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet.letters()) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixture languages
// ---------------------------------------------------------------------------

inline Nfa fixture_ab_astar() { return parse_regex("ab(a|b)*", Alphabet("ab")); }

// the three hierarchy languages over {a,b,c}
inline Nfa hierarchy_one_pass() { return parse_regex("(a|c)*ab(a|b|c)*", Alphabet("abc")); }
inline Nfa hierarchy_po2dfa_only() { return parse_regex("(a|b|c)*ab(b|c)*", Alphabet("abc")); }
inline Nfa hierarchy_no_po2dfa() { return parse_regex("(a|b|c)*ab(a|b|c)*", Alphabet("abc")); }

/// Hand-built flip one-pass po2dfa for {a,c}*ab{a,b,c}*: seek the first b
/// moving right, inspect the letter before it moving left, then commit.
inline TwoWayAutomaton flip_po2dfa_acab() {
    TwoWayAutomaton t{Alphabet("abc"), {}, {}, kNoState, {}};
    State seek = t.add_state(true);          // right-moving scan for the first b
    State look = t.add_state(false);         // left-moving look-behind
    State acc = t.add_state(true, true);     // final right-moving sink
    State dead = t.add_state(true);          // non-final right-moving sink
    t.set_transition(seek, 'a', seek);
    t.set_transition(seek, 'c', seek);
    t.set_transition(seek, 'b', look);
    t.set_transition(seek, kRightMarker, seek);
    t.set_transition(look, 'a', acc);
    t.set_transition(look, 'b', dead);  // unreachable: the seeked b is the first one
    t.set_transition(look, 'c', dead);
    t.set_transition(look, kLeftMarker, dead);
    for (State q : {acc, dead}) {
        t.set_transition(q, 'a', q);
        t.set_transition(q, 'b', q);
        t.set_transition(q, 'c', q);
        t.set_transition(q, kRightMarker, q);
    }
    t.initial = seek;
    return t;
}

// ---------------------------------------------------------------------------
// Seeded random generators (modulo draws keep them platform-stable)
// ---------------------------------------------------------------------------

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }

    Dfa random_complete_dfa(std::size_t max_states, std::size_t max_letters) {
        return random_complete_dfa(
            Alphabet(std::string("abc").substr(0, 1 + below(max_letters))), max_states);
    }

    Dfa random_complete_dfa(const Alphabet& alphabet, std::size_t max_states) {
        std::size_t ns = 1 + below(max_states);
        Dfa d(alphabet);
        for (std::size_t q = 0; q < ns; ++q) d.add_state(chance(40));
        for (std::size_t q = 0; q < ns; ++q)
            for (std::size_t l = 0; l < alphabet.size(); ++l)
                d.next[q][l] = static_cast<State>(below(ns));
        d.initial = 0;
        d.is_complete = true;
        return d;
    }

    /// Random minimal DFA whose syntactic monoid stays within the cap
    /// (regenerates otherwise); keeps exhaustive identity checks tractable.
    Dfa random_minimal_dfa(std::size_t max_states, std::size_t max_letters,
                           std::size_t monoid_cap) {
        for (;;) {
            Dfa md = to_minimal_dfa(to_nfa(random_complete_dfa(max_states, max_letters)));
            try {
                transition_monoid(md, monoid_cap);
                return md;
            } catch (const MonoidTooLarge&) {
            }
        }
    }

    /// Random accessible deterministic weak automaton: random partial DFA
    /// with finality assigned uniformly per SCC.
    Dfa random_weak_dfa(std::size_t max_states, std::size_t max_letters) {
        std::size_t ns = 1 + below(max_states);
        Alphabet alphabet(std::string("abc").substr(0, 1 + below(max_letters)));
        Dfa d(alphabet);
        for (std::size_t q = 0; q < ns; ++q) d.add_state(false);
        for (std::size_t q = 0; q < ns; ++q)
            for (std::size_t l = 0; l < alphabet.size(); ++l)
                if (chance(85)) d.next[q][l] = static_cast<State>(below(ns));
        d.initial = 0;
        Nfa accessible = detail::restrict_states(to_nfa(d), detail::reachable_forward(to_nfa(d)));
        auto scc = strongly_connected_components(accessible);
        std::vector<bool> final_component(scc.components.size());
        for (std::size_t c = 0; c < scc.components.size(); ++c) final_component[c] = chance(45);
        Dfa out(alphabet);
        for (std::size_t q = 0; q < accessible.state_count(); ++q)
            out.add_state(final_component[scc.component_of[q]]);
        for (std::size_t q = 0; q < accessible.state_count(); ++q)
            for (std::size_t l = 0; l < alphabet.size(); ++l)
                if (!accessible.next[q][l].empty()) out.next[q][l] = accessible.next[q][l].front();
        if (!accessible.initial.empty()) out.initial = accessible.initial.front();
        out.recompute_complete();
        return out;
    }

    Nfa random_nfa(std::size_t max_states, std::size_t max_letters) {
        return random_nfa(Alphabet(std::string("abc").substr(0, 1 + below(max_letters))),
                          max_states);
    }

    Nfa random_nfa(const Alphabet& alphabet, std::size_t max_states) {
        std::size_t ns = 1 + below(max_states);
        Nfa a(alphabet);
        for (std::size_t q = 0; q < ns; ++q) a.add_state(chance(35));
        for (std::size_t q = 0; q < ns; ++q)
            for (std::size_t l = 0; l < alphabet.size(); ++l)
                for (std::size_t t = 0; t < ns; ++t)
                    if (chance(30)) a.next[q][l].push_back(static_cast<State>(t));
        a.mark_initial(0);
        if (ns > 1 && chance(40)) a.mark_initial(static_cast<State>(1 + below(ns - 1)));
        return a;
    }

    /// Random one-pass po2dfa: the state index order witnesses the partial
    /// order, '<' rows are self-loops or absent, '>' rows lead to
    /// right-moving states only.
    TwoWayAutomaton random_one_pass_po2dfa(std::size_t max_states, std::size_t max_letters) {
        std::size_t ns = 1 + below(max_states);
        Alphabet alphabet(std::string("abc").substr(0, 1 + below(max_letters)));
        TwoWayAutomaton t{alphabet, {}, {}, kNoState, {}};
        t.add_state(true, chance(30));  // initial state is right-moving
        for (std::size_t q = 1; q < ns; ++q) t.add_state(chance(60), chance(30));
        for (std::size_t q = 0; q < ns; ++q) {
            for (std::size_t l = 0; l < alphabet.size(); ++l)
                if (chance(85))
                    t.next[q][l] = static_cast<State>(q + below(ns - q));
            if (t.right_moving[q]) {
                if (chance(70)) t.next[q][t.right_marker_index()] = static_cast<State>(q);
            } else {
                // '>' must lead to a right-moving state at or above q
                std::vector<State> candidates;
                for (std::size_t x = q; x < ns; ++x)
                    if (t.right_moving[x]) candidates.push_back(static_cast<State>(x));
                if (!candidates.empty() && chance(80))
                    t.next[q][t.left_marker_index()] = candidates[below(candidates.size())];
            }
        }
        t.initial = 0;
        return t;
    }

private:
    std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Myhill-Nerode class count by pair-marking (table filling) on the subset
/// automaton; independent of the Moore refinement inside to_minimal_dfa.
inline std::size_t table_filling_state_count(const Nfa& a) {
    Dfa det = determinize(a);
    std::size_t n = det.state_count();
    std::vector<std::vector<bool>> distinct(n, std::vector<bool>(n, false));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (det.accepting[p] != det.accepting[q]) distinct[p][q] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                if (distinct[p][q]) continue;
                for (std::size_t l = 0; l < det.alphabet.size(); ++l)
                    if (distinct[det.next[p][l]][det.next[q][l]]) {
                        distinct[p][q] = true;
                        changed = true;
                        break;
                    }
            }
    }
    std::vector<bool> counted(n, false);
    std::size_t classes = 0;
    for (std::size_t p = 0; p < n; ++p) {
        if (counted[p]) continue;
        ++classes;
        for (std::size_t q = p; q < n; ++q)
            if (!distinct[p][q]) counted[q] = true;
    }
    return classes;
}

/// Membership of a word in a monomial by direct backtracking factorization.
inline bool monomial_member(const std::vector<std::string>& blocks, const std::string& markers,
                            std::string_view word, std::size_t block = 0) {
    if (block == markers.size()) {
        for (char c : word)
            if (blocks[block].find(c) == std::string::npos) return false;
        return true;
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
        bool prefix_ok = true;
        for (std::size_t k = 0; k < i && prefix_ok; ++k)
            prefix_ok = blocks[block].find(word[k]) != std::string::npos;
        if (!prefix_ok) break;
        if (word[i] == markers[block] &&
            monomial_member(blocks, markers, word.substr(i + 1), block + 1))
            return true;
    }
    return false;
}

}  // namespace testsupport
