#pragma once

#include <set>
#include <string>
#include <vector>

#include "rideal/two_way.hpp"

namespace rideal {

/// Product A1* a1 ... Ak* ak A(k+1)*: k >= 0 block alphabets plus marker
/// letters. A block may be empty (denoting {epsilon}).
struct Monomial {
    Alphabet alphabet;
    std::vector<std::string> blocks;  // sorted letter sets, size k+1
    std::string markers;              // size k

    std::size_t degree() const { return markers.size(); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            s += "{" + blocks[i] + "}*";
            if (i < markers.size()) s += markers[i];
        }
        return s;
    }

    bool operator<(const Monomial& other) const {
        return std::tie(markers, blocks) < std::tie(other.markers, other.blocks);
    }
    bool operator==(const Monomial& other) const {
        return markers == other.markers && blocks == other.blocks;
    }
};

inline void validate_monomial(const Monomial& p) {
    if (p.blocks.size() != p.markers.size() + 1)
        throw std::invalid_argument("monomial: need exactly one more block than markers");
    for (const auto& block : p.blocks)
        for (char c : block)
            if (!p.alphabet.contains(c))
                throw std::invalid_argument("monomial: block letter outside alphabet");
    for (char c : p.markers)
        if (!p.alphabet.contains(c))
            throw std::invalid_argument("monomial: marker letter outside alphabet");
}

/// Canonical k+1-block NFA whose accepting runs are exactly the block
/// factorizations u = u1 a1 ... uk ak u(k+1).
inline Nfa monomial_nfa(const Monomial& p) {
    validate_monomial(p);
    Nfa a(p.alphabet);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        a.add_state(i + 1 == p.blocks.size());
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        for (char c : p.blocks[i])
            a.add_transition(static_cast<State>(i), c, static_cast<State>(i));
        if (i < p.markers.size())
            a.add_transition(static_cast<State>(i), p.markers[i], static_cast<State>(i + 1));
    }
    a.initial = {0};
    return a;
}

enum class MonomialProperty { Unambiguous, Restricted };

/// Unambiguous: every member has a unique factorization, decided exactly by
/// a squaring construction (two runs tracked with a divergence flag; any
/// accepted pair that diverged witnesses two distinct runs). Restricted:
/// there is no i with {a_i, ..., a_k} contained in A_i.
inline bool monomial_check(const Monomial& p, MonomialProperty which) {
    validate_monomial(p);
    if (which == MonomialProperty::Restricted) {
        for (std::size_t i = 0; i < p.markers.size(); ++i) {
            bool contained = true;
            for (std::size_t j = i; j < p.markers.size() && contained; ++j)
                contained = p.blocks[i].find(p.markers[j]) != std::string::npos;
            if (contained) return false;
        }
        return true;
    }

    Nfa a = monomial_nfa(p);
    std::size_t n = a.state_count();
    auto encode = [n](State x, State y, bool diverged) {
        return (static_cast<std::size_t>(diverged) * n + x) * n + y;
    };
    std::vector<bool> seen(2 * n * n, false);
    std::vector<std::size_t> stack;
    auto push = [&](State x, State y, bool diverged) {
        // order the pair; run pairs are unordered
        if (x > y) std::swap(x, y);
        diverged = diverged || x != y;
        std::size_t key = encode(x, y, diverged);
        if (!seen[key]) { seen[key] = true; stack.push_back(key); }
    };
    push(0, 0, false);
    while (!stack.empty()) {
        std::size_t key = stack.back();
        stack.pop_back();
        bool diverged = key >= n * n;
        State x = static_cast<State>((key / n) % n), y = static_cast<State>(key % n);
        if (diverged && a.accepting[x] && a.accepting[y]) return false;
        for (std::size_t l = 0; l < a.alphabet.size(); ++l)
            for (State tx : a.next[x][l])
                for (State ty : a.next[y][l]) push(tx, ty, diverged);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Monomial extraction from complete flip one-pass po2dfa
// ---------------------------------------------------------------------------

struct MonomialExtraction {
    std::vector<Monomial> monomials;
    std::vector<std::string> diagnostics;
};

namespace detail {

/// P(u) from the accepting computation: letters at the positions where a
/// state change occurred, taken up to the first transition into a final
/// state, factorize u; block i is the alphabet of the intervening factor
/// and the last block is the full alphabet.
inline Monomial monomial_of_word(const TwoWayAutomaton& t, const std::string& word,
                                 const RunResult& run) {
    std::set<std::size_t> change_positions;
    bool flipped = t.accepting[run.trace.front().first];
    for (std::size_t k = 0; !flipped && k + 1 < run.trace.size(); ++k) {
        auto [z1, i1] = run.trace[k];
        auto [z2, i2] = run.trace[k + 1];
        if (z2 != z1 && i1 >= 1 && i1 <= word.size()) change_positions.insert(i1);
        if (t.accepting[z2]) flipped = true;
    }
    Monomial p;
    p.alphabet = t.alphabet;
    std::size_t prev = 0;
    for (std::size_t pos : change_positions) {
        p.blocks.push_back(alph(std::string_view(word).substr(prev, pos - 1 - prev)));
        p.markers.push_back(word[pos - 1]);
        prev = pos;
    }
    p.blocks.push_back(t.alphabet.letters());
    return p;
}

}  // namespace detail

/// Enumerates accepted words in shortlex order, builds P(u) from each
/// accepting computation, and stops once the union of the collected
/// monomials is exactly the recognized language. Monomials that fail the
/// P(u) ⊆ L or unambiguity validation are dropped with a diagnostic.
inline MonomialExtraction extract_monomials(const TwoWayAutomaton& t,
                                            std::size_t max_word_len = 12) {
    require_valid(t, "extract_monomials");
    if (!shape(t, TwoWayShape::OnePass) || !shape(t, TwoWayShape::PartiallyOrdered) ||
        !shape(t, TwoWayShape::Flip) || (t.state_count() > 0 && !is_complete(t)))
        throw std::invalid_argument(
            "extract_monomials: input must be a complete flip one-pass po2dfa");

    Dfa oneway = to_one_way_dfa(t);
    Nfa language = to_nfa(oneway);

    MonomialExtraction result;
    std::set<Monomial> emitted;
    auto union_matches = [&] {
        Nfa u(t.alphabet);
        for (const auto& p : result.monomials) {
            Nfa part = monomial_nfa(p);
            State base = static_cast<State>(u.state_count());
            for (std::size_t q = 0; q < part.state_count(); ++q) u.add_state(part.accepting[q]);
            for (std::size_t q = 0; q < part.state_count(); ++q)
                for (std::size_t l = 0; l < part.alphabet.size(); ++l)
                    for (State s : part.next[q][l]) u.next[base + q][l].push_back(base + s);
            for (State s : part.initial) u.mark_initial(base + s);
        }
        return compare(u, language, CompareMode::Equivalent).ok;
    };

    if (union_matches()) return result;  // empty language

    for (const auto& w : enumerate_words(language, max_word_len)) {
        RunResult run = simulate(t, w);
        if (!run.accepted())
            throw std::logic_error("extract_monomials: conversion and simulation disagree");
        Monomial p = detail::monomial_of_word(t, w, run);
        if (!emitted.insert(p).second) continue;
        if (!compare(monomial_nfa(p), language, CompareMode::Included).ok) {
            result.diagnostics.push_back("dropped " + p.to_string() + " from \"" + w +
                                         "\": not a subset of the language");
            continue;
        }
        if (!monomial_check(p, MonomialProperty::Unambiguous)) {
            result.diagnostics.push_back("dropped " + p.to_string() + " from \"" + w +
                                         "\": ambiguous");
            continue;
        }
        result.monomials.push_back(p);
        if (union_matches()) return result;
    }
    throw std::runtime_error(
        "extract_monomials: union did not close within word length " +
        std::to_string(max_word_len) +
        (result.diagnostics.empty() ? "" : " (" + std::to_string(result.diagnostics.size()) +
                                               " monomials dropped)"));
}

}  // namespace rideal
