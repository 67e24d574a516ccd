#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rideal/automata.hpp"

namespace rideal {

using Element = std::uint32_t;

/// Raised when a transition-monoid closure exceeds the configured element cap.
class MonoidTooLarge : public std::runtime_error {
public:
    explicit MonoidTooLarge(std::size_t cap)
        : std::runtime_error("transition monoid exceeds " + std::to_string(cap) + " elements") {}
};

inline constexpr std::size_t kDefaultMonoidCap = 4096;

/// Finite monoid given by a full multiplication table. Elements are interned
/// in shortlex order of their least generator word, so element ids and
/// `representative` are canonical.
struct FiniteMonoid {
    Alphabet alphabet;
    std::size_t size = 0;
    std::vector<Element> table;             // row-major: table[x*size + y]
    Element identity = 0;
    std::vector<Element> generators;        // per alphabet letter
    std::vector<std::string> representative;

    Element product(Element x, Element y) const { return table[x * size + y]; }

    Element eval_word(std::string_view w) const {
        Element x = identity;
        for (char c : w) x = product(x, generators[alphabet.index_checked(c)]);
        return x;
    }
};

struct AcceptingSet {
    std::vector<bool> member;  // indexed by element id

    bool contains(Element x) const { return member[x]; }
    std::size_t count() const {
        std::size_t n = 0;
        for (bool b : member) n += b;
        return n;
    }
    AcceptingSet complement() const {
        AcceptingSet out = *this;
        for (std::size_t i = 0; i < out.member.size(); ++i) out.member[i] = !out.member[i];
        return out;
    }
};

/// Transition monoid of a complete deterministic automaton, together with
/// the accepting subset {f : f(q0) in F}. For the minimal automaton this is
/// the syntactic monoid and h(L).
inline std::pair<FiniteMonoid, AcceptingSet> transition_monoid(
    const Dfa& d, std::size_t max_size = kDefaultMonoidCap) {
    if (d.state_count() > 0 && !d.is_complete)
        throw std::invalid_argument("transition_monoid: input must be complete");

    std::size_t n_states = d.state_count();
    using Map = std::vector<State>;
    std::map<Map, Element> ids;
    std::vector<Map> maps;
    std::vector<std::string> reps;

    Map ident(n_states);
    std::iota(ident.begin(), ident.end(), 0);
    ids.emplace(ident, 0);
    maps.push_back(ident);
    reps.emplace_back();

    std::vector<Map> letter_map(d.alphabet.size(), Map(n_states));
    for (std::size_t l = 0; l < d.alphabet.size(); ++l)
        for (std::size_t q = 0; q < n_states; ++q) letter_map[l][q] = d.next[q][l];

    // BFS closure in shortlex order of generator words.
    for (std::size_t cur = 0; cur < maps.size(); ++cur) {
        Map base = maps[cur];
        for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
            Map m(n_states);
            for (std::size_t q = 0; q < n_states; ++q) m[q] = letter_map[l][base[q]];
            if (ids.emplace(m, static_cast<Element>(maps.size())).second) {
                maps.push_back(std::move(m));
                reps.push_back(reps[cur] + d.alphabet.letter(l));
                if (maps.size() > max_size) throw MonoidTooLarge(max_size);
            }
        }
    }

    FiniteMonoid m;
    m.alphabet = d.alphabet;
    m.size = maps.size();
    m.identity = 0;
    m.representative = reps;
    m.generators.resize(d.alphabet.size());
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
        Map g(n_states);
        for (std::size_t q = 0; q < n_states; ++q) g[q] = letter_map[l][q];
        m.generators[l] = ids.at(g);
    }
    m.table.resize(m.size * m.size);
    for (std::size_t x = 0; x < m.size; ++x)
        for (std::size_t y = 0; y < m.size; ++y) {
            Map c(n_states);
            for (std::size_t q = 0; q < n_states; ++q) c[q] = maps[y][maps[x][q]];
            auto it = ids.find(c);
            if (it == ids.end())
                throw std::logic_error("transition_monoid: closure not product-closed");
            m.table[x * m.size + y] = it->second;
        }

    // Construction self-checks: representatives evaluate back to their
    // elements, and the table is associative (full triple loop at desk
    // scale; composition of functions guarantees it beyond that).
    for (Element x = 0; x < m.size; ++x)
        if (m.eval_word(m.representative[x]) != x)
            throw std::logic_error("transition_monoid: representative mismatch");
    if (m.size <= 512) {
        for (Element x = 0; x < m.size; ++x)
            for (Element y = 0; y < m.size; ++y)
                for (Element z = 0; z < m.size; ++z)
                    if (m.product(m.product(x, y), z) != m.product(x, m.product(y, z)))
                        throw std::logic_error("transition_monoid: table not associative");
    }

    AcceptingSet p;
    p.member.assign(m.size, false);
    if (d.initial != kNoState)
        for (Element x = 0; x < m.size; ++x)
            p.member[x] = d.accepting[maps[x][d.initial]];
    return {std::move(m), std::move(p)};
}

// ---------------------------------------------------------------------------
// Idempotent powers
// ---------------------------------------------------------------------------

/// The unique idempotent in the cyclic subsemigroup generated by x.
inline Element omega_power(const FiniteMonoid& m, Element x) {
    Element p = x;
    for (std::size_t k = 0; k <= m.size + 1; ++k) {
        if (m.product(p, p) == p) return p;
        p = m.product(p, x);
    }
    throw std::logic_error("omega_power: no idempotent power found");
}

/// Least e >= 1 with x^(i+e) = x^i for all large i, over all x (lcm of the
/// cycle lengths in the power sequences).
inline unsigned long long global_exponent(const FiniteMonoid& m) {
    unsigned long long exponent = 1;
    for (Element x = 0; x < m.size; ++x) {
        // Find index/period of the power sequence of x.
        std::map<Element, std::size_t> seen;
        Element p = m.identity;
        std::size_t k = 0;
        for (;;) {
            auto [it, fresh] = seen.emplace(p, k);
            if (!fresh) {
                unsigned long long period = k - it->second;
                exponent = std::lcm(exponent, period);
                break;
            }
            p = m.product(p, x);
            ++k;
        }
    }
    return exponent;
}

/// x^w * x == x^w for all x.
inline bool is_aperiodic(const FiniteMonoid& m) {
    for (Element x = 0; x < m.size; ++x) {
        Element e = omega_power(m, x);
        if (m.product(e, x) != e) return false;
    }
    return true;
}

/// (xy)^w == (xy)^w x (xy)^w for all x, y.
inline bool is_in_da(const FiniteMonoid& m) {
    std::vector<Element> omega(m.size);
    for (Element x = 0; x < m.size; ++x) omega[x] = omega_power(m, x);
    for (Element x = 0; x < m.size; ++x)
        for (Element y = 0; y < m.size; ++y) {
            Element e = omega[m.product(x, y)];
            if (m.product(m.product(e, x), e) != e) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Green's relations
// ---------------------------------------------------------------------------

struct GreenStructure {
    std::vector<std::uint32_t> r_class, l_class, j_class;  // element -> class id
    std::size_t r_count = 0, l_count = 0, j_count = 0;
    // Partial orders on class ids, row-major: leq[i * count + j] iff i <= j.
    std::vector<bool> r_order, j_order;

    bool r_leq(std::uint32_t i, std::uint32_t j) const { return r_order[i * r_count + j]; }
    bool j_leq(std::uint32_t i, std::uint32_t j) const { return j_order[i * j_count + j]; }
};

namespace detail {

struct PreorderClasses {
    std::vector<std::uint32_t> class_of;
    std::size_t count;
    std::vector<bool> order;  // on class ids
};

/// Classes of the mutual-order equivalence; class ids follow least-element
/// order so they are canonical.
inline PreorderClasses classes_of_preorder(const std::vector<std::vector<bool>>& leq) {
    std::size_t n = leq.size();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> cls(n, kUnset);
    std::vector<Element> first;
    for (std::size_t x = 0; x < n; ++x) {
        if (cls[x] != kUnset) continue;
        auto id = static_cast<std::uint32_t>(first.size());
        first.push_back(static_cast<Element>(x));
        for (std::size_t y = x; y < n; ++y)
            if (cls[y] == kUnset && leq[x][y] && leq[y][x]) cls[y] = id;
    }
    std::size_t count = first.size();
    std::vector<bool> order(count * count, false);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            order[i * count + j] = leq[first[i]][first[j]];
    return {std::move(cls), count, std::move(order)};
}

}  // namespace detail

/// x <=_R y iff x in yM, x <=_L y iff x in My, x <=_J y iff x in MyM;
/// computed by the naive sweep (O(|M|^2) products), the documented hot spot.
inline GreenStructure green_classes(const FiniteMonoid& m) {
    std::size_t n = m.size;
    std::vector<std::vector<bool>> right_set(n, std::vector<bool>(n, false));  // yM
    std::vector<std::vector<bool>> left_set(n, std::vector<bool>(n, false));   // My
    for (Element y = 0; y < n; ++y)
        for (Element s = 0; s < n; ++s) {
            right_set[y][m.product(y, s)] = true;
            left_set[y][m.product(s, y)] = true;
        }
    std::vector<std::vector<bool>> two_sided(n, std::vector<bool>(n, false));  // MyM
    for (Element y = 0; y < n; ++y)
        for (Element u = 0; u < n; ++u)
            if (left_set[y][u])
                for (Element x = 0; x < n; ++x)
                    if (right_set[u][x]) two_sided[y][x] = true;

    std::vector<std::vector<bool>> r_leq(n, std::vector<bool>(n)), l_leq(n, std::vector<bool>(n)),
        j_leq(n, std::vector<bool>(n));
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            r_leq[x][y] = right_set[y][x];
            l_leq[x][y] = left_set[y][x];
            j_leq[x][y] = two_sided[y][x];
        }

    auto r = detail::classes_of_preorder(r_leq);
    auto l = detail::classes_of_preorder(l_leq);
    auto j = detail::classes_of_preorder(j_leq);
    GreenStructure g;
    g.r_class = std::move(r.class_of);
    g.l_class = std::move(l.class_of);
    g.j_class = std::move(j.class_of);
    g.r_count = r.count;
    g.l_count = l.count;
    g.j_count = j.count;
    g.r_order = std::move(r.order);
    g.j_order = std::move(j.order);
    return g;
}

// ---------------------------------------------------------------------------
// Ideal and Green-class tests on accepting subsets
// ---------------------------------------------------------------------------

enum class IdealKind { Right, Left, TwoSided };

/// PM subset P (right), MP subset P (left), MPM subset P (two-sided; equal
/// to left-and-right for subsets of a monoid).
inline bool is_ideal_subset(const FiniteMonoid& m, const AcceptingSet& p, IdealKind kind) {
    auto right = [&] {
        for (Element x = 0; x < m.size; ++x)
            if (p.contains(x))
                for (Element s = 0; s < m.size; ++s)
                    if (!p.contains(m.product(x, s))) return false;
        return true;
    };
    auto left = [&] {
        for (Element x = 0; x < m.size; ++x)
            if (p.contains(x))
                for (Element s = 0; s < m.size; ++s)
                    if (!p.contains(m.product(s, x))) return false;
        return true;
    };
    switch (kind) {
        case IdealKind::Right: return right();
        case IdealKind::Left: return left();
        case IdealKind::TwoSided: return right() && left();
    }
    return false;
}

enum class GreenRelation { R, L, J };

inline bool is_union_of_classes(const FiniteMonoid& m, const GreenStructure& g,
                                const AcceptingSet& p, GreenRelation rel) {
    const std::vector<std::uint32_t>& cls =
        rel == GreenRelation::R ? g.r_class : rel == GreenRelation::L ? g.l_class : g.j_class;
    std::size_t count =
        rel == GreenRelation::R ? g.r_count : rel == GreenRelation::L ? g.l_count : g.j_count;
    std::vector<int> verdict(count, -1);
    for (Element x = 0; x < m.size; ++x) {
        int v = p.contains(x) ? 1 : 0;
        if (verdict[cls[x]] == -1) verdict[cls[x]] = v;
        else if (verdict[cls[x]] != v) return false;
    }
    return true;
}

inline bool is_union_of_classes(const FiniteMonoid& m, const AcceptingSet& p, GreenRelation rel) {
    return is_union_of_classes(m, green_classes(m), p, rel);
}

// ---------------------------------------------------------------------------
// Languages back from subsets
// ---------------------------------------------------------------------------

/// DFA for h^{-1}(S): states are the monoid elements acted on by right
/// multiplication with the letter images (the right Cayley graph rooted at
/// the identity). Complete and accessible by construction.
inline Dfa recognized_language(const FiniteMonoid& m, const std::vector<bool>& subset) {
    Dfa d(m.alphabet);
    for (Element x = 0; x < m.size; ++x) d.add_state(subset[x]);
    for (Element x = 0; x < m.size; ++x)
        for (std::size_t l = 0; l < m.alphabet.size(); ++l)
            d.next[x][l] = m.product(x, m.generators[l]);
    d.initial = m.identity;
    d.is_complete = true;
    return d;
}

}  // namespace rideal
