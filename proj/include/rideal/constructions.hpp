#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "rideal/classify.hpp"
#include "rideal/monoid.hpp"

namespace rideal {

// ---------------------------------------------------------------------------
// Staiger-Wagner automata: acceptance depends only on the set of visited
// states. Visited sets are uint32 bitmasks; the acceptance table is stored
// extensionally up to 16 states and formula-backed up to 24.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kSwExtensionalLimit = 16;
inline constexpr std::size_t kSwStateLimit = 24;

class SwTable {
public:
    static SwTable extensional(std::vector<std::uint32_t> subsets) {
        SwTable t;
        t.extensional_ = true;
        std::sort(subsets.begin(), subsets.end());
        subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
        t.subsets_ = std::move(subsets);
        return t;
    }

    /// T in table iff exists q in F∩T with T ⊆ Q ∖ future(q).
    static SwTable formula(std::uint32_t final_mask, std::vector<std::uint32_t> future_masks) {
        SwTable t;
        t.extensional_ = false;
        t.final_mask_ = final_mask;
        t.future_masks_ = std::move(future_masks);
        return t;
    }

    bool contains(std::uint32_t visited) const {
        if (extensional_)
            return std::binary_search(subsets_.begin(), subsets_.end(), visited);
        std::uint32_t candidates = visited & final_mask_;
        while (candidates) {
            unsigned q = static_cast<unsigned>(__builtin_ctz(candidates));
            candidates &= candidates - 1;
            if ((visited & future_masks_[q]) == 0) return true;
        }
        return false;
    }

    bool is_extensional() const { return extensional_; }

    const std::vector<std::uint32_t>& subsets() const {
        if (!extensional_)
            throw std::logic_error("SwTable: formula-backed table has no explicit subset list");
        return subsets_;
    }

    /// Explicit subset list, enumerating the formula if needed; limited to
    /// kSwExtensionalLimit states.
    std::vector<std::uint32_t> materialized(std::size_t state_count) const {
        if (extensional_) return subsets_;
        if (state_count > kSwExtensionalLimit)
            throw std::invalid_argument("SwTable: refusing to enumerate 2^" +
                                        std::to_string(state_count) + " subsets");
        std::vector<std::uint32_t> out;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << state_count); ++mask)
            if (contains(mask)) out.push_back(mask);
        return out;
    }

private:
    bool extensional_ = true;
    std::vector<std::uint32_t> subsets_;
    std::uint32_t final_mask_ = 0;
    std::vector<std::uint32_t> future_masks_;
};

struct StaigerWagnerAutomaton {
    Alphabet alphabet;
    std::vector<std::vector<std::vector<State>>> next;  // as in Nfa
    std::vector<State> initial;
    SwTable table;

    std::size_t state_count() const { return next.size(); }
};

/// Equips a weak automaton with the Staiger-Wagner condition
/// T = {T : exists q in F∩T with T ⊆ Q ∖ future(q)}, where future(q) is the
/// set of states reachable from q outside q's own SCC.
inline StaigerWagnerAutomaton to_staiger_wagner(const Nfa& a) {
    if (!check_shape(a, ShapeKind::Weak))
        throw std::invalid_argument("to_staiger_wagner: input automaton is not weak");
    if (a.state_count() > kSwStateLimit)
        throw std::invalid_argument("to_staiger_wagner: more than " +
                                    std::to_string(kSwStateLimit) + " states");

    auto scc = strongly_connected_components(a);
    std::size_t n_comp = scc.components.size();
    // component reachability, processed against topological order
    std::vector<std::uint32_t> comp_future(n_comp, 0);  // states reachable beyond the component
    std::vector<std::set<std::uint32_t>> comp_succ(n_comp);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (const auto& succ : a.next[q])
            for (State t : succ)
                if (scc.component_of[q] != scc.component_of[t])
                    comp_succ[scc.component_of[q]].insert(scc.component_of[t]);
    std::vector<std::uint32_t> comp_mask(n_comp, 0);
    for (std::size_t c = 0; c < n_comp; ++c)
        for (State q : scc.components[c]) comp_mask[c] |= std::uint32_t{1} << q;
    for (std::size_t c = n_comp; c-- > 0;)
        for (std::uint32_t d : comp_succ[c]) comp_future[c] |= comp_mask[d] | comp_future[d];

    std::uint32_t final_mask = 0;
    std::vector<std::uint32_t> future_masks(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        if (a.accepting[q]) final_mask |= std::uint32_t{1} << q;
        future_masks[q] = comp_future[scc.component_of[q]];
    }

    StaigerWagnerAutomaton b;
    b.alphabet = a.alphabet;
    b.next = a.next;
    b.initial = a.initial;
    SwTable formula = SwTable::formula(final_mask, std::move(future_masks));
    b.table = a.state_count() <= kSwExtensionalLimit
                  ? SwTable::extensional(formula.materialized(a.state_count()))
                  : formula;
    return b;
}

/// Some run of b on the word has its visited set in the table.
inline bool sw_accepts(const StaigerWagnerAutomaton& b, std::string_view word) {
    std::set<std::pair<State, std::uint32_t>> configs;
    for (State q : b.initial) configs.insert({q, std::uint32_t{1} << q});
    for (char c : word) {
        auto li = b.alphabet.index(c);
        if (!li) return false;
        std::set<std::pair<State, std::uint32_t>> next_configs;
        for (const auto& [q, mask] : configs)
            for (State t : b.next[q][*li])
                next_configs.insert({t, mask | (std::uint32_t{1} << t)});
        configs.swap(next_configs);
    }
    for (const auto& [q, mask] : configs)
        if (b.table.contains(mask)) return true;
    return false;
}

/// Run-collecting NFA: reachable states (P, q) with P the set of visited
/// states; (P, q) is final iff P is in the table.
inline Nfa sw_to_nfa(const StaigerWagnerAutomaton& b) {
    Nfa out(b.alphabet);
    std::map<std::pair<std::uint32_t, State>, State> ids;
    std::vector<std::pair<std::uint32_t, State>> order;
    auto intern = [&](std::uint32_t mask, State q) {
        auto key = std::make_pair(mask, q);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State id = out.add_state(b.table.contains(mask));
        ids.emplace(key, id);
        order.push_back(key);
        return id;
    };
    for (State q : b.initial) out.mark_initial(intern(std::uint32_t{1} << q, q));
    for (State cur = 0; cur < out.state_count(); ++cur) {
        auto [mask, q] = order[cur];
        for (std::size_t l = 0; l < b.alphabet.size(); ++l)
            for (State t : b.next[q][l])
                out.next[cur][l].push_back(intern(mask | (std::uint32_t{1} << t), t));
        for (auto& succ : out.next[cur]) std::sort(succ.begin(), succ.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weak automata constructions
// ---------------------------------------------------------------------------

/// Weak automaton for the same language: a single fresh final state f is
/// reached nondeterministically wherever the input could enter a final
/// state. With F empty the input is returned unchanged (f would be
/// unreachable, so it is omitted to keep the automaton trim).
inline Nfa nfa_to_weak(const Nfa& a) {
    bool any_final = false;
    for (bool f : a.accepting) any_final = any_final || f;
    if (!any_final) return a;

    Nfa out(a.alphabet);
    for (std::size_t q = 0; q < a.state_count(); ++q) out.add_state(false);
    State f = out.add_state(true);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            out.next[q][l] = a.next[q][l];
            for (State t : a.next[q][l])
                if (a.accepting[t]) {
                    out.next[q][l].push_back(f);
                    break;
                }
            std::sort(out.next[q][l].begin(), out.next[q][l].end());
            out.next[q][l].erase(std::unique(out.next[q][l].begin(), out.next[q][l].end()),
                                 out.next[q][l].end());
        }
    out.initial = a.initial;
    for (State q : a.initial)
        if (a.accepting[q]) {
            out.mark_initial(f);
            break;
        }
    return out;
}

/// Disjoint union of deterministic flip automata covering a weak DFA.
struct FlipUnion {
    std::vector<Dfa> parts;
};

/// One flip automaton per final SCC C: states Q_C = {q : C reachable from q},
/// transitions restricted to Q_C, finals C.
inline FlipUnion weak_to_flip_union(const Dfa& d) {
    Nfa a = detail::restrict_states(to_nfa(d), detail::reachable_forward(to_nfa(d)));
    if (!check_shape(a, ShapeKind::Weak))
        throw std::invalid_argument("weak_to_flip_union: input automaton is not weak");

    auto scc = strongly_connected_components(a);
    // backward reachability per component over the condensation
    std::size_t n_comp = scc.components.size();
    std::vector<std::set<std::uint32_t>> comp_pred(n_comp);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (const auto& succ : a.next[q])
            for (State t : succ)
                if (scc.component_of[q] != scc.component_of[t])
                    comp_pred[scc.component_of[t]].insert(scc.component_of[q]);

    FlipUnion out;
    for (std::size_t c = 0; c < n_comp; ++c) {
        if (!a.accepting[scc.components[c].front()]) continue;
        // components that can reach c
        std::vector<bool> reaches(n_comp, false);
        reaches[c] = true;
        for (std::size_t dcomp = c + 1; dcomp-- > 0;)
            if (reaches[dcomp])
                for (std::uint32_t pc : comp_pred[dcomp]) reaches[pc] = true;
        std::vector<bool> keep(a.state_count(), false);
        for (std::size_t q = 0; q < a.state_count(); ++q)
            keep[q] = reaches[scc.component_of[q]];

        Dfa part(a.alphabet);
        std::vector<State> remap(a.state_count(), kNoState);
        for (std::size_t q = 0; q < a.state_count(); ++q)
            if (keep[q]) remap[q] = part.add_state(scc.component_of[q] == c);
        for (std::size_t q = 0; q < a.state_count(); ++q) {
            if (!keep[q]) continue;
            for (std::size_t l = 0; l < a.alphabet.size(); ++l)
                for (State t : a.next[q][l])
                    if (keep[t]) part.next[remap[q]][l] = remap[t];
        }
        for (State q : a.initial)
            if (keep[q]) part.initial = remap[q];
        part.recompute_complete();
        out.parts.push_back(std::move(part));
    }
    return out;
}

// ---------------------------------------------------------------------------
// R-class decomposition of a Boolean combination of right ideals
// ---------------------------------------------------------------------------

/// For every R-class R inside h(L): the pair of right ideals
/// upper = h^{-1}({x : x <=_R R}) and strict = h^{-1}({x : x <_R R}).
/// L is the disjoint-by-class union of (upper ∖ strict); verified exactly.
inline std::vector<std::pair<Dfa, Dfa>> bc_decomposition(
    const Dfa& d, std::size_t monoid_cap = kDefaultMonoidCap) {
    Dfa md = to_minimal_dfa(d);
    auto [m, p] = transition_monoid(md, monoid_cap);
    GreenStructure g = green_classes(m);
    if (!is_union_of_classes(m, g, p, GreenRelation::R))
        throw std::invalid_argument(
            "bc_decomposition: language is not a Boolean combination of right ideals");

    // class ids are in least-representative order already (shortlex canonical)
    std::vector<std::pair<Dfa, Dfa>> out;
    for (std::uint32_t c = 0; c < g.r_count; ++c) {
        bool in_p = false;
        for (Element x = 0; x < m.size; ++x)
            if (g.r_class[x] == c) { in_p = p.contains(x); break; }
        if (!in_p) continue;

        std::vector<bool> upper(m.size), strict(m.size);
        for (Element x = 0; x < m.size; ++x) {
            upper[x] = g.r_leq(g.r_class[x], c);
            strict[x] = upper[x] && g.r_class[x] != c;
        }
        AcceptingSet upper_set{upper}, strict_set{strict};
        if (!is_ideal_subset(m, upper_set, IdealKind::Right) ||
            !is_ideal_subset(m, strict_set, IdealKind::Right))
            throw std::logic_error("bc_decomposition: R-down-set is not a right ideal");
        out.emplace_back(to_minimal_dfa(recognized_language(m, upper)),
                         to_minimal_dfa(recognized_language(m, strict)));
    }

    // exact verification that the union of differences reproduces L
    Dfa acc(md.alphabet);
    acc.add_state(false);
    acc.initial = 0;
    acc.recompute_complete();
    Dfa union_so_far = complete(acc);  // empty language
    for (const auto& [upper, strict] : out)
        union_so_far = combine(union_so_far, combine(upper, strict, SetOp::Difference), SetOp::Union);
    if (!compare(union_so_far, md, CompareMode::Equivalent).ok)
        throw std::logic_error("bc_decomposition: decomposition does not reproduce the language");
    return out;
}

}  // namespace rideal
