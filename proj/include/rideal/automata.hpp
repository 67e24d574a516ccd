#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rideal/alphabet.hpp"

namespace rideal {

using State = std::uint32_t;
inline constexpr State kNoState = std::numeric_limits<State>::max();

/// Nondeterministic finite automaton. The zero-state automaton is legal and
/// recognizes the empty language.
struct Nfa {
    Alphabet alphabet;
    std::vector<std::vector<std::vector<State>>> next;  // [state][letter] -> sorted successors
    std::vector<State> initial;                         // sorted
    std::vector<bool> accepting;

    Nfa() = default;
    explicit Nfa(Alphabet a) : alphabet(std::move(a)) {}

    std::size_t state_count() const { return next.size(); }

    State add_state(bool final = false) {
        next.emplace_back(alphabet.size());
        accepting.push_back(final);
        return static_cast<State>(next.size() - 1);
    }

    void add_transition(State from, char letter, State to) {
        auto& succ = next.at(from).at(alphabet.index_checked(letter));
        auto it = std::lower_bound(succ.begin(), succ.end(), to);
        if (it == succ.end() || *it != to) succ.insert(it, to);
    }

    void mark_initial(State q) {
        auto it = std::lower_bound(initial.begin(), initial.end(), q);
        if (it == initial.end() || *it != q) initial.insert(it, q);
    }
};

/// Deterministic finite automaton; `next[q][a] == kNoState` marks a missing
/// transition. `is_complete` means: has an initial state and a total
/// transition function (so complementation by final-set flip is sound).
struct Dfa {
    Alphabet alphabet;
    std::vector<std::vector<State>> next;  // [state][letter] -> state or kNoState
    State initial = kNoState;
    std::vector<bool> accepting;
    bool is_complete = false;

    Dfa() = default;
    explicit Dfa(Alphabet a) : alphabet(std::move(a)) {}

    std::size_t state_count() const { return next.size(); }

    State add_state(bool final = false) {
        next.emplace_back(alphabet.size(), kNoState);
        accepting.push_back(final);
        return static_cast<State>(next.size() - 1);
    }

    void set_transition(State from, char letter, State to) {
        next.at(from).at(alphabet.index_checked(letter)) = to;
    }

    void recompute_complete() {
        is_complete = initial != kNoState;
        for (const auto& row : next)
            for (State t : row)
                if (t == kNoState) { is_complete = false; return; }
    }
};

inline Nfa to_nfa(const Dfa& d) {
    Nfa a(d.alphabet);
    for (std::size_t q = 0; q < d.state_count(); ++q) a.add_state(d.accepting[q]);
    for (std::size_t q = 0; q < d.state_count(); ++q)
        for (std::size_t l = 0; l < d.alphabet.size(); ++l)
            if (d.next[q][l] != kNoState) a.next[q][l] = {d.next[q][l]};
    if (d.initial != kNoState) a.initial = {d.initial};
    return a;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

/// NFA membership by on-the-fly subset tracking.
inline bool accepts(const Nfa& a, std::string_view word) {
    std::vector<bool> cur(a.state_count(), false);
    for (State q : a.initial) cur[q] = true;
    for (char c : word) {
        auto li = a.alphabet.index(c);
        if (!li) return false;
        std::vector<bool> nxt(a.state_count(), false);
        for (std::size_t q = 0; q < cur.size(); ++q)
            if (cur[q])
                for (State t : a.next[q][*li]) nxt[t] = true;
        cur.swap(nxt);
    }
    for (std::size_t q = 0; q < cur.size(); ++q)
        if (cur[q] && a.accepting[q]) return true;
    return false;
}

inline bool accepts(const Dfa& d, std::string_view word) {
    if (d.initial == kNoState) return false;
    State q = d.initial;
    for (char c : word) {
        auto li = d.alphabet.index(c);
        if (!li) return false;
        q = d.next[q][*li];
        if (q == kNoState) return false;
    }
    return d.accepting[q];
}

// ---------------------------------------------------------------------------
// Completion, trimming, reversal
// ---------------------------------------------------------------------------

/// Totalizes the transition function, adding at most one non-final sink.
/// A zero-state automaton gains a sink that doubles as initial state, so the
/// result always carries runs for every word.
inline Dfa complete(const Dfa& d) {
    bool total = d.initial != kNoState;
    for (const auto& row : d.next)
        for (State t : row)
            if (t == kNoState) total = false;
    if (total) {
        Dfa out = d;
        out.is_complete = true;
        return out;
    }
    Dfa out = d;
    State sink = out.add_state(false);
    for (auto& row : out.next)
        for (State& t : row)
            if (t == kNoState) t = sink;
    if (out.initial == kNoState) out.initial = sink;
    out.is_complete = true;
    return out;
}

namespace detail {

inline std::vector<bool> reachable_forward(const Nfa& a) {
    std::vector<bool> seen(a.state_count(), false);
    std::deque<State> queue;
    for (State q : a.initial) { seen[q] = true; queue.push_back(q); }
    while (!queue.empty()) {
        State q = queue.front(); queue.pop_front();
        for (const auto& succ : a.next[q])
            for (State t : succ)
                if (!seen[t]) { seen[t] = true; queue.push_back(t); }
    }
    return seen;
}

inline std::vector<bool> reachable_backward(const Nfa& a) {
    std::vector<std::vector<State>> pred(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (const auto& succ : a.next[q])
            for (State t : succ) pred[t].push_back(static_cast<State>(q));
    std::vector<bool> seen(a.state_count(), false);
    std::deque<State> queue;
    for (std::size_t q = 0; q < a.state_count(); ++q)
        if (a.accepting[q]) { seen[q] = true; queue.push_back(static_cast<State>(q)); }
    while (!queue.empty()) {
        State q = queue.front(); queue.pop_front();
        for (State p : pred[q])
            if (!seen[p]) { seen[p] = true; queue.push_back(p); }
    }
    return seen;
}

inline Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep) {
    Nfa out(a.alphabet);
    std::vector<State> remap(a.state_count(), kNoState);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        if (keep[q]) remap[q] = out.add_state(a.accepting[q]);
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        if (!keep[q]) continue;
        for (std::size_t l = 0; l < a.alphabet.size(); ++l)
            for (State t : a.next[q][l])
                if (keep[t]) out.next[remap[q]][l].push_back(remap[t]);
    }
    for (State q : a.initial)
        if (keep[q]) out.mark_initial(remap[q]);
    return out;
}

}  // namespace detail

/// Removes states that are not both accessible and co-accessible.
inline Nfa trim(const Nfa& a) {
    auto fwd = detail::reachable_forward(a);
    auto bwd = detail::reachable_backward(a);
    std::vector<bool> keep(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q) keep[q] = fwd[q] && bwd[q];
    return detail::restrict_states(a, keep);
}

/// Deterministic trim automaton for the same language (dead branches cut).
inline Dfa trim_dfa(const Dfa& d) {
    Nfa t = trim(to_nfa(d));
    Dfa out(t.alphabet);
    for (std::size_t q = 0; q < t.state_count(); ++q) out.add_state(t.accepting[q]);
    for (std::size_t q = 0; q < t.state_count(); ++q)
        for (std::size_t l = 0; l < t.alphabet.size(); ++l)
            if (!t.next[q][l].empty()) out.next[q][l] = t.next[q][l].front();
    if (!t.initial.empty()) out.initial = t.initial.front();
    out.recompute_complete();
    return out;
}

/// Edge reversal; recognizes the mirror language.
inline Nfa reverse(const Nfa& a) {
    Nfa out(a.alphabet);
    for (std::size_t q = 0; q < a.state_count(); ++q) out.add_state(false);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t l = 0; l < a.alphabet.size(); ++l)
            for (State t : a.next[q][l]) out.next[t][l].push_back(static_cast<State>(q));
    for (auto& row : out.next)
        for (auto& succ : row) std::sort(succ.begin(), succ.end());
    for (std::size_t q = 0; q < a.state_count(); ++q)
        if (a.accepting[q]) out.mark_initial(static_cast<State>(q));
    for (State q : a.initial) out.accepting[q] = true;
    return out;
}

// ---------------------------------------------------------------------------
// Determinization and minimization
// ---------------------------------------------------------------------------

/// Subset construction. The result is complete (the empty subset acts as
/// sink) and contains accessible states only, numbered in BFS order.
inline Dfa determinize(const Nfa& a) {
    Dfa out(a.alphabet);
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> subsets;
    auto intern = [&](std::vector<State> subset) {
        auto it = ids.find(subset);
        if (it != ids.end()) return it->second;
        bool final = false;
        for (State q : subset) final = final || a.accepting[q];
        State id = out.add_state(final);
        ids.emplace(subset, id);
        subsets.push_back(std::move(subset));
        return id;
    };
    State start = intern(a.initial);
    out.initial = start;
    for (State cur = 0; cur < out.state_count(); ++cur) {
        std::vector<State> subset = subsets[cur];  // copy: subsets grows below
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            std::vector<bool> mark(a.state_count(), false);
            for (State q : subset)
                for (State t : a.next[q][l]) mark[t] = true;
            std::vector<State> succ;
            for (std::size_t q = 0; q < mark.size(); ++q)
                if (mark[q]) succ.push_back(static_cast<State>(q));
            out.next[cur][l] = intern(std::move(succ));
        }
    }
    out.is_complete = true;
    return out;
}

namespace detail {

/// BFS renumbering over letters in alphabet order; makes DFA layouts
/// byte-reproducible.
inline Dfa canonical_numbering(const Dfa& d) {
    Dfa out(d.alphabet);
    if (d.initial == kNoState) return out;
    std::vector<State> remap(d.state_count(), kNoState);
    std::vector<State> order;
    remap[d.initial] = 0;
    order.push_back(d.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
            State t = d.next[order[i]][l];
            if (t != kNoState && remap[t] == kNoState) {
                remap[t] = static_cast<State>(order.size());
                order.push_back(t);
            }
        }
    }
    for (State q : order) out.add_state(d.accepting[q]);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
            State t = d.next[order[i]][l];
            out.next[remap[order[i]]][l] = (t == kNoState) ? kNoState : remap[t];
        }
    out.initial = 0;
    out.recompute_complete();
    return out;
}

}  // namespace detail

/// Complete minimal DFA, canonically numbered (Moore partition refinement).
inline Dfa to_minimal_dfa(const Nfa& a) {
    Dfa det = determinize(a);  // complete, accessible
    std::size_t n = det.state_count();
    std::vector<std::uint32_t> cls(n);
    for (std::size_t q = 0; q < n; ++q) cls[q] = det.accepting[q] ? 1 : 0;
    std::size_t count = 2;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next_cls(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<std::uint32_t> sig;
            sig.reserve(det.alphabet.size() + 1);
            sig.push_back(cls[q]);
            for (std::size_t l = 0; l < det.alphabet.size(); ++l)
                sig.push_back(cls[det.next[q][l]]);
            auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size()));
            next_cls[q] = it->second;
        }
        std::size_t new_count = sig_ids.size();
        cls.swap(next_cls);
        if (new_count == count) break;
        count = new_count;
    }
    Dfa quot(det.alphabet);
    for (std::size_t c = 0; c < count; ++c) quot.add_state(false);
    for (std::size_t q = 0; q < n; ++q) {
        if (det.accepting[q]) quot.accepting[cls[q]] = true;
        for (std::size_t l = 0; l < det.alphabet.size(); ++l)
            quot.next[cls[q]][l] = cls[det.next[q][l]];
    }
    quot.initial = cls[det.initial];
    quot.is_complete = true;
    return detail::canonical_numbering(quot);
}

inline Dfa to_minimal_dfa(const Dfa& d) { return to_minimal_dfa(to_nfa(d)); }

// ---------------------------------------------------------------------------
// Boolean operations and comparison
// ---------------------------------------------------------------------------

enum class SetOp { Union, Intersection, Difference };

/// Product construction over completed inputs; reachable part only.
inline Dfa combine(const Dfa& x, const Dfa& y, SetOp op) {
    if (x.alphabet != y.alphabet)
        throw std::invalid_argument("combine: alphabet mismatch");
    Dfa cx = complete(x), cy = complete(y);
    Dfa out(x.alphabet);
    std::map<std::pair<State, State>, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto verdict = [&](bool fx, bool fy) {
        switch (op) {
            case SetOp::Union: return fx || fy;
            case SetOp::Intersection: return fx && fy;
            case SetOp::Difference: return fx && !fy;
        }
        return false;
    };
    auto intern = [&](State p, State q) {
        auto key = std::make_pair(p, q);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State id = out.add_state(verdict(cx.accepting[p], cy.accepting[q]));
        ids.emplace(key, id);
        pairs.push_back(key);
        return id;
    };
    out.initial = intern(cx.initial, cy.initial);
    for (State cur = 0; cur < out.state_count(); ++cur) {
        auto [p, q] = pairs[cur];
        for (std::size_t l = 0; l < out.alphabet.size(); ++l)
            out.next[cur][l] = intern(cx.next[p][l], cy.next[q][l]);
    }
    out.is_complete = true;
    return out;
}

/// Final-set flip; requires a complete input.
inline Dfa complement(const Dfa& d) {
    if (!d.is_complete)
        throw std::invalid_argument("complement: input must be complete");
    Dfa out = d;
    for (std::size_t q = 0; q < out.state_count(); ++q)
        out.accepting[q] = !out.accepting[q];
    return out;
}

enum class CompareMode { Equivalent, Included };

struct CompareResult {
    bool ok = false;
    std::optional<std::string> counterexample;  // shortest witness, shortlex
};

/// Exact language comparison; on failure yields the shortlex-least witness
/// (a word in the symmetric difference, resp. in x minus y).
inline CompareResult compare(const Nfa& x, const Nfa& y, CompareMode mode) {
    if (x.alphabet != y.alphabet)
        throw std::invalid_argument("compare: alphabet mismatch");
    Dfa dx = determinize(x), dy = determinize(y);
    auto bad = [&](State p, State q) {
        bool fx = dx.accepting[p], fy = dy.accepting[q];
        return mode == CompareMode::Equivalent ? fx != fy : (fx && !fy);
    };
    // BFS over the pair graph discovers states in shortlex order of their
    // least reaching words.
    std::map<std::pair<State, State>, std::string> seen;
    std::deque<std::pair<State, State>> queue;
    auto start = std::make_pair(dx.initial, dy.initial);
    seen.emplace(start, "");
    queue.push_back(start);
    while (!queue.empty()) {
        auto [p, q] = queue.front(); queue.pop_front();
        const std::string word = seen.at({p, q});
        if (bad(p, q)) return {false, word};
        for (std::size_t l = 0; l < x.alphabet.size(); ++l) {
            auto succ = std::make_pair(dx.next[p][l], dy.next[q][l]);
            if (!seen.count(succ)) {
                seen.emplace(succ, word + x.alphabet.letter(l));
                queue.push_back(succ);
            }
        }
    }
    return {true, std::nullopt};
}

inline CompareResult compare(const Dfa& x, const Dfa& y, CompareMode mode) {
    return compare(to_nfa(x), to_nfa(y), mode);
}

inline bool equivalent(const Nfa& x, const Nfa& y) {
    return compare(x, y, CompareMode::Equivalent).ok;
}

// ---------------------------------------------------------------------------
// Word enumeration
// ---------------------------------------------------------------------------

/// Accepted words of length <= max_len, in shortlex order.
inline std::vector<std::string> enumerate_words(const Nfa& a, std::size_t max_len) {
    std::vector<std::vector<std::string>> by_len(max_len + 1);
    std::vector<State> start = a.initial;
    auto is_final = [&](const std::vector<State>& subset) {
        for (State q : subset)
            if (a.accepting[q]) return true;
        return false;
    };
    std::string word;
    auto rec = [&](auto&& self, const std::vector<State>& subset) -> void {
        if (is_final(subset)) by_len[word.size()].push_back(word);
        if (word.size() == max_len) return;
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            std::vector<bool> mark(a.state_count(), false);
            for (State q : subset)
                for (State t : a.next[q][l]) mark[t] = true;
            std::vector<State> succ;
            for (std::size_t q = 0; q < mark.size(); ++q)
                if (mark[q]) succ.push_back(static_cast<State>(q));
            if (succ.empty()) continue;  // nothing accepted down this branch
            word.push_back(a.alphabet.letter(l));
            self(self, succ);
            word.pop_back();
        }
    };
    rec(rec, start);
    std::vector<std::string> out;
    for (auto& bucket : by_len)
        out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

// ---------------------------------------------------------------------------
// Strongly connected components
// ---------------------------------------------------------------------------

struct SccPartition {
    std::vector<std::uint32_t> component_of;        // state -> component id
    std::vector<std::vector<State>> components;     // in topological order
};

namespace detail {

/// Iterative Tarjan over an adjacency list. Components come out in reverse
/// topological order and get flipped before returning.
inline SccPartition scc_of_adjacency(const std::vector<std::vector<State>>& adj) {
    std::size_t n = adj.size();
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    std::vector<std::vector<State>> comps;
    std::uint32_t counter = 0;

    struct Frame { State v; std::size_t child; };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> frames{{static_cast<State>(root), 0}};
        index[root] = low[root] = counter++;
        stack.push_back(static_cast<State>(root));
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& fr = frames.back();
            if (fr.child < adj[fr.v].size()) {
                State w = adj[fr.v][fr.child++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
            } else {
                State v = fr.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<State> component;
                    for (;;) {
                        State w = stack.back(); stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = static_cast<std::uint32_t>(comps.size());
                        component.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(component.begin(), component.end());
                    comps.push_back(std::move(component));
                }
            }
        }
    }
    // Tarjan emits sinks first; flip so that the order respects reachability.
    std::reverse(comps.begin(), comps.end());
    for (auto& c : comp) c = static_cast<std::uint32_t>(comps.size() - 1 - c);
    return {std::move(comp), std::move(comps)};
}

}  // namespace detail

/// SCC partition of the transition graph (edges = transitions on any
/// letter); component order respects reachability.
inline SccPartition strongly_connected_components(const Nfa& a) {
    std::vector<std::vector<State>> adj(a.state_count());
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (const auto& succ : a.next[q])
            for (State t : succ) adj[q].push_back(t);
    return detail::scc_of_adjacency(adj);
}

}  // namespace rideal
