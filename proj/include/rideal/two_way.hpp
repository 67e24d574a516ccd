#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rideal/classify.hpp"

namespace rideal {

/// Deterministic two-way automaton over the tape > w <. States are
/// partitioned into right-moving (X) and left-moving (Y) ones; the head
/// moves before a transition completes and the direction depends only on
/// the destination state. The empty automaton (no states) is legal.
struct TwoWayAutomaton {
    Alphabet alphabet;
    std::vector<bool> right_moving;        // X = true, Y = false
    std::vector<std::vector<State>> next;  // [state][symbol]; letters, then '>' then '<'
    State initial = kNoState;              // must be right-moving when present
    std::vector<bool> accepting;

    std::size_t state_count() const { return next.size(); }
    std::size_t symbol_count() const { return alphabet.size() + 2; }
    std::size_t left_marker_index() const { return alphabet.size(); }
    std::size_t right_marker_index() const { return alphabet.size() + 1; }

    std::size_t symbol_index(char c) const {
        if (c == kLeftMarker) return left_marker_index();
        if (c == kRightMarker) return right_marker_index();
        return alphabet.index_checked(c);
    }

    State add_state(bool right, bool final = false) {
        next.emplace_back(symbol_count(), kNoState);
        right_moving.push_back(right);
        accepting.push_back(final);
        return static_cast<State>(next.size() - 1);
    }

    void set_transition(State from, char symbol, State to) {
        next.at(from).at(symbol_index(symbol)) = to;
    }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// Signature and determinism diagnostics; an empty result means valid.
/// The representation is deterministic by construction (one successor per
/// (state, symbol)), so the reported violations concern the signature:
/// '>' rows only from left-movers into right-movers, '<' rows only from
/// right-movers, and the initial state right-moving.
inline std::vector<std::string> validate(const TwoWayAutomaton& t) {
    std::vector<std::string> issues;
    auto state_name = [](State q) { return "z" + std::to_string(q); };
    if (t.initial != kNoState && !t.right_moving[t.initial])
        issues.push_back("initial state " + state_name(t.initial) + " is not right-moving");
    if (t.initial == kNoState && t.state_count() > 0)
        issues.push_back("missing initial state in a non-empty automaton");
    for (std::size_t q = 0; q < t.state_count(); ++q) {
        State on_left = t.next[q][t.left_marker_index()];
        State on_right = t.next[q][t.right_marker_index()];
        if (on_left != kNoState) {
            if (t.right_moving[q])
                issues.push_back("transition (" + state_name(static_cast<State>(q)) +
                                 ", >, ...): '>' rows are reserved for left-moving states");
            else if (!t.right_moving[on_left])
                issues.push_back("transition (" + state_name(static_cast<State>(q)) + ", >, " +
                                 state_name(on_left) + "): '>'-successors must be right-moving");
        }
        if (on_right != kNoState && !t.right_moving[q])
            issues.push_back("transition (" + state_name(static_cast<State>(q)) +
                             ", <, ...): '<' rows are reserved for right-moving states");
    }
    return issues;
}

inline void require_valid(const TwoWayAutomaton& t, const char* who) {
    auto issues = validate(t);
    if (!issues.empty())
        throw std::invalid_argument(std::string(who) + ": invalid automaton: " + issues.front());
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

enum class RunOutcome { Accept, Reject, Loop, Stuck };

struct RunResult {
    RunOutcome outcome = RunOutcome::Stuck;
    State state = kNoState;                              // for Accept/Reject
    std::vector<std::pair<State, std::size_t>> trace;    // (state, position)

    bool accepted() const { return outcome == RunOutcome::Accept; }
};

/// Deterministic run on the tape > w <, starting at position 1. The run
/// ends at position |w|+2 (accept iff the state is final), gets stuck when
/// no transition applies, and loops when a configuration repeats. A looping
/// or stuck run accepts nothing; the empty automaton rejects everything
/// (stuck at start).
inline RunResult simulate(const TwoWayAutomaton& t, std::string_view word) {
    require_valid(t, "simulate");
    RunResult run;
    if (t.initial == kNoState) return run;  // stuck, no run exists

    auto symbol_at = [&](std::size_t pos) -> std::size_t {
        if (pos == 0) return t.left_marker_index();
        if (pos == word.size() + 1) return t.right_marker_index();
        return t.alphabet.index_checked(word[pos - 1]);
    };

    State z = t.initial;
    std::size_t pos = 1;
    run.trace.push_back({z, pos});
    std::size_t limit = t.state_count() * (word.size() + 2) + 1;
    std::vector<bool> seen(t.state_count() * (word.size() + 2), false);
    seen[z * (word.size() + 2) + pos] = true;
    for (std::size_t step = 0; step < limit; ++step) {
        State z2 = t.next[z][symbol_at(pos)];
        if (z2 == kNoState) {
            run.outcome = RunOutcome::Stuck;
            run.state = z;
            return run;
        }
        std::size_t pos2 = t.right_moving[z2] ? pos + 1 : pos - 1;
        z = z2;
        pos = pos2;
        run.trace.push_back({z, pos});
        if (pos == word.size() + 2) {
            run.outcome = t.accepting[z] ? RunOutcome::Accept : RunOutcome::Reject;
            run.state = z;
            return run;
        }
        std::size_t key = z * (word.size() + 2) + pos;
        if (seen[key]) {
            run.outcome = RunOutcome::Loop;
            run.state = z;
            return run;
        }
        seen[key] = true;
    }
    run.outcome = RunOutcome::Loop;
    run.state = z;
    return run;
}

inline bool accepts(const TwoWayAutomaton& t, std::string_view word) {
    return simulate(t, word).accepted();
}

// ---------------------------------------------------------------------------
// Shape checks
// ---------------------------------------------------------------------------

enum class TwoWayShape { PartiallyOrdered, OnePass, Flip, FullyAccepting, Weak };

inline bool shape(const TwoWayAutomaton& t, TwoWayShape which) {
    require_valid(t, "shape");
    switch (which) {
        case TwoWayShape::PartiallyOrdered:
        case TwoWayShape::Weak: {
            std::vector<std::vector<State>> adj(t.state_count());
            for (std::size_t q = 0; q < t.state_count(); ++q)
                for (State s : t.next[q])
                    if (s != kNoState) adj[q].push_back(s);
            auto scc = detail::scc_of_adjacency(adj);
            for (const auto& component : scc.components) {
                if (which == TwoWayShape::PartiallyOrdered) {
                    if (component.size() > 1) return false;
                } else {
                    bool first = t.accepting[component.front()];
                    for (State q : component)
                        if (t.accepting[q] != first) return false;
                }
            }
            return true;
        }
        case TwoWayShape::OnePass:
            for (std::size_t q = 0; q < t.state_count(); ++q) {
                State s = t.next[q][t.right_marker_index()];
                if (s != kNoState && s != q) return false;
            }
            return true;
        case TwoWayShape::Flip:
            for (std::size_t q = 0; q < t.state_count(); ++q) {
                if (!t.accepting[q]) continue;
                for (State s : t.next[q])
                    if (s != kNoState && !t.accepting[s]) return false;
            }
            return true;
        case TwoWayShape::FullyAccepting:
            for (bool f : t.accepting)
                if (!f) return false;
            return true;
    }
    return false;
}

/// Complete iff every left-moving state has successors on A and '>', and
/// every right-moving state on A and '<'.
inline bool is_complete(const TwoWayAutomaton& t) {
    if (t.initial == kNoState) return false;
    for (std::size_t q = 0; q < t.state_count(); ++q) {
        for (std::size_t l = 0; l < t.alphabet.size(); ++l)
            if (t.next[q][l] == kNoState) return false;
        if (t.right_moving[q]) {
            if (t.next[q][t.right_marker_index()] == kNoState) return false;
        } else {
            if (t.next[q][t.left_marker_index()] == kNoState) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Complementation of one-pass po2dfa
// ---------------------------------------------------------------------------

namespace detail {

/// Completion for one-pass automata. Missing '<' rows mean rejection at the
/// right end; that verdict is folded into the finality of the X states
/// before self-loops are added, so the result stays one-pass and recognizes
/// the same language. Letter and '>' gaps are routed to a fresh non-final
/// right-moving sink.
inline TwoWayAutomaton complete_one_pass(const TwoWayAutomaton& t) {
    TwoWayAutomaton out = t;
    for (std::size_t q = 0; q < out.state_count(); ++q) {
        if (!out.right_moving[q]) continue;
        State& on_right = out.next[q][out.right_marker_index()];
        if (on_right == kNoState) {
            out.accepting[q] = false;  // stuck at '<' never accepted
            on_right = static_cast<State>(q);
        }
    }
    bool needs_sink = out.initial == kNoState;
    for (std::size_t q = 0; q < out.state_count() && !needs_sink; ++q) {
        for (std::size_t l = 0; l < out.alphabet.size(); ++l)
            if (out.next[q][l] == kNoState) needs_sink = true;
        if (!out.right_moving[q] && out.next[q][out.left_marker_index()] == kNoState)
            needs_sink = true;
    }
    if (needs_sink) {
        State sink = out.add_state(true, false);
        for (std::size_t l = 0; l < out.alphabet.size(); ++l) out.next[sink][l] = sink;
        out.next[sink][out.right_marker_index()] = sink;
        for (std::size_t q = 0; q < out.state_count(); ++q) {
            for (std::size_t l = 0; l < out.alphabet.size(); ++l)
                if (out.next[q][l] == kNoState) out.next[q][l] = sink;
            if (!out.right_moving[q] && out.next[q][out.left_marker_index()] == kNoState)
                out.next[q][out.left_marker_index()] = sink;
        }
        if (out.initial == kNoState) out.initial = sink;
    }
    return out;
}

}  // namespace detail

/// Complement of a one-pass po2dfa: complete with a right-moving sink, then
/// swap finality on the right-moving states (the state scanning '<' first
/// decides acceptance, and it is always right-moving).
inline TwoWayAutomaton complement_one_pass(const TwoWayAutomaton& t) {
    require_valid(t, "complement_one_pass");
    if (!shape(t, TwoWayShape::OnePass) || !shape(t, TwoWayShape::PartiallyOrdered))
        throw std::invalid_argument("complement_one_pass: input must be a one-pass po2dfa");
    TwoWayAutomaton out = detail::complete_one_pass(t);
    for (std::size_t q = 0; q < out.state_count(); ++q)
        out.accepting[q] = out.right_moving[q] && !out.accepting[q];
    return out;
}

// ---------------------------------------------------------------------------
// Flip <-> fully accepting conversions (both produce the complement)
// ---------------------------------------------------------------------------

enum class FlipFullyDirection { FlipToFully, FullyToFlip };

inline TwoWayAutomaton convert_flip_fully(const TwoWayAutomaton& t, FlipFullyDirection dir) {
    require_valid(t, "convert_flip_fully");
    if (!shape(t, TwoWayShape::OnePass) || !shape(t, TwoWayShape::PartiallyOrdered))
        throw std::invalid_argument("convert_flip_fully: input must be a one-pass po2dfa");

    if (dir == FlipFullyDirection::FlipToFully) {
        if (!shape(t, TwoWayShape::Flip) || !is_complete(t))
            throw std::invalid_argument("convert_flip_fully: input must be a complete flip automaton");
        if (t.accepting[t.initial]) return TwoWayAutomaton{t.alphabet, {}, {}, kNoState, {}};
        // restrict states to the non-final part; all survivors become final
        TwoWayAutomaton out{t.alphabet, {}, {}, kNoState, {}};
        std::vector<State> remap(t.state_count(), kNoState);
        for (std::size_t q = 0; q < t.state_count(); ++q)
            if (!t.accepting[q]) remap[q] = out.add_state(t.right_moving[q], true);
        for (std::size_t q = 0; q < t.state_count(); ++q) {
            if (t.accepting[q]) continue;
            for (std::size_t s = 0; s < t.symbol_count(); ++s) {
                State to = t.next[q][s];
                if (to != kNoState && !t.accepting[to]) out.next[remap[q]][s] = remap[to];
            }
        }
        out.initial = remap[t.initial];
        return out;
    }

    if (!shape(t, TwoWayShape::FullyAccepting))
        throw std::invalid_argument("convert_flip_fully: input must be fully accepting");
    // adjoin a final right-moving sink absorbing every missing transition
    TwoWayAutomaton out = t;
    out.accepting.assign(out.state_count(), false);
    State sink = out.add_state(true, true);
    for (std::size_t s = 0; s < out.symbol_count(); ++s)
        if (s != out.left_marker_index()) out.next[sink][s] = sink;
    for (std::size_t q = 0; q + 1 < out.state_count(); ++q) {
        for (std::size_t l = 0; l < out.alphabet.size(); ++l)
            if (out.next[q][l] == kNoState) out.next[q][l] = sink;
        if (out.right_moving[q]) {
            if (out.next[q][out.right_marker_index()] == kNoState)
                out.next[q][out.right_marker_index()] = sink;
        } else {
            if (out.next[q][out.left_marker_index()] == kNoState)
                out.next[q][out.left_marker_index()] = sink;
        }
    }
    if (out.initial == kNoState) out.initial = sink;
    return out;
}

// ---------------------------------------------------------------------------
// Two-way to one-way conversion
// ---------------------------------------------------------------------------

namespace detail {

constexpr State kDiverges = kNoState;

/// Behavior of the suffix machine at a tape position: starting in state s
/// scanning `sym`, iterate left excursions through `tab` (which maps each
/// left-moving state entering the prefix to its rightward exit state, or
/// kDiverges) until the head exits to the right, diverges, or repeats.
inline State boundary_step(const TwoWayAutomaton& t, State s, std::size_t sym,
                           const std::vector<State>& tab,
                           const std::vector<std::size_t>& y_index) {
    std::vector<bool> seen(t.state_count(), false);
    for (;;) {
        if (seen[s]) return kDiverges;
        seen[s] = true;
        State z = t.next[s][sym];
        if (z == kNoState) return kDiverges;
        if (t.right_moving[z]) return z;
        State back = tab[y_index[z]];
        if (back == kDiverges) return kDiverges;
        s = back;
    }
}

}  // namespace detail

/// Classical deterministic two-way to one-way conversion. A one-way state is
/// the pair (state in which the head first crosses the current boundary
/// rightward, table mapping each left-moving state entering the prefix to
/// its rightward exit state or a divergence marker); divergence is
/// absorbing. The result is complete and canonically numbered.
inline Dfa to_one_way_dfa(const TwoWayAutomaton& t) {
    require_valid(t, "to_one_way_dfa");

    std::vector<std::size_t> y_index(t.state_count(), 0);
    std::vector<State> y_states;
    for (std::size_t q = 0; q < t.state_count(); ++q)
        if (!t.right_moving[q]) {
            y_index[q] = y_states.size();
            y_states.push_back(static_cast<State>(q));
        }

    using Key = std::pair<State, std::vector<State>>;  // (first crossing, table)
    const Key dead{detail::kDiverges, std::vector<State>(y_states.size(), detail::kDiverges)};

    Key start = dead;
    if (t.initial != kNoState) {
        std::vector<State> tab(y_states.size());
        for (std::size_t i = 0; i < y_states.size(); ++i) {
            State z = t.next[y_states[i]][t.left_marker_index()];
            tab[i] = z == kNoState ? detail::kDiverges : z;  // '>'-successors are right-moving
        }
        start = {t.initial, std::move(tab)};
    }

    Dfa out(t.alphabet);
    std::map<Key, State> ids;
    std::vector<Key> order;
    auto is_final = [&](const Key& key) {
        auto [f, tab] = key;
        if (f == detail::kDiverges) return false;
        // scan '<': transitions into right-moving states end the run
        std::vector<bool> seen(t.state_count(), false);
        State s = f;
        for (;;) {
            if (seen[s]) return false;
            seen[s] = true;
            State z = t.next[s][t.right_marker_index()];
            if (z == kNoState) return false;
            if (t.right_moving[z]) return static_cast<bool>(t.accepting[z]);
            State back = tab[y_index[z]];
            if (back == detail::kDiverges) return false;
            s = back;
        }
    };
    auto intern = [&](Key key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State id = out.add_state(is_final(key));
        ids.emplace(key, id);
        order.push_back(std::move(key));
        return id;
    };

    out.initial = intern(start);
    for (State cur = 0; cur < out.state_count(); ++cur) {
        Key key = order[cur];
        for (std::size_t l = 0; l < t.alphabet.size(); ++l) {
            if (key.first == detail::kDiverges) {
                out.next[cur][l] = intern(dead);
                continue;
            }
            std::vector<State> tab(y_states.size());
            for (std::size_t i = 0; i < y_states.size(); ++i)
                tab[i] = detail::boundary_step(t, y_states[i], l, key.second, y_index);
            State f = detail::boundary_step(t, key.first, l, key.second, y_index);
            out.next[cur][l] = f == detail::kDiverges ? intern(dead) : intern({f, std::move(tab)});
        }
    }
    out.is_complete = true;
    return detail::canonical_numbering(out);
}

/// Embeds a one-way DFA as a two-way automaton without left-moving states;
/// '<' self-loops make the state at the right marker decide acceptance.
inline TwoWayAutomaton embed_one_way(const Dfa& d) {
    TwoWayAutomaton t{d.alphabet, {}, {}, kNoState, {}};
    for (std::size_t q = 0; q < d.state_count(); ++q) t.add_state(true, d.accepting[q]);
    for (std::size_t q = 0; q < d.state_count(); ++q) {
        for (std::size_t l = 0; l < d.alphabet.size(); ++l)
            if (d.next[q][l] != kNoState) t.next[q][l] = d.next[q][l];
        t.next[q][t.right_marker_index()] = static_cast<State>(q);
    }
    t.initial = d.initial;
    return t;
}

/// Classification of the recognized language (defined through the one-way
/// conversion); two-way structural checks live in `shape`.
inline ClassificationReport classify(const TwoWayAutomaton& t, std::string source,
                                     const ClassifyOptions& options = {}) {
    require_valid(t, "classify");
    return classify(to_one_way_dfa(t), std::move(source), options);
}

}  // namespace rideal
