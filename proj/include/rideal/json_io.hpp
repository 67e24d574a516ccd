#pragma once

#include <json.hpp>

#include "rideal/classify.hpp"
#include "rideal/constructions.hpp"
#include "rideal/monomial.hpp"
#include "rideal/two_way.hpp"

namespace rideal {

using nlohmann::json;

namespace detail {

inline std::string canonical_state_name(std::size_t q) { return "q" + std::to_string(q); }

inline std::vector<std::string> state_names(const json& j) {
    std::vector<std::string> names;
    for (const auto& s : j.at("states")) names.push_back(s.get<std::string>());
    return names;
}

inline State state_index(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw std::invalid_argument("automaton json: unknown state '" + name + "'");
    return static_cast<State>(it - names.begin());
}

inline Alphabet alphabet_from_json(const json& j) {
    std::string letters;
    for (const auto& s : j.at("alphabet")) {
        auto str = s.get<std::string>();
        if (str.size() != 1)
            throw std::invalid_argument("automaton json: alphabet entries must be single letters");
        letters += str;
    }
    return Alphabet(letters);
}

inline json alphabet_to_json(const Alphabet& a) {
    json out = json::array();
    for (char c : a.letters()) out.push_back(std::string(1, c));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-way automata
// ---------------------------------------------------------------------------

inline json to_json(const Nfa& a) {
    json j;
    j["alphabet"] = detail::alphabet_to_json(a.alphabet);
    json states = json::array(), initial = json::array(), final_states = json::array();
    for (std::size_t q = 0; q < a.state_count(); ++q) {
        states.push_back(detail::canonical_state_name(q));
        if (a.accepting[q]) final_states.push_back(detail::canonical_state_name(q));
    }
    for (State q : a.initial) initial.push_back(detail::canonical_state_name(q));
    json transitions = json::array();
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t l = 0; l < a.alphabet.size(); ++l)
            for (State t : a.next[q][l])
                transitions.push_back({detail::canonical_state_name(q),
                                       std::string(1, a.alphabet.letter(l)),
                                       detail::canonical_state_name(t)});
    j["states"] = states;
    j["initial"] = initial;
    j["final"] = final_states;
    j["transitions"] = transitions;
    return j;
}

inline json to_json(const Dfa& d) { return to_json(to_nfa(d)); }

inline Nfa nfa_from_json(const json& j) {
    Nfa a(detail::alphabet_from_json(j));
    auto names = detail::state_names(j);
    for (std::size_t q = 0; q < names.size(); ++q) a.add_state(false);
    for (const auto& s : j.at("final"))
        a.accepting[detail::state_index(names, s.get<std::string>())] = true;
    for (const auto& s : j.at("initial"))
        a.mark_initial(detail::state_index(names, s.get<std::string>()));
    for (const auto& tr : j.at("transitions")) {
        if (!tr.is_array() || tr.size() != 3)
            throw std::invalid_argument("automaton json: transitions must be [from, letter, to]");
        auto letter = tr[1].get<std::string>();
        if (letter.size() != 1)
            throw std::invalid_argument("automaton json: transition letters must be single characters");
        a.add_transition(detail::state_index(names, tr[0].get<std::string>()), letter[0],
                         detail::state_index(names, tr[2].get<std::string>()));
    }
    return a;
}

/// Determinism is inferred, not declared; rejects nondeterministic input.
inline Dfa dfa_from_json(const json& j) {
    Nfa a = nfa_from_json(j);
    if (a.initial.size() > 1)
        throw std::invalid_argument("automaton json: expected a deterministic automaton");
    Dfa d(a.alphabet);
    for (std::size_t q = 0; q < a.state_count(); ++q) d.add_state(a.accepting[q]);
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            if (a.next[q][l].size() > 1)
                throw std::invalid_argument("automaton json: expected a deterministic automaton");
            if (!a.next[q][l].empty()) d.next[q][l] = a.next[q][l].front();
        }
    if (!a.initial.empty()) d.initial = a.initial.front();
    d.recompute_complete();
    return d;
}

// ---------------------------------------------------------------------------
// Two-way automata
// ---------------------------------------------------------------------------

inline json to_json(const TwoWayAutomaton& t) {
    json j;
    j["alphabet"] = detail::alphabet_to_json(t.alphabet);
    json states = json::array(), right = json::array(), left = json::array(),
         initial = json::array(), final_states = json::array();
    for (std::size_t q = 0; q < t.state_count(); ++q) {
        auto name = detail::canonical_state_name(q);
        states.push_back(name);
        (t.right_moving[q] ? right : left).push_back(name);
        if (t.accepting[q]) final_states.push_back(name);
    }
    if (t.initial != kNoState) initial.push_back(detail::canonical_state_name(t.initial));
    json transitions = json::array();
    for (std::size_t q = 0; q < t.state_count(); ++q)
        for (std::size_t s = 0; s < t.symbol_count(); ++s) {
            if (t.next[q][s] == kNoState) continue;
            char symbol = s < t.alphabet.size()
                              ? t.alphabet.letter(s)
                              : (s == t.left_marker_index() ? kLeftMarker : kRightMarker);
            transitions.push_back({detail::canonical_state_name(q), std::string(1, symbol),
                                   detail::canonical_state_name(t.next[q][s])});
        }
    j["states"] = states;
    j["right_states"] = right;
    j["left_states"] = left;
    j["initial"] = initial;
    j["final"] = final_states;
    j["transitions"] = transitions;
    return j;
}

inline TwoWayAutomaton two_way_from_json(const json& j) {
    TwoWayAutomaton t{detail::alphabet_from_json(j), {}, {}, kNoState, {}};
    auto names = detail::state_names(j);
    std::vector<bool> right(names.size(), false), seen(names.size(), false);
    for (const auto& s : j.at("right_states")) {
        State q = detail::state_index(names, s.get<std::string>());
        right[q] = true;
        seen[q] = true;
    }
    for (const auto& s : j.at("left_states")) {
        State q = detail::state_index(names, s.get<std::string>());
        if (seen[q])
            throw std::invalid_argument("two-way json: state '" + s.get<std::string>() +
                                        "' is both right- and left-moving");
        seen[q] = true;
    }
    for (std::size_t q = 0; q < names.size(); ++q)
        if (!seen[q])
            throw std::invalid_argument("two-way json: state '" + names[q] +
                                        "' is neither right- nor left-moving");
    for (std::size_t q = 0; q < names.size(); ++q) t.add_state(right[q]);
    for (const auto& s : j.at("final"))
        t.accepting[detail::state_index(names, s.get<std::string>())] = true;
    const auto& initial = j.at("initial");
    if (initial.size() > 1)
        throw std::invalid_argument("two-way json: at most one initial state");
    if (initial.size() == 1)
        t.initial = detail::state_index(names, initial[0].get<std::string>());
    for (const auto& tr : j.at("transitions")) {
        auto symbol = tr.at(1).get<std::string>();
        if (symbol.size() != 1)
            throw std::invalid_argument("two-way json: transition symbols must be single characters");
        State from = detail::state_index(names, tr.at(0).get<std::string>());
        State to = detail::state_index(names, tr.at(2).get<std::string>());
        if (t.next[from][t.symbol_index(symbol[0])] != kNoState)
            throw std::invalid_argument("two-way json: duplicate transition from '" +
                                        tr.at(0).get<std::string>() + "' on '" + symbol + "'");
        t.next[from][t.symbol_index(symbol[0])] = to;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Staiger-Wagner automata, flip unions, monomials
// ---------------------------------------------------------------------------

inline json to_json(const StaigerWagnerAutomaton& b) {
    json j;
    j["alphabet"] = detail::alphabet_to_json(b.alphabet);
    json states = json::array(), initial = json::array();
    for (std::size_t q = 0; q < b.state_count(); ++q)
        states.push_back(detail::canonical_state_name(q));
    for (State q : b.initial) initial.push_back(detail::canonical_state_name(q));
    json transitions = json::array();
    for (std::size_t q = 0; q < b.state_count(); ++q)
        for (std::size_t l = 0; l < b.alphabet.size(); ++l)
            for (State t : b.next[q][l])
                transitions.push_back({detail::canonical_state_name(q),
                                       std::string(1, b.alphabet.letter(l)),
                                       detail::canonical_state_name(t)});
    json table = json::array();
    for (std::uint32_t mask : b.table.materialized(b.state_count())) {
        json subset = json::array();
        for (std::size_t q = 0; q < b.state_count(); ++q)
            if (mask & (std::uint32_t{1} << q)) subset.push_back(detail::canonical_state_name(q));
        table.push_back(subset);
    }
    j["states"] = states;
    j["initial"] = initial;
    j["transitions"] = transitions;
    j["table"] = table;
    return j;
}

inline StaigerWagnerAutomaton sw_from_json(const json& j) {
    StaigerWagnerAutomaton b;
    b.alphabet = detail::alphabet_from_json(j);
    auto names = detail::state_names(j);
    if (names.size() > 32)
        throw std::invalid_argument("staiger-wagner json: more than 32 states");
    b.next.assign(names.size(), std::vector<std::vector<State>>(b.alphabet.size()));
    for (const auto& s : j.at("initial")) {
        State q = detail::state_index(names, s.get<std::string>());
        auto it = std::lower_bound(b.initial.begin(), b.initial.end(), q);
        if (it == b.initial.end() || *it != q) b.initial.insert(it, q);
    }
    for (const auto& tr : j.at("transitions")) {
        auto letter = tr.at(1).get<std::string>();
        State from = detail::state_index(names, tr.at(0).get<std::string>());
        State to = detail::state_index(names, tr.at(2).get<std::string>());
        auto& succ = b.next[from][b.alphabet.index_checked(letter.at(0))];
        auto it = std::lower_bound(succ.begin(), succ.end(), to);
        if (it == succ.end() || *it != to) succ.insert(it, to);
    }
    std::vector<std::uint32_t> subsets;
    for (const auto& subset : j.at("table")) {
        std::uint32_t mask = 0;
        for (const auto& s : subset)
            mask |= std::uint32_t{1} << detail::state_index(names, s.get<std::string>());
        subsets.push_back(mask);
    }
    b.table = SwTable::extensional(std::move(subsets));
    return b;
}

inline json to_json(const FlipUnion& u) {
    json j = json::array();
    for (const auto& part : u.parts) j.push_back(to_json(part));
    return j;
}

inline json to_json(const Monomial& p) {
    json j;
    json blocks = json::array();
    for (const auto& block : p.blocks) {
        json b = json::array();
        for (char c : block) b.push_back(std::string(1, c));
        blocks.push_back(b);
    }
    json markers = json::array();
    for (char c : p.markers) markers.push_back(std::string(1, c));
    j["blocks"] = blocks;
    j["markers"] = markers;
    return j;
}

// ---------------------------------------------------------------------------
// Monoid dump and classification report
// ---------------------------------------------------------------------------

inline json monoid_to_json(const FiniteMonoid& m, const AcceptingSet& p,
                           const GreenStructure& g) {
    json j;
    j["size"] = m.size;
    j["identity"] = m.identity;
    j["table"] = m.table;
    json generators;
    for (std::size_t l = 0; l < m.alphabet.size(); ++l)
        generators[std::string(1, m.alphabet.letter(l))] = m.generators[l];
    j["generators"] = generators;
    j["representatives"] = m.representative;
    json accepting = json::array();
    for (Element x = 0; x < m.size; ++x)
        if (p.contains(x)) accepting.push_back(x);
    j["accepting"] = accepting;
    j["green"] = {{"r_class", g.r_class}, {"l_class", g.l_class}, {"j_class", g.j_class}};
    return j;
}

inline json to_json(const ClassificationReport& report) {
    json j;
    j["language"] = {{"source", report.source},
                     {"minimal_dfa_states", report.minimal_dfa_states}};
    json props;
    for (const auto& [name, entry] : report.properties)
        props[name] = {{"verdict", entry.verdict},
                       {"route", entry.route},
                       {"evidence", entry.evidence}};
    j["properties"] = props;
    j["cross_checks"] = report.cross_checks;
    return j;
}

inline json to_json(const RunResult& run) {
    json j;
    switch (run.outcome) {
        case RunOutcome::Accept: j["outcome"] = "accept"; break;
        case RunOutcome::Reject: j["outcome"] = "reject"; break;
        case RunOutcome::Loop: j["outcome"] = "loop"; break;
        case RunOutcome::Stuck: j["outcome"] = "stuck"; break;
    }
    if (run.state != kNoState) j["state"] = detail::canonical_state_name(run.state);
    json trace = json::array();
    for (auto [z, pos] : run.trace)
        trace.push_back({{"state", detail::canonical_state_name(z)}, {"position", pos}});
    j["trace"] = trace;
    return j;
}

}  // namespace rideal
