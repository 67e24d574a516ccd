#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rideal/identities.hpp"
#include "rideal/monoid.hpp"
#include "rideal/regex.hpp"

namespace rideal {

// ---------------------------------------------------------------------------
// Structural shape checks
// ---------------------------------------------------------------------------

enum class ShapeKind { Flip, FullyAccepting, Path, Weak };

/// Purely structural check on the automaton as given (no canonicalization):
/// flip = no transition from final to non-final; fully accepting = F = Q;
/// path = all states initial and final; weak = every SCC uniformly final.
inline bool check_shape(const Nfa& a, ShapeKind shape) {
    switch (shape) {
        case ShapeKind::Flip:
            for (std::size_t q = 0; q < a.state_count(); ++q) {
                if (!a.accepting[q]) continue;
                for (const auto& succ : a.next[q])
                    for (State t : succ)
                        if (!a.accepting[t]) return false;
            }
            return true;
        case ShapeKind::FullyAccepting:
            for (bool f : a.accepting)
                if (!f) return false;
            return true;
        case ShapeKind::Path: {
            if (a.initial.size() != a.state_count()) return false;
            for (bool f : a.accepting)
                if (!f) return false;
            return true;
        }
        case ShapeKind::Weak: {
            auto scc = strongly_connected_components(a);
            for (const auto& component : scc.components) {
                bool first = a.accepting[component.front()];
                for (State q : component)
                    if (a.accepting[q] != first) return false;
            }
            return true;
        }
    }
    return false;
}

inline bool check_shape(const Dfa& d, ShapeKind shape) { return check_shape(to_nfa(d), shape); }

// ---------------------------------------------------------------------------
// Properties and report
// ---------------------------------------------------------------------------

enum class LanguageProperty {
    RightIdeal, LeftIdeal, TwoSidedIdeal,
    PrefixClosed, SuffixClosed, Factorial,
    BcRightIdeals, BcLeftIdeals, BcTwoSidedIdeals,
    InDA, Aperiodic,
};

inline constexpr std::array<LanguageProperty, 11> kAllProperties = {
    LanguageProperty::RightIdeal, LanguageProperty::LeftIdeal, LanguageProperty::TwoSidedIdeal,
    LanguageProperty::PrefixClosed, LanguageProperty::SuffixClosed, LanguageProperty::Factorial,
    LanguageProperty::BcRightIdeals, LanguageProperty::BcLeftIdeals,
    LanguageProperty::BcTwoSidedIdeals, LanguageProperty::InDA, LanguageProperty::Aperiodic,
};

inline const char* property_name(LanguageProperty p) {
    switch (p) {
        case LanguageProperty::RightIdeal: return "right_ideal";
        case LanguageProperty::LeftIdeal: return "left_ideal";
        case LanguageProperty::TwoSidedIdeal: return "two_sided_ideal";
        case LanguageProperty::PrefixClosed: return "prefix_closed";
        case LanguageProperty::SuffixClosed: return "suffix_closed";
        case LanguageProperty::Factorial: return "factorial";
        case LanguageProperty::BcRightIdeals: return "bc_right_ideals";
        case LanguageProperty::BcLeftIdeals: return "bc_left_ideals";
        case LanguageProperty::BcTwoSidedIdeals: return "bc_two_sided_ideals";
        case LanguageProperty::InDA: return "in_DA";
        case LanguageProperty::Aperiodic: return "aperiodic";
    }
    return "?";
}

inline std::optional<LanguageProperty> property_from_name(std::string_view name) {
    for (LanguageProperty p : kAllProperties)
        if (name == property_name(p)) return p;
    return std::nullopt;
}

struct PropertyVerdict {
    bool verdict = false;
    std::string route;        // which exact route decided it
    std::string evidence;     // monoid fact / shape fact / counterexample
};

struct ClassificationReport {
    std::string source;
    std::size_t minimal_dfa_states = 0;
    std::map<std::string, PropertyVerdict> properties;
    std::map<std::string, std::string> cross_checks;

    bool verdict(LanguageProperty p) const { return properties.at(property_name(p)).verdict; }
};

struct ClassifyOptions {
    std::size_t oracle_max_len = 8;
    WordsModeBounds words_bounds{3, 2};
    std::size_t monoid_cap = kDefaultMonoidCap;
    bool cross_checks = true;
};

// ---------------------------------------------------------------------------
// Bounded word-level oracle
// ---------------------------------------------------------------------------

enum class OracleOutcome { Consistent, Refuted };

struct OracleResult {
    OracleOutcome outcome = OracleOutcome::Consistent;
    std::string witness;  // refuting word or assignment, empty when consistent

    bool refuted() const { return outcome == OracleOutcome::Refuted; }
};

namespace detail {

inline std::string describe_assignment(const std::map<char, std::string>& assignment,
                                       unsigned n) {
    std::string s;
    for (const auto& [v, w] : assignment) {
        if (!s.empty()) s += ", ";
        s += std::string(1, v) + "=\"" + w + "\"";
    }
    if (n > 0) s += " (n=" + std::to_string(n) + ")";
    return s;
}

inline OracleResult oracle_from_identity(const Dfa& d, const LatticeIdentity& id,
                                         const WordsModeBounds& bounds) {
    auto res = check_identity_words(d, id, bounds);
    if (res.holds) return {};
    return {OracleOutcome::Refuted, describe_assignment(res.counterexample, res.counterexample_n)};
}

/// Language identity equivalent to aperiodicity of the syntactic monoid.
inline const LatticeIdentity& aperiodicity_identity() {
    static const LatticeIdentity id = parse_identity("z(x)^w t <=> z(x)^w x t", "aperiodic");
    return id;
}

}  // namespace detail

/// Definition-level checks over all words of length <= max_len. Refutation
/// is definitive; consistency is bounded evidence only. BC and monoid-variety
/// properties are sampled through the words-mode identity oracle.
inline OracleResult brute_force_oracle(const Nfa& a, LanguageProperty property,
                                       std::size_t max_len,
                                       const WordsModeBounds& words_bounds = {3, 2}) {
    if (max_len < 1) throw std::invalid_argument("brute_force_oracle: max_len must be >= 1");
    switch (property) {
        case LanguageProperty::BcRightIdeals:
            return detail::oracle_from_identity(to_minimal_dfa(a), *find_catalog_identity("bc-right"), words_bounds);
        case LanguageProperty::BcLeftIdeals:
            return detail::oracle_from_identity(to_minimal_dfa(a), *find_catalog_identity("bc-left"), words_bounds);
        case LanguageProperty::BcTwoSidedIdeals:
            return detail::oracle_from_identity(to_minimal_dfa(a), *find_catalog_identity("bc-two-sided"), words_bounds);
        case LanguageProperty::InDA:
            return detail::oracle_from_identity(to_minimal_dfa(a), *find_catalog_identity("da"), words_bounds);
        case LanguageProperty::Aperiodic:
            return detail::oracle_from_identity(to_minimal_dfa(a), detail::aperiodicity_identity(), words_bounds);
        default: break;
    }

    std::vector<std::string> words = enumerate_words(a, max_len);
    std::set<std::string> in_lang(words.begin(), words.end());
    auto member = [&](const std::string& w) { return in_lang.count(w) != 0; };

    switch (property) {
        case LanguageProperty::RightIdeal:
        case LanguageProperty::LeftIdeal:
        case LanguageProperty::TwoSidedIdeal:
            for (const auto& u : words) {
                if (u.size() >= max_len) continue;
                for (char c : a.alphabet.letters()) {
                    bool right = property != LanguageProperty::LeftIdeal;
                    bool left = property != LanguageProperty::RightIdeal;
                    if (right && !member(u + c))
                        return {OracleOutcome::Refuted, "\"" + u + "\" in L but \"" + u + c + "\" not"};
                    if (left && !member(c + u))
                        return {OracleOutcome::Refuted, "\"" + u + "\" in L but \"" + (c + u) + "\" not"};
                }
            }
            return {};
        case LanguageProperty::PrefixClosed:
            for (const auto& w : words)
                for (std::size_t i = 0; i < w.size(); ++i)
                    if (!member(w.substr(0, i)))
                        return {OracleOutcome::Refuted,
                                "\"" + w + "\" in L but prefix \"" + w.substr(0, i) + "\" not"};
            return {};
        case LanguageProperty::SuffixClosed:
            for (const auto& w : words)
                for (std::size_t i = 1; i <= w.size(); ++i)
                    if (!member(w.substr(i)))
                        return {OracleOutcome::Refuted,
                                "\"" + w + "\" in L but suffix \"" + w.substr(i) + "\" not"};
            return {};
        case LanguageProperty::Factorial:
            for (const auto& w : words)
                for (std::size_t i = 0; i <= w.size(); ++i)
                    for (std::size_t len = 0; i + len <= w.size(); ++len)
                        if (!member(w.substr(i, len)))
                            return {OracleOutcome::Refuted,
                                    "\"" + w + "\" in L but factor \"" + w.substr(i, len) + "\" not"};
            return {};
        default: break;
    }
    return {};
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

namespace detail {

struct RouteData {
    Dfa minimal;        // complete minimal DFA of L
    Dfa minimal_rev;    // complete minimal DFA of the reversal
    FiniteMonoid monoid;
    AcceptingSet accepting;
    GreenStructure green;
};

inline void set_entry(ClassificationReport& report, LanguageProperty p, bool verdict,
                      std::string route, std::string evidence) {
    report.properties[property_name(p)] = {verdict, std::move(route), std::move(evidence)};
}

/// Word pair witnessing an ideal (resp. closure) failure. For the plain
/// kinds the first word is in L and its extension is not; for the
/// complemented kinds (prefix/suffix/factor closure) the roles flip.
inline std::string ideal_failure_witness(const RouteData& rd, const AcceptingSet& p,
                                         IdealKind kind, bool complemented) {
    const auto& m = rd.monoid;
    auto describe = [&](const std::string& word, const std::string& extended, const char* how) {
        if (complemented)
            return "\"" + extended + "\" in L but its " + how + " \"" + word + "\" is not";
        return "\"" + word + "\" in L but its extension \"" + extended + "\" is not";
    };
    for (Element x = 0; x < m.size; ++x) {
        if (!p.contains(x)) continue;
        for (Element s = 0; s < m.size; ++s) {
            if ((kind == IdealKind::Right || kind == IdealKind::TwoSided) &&
                !p.contains(m.product(x, s)))
                return describe(m.representative[x], m.representative[x] + m.representative[s],
                                "prefix");
            if ((kind == IdealKind::Left || kind == IdealKind::TwoSided) &&
                !p.contains(m.product(s, x)))
                return describe(m.representative[x], m.representative[s] + m.representative[x],
                                "suffix");
        }
    }
    return {};
}

inline std::string class_failure_witness(const RouteData& rd, GreenRelation rel) {
    const auto& m = rd.monoid;
    const auto& cls = rel == GreenRelation::R   ? rd.green.r_class
                      : rel == GreenRelation::L ? rd.green.l_class
                                                : rd.green.j_class;
    for (Element x = 0; x < m.size; ++x)
        for (Element y = x + 1; y < m.size; ++y)
            if (cls[x] == cls[y] && rd.accepting.contains(x) != rd.accepting.contains(y))
                return "h(\"" + m.representative[x] + "\") and h(\"" + m.representative[y] +
                       "\") share a class but differ on h(L)";
    return {};
}

}  // namespace detail

/// Full classification: every property decided by the monoid route on the
/// syntactic monoid; shape checks (on the canonical automaton each is stated
/// for) and the bounded word oracle run as cross-checks, and their agreement
/// is recorded in the report.
inline ClassificationReport classify(const Nfa& input, std::string source,
                                     const ClassifyOptions& options = {}) {
    detail::RouteData rd;
    rd.minimal = to_minimal_dfa(input);
    rd.minimal_rev = to_minimal_dfa(reverse(input));
    auto mp = transition_monoid(rd.minimal, options.monoid_cap);
    rd.monoid = std::move(mp.first);
    rd.accepting = std::move(mp.second);
    rd.green = green_classes(rd.monoid);

    ClassificationReport report;
    report.source = std::move(source);
    report.minimal_dfa_states = rd.minimal.state_count();

    const auto& m = rd.monoid;
    const auto& p = rd.accepting;
    AcceptingSet pc = p.complement();
    auto size_note = "|M| = " + std::to_string(m.size);

    struct IdealProp {
        LanguageProperty prop;
        IdealKind kind;
        bool complemented;
    };
    for (auto [prop, kind, complemented] : {
             IdealProp{LanguageProperty::RightIdeal, IdealKind::Right, false},
             IdealProp{LanguageProperty::LeftIdeal, IdealKind::Left, false},
             IdealProp{LanguageProperty::TwoSidedIdeal, IdealKind::TwoSided, false},
             IdealProp{LanguageProperty::PrefixClosed, IdealKind::Right, true},
             IdealProp{LanguageProperty::SuffixClosed, IdealKind::Left, true},
             IdealProp{LanguageProperty::Factorial, IdealKind::TwoSided, true}}) {
        const AcceptingSet& subset = complemented ? pc : p;
        bool verdict = is_ideal_subset(m, subset, kind);
        std::string evidence =
            verdict ? (complemented ? "complement of h(L) is an ideal, " : "h(L) is an ideal, ") +
                          size_note
                    : detail::ideal_failure_witness(rd, subset, kind, complemented);
        detail::set_entry(report, prop, verdict, "monoid", evidence);
    }

    struct ClassProp {
        LanguageProperty prop;
        GreenRelation rel;
    };
    for (auto [prop, rel] : {ClassProp{LanguageProperty::BcRightIdeals, GreenRelation::R},
                             ClassProp{LanguageProperty::BcLeftIdeals, GreenRelation::L},
                             ClassProp{LanguageProperty::BcTwoSidedIdeals, GreenRelation::J}}) {
        bool verdict = is_union_of_classes(m, rd.green, p, rel);
        std::string evidence =
            verdict ? "h(L) is a union of classes, " + size_note : detail::class_failure_witness(rd, rel);
        detail::set_entry(report, prop, verdict, "monoid", evidence);
    }

    auto da_witness = [&]() -> std::string {
        for (Element x = 0; x < m.size; ++x)
            for (Element y = 0; y < m.size; ++y) {
                Element e = omega_power(m, m.product(x, y));
                if (m.product(m.product(e, x), e) != e)
                    return "violated by x = h(\"" + m.representative[x] + "\"), y = h(\"" +
                           m.representative[y] + "\")";
            }
        return {};
    };
    auto aperiodicity_witness = [&]() -> std::string {
        for (Element x = 0; x < m.size; ++x) {
            Element e = omega_power(m, x);
            if (m.product(e, x) != e)
                return "violated by x = h(\"" + m.representative[x] + "\")";
        }
        return {};
    };
    bool in_da = is_in_da(m);
    detail::set_entry(report, LanguageProperty::InDA, in_da, "monoid",
                      in_da ? "(xy)^w = (xy)^w x (xy)^w holds across " + size_note
                            : da_witness());
    bool aperiodic = is_aperiodic(m);
    detail::set_entry(report, LanguageProperty::Aperiodic, aperiodic, "monoid",
                      aperiodic ? "x^w x = x^w holds across " + size_note
                                : aperiodicity_witness());

    if (options.cross_checks) {
        // Shape route, each on the canonical form its statement requires:
        // flip on the complete minimal DFA, fully-accepting on the trim
        // minimal DFA, weak on the minimal DFA; reversal handles the left /
        // suffix variants.
        Nfa min_nfa = to_nfa(rd.minimal);
        Nfa min_trim = trim(min_nfa);
        Nfa rev_nfa = to_nfa(rd.minimal_rev);
        Nfa rev_trim = trim(rev_nfa);

        std::map<std::string, std::pair<bool, std::string>> shape_verdicts;
        shape_verdicts[property_name(LanguageProperty::RightIdeal)] = {
            check_shape(min_nfa, ShapeKind::Flip), "flip on complete minimal dfa"};
        shape_verdicts[property_name(LanguageProperty::LeftIdeal)] = {
            check_shape(rev_nfa, ShapeKind::Flip), "flip on complete minimal dfa of reversal"};
        shape_verdicts[property_name(LanguageProperty::TwoSidedIdeal)] = {
            check_shape(min_nfa, ShapeKind::Flip) && check_shape(rev_nfa, ShapeKind::Flip),
            "flip on both directions"};
        shape_verdicts[property_name(LanguageProperty::PrefixClosed)] = {
            check_shape(min_trim, ShapeKind::FullyAccepting), "fully accepting on trim minimal dfa"};
        shape_verdicts[property_name(LanguageProperty::SuffixClosed)] = {
            check_shape(rev_trim, ShapeKind::FullyAccepting),
            "fully accepting on trim minimal dfa of reversal"};
        shape_verdicts[property_name(LanguageProperty::Factorial)] = {
            check_shape(min_trim, ShapeKind::FullyAccepting) &&
                check_shape(rev_trim, ShapeKind::FullyAccepting),
            "fully accepting on both directions"};
        shape_verdicts[property_name(LanguageProperty::BcRightIdeals)] = {
            check_shape(min_nfa, ShapeKind::Weak), "weak on minimal dfa"};
        shape_verdicts[property_name(LanguageProperty::BcLeftIdeals)] = {
            check_shape(rev_nfa, ShapeKind::Weak), "weak on minimal dfa of reversal"};
        shape_verdicts[property_name(LanguageProperty::BcTwoSidedIdeals)] = {
            check_shape(min_nfa, ShapeKind::Weak) && check_shape(rev_nfa, ShapeKind::Weak),
            "weak on both directions"};

        for (LanguageProperty prop : kAllProperties) {
            const char* name = property_name(prop);
            std::string note;
            auto it = shape_verdicts.find(name);
            if (it != shape_verdicts.end()) {
                bool agree = it->second.first == report.properties[name].verdict;
                note += std::string("shape(") + it->second.second + "): " +
                        (agree ? "agree" : "DISAGREE");
            } else {
                note += "shape: n/a";
            }
            OracleResult oracle = brute_force_oracle(min_nfa, prop, options.oracle_max_len,
                                                     options.words_bounds);
            bool oracle_ok = !oracle.refuted() || !report.properties[name].verdict;
            note += "; oracle: ";
            note += oracle.refuted()
                        ? (oracle_ok ? "refuted, matching the verdict" : "REFUTES-AFFIRMED")
                        : "consistent";
            report.cross_checks[name] = note;
        }
    }
    return report;
}

inline ClassificationReport classify(const Dfa& input, std::string source,
                                     const ClassifyOptions& options = {}) {
    return classify(to_nfa(input), std::move(source), options);
}

inline ClassificationReport classify_regex(std::string_view text, const Alphabet& alphabet,
                                           const ClassifyOptions& options = {}) {
    return classify(parse_regex(text, alphabet), "regex:" + std::string(text), options);
}

}  // namespace rideal
