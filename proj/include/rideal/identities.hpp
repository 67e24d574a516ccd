#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rideal/monoid.hpp"

namespace rideal {

class ExpansionTooLarge : public std::runtime_error {
public:
    explicit ExpansionTooLarge(unsigned long long length, std::size_t cap)
        : std::runtime_error("term expansion of length " + std::to_string(length) +
                             " exceeds cap " + std::to_string(cap)) {}
};

/// Syntax tree of an omega-term: variables, concatenation, omega-power.
struct OmegaTerm {
    enum class Kind { Variable, Concat, OmegaPower };

    Kind kind = Kind::Variable;
    char variable = 0;
    std::vector<OmegaTerm> children;

    static OmegaTerm var(char v) {
        OmegaTerm t;
        t.kind = Kind::Variable;
        t.variable = v;
        return t;
    }
    static OmegaTerm concat(OmegaTerm a, OmegaTerm b) {
        OmegaTerm t;
        t.kind = Kind::Concat;
        t.children = {std::move(a), std::move(b)};
        return t;
    }
    static OmegaTerm omega(OmegaTerm a) {
        OmegaTerm t;
        t.kind = Kind::OmegaPower;
        t.children = {std::move(a)};
        return t;
    }

    void collect_variables(std::set<char>& out) const {
        if (kind == Kind::Variable) out.insert(variable);
        for (const auto& c : children) c.collect_variables(out);
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Variable: return std::string(1, variable);
            case Kind::Concat: return children[0].to_string() + children[1].to_string();
            case Kind::OmegaPower: return "(" + children[0].to_string() + ")^w";
        }
        return {};
    }
};

struct LatticeIdentity {
    OmegaTerm lhs, rhs;
    bool iff = true;  // false: implication lhs => rhs
    std::string name;

    std::set<char> variables() const {
        std::set<char> v;
        lhs.collect_variables(v);
        rhs.collect_variables(v);
        return v;
    }
    std::string to_string() const {
        return lhs.to_string() + (iff ? " <=> " : " => ") + rhs.to_string();
    }
};

// ---------------------------------------------------------------------------
// Parsing:  variables s t x y z p q, juxtaposition, (term)^w,
//           identities  LHS => RHS  |  LHS <=> RHS
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_term_variable(char c) {
    return c == 's' || c == 't' || c == 'x' || c == 'y' || c == 'z' || c == 'p' || c == 'q';
}

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    OmegaTerm parse_full() {
        OmegaTerm t = parse_seq();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("omega-term: unexpected character at position " +
                                        std::to_string(pos_));
        return t;
    }

    OmegaTerm parse_seq() {
        skip_ws();
        OmegaTerm t = parse_item();
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] == ')') break;
            if (!is_term_variable(text_[pos_]) && text_[pos_] != '(') break;
            t = OmegaTerm::concat(std::move(t), parse_item());
        }
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    OmegaTerm parse_item() {
        OmegaTerm t = parse_atom();
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == 'w') {
            pos_ += 2;
            t = OmegaTerm::omega(std::move(t));
        }
        return t;
    }

    OmegaTerm parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw std::invalid_argument("omega-term: unexpected end");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            OmegaTerm t = parse_seq();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw std::invalid_argument("omega-term: unbalanced '('");
            ++pos_;
            return t;
        }
        if (!is_term_variable(c))
            throw std::invalid_argument(std::string("omega-term: invalid variable '") + c + "'");
        ++pos_;
        return OmegaTerm::var(c);
    }
};

}  // namespace detail

inline OmegaTerm parse_omega_term(std::string_view text) {
    return detail::TermParser(text).parse_full();
}

inline LatticeIdentity parse_identity(std::string_view text, std::string name = {}) {
    auto arrow = text.find("<=>");
    bool iff = arrow != std::string_view::npos;
    std::size_t arrow_len = 3;
    if (!iff) {
        arrow = text.find("=>");
        arrow_len = 2;
        if (arrow == std::string_view::npos)
            throw std::invalid_argument("identity: expected '=>' or '<=>'");
    }
    LatticeIdentity id;
    id.lhs = parse_omega_term(text.substr(0, arrow));
    id.rhs = parse_omega_term(text.substr(arrow + arrow_len));
    id.iff = iff;
    id.name = std::move(name);
    return id;
}

/// Built-in catalog; names are stable CLI identifiers.
inline const std::vector<LatticeIdentity>& identity_catalog() {
    static const std::vector<LatticeIdentity> catalog = [] {
        std::vector<LatticeIdentity> v;
        v.push_back(parse_identity("y => yz", "right-ideal"));
        v.push_back(parse_identity("y => xy", "left-ideal"));
        v.push_back(parse_identity("y => xyz", "two-sided-ideal"));
        v.push_back(parse_identity("z(xy)^w x <=> z(xy)^w", "bc-right"));
        v.push_back(parse_identity("s(ts)^w z <=> (ts)^w z", "bc-left"));
        v.push_back(parse_identity("s(ts)^w z(xy)^w x <=> (ts)^w z(xy)^w", "bc-two-sided"));
        v.push_back(parse_identity("p(xy)^w q <=> p(xy)^w x(xy)^w q", "da"));
        return v;
    }();
    return catalog;
}

inline const LatticeIdentity* find_catalog_identity(std::string_view name) {
    for (const auto& id : identity_catalog())
        if (id.name == name) return &id;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Expansion and evaluation
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultExpansionCap = std::size_t{1} << 20;

namespace detail {

inline unsigned long long factorial(unsigned n) {
    unsigned long long f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline unsigned long long expansion_length(const OmegaTerm& t, unsigned long long nfact,
                                           std::size_t cap) {
    switch (t.kind) {
        case OmegaTerm::Kind::Variable: return 1;
        case OmegaTerm::Kind::Concat: {
            auto a = expansion_length(t.children[0], nfact, cap);
            auto b = expansion_length(t.children[1], nfact, cap);
            if (a + b > cap) throw ExpansionTooLarge(a + b, cap);
            return a + b;
        }
        case OmegaTerm::Kind::OmegaPower: {
            auto a = expansion_length(t.children[0], nfact, cap);
            if (a > cap / nfact) throw ExpansionTooLarge(a * nfact, cap);
            return a * nfact;
        }
    }
    return 0;
}

inline void expand_into(const OmegaTerm& t, unsigned long long nfact, std::string& out) {
    switch (t.kind) {
        case OmegaTerm::Kind::Variable:
            out.push_back(t.variable);
            return;
        case OmegaTerm::Kind::Concat:
            expand_into(t.children[0], nfact, out);
            expand_into(t.children[1], nfact, out);
            return;
        case OmegaTerm::Kind::OmegaPower: {
            std::string inner;
            expand_into(t.children[0], nfact, inner);
            for (unsigned long long i = 0; i < nfact; ++i) out += inner;
            return;
        }
    }
}

}  // namespace detail

/// x(n): replaces every omega exponent by n!; returns a word over the
/// variable set.
inline std::string expand_term(const OmegaTerm& t, unsigned n,
                               std::size_t cap = kDefaultExpansionCap) {
    if (n < 1) throw std::invalid_argument("expand_term: n must be >= 1");
    unsigned long long nfact = detail::factorial(n);
    auto len = detail::expansion_length(t, nfact, cap);
    std::string out;
    out.reserve(len);
    detail::expand_into(t, nfact, out);
    return out;
}

/// Concatenation maps to products, omega-power to the idempotent power.
inline Element eval_in_monoid(const OmegaTerm& t, const std::map<char, Element>& assignment,
                              const FiniteMonoid& m) {
    switch (t.kind) {
        case OmegaTerm::Kind::Variable: {
            auto it = assignment.find(t.variable);
            if (it == assignment.end())
                throw std::invalid_argument(std::string("unbound variable '") + t.variable + "'");
            return it->second;
        }
        case OmegaTerm::Kind::Concat:
            return m.product(eval_in_monoid(t.children[0], assignment, m),
                             eval_in_monoid(t.children[1], assignment, m));
        case OmegaTerm::Kind::OmegaPower:
            return omega_power(m, eval_in_monoid(t.children[0], assignment, m));
    }
    throw std::logic_error("eval_in_monoid: bad term");
}

// ---------------------------------------------------------------------------
// Identity checking
// ---------------------------------------------------------------------------

struct IdentityCheckResult {
    bool holds = true;
    std::map<char, std::string> counterexample;  // variable -> word
    unsigned counterexample_n = 0;               // words mode only
};

struct WordsModeBounds {
    unsigned max_n = 4;
    std::size_t max_image_len = 2;
    std::size_t expansion_cap = kDefaultExpansionCap;
};

namespace detail {

struct CompiledTerm {
    std::vector<std::uint8_t> ops;   // indices into the variable list
};

inline CompiledTerm compile_sequence(const std::string& word,
                                     const std::vector<char>& variables) {
    CompiledTerm c;
    c.ops.reserve(word.size());
    for (char v : word) {
        auto it = std::find(variables.begin(), variables.end(), v);
        c.ops.push_back(static_cast<std::uint8_t>(it - variables.begin()));
    }
    return c;
}

/// Term evaluation over a dense assignment vector with a cached omega table;
/// the hot path of exhaustive monoid-mode checks.
struct MonoidEval {
    const FiniteMonoid& m;
    std::vector<Element> omega_of;

    explicit MonoidEval(const FiniteMonoid& monoid) : m(monoid), omega_of(monoid.size) {
        for (Element x = 0; x < m.size; ++x) omega_of[x] = omega_power(m, x);
    }

    Element eval(const OmegaTerm& t, const std::vector<Element>& assign,
                 const std::vector<char>& vars) const {
        switch (t.kind) {
            case OmegaTerm::Kind::Variable: {
                auto it = std::find(vars.begin(), vars.end(), t.variable);
                return assign[static_cast<std::size_t>(it - vars.begin())];
            }
            case OmegaTerm::Kind::Concat:
                return m.product(eval(t.children[0], assign, vars),
                                 eval(t.children[1], assign, vars));
            case OmegaTerm::Kind::OmegaPower:
                return omega_of[eval(t.children[0], assign, vars)];
        }
        return 0;
    }
};

}  // namespace detail

/// Exact check over all element assignments of a recognizing monoid.
/// Enumeration is lexicographic over element ids with variables in
/// alphabetical order, so the first counterexample is deterministic; it is
/// reported through the elements' representative words.
inline IdentityCheckResult check_identity_monoid(const FiniteMonoid& m, const AcceptingSet& p,
                                                 const LatticeIdentity& id) {
    std::set<char> var_set = id.variables();
    std::vector<char> vars(var_set.begin(), var_set.end());
    detail::MonoidEval ev(m);
    std::vector<Element> odo(vars.size(), 0);
    for (;;) {
        bool in_l = p.contains(ev.eval(id.lhs, odo, vars));
        bool in_r = p.contains(ev.eval(id.rhs, odo, vars));
        bool ok = id.iff ? (in_l == in_r) : (!in_l || in_r);
        if (!ok) {
            IdentityCheckResult res;
            res.holds = false;
            for (std::size_t i = 0; i < vars.size(); ++i)
                res.counterexample[vars[i]] = m.representative[odo[i]];
            return res;
        }
        if (vars.empty()) return {};
        // advance odometer, last variable fastest
        std::size_t i = vars.size();
        for (;;) {
            --i;
            if (++odo[i] < m.size) break;
            odo[i] = 0;
            if (i == 0) return {};
        }
    }
}

inline IdentityCheckResult check_identity_monoid(const Dfa& language, const LatticeIdentity& id,
                                                 std::size_t monoid_cap = kDefaultMonoidCap) {
    auto [m, p] = transition_monoid(to_minimal_dfa(language), monoid_cap);
    return check_identity_monoid(m, p, id);
}

namespace detail {

inline std::vector<State> compose_transforms(const std::vector<State>& first,
                                             const std::vector<State>& then) {
    std::vector<State> out(first.size());
    for (std::size_t q = 0; q < first.size(); ++q) out[q] = then[first[q]];
    return out;
}

inline std::vector<State> idempotent_power(const std::vector<State>& t) {
    // the power sequence cycles after index + period steps; the unique
    // idempotent in it shows up before the first repeat
    std::set<std::vector<State>> seen;
    std::vector<State> p = t;
    while (seen.insert(p).second) {
        if (compose_transforms(p, p) == p) return p;
        p = compose_transforms(p, t);
    }
    throw std::logic_error("idempotent_power: power sequence has no idempotent");
}

/// Transformation of the omega-limit of a term under an image assignment.
inline std::vector<State> limit_transform(const OmegaTerm& t,
                                          const std::vector<std::vector<State>>& transform,
                                          const std::vector<std::size_t>& chosen,
                                          const std::vector<char>& vars) {
    switch (t.kind) {
        case OmegaTerm::Kind::Variable: {
            auto it = std::find(vars.begin(), vars.end(), t.variable);
            return transform[chosen[static_cast<std::size_t>(it - vars.begin())]];
        }
        case OmegaTerm::Kind::Concat:
            return compose_transforms(limit_transform(t.children[0], transform, chosen, vars),
                                      limit_transform(t.children[1], transform, chosen, vars));
        case OmegaTerm::Kind::OmegaPower:
            return idempotent_power(
                limit_transform(t.children[0], transform, chosen, vars));
    }
    throw std::logic_error("limit_transform: bad term");
}

}  // namespace detail

/// Bounded word-level oracle: searches homomorphisms h with images of length
/// <= max_image_len and literal n! expansions for n up to max_n. The
/// identity quantifies over all sufficiently large n, so a violating
/// instance refutes only when it already coincides with its omega-limit
/// (the n! powers have reached the idempotent); unstable small-n violations
/// are skipped. Refutation is therefore sound; a pass is bounded evidence
/// only. Images inducing the same state transformation on the minimal
/// automaton are interchangeable and checked once through their
/// shortlex-least representative.
inline IdentityCheckResult check_identity_words(const Dfa& language, const LatticeIdentity& id,
                                                const WordsModeBounds& bounds = {}) {
    Dfa dfa = to_minimal_dfa(language);
    std::size_t n_states = dfa.state_count();

    // candidate images, deduplicated by transformation
    std::vector<std::string> images;
    std::vector<std::vector<State>> transform;
    {
        std::map<std::vector<State>, std::size_t> seen;
        std::vector<std::string> frontier{""};
        for (std::size_t len = 0; len <= bounds.max_image_len; ++len) {
            std::vector<std::string> next_frontier;
            for (const auto& w : frontier) {
                if (w.size() != len) continue;
                std::vector<State> tr(n_states);
                for (std::size_t q = 0; q < n_states; ++q) {
                    State s = static_cast<State>(q);
                    for (char c : w) s = dfa.next[s][dfa.alphabet.index_checked(c)];
                    tr[q] = s;
                }
                if (seen.emplace(tr, images.size()).second) {
                    images.push_back(w);
                    transform.push_back(std::move(tr));
                }
                if (len < bounds.max_image_len)
                    for (std::size_t l = 0; l < dfa.alphabet.size(); ++l)
                        next_frontier.push_back(w + dfa.alphabet.letter(l));
            }
            frontier = std::move(next_frontier);
        }
    }

    std::set<char> var_set = id.variables();
    // variables in first-occurrence order of the expanded sequences
    for (unsigned n = 1; n <= bounds.max_n; ++n) {
        std::string lhs_word = expand_term(id.lhs, n, bounds.expansion_cap);
        std::string rhs_word = expand_term(id.rhs, n, bounds.expansion_cap);
        std::vector<char> vars;
        for (char c : lhs_word + rhs_word)
            if (std::find(vars.begin(), vars.end(), c) == vars.end()) vars.push_back(c);
        for (char c : var_set)
            if (std::find(vars.begin(), vars.end(), c) == vars.end()) vars.push_back(c);

        auto lhs_seq = detail::compile_sequence(lhs_word, vars);
        auto rhs_seq = detail::compile_sequence(rhs_word, vars);
        std::vector<std::size_t> chosen(vars.size(), 0);

        // DFS over variables with partial walks of both sequences cached per
        // depth; assigned(depth) = variables with index < depth.
        struct Walk { std::size_t pos; State state; };
        std::vector<Walk> lhs_walk{{0, dfa.initial}}, rhs_walk{{0, dfa.initial}};
        auto advance = [&](const detail::CompiledTerm& seq, Walk w, std::size_t depth) {
            while (w.pos < seq.ops.size() && seq.ops[w.pos] < depth) {
                w.state = transform[chosen[seq.ops[w.pos]]][w.state];
                ++w.pos;
            }
            return w;
        };

        std::size_t depth = 0;
        std::vector<std::size_t> iter(vars.size(), 0);
        for (;;) {
            if (depth == vars.size()) {
                Walk lw = lhs_walk.back(), rw = rhs_walk.back();
                bool in_l = dfa.accepting[lw.state];
                bool in_r = dfa.accepting[rw.state];
                bool ok = id.iff ? (in_l == in_r) : (!in_l || in_r);
                if (!ok) {
                    // definitive only if the literal instance equals its limit
                    State lhs_limit = detail::limit_transform(id.lhs, transform, chosen,
                                                              vars)[dfa.initial];
                    State rhs_limit = detail::limit_transform(id.rhs, transform, chosen,
                                                              vars)[dfa.initial];
                    if (lhs_limit == lw.state && rhs_limit == rw.state) {
                        IdentityCheckResult res;
                        res.holds = false;
                        res.counterexample_n = n;
                        for (std::size_t i = 0; i < vars.size(); ++i)
                            res.counterexample[vars[i]] = images[chosen[i]];
                        return res;
                    }
                }
                // backtrack
                for (;;) {
                    if (depth == 0) goto next_n;
                    --depth;
                    lhs_walk.pop_back();
                    rhs_walk.pop_back();
                    if (++iter[depth] < images.size()) break;
                }
            }
            chosen[depth] = iter[depth];
            lhs_walk.push_back(advance(lhs_seq, lhs_walk.back(), depth + 1));
            rhs_walk.push_back(advance(rhs_seq, rhs_walk.back(), depth + 1));
            ++depth;
            if (depth < vars.size()) iter[depth] = 0;
        }
    next_n:;
    }
    return {};
}

enum class IdentityMode { Monoid, Words };

inline IdentityCheckResult check_identity(const Dfa& language, const LatticeIdentity& id,
                                          IdentityMode mode, const WordsModeBounds& bounds = {}) {
    return mode == IdentityMode::Monoid ? check_identity_monoid(language, id)
                                        : check_identity_words(language, id, bounds);
}

}  // namespace rideal
