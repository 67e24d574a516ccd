#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "rideal/automata.hpp"

namespace rideal {

/// Regex syntax error carrying a 0-based position into the input text.
class RegexError : public std::runtime_error {
public:
    RegexError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

// Thompson-style fragments over an epsilon-NFA; epsilon edges are removed at
// the end. Grammar: alternation `|`, juxtaposition, postfix `*` `+` `?`,
// grouping `(...)`, single-letter literals, `%e` = epsilon, `%0` = empty set.
class RegexParser {
public:
    RegexParser(std::string_view text, const Alphabet& alphabet)
        : text_(text), alphabet_(alphabet) {}

    Nfa parse() {
        Fragment f = parse_alternation();
        skip_ws();
        if (pos_ != text_.size())
            throw RegexError("unexpected character", pos_);
        return build(f);
    }

private:
    struct Fragment { State start; State end; };

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;

    // eps-NFA under construction
    std::vector<std::vector<std::pair<std::size_t, State>>> edges_;  // letter index or kEps
    static constexpr std::size_t kEps = std::numeric_limits<std::size_t>::max();

    State new_state() {
        edges_.emplace_back();
        return static_cast<State>(edges_.size() - 1);
    }
    void edge(State from, std::size_t letter, State to) { edges_[from].push_back({letter, to}); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool at_atom_start() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c != '|' && c != ')' && c != '*' && c != '+' && c != '?';
    }

    Fragment parse_alternation() {
        Fragment f = parse_concat();
        while (peek_is('|')) {
            ++pos_;
            Fragment g = parse_concat();
            State s = new_state(), e = new_state();
            edge(s, kEps, f.start); edge(s, kEps, g.start);
            edge(f.end, kEps, e); edge(g.end, kEps, e);
            f = {s, e};
        }
        return f;
    }

    Fragment parse_concat() {
        if (!at_atom_start()) {  // empty concatenation denotes epsilon
            State s = new_state();
            return {s, s};
        }
        Fragment f = parse_postfix();
        while (at_atom_start()) {
            Fragment g = parse_postfix();
            edge(f.end, kEps, g.start);
            f = {f.start, g.end};
        }
        return f;
    }

    Fragment parse_postfix() {
        Fragment f = parse_atom();
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '*') {
                ++pos_;
                State s = new_state(), e = new_state();
                edge(s, kEps, f.start); edge(s, kEps, e);
                edge(f.end, kEps, f.start); edge(f.end, kEps, e);
                f = {s, e};
            } else if (c == '+') {
                ++pos_;
                State e = new_state();
                edge(f.end, kEps, f.start); edge(f.end, kEps, e);
                f = {f.start, e};
            } else if (c == '?') {
                ++pos_;
                State s = new_state(), e = new_state();
                edge(s, kEps, f.start); edge(s, kEps, e);
                edge(f.end, kEps, e);
                f = {s, e};
            } else {
                break;
            }
        }
        return f;
    }

    Fragment parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw RegexError("expected atom", pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t open = pos_++;
            Fragment f = parse_alternation();
            if (!peek_is(')')) throw RegexError("unbalanced '('", open);
            ++pos_;
            return f;
        }
        if (c == '%') {
            if (pos_ + 1 >= text_.size()) throw RegexError("dangling '%'", pos_);
            char k = text_[pos_ + 1];
            pos_ += 2;
            if (k == 'e') {
                State s = new_state();
                return {s, s};
            }
            if (k == '0') {
                State s = new_state(), e = new_state();
                return {s, e};  // no path start -> end
            }
            throw RegexError("unknown escape '%" + std::string(1, k) + "'", pos_ - 2);
        }
        auto li = alphabet_.index(c);
        if (!li) throw RegexError("letter '" + std::string(1, c) + "' outside alphabet", pos_);
        ++pos_;
        State s = new_state(), e = new_state();
        edge(s, *li, e);
        return {s, e};
    }

    Nfa build(Fragment f) {
        std::size_t n = edges_.size();
        // epsilon closure per state
        std::vector<std::vector<State>> closure(n);
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<bool> seen(n, false);
            std::deque<State> queue{static_cast<State>(q)};
            seen[q] = true;
            while (!queue.empty()) {
                State v = queue.front(); queue.pop_front();
                closure[q].push_back(v);
                for (auto [l, t] : edges_[v])
                    if (l == kEps && !seen[t]) { seen[t] = true; queue.push_back(t); }
            }
        }
        Nfa out(alphabet_);
        for (std::size_t q = 0; q < n; ++q) out.add_state(false);
        for (std::size_t q = 0; q < n; ++q) {
            for (State v : closure[q])
                for (auto [l, t] : edges_[v])
                    if (l != kEps)
                        for (State u : closure[t]) out.next[q][l].push_back(u);
            for (auto& succ : out.next[q]) {
                std::sort(succ.begin(), succ.end());
                succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            }
            for (State v : closure[q])
                if (v == f.end) out.accepting[q] = true;
        }
        out.initial = {f.start};
        // keep accessible states only
        return detail::restrict_states(out, detail::reachable_forward(out));
    }
};

}  // namespace detail

/// Parses the tiny fixture regex grammar into an NFA with accessible states.
inline Nfa parse_regex(std::string_view text, const Alphabet& alphabet) {
    return detail::RegexParser(text, alphabet).parse();
}

}  // namespace rideal
