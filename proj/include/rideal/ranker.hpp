#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rideal/two_way.hpp"

namespace rideal {

/// Sequence of next-a (X_a) / previous-a (Y_a) position instructions.
struct RankerItem {
    bool forward = true;  // X_a moves to the next a-position, Y_a to the previous
    char letter = 0;
};

struct Ranker {
    std::vector<RankerItem> items;

    bool is_x_ranker() const { return !items.empty() && items.front().forward; }
    std::size_t size() const { return items.size(); }

    std::string to_string() const {
        std::string s;
        for (const auto& item : items) {
            if (!s.empty()) s += ' ';
            s += item.forward ? 'X' : 'Y';
            s += item.letter;
        }
        return s;
    }
};

/// Parses the space-separated token syntax "Xa Yb ..." (modality + letter).
inline Ranker parse_ranker(std::string_view text, const Alphabet& alphabet) {
    Ranker r;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        char mod = text[i];
        if ((mod != 'X' && mod != 'Y') || i + 1 >= text.size())
            throw std::invalid_argument("ranker: expected token 'X<letter>' or 'Y<letter>'");
        char letter = text[i + 1];
        if (!alphabet.contains(letter))
            throw std::invalid_argument(std::string("ranker: letter '") + letter +
                                        "' not in alphabet");
        r.items.push_back({mod == 'X', letter});
        i += 2;
    }
    if (r.items.empty()) throw std::invalid_argument("ranker: must be non-empty");
    return r;
}

/// Position (1-based) reached on the word, or nullopt when undefined.
/// X-rankers start at 0, Y-rankers at |word|+1.
inline std::optional<std::size_t> eval_ranker(const Ranker& r, std::string_view word) {
    if (r.items.empty()) throw std::invalid_argument("eval_ranker: empty ranker");
    std::size_t pos = r.is_x_ranker() ? 0 : word.size() + 1;
    for (const auto& item : r.items) {
        if (item.forward) {
            std::size_t j = pos + 1;
            while (j <= word.size() && word[j - 1] != item.letter) ++j;
            if (j > word.size()) return std::nullopt;
            pos = j;
        } else {
            std::size_t j = pos;
            while (j > 1 && word[j - 2] != item.letter) --j;
            if (j <= 1) return std::nullopt;
            pos = j - 1;
        }
    }
    return pos;
}

/// One-pass po2dfa recognizing L(r) = {u : r(u) defined}, for an X-ranker.
/// One seek state per instruction (right-moving for X, left-moving for Y)
/// plus a final right-moving sink; a failed seek runs off the marker and
/// sticks. Y-rankers are out of scope (reverse the ranker and the language
/// instead).
inline TwoWayAutomaton compile_ranker(const Ranker& r, const Alphabet& alphabet) {
    if (!r.is_x_ranker())
        throw std::invalid_argument("compile_ranker: only X-rankers are supported");
    TwoWayAutomaton t{alphabet, {}, {}, kNoState, {}};
    for (const auto& item : r.items) t.add_state(item.forward, false);
    State done = t.add_state(true, true);
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        State q = static_cast<State>(i);
        State target = i + 1 < r.items.size() ? q + 1 : done;
        for (std::size_t l = 0; l < alphabet.size(); ++l)
            t.next[q][l] = alphabet.letter(l) == r.items[i].letter ? target : q;
    }
    for (std::size_t l = 0; l < alphabet.size(); ++l) t.next[done][l] = done;
    t.next[done][t.right_marker_index()] = done;
    t.initial = 0;
    return t;
}

}  // namespace rideal
