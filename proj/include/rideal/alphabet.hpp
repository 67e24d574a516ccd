#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rideal {

// Tape symbols reserved by two-way automata; never part of an input alphabet.
inline constexpr char kLeftMarker = '>';
inline constexpr char kRightMarker = '<';

/// Ordered finite set of single-character letters.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::string_view letters) {
        letters_.assign(letters.begin(), letters.end());
        std::sort(letters_.begin(), letters_.end());
        letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
        if (letters_.empty())
            throw std::invalid_argument("alphabet must be non-empty");
        if (letters_.find(kLeftMarker) != std::string::npos ||
            letters_.find(kRightMarker) != std::string::npos)
            throw std::invalid_argument("alphabet must not contain the end markers '>' or '<'");
    }

    std::size_t size() const { return letters_.size(); }
    char letter(std::size_t i) const { return letters_[i]; }
    const std::string& letters() const { return letters_; }

    bool contains(char c) const { return letters_.find(c) != std::string::npos; }

    /// Index of a letter in alphabet order, or nullopt.
    std::optional<std::size_t> index(char c) const {
        auto pos = letters_.find(c);
        if (pos == std::string::npos) return std::nullopt;
        return pos;
    }

    std::size_t index_checked(char c) const {
        auto i = index(c);
        if (!i) throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
        return *i;
    }

    bool operator==(const Alphabet&) const = default;

private:
    std::string letters_;  // sorted, unique
};

/// Set of letters occurring in a word, as a sorted string.
inline std::string alph(std::string_view word) {
    std::string s(word);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// 1-based letter access; defined exactly for 1 <= i <= |word|.
inline char letter_at(std::string_view word, std::size_t i) {
    if (i < 1 || i > word.size())
        throw std::out_of_range("letter_at: index out of range");
    return word[i - 1];
}

}  // namespace rideal
