#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "parryword/error.hpp"

namespace parryword {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Sorted, duplicate-free set of letters.
using LetterSet = std::vector<Letter>;

/// Extension sets are stored as bit masks internally; alphabets are capped
/// at 64 letters.
inline constexpr std::size_t kMaxAlphabet = 64;

using LetterMask = std::uint64_t;

inline LetterMask letter_bit(Letter a) { return LetterMask{1} << a; }

inline LetterSet mask_to_set(LetterMask mask) {
    LetterSet out;
    while (mask != 0) {
        out.push_back(static_cast<Letter>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

inline LetterMask set_to_mask(const LetterSet& set) {
    LetterMask mask = 0;
    for (Letter a : set) mask |= letter_bit(a);
    return mask;
}

inline int mask_size(LetterMask mask) { return std::popcount(mask); }

inline bool contains(const LetterSet& set, Letter a) {
    return std::binary_search(set.begin(), set.end(), a);
}

inline Word concat(Word lhs, const Word& rhs) {
    lhs.insert(lhs.end(), rhs.begin(), rhs.end());
    return lhs;
}

inline bool is_prefix(const Word& prefix, const Word& word) {
    return prefix.size() <= word.size() &&
           std::equal(prefix.begin(), prefix.end(), word.begin());
}

inline bool is_suffix(const Word& suffix, const Word& word) {
    return suffix.size() <= word.size() &&
           std::equal(suffix.rbegin(), suffix.rend(), word.rbegin());
}

inline Word longest_common_prefix(const Word& a, const Word& b) {
    auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    return Word(a.begin(), ia);
}

inline Word longest_common_suffix(const Word& a, const Word& b) {
    auto [ia, ib] = std::mismatch(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    return Word(ia.base(), a.end());
}

inline Word repeat_letter(Letter a, std::size_t count) { return Word(count, a); }

/// Comma-separated rendering, "0,1,2"; the empty word renders as "".
inline std::string to_string(const Word& word) {
    std::ostringstream out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out << ',';
        out << word[i];
    }
    return out.str();
}

/// Compact rendering without separators when every letter is a single digit.
inline std::string to_compact_string(const Word& word) {
    const bool compact =
        std::all_of(word.begin(), word.end(), [](Letter a) { return a < 10; });
    if (!compact) return to_string(word);
    std::string out;
    for (Letter a : word) out.push_back(static_cast<char>('0' + a));
    return out;
}

inline std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

inline std::uint32_t parse_unsigned(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error(ErrorCode::Parse, "empty number");
    std::uint64_t value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw Error(ErrorCode::Parse, "not a digit: '" + std::string(1, ch) + "'");
        value = value * 10 + static_cast<std::uint64_t>(ch - '0');
        if (value > 0xffffffffULL) throw Error(ErrorCode::Parse, "number too large");
    }
    return static_cast<std::uint32_t>(value);
}

/// Parses either "0,1,2" or, when no comma is present, one letter per
/// character ("012").
inline Word parse_word(std::string_view text) {
    text = trim(text);
    Word out;
    if (text.empty()) return out;
    if (text.find(',') == std::string_view::npos) {
        for (char ch : text) {
            if (ch < '0' || ch > '9')
                throw Error(ErrorCode::Parse, "not a letter: '" + std::string(1, ch) + "'");
            out.push_back(static_cast<Letter>(ch - '0'));
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_unsigned(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace parryword
