#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/parry.hpp"
#include "parryword/word.hpp"

namespace parryword {

/// A non-erasing morphism over {0, ..., q-1}.
class Substitution {
public:
    explicit Substitution(std::vector<Word> images) : images_(std::move(images)) {
        if (images_.empty())
            throw Error(ErrorCode::InvalidSubstitution, "empty alphabet");
        if (images_.size() > kMaxAlphabet)
            throw Error(ErrorCode::InvalidSubstitution, "alphabet larger than 64 letters");
        for (std::size_t a = 0; a < images_.size(); ++a) {
            if (images_[a].empty())
                throw Error(ErrorCode::InvalidSubstitution,
                            "image of " + std::to_string(a) + " is empty");
            for (Letter b : images_[a])
                if (b >= images_.size())
                    throw Error(ErrorCode::LetterOutOfRange,
                                "image of " + std::to_string(a) + " uses letter " + std::to_string(b),
                                static_cast<long>(b));
        }
    }

    std::size_t alphabet_size() const noexcept { return images_.size(); }
    const std::vector<Word>& images() const noexcept { return images_; }

    const Word& image(Letter a) const {
        if (a >= images_.size())
            throw Error(ErrorCode::LetterOutOfRange, "letter " + std::to_string(a),
                        static_cast<long>(a));
        return images_[a];
    }

    /// Concatenation of the images of the letters of `word`.
    Word apply(const Word& word) const {
        Word out;
        for (Letter a : word) {
            const Word& img = image(a);
            out.insert(out.end(), img.begin(), img.end());
        }
        return out;
    }

    /// "0>001;1>2;2>01"; images use commas once the alphabet exceeds ten letters.
    std::string to_string() const {
        std::string out;
        for (std::size_t a = 0; a < images_.size(); ++a) {
            if (a) out += ';';
            out += std::to_string(a) + ">" +
                   (images_.size() > 10 ? parryword::to_string(images_[a])
                                        : to_compact_string(images_[a]));
        }
        return out;
    }

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::vector<Word> images_;
};

/// Parses "0>001;1>2;2>01". Rules may come in any order but must cover
/// every letter 0..q-1 exactly once.
inline Substitution parse_substitution(std::string_view text) {
    std::vector<std::pair<Letter, Word>> rules;
    std::size_t start = 0;
    text = trim(text);
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        const auto rule = trim(text.substr(start, semi == std::string_view::npos ? semi : semi - start));
        if (!rule.empty()) {
            const auto arrow = rule.find('>');
            if (arrow == std::string_view::npos)
                throw Error(ErrorCode::Parse, "rule without '>': " + std::string(rule));
            rules.emplace_back(parse_unsigned(rule.substr(0, arrow)), parse_word(rule.substr(arrow + 1)));
        }
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    std::vector<Word> images(rules.size());
    std::vector<bool> seen(rules.size(), false);
    for (auto& [letter, image] : rules) {
        if (letter >= rules.size() || seen[letter])
            throw Error(ErrorCode::Parse, "rules must define letters 0..q-1 once each");
        seen[letter] = true;
        images[letter] = std::move(image);
    }
    return Substitution(std::move(images));
}

/// The canonical substitution of a Parry number: k -> 0^{t_{k+1}} (k+1), with
/// the last letter mapped to 0^{t_m} (simple) or 0^{t_{m+p}} m (non-simple).
inline Substitution canonical_substitution(const ParryExpansion& exp) {
    const std::size_t q = exp.alphabet_size();
    std::vector<Word> images(q);
    for (std::size_t k = 0; k < q; ++k) {
        images[k] = repeat_letter(0, exp.t(k + 1));
        if (k + 1 < q)
            images[k].push_back(static_cast<Letter>(k + 1));
        else if (!exp.simple())
            images[k].push_back(static_cast<Letter>(exp.m()));
    }
    return Substitution(std::move(images));
}

inline Word apply_power(const Substitution& sub, Word word, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) word = sub.apply(word);
    return word;
}

/// Prefix of length at most `limit` of phi^n(word). Each step only expands
/// the letters that can still influence the first `limit` output letters.
inline Word truncated_power(const Substitution& sub, Word word, std::size_t n, std::size_t limit) {
    if (word.size() > limit) word.resize(limit);
    for (std::size_t i = 0; i < n; ++i) {
        Word next;
        for (Letter a : word) {
            const Word& img = sub.image(a);
            next.insert(next.end(), img.begin(), img.end());
            if (next.size() >= limit) break;
        }
        if (next.size() > limit) next.resize(limit);
        word = std::move(next);
    }
    return word;
}

/// phi^n(k) by iteration.
inline Word power_image(const Substitution& sub, Letter k, std::size_t n) {
    return apply_power(sub, Word{k}, n);
}

/// phi_beta^n(k) = (phi^{n-1}(0))^{t_{k(+)1}} ... (phi(0))^{t_{k(+)(n-1)}}
///                 0^{t_{k(+)n}} (k (+) n), for non-simple expansions.
inline Word power_image_closed_form(const ParryExpansion& exp, Letter k, std::size_t n) {
    if (exp.simple()) throw Error(ErrorCode::SimpleExpansion, "closed form needs a period");
    if (n == 0) return Word{k};
    const Substitution sub = canonical_substitution(exp);
    std::vector<Word> zero_powers{Word{0}};
    for (std::size_t i = 1; i < n; ++i) zero_powers.push_back(sub.apply(zero_powers.back()));
    Word out;
    for (std::size_t j = 1; j < n; ++j) {
        const Word& block = zero_powers[n - j];
        for (Digit r = 0; r < exp.t_oplus(k, j); ++r) out.insert(out.end(), block.begin(), block.end());
    }
    out.insert(out.end(), exp.t_oplus(k, n), Letter{0});
    out.push_back(exp.oplus(k, n));
    return out;
}

/// phi^n as a substitution in its own right.
inline Substitution power(const Substitution& sub, std::size_t n) {
    std::vector<Word> images;
    for (Letter a = 0; a < sub.alphabet_size(); ++a) images.push_back(power_image(sub, a, n));
    return Substitution(std::move(images));
}

struct WordPrefix {
    Word letters;
    std::string substitution_id;
    Letter seed = 0;
    bool guaranteed_prefix = false;
};

/// Wraps an arbitrary finite word for indexing; no prefix guarantee.
inline WordPrefix literal_prefix(Word letters) {
    return WordPrefix{std::move(letters), {}, 0, false};
}

/// First `min_length` letters of phi^omega(seed). The fixed point is read
/// while it is written: u = phi(u_0) phi(u_1) ..., so each letter is
/// expanded once and memory stays proportional to the output.
inline WordPrefix fixed_point_prefix(const Substitution& sub, Letter seed, std::size_t min_length) {
    const Word& head = sub.image(seed);
    if (head.size() < 2 || head.front() != seed)
        throw Error(ErrorCode::NotProlongable,
                    "image of " + std::to_string(seed) + " must start with it and have length >= 2",
                    static_cast<long>(seed));
    const std::size_t target = std::max<std::size_t>(min_length, 1);
    Word out = head;
    out.reserve(target + 64);
    for (std::size_t i = 1; out.size() < target; ++i) {
        const Word& img = sub.image(out[i]);
        out.insert(out.end(), img.begin(), img.end());
    }
    out.resize(target);
    return WordPrefix{std::move(out), sub.to_string(), seed, true};
}

/// Primitive iff some power of the incidence matrix is entrywise positive;
/// the exponent q^2 - 2q + 2 bounds the search.
inline bool is_primitive(const Substitution& sub) {
    const std::size_t q = sub.alphabet_size();
    using Matrix = std::vector<std::vector<bool>>;
    Matrix incidence(q, std::vector<bool>(q, false));
    for (std::size_t a = 0; a < q; ++a)
        for (Letter b : sub.image(static_cast<Letter>(a))) incidence[a][b] = true;
    const std::size_t bound = q * q - 2 * q + 2;
    Matrix current = incidence;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (std::size_t a = 0; a < q && positive; ++a)
            for (std::size_t b = 0; b < q && positive; ++b) positive = current[a][b];
        if (positive) return true;
        Matrix next(q, std::vector<bool>(q, false));
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t c = 0; c < q; ++c)
                if (current[a][c])
                    for (std::size_t b = 0; b < q; ++b)
                        if (incidence[c][b]) next[a][b] = true;
        current = std::move(next);
    }
    return false;
}

/// Injective on words iff the images are pairwise distinct and form a
/// uniquely decodable code, decided by the Sardinas-Patterson procedure.
inline bool is_injective(const Substitution& sub) {
    const auto& code = sub.images();
    std::set<Word> distinct(code.begin(), code.end());
    if (distinct.size() != code.size()) return false;

    std::set<Word> seen;
    std::vector<Word> queue;
    auto push = [&](Word w) {
        if (seen.insert(w).second) queue.push_back(std::move(w));
    };
    for (const Word& u : code)
        for (const Word& v : code)
            if (u != v && is_prefix(u, v)) push(Word(v.begin() + static_cast<std::ptrdiff_t>(u.size()), v.end()));
    while (!queue.empty()) {
        Word x = std::move(queue.back());
        queue.pop_back();
        if (x.empty()) return false;
        for (const Word& c : code) {
            if (is_prefix(x, c)) push(Word(c.begin() + static_cast<std::ptrdiff_t>(x.size()), c.end()));
            if (is_prefix(c, x)) push(Word(x.begin() + static_cast<std::ptrdiff_t>(c.size()), x.end()));
        }
    }
    return true;
}

struct PeriodicPoint {
    Letter seed;
    std::size_t period;
    friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

/// Every (a, l) with l <= max_period minimal such that phi^l(a) starts with a
/// and has length >= 2; sorted by period, then letter.
inline std::vector<PeriodicPoint> periodic_points(const Substitution& sub, std::size_t max_period) {
    std::vector<PeriodicPoint> out;
    for (Letter a = 0; a < sub.alphabet_size(); ++a) {
        Letter first = a;
        for (std::size_t l = 1; l <= max_period; ++l) {
            first = sub.image(first).front();
            if (first == a && truncated_power(sub, Word{a}, l, 2).size() >= 2) {
                out.push_back({a, l});
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PeriodicPoint& x, const PeriodicPoint& y) {
        return x.period != y.period ? x.period < y.period : x.seed < y.seed;
    });
    return out;
}

} // namespace parryword
