#pragma once

// Brute-force factor database of a finite prefix. Every factor of length
// 0..maxN is stored once, as an (offset, length) view into the prefix,
// together with its observed left/right extension sets.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/substitution.hpp"
#include "parryword/word.hpp"

namespace parryword {

enum class Side { Left, Right };

struct FactorRecord {
    std::size_t offset = 0;
    std::size_t length = 0;
    LetterMask left = 0;
    LetterMask right = 0;
    std::uint64_t occurrences = 0;
    /// Some occurrence touches the first or the last position of the prefix.
    bool boundary_incomplete = false;
    /// Some occurrence has a letter on both sides.
    bool interior = false;
};

class LanguageIndex {
public:
    LanguageIndex(WordPrefix source, std::size_t max_n)
        : source_(std::move(source)), max_n_(max_n) {}

    const WordPrefix& source() const noexcept { return source_; }
    const Word& letters() const noexcept { return source_.letters; }
    std::size_t max_n() const noexcept { return max_n_; }
    std::size_t prefix_length() const noexcept { return source_.letters.size(); }
    LetterMask alphabet() const noexcept { return alphabet_; }

    /// Records of length n in lexicographic order.
    const std::vector<FactorRecord>& factors(std::size_t n) const {
        require_length(n);
        return by_length_[n];
    }

    Word word(const FactorRecord& rec) const {
        const auto first = letters().begin() + static_cast<std::ptrdiff_t>(rec.offset);
        return Word(first, first + static_cast<std::ptrdiff_t>(rec.length));
    }

    const FactorRecord* find(const Word& v) const {
        if (v.size() > max_n_) return nullptr;
        const auto& recs = by_length_[v.size()];
        auto it = std::lower_bound(recs.begin(), recs.end(), v,
                                   [this](const FactorRecord& r, const Word& w) { return less(r, w); });
        if (it == recs.end() || !equal(*it, v)) return nullptr;
        return &*it;
    }

    bool contains(const Word& v) const { return find(v) != nullptr; }

    LetterMask left_mask(const Word& v) const {
        const FactorRecord* rec = find(v);
        return rec ? rec->left : 0;
    }
    LetterMask right_mask(const Word& v) const {
        const FactorRecord* rec = find(v);
        return rec ? rec->right : 0;
    }
    LetterSet left_extensions(const Word& v) const { return mask_to_set(left_mask(v)); }
    LetterSet right_extensions(const Word& v) const { return mask_to_set(right_mask(v)); }

    /// Every factor shorter than maxN has an occurrence away from both ends.
    bool boundary_clean() const {
        for (std::size_t n = 0; n < max_n_; ++n)
            for (const auto& rec : by_length_[n])
                if (!rec.interior) return false;
        return true;
    }

    /// Same factor sets and extension sets for every length <= maxN.
    bool same_table(const LanguageIndex& other) const {
        if (other.max_n_ != max_n_) return false;
        for (std::size_t n = 0; n <= max_n_; ++n) {
            const auto& a = by_length_[n];
            const auto& b = other.by_length_[n];
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].left != b[i].left || a[i].right != b[i].right) return false;
                if (word(a[i]) != other.word(b[i])) return false;
            }
        }
        return true;
    }

private:
    void require_length(std::size_t n) const {
        if (n > max_n_)
            throw Error(ErrorCode::OutOfRange,
                        "length " + std::to_string(n) + " exceeds maxN " + std::to_string(max_n_));
    }

    bool less(const FactorRecord& r, const Word& w) const {
        const auto first = letters().begin() + static_cast<std::ptrdiff_t>(r.offset);
        return std::lexicographical_compare(first, first + static_cast<std::ptrdiff_t>(r.length),
                                            w.begin(), w.end());
    }
    bool equal(const FactorRecord& r, const Word& w) const {
        const auto first = letters().begin() + static_cast<std::ptrdiff_t>(r.offset);
        return r.length == w.size() && std::equal(w.begin(), w.end(), first);
    }

    WordPrefix source_;
    std::size_t max_n_;
    LetterMask alphabet_ = 0;
    std::vector<std::vector<FactorRecord>> by_length_;

    friend LanguageIndex build_index(WordPrefix prefix, std::size_t max_n);
};

/// Indexes all factors of length <= maxN of the prefix. Factor ids of length
/// n+1 are derived from (id of length n, next letter) through a dense table,
/// so a pass per length costs O(|prefix|) without hashing.
inline LanguageIndex build_index(WordPrefix prefix, std::size_t max_n) {
    const Word& w = prefix.letters;
    const std::size_t n_letters = w.size();
    if (n_letters <= max_n)
        throw Error(ErrorCode::PrefixTooShort,
                    "prefix of length " + std::to_string(n_letters) + " cannot index maxN " +
                        std::to_string(max_n));
    Letter q = 0;
    for (Letter a : w) {
        if (a >= kMaxAlphabet) throw Error(ErrorCode::LetterOutOfRange, "letter above 63");
        q = std::max<Letter>(q, a + 1);
    }

    LanguageIndex index(std::move(prefix), max_n);
    const Word& text = index.letters();
    for (Letter a : text) index.alphabet_ |= letter_bit(a);
    index.by_length_.resize(max_n + 1);

    FactorRecord empty;
    empty.left = empty.right = index.alphabet_;
    empty.occurrences = n_letters + 1;
    empty.interior = true;
    index.by_length_[0].push_back(empty);

    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> ids(text.begin(), text.end());
    std::uint32_t distinct = q;
    for (std::size_t n = 1; n <= max_n; ++n) {
        if (n > 1) {
            std::vector<std::uint32_t> table(static_cast<std::size_t>(distinct) * q, kUnset);
            std::uint32_t next_id = 0;
            const std::size_t positions = n_letters - n + 1;
            for (std::size_t i = 0; i < positions; ++i) {
                std::uint32_t& slot = table[static_cast<std::size_t>(ids[i]) * q + text[i + n - 1]];
                if (slot == kUnset) slot = next_id++;
                ids[i] = slot;
            }
            ids.resize(positions);
            distinct = next_id;
        }
        std::vector<FactorRecord> recs(distinct);
        std::vector<bool> seen(distinct, false);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            FactorRecord& rec = recs[ids[i]];
            if (!seen[ids[i]]) {
                seen[ids[i]] = true;
                rec.offset = i;
                rec.length = n;
            }
            ++rec.occurrences;
            const bool has_left = i > 0;
            const bool has_right = i + n < n_letters;
            if (has_left) rec.left |= letter_bit(text[i - 1]);
            if (has_right) rec.right |= letter_bit(text[i + n]);
            if (!has_left || !has_right) rec.boundary_incomplete = true;
            if (has_left && has_right) rec.interior = true;
        }
        recs.erase(std::remove_if(recs.begin(), recs.end(),
                                  [](const FactorRecord& r) { return r.occurrences == 0; }),
                   recs.end());
        std::sort(recs.begin(), recs.end(), [&text](const FactorRecord& x, const FactorRecord& y) {
            const auto xs = text.begin() + static_cast<std::ptrdiff_t>(x.offset);
            const auto ys = text.begin() + static_cast<std::ptrdiff_t>(y.offset);
            return std::lexicographical_compare(xs, xs + static_cast<std::ptrdiff_t>(x.length), ys,
                                                ys + static_cast<std::ptrdiff_t>(y.length));
        });
        index.by_length_[n] = std::move(recs);
    }
    return index;
}

namespace detail {

/// Number of distinct factors of each length 0..max_n over a family of words,
/// counting only windows that fit inside a single word.
inline std::vector<std::size_t> distinct_factor_counts(const std::vector<Word>& words, std::size_t max_n,
                                                       std::size_t q) {
    Word text;
    std::vector<std::size_t> end;
    for (const Word& w : words) {
        text.insert(text.end(), w.begin(), w.end());
        end.insert(end.end(), w.size(), text.size());
    }
    std::vector<std::size_t> counts{1};
    std::vector<std::size_t> positions(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) positions[i] = i;
    std::vector<std::uint32_t> ids(text.begin(), text.end());
    std::size_t distinct = q;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<std::uint32_t> table(distinct * q, 0xffffffffu);
        std::uint32_t next_id = 0;
        std::size_t kept = 0;
        for (std::size_t j = 0; j < positions.size(); ++j) {
            const std::size_t i = positions[j];
            if (i + n > end[i]) continue;
            const std::uint32_t prev = n == 1 ? 0 : ids[i];
            std::uint32_t& slot = table[static_cast<std::size_t>(prev) * q + text[i + n - 1]];
            if (slot == 0xffffffffu) slot = next_id++;
            ids[i] = slot;
            positions[kept++] = i;
        }
        positions.resize(kept);
        counts.push_back(next_id);
        distinct = std::max<std::size_t>(next_id, 1);
    }
    return counts;
}

/// Exact C(0..max_n) of the fixed point, from the closure of its length-2
/// factors: once every letter image under phi^k has length >= max_n, every
/// factor of length <= max_n sits inside phi^k(ab) for some length-2 factor
/// ab. Empty when some letter does not grow far enough.
inline std::vector<std::size_t> closure_complexity(const Substitution& sub, Letter seed, std::size_t max_n) {
    const std::size_t q = sub.alphabet_size();
    std::vector<std::vector<bool>> pair(q, std::vector<bool>(q, false));
    std::vector<std::pair<Letter, Letter>> pending;
    auto add_pairs = [&](const Word& w) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (!pair[w[i]][w[i + 1]]) {
                pair[w[i]][w[i + 1]] = true;
                pending.emplace_back(w[i], w[i + 1]);
            }
    };
    add_pairs(sub.apply(sub.image(seed)));
    for (std::size_t head = 0; head < pending.size(); ++head)
        add_pairs(sub.apply(Word{pending[head].first, pending[head].second}));

    std::vector<Word> powers;
    for (Letter a = 0; a < q; ++a) powers.push_back(Word{a});
    for (int k = 0; k < 200; ++k) {
        std::size_t shortest = SIZE_MAX;
        for (const auto& [a, b] : pending) shortest = std::min({shortest, powers[a].size(), powers[b].size()});
        if (shortest >= max_n) {
            std::vector<Word> words;
            for (const auto& [a, b] : pending) words.push_back(concat(powers[a], powers[b]));
            return distinct_factor_counts(words, max_n, q);
        }
        for (auto& w : powers) w = sub.apply(w);
        if (powers[0].size() > (std::size_t{1} << 24)) break;
    }
    return {};
}

} // namespace detail

struct StabilizeOptions {
    std::size_t budget = std::size_t{1} << 20;
    std::size_t initial_length = 0;
};

/// Doubles the fixed-point prefix until two consecutive indexes have
/// identical tables for every length <= maxN and no factor shorter than maxN
/// is seen only at the prefix boundary. Plateaus are common (a prefix and its
/// double can share every factor while later letters add new ones), so when
/// the exact factor counts are available from the pair closure the table must
/// also match them, including one length beyond maxN through the right
/// extensions of the longest factors.
inline LanguageIndex stabilize(const Substitution& sub, Letter seed, std::size_t max_n,
                               StabilizeOptions options = {}) {
    std::size_t length = options.initial_length ? options.initial_length
                                                : std::max<std::size_t>(256, 8 * (max_n + 1));
    length = std::min(length, std::max<std::size_t>(options.budget / 2, max_n + 1));
    if (length > options.budget)
        throw Error(ErrorCode::BudgetExceeded, "budget below the minimal prefix length");
    const std::vector<std::size_t> exact = detail::closure_complexity(sub, seed, max_n + 1);
    auto complete = [&](const LanguageIndex& index) {
        if (exact.empty()) return true;
        for (std::size_t n = 0; n <= max_n; ++n)
            if (index.factors(n).size() != exact[n]) return false;
        std::size_t longer = 0;
        for (const auto& rec : index.factors(max_n)) longer += static_cast<std::size_t>(mask_size(rec.right));
        return longer == exact[max_n + 1];
    };
    auto prefix_of = [&](std::size_t len) { return fixed_point_prefix(sub, seed, len); };
    LanguageIndex previous = build_index(prefix_of(length), max_n);
    while (true) {
        const std::size_t next_length = 2 * length;
        if (next_length > options.budget)
            throw Error(ErrorCode::BudgetExceeded,
                        "index for maxN " + std::to_string(max_n) + " did not stabilize within " +
                            std::to_string(options.budget) + " letters");
        LanguageIndex current = build_index(prefix_of(next_length), max_n);
        if (current.same_table(previous) && current.boundary_clean() && complete(current)) return current;
        previous = std::move(current);
        length = next_length;
    }
}

inline std::size_t complexity(const LanguageIndex& index, std::size_t n) {
    return index.factors(n).size();
}

inline long delta_complexity(const LanguageIndex& index, std::size_t n) {
    if (n >= index.max_n())
        throw Error(ErrorCode::OutOfRange, "delta needs n < maxN");
    return static_cast<long>(complexity(index, n + 1)) - static_cast<long>(complexity(index, n));
}

struct SpecialFactor {
    Word factor;
    LetterSet extensions;
};

inline std::vector<SpecialFactor> special_factors(const LanguageIndex& index, std::size_t n, Side side) {
    if (n >= index.max_n())
        throw Error(ErrorCode::OutOfRange, "special factors need n < maxN");
    std::vector<SpecialFactor> out;
    for (const auto& rec : index.factors(n)) {
        const LetterMask mask = side == Side::Left ? rec.left : rec.right;
        if (mask_size(mask) >= 2) out.push_back({index.word(rec), mask_to_set(mask)});
    }
    return out;
}

/// Rext(av) and Rext(bv) are disjoint.
inline bool is_ab_maximal(const LanguageIndex& index, const Word& v, Letter a, Letter b) {
    if (v.size() + 1 > index.max_n())
        throw Error(ErrorCode::OutOfRange, "factor too long for the index");
    const LetterMask left = index.left_mask(v);
    if (a == b || !(left & letter_bit(a)) || !(left & letter_bit(b)))
        throw Error(ErrorCode::NotLeftExtensions,
                    std::to_string(a) + "," + std::to_string(b) + " are not distinct left extensions of [" +
                        to_string(v) + "]");
    Word av{a};
    av.insert(av.end(), v.begin(), v.end());
    Word bv{b};
    bv.insert(bv.end(), v.begin(), v.end());
    return (index.right_mask(av) & index.right_mask(bv)) == 0;
}

struct MaximalWitness {
    Word factor;
    Letter a;
    Letter b;
};

/// All (v, a, b), a < b, with v of length n being (a,b)-maximal.
inline std::vector<MaximalWitness> ab_maximal_factors(const LanguageIndex& index, std::size_t n) {
    if (n + 1 > index.max_n()) throw Error(ErrorCode::OutOfRange, "factor too long for the index");
    std::vector<MaximalWitness> out;
    for (const auto& rec : index.factors(n)) {
        const LetterSet left = mask_to_set(rec.left);
        if (left.size() < 2) continue;
        const Word v = index.word(rec);
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = i + 1; j < left.size(); ++j)
                if (is_ab_maximal(index, v, left[i], left[j])) out.push_back({v, left[i], left[j]});
    }
    return out;
}

struct Quadruple {
    Letter a, b, c, d;
    friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

struct BispecialFactor {
    Word factor;
    std::vector<Quadruple> quadruples;
};

/// Factors of length n that are both left and right special, each with every
/// (a-c, b-d) witness: a < b, avc and bvd factors.
inline std::vector<BispecialFactor> bispecials(const LanguageIndex& index, std::size_t n) {
    if (n + 2 > index.max_n()) throw Error(ErrorCode::OutOfRange, "bispecials need n + 2 <= maxN");
    std::vector<BispecialFactor> out;
    for (const auto& rec : index.factors(n)) {
        if (mask_size(rec.left) < 2 || mask_size(rec.right) < 2) continue;
        BispecialFactor entry{index.word(rec), {}};
        const LetterSet left = mask_to_set(rec.left);
        for (std::size_t i = 0; i < left.size(); ++i) {
            Word av{left[i]};
            av.insert(av.end(), entry.factor.begin(), entry.factor.end());
            for (std::size_t j = i + 1; j < left.size(); ++j) {
                Word bv{left[j]};
                bv.insert(bv.end(), entry.factor.begin(), entry.factor.end());
                for (Letter c : index.right_extensions(av))
                    for (Letter d : index.right_extensions(bv))
                        entry.quadruples.push_back({left[i], left[j], c, d});
            }
        }
        out.push_back(std::move(entry));
    }
    return out;
}

/// LS factors v of length n with two right extensions c != d such that vc and
/// vd are both LS.
inline std::vector<Word> strong_bispecials(const LanguageIndex& index, std::size_t n) {
    if (n + 1 > index.max_n()) throw Error(ErrorCode::OutOfRange, "factor too long for the index");
    std::vector<Word> out;
    for (const auto& rec : index.factors(n)) {
        if (mask_size(rec.left) < 2) continue;
        const Word v = index.word(rec);
        int special_children = 0;
        for (Letter c : mask_to_set(rec.right)) {
            Word vc = v;
            vc.push_back(c);
            if (mask_size(index.left_mask(vc)) >= 2) ++special_children;
        }
        if (special_children >= 2) out.push_back(v);
    }
    return out;
}

struct ConnectionRow {
    std::size_t n;
    long delta;
    long special_sum;
};

struct ConnectionReport {
    std::vector<ConnectionRow> rows;
    std::vector<std::size_t> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks Delta C(n) = Sum over LS factors v of length n of (#Lext(v) - 1).
inline ConnectionReport verify_connection(const LanguageIndex& index) {
    ConnectionReport report;
    for (std::size_t n = 0; n < index.max_n(); ++n) {
        long sum = 0;
        for (const auto& rec : index.factors(n))
            if (mask_size(rec.left) >= 2) sum += mask_size(rec.left) - 1;
        const long delta = delta_complexity(index, n);
        report.rows.push_back({n, delta, sum});
        if (delta != sum) report.violations.push_back(n);
    }
    return report;
}

/// CSV rows "n,C,dC,LS,RS" for n < maxN.
inline std::string complexity_csv(const LanguageIndex& index) {
    std::ostringstream out;
    out << "n,C,dC,LS,RS\n";
    for (std::size_t n = 0; n < index.max_n(); ++n) {
        std::size_t ls = 0;
        std::size_t rs = 0;
        for (const auto& rec : index.factors(n)) {
            ls += mask_size(rec.left) >= 2;
            rs += mask_size(rec.right) >= 2;
        }
        out << n << ',' << complexity(index, n) << ',' << delta_complexity(index, n) << ',' << ls
            << ',' << rs << '\n';
    }
    return out.str();
}

} // namespace parryword
