#pragma once

// Closed forms for the canonical substitution of a Parry number: letter
// extensions, the f_L/g_L tables, the infinite LS branches, max-f-images
// and the maximal LS factors they generate, and the affine decision.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/factor_index.hpp"
#include "parryword/ls_graph.hpp"
#include "parryword/parry.hpp"
#include "parryword/substitution.hpp"
#include "parryword/word.hpp"

namespace parryword {

/// Lext of every letter of u_beta.
inline std::map<Letter, LetterSet> letter_extensions(const ParryExpansion& exp) {
    exp.require_non_simple("letter_extensions");
    const DerivedParams params = derive_params(exp);
    const std::size_t q = exp.alphabet_size();
    std::map<Letter, LetterSet> out;
    for (Letter k = static_cast<Letter>(params.ell0); k < q; ++k) out[0].push_back(k);
    for (Letter k = 1; k < q; ++k) {
        LetterMask mask = letter_bit(params.z_table.at(k));
        if (k >= exp.m()) mask |= letter_bit(params.y_table.at(k));
        out[k] = mask_to_set(mask);
    }
    return out;
}

struct GLEntry {
    Word label;
    LetterPair target;
};

/// The special pair {m-1, m+p-1}, the only one whose images share a suffix.
inline LetterPair special_pair(const ParryExpansion& exp) {
    return LetterPair(static_cast<Letter>(exp.m() - 1), static_cast<Letter>(exp.m() + exp.p() - 1));
}

inline GLEntry gl_entry(const ParryExpansion& exp, const LetterPair& pair) {
    if (pair == special_pair(exp)) {
        const DerivedParams params = derive_params(exp);
        Word label = repeat_letter(0, params.t);
        label.push_back(static_cast<Letter>(exp.m()));
        return {std::move(label), LetterPair(0, params.z_star)};
    }
    return {{}, LetterPair(exp.oplus(pair.first, 1), exp.oplus(pair.second, 1))};
}

/// f_L label and g_L target for every unordered pair of distinct letters.
inline std::map<LetterPair, GLEntry> gl_closed_form(const ParryExpansion& exp) {
    exp.require_non_simple("gl_closed_form");
    std::map<LetterPair, GLEntry> out;
    const std::size_t q = exp.alphabet_size();
    for (Letter a = 0; a < q; ++a)
        for (Letter b = a + 1; b < q; ++b) out[LetterPair(a, b)] = gl_entry(exp, LetterPair(a, b));
    return out;
}

inline LetterPair gl_power(const ParryExpansion& exp, LetterPair pair, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) pair = gl_entry(exp, pair).target;
    return pair;
}

/// u_beta when p > 1, plus the m equation branches when beta is in S.
inline std::vector<BranchSpec> branch_list(const ParryExpansion& exp) {
    exp.require_non_simple("branch_list");
    const DerivedParams params = derive_params(exp);
    const Substitution sub = canonical_substitution(exp);
    const std::size_t m = exp.m();
    const std::size_t p = exp.p();
    std::vector<BranchSpec> out;
    if (params.in_s) {
        std::vector<LetterPair> cycle;
        for (std::size_t j = 0; j < m; ++j)
            cycle.emplace_back(static_cast<Letter>(j), exp.oplus(params.z_star, j));
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        Word base = repeat_letter(0, params.t);
        base.push_back(static_cast<Letter>(m));
        for (std::size_t j = 0; j < m; ++j) {
            BranchSpec spec;
            spec.kind = BranchKind::Equation;
            spec.power = m;
            spec.prefix = apply_power(sub, base, j);
            spec.cycle_vertices = cycle;
            spec.extensions = {LetterPair(static_cast<Letter>(j), exp.oplus(params.z_star, j))};
            out.push_back(std::move(spec));
        }
    }
    if (p > 1) {
        BranchSpec spec;
        spec.kind = BranchKind::PeriodicPoint;
        spec.seed = 0;
        spec.power = 1;
        for (std::size_t a = m; a < m + p; ++a)
            for (std::size_t b = a + 1; b < m + p; ++b)
                spec.extensions.emplace_back(static_cast<Letter>(a), static_cast<Letter>(b));
        out.push_back(std::move(spec));
    }
    return out;
}

/// Longest common prefix of the images of a and b, always a run of zeros.
inline Word f_right(const ParryExpansion& exp, Letter a, Letter b) {
    if (a == b) throw Error(ErrorCode::OutOfRange, "f_R needs distinct letters");
    const Substitution sub = canonical_substitution(exp);
    return longest_common_prefix(sub.image(a), sub.image(b));
}

/// t_{x(+)1} t_{x(+)2} ... compared lexicographically; -1, 0 or 1. The
/// sequences are eventually periodic with period p, so m + 2p terms decide.
inline int compare_tails(const ParryExpansion& exp, Letter x, Letter y) {
    const std::size_t horizon = exp.m() + 2 * exp.p() + 2;
    for (std::size_t i = 1; i <= horizon; ++i) {
        const Digit dx = exp.t_oplus(x, i);
        const Digit dy = exp.t_oplus(y, i);
        if (dx != dy) return dx < dy ? -1 : 1;
    }
    return 0;
}

/// The letter of `set` with the greatest tail, smallest letter on ties.
inline std::optional<Letter> tail_maximal(const ParryExpansion& exp, const LetterSet& set) {
    std::optional<Letter> best;
    for (Letter x : set)
        if (!best || compare_tails(exp, x, *best) > 0) best = x;
    return best;
}

/// Right letters c in `after_a`, d in `after_b` for the max-f-image: the
/// greatest tails on each side, or, when those coincide, the distinct pair with
/// the longest f_R and then the greatest tails. None without a distinct pair.
inline std::optional<std::pair<Letter, Letter>> choose_rights(const ParryExpansion& exp, const LetterSet& after_a,
                                                              const LetterSet& after_b) {
    const auto c = tail_maximal(exp, after_a);
    const auto d = tail_maximal(exp, after_b);
    if (!c || !d) return std::nullopt;
    if (*c != *d) return std::pair{*c, *d};
    std::optional<std::pair<Letter, Letter>> best;
    auto run = [&](Letter e, Letter f) { return std::min(exp.t_oplus(e, 1), exp.t_oplus(f, 1)); };
    for (Letter e : after_a)
        for (Letter f : after_b) {
            if (e == f) continue;
            if (!best) {
                best = std::pair{e, f};
                continue;
            }
            const auto [be, bf] = *best;
            if (run(e, f) != run(be, bf)) {
                if (run(e, f) > run(be, bf)) best = std::pair{e, f};
                continue;
            }
            const int ce = compare_tails(exp, e, be);
            if (ce > 0 || (ce == 0 && compare_tails(exp, f, bf) > 0)) best = std::pair{e, f};
        }
    return best;
}

struct BispecialSeed {
    Word v;
    Letter a = 0, b = 0;
    Letter c = 0, d = 0;
};

namespace detail {

inline Word prepend(Letter a, const Word& v) {
    Word out{a};
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline Word append(Word v, Letter c) {
    v.push_back(c);
    return v;
}

/// The letter preceding the f_L(a,b) suffix of phi(x) in the f-image, x in {a,b}.
inline Letter left_successor(const ParryExpansion& exp, Letter x, Letter a, Letter b) {
    const LetterPair pair(a, b);
    if (pair != special_pair(exp)) return exp.oplus(x, 1);
    const Letter other = x == a ? b : a;
    const bool longer = exp.t_oplus(x, 1) > exp.t_oplus(other, 1);
    return longer ? Letter{0} : gl_entry(exp, pair).target.second;
}

} // namespace detail

/// f_L(a,b) phi(v) f_R(c',d') with c' in Rext(av), d' in Rext(bv) picked by
/// choose_rights; the returned seed carries the successor pairs.
inline BispecialSeed max_f_image(const ParryExpansion& exp, const BispecialSeed& seed, const LanguageIndex& index) {
    exp.require_non_simple("max_f_image");
    if (seed.v.size() + 2 > index.max_n()) throw Error(ErrorCode::OutOfRange, "seed too long for the index");
    const Word av = detail::prepend(seed.a, seed.v);
    const Word bv = detail::prepend(seed.b, seed.v);
    if (seed.a == seed.b || !index.contains(detail::append(av, seed.c)) || !index.contains(detail::append(bv, seed.d)))
        throw Error(ErrorCode::SeedNotFound, "[" + to_string(av) + "] " + std::to_string(seed.c) + " / [" +
                                                 to_string(bv) + "] " + std::to_string(seed.d) + " do not both occur");
    const auto rights = choose_rights(exp, index.right_extensions(av), index.right_extensions(bv));
    if (!rights) throw Error(ErrorCode::SeedNotFound, "[" + to_string(seed.v) + "] has no distinct right letters");
    const auto [c, d] = *rights;
    const Substitution sub = canonical_substitution(exp);
    const Word right = longest_common_prefix(sub.image(c), sub.image(d));
    BispecialSeed out;
    out.v = concat(concat(gl_entry(exp, LetterPair(seed.a, seed.b)).label, sub.apply(seed.v)), right);
    out.a = detail::left_successor(exp, seed.a, seed.a, seed.b);
    out.b = detail::left_successor(exp, seed.b, seed.a, seed.b);
    out.c = sub.image(c).at(right.size());
    out.d = sub.image(d).at(right.size());
    return out;
}

struct MaximalRecord {
    Word factor;
    /// Left pair of the factor, g_L^depth of the starting pair.
    LetterPair pair;
    std::size_t depth = 0;
    Word generator;
    LetterPair start;
    std::string family;
    /// The chain family claims maximality for this member.
    bool claimed = true;
    /// The index was deep enough to decide.
    bool checked = false;
    bool confirmed = false;
    /// The lcp tail came from direct comparison instead of the closed form.
    bool lcp_fallback = false;
};

/// 0^{t_1 - 1} when t_1 > 1, else 0.
inline Word maximal_generator(const ParryExpansion& exp) {
    return exp.t(1) > 1 ? repeat_letter(0, exp.t(1) - 1) : Word{0};
}

namespace detail {

/// s = f_L(g^{k-1}(pair)) phi(f_L(g^{k-2}(pair))) ... phi^{k-1}(f_L(pair)), cut at `limit`.
inline Word chain_prefix(const ParryExpansion& exp, const Substitution& sub, LetterPair pair, std::size_t k,
                         std::size_t limit) {
    std::vector<Word> labels;
    for (std::size_t i = 0; i < k; ++i) {
        const GLEntry e = gl_entry(exp, pair);
        labels.push_back(e.label);
        pair = e.target;
    }
    Word s;
    for (std::size_t i = 0; i < k && s.size() < limit; ++i)
        s = concat(s, truncated_power(sub, labels[k - 1 - i], i, limit - s.size()));
    return s;
}

/// lcp(phi^k(c), phi^k(d)) through the lcp lemma; empty when the tails tie.
inline std::optional<Word> lcp_closed_form(const ParryExpansion& exp, const Substitution& sub, Letter c, Letter d,
                                           std::size_t k) {
    if (c == d) return std::nullopt;
    const int cmp = compare_tails(exp, c, d);
    if (cmp == 0) return std::nullopt;
    Word shorter = power_image(sub, cmp < 0 ? c : d, k);
    shorter.pop_back();
    return shorter;
}

} // namespace detail

/// The k-th max-f-image of `generator` started from left pair (a,b), where
/// c in Rext(a generator) and d in Rext(b generator) have the greatest tails.
inline MaximalRecord kth_max_f_image(const ParryExpansion& exp, const Word& generator, Letter a, Letter b, Letter c,
                                     Letter d, std::size_t k) {
    exp.require_non_simple("kth_max_f_image");
    const Substitution sub = canonical_substitution(exp);
    MaximalRecord rec;
    rec.generator = generator;
    rec.start = LetterPair(a, b);
    rec.depth = k;
    rec.pair = gl_power(exp, rec.start, k);
    const Word direct = longest_common_prefix(power_image(sub, c, k), power_image(sub, d, k));
    const auto closed = detail::lcp_closed_form(exp, sub, c, d, k);
    rec.lcp_fallback = !closed || *closed != direct;
    const Word s = detail::chain_prefix(exp, sub, rec.start, k, static_cast<std::size_t>(-1));
    rec.factor = concat(concat(s, apply_power(sub, generator, k)), rec.lcp_fallback ? direct : *closed);
    return rec;
}

/// First `limit` letters of the k-th max-f-image; avoids expanding phi^k fully.
inline Word kth_max_f_image_prefix(const ParryExpansion& exp, const Substitution& sub, const Word& generator,
                                   LetterPair start, Letter c, Letter d, std::size_t k, std::size_t limit) {
    Word out = detail::chain_prefix(exp, sub, start, k, limit);
    if (out.size() < limit) out = concat(out, truncated_power(sub, generator, k, limit - out.size()));
    if (out.size() < limit) {
        const std::size_t rest = limit - out.size();
        const Word tail = longest_common_prefix(truncated_power(sub, Word{c}, k, rest + 1),
                                                truncated_power(sub, Word{d}, k, rest + 1));
        out.insert(out.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(std::min(rest, tail.size())));
    }
    return out;
}

namespace detail {

inline void confirm(MaximalRecord& rec, const LanguageIndex& index) {
    rec.checked = rec.factor.size() + 1 <= index.max_n();
    if (!rec.checked) return;
    const LetterMask left = index.left_mask(rec.factor);
    const LetterMask want = letter_bit(rec.pair.first) | letter_bit(rec.pair.second);
    rec.confirmed = rec.pair.first != rec.pair.second && (left & want) == want &&
                    is_ab_maximal(index, rec.factor, rec.pair.first, rec.pair.second);
}

/// choose_rights after a·generator and b·generator.
inline std::optional<std::pair<Letter, Letter>> chain_rights(const ParryExpansion& exp, const LanguageIndex& index,
                                                             const Word& generator, Letter a, Letter b) {
    return choose_rights(exp, index.right_extensions(prepend(a, generator)),
                         index.right_extensions(prepend(b, generator)));
}

} // namespace detail

/// The maximal-factor families: pairs (0,a) and (0,z) from 0^{t_1-1} below
/// depth m, the chain through 0^t m phi^m(0^{t_1-1}) phi^m(1)(m+1)^{-1}
/// unless the expansion is affine, and the corresponding t_1 = 1 families
/// from 0. Members are confirmed against the index where it is deep enough.
inline std::vector<MaximalRecord> maximal_factors(const ParryExpansion& exp, std::size_t k_max,
                                                  const LanguageIndex& index) {
    exp.require_non_simple("maximal_factors");
    const DerivedParams params = derive_params(exp);
    const std::size_t m = exp.m();
    const std::size_t p = exp.p();
    const std::size_t q = exp.alphabet_size();
    const Word gen = maximal_generator(exp);
    const Letter z = params.z_star;
    const long k0 = params.k0;
    std::vector<MaximalRecord> out;

    auto emit = [&](Letter a, Letter b, std::size_t k, const std::string& family, bool claimed) {
        const auto rights = detail::chain_rights(exp, index, gen, a, b);
        if (!rights) return;
        MaximalRecord rec = kth_max_f_image(exp, gen, a, b, rights->first, rights->second, k);
        rec.family = family;
        rec.claimed = claimed;
        detail::confirm(rec, index);
        out.push_back(std::move(rec));
    };

    const bool affine = m == 1 && params.k0_infinite();
    if (exp.t(1) > 1) {
        for (Letter a = 1; a < q; ++a) {
            if (a == z) continue;
            for (std::size_t k = 0; k < m && k <= k_max; ++k) emit(0, a, k, "zero-a", true);
        }
        for (long k = std::max<long>(k0 + 1, 0); !params.k0_infinite() && k < static_cast<long>(m) &&
                                                 k <= static_cast<long>(k_max);
             ++k)
            emit(0, z, static_cast<std::size_t>(k), "zero-z", true);
        if (!affine)
            for (std::size_t k = 0; k <= k_max; ++k) emit(0, static_cast<Letter>(p), m + k, "top", true);
    } else {
        const std::size_t l0 = params.ell0;
        for (std::size_t a = l0 + 1; a + l0 < q; ++a) {
            if (a == z) continue;
            for (std::size_t k = 0; k + l0 < m && k <= k_max; ++k)
                emit(static_cast<Letter>(l0), static_cast<Letter>(a + l0), k, "ell0-a", true);
        }
        if (!params.k0_infinite() && k0 >= static_cast<long>(l0) && z + l0 < q)
            for (std::size_t k = static_cast<std::size_t>(k0) - l0; k + l0 <= m && k <= k_max; ++k)
                emit(static_cast<Letter>(l0), static_cast<Letter>(z + l0), k, "ell0-z", k + l0 < m);
        if (!affine)
            for (std::size_t k = 0; k <= k_max; ++k)
                emit(static_cast<Letter>(l0), static_cast<Letter>(l0 + p), m - l0 + k, "top", true);
    }
    return out;
}

struct InventoryReport {
    std::size_t checked = 0;
    std::vector<Word> uncovered;
    bool ok() const noexcept { return uncovered.empty(); }
};

/// Starting words of the max-f-image chains. The generator alone when
/// ell_0 < m; with t_1 = 1 and m = 1 the threshold ell_0 reaches m and the
/// bispecial candidates 0^t m 0^q, 0 <= q <= t_1, are added.
inline std::vector<Word> chain_generators(const ParryExpansion& exp, bool base_only = false) {
    std::vector<Word> out{maximal_generator(exp)};
    const DerivedParams params = derive_params(exp);
    if (base_only || params.ell0 < exp.m()) return out;
    for (Digit q = 0; q <= exp.t(1); ++q) {
        Word w = repeat_letter(0, params.t);
        w.push_back(static_cast<Letter>(exp.m()));
        w.insert(w.end(), q, Letter{0});
        out.push_back(std::move(w));
    }
    return out;
}

/// Every LS factor of length 1..max_len must be a prefix of a listed branch or
/// of a max-f-image chain member started from a chain generator with some
/// pair of its left extensions.
inline InventoryReport check_ls_inventory(const ParryExpansion& exp, const LanguageIndex& index, std::size_t max_len,
                                          bool base_only = false) {
    exp.require_non_simple("check_ls_inventory");
    if (max_len >= index.max_n()) throw Error(ErrorCode::OutOfRange, "inventory length must be below maxN");
    const Substitution sub = canonical_substitution(exp);
    std::vector<Word> heads;
    for (const BranchSpec& spec : branch_list(exp)) heads.push_back(branch_prefix(sub, spec, max_len));

    std::size_t depth = 0;
    for (std::size_t len = 1; len <= max_len; len = power_image(sub, 0, depth).size()) ++depth;
    depth += 2 * exp.alphabet_size() + 2;
    for (const Word& gen : chain_generators(exp, base_only)) {
        if (!index.contains(gen)) continue;
        const LetterSet left = index.left_extensions(gen);
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = i + 1; j < left.size(); ++j) {
                const auto rights = detail::chain_rights(exp, index, gen, left[i], left[j]);
                if (!rights) continue;
                for (std::size_t k = 0; k <= depth; ++k)
                    heads.push_back(kth_max_f_image_prefix(exp, sub, gen, LetterPair(left[i], left[j]),
                                                           rights->first, rights->second, k, max_len));
            }
    }

    InventoryReport report;
    for (std::size_t n = 1; n <= max_len; ++n)
        for (const SpecialFactor& ls : special_factors(index, n, Side::Left)) {
            ++report.checked;
            const bool covered = std::any_of(heads.begin(), heads.end(),
                                             [&](const Word& h) { return is_prefix(ls.factor, h); });
            if (!covered) report.uncovered.push_back(ls.factor);
        }
    return report;
}

struct AffinePrediction {
    bool affine = false;
    std::size_t slope = 0;
    /// "pn+1" with p filled in, empty when not affine.
    std::string complexity;
};

/// Affine iff d_beta(1) = t_1 (0...0 (t_1 - 1))^omega, then C(n) = pn + 1.
inline AffinePrediction affine_predicate(const ParryExpansion& exp) {
    exp.require_non_simple("affine_predicate");
    AffinePrediction out;
    const std::size_t p = exp.p();
    bool match = exp.m() == 1 && exp.t(1) >= 2;
    for (std::size_t i = 0; i + 1 < p && match; ++i) match = exp.period()[i] == 0;
    match = match && exp.period()[p - 1] == exp.t(1) - 1;
    if (match) {
        out.affine = true;
        out.slope = p;
        out.complexity = (p == 1 ? std::string() : std::to_string(p)) + "n+1";
    }
    return out;
}

enum class WordClass { Sturmian, ArnouxRauzy, AffineOther, General };

struct Classification {
    WordClass kind = WordClass::General;
    /// Order of an Arnoux-Rauzy word.
    std::size_t order = 0;

    std::string to_string() const {
        switch (kind) {
        case WordClass::Sturmian: return "STURMIAN";
        case WordClass::ArnouxRauzy: return "ARNOUX_RAUZY(" + std::to_string(order) + ")";
        case WordClass::AffineOther: return "AFFINE_OTHER";
        case WordClass::General: return "GENERAL";
        }
        return "GENERAL";
    }
};

/// Condition (iii) for a simple expansion: t_m = 1 and every rotation
/// t_i ... t_{m-1} t_1 ... t_{i-1} is at most t_1 ... t_{m-1}.
inline bool simple_affine_condition(const ParryExpansion& exp) {
    if (!exp.simple()) throw Error(ErrorCode::OutOfRange, "condition (iii) is for simple expansions");
    const std::size_t m = exp.m();
    if (exp.t(m) != 1) return false;
    Digits head(exp.preperiod().begin(), exp.preperiod().end() - 1);
    for (std::size_t i = 1; i < head.size(); ++i) {
        Digits rotated(head.begin() + static_cast<std::ptrdiff_t>(i), head.end());
        rotated.insert(rotated.end(), head.begin(), head.begin() + static_cast<std::ptrdiff_t>(i));
        if (rotated > head) return false;
    }
    return true;
}

inline Classification classify_word(const ParryExpansion& exp) {
    Classification out;
    const std::size_t m = exp.m();
    if (exp.simple()) {
        bool flat = true;
        for (std::size_t i = 2; i < m && flat; ++i) flat = exp.t(i) == exp.t(1);
        if (m == 2 && exp.t(2) == 1)
            out.kind = WordClass::Sturmian;
        else if (m >= 3 && flat && exp.t(m) == 1) {
            out.kind = WordClass::ArnouxRauzy;
            out.order = m;
        } else if (simple_affine_condition(exp))
            out.kind = WordClass::AffineOther;
        return out;
    }
    if (m == 1 && exp.p() == 1 && exp.t(2) + 1 == exp.t(1))
        out.kind = WordClass::Sturmian;
    else if (affine_predicate(exp).affine)
        out.kind = WordClass::AffineOther;
    return out;
}

struct SimpleCheckReport {
    std::vector<std::size_t> bound_violations;
    bool affine_condition = false;
    std::vector<std::size_t> affine_violations;
    bool ok() const noexcept { return bound_violations.empty() && affine_violations.empty(); }
};

/// (m-1)n + 1 <= C(n) <= mn for 1 <= n <= maxN, and C(n) = (m-1)n + 1 when
/// condition (iii) holds.
inline SimpleCheckReport simple_parry_checks(const ParryExpansion& exp, const LanguageIndex& index) {
    if (!exp.simple()) throw Error(ErrorCode::OutOfRange, "simple_parry_checks needs a simple expansion");
    SimpleCheckReport report;
    const std::size_t m = exp.m();
    report.affine_condition = simple_affine_condition(exp);
    for (std::size_t n = 1; n <= index.max_n(); ++n) {
        const std::size_t c = complexity(index, n);
        if (c < (m - 1) * n + 1 || c > m * n) report.bound_violations.push_back(n);
        if (report.affine_condition && c != (m - 1) * n + 1) report.affine_violations.push_back(n);
    }
    return report;
}

} // namespace parryword
