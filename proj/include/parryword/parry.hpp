#pragma once

// Rényi expansions of unity for Parry numbers: validation, numeric base,
// greedy digits, derived combinatorial parameters and beta-integer gaps.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/word.hpp"

namespace parryword {

using Digit = std::uint32_t;
using Digits = std::vector<Digit>;
using Real = long double;

inline constexpr Real kDefaultTolerance = 1e-12L;

class ParryExpansion;
ParryExpansion validate(Digits preperiod, Digits period);

/// d_beta(1) = t_1 ... t_m (t_{m+1} ... t_{m+p})^omega, canonical and valid.
/// Only `validate` constructs instances.
class ParryExpansion {
public:
    const Digits& preperiod() const noexcept { return preperiod_; }
    const Digits& period() const noexcept { return period_; }
    std::size_t m() const noexcept { return preperiod_.size(); }
    std::size_t p() const noexcept { return period_.size(); }
    bool simple() const noexcept { return period_.empty(); }

    /// Letters of the canonical substitution: m (simple) or m + p.
    std::size_t alphabet_size() const noexcept { return m() + p(); }

    /// t_i of the infinite sequence, 1-based; zero past t_m when simple.
    Digit t(std::size_t i) const {
        if (i == 0) throw Error(ErrorCode::OutOfRange, "digit index is 1-based");
        if (i <= m()) return preperiod_[i - 1];
        if (simple()) return 0;
        return period_[(i - m() - 1) % p()];
    }

    /// k (+) l: the letter reached from k after l steps along the canonical
    /// substitution's last-letter cycle.
    Letter oplus(std::size_t k, std::size_t l) const {
        require_non_simple("oplus");
        const std::size_t sum = k + l;
        if (sum < m() + p()) return static_cast<Letter>(sum);
        return static_cast<Letter>(m() + (sum - m()) % p());
    }

    /// t_{k (+) l}, defined for k + l > 0.
    Digit t_oplus(std::size_t k, std::size_t l) const {
        require_non_simple("t_oplus");
        const std::size_t sum = k + l;
        if (sum == 0) throw Error(ErrorCode::OutOfRange, "t_oplus needs k + l > 0");
        if (sum < m() + p() + 1) return t(sum);
        return t(m() + 1 + (sum - m() - 1) % p());
    }

    std::string to_string() const {
        std::string out = parryword::to_string(Word(preperiod_.begin(), preperiod_.end()));
        if (!simple())
            out += "(" + parryword::to_string(Word(period_.begin(), period_.end())) + ")";
        return out;
    }

    friend bool operator==(const ParryExpansion&, const ParryExpansion&) = default;

    /// Throws SimpleExpansion when there is no period.
    void require_non_simple(const char* what) const {
        if (simple())
            throw Error(ErrorCode::SimpleExpansion, std::string(what) + " needs a period");
    }

private:
    ParryExpansion(Digits preperiod, Digits period)
        : preperiod_(std::move(preperiod)), period_(std::move(period)) {}

    Digits preperiod_;
    Digits period_;

    friend ParryExpansion validate(Digits preperiod, Digits period);
};

namespace detail {

/// Digit i (1-based) of an eventually periodic sequence given as raw parts.
inline Digit raw_digit(const Digits& pre, const Digits& per, std::size_t i) {
    if (i <= pre.size()) return pre[i - 1];
    if (per.empty()) return 0;
    return per[(i - pre.size() - 1) % per.size()];
}

inline std::size_t minimal_period(const Digits& period) {
    const std::size_t p = period.size();
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < p && repeats; ++i) repeats = period[i] == period[i % d];
        if (repeats) return d;
    }
    return p;
}

} // namespace detail

/// Canonicalizes and checks an expansion. The period is shrunk to its
/// minimal length, trailing preperiod digits equal to the period's last
/// digit are rotated into the period, and trailing zeros of a finite
/// expansion are dropped. Then every shift t_j t_{j+1}... (j >= 2) must be
/// strictly smaller than t_1 t_2 ...; for eventually periodic sequences
/// shifts j <= m + p compared over m + 2p + 1 positions decide this.
inline ParryExpansion validate(Digits preperiod, Digits period) {
    if (!period.empty()) {
        if (std::all_of(period.begin(), period.end(), [](Digit d) { return d == 0; }))
            throw Error(ErrorCode::AllZeroPeriod, "period consists of zeros only");
        period.resize(detail::minimal_period(period));
    } else {
        while (!preperiod.empty() && preperiod.back() == 0) preperiod.pop_back();
    }
    if (preperiod.empty() || preperiod.front() == 0)
        throw Error(ErrorCode::ZeroLeadDigit, "t_1 must be at least 1");

    while (!period.empty() && preperiod.size() > 1 && preperiod.back() == period.back()) {
        period.insert(period.begin(), period.back());
        period.pop_back();
        preperiod.pop_back();
    }

    const std::size_t m = preperiod.size();
    const std::size_t p = period.size();
    const std::size_t last_shift = p == 0 ? m : m + p;
    const std::size_t horizon = p == 0 ? m : m + 2 * p + 1;
    for (std::size_t j = 2; j <= last_shift; ++j) {
        int cmp = 0;
        for (std::size_t i = 0; i < horizon && cmp == 0; ++i) {
            const Digit shifted = detail::raw_digit(preperiod, period, j + i);
            const Digit base = detail::raw_digit(preperiod, period, 1 + i);
            cmp = shifted < base ? -1 : (shifted > base ? 1 : 0);
        }
        if (cmp >= 0)
            throw Error(ErrorCode::ParryConditionViolated,
                        "shift j=" + std::to_string(j) + " is not smaller than the sequence",
                        static_cast<long>(j));
    }
    if (p == 0 && m == 1 && preperiod[0] == 1)
        throw Error(ErrorCode::BetaNotGreaterThanOne, "d(1) = 1 gives beta = 1");
    return ParryExpansion(std::move(preperiod), std::move(period));
}

/// Text form: comma-separated digits, period in parentheses: "2(0,1)",
/// "1,1", "3,0,1(2,0)".
inline ParryExpansion parse_expansion(std::string_view text) {
    text = trim(text);
    const auto open = text.find('(');
    Digits pre;
    Digits per;
    auto parse_list = [](std::string_view list) {
        Digits out;
        list = trim(list);
        if (list.empty()) return out;
        std::size_t start = 0;
        while (true) {
            const auto comma = list.find(',', start);
            out.push_back(parse_unsigned(list.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return out;
    };
    if (open == std::string_view::npos) {
        pre = parse_list(text);
    } else {
        const auto close = text.find(')', open);
        if (close == std::string_view::npos || close + 1 != text.size())
            throw Error(ErrorCode::Parse, "period must be closed by ')' at the end");
        pre = parse_list(text.substr(0, open));
        per = parse_list(text.substr(open + 1, close - open - 1));
        if (per.empty()) throw Error(ErrorCode::Parse, "empty period");
    }
    if (pre.empty()) throw Error(ErrorCode::Parse, "empty preperiod");
    return validate(std::move(pre), std::move(per));
}

// ---------------------------------------------------------------------------
// Numerics

namespace detail {

/// Sum_{j=1..p} t_{m+j} x^{-j} / (1 - x^{-p}): the periodic tail after t_m,
/// scaled so that the first period digit has weight x^{-1}.
inline Real periodic_tail(const ParryExpansion& exp, Real x, std::size_t rotation = 0) {
    if (exp.simple()) return 0;
    const std::size_t p = exp.p();
    Real sum = 0;
    Real w = 1;
    for (std::size_t j = 0; j < p; ++j) {
        w /= x;
        sum += static_cast<Real>(exp.period()[(rotation + j) % p]) * w;
    }
    return sum / (1 - w);
}

/// Sum_{k>=1} t_{k+i} x^{-k}.
inline Real shifted_value(const ParryExpansion& exp, Real x, std::size_t i) {
    const std::size_t m = exp.m();
    if (i >= m) return detail::periodic_tail(exp, x, i - m);
    Real sum = 0;
    Real w = 1;
    for (std::size_t k = i + 1; k <= m; ++k) {
        w /= x;
        sum += static_cast<Real>(exp.t(k)) * w;
    }
    return sum + w * detail::periodic_tail(exp, x);
}

} // namespace detail

/// The Parry number beta: the root in (1, t_1 + 1] of 1 = Sum t_i beta^{-i},
/// isolated by bisection (the sum is strictly decreasing in beta).
inline Real beta_value(const ParryExpansion& exp, Real tol = kDefaultTolerance) {
    Real lo = 1;
    Real hi = static_cast<Real>(exp.t(1)) + 1;
    for (int iter = 0; iter < 400 && hi - lo > 0; ++iter) {
        const Real mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (detail::shifted_value(exp, mid, 0) > 1)
            lo = mid;
        else
            hi = mid;
    }
    const Real beta = lo + (hi - lo) / 2;
    if (!(std::fabs(1 - detail::shifted_value(exp, beta, 0)) < tol))
        throw Error(ErrorCode::NoConvergence, "bisection did not reach the tolerance");
    return beta;
}

struct RenyiDigit {
    Digit digit;
    bool unsafe;
};

/// x_i = floor(beta T^{i-1}(1)). A digit is UNSAFE when its fractional part
/// lies within the guard band of 0 or 1; the band widens with the propagated
/// error bound, and once a digit is unsafe every later digit is too.
/// Fractional parts inside the band are snapped to the nearest integer.
inline std::vector<RenyiDigit> renyi_digits(Real beta, std::size_t count,
                                            Real guard = kDefaultTolerance,
                                            std::optional<Real> beta_error = std::nullopt) {
    if (!(beta > 1)) throw Error(ErrorCode::OutOfRange, "beta must exceed 1");
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real dbeta = beta_error.value_or(16 * eps * beta);
    std::vector<RenyiDigit> out;
    out.reserve(count);
    Real x = 1;
    Real err = 0;
    bool sticky = false;
    for (std::size_t i = 0; i < count; ++i) {
        const Real y = beta * x;
        err = beta * err + x * dbeta + 4 * eps * y;
        Real whole = std::floor(y);
        Real frac = y - whole;
        const Real band = std::max(guard, err);
        bool unsafe = sticky;
        if (frac < band) {
            frac = 0;
            unsafe = true;
        } else if (frac > 1 - band) {
            whole += 1;
            frac = 0;
            unsafe = true;
        }
        sticky = unsafe;
        out.push_back({static_cast<Digit>(whole), unsafe});
        x = frac;
    }
    return out;
}

/// Gap lengths Delta_i = Sum_{k>=1} t_{k+i} beta^{-k}, i = 0 .. m+p-1
/// (i = 0 .. m-1 when simple). Delta_0 = 1.
inline std::vector<Real> gap_lengths(const ParryExpansion& exp, Real tol = kDefaultTolerance) {
    const Real beta = beta_value(exp, tol);
    std::vector<Real> out;
    for (std::size_t i = 0; i < exp.alphabet_size(); ++i)
        out.push_back(detail::shifted_value(exp, beta, i));
    return out;
}

// ---------------------------------------------------------------------------
// Beta-integers

/// The admissibility automaton of the beta-shift: state i means the digits
/// read so far end with the first i digits of d*(1) (the quasi-greedy
/// expansion). The state after writing a beta-integer is the index of the
/// gap Delta_i that follows it.
class AdmissibilityAutomaton {
public:
    explicit AdmissibilityAutomaton(const ParryExpansion& exp) {
        const std::size_t states = exp.alphabet_size();
        bound_.resize(states);
        next_.resize(states);
        for (std::size_t i = 0; i < states; ++i) {
            bound_[i] = exp.t(i + 1);
            next_[i] = i + 1 < states ? i + 1 : (exp.simple() ? 0 : exp.m());
        }
        if (exp.simple()) bound_.back() -= 1;
    }

    std::size_t states() const noexcept { return bound_.size(); }
    Digit bound(std::size_t state) const { return bound_[state]; }

    /// Successor state, or nullopt when the digit is not admissible.
    std::optional<std::size_t> step(std::size_t state, Digit digit) const {
        if (digit < bound_[state]) return 0;
        if (digit == bound_[state]) return next_[state];
        return std::nullopt;
    }

private:
    std::vector<Digit> bound_;
    std::vector<std::size_t> next_;
};

/// Reads the gaps between the first count + 1 non-negative beta-integers
/// and returns their indices. Beta-integers are enumerated as admissible
/// digit strings of a fixed width in lexicographic (= numeric) order.
inline Word beta_integer_word(const ParryExpansion& exp, std::size_t count) {
    if (count == 0) return {};
    const AdmissibilityAutomaton automaton(exp);
    const std::size_t states = automaton.states();
    const std::uint64_t needed = static_cast<std::uint64_t>(count) + 1;

    // words[s] = number of admissible continuations of the current width.
    std::vector<std::uint64_t> words(states, 1);
    std::size_t width = 0;
    while (words[0] < needed) {
        std::vector<std::uint64_t> wider(states, 0);
        for (std::size_t s = 0; s < states; ++s)
            for (Digit a = 0; a <= automaton.bound(s); ++a)
                if (auto nx = automaton.step(s, a)) wider[s] += words[*nx];
        words = std::move(wider);
        if (++width > 4096)
            throw Error(ErrorCode::PrecisionExhausted, "beta-integer enumeration width exhausted");
    }

    struct Frame {
        std::size_t state;
        Digit digit;
    };
    Word gaps;
    gaps.reserve(count);
    std::vector<Frame> stack;
    stack.push_back({0, 0});
    while (!stack.empty() && gaps.size() < count) {
        Frame& top = stack.back();
        if (stack.size() - 1 == width) {
            gaps.push_back(static_cast<Letter>(top.state));
            stack.pop_back();
            continue;
        }
        if (top.digit > automaton.bound(top.state)) {
            stack.pop_back();
            continue;
        }
        const auto next = automaton.step(top.state, top.digit++);
        stack.push_back({*next, 0});
    }
    if (gaps.size() != count)
        throw Error(ErrorCode::PrecisionExhausted, "not enough beta-integers enumerated");
    return gaps;
}

// ---------------------------------------------------------------------------
// Derived parameters

/// Sentinel for an empty threshold set; compares greater than every finite value.
inline constexpr long kInfiniteK0 = std::numeric_limits<long>::max();

struct DerivedParams {
    bool simple = false;
    Digit t = 0;
    std::map<Letter, std::uint32_t> z_table;
    std::map<Letter, std::uint32_t> y_table;
    std::uint32_t ell0 = 0;
    Letter z_star = 0;
    long k0 = -1;
    bool in_s = false;
    /// Membership by the two digit patterns, computed independently of z_star.
    bool in_s_by_pattern = false;

    bool k0_infinite() const noexcept { return k0 == kInfiniteK0; }
};

namespace detail {

inline std::uint32_t trailing_zeros(const ParryExpansion& exp, std::size_t from, std::size_t to) {
    std::uint32_t count = 0;
    for (std::size_t i = to; i >= from && i >= 1; --i) {
        if (exp.t(i) != 0) break;
        ++count;
        if (i == from) break;
    }
    return count;
}

inline bool s_membership_by_pattern(const ParryExpansion& exp) {
    const std::size_t m = exp.m();
    const std::size_t p = exp.p();
    const Digit tm = exp.t(m);
    const Digit tmp = exp.t(m + p);
    if (tm > tmp) {
        for (std::size_t i = m + 1; i < m + p; ++i)
            if (exp.t(i) != 0) return false;
        return true;
    }
    for (std::size_t q = 1; q * p < m; ++q) {
        const std::size_t head = m - q * p;
        if (exp.t(head) == 0) continue;
        bool zeros = true;
        for (std::size_t i = head + 1; i < m && zeros; ++i) zeros = exp.t(i) == 0;
        return zeros;
    }
    return false;
}

} // namespace detail

/// z(k), y(k), ell_0, t, z (the nonzero left extension of 0^t m), k_0 and
/// membership in S. Only z_table and ell0 are filled for simple expansions.
inline DerivedParams derive_params(const ParryExpansion& exp) {
    DerivedParams out;
    out.simple = exp.simple();
    const std::size_t m = exp.m();
    const std::size_t p = exp.p();
    const std::size_t top = exp.simple() ? m : m + p;

    for (std::size_t k = 1; k < top; ++k)
        out.z_table[static_cast<Letter>(k)] = detail::trailing_zeros(exp, 1, k);

    if (exp.t(1) > 1) {
        out.ell0 = 0;
    } else {
        std::uint32_t lead = 0;
        for (std::size_t i = 2; i <= m && exp.t(i) == 0; ++i) ++lead;
        out.ell0 = 1 + lead;
    }
    if (exp.simple()) return out;

    for (std::size_t k = m; k < m + p; ++k) {
        // zeros ending t_{m+1} .. t_{m+p} t_{m+1} .. t_k
        std::uint32_t zeros = k > m ? detail::trailing_zeros(exp, m + 1, k) : 0;
        if (k == m || zeros == k - m) zeros += detail::trailing_zeros(exp, m + 1, m + p);
        out.y_table[static_cast<Letter>(k)] = zeros;
    }

    const Digit tm = exp.t(m);
    const Digit tmp = exp.t(m + p);
    out.t = std::min(tm, tmp);
    if (tm < tmp)
        out.z_star = 1 + (m >= 2 ? out.z_table.at(static_cast<Letter>(m - 1)) : 0);
    else
        out.z_star = 1 + out.z_table.at(static_cast<Letter>(m + p - 1));
    out.in_s = out.z_star > 0 && out.z_star % p == 0;
    out.in_s_by_pattern = detail::s_membership_by_pattern(exp);

    // k_0: -1 unless t = t_1 - 1; otherwise the length of the common run
    // t_2 t_3 ... = t_{m(+)1} t_{m(+)2} ..., INFINITE when they never differ.
    if (out.t + 1 != exp.t(1)) {
        out.k0 = -1;
    } else {
        out.k0 = kInfiniteK0;
        for (std::size_t l = 1; l <= m + 2 * p; ++l) {
            if (exp.t(l + 1) != exp.t_oplus(m, l)) {
                out.k0 = static_cast<long>(l) - 1;
                break;
            }
        }
    }
    return out;
}

} // namespace parryword
