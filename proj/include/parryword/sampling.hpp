#pragma once

// Seeded random valid Parry expansions for batteries and property tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/parry.hpp"

namespace parryword {

/// Draws digit strings until `validate` accepts one whose canonical form has
/// not been seen before. Digits <= max_digit, m <= max_m, p in [1, max_p].
inline std::vector<ParryExpansion> random_non_simple(std::size_t count, unsigned seed, Digit max_digit,
                                                     std::size_t max_m, std::size_t max_p) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Digit> digit(0, max_digit);
    std::uniform_int_distribution<std::size_t> m_len(1, max_m);
    std::uniform_int_distribution<std::size_t> p_len(1, max_p);
    std::vector<ParryExpansion> out;
    std::set<std::string> seen;
    for (int attempt = 0; out.size() < count && attempt < 200000; ++attempt) {
        Digits pre(m_len(rng));
        Digits per(p_len(rng));
        for (auto& d : pre) d = digit(rng);
        for (auto& d : per) d = digit(rng);
        try {
            ParryExpansion exp = validate(pre, per);
            if (exp.simple() || exp.m() > max_m || exp.p() > max_p) continue;
            if (seen.insert(exp.to_string()).second) out.push_back(exp);
        } catch (const Error&) {
        }
    }
    return out;
}

/// Simple expansions with m >= 2 after canonicalization.
inline std::vector<ParryExpansion> random_simple(std::size_t count, unsigned seed, Digit max_digit,
                                                 std::size_t max_m) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<Digit> digit(0, max_digit);
    std::uniform_int_distribution<std::size_t> m_len(1, max_m);
    std::vector<ParryExpansion> out;
    std::set<std::string> seen;
    for (int attempt = 0; out.size() < count && attempt < 200000; ++attempt) {
        Digits pre(m_len(rng));
        for (auto& d : pre) d = digit(rng);
        try {
            ParryExpansion exp = validate(pre, {});
            if (exp.m() < 2) continue;
            if (seen.insert(exp.to_string()).second) out.push_back(exp);
        } catch (const Error&) {
        }
    }
    return out;
}

} // namespace parryword
