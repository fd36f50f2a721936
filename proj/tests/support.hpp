#pragma once

// Shared helpers for the test binaries: random valid expansions and
// brute-force reference computations that avoid the library's shortcuts.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/parry.hpp"
#include "parryword/sampling.hpp"
#include "parryword/substitution.hpp"

namespace testsupport {

using namespace parryword;

/// The first `length` digits of t_1 t_2 ... as written, no canonicalization.
inline Digits expand_digits(const Digits& pre, const Digits& per, std::size_t length) {
    Digits out;
    for (std::size_t i = 0; i < length; ++i) {
        if (i < pre.size())
            out.push_back(pre[i]);
        else if (per.empty())
            out.push_back(0);
        else
            out.push_back(per[(i - pre.size()) % per.size()]);
    }
    return out;
}

/// First failing shift j >= 2 of the Parry condition over a long horizon, or 0.
inline std::size_t brute_parry_failure(const Digits& pre, const Digits& per, std::size_t horizon = 400) {
    const Digits seq = expand_digits(pre, per, 2 * horizon);
    for (std::size_t j = 2; j <= horizon; ++j) {
        const auto shifted = seq.begin() + static_cast<std::ptrdiff_t>(j - 1);
        if (!std::lexicographical_compare(shifted, shifted + static_cast<std::ptrdiff_t>(horizon), seq.begin(),
                                          seq.begin() + static_cast<std::ptrdiff_t>(horizon)))
            return j;
    }
    return 0;
}

/// The example substitution 1>1211, 2>311, 3>2412, 4>435, 5>534, stored 0-based.
inline Substitution example_substitution() {
    return parse_substitution("0>0100;1>200;2>1301;3>324;4>423");
}

inline Substitution fibonacci() { return parse_substitution("0>01;1>0"); }

/// Word from 1-based compact text, e.g. "1211" -> 0,1,0,0.
inline Word one_based(const std::string& text) {
    Word out;
    for (char c : text) out.push_back(static_cast<Letter>(c - '1'));
    return out;
}

} // namespace testsupport
