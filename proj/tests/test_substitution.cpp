#include <gtest/gtest.h>

#include "parryword/substitution.hpp"
#include "support.hpp"

using namespace parryword;
using testsupport::example_substitution;
using testsupport::fibonacci;
using testsupport::one_based;

TEST(CanonicalSubstitution, SpecInstances) {
    EXPECT_EQ(canonical_substitution(validate({1, 1}, {})).to_string(), "0>01;1>0");
    EXPECT_EQ(canonical_substitution(validate({2}, {0, 1})).to_string(), "0>001;1>2;2>01");
    EXPECT_EQ(canonical_substitution(validate({1, 1, 1}, {})).to_string(), "0>01;1>02;2>0");
}

TEST(SubstitutionText, ParseAndRender) {
    const auto sub = parse_substitution("1>2; 0>001 ;2>01");
    EXPECT_EQ(sub.to_string(), "0>001;1>2;2>01");
    EXPECT_THROW(parse_substitution("0>01;0>1"), Error);
    EXPECT_THROW(parse_substitution("0>02"), Error);
    EXPECT_THROW(parse_substitution("0>"), Error);
    EXPECT_THROW(Substitution({Word{}}), Error);
}

TEST(Apply, Basics) {
    EXPECT_EQ(fibonacci().apply(Word{0}), (Word{0, 1}));
    EXPECT_EQ(example_substitution().apply(one_based("1")), one_based("1211"));
    EXPECT_EQ(fibonacci().apply(Word{}), Word{});
    try {
        fibonacci().apply(Word{2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LetterOutOfRange);
    }
}

TEST(FixedPointPrefix, SpecInstances) {
    EXPECT_EQ(fixed_point_prefix(fibonacci(), 0, 10).letters, (Word{0, 1, 0, 0, 1, 0, 1, 0, 0, 1}));
    EXPECT_EQ(fixed_point_prefix(example_substitution(), 0, 4).letters, one_based("1211"));
    const auto sub = canonical_substitution(validate({2}, {0, 1}));
    const auto prefix = fixed_point_prefix(sub, 0, 7);
    // phi^2(0) = phi(0) phi(0) phi(1) = 001 001 2
    EXPECT_EQ(prefix.letters, (Word{0, 0, 1, 0, 0, 1, 2}));
    EXPECT_TRUE(prefix.guaranteed_prefix);
    EXPECT_EQ(prefix.seed, 0u);
    try {
        fixed_point_prefix(fibonacci(), 1, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotProlongable);
    }
}

TEST(FixedPointPrefix, AgreesWithIteratedImages) {
    for (const auto& sub : {fibonacci(), example_substitution(), canonical_substitution(validate({2}, {0, 1}))}) {
        const Word iterated = apply_power(sub, Word{0}, 9);
        const auto prefix = fixed_point_prefix(sub, 0, iterated.size());
        EXPECT_EQ(prefix.letters, iterated);
    }
}

TEST(PrefixStability, IteratesAreNested) {
    std::vector<std::pair<Substitution, Letter>> cases{{fibonacci(), 0}, {example_substitution(), 0},
                                                       {example_substitution(), 3}, {example_substitution(), 4}};
    for (const auto& exp : testsupport::random_non_simple(5, 2, 3, 3, 3)) cases.emplace_back(canonical_substitution(exp), 0);
    for (const auto& [sub, seed] : cases) {
        Word prev{seed};
        for (int n = 1; n <= 12; ++n) {
            Word next = truncated_power(sub, Word{seed}, static_cast<std::size_t>(n), 200000);
            EXPECT_TRUE(is_prefix(prev, next));
            prev = std::move(next);
        }
    }
}

TEST(TruncatedPower, IsPrefixOfFullPower) {
    const auto sub = example_substitution();
    for (Letter a = 0; a < 5; ++a)
        for (std::size_t n = 0; n < 6; ++n) {
            const Word full = power_image(sub, a, n);
            const Word cut = truncated_power(sub, Word{a}, n, 17);
            EXPECT_EQ(cut, Word(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(17, full.size()))));
        }
}

TEST(Primitive, Examples) {
    EXPECT_TRUE(is_primitive(fibonacci()));
    EXPECT_FALSE(is_primitive(parse_substitution("0>01;1>1")));
    EXPECT_TRUE(is_primitive(example_substitution()));
    EXPECT_TRUE(is_primitive(parse_substitution("0>0")));
    EXPECT_FALSE(is_primitive(parse_substitution("0>1;1>0")));
}

TEST(Injective, Examples) {
    EXPECT_FALSE(is_injective(parse_substitution("0>01;1>0;2>1")));
    EXPECT_TRUE(is_injective(fibonacci()));
    EXPECT_TRUE(is_injective(example_substitution()));
    EXPECT_FALSE(is_injective(parse_substitution("0>0;1>0")));
    // {01, 0, 10}: 0|10 = 01|0, not uniquely decodable
    EXPECT_FALSE(is_injective(parse_substitution("0>01;1>0;2>10")));
}

namespace {

/// Unique decodability by brute force: no two distinct letter words of
/// length <= 6 map to the same image.
bool brute_injective(const Substitution& sub) {
    std::map<Word, Word> seen;
    const std::size_t q = sub.alphabet_size();
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= 6; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Letter a = 0; a < q; ++a) {
                Word x = w;
                x.push_back(a);
                auto [it, inserted] = seen.emplace(sub.apply(x), x);
                if (!inserted) return false;
                next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    return true;
}

} // namespace

TEST(InjectiveProperty, AgreesWithBruteForceOnSmallCodes) {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<Letter> letter(0, 1);
    int disagreements = 0;
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Word> images(3);
        for (auto& img : images) {
            img.resize(static_cast<std::size_t>(len(rng)));
            for (auto& a : img) a = letter(rng);
        }
        const Substitution sub(images);
        // brute force can only refute; a code that passes both must agree
        if (!brute_injective(sub)) {
            EXPECT_FALSE(is_injective(sub)) << sub.to_string();
        } else {
            disagreements += !is_injective(sub);
        }
    }
    // a non-injective code over 3 words of length <= 3 collides on words of length <= 6
    EXPECT_EQ(disagreements, 0);
}

TEST(PeriodicPoints, Examples) {
    const std::vector<PeriodicPoint> expected{{0, 1}, {3, 1}, {4, 1}, {1, 2}, {2, 2}};
    EXPECT_EQ(periodic_points(example_substitution(), 2), expected);
    EXPECT_EQ(periodic_points(fibonacci(), 4), (std::vector<PeriodicPoint>{{0, 1}}));
    EXPECT_EQ(periodic_points(canonical_substitution(validate({2}, {0, 1})), 4),
              (std::vector<PeriodicPoint>{{0, 1}}));
}

TEST(PowerImage, Examples) {
    const auto sub = canonical_substitution(validate({2}, {0, 1}));
    EXPECT_EQ(power_image(sub, 1, 0), (Word{1}));
    EXPECT_EQ(power_image(sub, 1, 1), (Word{2}));
    EXPECT_EQ(power_image(sub, 2, 2), (Word{0, 0, 1, 2}));
    EXPECT_EQ(power(sub, 2).image(2), (Word{0, 0, 1, 2}));
}

TEST(PowerImage, ClosedFormMatchesIteration) {
    auto exps = testsupport::random_non_simple(20, 13, 4, 3, 3);
    exps.push_back(validate({2}, {0, 1}));
    for (const auto& exp : exps) {
        const auto sub = canonical_substitution(exp);
        for (Letter k = 0; k < exp.alphabet_size(); ++k)
            for (std::size_t n = 0; n <= 6; ++n)
                EXPECT_EQ(power_image_closed_form(exp, k, n), power_image(sub, k, n)) << exp.to_string();
    }
}

TEST(CanonicalProperty, PrimitiveAndInjective) {
    for (const auto& exp : testsupport::random_non_simple(50, 17, 4, 3, 3)) {
        const auto sub = canonical_substitution(exp);
        EXPECT_TRUE(is_primitive(sub)) << exp.to_string();
        EXPECT_TRUE(is_injective(sub)) << exp.to_string();
    }
}

TEST(LengthGrowth, StrictlyIncreasingAfterAlphabetSize) {
    std::vector<Substitution> subs{fibonacci(), example_substitution()};
    for (const auto& exp : testsupport::random_non_simple(10, 19, 3, 3, 3)) subs.push_back(canonical_substitution(exp));
    for (const auto& sub : subs) {
        const std::size_t q = sub.alphabet_size();
        for (Letter a = 0; a < q; ++a) {
            std::size_t prev = power_image(sub, a, q).size();
            for (std::size_t n = q + 1; n <= q + 6; ++n) {
                const std::size_t cur = power_image(sub, a, n).size();
                EXPECT_LT(prev, cur);
                prev = cur;
            }
        }
    }
}
