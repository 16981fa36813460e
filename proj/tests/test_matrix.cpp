#include <gtest/gtest.h>

#include "oracle.hpp"
#include "thimble/matrix.hpp"
#include "thimble/random.hpp"
#include "thimble/signature.hpp"

using namespace thimble;

TEST(IntMatrix, BoundsAreChecked)
{
    IntMatrix m(2, 3);
    EXPECT_NO_THROW(m(1, 2));
    EXPECT_THROW(m(2, 0), std::out_of_range);
    EXPECT_THROW(m(0, 3), std::out_of_range);
}

TEST(IntMatrix, NoTruncationAtLargeMagnitude)
{
    IntMatrix m{{1, 0}, {0, 1}};
    m(0, 0) = Integer("123456789012345678901234567890");
    const IntMatrix sq = m * m;
    EXPECT_EQ(sq(0, 0), Integer("15241578753238836750495351562536198787501905199875019052100"));
}

TEST(IntMatrix, ProductFollowsColumnsAreImages)
{
    // T e_1 = f_1 + 2 f_2, so column 0 is (1, 2).
    const IntMatrix t{{1, 0}, {2, 1}};
    IntMatrix e1(2, 1);
    e1(0, 0) = 1;
    const IntMatrix image = t * e1;
    EXPECT_EQ(image(0, 0), 1);
    EXPECT_EQ(image(1, 0), 2);
}

TEST(IntMatrix, CompactText)
{
    EXPECT_EQ((IntMatrix{{-1, 1}, {0, -1}}).to_string(), "[[-1,1],[0,-1]]");
    EXPECT_EQ(IntMatrix().to_string(), "[]");
}

TEST(Determinant, Examples)
{
    EXPECT_EQ(det(IntMatrix{{-1, 1}, {0, -1}}), 1);
    EXPECT_EQ(det(IntMatrix{{2, -1}, {-1, 2}}), 3);
    EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(det(IntMatrix()), 1);
}

TEST(Determinant, NeedsPivotSwap)
{
    EXPECT_EQ(det(IntMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
    EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(UnimodularInverse, TriangularExample)
{
    EXPECT_EQ(unimodular_inverse(IntMatrix{{-1, 1}, {0, -1}}), (IntMatrix{{-1, -1}, {0, -1}}));
}

TEST(UnimodularInverse, RejectsNonUnimodular)
{
    EXPECT_THROW(unimodular_inverse(IntMatrix{{2, -1}, {-1, 2}}), Error);
    EXPECT_THROW(unimodular_inverse(IntMatrix{{1, 2}}), Error);
}

TEST(UnimodularInverse, RandomUnimodularRoundTrip)
{
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
        // product of elementary matrices and sign flips
        IntMatrix p = IntMatrix::identity(n);
        for (int k = 0; k < 8; ++k) {
            IntMatrix e = IntMatrix::identity(n);
            const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
            const auto c = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
            if (r == c)
                e(r, r) = -1;
            else
                e(r, c) = rng.uniform(-3, 3);
            p = p * e;
        }
        const Integer d = det(p);
        ASSERT_TRUE(d == 1 || d == -1);
        EXPECT_TRUE((p * unimodular_inverse(p)).is_identity());
        EXPECT_TRUE((unimodular_inverse(p) * p).is_identity());
    }
}

TEST(FirstMismatch, LocatesEntry)
{
    const auto m = first_mismatch(IntMatrix{{1, 2}, {3, 4}}, IntMatrix{{1, 2}, {3, 5}});
    ASSERT_TRUE(m);
    EXPECT_EQ(m->row, 1u);
    EXPECT_EQ(m->col, 1u);
    EXPECT_EQ(m->describe(), "entry (1,1): expected 4, got 5");
    EXPECT_FALSE(first_mismatch(IntMatrix{{1}}, IntMatrix{{1}}));
}

TEST(Signature, Examples)
{
    EXPECT_EQ(exact_signature(IntMatrix{{1, 0}, {0, 1}}), (Signature{2, 0, 0}));
    EXPECT_EQ(exact_signature(IntMatrix{{0, 1}, {1, 0}}), (Signature{1, 1, 0}));
    for (long long a = -5; a <= 5; ++a)
        EXPECT_EQ(exact_signature(IntMatrix{{a, 1}, {1, 0}}), (Signature{1, 1, 0})) << "a=" << a;
}

TEST(Signature, DegenerateFormsReportKernel)
{
    EXPECT_EQ(exact_signature(IntMatrix{{5, 0, 0}, {0, -2, 0}, {0, 0, 0}}), (Signature{1, 1, 1}));
    EXPECT_EQ(exact_signature(IntMatrix(3, 3)), (Signature{0, 0, 3}));
    EXPECT_EQ(exact_signature(IntMatrix{{1, 1}, {1, 1}}), (Signature{1, 0, 1}));
    EXPECT_EQ(exact_signature(IntMatrix()), (Signature{0, 0, 0}));
}

TEST(Signature, ZeroDiagonalNeedsHyperbolicPivot)
{
    const IntMatrix m{{0, 2, 0}, {2, 0, 1}, {0, 1, 0}};
    EXPECT_EQ(exact_signature(m), oracle::float_signature(m));
    EXPECT_EQ(exact_signature(m), (Signature{1, 1, 1}));
}

TEST(Signature, RejectsNonSymmetric)
{
    EXPECT_THROW(exact_signature(IntMatrix{{1, 2}, {3, 4}}), Error);
    EXPECT_THROW(exact_signature(IntMatrix{{1, 2}}), Error);
}

TEST(Signature, SylvesterLawUnderRandomCongruence)
{
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
        IntMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c)
                m(r, c) = m(c, r) = rng.uniform(-4, 4);
        IntMatrix p = IntMatrix::identity(n);
        for (int k = 0; k < 6; ++k) {
            const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
            const auto c = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
            IntMatrix e = IntMatrix::identity(n);
            if (r == c)
                e(r, r) = -1;
            else
                e(r, c) = rng.uniform(-2, 2);
            p = p * e;
        }
        EXPECT_EQ(exact_signature(p.transpose() * m * p), exact_signature(m));
    }
}

TEST(Signature, LargeEntriesStayExact)
{
    // det = 10^40 - 1 > 0 and positive trace: positive definite, far past 64 bits
    IntMatrix m(2, 2);
    m(0, 0) = Integer("100000000000000000000");
    m(1, 1) = Integer("100000000000000000000");
    m(0, 1) = m(1, 0) = 1;
    EXPECT_EQ(exact_signature(m), (Signature{2, 0, 0}));
}
