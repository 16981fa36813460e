#include <gtest/gtest.h>

#include "thimble/basis_ops.hpp"
#include "thimble/random.hpp"

using namespace thimble;

namespace {

const ThimbleLattice kA2{1, IntMatrix{{2, -1}, {-1, 2}}};
const ThimbleLattice kA1{1, IntMatrix{{2}}};

IntMatrix cube(const IntMatrix& m) { return m * m * m; }

}  // namespace

TEST(PicardLefschetz, A2FirstThimble)
{
    // delta_1 -> -delta_1, delta_2 -> delta_2 + delta_1
    EXPECT_EQ(picard_lefschetz(kA2, 1), (IntMatrix{{-1, 1}, {0, 1}}));
}

TEST(PicardLefschetz, RankOne)
{
    EXPECT_EQ(picard_lefschetz(kA1, 1), (IntMatrix{{-1}}));
}

TEST(PicardLefschetz, EvenParityFixesItsThimble)
{
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const ThimbleLattice l = random_valid_lattice(rng, 4, 2 * rng.uniform(1, 3), 5);
        for (std::size_t j = 1; j <= l.rank(); ++j) {
            const IntMatrix h = picard_lefschetz(l, j);
            for (std::size_t r = 0; r < l.rank(); ++r)
                EXPECT_EQ(h(r, j - 1), r == j - 1 ? 1 : 0);
        }
    }
}

TEST(PicardLefschetz, Unimodular)
{
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
        const ThimbleLattice l = random_valid_lattice(rng, 5, rng.uniform(1, 4), 5);
        for (std::size_t j = 1; j <= l.rank(); ++j) {
            const Integer d = det(picard_lefschetz(l, j));
            EXPECT_TRUE(d == 1 || d == -1);
            EXPECT_EQ(d, minus_one_pow(l.parity()));
        }
    }
}

TEST(PicardLefschetz, IndexOutOfRange)
{
    EXPECT_THROW(picard_lefschetz(kA2, 0), Error);
    EXPECT_THROW(picard_lefschetz(kA2, 3), Error);
}

TEST(Monodromy, Examples)
{
    EXPECT_EQ(monodromy(ThimbleLattice(1, IntMatrix())), IntMatrix());
    EXPECT_EQ(monodromy(kA1), (IntMatrix{{-1}}));
    const IntMatrix h = monodromy(kA2);
    EXPECT_EQ(h, (IntMatrix{{0, -1}, {1, -1}}));
    EXPECT_TRUE(cube(h).is_identity());
    EXPECT_FALSE(h.is_identity());
}

TEST(Monodromy, RejectsInvalidLattice)
{
    EXPECT_THROW(monodromy(ThimbleLattice(1, IntMatrix{{2, 1}, {0, 2}})), Error);
}

TEST(BraidAlpha, A2Example)
{
    const Rebased r = braid_alpha(kA2, 1);
    EXPECT_EQ(r.lattice.gram(), (IntMatrix{{2, 1}, {1, 2}}));
    // new delta_1 = delta_1 + delta_2, new delta_2 = delta_1
    EXPECT_EQ(r.basis_change, (IntMatrix{{1, 1}, {1, 0}}));
    const Rebased back = braid_alpha_inverse(r.lattice, 1);
    EXPECT_EQ(back.lattice.gram(), kA2.gram());
    EXPECT_TRUE((r.basis_change * back.basis_change).is_identity());
}

TEST(BraidAlpha, SkewExample)
{
    const ThimbleLattice l(2, IntMatrix{{0, 1}, {-1, 0}});
    EXPECT_EQ(braid_alpha(l, 1).lattice.gram(), (IntMatrix{{0, -1}, {1, 0}}));
    const Rebased r = braid_alpha(l, 1);
    const Rebased back = braid_alpha_inverse(r.lattice, 1);
    EXPECT_EQ(back.lattice, l);
    EXPECT_TRUE((r.basis_change * back.basis_change).is_identity());
}

TEST(BraidAlpha, PositionOutOfRange)
{
    EXPECT_THROW(braid_alpha(kA2, 2), Error);
    EXPECT_THROW(braid_alpha(kA2, 0), Error);
    EXPECT_THROW(braid_alpha(kA1, 1), Error);
    EXPECT_THROW(braid_alpha_inverse(kA2, 2), Error);
}

TEST(BraidAlpha, ClosedFormMatchesCongruence)
{
    Rng rng(21);
    for (int k = 0; k < 300; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(2, 8));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 4), 5);
        const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank) - 1));
        const Rebased moved = braid_alpha(l, j);
        ASSERT_EQ(braid_alpha_gram_closed_form(l, j), congruence(l.gram(), moved.basis_change));
    }
}

TEST(BraidAlpha, InverseUndoesForwardBothWays)
{
    Rng rng(22);
    for (int k = 0; k < 200; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(2, 6));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 4), 5);
        const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank) - 1));
        const Rebased f = braid_alpha(l, j);
        const Rebased fi = braid_alpha_inverse(f.lattice, j);
        EXPECT_EQ(fi.lattice, l);
        EXPECT_TRUE((f.basis_change * fi.basis_change).is_identity());
        const Rebased i = braid_alpha_inverse(l, j);
        const Rebased if_ = braid_alpha(i.lattice, j);
        EXPECT_EQ(if_.lattice, l);
        EXPECT_TRUE((i.basis_change * if_.basis_change).is_identity());
    }
}

TEST(BraidAlpha, MovesPreserveDiagonalAndValidity)
{
    Rng rng(23);
    for (int k = 0; k < 100; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(1, 6));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 4), 4);
        const Rebased r = apply_braid_word(l, random_braid_word(rng, rank, 12));
        EXPECT_FALSE(validate_lattice(r.lattice));
        for (std::size_t d = 0; d < rank; ++d)
            EXPECT_EQ(r.lattice.gram()(d, d), l.gram()(d, d));
        EXPECT_EQ(congruence(l.gram(), r.basis_change), r.lattice.gram());
    }
}

TEST(BraidAlpha, MonodromyIsCovariant)
{
    Rng rng(24);
    for (int k = 0; k < 100; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(2, 6));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 4), 4);
        const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank) - 1));
        const Rebased r = braid_alpha(l, j);
        EXPECT_EQ(monodromy(r.lattice), unimodular_inverse(r.basis_change) * monodromy(l) * r.basis_change);
    }
}

TEST(BraidAlpha, BraidRelation)
{
    Rng rng(25);
    for (int k = 0; k < 100; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(3, 6));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 4), 3);
        const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank) - 2));
        const BraidMove a{BraidMove::Kind::Forward, j};
        const BraidMove b{BraidMove::Kind::Forward, j + 1};
        const Rebased lhs = apply_braid_word(l, {a, b, a});
        const Rebased rhs = apply_braid_word(l, {b, a, b});
        EXPECT_EQ(lhs.lattice, rhs.lattice);
        EXPECT_EQ(lhs.basis_change, rhs.basis_change);
    }
}

TEST(OrientationFlip, Examples)
{
    EXPECT_EQ(orientation_flip(kA2, 2).lattice.gram(), (IntMatrix{{2, 1}, {1, 2}}));
    EXPECT_EQ(orientation_flip(kA2, 2).basis_change, (IntMatrix{{1, 0}, {0, -1}}));
    const Rebased twice = apply_braid_word(kA2, parse_braid_word("f1 f1"));
    EXPECT_EQ(twice.lattice, kA2);
    EXPECT_TRUE(twice.basis_change.is_identity());
    EXPECT_THROW(orientation_flip(kA2, 3), Error);
}

TEST(BraidWordText, ParseAndPrint)
{
    const BraidWord w = parse_braid_word(" a1,A2  f3 a12");
    ASSERT_EQ(w.size(), 4u);
    EXPECT_EQ(w[0], (BraidMove{BraidMove::Kind::Forward, 1}));
    EXPECT_EQ(w[1], (BraidMove{BraidMove::Kind::Inverse, 2}));
    EXPECT_EQ(w[2], (BraidMove{BraidMove::Kind::Flip, 3}));
    EXPECT_EQ(w[3], (BraidMove{BraidMove::Kind::Forward, 12}));
    EXPECT_EQ(to_string(w), "a1 A2 f3 a12");
    EXPECT_TRUE(parse_braid_word("").empty());
}

TEST(BraidWordText, Malformed)
{
    EXPECT_THROW(parse_braid_word("b1"), Error);
    EXPECT_THROW(parse_braid_word("a"), Error);
    EXPECT_THROW(parse_braid_word("a0"), Error);
    EXPECT_THROW(parse_braid_word("a1x"), Error);
    EXPECT_THROW(parse_braid_word("a-1"), Error);
}

TEST(ApplyBraidWord, IdentityWords)
{
    for (const char* text : {"", "a1 A1", "a1 f1 f1 A1", "A1 a1"}) {
        const Rebased r = apply_braid_word(kA2, parse_braid_word(text));
        EXPECT_EQ(r.lattice, kA2) << text;
        EXPECT_TRUE(r.basis_change.is_identity()) << text;
    }
}

TEST(ApplyBraidWord, ErrorNamesTheMove)
{
    try {
        apply_braid_word(kA2, parse_braid_word("a1 a2"));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("move 2 (a2)"), std::string::npos) << e.what();
    }
}
