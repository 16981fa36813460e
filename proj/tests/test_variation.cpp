#include <gtest/gtest.h>

#include "thimble/random.hpp"
#include "thimble/variation.hpp"

using namespace thimble;

namespace {

const ThimbleLattice kA2{1, IntMatrix{{2, -1}, {-1, 2}}};

}  // namespace

TEST(VarInverse, Examples)
{
    EXPECT_EQ(var_inverse(kA2), (IntMatrix{{-1, 1}, {0, -1}}));
    EXPECT_EQ(var_inverse(ThimbleLattice(1, IntMatrix{{2}})), (IntMatrix{{-1}}));
    EXPECT_EQ(var_inverse(ThimbleLattice(2, IntMatrix{{0}})), (IntMatrix{{-1}}));
    EXPECT_EQ(var_inverse(ThimbleLattice(3, IntMatrix{{-2}})), (IntMatrix{{1}}));
}

TEST(VarInverse, RejectsInvalidLattice)
{
    EXPECT_THROW(var_inverse(ThimbleLattice(1, IntMatrix{{0}})), Error);
}

TEST(Var, Examples)
{
    EXPECT_EQ(var(kA2), (IntMatrix{{-1, -1}, {0, -1}}));
    EXPECT_EQ(var(ThimbleLattice(1, IntMatrix{{2}})), (IntMatrix{{-1}}));
    EXPECT_EQ(var(ThimbleLattice(1, IntMatrix())), IntMatrix());
}

TEST(IntersectionOperator, EqualsGram)
{
    EXPECT_EQ(intersection_operator(kA2), kA2.gram());
    const ThimbleLattice skew(2, IntMatrix{{0, 1}, {-1, 0}});
    EXPECT_EQ(intersection_operator(skew), skew.gram());
}

TEST(SRelation, Examples)
{
    EXPECT_FALSE(check_s_relation(kA2));
    EXPECT_FALSE(check_s_relation(ThimbleLattice(1, IntMatrix{{2}})));
    EXPECT_FALSE(check_s_relation(ThimbleLattice(1, IntMatrix())));
}

TEST(MonodromyRelation, Examples)
{
    EXPECT_FALSE(check_monodromy_relation(kA2));
    EXPECT_FALSE(check_monodromy_relation(ThimbleLattice(1, IntMatrix{{2}})));
    EXPECT_FALSE(check_monodromy_relation(ThimbleLattice(1, IntMatrix())));
}

TEST(VarInverse, TriangularUnimodularProperty)
{
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        const auto rank = static_cast<std::size_t>(rng.uniform(0, 8));
        const ThimbleLattice l = random_valid_lattice(rng, rank, rng.uniform(1, 6), 5);
        const IntMatrix m = var_inverse(l);
        for (std::size_t r = 0; r < rank; ++r) {
            EXPECT_EQ(m(r, r), pl_sign(l.parity()));
            for (std::size_t c = 0; c < r; ++c)
                EXPECT_EQ(m(r, c), 0);
        }
        EXPECT_TRUE((var(l) * m).is_identity());
        EXPECT_FALSE(check_s_relation(l));
        EXPECT_FALSE(check_monodromy_relation(l));
    }
}

TEST(VarInverseAfterBraid, Examples)
{
    EXPECT_FALSE(check_var_inverse_after_braid(kA2, {}));
    EXPECT_FALSE(check_var_inverse_after_braid(kA2, parse_braid_word("a1")));
    Rng rng(32);
    for (int k = 0; k < 50; ++k) {
        const ThimbleLattice l = random_valid_lattice(rng, 5, rng.uniform(1, 4), 5);
        const BraidWord w = random_braid_word(rng, 5, 12);
        EXPECT_FALSE(check_var_inverse_after_braid(l, w)) << to_string(w);
    }
}

TEST(VarInverseAfterBraid, DetectsWrongLaw)
{
    // The same operator does not transform by P^{-1} M P: make sure the
    // congruence check can tell the difference on a nontrivial move.
    const Rebased r = apply_braid_word(kA2, parse_braid_word("a1"));
    const IntMatrix p = r.basis_change;
    EXPECT_NE(unimodular_inverse(p) * var_inverse(kA2) * p, var_inverse(r.lattice));
}
