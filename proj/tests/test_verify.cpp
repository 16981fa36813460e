#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "thimble/verify.hpp"

using namespace thimble;

namespace {

InstanceDocument load_sample(const std::string& name)
{
    std::ifstream in(std::filesystem::path(THIMBLE_SAMPLES_DIR) / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_instance(s.str());
}

// Flags any instance with two or more levels, so shrinking has work to do.
std::vector<CheckFailure> dislikes_tall_instances(const IcisInstance& inst, std::uint64_t)
{
    if (inst.levels.size() >= 2)
        return {{"tall", std::to_string(inst.levels.size()) + " levels"}};
    return {};
}

}  // namespace

TEST(Verify, DeskInstancesPassEveryCheck)
{
    for (const auto& inst : {fixtures::a1(), fixtures::a1_negated(), fixtures::a2(), fixtures::x2y2(),
                             fixtures::quadric_cone(1), fixtures::quadric_cone(-1)})
        EXPECT_TRUE(run_instance_checks(inst, 11).empty()) << serialize_instance({inst, {}, {}, {}});
}

TEST(Verify, GeneratedCorpusPasses)
{
    const VerifyReport report = run_verify(kDefaultVerifySeed, 200, 5);
    EXPECT_EQ(report.checked, 200u);
    EXPECT_TRUE(report.ok()) << report.failure->counterexample;
}

TEST(Verify, SameSeedSameOutcome)
{
    const auto bad = [](const IcisInstance& inst, std::uint64_t s) {
        std::vector<CheckFailure> out;
        if ((s + inst.levels[0].lattice.rank()) % 7 == 0)
            out.push_back({"odd-luck", std::to_string(s)});
        return out;
    };
    const VerifyReport a = run_verify(99, 300, 4, bad), b = run_verify(99, 300, 4, bad);
    ASSERT_FALSE(a.ok());
    ASSERT_FALSE(b.ok());
    EXPECT_EQ(a.checked, b.checked);
    EXPECT_EQ(a.failure->item, b.failure->item);
    EXPECT_EQ(a.failure->failures, b.failure->failures);
    EXPECT_EQ(a.failure->counterexample, b.failure->counterexample);
}

TEST(Verify, RankBoundZeroIsVacuous)
{
    const VerifyReport report = run_verify(5, 40, 0);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.checked, 40u);
}

TEST(Verify, CorruptedSampleIsCaught)
{
    const auto failures = run_instance_checks(load_sample("corrupted_sigma.json").instance, 3);
    ASSERT_FALSE(failures.empty());
    EXPECT_EQ(failures.front().check, "consistency");
}

TEST(Verify, CounterexampleIsShrunkAndReproduces)
{
    const VerifyReport report = run_verify(kDefaultVerifySeed, 500, 4, dislikes_tall_instances);
    ASSERT_FALSE(report.ok());
    const VerifyFailure& f = *report.failure;
    EXPECT_EQ(report.checked, f.item + 1);
    EXPECT_EQ(f.item_seed, verify_item_seed(kDefaultVerifySeed, f.item));

    const InstanceDocument doc = parse_instance(f.counterexample);
    ASSERT_TRUE(doc.provenance);
    EXPECT_EQ(doc.instance.levels.size(), 2u);
    EXPECT_EQ(dislikes_tall_instances(doc.instance, f.item_seed), f.failures);
    EXPECT_TRUE(instance_issues(doc.instance).empty());
    EXPECT_TRUE(run_instance_checks(doc.instance, f.item_seed).empty());
}

TEST(Verify, ShrinkKeepsInstancesWhoseSmallerFormPasses)
{
    const IcisInstance cone = fixtures::quadric_cone(-1);
    const auto only_top_is_bad = [](const IcisInstance& inst, std::uint64_t) {
        return inst.p == 1 ? std::vector<CheckFailure>{{"top", ""}} : std::vector<CheckFailure>{};
    };
    EXPECT_EQ(shrink_counterexample(cone, 0, only_top_is_bad), cone);
    const IcisInstance shrunk = shrink_counterexample(cone, 0, dislikes_tall_instances);
    EXPECT_EQ(shrunk, cone);  // one level is already clean, so nothing can go
}

TEST(Verify, ShapesStayInRange)
{
    for (std::size_t k = 0; k < 200; ++k) {
        const InstanceShape s = verify_shape(verify_item_seed(1, k), 3);
        EXPECT_GE(s.n, 1);
        EXPECT_LE(s.n, 3);
        EXPECT_GE(s.p, 0);
        EXPECT_LE(s.p, 2);
        EXPECT_EQ(s.rank_bound, 3u);
    }
}
