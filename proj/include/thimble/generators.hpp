#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "thimble/conjugation.hpp"
#include "thimble/index.hpp"
#include "thimble/random.hpp"

namespace thimble {

/// Cycle data pulled back to the thimble lattice: the Gram matrix as the
/// form, sigma_s and sigma_s h_* as the two conjugations. The boundary map's
/// kernel lies in the radical of the form, so signatures are unchanged.
inline CycleData pulled_back_cycles(const ThimbleLattice& lattice, const ConjugationData& conj)
{
    return {lattice.gram(), conj.sigma, derive_sigma_tilde(conj, lattice).matrix};
}

inline LevelData random_level(Rng& rng, long long n, long long i, const MorseSpec& morse,
                              bool with_cycles)
{
    const long long q = n + i;
    auto [lattice, conj] = consistent_level(rng, morse, q);
    LevelData level{i, std::move(lattice), std::move(conj), std::nullopt, std::nullopt};
    if (with_cycles && q % 2 != 0)
        level.cycles = pulled_back_cycles(level.lattice, level.conj);
    return level;
}

struct InstanceShape {
    long long n = 1;
    long long p = 0;
    std::size_t rank_bound = 4;
    bool with_cycles = true;
};

/// Seeded multi-level instance: random signs, independent consistent levels.
inline IcisInstance generate_instance(std::uint64_t seed, const InstanceShape& shape)
{
    if (shape.n < 1 || shape.p < 0)
        throw Error("generate_instance: need n >= 1 and p >= 0");
    Rng rng(seed);
    IcisInstance inst;
    inst.n = shape.n;
    inst.p = shape.p;
    std::vector<int> signs;
    for (long long k = 0; k <= shape.p; ++k)
        signs.push_back(rng.sign());
    inst.signs = SignVector(std::move(signs));
    for (long long i = 0; i <= shape.p; ++i) {
        const MorseSpec morse = random_morse_spec(rng, shape.rank_bound, shape.n + i);
        inst.levels.push_back(random_level(rng, shape.n, i, morse, shape.with_cycles));
    }
    return inst;
}

namespace detail {

/// Real points whose (-1)^m sum to `target`, padded with cancelling real
/// pairs and conjugate pairs, shuffled.
inline MorseSpec morse_spec_with_sum(Rng& rng, long long target, long long parity,
                                     std::size_t padding)
{
    std::vector<CriticalPoint> points;
    const long long unit = target >= 0 ? 0 : 1;
    for (long long k = 0; k < (target >= 0 ? target : -target); ++k)
        points.push_back(CriticalPoint::real(unit + (unit + 2 <= parity && rng.chance(30) ? 2 : 0)));
    for (std::size_t k = 0; k < padding; ++k) {
        if (rng.chance(50)) {
            const long long m = rng.uniform(0, parity - 1);
            points.push_back(CriticalPoint::real(m));
            points.push_back(CriticalPoint::real(m + 1));
        } else {
            points.push_back(CriticalPoint::pair(rng.uniform(-3, 3)));
        }
    }
    for (std::size_t k = points.size(); k > 1; --k)
        std::swap(points[k - 1], points[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(k) - 1))]);
    return MorseSpec(std::move(points));
}

}  // namespace detail

/// The same germ described with s_k reversed, built by Morse bookkeeping.
///
/// With i* = p-k+1 the level of f_k: levels above i* do not see s_k and are
/// copied; level i* keeps its critical points, but its data are those of
/// -f_k, so each Morse index m becomes (n+i*) - m; levels strictly between
/// 0 and i* live on a different fibre and are resampled; level 0 (when
/// i* > 0) is resampled so that the Euler-recursion total
/// sum_0 + sum_{i>=1} (-s_{p-i+1})^{n+i} sum_i is unchanged.
inline IcisInstance sign_variant(const IcisInstance& inst, std::size_t k, std::uint64_t seed,
                                 std::size_t rank_bound = 4)
{
    validate_instance_shape(inst, "sign_variant");
    if (k < 1 || k > static_cast<std::size_t>(inst.p + 1))
        throw Error("sign_variant: k outside 1..p+1");
    Rng rng(seed);
    const long long target = telescoped_index(inst).index;
    const long long star = inst.p - static_cast<long long>(k) + 1;

    IcisInstance out = inst;
    out.signs = inst.signs.flipped(k);
    const bool with_cycles = std::any_of(inst.levels.begin(), inst.levels.end(),
                                         [](const LevelData& l) { return l.cycles.has_value(); });

    auto& lvl = out.levels[static_cast<std::size_t>(star)];
    const long long q = inst.n + star;
    std::vector<CriticalPoint> mirrored;
    for (const auto& point : lvl.conj.morse.points())
        mirrored.push_back(point.is_real() ? CriticalPoint::real(q - point.morse_index) : point);
    lvl = random_level(rng, inst.n, star, MorseSpec(std::move(mirrored)), with_cycles);

    if (star == 0)
        return out;

    for (long long i = 1; i < star; ++i)
        out.levels[static_cast<std::size_t>(i)] =
            random_level(rng, inst.n, i, random_morse_spec(rng, rank_bound, inst.n + i), with_cycles);

    long long rest = 0;
    for (long long i = 1; i <= out.p; ++i) {
        const int s = out.sign_for_level(i);
        const long long sum = theorem2_closed_form(out.levels[static_cast<std::size_t>(i)], out.n, s);
        rest += morse_recursion_step(0, sum, s, out.n + i);
    }
    // sum_0 = s_{p+1}^n * sum of (-1)^m over level-0 real points.
    const long long needed_sum0 = target - rest;
    const int s0 = out.sign_for_level(0);
    const long long needed_points = (s0 == -1 ? minus_one_pow(out.n) : 1) * needed_sum0;
    const auto padding = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(rank_bound / 2)));
    out.levels[0] = random_level(rng, out.n, 0,
                                 detail::morse_spec_with_sum(rng, needed_points, out.n, padding),
                                 with_cycles);
    return out;
}

}  // namespace thimble
