#pragma once

// Desk-scale instances shared by the unit tests and the acceptance run.

#include <string>
#include <vector>

#include "thimble/index.hpp"

namespace thimble::fixtures {

/// Level whose Gram matrix is forced by sigma_s: with M = D sigma_s,
/// gram = -M + (-1)^q M^T.
inline LevelData desk_level(long long n, long long i, std::vector<CriticalPoint> points,
                            const std::vector<UpperEntry>& upper = {})
{
    const long long q = n + i;
    MorseSpec morse(std::move(points));
    ConjugationData conj = build_sigma(morse, q, upper);
    const IntMatrix m = expected_block_form(conj.morse, q) * conj.sigma;
    IntMatrix gram = -m + minus_one_pow(q) * m.transpose();
    return {i, ThimbleLattice(q, std::move(gram)), std::move(conj), std::nullopt, std::nullopt};
}

inline IcisInstance single_level(long long n, int sign, LevelData level)
{
    IcisInstance inst;
    inst.n = n;
    inst.p = 0;
    inst.signs = SignVector({sign});
    inst.levels.push_back(std::move(level));
    return inst;
}

/// x^2 on the line.
inline IcisInstance a1() { return single_level(1, 1, desk_level(1, 0, {CriticalPoint::real(0)})); }

/// The same germ read through -x^2 (s = -1): one real point of index 1.
inline IcisInstance a1_negated()
{
    return single_level(1, -1, desk_level(1, 0, {CriticalPoint::real(1)}));
}

/// x^3 on the line, morsified to x^3 - eps x.
inline IcisInstance a2()
{
    return single_level(1, 1, desk_level(1, 0, {CriticalPoint::real(0), CriticalPoint::real(1)}, {{0, 1, -1}}));
}

/// x^2 + y^2 in the plane.
inline IcisInstance x2y2() { return single_level(2, 1, desk_level(2, 0, {CriticalPoint::real(0)})); }

/// The cone x1^2 + x2^2 - x3^2 with g = x3 (n = 2, p = 1), described with
/// s = (s1, +1). For s1 = +1 the level-0 function has a pair of complex
/// critical points; for s1 = -1 it has two real ones, of indices 0 and 2.
inline IcisInstance quadric_cone(int s1)
{
    IcisInstance inst;
    inst.n = 2;
    inst.p = 1;
    inst.signs = SignVector({s1, 1});
    if (s1 == 1) {
        inst.levels.push_back(desk_level(2, 0, {CriticalPoint::pair(1)}));
        inst.levels.push_back(desk_level(2, 1, {CriticalPoint::real(1)}));
    } else {
        inst.levels.push_back(desk_level(2, 0, {CriticalPoint::real(0), CriticalPoint::real(2)}));
        inst.levels.push_back(desk_level(2, 1, {CriticalPoint::real(2)}));
    }
    return inst;
}

}  // namespace thimble::fixtures
