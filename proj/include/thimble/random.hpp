#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "thimble/basis_ops.hpp"
#include "thimble/lattice.hpp"
#include "thimble/matrix.hpp"

namespace thimble {

/// Seeded generator. Draws use plain modular reduction rather than
/// std::uniform_int_distribution so sequences are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long long uniform(long long lo, long long hi)
    {
        if (hi < lo)
            throw Error("Rng::uniform: empty range");
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(span == 0 ? engine_() : engine_() % span);
    }

    bool chance(unsigned percent) { return engine_() % 100 < percent; }

    int sign() { return (engine_() & 1) ? 1 : -1; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive independent per-item seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Random lattice satisfying the parity rule, off-diagonal entries in
/// [-bound, bound].
inline ThimbleLattice random_valid_lattice(Rng& rng, std::size_t rank, long long parity,
                                           long long bound)
{
    IntMatrix g(rank, rank);
    const bool symmetric = parity % 2 != 0;
    for (std::size_t r = 0; r < rank; ++r) {
        g(r, r) = self_intersection(parity);
        for (std::size_t c = r + 1; c < rank; ++c) {
            const long long v = rng.uniform(-bound, bound);
            g(r, c) = v;
            g(c, r) = symmetric ? v : -v;
        }
    }
    return {parity, std::move(g)};
}

/// Random word of up to max_length moves valid for the given rank.
inline BraidWord random_braid_word(Rng& rng, std::size_t rank, std::size_t max_length)
{
    BraidWord word;
    if (rank == 0)
        return word;
    const auto length = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(max_length)));
    for (std::size_t k = 0; k < length; ++k) {
        BraidMove m;
        const long long pick = rank >= 2 ? rng.uniform(0, 4) : 4;
        if (pick <= 1) {
            m.kind = BraidMove::Kind::Forward;
        } else if (pick <= 3) {
            m.kind = BraidMove::Kind::Inverse;
        } else {
            m.kind = BraidMove::Kind::Flip;
            m.position = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank)));
            word.push_back(m);
            continue;
        }
        m.position = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(rank) - 1));
        word.push_back(m);
    }
    return word;
}

}  // namespace thimble
