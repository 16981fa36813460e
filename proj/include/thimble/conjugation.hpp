#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thimble/basis_ops.hpp"
#include "thimble/lattice.hpp"
#include "thimble/matrix.hpp"
#include "thimble/random.hpp"
#include "thimble/signature.hpp"
#include "thimble/variation.hpp"

namespace thimble {

/// A real critical point with its Morse index, or a pair of complex
/// conjugate critical points occupying two consecutive basis slots.
struct CriticalPoint {
    enum class Kind { Real, ConjugatePair };

    Kind kind = Kind::Real;
    long long morse_index = 0;  // Real only
    Integer pairing;            // ConjugatePair only

    static CriticalPoint real(long long m) { return {Kind::Real, m, 0}; }
    static CriticalPoint pair(Integer a) { return {Kind::ConjugatePair, 0, std::move(a)}; }

    bool is_real() const noexcept { return kind == Kind::Real; }
    std::size_t width() const noexcept { return is_real() ? 1 : 2; }

    friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

struct Block {
    std::size_t start = 0;
    std::size_t width = 1;
};

/// Critical points in basis order (decreasing real parts of critical values;
/// within a pair the value with negative imaginary part comes first).
class MorseSpec {
public:
    MorseSpec() = default;
    explicit MorseSpec(std::vector<CriticalPoint> points) : points_(std::move(points)) {}

    const std::vector<CriticalPoint>& points() const noexcept { return points_; }

    std::size_t slot_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto& p : points_)
            n += p.width();
        return n;
    }

    std::vector<Block> blocks() const
    {
        std::vector<Block> out;
        std::size_t at = 0;
        for (const auto& p : points_) {
            out.push_back({at, p.width()});
            at += p.width();
        }
        return out;
    }

    /// Block index containing each basis slot.
    std::vector<std::size_t> block_of_slot() const
    {
        std::vector<std::size_t> out;
        for (std::size_t b = 0; b < points_.size(); ++b)
            out.insert(out.end(), points_[b].width(), b);
        return out;
    }

    friend bool operator==(const MorseSpec&, const MorseSpec&) = default;

private:
    std::vector<CriticalPoint> points_;
};

struct UpperEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer value;

    friend bool operator==(const UpperEntry&, const UpperEntry&) = default;
};

/// Matrix of complex conjugation on the thimbles, in the basis fixed by a
/// MorseSpec.
struct ConjugationData {
    MorseSpec morse;
    IntMatrix sigma;

    friend bool operator==(const ConjugationData&, const ConjugationData&) = default;
};

/// Assembles sigma_s: diagonal 1x1 blocks (-1)^m, diagonal 2x2 blocks
/// [[0,1],[1,0]], caller-provided entries strictly above the block diagonal.
/// Throws unless the result is an involution.
inline ConjugationData build_sigma(MorseSpec morse, long long parity,
                                   std::span<const UpperEntry> upper)
{
    for (std::size_t k = 0; k < morse.points().size(); ++k) {
        const auto& p = morse.points()[k];
        if (p.is_real() && (p.morse_index < 0 || p.morse_index > parity))
            throw Error("build_sigma: critical point " + std::to_string(k) + " has Morse index " +
                        std::to_string(p.morse_index) + " outside 0.." + std::to_string(parity));
    }
    const std::size_t nu = morse.slot_count();
    const auto blk = morse.block_of_slot();
    IntMatrix sigma(nu, nu);
    for (const Block& b : morse.blocks()) {
        const auto& p = morse.points()[blk[b.start]];
        if (p.is_real()) {
            sigma(b.start, b.start) = minus_one_pow(p.morse_index);
        } else {
            sigma(b.start, b.start + 1) = 1;
            sigma(b.start + 1, b.start) = 1;
        }
    }
    for (const UpperEntry& u : upper) {
        if (u.row >= nu || u.col >= nu)
            throw Error("build_sigma: entry (" + std::to_string(u.row) + "," +
                        std::to_string(u.col) + ") outside rank " + std::to_string(nu));
        if (blk[u.row] >= blk[u.col])
            throw Error("build_sigma: entry (" + std::to_string(u.row) + "," +
                        std::to_string(u.col) + ") is not strictly above the block diagonal");
        sigma(u.row, u.col) = u.value;
    }
    if (!(sigma * sigma).is_identity())
        throw Error("build_sigma: sigma is not an involution (sigma^2 != I)");
    return {std::move(morse), std::move(sigma)};
}

/// Nonzero entries of sigma strictly above the block diagonal.
inline std::vector<UpperEntry> upper_entries(const ConjugationData& conj)
{
    std::vector<UpperEntry> out;
    const auto blk = conj.morse.block_of_slot();
    for (std::size_t r = 0; r < conj.sigma.rows(); ++r)
        for (std::size_t c = 0; c < conj.sigma.cols(); ++c)
            if (blk[r] < blk[c] && !conj.sigma(r, c).is_zero())
                out.push_back({r, c, conj.sigma(r, c)});
    return out;
}

inline bool is_upper_block_triangular(const IntMatrix& m, const MorseSpec& morse)
{
    const auto blk = morse.block_of_slot();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (blk[r] > blk[c] && !m(r, c).is_zero())
                return false;
    return true;
}

inline bool is_lower_block_triangular(const IntMatrix& m, const MorseSpec& morse)
{
    return is_upper_block_triangular(m.transpose(), morse);
}

struct SigmaTilde {
    IntMatrix matrix;
    bool involution = false;
    bool lower_block_triangular = false;

    bool consistent() const noexcept { return involution && lower_block_triangular; }
};

namespace detail {

inline void require_same_rank(const ConjugationData& conj, const ThimbleLattice& lattice,
                              const char* who)
{
    if (conj.sigma.rows() != lattice.rank() || conj.morse.slot_count() != lattice.rank())
        throw Error(std::string(who) + ": rank mismatch (sigma " + conj.sigma.shape() +
                    ", Morse slots " + std::to_string(conj.morse.slot_count()) + ", lattice rank " +
                    std::to_string(lattice.rank()) + ")");
}

}  // namespace detail

/// sigma_tilde = sigma_s * h_*, from h_* = sigma_s sigma_tilde and sigma_s^2 = I.
inline SigmaTilde derive_sigma_tilde(const ConjugationData& conj, const ThimbleLattice& lattice)
{
    detail::require_same_rank(conj, lattice, "derive_sigma_tilde");
    SigmaTilde out;
    out.matrix = conj.sigma * monodromy(lattice);
    out.involution = (out.matrix * out.matrix).is_identity();
    out.lower_block_triangular = is_lower_block_triangular(out.matrix, conj.morse);
    return out;
}

/// The Var^{-1} sigma_s bilinear form on a consistent instance. It must be
/// symmetric and non-degenerate; anything else throws std::logic_error.
inline IntMatrix var_sigma_form(const ThimbleLattice& lattice, const ConjugationData& conj)
{
    const SigmaTilde tilde = derive_sigma_tilde(conj, lattice);
    if (!tilde.consistent())
        throw Error(std::string("var_sigma_form: inconsistent instance (sigma_tilde ") +
                    (tilde.involution ? "" : "not an involution") +
                    (!tilde.involution && !tilde.lower_block_triangular ? ", " : "") +
                    (tilde.lower_block_triangular ? "" : "not lower block-triangular") + ")");
    IntMatrix form = var_inverse(lattice) * conj.sigma;
    if (!form.is_symmetric())
        throw std::logic_error("var_sigma_form: Var^{-1} sigma_s is not symmetric on a consistent "
                               "instance");
    if (det(form).is_zero())
        throw std::logic_error("var_sigma_form: Var^{-1} sigma_s is degenerate on a consistent "
                               "instance");
    return form;
}

/// Expected block-diagonal form: e (-1)^m per real point and e [[a,1],[1,0]]
/// per conjugate pair, e = (-1)^{q(q+1)/2}.
inline IntMatrix expected_block_form(const MorseSpec& morse, long long parity)
{
    const int e = pl_sign(parity);
    IntMatrix d(morse.slot_count(), morse.slot_count());
    const auto blocks = morse.blocks();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& p = morse.points()[k];
        const std::size_t s = blocks[k].start;
        if (p.is_real()) {
            d(s, s) = e * minus_one_pow(p.morse_index);
        } else {
            d(s, s) = e * p.pairing;
            d(s, s + 1) = e;
            d(s + 1, s) = e;
        }
    }
    return d;
}

/// Var^{-1} sigma_s equals expected_block_form exactly.
inline std::optional<EntryMismatch> block_diagonal_structure_check(const ThimbleLattice& lattice,
                                                                   const ConjugationData& conj)
{
    detail::require_same_rank(conj, lattice, "block_diagonal_structure_check");
    return first_mismatch(expected_block_form(conj.morse, lattice.parity()),
                          var_inverse(lattice) * conj.sigma);
}

/// Random Morse spec with 0..max_slots slots and indices in 0..parity.
inline MorseSpec random_morse_spec(Rng& rng, std::size_t max_slots, long long parity)
{
    const auto slots = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(max_slots)));
    std::vector<CriticalPoint> points;
    std::size_t used = 0;
    while (used < slots) {
        if (slots - used >= 2 && rng.chance(30)) {
            points.push_back(CriticalPoint::pair(rng.uniform(-3, 3)));
            used += 2;
        } else {
            points.push_back(CriticalPoint::real(rng.uniform(0, parity)));
            used += 1;
        }
    }
    return MorseSpec(std::move(points));
}

/// Consistent (lattice, sigma_s) for a given Morse spec.
///
/// sigma_s = T B T^{-1} with B the mandated block diagonal and T unipotent
/// upper block-triangular, so sigma_s is an upper block-triangular
/// involution. With D = expected_block_form(morse) the matrix M = D sigma_s
/// is upper triangular with diagonal (-1)^{q(q+1)/2}; the Gram matrix is
/// then -M + (-1)^q M^T, whose Var^{-1} is exactly M.
inline std::pair<ThimbleLattice, ConjugationData> consistent_level(Rng& rng, const MorseSpec& morse,
                                                                  long long parity)
{
    const std::size_t nu = morse.slot_count();
    const auto blk = morse.block_of_slot();
    IntMatrix base = build_sigma(morse, parity, {}).sigma;
    IntMatrix t = IntMatrix::identity(nu);
    for (std::size_t r = 0; r < nu; ++r)
        for (std::size_t c = 0; c < nu; ++c)
            if (blk[r] < blk[c] && rng.chance(60))
                t(r, c) = rng.uniform(-1, 1);
    const IntMatrix sigma = t * base * unimodular_inverse(t);

    ConjugationData conj = build_sigma(morse, parity, upper_entries({morse, sigma}));
    const IntMatrix m = expected_block_form(morse, parity) * conj.sigma;
    IntMatrix gram = -m + minus_one_pow(parity) * m.transpose();
    return {ThimbleLattice(parity, std::move(gram)), std::move(conj)};
}

/// Seeded source of consistent (lattice, sigma_s) instances of rank at most
/// rank_bound. Each candidate must pass derive_sigma_tilde; the search gives
/// up after kConsistentInstanceAttempts candidates.
inline constexpr int kConsistentInstanceAttempts = 64;

inline std::pair<ThimbleLattice, ConjugationData>
generate_consistent_instance(std::uint64_t seed, std::size_t rank_bound, long long parity)
{
    if (parity < 0)
        throw Error("generate_consistent_instance: parity must be non-negative");
    Rng rng(seed);
    for (int attempt = 0; attempt < kConsistentInstanceAttempts; ++attempt) {
        const MorseSpec morse = random_morse_spec(rng, rank_bound, parity);
        auto candidate = consistent_level(rng, morse, parity);
        if (validate_lattice(candidate.first))
            continue;
        if (derive_sigma_tilde(candidate.second, candidate.first).consistent())
            return candidate;
    }
    throw Error("generate_consistent_instance: no consistent instance after " +
                std::to_string(kConsistentInstanceAttempts) + " attempts");
}

}  // namespace thimble
