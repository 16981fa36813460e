#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thimble/conjugation.hpp"
#include "thimble/lattice.hpp"
#include "thimble/matrix.hpp"
#include "thimble/signature.hpp"
#include "thimble/variation.hpp"

namespace thimble {

/// Raised when a cycle-form value is requested at even n+i. The thimble-space index
/// sum at even n+i is not a function of vanishing-cycle data.
class UnsupportedParity : public Error {
public:
    using Error::Error;
};

/// Forms on the space of vanishing cycles at one level: the intersection
/// form (same storage convention as a Gram matrix) and the conjugation
/// actions for s and for s~ (s with the level's own sign reversed).
struct CycleData {
    IntMatrix form;
    IntMatrix sigma_s;
    IntMatrix sigma_tilde;

    friend bool operator==(const CycleData&, const CycleData&) = default;
};

/// Level i of an instance: the thimble lattice of parity n+i, sigma_s in
/// the Morse-adapted distinguished basis, and optionally the basis change
/// (frame) from that adapted basis to the basis the Gram matrix is written
/// in. Without a frame the two bases coincide.
struct LevelData {
    long long i = 0;
    ThimbleLattice lattice;
    ConjugationData conj;
    std::optional<IntMatrix> frame;
    std::optional<CycleData> cycles;

    friend bool operator==(const LevelData&, const LevelData&) = default;
};

struct IcisInstance {
    long long n = 1;
    long long p = 0;
    SignVector signs{std::vector<int>{1}};
    std::vector<LevelData> levels;

    /// s_{p-i+1}, the sign attached to level i.
    int sign_for_level(long long i) const
    {
        return signs.at(static_cast<std::size_t>(p - i + 1));
    }

    friend bool operator==(const IcisInstance&, const IcisInstance&) = default;
};

/// The lattice written in the Morse-adapted basis, undoing the frame.
inline ThimbleLattice adapted_lattice(const LevelData& level)
{
    if (!level.frame || level.frame->is_identity())
        return level.lattice;
    const IntMatrix inv = unimodular_inverse(*level.frame);
    return {level.lattice.parity(), congruence(level.lattice.gram(), inv)};
}

/// sigma_s written in the current (framed) basis: P^{-1} sigma P.
inline IntMatrix sigma_in_current_basis(const LevelData& level)
{
    if (!level.frame)
        return level.conj.sigma;
    return unimodular_inverse(*level.frame) * level.conj.sigma * *level.frame;
}

namespace detail {

inline long long require_level_parity(const LevelData& level, long long n, const char* who)
{
    const long long q = n + level.i;
    if (level.lattice.parity() != q)
        throw Error(std::string(who) + ": level " + std::to_string(level.i) + " has parity " +
                    std::to_string(level.lattice.parity()) + ", expected n+i = " + std::to_string(q));
    return q;
}

inline void require_sign(int s, const char* who)
{
    if (s != 1 && s != -1)
        throw Error(std::string(who) + ": sign entry must be +1 or -1");
}

}  // namespace detail

/// Signature of Var^{-1} sigma_s at a level (computed in the adapted basis).
inline Signature level_signature(const LevelData& level)
{
    return exact_signature(var_sigma_form(adapted_lattice(level), level.conj));
}

/// Sum of gradient indices at level i through the signature:
/// s^{n+i} (-1)^{(n+i)(n+i+1)/2} sgn(Var^{-1} sigma_s).
inline long long theorem2_value(const LevelData& level, long long n, int s_entry)
{
    detail::require_sign(s_entry, "theorem2_value");
    const long long q = detail::require_level_parity(level, n, "theorem2_value");
    const int s_power = s_entry == -1 ? minus_one_pow(q) : 1;
    return s_power * pl_sign(q) * level_signature(level).sgn();
}

/// The same sum read off the block structure: each real critical point
/// contributes (-1)^m, each conjugate pair contributes nothing.
inline long long theorem2_closed_form(const LevelData& level, long long n, int s_entry)
{
    detail::require_sign(s_entry, "theorem2_closed_form");
    const long long q = detail::require_level_parity(level, n, "theorem2_closed_form");
    long long sum = 0;
    for (const auto& p : level.conj.morse.points())
        if (p.is_real())
            sum += minus_one_pow(p.morse_index);
    return (s_entry == -1 ? minus_one_pow(q) : 1) * sum;
}

/// Signature of each diagonal block of expected_block_form, in block order.
inline std::vector<long long> block_signatures(const MorseSpec& morse, long long parity)
{
    const IntMatrix d = expected_block_form(morse, parity);
    std::vector<long long> out;
    for (const Block& b : morse.blocks()) {
        IntMatrix sub(b.width, b.width);
        for (std::size_t r = 0; r < b.width; ++r)
            for (std::size_t c = 0; c < b.width; ++c)
                sub(r, c) = d(b.start + r, b.start + c);
        out.push_back(exact_signature(sub).sgn());
    }
    return out;
}

/// Weight of sgn(Var^{-1}_i sigma_s) in the index for i >= 1:
/// (-1)^{q(q-1)/2} = (-1)^q (-1)^{q(q+1)/2}, q = n+i. The (-1)^q is what
/// remains of (-s)^q s^q once the Euler recursion factor (-s_{p-i+1})^{n+i}
/// meets the s^{n+i} of the level sum.
constexpr int higher_level_weight(long long q) noexcept { return minus_one_pow(q) * pl_sign(q); }

inline void validate_instance_shape(const IcisInstance& inst, const char* who)
{
    if (inst.n < 1)
        throw Error(std::string(who) + ": n must be at least 1");
    if (inst.p < 0)
        throw Error(std::string(who) + ": p must be non-negative");
    if (inst.signs.size() != static_cast<std::size_t>(inst.p + 1))
        throw Error(std::string(who) + ": expected " + std::to_string(inst.p + 1) +
                    " signs, got " + std::to_string(inst.signs.size()));
    if (inst.levels.size() != static_cast<std::size_t>(inst.p + 1))
        throw Error(std::string(who) + ": expected " + std::to_string(inst.p + 1) +
                    " levels, got " + std::to_string(inst.levels.size()));
    for (std::size_t k = 0; k < inst.levels.size(); ++k) {
        if (inst.levels[k].i != static_cast<long long>(k))
            throw Error(std::string(who) + ": level at position " + std::to_string(k) +
                        " has i = " + std::to_string(inst.levels[k].i));
        detail::require_level_parity(inst.levels[k], inst.n, who);
    }
}

/// Index of grad g at the origin:
/// s_{p+1}^n (-1)^{n(n+1)/2} sgn(level 0)
///   + sum_{i=1}^{p} (-1)^{(n+i)(n+i-1)/2} sgn(level i).
inline long long index_eq2(const IcisInstance& inst)
{
    validate_instance_shape(inst, "index_eq2");
    long long index = theorem2_value(inst.levels[0], inst.n, inst.sign_for_level(0));
    for (long long i = 1; i <= inst.p; ++i) {
        const long long q = inst.n + i;
        index += higher_level_weight(q) * level_signature(inst.levels[static_cast<std::size_t>(i)]).sgn();
    }
    return index;
}

/// ind = sum over zeros on the smoothing - chi(smoothing) + 1.
constexpr long long smoothable_index(long long sum_smoothing_indices, long long chi_smoothing) noexcept
{
    return sum_smoothing_indices - chi_smoothing + 1;
}

/// One Morse-theory step: chi_prev + (-s)^exponent * sum_ind.
constexpr long long morse_recursion_step(long long chi_prev, long long sum_ind, int s,
                                         long long exponent) noexcept
{
    return chi_prev + (s == 1 ? minus_one_pow(exponent) : 1) * sum_ind;
}

/// Indices of the radial field and of its negative at a cone point whose
/// link has Euler characteristic chi_link.
constexpr std::pair<long long, long long> radial_indices(long long chi_link) noexcept
{
    return {1, 1 - chi_link};
}

struct PoincareHopfMismatch {
    long long sum = 0;
    long long chi = 0;
};

inline std::optional<PoincareHopfMismatch> poincare_hopf_check(std::span<const long long> indices,
                                                               long long chi)
{
    long long sum = 0;
    for (long long v : indices)
        sum += v;
    if (sum == chi)
        return std::nullopt;
    return PoincareHopfMismatch{sum, chi};
}

/// The index assembled the long way round: per-level gradient sums from
/// theorem2_value, Euler characteristics of the real Milnor fibres chained
/// down from the ball (chi = 1) with morse_recursion_step, and the last step
/// closed with smoothable_index.
struct TelescopedIndex {
    std::vector<long long> level_sums;  // indexed by level i
    std::vector<long long> chi;         // chi[i] = chi(V^{(i)} real part), i = 1..p+1
    long long index = 0;
};

inline TelescopedIndex telescoped_index(const IcisInstance& inst)
{
    validate_instance_shape(inst, "telescoped_index");
    TelescopedIndex out;
    const auto levels = static_cast<std::size_t>(inst.p + 1);
    out.level_sums.resize(levels);
    for (std::size_t i = 0; i < levels; ++i)
        out.level_sums[i] = theorem2_value(inst.levels[i], inst.n,
                                           inst.sign_for_level(static_cast<long long>(i)));

    out.chi.assign(levels + 1, 0);
    out.chi[levels] = 1;
    for (std::size_t i = levels - 1; i >= 1; --i) {
        const int s = inst.sign_for_level(static_cast<long long>(i));
        const long long exponent = inst.n + static_cast<long long>(i);
        // chi(V^{(i+1)}) = chi(V^{(i)}) + (-s)^{n+i} sum_i, solved for chi(V^{(i)}).
        const long long weight = morse_recursion_step(0, 1, s, exponent);
        out.chi[i] = out.chi[i + 1] - weight * out.level_sums[i];
        if (morse_recursion_step(out.chi[i], out.level_sums[i], s, exponent) != out.chi[i + 1])
            throw std::logic_error("telescoped_index: recursion step does not close");
    }
    out.index = smoothable_index(out.level_sums[0], out.chi[1]);
    return out;
}

struct CorollaryDiscrepancy {
    std::size_t variant = 0;
    long long value = 0;
    long long reference = 0;
};

/// All variants (same germ, different sign vectors) must give one index.
inline std::optional<CorollaryDiscrepancy> corollary_check(std::span<const IcisInstance> variants)
{
    if (variants.empty())
        return std::nullopt;
    const long long reference = index_eq2(variants.front());
    for (std::size_t k = 1; k < variants.size(); ++k) {
        const long long v = index_eq2(variants[k]);
        if (v != reference)
            return CorollaryDiscrepancy{k, v, reference};
    }
    return std::nullopt;
}

/// Gradient index sum at an odd-parity level from vanishing-cycle forms:
/// s (-1)^{(q+1)/2} (sgn Sigma_s~ - sgn Sigma_s) / 2 with
/// Sigma(x, y) = <sigma x, y>.
inline long long theorem3_value(const LevelData& level, int s_entry)
{
    detail::require_sign(s_entry, "theorem3_value");
    const long long q = level.lattice.parity();
    if (q % 2 == 0)
        throw UnsupportedParity(
            "theorem3_value: n+i = " + std::to_string(q) +
            " is even; the gradient index sum is not expressible through vanishing-cycle "
            "invariants here (the quadric cone x1^2+x2^2-x3^2 with g = x3 has level-0 sums 0 "
            "and 2 for s_1 = +1 and -1 although the vanishing cycles do not change)");
    if (!level.cycles)
        throw Error("theorem3_value: level " + std::to_string(level.i) + " has no cycle data");
    const CycleData& cyc = level.cycles.value();
    auto quadratic = [&](const IntMatrix& sigma, const char* name) {
        if (sigma.rows() != cyc.form.rows() || !sigma.is_square() || !cyc.form.is_square())
            throw Error(std::string("theorem3_value: ") + name + " has shape " + sigma.shape() +
                        ", cycle form has " + cyc.form.shape());
        IntMatrix sigma_form = cyc.form * sigma;
        if (!sigma_form.is_symmetric())
            throw Error(std::string("theorem3_value: <") + name + " x, y> is not symmetric");
        return exact_signature(sigma_form).sgn();
    };
    const long long diff = quadratic(cyc.sigma_tilde, "sigma_tilde") - quadratic(cyc.sigma_s, "sigma_s");
    if (diff % 2 != 0)
        throw Error("theorem3_value: signature difference " + std::to_string(diff) +
                    " is odd; cycle data are inconsistent");
    const long long half = (q + 1) / 2;
    return s_entry * minus_one_pow(half) * (diff / 2);
}

/// Violations of everything an instance promises, one line each.
inline std::vector<std::string> instance_issues(const IcisInstance& inst)
{
    std::vector<std::string> issues;
    try {
        validate_instance_shape(inst, "instance");
    } catch (const Error& e) {
        issues.emplace_back(e.what());
        return issues;
    }
    for (const LevelData& level : inst.levels) {
        const std::string where = "level " + std::to_string(level.i) + ": ";
        if (auto v = validate_lattice(level.lattice)) {
            issues.push_back(where + v->message);
            continue;
        }
        if (level.conj.sigma.rows() != level.lattice.rank() ||
            level.conj.morse.slot_count() != level.lattice.rank()) {
            issues.push_back(where + "Morse spec has " + std::to_string(level.conj.morse.slot_count()) +
                             " slots but the lattice has rank " + std::to_string(level.lattice.rank()));
            continue;
        }
        if (level.frame) {
            const Integer d = level.frame->is_square() && level.frame->rows() == level.lattice.rank()
                                  ? det(*level.frame)
                                  : Integer(0);
            if (d != 1 && d != -1) {
                issues.push_back(where + "frame is not a unimodular " +
                                 std::to_string(level.lattice.rank()) + "x" +
                                 std::to_string(level.lattice.rank()) + " matrix");
                continue;
            }
        }
        const ThimbleLattice adapted = adapted_lattice(level);
        if (auto v = validate_lattice(adapted)) {
            issues.push_back(where + "adapted-basis lattice invalid: " + v->message);
            continue;
        }
        if (!(level.conj.sigma * level.conj.sigma).is_identity()) {
            issues.push_back(where + "sigma_s is not an involution");
            continue;
        }
        if (!is_upper_block_triangular(level.conj.sigma, level.conj.morse)) {
            issues.push_back(where + "sigma_s is not upper block-triangular");
            continue;
        }
        const SigmaTilde tilde = derive_sigma_tilde(level.conj, adapted);
        if (!tilde.involution)
            issues.push_back(where + "sigma_tilde = sigma_s h_* is not an involution");
        if (!tilde.lower_block_triangular)
            issues.push_back(where + "sigma_tilde = sigma_s h_* is not lower block-triangular");
        if (!tilde.consistent())
            continue;
        if (auto m = block_diagonal_structure_check(adapted, level.conj))
            issues.push_back(where + "Var^{-1} sigma_s block form mismatch at " + m->describe());
        if (level.cycles) {
            const CycleData& c = *level.cycles;
            const std::size_t k = c.form.rows();
            if (!c.form.is_square() || c.sigma_s.rows() != k || c.sigma_s.cols() != k ||
                c.sigma_tilde.rows() != k || c.sigma_tilde.cols() != k)
                issues.push_back(where + "cycle data shapes disagree");
            else if (!(c.form * c.sigma_s).is_symmetric() || !(c.form * c.sigma_tilde).is_symmetric())
                issues.push_back(where + "cycle forms <sigma x, y> are not symmetric");
        }
    }
    return issues;
}

}  // namespace thimble
