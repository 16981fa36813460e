#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thimble/matrix.hpp"

namespace thimble {

/// Self-intersection of a thimble whose symmetry is governed by q = n+i:
/// (-1)^{q(q-1)/2} (1 + (-1)^{q-1}). Zero for even q, +-2 for odd q.
constexpr int self_intersection(long long parity) noexcept
{
    const long long r = ((parity % 4) + 4) % 4;
    const int sign = (r == 0 || r == 1) ? 1 : -1;
    return sign * (1 + minus_one_pow(parity - 1));
}

/// A distinguished basis of thimbles, recorded by its Gram matrix.
///
/// gram(r, c) = <delta_c, delta_r>. The intersection form is symmetric for
/// odd parity and skew-symmetric for even parity.
class ThimbleLattice {
public:
    ThimbleLattice() = default;

    ThimbleLattice(long long parity, IntMatrix gram) : parity_(parity), gram_(std::move(gram))
    {
        if (!gram_.is_square())
            throw Error("ThimbleLattice: gram is " + gram_.shape() + ", not square");
    }

    long long parity() const noexcept { return parity_; }
    const IntMatrix& gram() const noexcept { return gram_; }
    std::size_t rank() const noexcept { return gram_.rows(); }

    /// <delta_a, delta_b> for 0-based a, b.
    const Integer& pairing(std::size_t a, std::size_t b) const { return gram_(b, a); }

    friend bool operator==(const ThimbleLattice&, const ThimbleLattice&) = default;

private:
    long long parity_ = 1;
    IntMatrix gram_;
};

struct LatticeViolation {
    std::size_t row = 0;
    std::size_t col = 0;
    std::string message;
};

/// Checks the parity symmetry rule and the self-intersection diagonal.
/// Reports the first offending entry in row-major order.
inline std::optional<LatticeViolation> validate_lattice(const ThimbleLattice& lattice)
{
    const IntMatrix& g = lattice.gram();
    const bool symmetric = lattice.parity() % 2 != 0;
    const Integer diag = self_intersection(lattice.parity());
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (r == c) {
                if (g(r, r) != diag)
                    return LatticeViolation{r, r,
                                            "diagonal entry " + g(r, r).str() +
                                                " differs from self-intersection " + diag.str()};
                continue;
            }
            const Integer mirror = symmetric ? g(c, r) : Integer(-g(c, r));
            if (g(r, c) != mirror)
                return LatticeViolation{
                    r, c,
                    std::string(symmetric ? "asymmetry" : "skew-symmetry broken") + " at (" +
                        std::to_string(r) + "," + std::to_string(c) + ")/(" + std::to_string(c) +
                        "," + std::to_string(r) + "): " + g(r, c).str() + " vs " +
                        g(c, r).str()};
        }
    }
    return std::nullopt;
}

inline void require_valid(const ThimbleLattice& lattice, const char* who)
{
    if (auto v = validate_lattice(lattice))
        throw Error(std::string(who) + ": invalid lattice: " + v->message);
}

/// mu = sum_i (-1)^i nu_i over the thimble ranks of levels 0..p.
inline long long milnor_number(std::span<const long long> ranks)
{
    if (ranks.empty())
        throw Error("milnor_number: empty rank list");
    long long mu = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] < 0)
            throw Error("milnor_number: negative rank at level " + std::to_string(i));
        mu += minus_one_pow(static_cast<long long>(i)) * ranks[i];
    }
    return mu;
}

/// s = (s_1, ..., s_{p+1}) with entries +-1.
class SignVector {
public:
    SignVector() = default;

    explicit SignVector(std::vector<int> entries) : entries_(std::move(entries))
    {
        if (entries_.empty())
            throw Error("SignVector: must have at least one entry");
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (entries_[k] != 1 && entries_[k] != -1)
                throw Error("SignVector: entry " + std::to_string(k + 1) + " is " +
                            std::to_string(entries_[k]) + ", expected +1 or -1");
    }

    std::size_t size() const noexcept { return entries_.size(); }

    /// s_k, 1-based as in s = (s_1, ..., s_{p+1}).
    int at(std::size_t k) const
    {
        if (k == 0 || k > entries_.size())
            throw Error("SignVector: index " + std::to_string(k) + " out of range");
        return entries_[k - 1];
    }

    SignVector flipped(std::size_t k) const
    {
        SignVector out = *this;
        at(k);
        out.entries_[k - 1] = -out.entries_[k - 1];
        return out;
    }

    const std::vector<int>& entries() const noexcept { return entries_; }

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    std::vector<int> entries_;
};

}  // namespace thimble
