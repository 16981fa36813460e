#pragma once

#include <optional>

#include "thimble/basis_ops.hpp"
#include "thimble/lattice.hpp"
#include "thimble/matrix.hpp"

namespace thimble {

/// Matrix of Var^{-1} from the delta-basis to its dual basis:
/// Var^{-1}(delta_i) = e nabla_i - sum_{j<i} <delta_i, delta_j> nabla_j,
/// e = (-1)^{q(q+1)/2}. Upper triangular with diagonal e.
///
/// Under a change of distinguished basis delta' = delta * P the same
/// operator has matrix P^T * M * P.
inline IntMatrix var_inverse(const ThimbleLattice& lattice)
{
    require_valid(lattice, "var_inverse");
    const std::size_t nu = lattice.rank();
    const int e = pl_sign(lattice.parity());
    IntMatrix m(nu, nu);
    for (std::size_t i = 0; i < nu; ++i) {
        m(i, i) = e;
        for (std::size_t j = 0; j < i; ++j)
            m(j, i) = -lattice.pairing(i, j);
    }
    return m;
}

/// Var, the exact inverse of var_inverse (always unimodular).
inline IntMatrix var(const ThimbleLattice& lattice)
{
    return unimodular_inverse(var_inverse(lattice));
}

/// S with (Sx, y) = <x, y>; S(j, i) = <delta_i, delta_j>, i.e. the Gram matrix.
inline IntMatrix intersection_operator(const ThimbleLattice& lattice)
{
    require_valid(lattice, "intersection_operator");
    return lattice.gram();
}

/// S = -Var^{-1} + (-1)^q (Var^{-1})^T.
inline std::optional<EntryMismatch> check_s_relation(const ThimbleLattice& lattice)
{
    const IntMatrix m = var_inverse(lattice);
    const IntMatrix rhs = -m + minus_one_pow(lattice.parity()) * m.transpose();
    return first_mismatch(intersection_operator(lattice), rhs);
}

/// h_* = (-1)^q Var (Var^{-1})^T, with h_* the product of Picard-Lefschetz maps.
inline std::optional<EntryMismatch> check_monodromy_relation(const ThimbleLattice& lattice)
{
    const IntMatrix m = var_inverse(lattice);
    const IntMatrix rhs = minus_one_pow(lattice.parity()) * (var(lattice) * m.transpose());
    return first_mismatch(monodromy(lattice), rhs);
}

/// Var^{-1} recomputed in the braided basis equals P^T Var^{-1} P.
inline std::optional<EntryMismatch> check_var_inverse_after_braid(const ThimbleLattice& lattice,
                                                                  const BraidWord& word)
{
    const Rebased moved = apply_braid_word(lattice, word);
    const IntMatrix& p = moved.basis_change;
    return first_mismatch(p.transpose() * var_inverse(lattice) * p, var_inverse(moved.lattice));
}

}  // namespace thimble
