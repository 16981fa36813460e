#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "thimble/matrix.hpp"

namespace thimble {

/// Inertia (n+, n-, n0) of a symmetric bilinear form.
struct Signature {
    std::size_t plus = 0;
    std::size_t minus = 0;
    std::size_t zero = 0;

    long long sgn() const noexcept
    {
        return static_cast<long long>(plus) - static_cast<long long>(minus);
    }
    std::size_t rank() const noexcept { return plus + minus + zero; }

    friend bool operator==(const Signature&, const Signature&) = default;

    std::string to_string() const
    {
        return "(" + std::to_string(plus) + "," + std::to_string(minus) + "," +
               std::to_string(zero) + ")";
    }
};

/// Exact inertia of a symmetric integer matrix; degenerate input is fine.
///
/// Symmetric elimination over Q. A nonzero diagonal pivot contributes its
/// sign; when the remaining block has a zero diagonal but a nonzero entry
/// b at (i, j), the hyperbolic pivot [[0,b],[b,0]] contributes (1,1,0).
inline Signature exact_signature(const IntMatrix& m)
{
    if (!m.is_square())
        throw Error("exact_signature: matrix is " + m.shape() + ", not square");
    if (!m.is_symmetric())
        throw Error("exact_signature: matrix is not symmetric");

    const std::size_t n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = Rational(m(r, c));

    std::vector<std::size_t> active(n);
    for (std::size_t k = 0; k < n; ++k)
        active[k] = k;

    Signature s;
    auto drop = [&](std::size_t idx) { std::erase(active, idx); };

    while (!active.empty()) {
        std::size_t diag = n;
        for (std::size_t i : active)
            if (a[i][i] != 0) {
                diag = i;
                break;
            }

        if (diag != n) {
            const Rational d = a[diag][diag];
            (d > 0 ? s.plus : s.minus)++;
            drop(diag);
            for (std::size_t r : active) {
                if (a[r][diag] == 0)
                    continue;
                const Rational f = a[r][diag] / d;
                for (std::size_t c : active)
                    a[r][c] -= f * a[diag][c];
            }
            continue;
        }

        std::size_t pi = n, pj = n;
        for (std::size_t x = 0; x < active.size() && pi == n; ++x)
            for (std::size_t y = x + 1; y < active.size(); ++y)
                if (a[active[x]][active[y]] != 0) {
                    pi = active[x];
                    pj = active[y];
                    break;
                }
        if (pi == n) {
            s.zero += active.size();
            break;
        }

        const Rational b = a[pi][pj];
        ++s.plus;
        ++s.minus;
        drop(pi);
        drop(pj);
        // Schur complement against [[0,b],[b,0]], whose inverse is [[0,1/b],[1/b,0]].
        std::vector<std::vector<Rational>> next = a;
        for (std::size_t r : active)
            for (std::size_t c : active)
                next[r][c] = a[r][c] - (a[r][pi] * a[pj][c] + a[r][pj] * a[pi][c]) / b;
        a = std::move(next);
    }
    return s;
}

}  // namespace thimble
