#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "thimble/lattice.hpp"
#include "thimble/matrix.hpp"

namespace thimble {

/// Matrix of the Picard-Lefschetz transformation h_{delta_j} (1-based j):
/// h(y) = y + (-1)^{q(q+1)/2} <y, delta_j> delta_j.
inline IntMatrix picard_lefschetz(const ThimbleLattice& lattice, std::size_t j)
{
    const std::size_t nu = lattice.rank();
    if (j < 1 || j > nu)
        throw Error("picard_lefschetz: index " + std::to_string(j) + " outside 1.." +
                    std::to_string(nu));
    const std::size_t a = j - 1;
    const int e = pl_sign(lattice.parity());
    IntMatrix h = IntMatrix::identity(nu);
    for (std::size_t i = 0; i < nu; ++i)
        h(a, i) += e * lattice.pairing(i, a);
    return h;
}

/// Classical monodromy h_* = h_{delta_1} o h_{delta_2} o ... o h_{delta_nu}.
inline IntMatrix monodromy(const ThimbleLattice& lattice)
{
    require_valid(lattice, "monodromy");
    IntMatrix h = IntMatrix::identity(lattice.rank());
    for (std::size_t j = 1; j <= lattice.rank(); ++j)
        h = h * picard_lefschetz(lattice, j);
    return h;
}

/// A lattice in a new distinguished basis together with the basis change.
/// Column c of basis_change expresses new delta_c in the old basis.
struct Rebased {
    ThimbleLattice lattice;
    IntMatrix basis_change;
};

/// Gram matrix of the basis delta' = delta * P.
inline IntMatrix congruence(const IntMatrix& gram, const IntMatrix& p)
{
    return p.transpose() * gram * p;
}

namespace detail {

inline void require_braid_position(const ThimbleLattice& lattice, std::size_t j, const char* who)
{
    if (lattice.rank() < 2 || j < 1 || j > lattice.rank() - 1)
        throw Error(std::string(who) + ": position " + std::to_string(j) + " outside 1.." +
                    std::to_string(lattice.rank() < 2 ? 0 : lattice.rank() - 1));
}

}  // namespace detail

/// Gram matrix after alpha_j from the elementary update rules alone:
/// pairs away from j, j+1 are untouched, <d'_j, d'_{j+1}> = -<d_j, d_{j+1}>,
/// <d'_r, d'_j> = <d_r, d_{j+1}> + e <d_{j+1}, d_j> <d_r, d_j>,
/// <d'_r, d'_{j+1}> = <d_r, d_j>; mirrored pairs follow by linearity in the
/// first argument, and self-intersections are preserved.
inline IntMatrix braid_alpha_gram_closed_form(const ThimbleLattice& lattice, std::size_t j)
{
    detail::require_braid_position(lattice, j, "braid_alpha_gram_closed_form");
    const std::size_t a = j - 1, b = j;
    const int e = pl_sign(lattice.parity());
    auto pr = [&](std::size_t x, std::size_t y) -> const Integer& { return lattice.pairing(x, y); };
    const Integer g = pr(b, a);

    IntMatrix out(lattice.rank(), lattice.rank());
    // out(r, c) = <d'_c, d'_r>
    auto set = [&](std::size_t x, std::size_t y, Integer v) { out(y, x) = std::move(v); };
    for (std::size_t r = 0; r < lattice.rank(); ++r) {
        for (std::size_t s = 0; s < lattice.rank(); ++s) {
            const bool r_moved = r == a || r == b;
            const bool s_moved = s == a || s == b;
            if (r == s)
                set(r, s, pr(r, r));
            else if (!r_moved && !s_moved)
                set(r, s, pr(r, s));
            else if (r == a && s == b)
                set(r, s, -pr(a, b));
            else if (r == b && s == a)
                set(r, s, -pr(b, a));
            else if (s == a)
                set(r, s, pr(r, b) + e * g * pr(r, a));
            else if (s == b)
                set(r, s, pr(r, a));
            else if (r == a)
                set(r, s, pr(b, s) + e * g * pr(a, s));
            else
                set(r, s, pr(a, s));
        }
    }
    return out;
}

/// alpha_j: delta'_j = delta_{j+1} + e <delta_{j+1}, delta_j> delta_j,
/// delta'_{j+1} = delta_j, where e = (-1)^{q(q+1)/2}.
///
/// The new Gram matrix is computed by congruence and by the closed-form
/// update rules; a disagreement throws std::logic_error.
inline Rebased braid_alpha(const ThimbleLattice& lattice, std::size_t j)
{
    detail::require_braid_position(lattice, j, "braid_alpha");
    require_valid(lattice, "braid_alpha");
    const std::size_t a = j - 1, b = j;
    const int e = pl_sign(lattice.parity());

    IntMatrix p = IntMatrix::identity(lattice.rank());
    p(a, a) = e * lattice.pairing(b, a);
    p(b, a) = 1;
    p(a, b) = 1;
    p(b, b) = 0;

    IntMatrix gram = congruence(lattice.gram(), p);
    if (gram != braid_alpha_gram_closed_form(lattice, j))
        throw std::logic_error("braid_alpha: closed-form Gram update disagrees with congruence");
    return {ThimbleLattice(lattice.parity(), std::move(gram)), std::move(p)};
}

/// Inverse of alpha_j. Writing beta for the current basis, the move is
/// delta_j = beta_{j+1}, delta_{j+1} = beta_j + e <beta_{j+1}, beta_j> beta_{j+1}.
inline Rebased braid_alpha_inverse(const ThimbleLattice& lattice, std::size_t j)
{
    detail::require_braid_position(lattice, j, "braid_alpha_inverse");
    require_valid(lattice, "braid_alpha_inverse");
    const std::size_t a = j - 1, b = j;
    const int e = pl_sign(lattice.parity());

    IntMatrix p = IntMatrix::identity(lattice.rank());
    p(a, a) = 0;
    p(b, a) = 1;
    p(a, b) = 1;
    p(b, b) = e * lattice.pairing(b, a);

    IntMatrix gram = congruence(lattice.gram(), p);
    return {ThimbleLattice(lattice.parity(), std::move(gram)), std::move(p)};
}

/// delta_j -> -delta_j.
inline Rebased orientation_flip(const ThimbleLattice& lattice, std::size_t j)
{
    if (j < 1 || j > lattice.rank())
        throw Error("orientation_flip: index " + std::to_string(j) + " outside 1.." +
                    std::to_string(lattice.rank()));
    IntMatrix p = IntMatrix::identity(lattice.rank());
    p(j - 1, j - 1) = -1;
    IntMatrix gram = lattice.gram();
    for (std::size_t k = 0; k < lattice.rank(); ++k) {
        gram(j - 1, k) = -gram(j - 1, k);
        gram(k, j - 1) = -gram(k, j - 1);
    }
    return {ThimbleLattice(lattice.parity(), std::move(gram)), std::move(p)};
}

struct BraidMove {
    enum class Kind { Forward, Inverse, Flip };
    Kind kind = Kind::Forward;
    std::size_t position = 1;

    friend bool operator==(const BraidMove&, const BraidMove&) = default;

    std::string token() const
    {
        const char c = kind == Kind::Forward ? 'a' : kind == Kind::Inverse ? 'A' : 'f';
        return c + std::to_string(position);
    }
};

using BraidWord = std::vector<BraidMove>;

/// Tokens a<j> (alpha_j), A<j> (alpha_j^{-1}), f<j> (flip), separated by
/// whitespace or commas.
inline BraidWord parse_braid_word(std::string_view text)
{
    BraidWord word;
    std::size_t k = 0;
    while (k < text.size()) {
        const char c = text[k];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++k;
            continue;
        }
        BraidMove move;
        switch (c) {
        case 'a': move.kind = BraidMove::Kind::Forward; break;
        case 'A': move.kind = BraidMove::Kind::Inverse; break;
        case 'f': move.kind = BraidMove::Kind::Flip; break;
        default:
            throw Error("braid word: unexpected character '" + std::string(1, c) +
                        "' at offset " + std::to_string(k));
        }
        const std::size_t start = ++k;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
            ++k;
        if (k == start || k - start > 9)
            throw Error("braid word: missing or oversized position after '" + std::string(1, c) +
                        "' at offset " + std::to_string(start - 1));
        move.position = std::stoul(std::string(text.substr(start, k - start)));
        if (move.position == 0)
            throw Error("braid word: positions are 1-based (offset " +
                        std::to_string(start - 1) + ")");
        if (k < text.size() && !std::isspace(static_cast<unsigned char>(text[k])) &&
            text[k] != ',')
            throw Error("braid word: junk after token at offset " + std::to_string(k));
        word.push_back(move);
    }
    return word;
}

inline std::string to_string(const BraidWord& word)
{
    std::string out;
    for (const auto& m : word) {
        if (!out.empty())
            out += ' ';
        out += m.token();
    }
    return out;
}

inline Rebased apply_move(const ThimbleLattice& lattice, const BraidMove& move)
{
    switch (move.kind) {
    case BraidMove::Kind::Forward: return braid_alpha(lattice, move.position);
    case BraidMove::Kind::Inverse: return braid_alpha_inverse(lattice, move.position);
    case BraidMove::Kind::Flip: return orientation_flip(lattice, move.position);
    }
    throw Error("apply_move: unknown move kind");
}

/// Left-to-right composition; the basis change maps the original basis to
/// the final one.
inline Rebased apply_braid_word(const ThimbleLattice& lattice, const BraidWord& word)
{
    Rebased acc{lattice, IntMatrix::identity(lattice.rank())};
    for (std::size_t k = 0; k < word.size(); ++k) {
        try {
            Rebased step = apply_move(acc.lattice, word[k]);
            acc.basis_change = acc.basis_change * step.basis_change;
            acc.lattice = std::move(step.lattice);
        } catch (const Error& e) {
            throw Error("braid word: move " + std::to_string(k + 1) + " (" + word[k].token() +
                        "): " + e.what());
        }
    }
    return acc;
}

}  // namespace thimble
