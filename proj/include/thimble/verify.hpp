#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thimble/basis_ops.hpp"
#include "thimble/generators.hpp"
#include "thimble/index.hpp"
#include "thimble/instance_io.hpp"
#include "thimble/random.hpp"
#include "thimble/variation.hpp"

namespace thimble {

inline constexpr std::size_t kVerifyMaxWordLength = 12;
inline constexpr std::uint64_t kDefaultVerifySeed = 20240601;
inline constexpr std::size_t kDefaultVerifyCount = 500;

struct CheckFailure {
    std::string check;
    std::string detail;

    friend bool operator==(const CheckFailure&, const CheckFailure&) = default;
};

namespace detail {

template <class F>
void guarded(std::vector<CheckFailure>& out, const std::string& check, F&& body)
{
    try {
        if (auto detail = body())
            out.push_back({check, *detail});
    } catch (const std::exception& e) {
        out.push_back({check, std::string("threw: ") + e.what()});
    }
}

inline std::optional<std::string> mismatch_text(const std::string& prefix,
                                                const std::optional<EntryMismatch>& m)
{
    if (!m)
        return std::nullopt;
    return prefix + m->describe();
}

}  // namespace detail

/// Every invariant the library promises, evaluated on one instance. `seed`
/// drives the random braid words and the sign variants; the result is a
/// pure function of (instance, seed).
inline std::vector<CheckFailure> run_instance_checks(const IcisInstance& inst, std::uint64_t seed)
{
    std::vector<CheckFailure> out;
    for (auto& issue : instance_issues(inst))
        out.push_back({"consistency", std::move(issue)});
    if (!out.empty())
        return out;

    Rng rng(seed);
    for (const LevelData& level : inst.levels) {
        const std::string at = "level " + std::to_string(level.i) + ": ";
        const ThimbleLattice lattice = adapted_lattice(level);
        detail::guarded(out, "s-relation", [&] {
            return detail::mismatch_text(at, check_s_relation(lattice));
        });
        detail::guarded(out, "monodromy-relation", [&] {
            return detail::mismatch_text(at, check_monodromy_relation(lattice));
        });
        const BraidWord word = random_braid_word(rng, lattice.rank(), kVerifyMaxWordLength);
        detail::guarded(out, "braid-invariance", [&] {
            return detail::mismatch_text(at + "word \"" + to_string(word) + "\": ",
                                         check_var_inverse_after_braid(lattice, word));
        });
        detail::guarded(out, "theorem1", [&]() -> std::optional<std::string> {
            (void)var_sigma_form(lattice, level.conj);
            return std::nullopt;
        });
        detail::guarded(out, "block-form", [&] {
            return detail::mismatch_text(at, block_diagonal_structure_check(lattice, level.conj));
        });
        const int s = inst.sign_for_level(level.i);
        detail::guarded(out, "theorem2", [&]() -> std::optional<std::string> {
            const long long a = theorem2_value(level, inst.n, s);
            const long long b = theorem2_closed_form(level, inst.n, s);
            if (a == b)
                return std::nullopt;
            return at + "signature gives " + std::to_string(a) + ", blocks give " + std::to_string(b);
        });
        if (level.cycles && lattice.parity() % 2 != 0) {
            detail::guarded(out, "theorem3", [&]() -> std::optional<std::string> {
                const long long a = theorem3_value(level, s);
                const long long b = theorem2_value(level, inst.n, s);
                if (a == b)
                    return std::nullopt;
                return at + "cycle forms give " + std::to_string(a) + ", thimbles give " +
                       std::to_string(b);
            });
        }
    }

    detail::guarded(out, "telescoping", [&]() -> std::optional<std::string> {
        const long long a = index_eq2(inst);
        const long long b = telescoped_index(inst).index;
        if (a == b)
            return std::nullopt;
        return "index formula gives " + std::to_string(a) + ", Euler recursion gives " + std::to_string(b);
    });
    detail::guarded(out, "corollary", [&]() -> std::optional<std::string> {
        std::vector<IcisInstance> variants{inst};
        for (std::size_t k = 1; k <= static_cast<std::size_t>(inst.p + 1); ++k)
            variants.push_back(sign_variant(inst, k, mix_seed(seed + k)));
        if (auto d = corollary_check(variants))
            return "variant " + std::to_string(d->variant) + " (s_" + std::to_string(d->variant) +
                   " reversed) gives " + std::to_string(d->value) + ", original gives " +
                   std::to_string(d->reference);
        return std::nullopt;
    });
    return out;
}

/// Shape of the k-th instance of a verify run.
inline InstanceShape verify_shape(std::uint64_t item_seed, std::size_t rank_bound)
{
    Rng rng(item_seed);
    InstanceShape shape;
    shape.n = rng.uniform(1, 3);
    shape.p = rng.uniform(0, 2);
    shape.rank_bound = rank_bound;
    return shape;
}

inline std::uint64_t verify_item_seed(std::uint64_t seed, std::size_t k) { return mix_seed(seed + k); }

using CheckFunction = std::function<std::vector<CheckFailure>(const IcisInstance&, std::uint64_t)>;

/// Removes top levels while the failure persists. Dropping level p drops s_1.
inline IcisInstance shrink_counterexample(const IcisInstance& inst, std::uint64_t seed,
                                          const CheckFunction& checks = run_instance_checks)
{
    IcisInstance best = inst;
    while (best.p > 0) {
        IcisInstance smaller = best;
        smaller.p -= 1;
        smaller.levels.pop_back();
        std::vector<int> signs(best.signs.entries().begin() + 1, best.signs.entries().end());
        smaller.signs = SignVector(std::move(signs));
        if (checks(smaller, seed).empty())
            break;
        best = std::move(smaller);
    }
    return best;
}

struct VerifyFailure {
    std::size_t item = 0;
    std::uint64_t item_seed = 0;
    std::vector<CheckFailure> failures;
    std::string counterexample;  // serialized instance file
};

struct VerifyReport {
    std::size_t checked = 0;
    std::optional<VerifyFailure> failure;

    bool ok() const noexcept { return !failure; }
};

/// Generates `count` instances from `seed` and checks each; stops at the
/// first failing one. Deterministic in (seed, count, rank_bound).
inline VerifyReport run_verify(std::uint64_t seed, std::size_t count, std::size_t rank_bound,
                               const CheckFunction& checks = run_instance_checks)
{
    VerifyReport report;
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t item_seed = verify_item_seed(seed, k);
        const IcisInstance inst = generate_instance(item_seed, verify_shape(item_seed, rank_bound));
        auto failures = checks(inst, item_seed);
        ++report.checked;
        if (failures.empty())
            continue;
        InstanceDocument doc;
        doc.instance = shrink_counterexample(inst, item_seed, checks);
        doc.provenance = "verify counterexample: seed " + std::to_string(seed) + ", item " +
                         std::to_string(k) + ", check seed " + std::to_string(item_seed);
        report.failure = VerifyFailure{k, item_seed, checks(doc.instance, item_seed),
                                       serialize_instance(doc)};
        break;
    }
    return report;
}

}  // namespace thimble
