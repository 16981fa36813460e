#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thimble/basis_ops.hpp"
#include "thimble/generators.hpp"
#include "thimble/index.hpp"
#include "thimble/instance_io.hpp"
#include "thimble/verify.hpp"

namespace thimble::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Largest exponent tried when reporting the order of a monodromy matrix.
inline constexpr int kMaxReportedOrder = 240;

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw UsageError("cannot write " + path);
}

inline InstanceDocument load(const std::string& path)
{
    const std::string text = read_file(path);
    try {
        return parse_instance(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// Smallest k <= limit with m^k = I.
inline std::optional<int> matrix_order(const IntMatrix& m, int limit)
{
    IntMatrix power = m;
    for (int k = 1; k <= limit; ++k) {
        if (power.is_identity())
            return k;
        power = power * m;
    }
    return std::nullopt;
}

/// Golden values stored in the file that disagree with what we compute.
inline std::vector<std::string> expected_mismatches(const InstanceDocument& doc)
{
    std::vector<std::string> out;
    const IcisInstance& inst = doc.instance;
    if (doc.expected.index) {
        const long long v = index_eq2(inst);
        if (v != *doc.expected.index)
            out.push_back("expected index " + std::to_string(*doc.expected.index) + ", computed " +
                          std::to_string(v));
    }
    if (doc.expected.theorem2)
        for (std::size_t k = 0; k < inst.levels.size(); ++k) {
            const long long v =
                theorem2_value(inst.levels[k], inst.n, inst.sign_for_level(static_cast<long long>(k)));
            if (v != (*doc.expected.theorem2)[k])
                out.push_back("level " + std::to_string(k) + ": expected theorem2 value " +
                              std::to_string((*doc.expected.theorem2)[k]) + ", computed " + std::to_string(v));
        }
    if (doc.expected.var_inverse)
        for (std::size_t k = 0; k < inst.levels.size(); ++k)
            if (auto m = first_mismatch((*doc.expected.var_inverse)[k], var_inverse(inst.levels[k].lattice)))
                out.push_back("level " + std::to_string(k) + ": expected Var^{-1} differs at " + m->describe());
    return out;
}

inline int cmd_validate(const std::string& path, Streams io)
{
    const InstanceDocument doc = load(path);
    const IcisInstance& inst = doc.instance;
    std::vector<std::string> problems = instance_issues(inst);
    if (problems.empty()) {
        for (const LevelWord& lw : doc.braid_words) {
            const std::string where = "braid word " + std::to_string(lw.level) + " \"" + to_string(lw.word) + "\": ";
            try {
                if (auto m = check_var_inverse_after_braid(inst.levels[lw.level].lattice, lw.word))
                    problems.push_back(where + "Var^{-1} not congruent at " + m->describe());
            } catch (const Error& e) {
                problems.push_back(where + e.what());
            }
        }
        for (auto& m : expected_mismatches(doc))
            problems.push_back(std::move(m));
    }
    for (const LevelData& level : inst.levels) {
        bool clean = true;
        const std::string tag = "level " + std::to_string(level.i) + ":";
        for (const auto& p : problems)
            if (p.rfind(tag, 0) == 0)
                clean = false;
        if (clean)
            io.out << tag << " ok (rank " << level.lattice.rank() << ", parity " << level.lattice.parity() << ")\n";
    }
    for (const auto& p : problems)
        io.out << "violation: " << p << '\n';
    io.out << (problems.empty() ? "valid\n" : "invalid: " + std::to_string(problems.size()) + " violation(s)\n");
    return problems.empty() ? kOk : kViolation;
}

inline std::vector<std::size_t> selected_levels(const IcisInstance& inst, std::optional<std::size_t> level)
{
    if (level) {
        if (*level >= inst.levels.size())
            throw UsageError("--level " + std::to_string(*level) + " but the instance has levels 0.." +
                             std::to_string(inst.levels.size() - 1));
        return {*level};
    }
    std::vector<std::size_t> all(inst.levels.size());
    for (std::size_t k = 0; k < all.size(); ++k)
        all[k] = k;
    return all;
}

inline int cmd_compute(const std::string& path, const std::string& what, std::optional<std::size_t> level,
                       Streams io)
{
    const InstanceDocument doc = load(path);
    const IcisInstance& inst = doc.instance;
    if (const auto issues = instance_issues(inst); !issues.empty()) {
        for (const auto& p : issues)
            io.err << "violation: " << p << '\n';
        return kViolation;
    }
    const auto levels = selected_levels(inst, level);
    if (what == "index") {
        io.out << index_eq2(inst) << '\n';
        return kOk;
    }
    if (what == "theorem3") {
        for (std::size_t k : levels)
            if (inst.levels[k].lattice.parity() % 2 == 0) {
                try {
                    theorem3_value(inst.levels[k], inst.sign_for_level(static_cast<long long>(k)));
                } catch (const UnsupportedParity& e) {
                    io.err << "level " << k << ": " << e.what() << '\n';
                }
                return kUsage;
            }
    }
    for (std::size_t k : levels) {
        const LevelData& l = inst.levels[k];
        const int s = inst.sign_for_level(static_cast<long long>(k));
        io.out << "level " << k << ": ";
        if (what == "var-inverse") {
            io.out << var_inverse(l.lattice) << '\n';
        } else if (what == "monodromy") {
            io.out << monodromy(l.lattice) << '\n';
        } else if (what == "signature") {
            const Signature sig = level_signature(l);
            io.out << sig.to_string() << " sgn " << sig.sgn() << '\n';
        } else if (what == "theorem2") {
            io.out << theorem2_value(l, inst.n, s) << '\n';
        } else {
            io.out << theorem3_value(l, s) << '\n';
        }
    }
    if (what == "monodromy") {
        for (std::size_t k : levels) {
            const IntMatrix h = monodromy(inst.levels[k].lattice);
            if (auto order = matrix_order(h, kMaxReportedOrder))
                io.out << "# level " << k << ": h^" << *order << " = I\n";
            else
                io.out << "# level " << k << ": h^k != I for k <= " << kMaxReportedOrder << '\n';
        }
    }
    return kOk;
}

inline int cmd_braid(const std::string& path, const std::string& word_text, std::size_t level,
                     const std::string& output, Streams io)
{
    InstanceDocument doc = load(path);
    BraidWord word;
    try {
        word = parse_braid_word(word_text);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    IcisInstance& inst = doc.instance;
    if (level >= inst.levels.size())
        throw UsageError("--level " + std::to_string(level) + " but the instance has levels 0.." +
                         std::to_string(inst.levels.size() - 1));
    LevelData& l = inst.levels[level];
    Rebased moved;
    try {
        moved = apply_braid_word(l.lattice, word);
    } catch (const Error& e) {
        io.err << "braid: " << e.what() << '\n';
        return kViolation;
    }
    if (!word.empty()) {
        const IntMatrix frame = (l.frame ? *l.frame : IntMatrix::identity(l.lattice.rank())) * moved.basis_change;
        l.lattice = moved.lattice;
        l.frame = frame.is_identity() ? std::nullopt : std::optional<IntMatrix>(frame);
        doc.expected.var_inverse.reset();
        doc.braid_words.clear();
        doc.provenance = "braid \"" + to_string(word) + "\" at level " + std::to_string(level) + " of " +
                         std::filesystem::path(path).filename().string();
    }
    const std::string text = serialize_instance(doc);
    const std::string change = "basis change (level " + std::to_string(level) + "): " +
                               moved.basis_change.to_string() + "\n";
    if (output.empty() || output == "-") {
        io.err << change;
        io.out << text;
    } else {
        write_file(output, text);
        io.out << change;
    }
    return kOk;
}

inline InstanceDocument generated_document(std::uint64_t seed, const InstanceShape& shape)
{
    InstanceDocument doc;
    doc.instance = generate_instance(seed, shape);
    doc.provenance = "gen --seed " + std::to_string(seed) + " --n " + std::to_string(shape.n) + " --p " +
                     std::to_string(shape.p) + " --rank-bound " + std::to_string(shape.rank_bound);
    doc.expected.index = index_eq2(doc.instance);
    std::vector<long long> t2;
    for (const auto& l : doc.instance.levels)
        t2.push_back(theorem2_value(l, doc.instance.n, doc.instance.sign_for_level(l.i)));
    doc.expected.theorem2 = std::move(t2);
    return doc;
}

inline int cmd_gen(std::uint64_t seed, std::size_t count, const InstanceShape& shape, const std::string& output,
                   Streams io)
{
    if (count == 1) {
        const std::string text = serialize_instance(generated_document(seed, shape));
        if (output.empty() || output == "-")
            io.out << text;
        else
            write_file(output, text);
        return kOk;
    }
    if (output.empty() || output == "-")
        throw UsageError("gen: --count > 1 needs --output <directory>");
    std::filesystem::create_directories(output);
    for (std::size_t k = 0; k < count; ++k) {
        const auto file = std::filesystem::path(output) / ("instance_" + std::to_string(k) + ".json");
        write_file(file.string(), serialize_instance(generated_document(verify_item_seed(seed, k), shape)));
        io.out << file.string() << '\n';
    }
    return kOk;
}

inline int cmd_verify(std::uint64_t seed, std::size_t count, std::size_t rank_bound, const std::string& output,
                      Streams io)
{
    const VerifyReport report = run_verify(seed, count, rank_bound);
    io.out << "verify: seed " << seed << ", rank bound " << rank_bound << ", " << report.checked
           << " instance(s) checked\n";
    if (report.ok()) {
        io.out << "pass\n";
        return kOk;
    }
    const VerifyFailure& f = *report.failure;
    io.out << "FAIL at item " << f.item << " (check seed " << f.item_seed << ")\n";
    for (const auto& c : f.failures)
        io.out << "  " << c.check << ": " << c.detail << '\n';
    if (output.empty() || output == "-") {
        io.out << f.counterexample;
    } else {
        write_file(output, f.counterexample);
        io.out << "counterexample written to " << output << '\n';
    }
    return kViolation;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, Streams io)
{
    CLI::App app{"Exact vanishing-lattice computations and index formulas"};
    app.require_subcommand(1);

    std::string path, what, word, output;
    std::optional<std::size_t> level;
    std::size_t braid_level = 0;
    std::uint64_t seed = kDefaultVerifySeed;
    std::size_t count = kDefaultVerifyCount;
    std::size_t rank_bound = 4;
    long long gen_n = 1, gen_p = 0;

    auto* validate = app.add_subcommand("validate", "Check an instance file and any golden values it carries");
    validate->add_option("file", path, "Instance file")->required();

    auto* compute = app.add_subcommand("compute", "Print exact values for an instance");
    compute->add_option("file", path, "Instance file")->required();
    compute->add_option("--what", what, "Quantity to compute")
        ->required()
        ->check(CLI::IsMember({"var-inverse", "monodromy", "signature", "index", "theorem2", "theorem3"}));
    compute->add_option("--level", level, "Restrict to one level");

    auto* braid = app.add_subcommand("braid", "Apply a braid word to one level");
    braid->add_option("file", path, "Instance file")->required();
    braid->add_option("--word", word, "Moves a<j>, A<j> (inverse), f<j> (flip)")->required();
    braid->add_option("--level", braid_level, "Level to transform")->capture_default_str();
    braid->add_option("--output", output, "Output file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite on generated instances");
    verify->add_option("--seed", seed, "Seed")->capture_default_str();
    verify->add_option("--count", count, "Number of instances")->capture_default_str();
    verify->add_option("--rank-bound", rank_bound, "Largest level rank")->capture_default_str();
    verify->add_option("--output", output, "Where to write a counterexample (default: stdout)");

    auto* gen = app.add_subcommand("gen", "Generate consistent instances");
    gen->add_option("--seed", seed, "Seed")->capture_default_str();
    gen->add_option("--count", count, "Number of instances (more than one needs --output <dir>)");
    gen->add_option("--rank-bound", rank_bound, "Largest level rank")->capture_default_str();
    gen->add_option("--n", gen_n, "Fibre dimension parameter n >= 1")->capture_default_str();
    gen->add_option("--p", gen_p, "Codimension parameter p >= 0")->capture_default_str();
    gen->add_option("--output", output, "Output file or directory (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        io.out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        io.err << "error: " << e.what() << "\n\n" << sub->help();
        return kUsage;
    }

    try {
        if (validate->parsed())
            return detail::cmd_validate(path, io);
        if (compute->parsed())
            return detail::cmd_compute(path, what, level, io);
        if (braid->parsed())
            return detail::cmd_braid(path, word, braid_level, output, io);
        if (verify->parsed())
            return detail::cmd_verify(seed, count, rank_bound, output, io);
        if (gen_n < 1 || gen_p < 0)
            throw detail::UsageError("gen: need --n >= 1 and --p >= 0");
        if (gen->count("--count") == 0)
            count = 1;
        return detail::cmd_gen(seed, count, InstanceShape{gen_n, gen_p, rank_bound, true}, output, io);
    } catch (const detail::UsageError& e) {
        io.err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedParity& e) {
        io.err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        io.err << "violation: " << e.what() << '\n';
        return kViolation;
    }
}

}  // namespace thimble::cli
