#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thimble/basis_ops.hpp"
#include "thimble/conjugation.hpp"
#include "thimble/index.hpp"
#include "thimble/matrix.hpp"

namespace thimble {

inline constexpr std::string_view kFormatName = "thimble-instance";
inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kConventionNote =
    "gram[r][c] = <delta_c, delta_r>; an operator matrix sends basis vector i to column i";

struct LevelWord {
    std::size_t level = 0;
    BraidWord word;

    friend bool operator==(const LevelWord&, const LevelWord&) = default;
};

/// Optional golden values carried by an instance file.
struct Expected {
    std::optional<long long> index;
    std::optional<std::vector<long long>> theorem2;
    std::optional<std::vector<IntMatrix>> var_inverse;

    bool empty() const { return !index && !theorem2 && !var_inverse; }

    friend bool operator==(const Expected&, const Expected&) = default;
};

struct InstanceDocument {
    IcisInstance instance;
    std::vector<LevelWord> braid_words;
    Expected expected;
    std::optional<std::string> provenance;

    friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

/// Syntax errors carry line/column; schema errors carry the JSON path.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column, std::string path)
        : Error(message), line_(line), column_(column), path_(std::move(path))
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& path() const noexcept { return path_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string path_;
};

namespace io_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw ParseError("at " + (path.empty() ? std::string("/") : path) + ": " + what, 0, 0, path);
}

inline const json& member(const json& obj, const std::string& path, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

inline void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(path, "unknown key \"" + it.key() + "\"");
}

inline Integer to_integer(const json& v, const std::string& path)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (k == s.size())
            fail(path, "empty integer string");
        for (; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                fail(path, "\"" + s + "\" is not an integer");
        return Integer(s);
    }
    fail(path, "expected an integer");
}

inline long long to_int64(const json& v, const std::string& path)
{
    const Integer x = to_integer(v, path);
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        fail(path, "value out of range");
    return x.convert_to<long long>();
}

inline std::size_t to_index(const json& v, const std::string& path)
{
    const long long x = to_int64(v, path);
    if (x < 0)
        fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(x);
}

inline IntMatrix to_matrix(const json& v, const std::string& path, std::optional<std::size_t> rank)
{
    if (!v.is_array())
        fail(path, "expected a matrix (array of rows)");
    std::vector<std::vector<Integer>> rows;
    for (std::size_t r = 0; r < v.size(); ++r) {
        const std::string rp = path + "/" + std::to_string(r);
        if (!v[r].is_array())
            fail(rp, "expected a row array");
        if (v[r].size() != v.size())
            fail(rp, "row has " + std::to_string(v[r].size()) + " entries, matrix has " +
                         std::to_string(v.size()) + " rows (square matrix expected)");
        std::vector<Integer> row;
        for (std::size_t c = 0; c < v[r].size(); ++c)
            row.push_back(to_integer(v[r][c], rp + "/" + std::to_string(c)));
        rows.push_back(std::move(row));
    }
    if (rank && rows.size() != *rank)
        fail(path, "expected a " + std::to_string(*rank) + "x" + std::to_string(*rank) + " matrix");
    return IntMatrix::from_rows(rows);
}

inline MorseSpec to_morse(const json& v, const std::string& path)
{
    if (!v.is_array())
        fail(path, "expected an array of critical points");
    std::vector<CriticalPoint> points;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string pp = path + "/" + std::to_string(k);
        const json& e = v[k];
        if (!e.is_object() || e.size() != 1)
            fail(pp, "expected {\"real\": m} or {\"pair\": a}");
        if (e.contains("real"))
            points.push_back(CriticalPoint::real(to_int64(e["real"], pp + "/real")));
        else if (e.contains("pair"))
            points.push_back(CriticalPoint::pair(to_integer(e["pair"], pp + "/pair")));
        else
            fail(pp, "expected {\"real\": m} or {\"pair\": a}");
    }
    return MorseSpec(std::move(points));
}

inline LevelData to_level(const json& v, const std::string& path, long long n)
{
    only_keys(v, path, {"i", "gram", "morse", "sigma_upper", "frame", "cycles"});
    LevelData level;
    level.i = to_int64(member(v, path, "i"), path + "/i");
    const IntMatrix gram = to_matrix(member(v, path, "gram"), path + "/gram", std::nullopt);
    const std::size_t rank = gram.rows();
    level.lattice = ThimbleLattice(n + level.i, gram);

    MorseSpec morse = to_morse(member(v, path, "morse"), path + "/morse");
    if (morse.slot_count() != rank)
        fail(path + "/morse", "critical points occupy " + std::to_string(morse.slot_count()) +
                                  " slots, gram has rank " + std::to_string(rank));
    std::vector<UpperEntry> upper;
    if (auto it = v.find("sigma_upper"); it != v.end()) {
        const std::string up = path + "/sigma_upper";
        if (!it->is_array())
            fail(up, "expected an array of [row, col, value] triples");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const json& t = (*it)[k];
            const std::string tp = up + "/" + std::to_string(k);
            if (!t.is_array() || t.size() != 3)
                fail(tp, "expected [row, col, value]");
            upper.push_back({to_index(t[0], tp + "/0"), to_index(t[1], tp + "/1"),
                             to_integer(t[2], tp + "/2")});
        }
    }
    try {
        level.conj = build_sigma(std::move(morse), n + level.i, upper);
    } catch (const Error& e) {
        fail(path + "/sigma_upper", e.what());
    }

    if (auto it = v.find("frame"); it != v.end())
        level.frame = to_matrix(*it, path + "/frame", rank);
    if (auto it = v.find("cycles"); it != v.end()) {
        const std::string cp = path + "/cycles";
        only_keys(*it, cp, {"form", "sigma_s", "sigma_tilde"});
        CycleData c;
        c.form = to_matrix(member(*it, cp, "form"), cp + "/form", std::nullopt);
        c.sigma_s = to_matrix(member(*it, cp, "sigma_s"), cp + "/sigma_s", c.form.rows());
        c.sigma_tilde = to_matrix(member(*it, cp, "sigma_tilde"), cp + "/sigma_tilde", c.form.rows());
        level.cycles = std::move(c);
    }
    return level;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace io_detail

/// Parses an instance file. Levels are built with build_sigma, so sigma_s is
/// guaranteed to be an involution with the mandated block diagonal; the
/// remaining semantic checks are left to instance_issues.
inline InstanceDocument parse_instance(std::string_view text)
{
    using io_detail::fail;
    using io_detail::json;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte is one past the offending character
        const auto [line, col] = io_detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + e.what(),
                         line, col, "");
    }
    io_detail::only_keys(root, "", {"format", "version", "convention", "provenance", "n", "p",
                                    "signs", "levels", "braid_words", "expected"});
    const json& format = io_detail::member(root, "", "format");
    if (!format.is_string() || format.get<std::string>() != kFormatName)
        fail("/format", "expected \"" + std::string(kFormatName) + "\"");
    if (io_detail::to_int64(io_detail::member(root, "", "version"), "/version") != kFormatVersion)
        fail("/version", "unsupported version (this build reads version " +
                             std::to_string(kFormatVersion) + ")");
    if (auto it = root.find("convention"); it != root.end() && !it->is_string())
        fail("/convention", "expected a string");

    InstanceDocument doc;
    if (auto it = root.find("provenance"); it != root.end()) {
        if (!it->is_string())
            fail("/provenance", "expected a string");
        doc.provenance = it->get<std::string>();
    }
    IcisInstance& inst = doc.instance;
    inst.n = io_detail::to_int64(io_detail::member(root, "", "n"), "/n");
    inst.p = io_detail::to_int64(io_detail::member(root, "", "p"), "/p");
    if (inst.n < 1)
        fail("/n", "n must be at least 1");
    if (inst.p < 0)
        fail("/p", "p must be non-negative");

    const json& signs = io_detail::member(root, "", "signs");
    if (!signs.is_array())
        fail("/signs", "expected an array");
    std::vector<int> s;
    for (std::size_t k = 0; k < signs.size(); ++k) {
        const long long v = io_detail::to_int64(signs[k], "/signs/" + std::to_string(k));
        if (v != 1 && v != -1)
            fail("/signs/" + std::to_string(k), "sign must be 1 or -1");
        s.push_back(static_cast<int>(v));
    }
    if (s.size() != static_cast<std::size_t>(inst.p + 1))
        fail("/signs", "expected p+1 = " + std::to_string(inst.p + 1) + " signs");
    inst.signs = SignVector(std::move(s));

    const json& levels = io_detail::member(root, "", "levels");
    if (!levels.is_array())
        fail("/levels", "expected an array");
    if (levels.empty())
        fail("/levels", "levels list is empty");
    if (levels.size() != static_cast<std::size_t>(inst.p + 1))
        fail("/levels", "expected p+1 = " + std::to_string(inst.p + 1) + " levels, got " +
                            std::to_string(levels.size()));
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::string lp = "/levels/" + std::to_string(k);
        inst.levels.push_back(io_detail::to_level(levels[k], lp, inst.n));
        if (inst.levels.back().i != static_cast<long long>(k))
            fail(lp + "/i", "levels must be listed in order i = 0..p");
    }

    if (auto it = root.find("braid_words"); it != root.end()) {
        if (!it->is_array())
            fail("/braid_words", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string wp = "/braid_words/" + std::to_string(k);
            io_detail::only_keys((*it)[k], wp, {"level", "word"});
            LevelWord lw;
            lw.level = io_detail::to_index(io_detail::member((*it)[k], wp, "level"), wp + "/level");
            if (lw.level >= inst.levels.size())
                fail(wp + "/level", "no such level");
            const json& w = io_detail::member((*it)[k], wp, "word");
            if (!w.is_string())
                fail(wp + "/word", "expected a string");
            try {
                lw.word = parse_braid_word(w.get<std::string>());
            } catch (const Error& e) {
                fail(wp + "/word", e.what());
            }
            doc.braid_words.push_back(std::move(lw));
        }
    }

    if (auto it = root.find("expected"); it != root.end()) {
        io_detail::only_keys(*it, "/expected", {"index", "theorem2", "var_inverse"});
        if (auto x = it->find("index"); x != it->end())
            doc.expected.index = io_detail::to_int64(*x, "/expected/index");
        if (auto x = it->find("theorem2"); x != it->end()) {
            if (!x->is_array() || x->size() != inst.levels.size())
                fail("/expected/theorem2", "expected one value per level");
            std::vector<long long> vals;
            for (std::size_t k = 0; k < x->size(); ++k)
                vals.push_back(io_detail::to_int64((*x)[k], "/expected/theorem2/" + std::to_string(k)));
            doc.expected.theorem2 = std::move(vals);
        }
        if (auto x = it->find("var_inverse"); x != it->end()) {
            if (!x->is_array() || x->size() != inst.levels.size())
                fail("/expected/var_inverse", "expected one matrix per level");
            std::vector<IntMatrix> mats;
            for (std::size_t k = 0; k < x->size(); ++k)
                mats.push_back(io_detail::to_matrix((*x)[k], "/expected/var_inverse/" + std::to_string(k),
                                                    inst.levels[k].lattice.rank()));
            doc.expected.var_inverse = std::move(mats);
        }
    }
    return doc;
}

namespace io_detail {

inline std::string integer_token(const Integer& v)
{
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
        return v.str();
    return "\"" + v.str() + "\"";
}

inline void write_matrix(std::ostringstream& os, const IntMatrix& m, const std::string& indent)
{
    if (m.rows() == 0) {
        os << "[]";
        return;
    }
    os << "[\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << indent << "  [";
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << integer_token(m(r, c));
        os << ']' << (r + 1 < m.rows() ? "," : "") << '\n';
    }
    os << indent << ']';
}

inline std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

}  // namespace io_detail

/// Canonical text form. parse_instance(serialize_instance(d)) == d, and
/// serialize_instance(parse_instance(t)) == t for canonical t.
inline std::string serialize_instance(const InstanceDocument& doc)
{
    using io_detail::integer_token;
    using io_detail::quoted;
    using io_detail::write_matrix;
    const IcisInstance& inst = doc.instance;
    std::ostringstream os;
    os << "{\n";
    os << "  \"format\": " << quoted(kFormatName) << ",\n";
    os << "  \"version\": " << kFormatVersion << ",\n";
    os << "  \"convention\": " << quoted(kConventionNote) << ",\n";
    if (doc.provenance)
        os << "  \"provenance\": " << quoted(*doc.provenance) << ",\n";
    os << "  \"n\": " << inst.n << ",\n";
    os << "  \"p\": " << inst.p << ",\n";
    os << "  \"signs\": [";
    for (std::size_t k = 0; k < inst.signs.size(); ++k)
        os << (k ? ", " : "") << inst.signs.entries()[k];
    os << "],\n";
    os << "  \"levels\": [\n";
    for (std::size_t k = 0; k < inst.levels.size(); ++k) {
        const LevelData& level = inst.levels[k];
        os << "    {\n";
        os << "      \"i\": " << level.i << ",\n";
        os << "      \"gram\": ";
        write_matrix(os, level.lattice.gram(), "      ");
        os << ",\n      \"morse\": [";
        const auto& points = level.conj.morse.points();
        for (std::size_t m = 0; m < points.size(); ++m) {
            os << (m ? ", " : "");
            if (points[m].is_real())
                os << "{\"real\": " << points[m].morse_index << '}';
            else
                os << "{\"pair\": " << integer_token(points[m].pairing) << '}';
        }
        os << "],\n      \"sigma_upper\": [";
        const auto upper = upper_entries(level.conj);
        for (std::size_t u = 0; u < upper.size(); ++u)
            os << (u ? ", " : "") << '[' << upper[u].row << ", " << upper[u].col << ", "
               << integer_token(upper[u].value) << ']';
        os << ']';
        if (level.frame) {
            os << ",\n      \"frame\": ";
            write_matrix(os, *level.frame, "      ");
        }
        if (level.cycles) {
            os << ",\n      \"cycles\": {\n        \"form\": ";
            write_matrix(os, level.cycles->form, "        ");
            os << ",\n        \"sigma_s\": ";
            write_matrix(os, level.cycles->sigma_s, "        ");
            os << ",\n        \"sigma_tilde\": ";
            write_matrix(os, level.cycles->sigma_tilde, "        ");
            os << "\n      }";
        }
        os << "\n    }" << (k + 1 < inst.levels.size() ? "," : "") << '\n';
    }
    os << "  ]";
    if (!doc.braid_words.empty()) {
        os << ",\n  \"braid_words\": [\n";
        for (std::size_t k = 0; k < doc.braid_words.size(); ++k)
            os << "    {\"level\": " << doc.braid_words[k].level << ", \"word\": "
               << quoted(to_string(doc.braid_words[k].word)) << '}'
               << (k + 1 < doc.braid_words.size() ? "," : "") << '\n';
        os << "  ]";
    }
    if (!doc.expected.empty()) {
        os << ",\n  \"expected\": {";
        bool first = true;
        auto sep = [&] {
            os << (first ? "\n" : ",\n");
            first = false;
        };
        if (doc.expected.index) {
            sep();
            os << "    \"index\": " << *doc.expected.index;
        }
        if (doc.expected.theorem2) {
            sep();
            os << "    \"theorem2\": [";
            for (std::size_t k = 0; k < doc.expected.theorem2->size(); ++k)
                os << (k ? ", " : "") << (*doc.expected.theorem2)[k];
            os << ']';
        }
        if (doc.expected.var_inverse) {
            sep();
            const auto& mats = *doc.expected.var_inverse;
            os << "    \"var_inverse\": [";
            for (std::size_t k = 0; k < mats.size(); ++k) {
                os << (k ? ",\n      " : "\n      ");
                write_matrix(os, mats[k], "      ");
            }
            os << (mats.empty() ? "]" : "\n    ]");
        }
        os << "\n  }";
    }
    os << "\n}\n";
    return os.str();
}

}  // namespace thimble
