#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thimble {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an operation's documented precondition does not hold.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (-1)^k for any integer k.
constexpr int minus_one_pow(long long k) noexcept { return k % 2 == 0 ? 1 : -1; }

/// (-1)^{q(q+1)/2}: the Picard-Lefschetz sign, also the diagonal of Var^{-1}.
constexpr int pl_sign(long long q) noexcept
{
    const long long r = ((q % 4) + 4) % 4;
    return (r == 0 || r == 3) ? 1 : -1;
}

/// Dense integer matrix with arbitrary-precision entries.
///
/// Operator matrices follow the columns-are-images convention: the matrix M
/// of T sends basis vector e_i to sum_j M(j, i) f_j.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw Error("IntMatrix: ragged initializer");
            for (long long v : row)
                data_.emplace_back(v);
        }
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows)
    {
        IntMatrix m;
        m.rows_ = rows.size();
        m.cols_ = m.rows_ == 0 ? 0 : rows.front().size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (const auto& row : rows) {
            if (row.size() != m.cols_)
                throw Error("IntMatrix: ragged rows");
            m.data_.insert(m.data_.end(), row.begin(), row.end());
        }
        return m;
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Integer& operator()(std::size_t r, std::size_t c)
    {
        check_index(r, c);
        return data_[r * cols_ + c];
    }

    const Integer& operator()(std::size_t r, std::size_t c) const
    {
        check_index(r, c);
        return data_[r * cols_ + c];
    }

    std::vector<Integer> row(std::size_t r) const
    {
        check_index(r, 0);
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t.data_[c * rows_ + r] = data_[r * cols_ + c];
        return t;
    }

    bool is_symmetric() const
    {
        if (!is_square())
            return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if ((*this)(r, c) != (*this)(c, r))
                    return false;
        return true;
    }

    bool is_skew_symmetric() const
    {
        if (!is_square())
            return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                if ((*this)(r, c) != -(*this)(c, r))
                    return false;
        return true;
    }

    bool is_identity() const { return is_square() && *this == identity(rows_); }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    IntMatrix& operator+=(const IntMatrix& o)
    {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }

    IntMatrix& operator-=(const IntMatrix& o)
    {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }

    IntMatrix& operator*=(const Integer& s)
    {
        for (auto& v : data_)
            v *= s;
        return *this;
    }

    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
    friend IntMatrix operator*(IntMatrix a, const Integer& s) { return a *= s; }
    friend IntMatrix operator*(const Integer& s, IntMatrix a) { return a *= s; }
    friend IntMatrix operator*(IntMatrix a, int s) { return a *= Integer(s); }
    friend IntMatrix operator*(int s, IntMatrix a) { return a *= Integer(s); }
    friend IntMatrix operator-(IntMatrix a) { return a *= Integer(-1); }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error("IntMatrix: shape mismatch in product (" + a.shape() + " * " +
                        b.shape() + ")");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a.data_[r * a.cols_ + k];
                if (x.is_zero())
                    continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    out.data_[r * b.cols_ + c] += x * b.data_[k * b.cols_ + c];
            }
        return out;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    /// Compact single-line form, e.g. [[-1,1],[0,-1]].
    std::string to_string() const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t r = 0; r < rows_; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t c = 0; c < cols_; ++c)
                os << (c ? "," : "") << (*this)(r, c);
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    void check_index(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || (c >= cols_ && !(cols_ == 0 && c == 0)))
            throw std::out_of_range("IntMatrix: index (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside " + shape());
    }

    void require_same_shape(const IntMatrix& o, const char* op) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(std::string("IntMatrix: shape mismatch in ") + op + " (" + shape() +
                        " vs " + o.shape() + ")");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMatrix& m)
{
    if (!m.is_square())
        throw Error("det: matrix is " + m.shape() + ", not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    std::vector<std::vector<Integer>> a(n);
    for (std::size_t r = 0; r < n; ++r)
        a[r] = m.row(r);
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k].is_zero())
                ++swap;
            if (swap == n)
                return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Exact inverse of a matrix with determinant +1 or -1.
inline IntMatrix unimodular_inverse(const IntMatrix& m)
{
    const Integer d = det(m);
    if (d != 1 && d != -1)
        throw Error("unimodular_inverse: determinant is " + d.str() + ", not +-1");
    const std::size_t n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = Rational(m(r, c));
        a[r][n + r] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (a[piv][k] == 0)
            ++piv;
        std::swap(a[k], a[piv]);
        const Rational inv = 1 / a[k][k];
        for (auto& v : a[k])
            v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || a[r][k] == 0)
                continue;
            const Rational f = a[r][k];
            for (std::size_t c = k; c < 2 * n; ++c)
                a[r][c] -= f * a[k][c];
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = boost::multiprecision::numerator(a[r][n + c]);
    return inv;
}

/// First entry where two same-shape matrices differ.
struct EntryMismatch {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer expected;
    Integer actual;

    std::string describe() const
    {
        return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): expected " +
               expected.str() + ", got " + actual.str();
    }
};

inline std::optional<EntryMismatch> first_mismatch(const IntMatrix& expected,
                                                   const IntMatrix& actual)
{
    if (expected.rows() != actual.rows() || expected.cols() != actual.cols())
        throw Error("first_mismatch: shape " + expected.shape() + " vs " + actual.shape());
    for (std::size_t r = 0; r < expected.rows(); ++r)
        for (std::size_t c = 0; c < expected.cols(); ++c)
            if (expected(r, c) != actual(r, c))
                return EntryMismatch{r, c, expected(r, c), actual(r, c)};
    return std::nullopt;
}

}  // namespace thimble
