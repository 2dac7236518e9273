#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "malcev/rational.hpp"

namespace malcev {

using Vec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(std::vector<Vec> rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix: ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = std::move(rows[i][j]);
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        std::vector<Vec> rs;
        for (const auto& r : rows) {
            Vec row;
            for (long long v : r) row.emplace_back(v);
            rs.push_back(std::move(row));
        }
        return from_rows(std::move(rs));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row_vec(std::size_t i) const {
        return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void set_row(std::size_t i, const Vec& v) {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: row length mismatch");
        std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Rational& r) { return r.is_zero(); });
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j).add_product(a, o(k, j));
            }
        return r;
    }

    Matrix scaled(const Rational& f) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * f;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Rational trace() const {
        Rational t;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    /// Matrix acting on a coordinate column: (M v)_i = sum_j M(i,j) v_j.
    Vec apply(const Vec& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: vector length mismatch");
        Vec out(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j].is_zero()) continue;
            for (std::size_t i = 0; i < rows_; ++i)
                out[i].add_product((*this)(i, j), v[j]);
        }
        return out;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> data_;
};

namespace detail {

/// Scales a row to integer, content-free form: common-denominator blowup,
/// content gcd removed, first nonzero entry positive. Returns false when
/// the row is zero.
inline bool strip_content(Vec& v) {
    BigInt lcm_den = 1;
    bool nonzero = false;
    for (const Rational& r : v) {
        if (r.is_zero()) continue;
        nonzero = true;
        if (!r.is_integer()) {
            BigInt g = gcd(lcm_den, r.den());
            lcm_den = (lcm_den / g) * r.den();
        }
    }
    if (!nonzero) return false;
    BigInt content = 0;
    std::vector<BigInt> nums(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        nums[i] = v[i].num() * (lcm_den / v[i].den());
        if (content.is_zero())
            content = abs(nums[i]);
        else
            content = gcd(content, nums[i]);
    }
    int lead_sign = 0;
    for (std::size_t i = 0; i < v.size() && lead_sign == 0; ++i)
        if (!nums[i].is_zero()) lead_sign = nums[i].sign();
    if (lead_sign < 0) content = -content;
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = nums[i].is_zero() ? Rational() : Rational(BigInt(nums[i] / content));
    return true;
}

/// Fraction-free row-echelon accumulator. Rows are kept in integer,
/// content-free form with strictly increasing pivot columns; pivoting is
/// on the first nonzero entry, no magnitude heuristics.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const std::vector<Vec>& rows() const { return rows_; }

    /// Eliminates every current pivot column from v (fraction-free updates,
    /// content stripped after each hit to keep entries small).
    void reduce(Vec& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t p = pivots_[r];
            if (v[p].is_zero()) continue;
            const Rational f1 = rows_[r][p];
            const Rational f2 = v[p];
            const Vec& row = rows_[r];
            for (std::size_t c = 0; c < cols_; ++c) {
                if (v[c].is_zero() && row[c].is_zero()) continue;
                v[c] = f1 * v[c] - f2 * row[c];
            }
            strip_content(v);
        }
    }

    /// Reduces v and adopts it when independent. Returns true if rank grew.
    bool insert(Vec v) {
        if (v.size() != cols_) throw std::invalid_argument("RowEchelon: row length mismatch");
        reduce(v);
        std::size_t p = cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!v[c].is_zero()) {
                p = c;
                break;
            }
        if (p == cols_) return false;
        strip_content(v);
        const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
        const std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, p);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
        return true;
    }

    /// Canonical reduced rows: back-substituted, pivot entries scaled to 1,
    /// ordered by pivot column.
    std::vector<Vec> reduced_rows() const {
        std::vector<Vec> rs = rows_;
        for (std::size_t r = rs.size(); r-- > 0;) {
            const std::size_t p = pivots_[r];
            for (std::size_t e = 0; e < r; ++e) {
                if (rs[e][p].is_zero()) continue;
                const Rational f1 = rs[r][p];
                const Rational f2 = rs[e][p];
                for (std::size_t c = 0; c < cols_; ++c) {
                    if (rs[e][c].is_zero() && rs[r][c].is_zero()) continue;
                    rs[e][c] = f1 * rs[e][c] - f2 * rs[r][c];
                }
                strip_content(rs[e]);
            }
        }
        for (std::size_t r = 0; r < rs.size(); ++r) {
            const Rational inv = rs[r][pivots_[r]].inverse();
            for (Rational& x : rs[r])
                if (!x.is_zero()) x *= inv;
            rs[r][pivots_[r]] = 1;
        }
        return rs;
    }

private:
    std::size_t cols_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace detail

struct RrefResult {
    Matrix matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form in exact arithmetic.
inline RrefResult rref(const Matrix& m) {
    detail::RowEchelon ech(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row_vec(i));
    RrefResult res;
    res.rank = ech.rank();
    res.pivot_columns = ech.pivots();
    res.matrix = Matrix(m.rows(), m.cols());
    const auto rows = ech.reduced_rows();
    for (std::size_t r = 0; r < rows.size(); ++r) res.matrix.set_row(r, rows[r]);
    return res;
}

inline std::size_t rank(const Matrix& m) {
    detail::RowEchelon ech(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row_vec(i));
    return ech.rank();
}

/// Basis of a subspace of Q^ambient, stored as canonical RREF rows
/// (pivot entries 1, pivot columns strictly increasing).
class SubspaceBasis {
public:
    explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient) {}

    static SubspaceBasis span_of(std::size_t ambient, const std::vector<Vec>& generators) {
        detail::RowEchelon ech(ambient);
        for (const Vec& g : generators) {
            if (g.size() != ambient)
                throw std::invalid_argument("SubspaceBasis: generator length mismatch");
            ech.insert(g);
        }
        SubspaceBasis b(ambient);
        b.rows_ = ech.reduced_rows();
        b.pivots_ = ech.pivots();
        return b;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& vectors() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vec& v) const {
        Vec r = residual(v);
        return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); });
    }

    /// Coordinates of v in the canonical basis, or nullopt when outside.
    std::optional<Vec> coordinates(const Vec& v) const {
        if (v.size() != ambient_)
            throw std::invalid_argument("SubspaceBasis: vector length mismatch");
        Vec coords(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) coords[r] = v[pivots_[r]];
        Vec rebuilt(ambient_);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t c = 0; c < ambient_; ++c)
                rebuilt[c].add_product(coords[r], rows_[r][c]);
        if (rebuilt != v) return std::nullopt;
        return coords;
    }

    bool contains_all(const SubspaceBasis& other) const {
        if (other.ambient_ != ambient_)
            throw std::invalid_argument("SubspaceBasis: ambient dimension mismatch");
        return std::all_of(other.rows_.begin(), other.rows_.end(),
                           [this](const Vec& v) { return contains(v); });
    }

    friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

private:
    Vec residual(const Vec& v) const {
        if (v.size() != ambient_)
            throw std::invalid_argument("SubspaceBasis: vector length mismatch");
        Vec r = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = r[pivots_[i]];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < ambient_; ++c)
                if (!rows_[i][c].is_zero()) r[c] -= f * rows_[i][c];
        }
        return r;
    }

    std::size_t ambient_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

namespace detail {

/// Nullspace from a finished echelon: free columns extended by unit value,
/// then recanonicalized.
inline SubspaceBasis nullspace_of(const RowEchelon& ech) {
    const std::size_t n = ech.cols();
    const auto reduced = ech.reduced_rows();
    const auto& piv = ech.pivots();
    std::vector<Vec> basis;
    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (next_pivot < piv.size() && piv[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        Vec v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < reduced.size(); ++r)
            v[piv[r]] = -reduced[r][f];
        basis.push_back(std::move(v));
    }
    return SubspaceBasis::span_of(n, basis);
}

}  // namespace detail

/// Basis of {v : m v = 0}; dimension equals cols(m) - rank(m).
inline SubspaceBasis nullspace(const Matrix& m) {
    detail::RowEchelon ech(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row_vec(i));
    return detail::nullspace_of(ech);
}

inline std::size_t subspace_sum_dim(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace_sum_dim: ambient dimension mismatch");
    detail::RowEchelon ech(a.ambient_dim());
    for (const Vec& v : a.vectors()) ech.insert(v);
    for (const Vec& v : b.vectors()) ech.insert(v);
    return ech.rank();
}

/// Square matrix viewed as a linear operator; column j holds the image of
/// basis vector e_j.
struct LinearMap {
    Matrix mat;

    LinearMap() = default;
    explicit LinearMap(Matrix m) : mat(std::move(m)) {
        if (mat.rows() != mat.cols())
            throw std::invalid_argument("LinearMap: matrix must be square");
    }

    static LinearMap identity(std::size_t d) { return LinearMap(Matrix::identity(d)); }
    static LinearMap zero(std::size_t d) { return LinearMap(Matrix(d, d)); }

    std::size_t dim() const { return mat.rows(); }
    Vec apply(const Vec& v) const { return mat.apply(v); }

    LinearMap scaled(const Rational& f) const { return LinearMap(mat.scaled(f)); }
    LinearMap operator+(const LinearMap& o) const { return LinearMap(mat + o.mat); }
    LinearMap operator-(const LinearMap& o) const { return LinearMap(mat - o.mat); }
    LinearMap operator*(const LinearMap& o) const { return LinearMap(mat * o.mat); }
    friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.mat == b.mat; }

    /// Column-major flattening: entry (i,j) lands at j*d + i.
    Vec flatten() const {
        const std::size_t d = dim();
        Vec v(d * d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) v[j * d + i] = mat(i, j);
        return v;
    }

    static LinearMap unflatten(const Vec& v, std::size_t d) {
        if (v.size() != d * d) throw std::invalid_argument("LinearMap: flat length mismatch");
        Matrix m(d, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) m(i, j) = v[j * d + i];
        return LinearMap(std::move(m));
    }
};

inline LinearMap commutator(const LinearMap& a, const LinearMap& b) {
    return LinearMap(a.mat * b.mat - b.mat * a.mat);
}

}  // namespace malcev
