#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/scalar.hpp"

namespace semilin {

/// Knobs generic dense linear algebra needs from a scalar type beyond ring
/// arithmetic: how to make 0 and 1 "of the same kind" as an existing element
/// (finite-field elements carry their field with them), how to invert, and
/// how to weigh a candidate pivot. Exact scalars weigh pivots 0/1 and skip
/// conditioning checks.
template <class K>
struct ScalarLike;

template <rc_scalar K>
struct ScalarLike<K> {
    static constexpr bool exact = false;
    static K zero(const K&) { return K(0); }
    static K one(const K&) { return K(1); }
    static K invert(const K& x) { return K(1) / x; }
    static double weight(const K& x) { return rc<K>::norm_sq(x); }
};

template <class K>
using Vector = std::vector<K>;

template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const K& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols)
        requires std::default_initializable<K>
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Row-major construction from nested braces.
    Matrix(std::initializer_list<std::initializer_list<K>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw DimensionError("ragged matrix initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n)
        requires rc_scalar<K>
    {
        Matrix m(n, n, K(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool operator==(const Matrix& o) const = default;

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k)
            r.data_[k] = r.data_[k] + o.data_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k)
            r.data_[k] = r.data_[k] - o.data_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionError("matrix product shape mismatch");
        if (rows_ == 0 || o.cols_ == 0) {
            Matrix r;
            r.rows_ = rows_;
            r.cols_ = o.cols_;
            return r;
        }
        if (cols_ == 0)
            throw DimensionError("product through a zero-dimensional space");
        const K z = ScalarLike<K>::zero(sample());
        Matrix r(rows_, o.cols_, z);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& a = (*this)(i, k);
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) = r(i, j) + a * o(k, j);
            }
        return r;
    }

    Vector<K> operator*(const Vector<K>& x) const {
        if (x.size() != cols_)
            throw DimensionError("matrix-vector shape mismatch");
        if (rows_ == 0) return {};
        if (cols_ == 0)
            throw DimensionError("product through a zero-dimensional space");
        const K z = ScalarLike<K>::zero(sample());
        Vector<K> y(rows_, z);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                y[i] = y[i] + (*this)(i, j) * x[j];
        return y;
    }

    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (auto& v : r.data_) v = c * v;
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    template <class F>
    Matrix map(F&& f) const {
        Matrix r = *this;
        for (auto& v : r.data_) v = f(v);
        return r;
    }

    Vector<K> column(std::size_t j) const {
        Vector<K> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Vector<K> row(std::size_t i) const {
        return Vector<K>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void set_column(std::size_t j, const Vector<K>& c) {
        if (c.size() != rows_) throw DimensionError("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    /// Any entry, used to manufacture 0/1 of the right kind.
    const K& sample() const {
        if (data_.empty()) throw InternalError("sample() on empty matrix");
        return data_.front();
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<K> data_;
};

template <class K>
Matrix<K> transpose(const Matrix<K>& m) {
    if (m.empty()) {
        if constexpr (std::default_initializable<K>)
            return Matrix<K>(m.cols(), m.rows());
        else
            throw DimensionError("transpose of an empty matrix");
    }
    Matrix<K> r(m.cols(), m.rows(), m.sample());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

template <rc_scalar K>
Matrix<K> conj_transpose(const Matrix<K>& m) {
    Matrix<K> r(m.cols(), m.rows(), K(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(j, i) = rc<K>::conj(m(i, j));
    return r;
}

template <rc_scalar K>
double frobenius_norm(const Matrix<K>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += rc<K>::norm_sq(m(i, j));
    return std::sqrt(s);
}

template <rc_scalar K>
double max_abs(const Matrix<K>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s = std::max(s, rc<K>::norm_sq(m(i, j)));
    return std::sqrt(s);
}

// --- vector helpers ---

template <class K>
Vector<K> vec_add(const Vector<K>& a, const Vector<K>& b) {
    if (a.size() != b.size()) throw DimensionError("vector sum shape mismatch");
    Vector<K> r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

template <class K>
Vector<K> vec_sub(const Vector<K>& a, const Vector<K>& b) {
    if (a.size() != b.size())
        throw DimensionError("vector difference shape mismatch");
    Vector<K> r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

template <class K>
Vector<K> vec_scale(const K& c, const Vector<K>& v) {
    Vector<K> r = v;
    for (auto& x : r) x = c * x;
    return r;
}

template <class K, class F>
Vector<K> vec_map(const Vector<K>& v, F&& f) {
    Vector<K> r = v;
    for (auto& x : r) x = f(x);
    return r;
}

template <rc_scalar K>
double vec_norm2(const Vector<K>& v) {
    double s = 0.0;
    for (const auto& x : v) s += rc<K>::norm_sq(x);
    return std::sqrt(s);
}

template <rc_scalar K, class Rng>
Vector<K> random_vector(std::size_t n, Rng& rng, double scale = 1.0) {
    Vector<K> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(random_scalar<K>(rng, scale));
    return v;
}

namespace detail {

/// Gauss-Jordan elimination of [a | rhs] in place. Pivots by ScalarLike
/// weight; for floating scalars a pivot whose weight falls below 1e-28 times
/// the largest initial weight is treated as zero.
template <class K>
void gauss_jordan(Matrix<K>& a, Matrix<K>& rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("solve needs a square matrix");
    if (rhs.rows() != n) throw DimensionError("solve rhs shape mismatch");
    if (n == 0) return;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, ScalarLike<K>::weight(a(i, j)));
    const double floor_w = ScalarLike<K>::exact ? 0.0 : scale * 1e-28;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = ScalarLike<K>::weight(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double w = ScalarLike<K>::weight(a(i, col));
            if (w > best) {
                best = w;
                piv = i;
            }
        }
        if (best <= floor_w || (ScalarLike<K>::exact && best == 0.0))
            throw NotInvertibleError("matrix is singular to working precision");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (std::size_t j = 0; j < rhs.cols(); ++j)
                std::swap(rhs(col, j), rhs(piv, j));
        }
        const K inv_p = ScalarLike<K>::invert(a(col, col));
        for (std::size_t j = 0; j < n; ++j) a(col, j) = inv_p * a(col, j);
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            rhs(col, j) = inv_p * rhs(col, j);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const K f = a(i, col);
            if (f == ScalarLike<K>::zero(f)) continue;
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = a(i, j) - f * a(col, j);
            for (std::size_t j = 0; j < rhs.cols(); ++j)
                rhs(i, j) = rhs(i, j) - f * rhs(col, j);
        }
    }
}

} // namespace detail

/// Solve a x = b for one right-hand side. Throws NotInvertibleError when the
/// pivot search bottoms out; no conditioning guard beyond that.
template <class K>
Vector<K> solve(Matrix<K> a, const Vector<K>& b) {
    if (b.size() != a.rows()) throw DimensionError("solve rhs shape mismatch");
    if (b.empty()) return {};
    Matrix<K> rhs(b.size(), 1, b.front());
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    detail::gauss_jordan(a, rhs);
    return rhs.column(0);
}

/// Solve a X = B columnwise.
template <class K>
Matrix<K> solve(Matrix<K> a, Matrix<K> rhs) {
    detail::gauss_jordan(a, rhs);
    return rhs;
}

/// Inverse with a conditioning guard: floating-point matrices whose condition
/// estimate ||A||_F * ||A^-1||_F exceeds `cond_limit` are rejected rather
/// than inverted into noise. Exact scalars skip the guard.
template <class K>
Matrix<K> inverse(const Matrix<K>& m, double cond_limit = 1e12) {
    if (m.rows() != m.cols())
        throw DimensionError("inverse needs a square matrix");
    if (m.rows() == 0) return m;
    Matrix<K> a = m;
    const K z = ScalarLike<K>::zero(m.sample());
    const K one = ScalarLike<K>::one(m.sample());
    Matrix<K> rhs(m.rows(), m.cols(), z);
    for (std::size_t i = 0; i < m.rows(); ++i) rhs(i, i) = one;
    detail::gauss_jordan(a, rhs);
    if constexpr (!ScalarLike<K>::exact) {
        const double cond = frobenius_norm(m) * frobenius_norm(rhs);
        if (!(cond <= cond_limit))
            throw NotInvertibleError(
                "matrix rejected: condition estimate " + std::to_string(cond) +
                " exceeds limit " + std::to_string(cond_limit));
    }
    return rhs;
}

} // namespace semilin
