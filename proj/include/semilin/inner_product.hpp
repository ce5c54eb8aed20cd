#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/matrix.hpp"
#include "semilin/scalar.hpp"

namespace semilin {

/// A finite-dimensional inner-product space over an rc scalar field. The
/// inner product is conjugate-linear in the FIRST slot and linear in the
/// second: inner(x, y) = x^H G y. The gram matrix defaults to the identity
/// and is validated Hermitian positive definite otherwise.
///
/// Over the real instance conjugation is the identity, so the same formulas
/// give a symmetric bilinear form; nothing in this header branches on which
/// instance it is running over.
template <rc_scalar K>
class InnerProductSpace {
public:
    static InnerProductSpace standard(std::size_t n) {
        return InnerProductSpace(n, Matrix<K>::identity(n), true);
    }

    static InnerProductSpace with_gram(Matrix<K> gram) {
        if (gram.rows() != gram.cols())
            throw SpaceError("gram matrix must be square");
        const std::size_t n = gram.rows();
        if (n == 0) return InnerProductSpace(0, std::move(gram), true);
        const double scale = 1.0 + max_abs(gram);
        if (max_abs(gram - conj_transpose(gram)) > 1e-12 * scale)
            throw SpaceError("gram matrix is not Hermitian");
        // symmetrize away representation drift before the pivot test
        Matrix<K> g = (gram + conj_transpose(gram)).scaled(K(0.5));
        Matrix<K> a = g;
        for (std::size_t k = 0; k < n; ++k) {
            const double piv = rc<K>::re(a(k, k));
            if (!(piv > 1e-12 * scale * static_cast<double>(n)))
                throw SpaceError(
                    "gram matrix is not positive definite (pivot " +
                    std::to_string(k) + ")");
            for (std::size_t i = k + 1; i < n; ++i) {
                const K f = a(i, k) * (K(1) / a(k, k));
                for (std::size_t j = k; j < n; ++j)
                    a(i, j) = a(i, j) - f * a(k, j);
            }
        }
        bool std_gram = g == Matrix<K>::identity(n);
        return InnerProductSpace(n, std::move(g), std_gram);
    }

    std::size_t dim() const { return dim_; }
    const Matrix<K>& gram() const { return gram_; }
    bool has_standard_gram() const { return std_gram_; }

    K inner(const Vector<K>& x, const Vector<K>& y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw DimensionError("inner product operand dimension mismatch");
        K acc(0);
        if (std_gram_) {
            for (std::size_t i = 0; i < dim_; ++i)
                acc = acc + rc<K>::conj(x[i]) * y[i];
            return acc;
        }
        const Vector<K> gy = gram_ * y;
        for (std::size_t i = 0; i < dim_; ++i)
            acc = acc + rc<K>::conj(x[i]) * gy[i];
        return acc;
    }

    double norm(const Vector<K>& v) const {
        const double s = rc<K>::re(inner(v, v));
        return std::sqrt(std::max(s, 0.0));
    }

private:
    InnerProductSpace(std::size_t n, Matrix<K> gram, bool std_gram)
        : dim_(n), gram_(std::move(gram)), std_gram_(std_gram) {}

    std::size_t dim_;
    Matrix<K> gram_;
    bool std_gram_;
};

/// Modified Gram-Schmidt with a second re-orthogonalization pass. Returns an
/// orthonormal list spanning the same flag of subspaces. A vector whose
/// residual after projection drops below rel_tol times its own norm is
/// reported as dependent, naming its index.
template <rc_scalar K>
std::vector<Vector<K>> gram_schmidt(const InnerProductSpace<K>& space,
                                    const std::vector<Vector<K>>& vectors,
                                    double rel_tol = 1e-8) {
    std::vector<Vector<K>> basis;
    basis.reserve(vectors.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != space.dim())
            throw DimensionError("gram_schmidt input dimension mismatch");
        const double input_norm = space.norm(vectors[k]);
        Vector<K> u = vectors[k];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis)
                u = vec_sub(u, vec_scale(space.inner(e, u), e));
        const double res = space.norm(u);
        if (!(res > rel_tol * input_norm) || input_norm == 0.0)
            throw DependentVectorsError(
                "vector " + std::to_string(k) +
                    " is dependent on its predecessors (residual " +
                    std::to_string(res) + ")",
                k);
        basis.push_back(vec_scale(rc<K>::from_real(1.0 / res), u));
    }
    return basis;
}

/// Orthogonal projection of v onto the span of an orthonormal family.
/// The family is trusted to be orthonormal (run gram_schmidt first).
template <rc_scalar K>
Vector<K> orthogonal_projection(const InnerProductSpace<K>& space,
                                const std::vector<Vector<K>>& onb,
                                const Vector<K>& v) {
    if (v.size() != space.dim())
        throw DimensionError("projection input dimension mismatch");
    Vector<K> acc(space.dim(), K(0));
    for (const auto& e : onb)
        acc = vec_add(acc, vec_scale(space.inner(e, v), e));
    return acc;
}

/// A linear functional in flat form: f(w) = sum_j coefficients[j] * w[j].
template <rc_scalar K>
struct DualFunctional {
    Vector<K> coefficients;

    K operator()(const Vector<K>& w) const {
        if (w.size() != coefficients.size())
            throw DimensionError("functional argument dimension mismatch");
        K acc(0);
        for (std::size_t j = 0; j < w.size(); ++j)
            acc = acc + coefficients[j] * w[j];
        return acc;
    }
};

/// The functional w -> inner(v, w). Conjugate-linear in v by construction.
template <rc_scalar K>
DualFunctional<K> to_dual(const InnerProductSpace<K>& space,
                          const Vector<K>& v) {
    if (v.size() != space.dim())
        throw DimensionError("to_dual input dimension mismatch");
    Vector<K> c(space.dim(), K(0));
    const auto& g = space.gram();
    for (std::size_t j = 0; j < space.dim(); ++j) {
        K acc(0);
        for (std::size_t i = 0; i < space.dim(); ++i)
            acc = acc + rc<K>::conj(v[i]) * g(i, j);
        c[j] = acc;
    }
    return DualFunctional<K>{std::move(c)};
}

/// The unique v with inner(v, .) equal to the given functional: solves
/// G v = conj(c). Inverse of to_dual.
template <rc_scalar K>
Vector<K> riesz_representative(const InnerProductSpace<K>& space,
                               const DualFunctional<K>& f) {
    if (f.coefficients.size() != space.dim())
        throw DimensionError("functional dimension mismatch");
    Vector<K> rhs =
        vec_map(f.coefficients, [](const K& c) { return rc<K>::conj(c); });
    if (space.has_standard_gram()) return rhs;
    return solve(space.gram(), rhs);
}

/// The adjoint of A : E -> F with respect to the two inner products:
/// the unique A* with inner_E(A* y, x) = inner_F(y, A x). In matrix form
/// A* = G_E^{-1} A^H G_F.
template <rc_scalar K>
Matrix<K> adjoint(const InnerProductSpace<K>& domain,
                  const InnerProductSpace<K>& codomain, const Matrix<K>& a) {
    if (a.cols() != domain.dim() || a.rows() != codomain.dim())
        throw DimensionError("adjoint: matrix shape does not match spaces");
    if (a.rows() == 0 || a.cols() == 0) return transpose(a);
    Matrix<K> rhs = conj_transpose(a) * codomain.gram();
    if (domain.has_standard_gram()) return rhs;
    return solve(domain.gram(), std::move(rhs));
}

template <rc_scalar K>
bool is_self_adjoint(const InnerProductSpace<K>& space, const Matrix<K>& t,
                     double tol = 1e-10) {
    if (t.rows() != space.dim() || t.cols() != space.dim())
        throw DimensionError("operator shape does not match space");
    if (space.dim() == 0) return true;
    return max_abs(t - adjoint(space, space, t)) <= tol;
}

/// Does T commute with its adjoint: T* T = T T* within tol (max entry).
template <rc_scalar K>
bool is_star_normal(const InnerProductSpace<K>& space, const Matrix<K>& t,
                    double tol = 1e-10) {
    if (t.rows() != space.dim() || t.cols() != space.dim())
        throw DimensionError("operator shape does not match space");
    if (space.dim() == 0) return true;
    const Matrix<K> ts = adjoint(space, space, t);
    return max_abs(ts * t - t * ts) <= tol;
}

} // namespace semilin
