#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "semilin/errors.hpp"
#include "semilin/matrix.hpp"
#include "semilin/ring_hom.hpp"

namespace semilin {

/// A twisted-linear map between free modules: x is twisted entrywise by
/// sigma, then multiplied by the matrix. sigma = identity gives an ordinary
/// linear map, sigma = conjugation a conjugate-linear one, sigma = a
/// Frobenius power a Frobenius-semilinear one; all three are the same object
/// here, distinguished only by the twist descriptor.
template <class K>
struct SemilinearMap {
    RingHom<K> twist;
    Matrix<K> matrix;

    std::size_t domain_dim() const { return matrix.cols(); }
    std::size_t codomain_dim() const { return matrix.rows(); }

    // member application: unlike the free apply, never competes with
    // std::apply through ADL on std::vector
    Vector<K> operator()(const Vector<K>& x) const;
};

template <class K>
SemilinearMap<K> make_semilinear(RingHom<K> twist, Matrix<K> matrix) {
    return SemilinearMap<K>{std::move(twist), std::move(matrix)};
}

template <class K>
Vector<K> apply(const SemilinearMap<K>& f, const Vector<K>& x) {
    if (x.size() != f.domain_dim())
        throw DimensionError("semilinear map applied to vector of dimension " +
                             std::to_string(x.size()) + ", expected " +
                             std::to_string(f.domain_dim()));
    return f.matrix * vec_map(x, [&](const K& c) { return f.twist(c); });
}

// rvalue overload: without it unqualified apply(f, expr) on a temporary
// vector would resolve to std::apply through ADL on std::vector
template <class K>
Vector<K> apply(const SemilinearMap<K>& f, Vector<K>&& x) {
    return apply(f, static_cast<const Vector<K>&>(x));
}

template <class K>
Vector<K> SemilinearMap<K>::operator()(const Vector<K>& x) const {
    return apply(*this, x);
}

/// g after f. The twist certificate comes from resolve_comp_triple, the
/// matrix is B * sigma_g(A): the outer twist must pass through the inner
/// matrix before the outer matrix can absorb it.
template <class K>
SemilinearMap<K> compose(const SemilinearMap<K>& g, const SemilinearMap<K>& f) {
    if (f.codomain_dim() != g.domain_dim())
        throw DimensionError("semilinear composition shape mismatch: inner "
                             "codomain " +
                             std::to_string(f.codomain_dim()) +
                             ", outer domain " +
                             std::to_string(g.domain_dim()));
    CompTriple<K> triple = resolve_comp_triple(f.twist, g.twist);
    Matrix<K> twisted =
        f.matrix.map([&](const K& c) { return g.twist(c); });
    return SemilinearMap<K>{std::move(triple.sigma13), g.matrix * twisted};
}

/// An invertible semilinear map bundled with its inverse data: the twist
/// inverse certificate and the matrix of the backward map. The backward map
/// is itself semilinear with twist tau, not a wrapped symbolic inverse, so
/// inverting twice reproduces the original data exactly.
template <class K>
struct SemilinearEquiv {
    SemilinearMap<K> forward;
    InvPair<K> twists;
    Matrix<K> inverse_matrix;
};

/// Certify a square semilinear map as an equivalence. For floating scalars
/// this rejects matrices whose condition estimate exceeds 1e12 instead of
/// producing an unreliable inverse.
template <class K>
SemilinearEquiv<K> make_equiv(SemilinearMap<K> f) {
    if (f.matrix.rows() != f.matrix.cols())
        throw NotInvertibleError("only square semilinear maps can be inverted");
    InvPair<K> pair = resolve_inv_pair(f.twist);
    Matrix<K> minv = inverse(f.matrix);
    Matrix<K> n = minv.map([&](const K& c) { return pair.tau(c); });
    return SemilinearEquiv<K>{std::move(f), std::move(pair), std::move(n)};
}

template <class K>
Vector<K> apply_inverse(const SemilinearEquiv<K>& e, const Vector<K>& y) {
    if (y.size() != e.forward.codomain_dim())
        throw DimensionError("inverse applied to vector of wrong dimension");
    return e.inverse_matrix *
           vec_map(y, [&](const K& c) { return e.twists.tau(c); });
}

template <class K>
Vector<K> apply_inverse(const SemilinearEquiv<K>& e, Vector<K>&& y) {
    return apply_inverse(e, static_cast<const Vector<K>&>(y));
}

/// The inverse equivalence, built from the data already certified: the
/// backward map's matrix is in hand, its twist is tau, and the original
/// forward matrix is exactly the backward map's inverse matrix. No arithmetic
/// is redone, so the round trip is exact even over floating scalars.
template <class K>
SemilinearEquiv<K> inverse(const SemilinearEquiv<K>& e) {
    return SemilinearEquiv<K>{
        SemilinearMap<K>{e.twists.tau, e.inverse_matrix},
        InvPair<K>{e.twists.tau, e.twists.sigma},
        e.forward.matrix};
}

/// Residual report from sampling the two semilinearity laws. Residuals are
/// measured with the ScalarLike weight, so they are exactly zero over exact
/// scalars and euclidean norms over floating ones.
struct SemilinearityReport {
    double max_additive = 0.0;    // f(x+y) vs f(x)+f(y)
    double max_homogeneity = 0.0; // f(c x) vs sigma(c) f(x)
    int samples = 0;

    bool within(double tol) const {
        return max_additive <= tol && max_homogeneity <= tol;
    }
};

namespace detail {

template <class K>
double weighted_norm(const Vector<K>& v) {
    double s = 0.0;
    for (const auto& x : v) s += ScalarLike<K>::weight(x);
    return std::sqrt(s);
}

} // namespace detail

/// Check f(x + y) = f(x) + f(y) and f(c x) = sigma(c) f(x) on random samples
/// drawn from the domain scalar system.
template <class K>
SemilinearityReport verify_semilinearity(const SemilinearMap<K>& f,
                                         int samples = 64,
                                         std::uint64_t seed = 0x5eed5eedULL) {
    std::mt19937_64 rng(seed);
    using Sys = ScalarSystem<K>;
    const auto& dom = f.twist.domain();
    SemilinearityReport report;
    report.samples = samples;
    const std::size_t n = f.domain_dim();
    auto rand_vec = [&]() {
        Vector<K> v;
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(Sys::random(dom, rng));
        return v;
    };
    for (int s = 0; s < samples; ++s) {
        const Vector<K> x = rand_vec();
        const Vector<K> y = rand_vec();
        const K c = Sys::random(dom, rng);

        const Vector<K> lhs_add = apply(f, vec_add(x, y));
        const Vector<K> rhs_add = vec_add(apply(f, x), apply(f, y));
        report.max_additive =
            std::max(report.max_additive,
                     detail::weighted_norm(vec_sub(lhs_add, rhs_add)));

        const Vector<K> lhs_mul = apply(f, vec_scale(c, x));
        const Vector<K> rhs_mul = vec_scale(f.twist(c), apply(f, x));
        report.max_homogeneity =
            std::max(report.max_homogeneity,
                     detail::weighted_norm(vec_sub(lhs_mul, rhs_mul)));
    }
    return report;
}

} // namespace semilin
