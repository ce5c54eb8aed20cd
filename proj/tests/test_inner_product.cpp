#include <doctest.h>

#include <complex>
#include <random>

#include "semilin/inner_product.hpp"
#include "semilin/matrix.hpp"

using namespace semilin;
using C = std::complex<double>;

namespace {

template <class K>
Matrix<K> random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    Matrix<K> a(m, n, K(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = random_scalar<K>(rng);
    return a;
}

// Hermitian positive definite by construction: B^H B + I.
template <class K>
InnerProductSpace<K> random_space(std::size_t n, std::mt19937_64& rng) {
    const auto b = random_matrix<K>(n, n, rng);
    return InnerProductSpace<K>::with_gram(conj_transpose(b) * b +
                                           Matrix<K>::identity(n));
}

template <class K>
double vec_dist(const Vector<K>& a, const Vector<K>& b) {
    return vec_norm2(vec_sub(a, b));
}

} // namespace

TEST_SUITE("inner_product") {

TEST_CASE_TEMPLATE("inner product axioms on standard and weighted spaces", K,
                   double, C) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const auto space = trial % 2 ? random_space<K>(4, rng)
                                     : InnerProductSpace<K>::standard(4);
        const auto x = random_vector<K>(4, rng);
        const auto y = random_vector<K>(4, rng);
        const auto z = random_vector<K>(4, rng);
        const K c = random_scalar<K>(rng);

        // Hermitian symmetry and positivity
        CHECK(abs_value(space.inner(x, y) -
                        rc<K>::conj(space.inner(y, x))) <= 1e-10);
        CHECK(rc<K>::re(space.inner(x, x)) >= 0.0);
        CHECK(std::abs(rc<K>::im(space.inner(x, x))) <= 1e-10);

        // linear in the second slot, conjugate-linear in the first
        CHECK(abs_value(space.inner(x, vec_add(y, z)) -
                        (space.inner(x, y) + space.inner(x, z))) <= 1e-9);
        CHECK(abs_value(space.inner(x, vec_scale(c, y)) -
                        c * space.inner(x, y)) <= 1e-9);
        CHECK(abs_value(space.inner(vec_scale(c, x), y) -
                        rc<K>::conj(c) * space.inner(x, y)) <= 1e-9);
    }
}

TEST_CASE("pythagoras: the (3,4) vector has norm 5") {
    const auto space = InnerProductSpace<double>::standard(2);
    CHECK(space.norm({3.0, 4.0}) == doctest::Approx(5.0));
    const auto cspace = InnerProductSpace<C>::standard(2);
    CHECK(cspace.norm({C(3.0), C(0.0, 4.0)}) == doctest::Approx(5.0));
}

TEST_CASE("gram matrices are vetted: shape, symmetry, positivity") {
    using S = InnerProductSpace<double>;
    CHECK_THROWS_AS((void)S::with_gram(Matrix<double>(2, 3, 0.0)), SpaceError);
    CHECK_THROWS_AS((void)S::with_gram(Matrix<double>{{1.0, 0.5}, {0.1, 1.0}}),
                    SpaceError);
    CHECK_THROWS_AS((void)S::with_gram(Matrix<double>{{1.0, 0.0}, {0.0, -1.0}}),
                    SpaceError);
    CHECK_THROWS_AS((void)S::with_gram(Matrix<double>{{1.0, 2.0}, {2.0, 1.0}}),
                    SpaceError);
    const auto ok = S::with_gram(Matrix<double>{{2.0, 1.0}, {1.0, 2.0}});
    CHECK(ok.inner({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
    CHECK_FALSE(ok.has_standard_gram());
    CHECK(S::standard(2).has_standard_gram());
}

TEST_CASE_TEMPLATE("gram_schmidt straightens {(1,0),(1,1)} to the standard basis",
                   K, double, C) {
    const auto space = InnerProductSpace<K>::standard(2);
    const auto q = gram_schmidt(space, {{K(1), K(0)}, {K(1), K(1)}});
    REQUIRE(q.size() == 2);
    CHECK(vec_dist(q[0], Vector<K>{K(1), K(0)}) <= 1e-12);
    CHECK(vec_dist(q[1], Vector<K>{K(0), K(1)}) <= 1e-12);
}

TEST_CASE_TEMPLATE("gram_schmidt produces orthonormal families", K, double, C) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const auto space = trial % 2 ? random_space<K>(5, rng)
                                     : InnerProductSpace<K>::standard(5);
        std::vector<Vector<K>> input;
        for (int k = 0; k < 4; ++k) input.push_back(random_vector<K>(5, rng));
        const auto q = gram_schmidt(space, input);
        REQUIRE(q.size() == 4);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                const double expect = i == j ? 1.0 : 0.0;
                CHECK(abs_value(space.inner(q[i], q[j]) -
                                rc<K>::from_real(expect)) <= 1e-9);
            }
        // the span is preserved: each input is its own projection
        for (const auto& v : input)
            CHECK(vec_dist(orthogonal_projection(space, q, v), v) <=
                  1e-8 * (1.0 + vec_norm2(v)));
    }
}

TEST_CASE("gram_schmidt reports which vector is dependent") {
    const auto space = InnerProductSpace<double>::standard(3);
    const std::vector<Vector<double>> vs = {
        {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}};
    try {
        (void)gram_schmidt(space, vs);
        FAIL("expected DependentVectorsError");
    } catch (const DependentVectorsError& e) {
        CHECK(e.index == 2);
    }
    // a zero vector is dependent on the empty prefix
    try {
        (void)gram_schmidt(space, {{0.0, 0.0, 0.0}});
        FAIL("expected DependentVectorsError");
    } catch (const DependentVectorsError& e) {
        CHECK(e.index == 0);
    }
}

TEST_CASE_TEMPLATE("projection is idempotent and leaves orthogonal residue", K,
                   double, C) {
    std::mt19937_64 rng(23);
    const auto space = random_space<K>(5, rng);
    std::vector<Vector<K>> input;
    for (int k = 0; k < 3; ++k) input.push_back(random_vector<K>(5, rng));
    const auto q = gram_schmidt(space, input);
    const auto v = random_vector<K>(5, rng);
    const auto pv = orthogonal_projection(space, q, v);
    CHECK(vec_dist(orthogonal_projection(space, q, pv), pv) <= 1e-9);
    const auto res = vec_sub(v, pv);
    for (const auto& e : q)
        CHECK(abs_value(space.inner(e, res)) <= 1e-9);
    // projection never increases the norm
    CHECK(space.norm(pv) <= space.norm(v) + 1e-12);
}

TEST_CASE_TEMPLATE("to_dual and riesz_representative invert each other", K,
                   double, C) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 8; ++trial) {
        const auto space = trial % 2 ? random_space<K>(4, rng)
                                     : InnerProductSpace<K>::standard(4);
        const auto v = random_vector<K>(4, rng);
        const auto f = to_dual(space, v);
        // the functional really is inner(v, .)
        for (int s = 0; s < 8; ++s) {
            const auto w = random_vector<K>(4, rng);
            CHECK(abs_value(f(w) - space.inner(v, w)) <= 1e-9);
        }
        CHECK(vec_dist(riesz_representative(space, f), v) <= 1e-9);

        // and the other way: start from raw coefficients
        DualFunctional<K> g{random_vector<K>(4, rng)};
        const auto rep = riesz_representative(space, g);
        CHECK(vec_dist(to_dual(space, rep).coefficients, g.coefficients) <=
              1e-9);
    }
}

TEST_CASE("riesz representative of the first-coordinate functional") {
    const auto space = InnerProductSpace<double>::standard(2);
    const auto v = riesz_representative(space, DualFunctional<double>{{1.0, 0.0}});
    CHECK(vec_dist(v, {1.0, 0.0}) <= 1e-15);
}

TEST_CASE_TEMPLATE("the riesz norm equals the operator norm of the functional",
                   K, double, C) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 4; ++trial) {
        const auto space = trial % 2 ? random_space<K>(3, rng)
                                     : InnerProductSpace<K>::standard(3);
        DualFunctional<K> f{random_vector<K>(3, rng)};
        const auto v = riesz_representative(space, f);
        const double vnorm = space.norm(v);

        // sampled sup of |f(w)| / |w| never exceeds |v|, and the
        // representative itself attains it
        double best = 0.0;
        for (int s = 0; s < 200; ++s) {
            const auto w = random_vector<K>(3, rng);
            const double wn = space.norm(w);
            if (wn > 1e-9) best = std::max(best, abs_value(f(w)) / wn);
        }
        CHECK(best <= vnorm * (1.0 + 1e-6));
        CHECK(abs_value(f(v)) >= vnorm * vnorm * (1.0 - 1e-6));
        CHECK(abs_value(f(v)) / (vnorm > 0 ? vnorm : 1.0) >=
              best * (1.0 - 1e-6));
    }
}

TEST_CASE("adjoint of the raising block swaps the corner and conjugates") {
    const auto space = InnerProductSpace<C>::standard(2);
    const C i(0.0, 1.0);
    const Matrix<C> a{{C(0.0), i}, {C(0.0), C(0.0)}};
    const auto as = adjoint(space, space, a);
    CHECK(max_abs(as - Matrix<C>{{C(0.0), C(0.0)}, {-i, C(0.0)}}) <= 1e-15);
}

TEST_CASE_TEMPLATE("adjoint is involutive and conjugate-linear", K, double, C) {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 6; ++trial) {
        const auto dom = trial % 2 ? random_space<K>(3, rng)
                                   : InnerProductSpace<K>::standard(3);
        const auto cod = trial % 2 ? random_space<K>(4, rng)
                                   : InnerProductSpace<K>::standard(4);
        const auto a = random_matrix<K>(4, 3, rng);
        const auto b = random_matrix<K>(4, 3, rng);
        const K c = random_scalar<K>(rng);

        const auto as = adjoint(dom, cod, a);
        CHECK(as.rows() == 3);
        CHECK(as.cols() == 4);
        CHECK(max_abs(adjoint(cod, dom, as) - a) <= 1e-9);
        CHECK(max_abs(adjoint(dom, cod, a + b) - (as + adjoint(dom, cod, b))) <=
              1e-9);
        CHECK(max_abs(adjoint(dom, cod, a.scaled(c)) -
                      as.scaled(rc<K>::conj(c))) <= 1e-9);

        // the defining identity, sampled
        for (int s = 0; s < 10; ++s) {
            const auto x = random_vector<K>(4, rng);
            const auto y = random_vector<K>(3, rng);
            CHECK(abs_value(dom.inner(as * x, y) - cod.inner(x, a * y)) <=
                  1e-8);
        }
    }
}

TEST_CASE_TEMPLATE("adjoint preserves the frobenius norm on standard spaces", K,
                   double, C) {
    std::mt19937_64 rng(27);
    const auto dom = InnerProductSpace<K>::standard(3);
    const auto cod = InnerProductSpace<K>::standard(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_matrix<K>(5, 3, rng);
        CHECK(frobenius_norm(adjoint(dom, cod, a)) ==
              doctest::Approx(frobenius_norm(a)).epsilon(1e-12));
    }
}

TEST_CASE("self-adjointness and normality detectors") {
    const auto rspace = InnerProductSpace<double>::standard(2);
    CHECK(is_self_adjoint(rspace, Matrix<double>{{2.0, 1.0}, {1.0, 2.0}}));
    CHECK_FALSE(is_self_adjoint(rspace, Matrix<double>{{2.0, 1.0}, {0.0, 2.0}}));

    const auto cspace = InnerProductSpace<C>::standard(2);
    const C i(0.0, 1.0);
    CHECK(is_self_adjoint(cspace, Matrix<C>{{C(1.0), i}, {-i, C(1.0)}}));
    CHECK_FALSE(is_self_adjoint(cspace, Matrix<C>{{C(1.0), i}, {i, C(1.0)}}));

    // the quarter-turn is normal but not self-adjoint, over R and C alike
    const Matrix<double> rot{{0.0, -1.0}, {1.0, 0.0}};
    CHECK(is_star_normal(rspace, rot));
    CHECK_FALSE(is_self_adjoint(rspace, rot));
    CHECK(is_star_normal(cspace, Matrix<C>{{C(0.0), C(-1.0)}, {C(1.0), C(0.0)}}));

    // shear: the classic non-normal matrix
    CHECK_FALSE(is_star_normal(rspace, Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}));

    // self-adjointness depends on the gram matrix
    const auto weighted = InnerProductSpace<double>::with_gram(
        Matrix<double>{{2.0, 0.0}, {0.0, 1.0}});
    const Matrix<double> t{{0.0, 1.0}, {2.0, 0.0}};
    CHECK(is_self_adjoint(weighted, t));
    CHECK_FALSE(is_self_adjoint(rspace, t));
}

TEST_CASE("shape mismatches are caught up front") {
    const auto s2 = InnerProductSpace<double>::standard(2);
    const auto s3 = InnerProductSpace<double>::standard(3);
    CHECK_THROWS_AS((void)s2.inner({1.0}, {1.0, 0.0}), DimensionError);
    CHECK_THROWS_AS((void)adjoint(s2, s3, Matrix<double>(2, 2, 0.0)),
                    DimensionError);
    CHECK_THROWS_AS((void)is_self_adjoint(s3, Matrix<double>(2, 2, 0.0)),
                    DimensionError);
    CHECK_THROWS_AS(
        (void)gram_schmidt(s2, std::vector<Vector<double>>{{1.0, 0.0, 0.0}}),
        DimensionError);
}

} // TEST_SUITE
