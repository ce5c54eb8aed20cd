#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "semilin/inner_product.hpp"
#include "semilin/matrix.hpp"
#include "semilin/spectral.hpp"

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

template <class K>
Matrix<K> random_hermitian(std::size_t n, std::mt19937_64& rng) {
    const auto r = random_matrix<K>(n, n, rng);
    return (r + conj_transpose(r)).scaled(K(0.5));
}

// eigenvalues of a 2x2 self-adjoint [[a,b],[conj(b),c]] by the quadratic
// formula, largest first; an oracle independent of the iteration
template <class K>
std::pair<double, double> two_by_two_spectrum(const Matrix<K>& m) {
    const double a = rc<K>::re(m(0, 0));
    const double c = rc<K>::re(m(1, 1));
    const double b2 = rc<K>::norm_sq(m(0, 1));
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b2);
    return {mid + rad, mid - rad};
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("rayleigh quotient at (1,1) of [[2,1],[1,2]] is 3") {
    const auto space = InnerProductSpace<double>::standard(2);
    const Matrix<double> t{{2.0, 1.0}, {1.0, 2.0}};
    CHECK(rayleigh_quotient(space, t, {1.0, 1.0}) == doctest::Approx(3.0));
    CHECK(rayleigh_quotient(space, t, {1.0, -1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)rayleigh_quotient(space, t, {0.0, 0.0}),
                    ZeroVectorError);
}

TEST_CASE("max_eigenpair on diagonal and coupled 2x2 operators") {
    const auto space = InnerProductSpace<double>::standard(2);

    auto pair = max_eigenpair(space, Matrix<double>{{3.0, 0.0}, {0.0, 1.0}});
    CHECK(pair.value == doctest::Approx(3.0));
    CHECK(std::abs(std::abs(pair.vector[0]) - 1.0) <= 1e-7);

    pair = max_eigenpair(space, Matrix<double>{{2.0, 1.0}, {1.0, 2.0}});
    CHECK(pair.value == doctest::Approx(3.0));
    const double s = 1.0 / std::sqrt(2.0);
    const double align =
        std::abs(pair.vector[0] * s + pair.vector[1] * s);
    CHECK(align == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("max_eigenpair selects the largest magnitude, sign included") {
    const auto space = InnerProductSpace<double>::standard(2);
    const auto pair =
        max_eigenpair(space, Matrix<double>{{-3.0, 0.0}, {0.0, 1.0}});
    CHECK(pair.value == doctest::Approx(-3.0));
}

TEST_CASE("max_eigenpair over C: conjugate pair off-diagonal") {
    const auto space = InnerProductSpace<C>::standard(2);
    const C i(0.0, 1.0);
    const auto pair = max_eigenpair(space, Matrix<C>{{C(0.0), -i}, {i, C(0.0)}});
    CHECK(std::abs(pair.value) == doctest::Approx(1.0));
    CHECK(pair.residual <= 1e-7 * std::sqrt(2.0));
}

TEST_CASE("max_eigenpair escapes an exactly-interior starting vector") {
    // (1,1) is the eigenvector of the SMALLER eigenvalue here: a plain
    // all-ones power iteration converges to 1 and reports success
    const auto space = InnerProductSpace<double>::standard(2);
    const auto pair =
        max_eigenpair(space, Matrix<double>{{2.0, -1.0}, {-1.0, 2.0}});
    CHECK(pair.value == doctest::Approx(3.0));
}

TEST_CASE("max_eigenpair meets its residual contract on random operators") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const auto t = random_hermitian<C>(6, rng);
        const auto space = InnerProductSpace<C>::standard(6);
        const auto pair = max_eigenpair(space, t);
        CHECK(pair.residual <= 1e-7 * frobenius_norm(t));
        // oracle-free sanity: the value dominates every sampled rayleigh value
        for (int s = 0; s < 16; ++s) {
            const auto x = random_vector<C>(6, rng);
            CHECK(std::abs(pair.value) + 1e-6 >=
                  std::abs(rayleigh_quotient(space, t, x)));
        }
    }
}

TEST_CASE("max_eigenpair rejects non-self-adjoint input") {
    const auto space = InnerProductSpace<double>::standard(2);
    CHECK_THROWS_AS(
        (void)max_eigenpair(space, Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}),
        NotSelfAdjointError);
}

TEST_CASE("zero operators diagonalize without iteration drama") {
    const auto space = InnerProductSpace<double>::standard(3);
    const auto pair = max_eigenpair(space, Matrix<double>(3, 3, 0.0));
    CHECK(pair.value == 0.0);
    const auto dec = diagonalize_self_adjoint(space, Matrix<double>(3, 3, 0.0));
    CHECK(dec.group_count() == 1);
    CHECK(dec.multiplicities[0] == 3);
    CHECK(dec.eigenvalues[0] == 0.0);
}

TEST_CASE("diagonalize_self_adjoint: diagonal input, grouped and sorted") {
    const auto space = InnerProductSpace<double>::standard(4);
    Matrix<double> t(4, 4, 0.0);
    t(0, 0) = 2.0;
    t(1, 1) = 5.0;
    t(2, 2) = -1.0;
    t(3, 3) = 2.0;
    const auto dec = diagonalize_self_adjoint(space, t);
    REQUIRE(dec.group_count() == 3);
    CHECK(dec.real_eigenvalues() == std::vector<double>{5.0, 2.0, -1.0});
    CHECK(dec.multiplicities == std::vector<std::size_t>{1, 2, 1});
    CHECK(dec.ortho_residual <= 1e-9);
    CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(t));
}

TEST_CASE("diagonalize_self_adjoint: the coupled 2x2 splits into 3 and 1") {
    const auto space = InnerProductSpace<double>::standard(2);
    const Matrix<double> t{{2.0, 1.0}, {1.0, 2.0}};
    const auto dec = diagonalize_self_adjoint(space, t);
    REQUIRE(dec.group_count() == 2);
    CHECK(dec.real_eigenvalues()[0] == doctest::Approx(3.0));
    CHECK(dec.real_eigenvalues()[1] == doctest::Approx(1.0));
    CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(t));
}

TEST_CASE_TEMPLATE("random self-adjoint operators reconstruct to 1e-8", K,
                   double, C) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 8;
        const auto t = random_hermitian<K>(n, rng);
        const auto space = InnerProductSpace<K>::standard(n);
        const auto dec = diagonalize_self_adjoint(space, t);
        CHECK(dec.ortho_residual <= 1e-8);
        CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(t));
        std::size_t total = 0;
        for (auto m : dec.multiplicities) total += m;
        CHECK(total == n);
        // sorted strictly descending by real part
        const auto ev = dec.real_eigenvalues();
        for (std::size_t g = 1; g < ev.size(); ++g) CHECK(ev[g - 1] > ev[g]);
        // eigenvector columns satisfy T phi = lambda phi individually
        for (std::size_t j = 0; j < n; ++j) {
            const auto col = dec.phi.column(j);
            const auto tv = t * col;
            const auto lv = vec_scale(dec.column_eigenvalue(j), col);
            CHECK(vec_norm2(vec_sub(tv, lv)) <= 1e-6 * (1.0 + frobenius_norm(t)));
        }
    }
}

TEST_CASE("2x2 quadratic-formula oracle pins the computed spectrum") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_hermitian<C>(2, rng);
        const auto space = InnerProductSpace<C>::standard(2);
        const auto dec = diagonalize_self_adjoint(space, t);
        const auto [hi, lo] = two_by_two_spectrum(t);
        const auto ev = dec.real_eigenvalues();
        if (dec.group_count() == 2) {
            CHECK(ev[0] == doctest::Approx(hi).epsilon(1e-8));
            CHECK(ev[1] == doctest::Approx(lo).epsilon(1e-8));
        } else {
            CHECK(ev[0] == doctest::Approx(0.5 * (hi + lo)).epsilon(1e-8));
        }
    }
}

TEST_CASE("repeated eigenvalues group together with honest multiplicity") {
    // rotate diag(2,2,-1) by an exact rational orthogonal matrix
    // (columns scaled 1/3), so the spectrum is known in closed form
    const Matrix<double> q{{2.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0},
                           {2.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0},
                           {1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}};
    Matrix<double> d(3, 3, 0.0);
    d(0, 0) = 2.0;
    d(1, 1) = 2.0;
    d(2, 2) = -1.0;
    const auto t = q * d * transpose(q);
    const auto space = InnerProductSpace<double>::standard(3);
    const auto dec = diagonalize_self_adjoint(space, t);
    REQUIRE(dec.group_count() == 2);
    CHECK(dec.real_eigenvalues()[0] == doctest::Approx(2.0));
    CHECK(dec.real_eigenvalues()[1] == doctest::Approx(-1.0));
    CHECK(dec.multiplicities == std::vector<std::size_t>{2, 1});
    // the 2-dimensional eigenspace is G-orthonormal and T-invariant
    CHECK(dec.ortho_residual <= 1e-9);
}

TEST_CASE("self-adjointness with respect to a weighted gram matrix") {
    // T = G^{-1} H with H symmetric is self-adjoint for gram G
    const Matrix<double> g{{2.0, 1.0}, {1.0, 2.0}};
    const Matrix<double> h{{1.0, 3.0}, {3.0, -2.0}};
    const auto t = solve(g, h);
    const auto space = InnerProductSpace<double>::with_gram(g);
    REQUIRE(is_self_adjoint(space, t));
    const auto dec = diagonalize_self_adjoint(space, t);
    CHECK(dec.ortho_residual <= 1e-8);
    CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(t));
    // eigenvalues solve det(H - lambda G) = 0; expand the 2x2 determinant:
    // (1-2s)(-2-2s) - (3-s)^2 = 0 -> 3s^2 + 8s - 11 = 0 -> s = 1, -11/3
    const auto ev = dec.real_eigenvalues();
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ev[1] == doctest::Approx(-11.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("diagonalize_self_adjoint rejects a shear") {
    const auto space = InnerProductSpace<double>::standard(2);
    CHECK_THROWS_AS((void)diagonalize_self_adjoint(
                        space, Matrix<double>{{1.0, 1.0}, {0.0, 1.0}}),
                    NotSelfAdjointError);
}

TEST_CASE("diagonalize_normal: the quarter-turn has eigenvalues i and -i") {
    const auto space = InnerProductSpace<C>::standard(2);
    const Matrix<C> rot{{C(0.0), C(-1.0)}, {C(1.0), C(0.0)}};
    const auto dec = diagonalize_normal(space, rot);
    REQUIRE(dec.group_count() == 2);
    CHECK(std::abs(dec.eigenvalues[0] - C(0.0, 1.0)) <= 1e-8);
    CHECK(std::abs(dec.eigenvalues[1] - C(0.0, -1.0)) <= 1e-8);
    CHECK(dec.ortho_residual <= 1e-8);
    CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(rot));
}

TEST_CASE("diagonalize_normal over R rejects rotations it cannot express") {
    // normal, yes; but the eigenvalues are imaginary and the scalars real
    const auto space = InnerProductSpace<double>::standard(2);
    const Matrix<double> rot{{0.0, -1.0}, {1.0, 0.0}};
    REQUIRE(is_star_normal(space, rot));
    CHECK_THROWS_AS((void)diagonalize_normal(space, rot), NotNormalError);
}

TEST_CASE("diagonalize_normal agrees with the self-adjoint path") {
    std::mt19937_64 rng(34);
    const auto t = random_hermitian<C>(5, rng);
    const auto space = InnerProductSpace<C>::standard(5);
    const auto via_sa = diagonalize_self_adjoint(space, t);
    const auto via_n = diagonalize_normal(space, t);
    REQUIRE(via_sa.group_count() == via_n.group_count());
    for (std::size_t g = 0; g < via_sa.group_count(); ++g)
        CHECK(std::abs(via_sa.eigenvalues[g] - via_n.eigenvalues[g]) <= 1e-7);
}

TEST_CASE("diagonalize_normal: complex diagonal input is a fixed point") {
    const auto space = InnerProductSpace<C>::standard(3);
    Matrix<C> t(3, 3, C(0.0));
    t(0, 0) = C(1.0, 2.0);
    t(1, 1) = C(1.0, 2.0);
    t(2, 2) = C(3.0, -1.0);
    const auto dec = diagonalize_normal(space, t);
    REQUIRE(dec.group_count() == 2);
    CHECK(std::abs(dec.eigenvalues[0] - C(3.0, -1.0)) <= 1e-8);
    CHECK(std::abs(dec.eigenvalues[1] - C(1.0, 2.0)) <= 1e-8);
    CHECK(dec.multiplicities == std::vector<std::size_t>{1, 2});
    CHECK(dec.reconstruction_residual <= 1e-8 * frobenius_norm(t));
}

TEST_CASE("random unitary-conjugated complex diagonals round-trip") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 4; ++trial) {
        // build a unitary from gram_schmidt on random columns
        const auto space = InnerProductSpace<C>::standard(4);
        std::vector<Vector<C>> cols;
        for (int k = 0; k < 4; ++k) cols.push_back(random_vector<C>(4, rng));
        const auto onb = gram_schmidt(space, cols);
        Matrix<C> u(4, 4, C(0.0));
        for (std::size_t j = 0; j < 4; ++j) u.set_column(j, onb[j]);
        Matrix<C> d(4, 4, C(0.0));
        std::vector<C> diag;
        for (int k = 0; k < 4; ++k) diag.push_back(random_scalar<C>(rng, 2.0));
        for (std::size_t k = 0; k < 4; ++k) d(k, k) = diag[k];
        const auto t = u * d * conj_transpose(u);

        const auto dec = diagonalize_normal(space, t);
        CHECK(dec.reconstruction_residual <= 1e-7 * (1.0 + frobenius_norm(t)));
        // computed spectrum matches the planted one as a multiset
        std::vector<C> got;
        for (std::size_t j = 0; j < 4; ++j)
            got.push_back(dec.column_eigenvalue(j));
        auto key = [](const C& a, const C& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        };
        std::sort(got.begin(), got.end(), key);
        std::sort(diag.begin(), diag.end(), key);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(std::abs(got[k] - diag[k]) <= 1e-6);
    }
}

TEST_CASE("is_normal_witness agrees with the commutator on examples") {
    const auto space = InnerProductSpace<C>::standard(2);
    CHECK(is_normal_witness(space,
                            Matrix<C>{{C(0.0), C(-1.0)}, {C(1.0), C(0.0)}}));
    CHECK_FALSE(
        is_normal_witness(space, Matrix<C>{{C(1.0), C(1.0)}, {C(0.0), C(1.0)}}));
    const auto rspace = InnerProductSpace<double>::standard(2);
    CHECK(is_normal_witness(rspace, Matrix<double>{{2.0, 1.0}, {1.0, 2.0}}));
}

TEST_CASE("lp membership, inner products, and norms on finite support") {
    std::map<int, Vector<double>> f;
    // component i is the 1-vector (2^{-i}): squared norms 4^{-i}
    for (int i = 0; i < 10; ++i) f[i] = {std::pow(2.0, -i)};
    CHECK(mem_lp(f, 2.0));
    CHECK(mem_lp(f, 1.0));
    CHECK(mem_lp(f, std::numeric_limits<double>::infinity()));
    CHECK_THROWS_AS((void)mem_lp(f, -1.0), Error);

    double expect = 0.0;
    for (int i = 0; i < 10; ++i) expect += std::pow(4.0, -i);
    CHECK(lp_inner(f, f) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(expect)));
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS((void)lp_norm(f, 0.5), Error);

    // disjoint supports are orthogonal
    std::map<int, Vector<double>> g;
    g[100] = {7.0};
    CHECK(lp_inner(f, g) == 0.0);

    // shared index, different component dimension: a hard error
    std::map<int, Vector<double>> h;
    h[0] = {1.0, 2.0};
    CHECK_THROWS_AS((void)lp_inner(f, h), DimensionError);
}

TEST_CASE("collation splits R^3 into a plane and a line") {
    const auto space = InnerProductSpace<double>::standard(3);
    Matrix<double> plane(3, 2, 0.0);
    plane(0, 0) = 1.0;
    plane(1, 1) = 1.0;
    Matrix<double> line(3, 1, 0.0);
    line(2, 0) = 1.0;
    const auto iso =
        collate_orthogonal_family(OrthogonalFamily<double>{space, {plane, line}});
    CHECK(iso.offsets == std::vector<std::size_t>{0, 2, 3});
    const auto out = iso.apply({5.0, 7.0, 9.0});
    REQUIRE(out.support.size() == 2);
    CHECK(out.support.at(0) == Vector<double>{5.0, 7.0});
    CHECK(out.support.at(1) == Vector<double>{9.0});
}

TEST_CASE_TEMPLATE("collation is a parseval isometry", K, double, C) {
    std::mt19937_64 rng(36);
    // random gram, random orthonormal split 2+1+2 of dimension 5
    const auto b = random_matrix<K>(5, 5, rng);
    const auto space = InnerProductSpace<K>::with_gram(
        conj_transpose(b) * b + Matrix<K>::identity(5));
    std::vector<Vector<K>> cols;
    for (int k = 0; k < 5; ++k) cols.push_back(random_vector<K>(5, rng));
    const auto onb = gram_schmidt(space, cols);
    auto embed = [&](std::size_t lo, std::size_t hi) {
        Matrix<K> m(5, hi - lo, K(0));
        for (std::size_t j = lo; j < hi; ++j) m.set_column(j - lo, onb[j]);
        return m;
    };
    OrthogonalFamily<K> fam{space, {embed(0, 2), embed(2, 3), embed(3, 5)}};
    const auto iso = collate_orthogonal_family(fam);
    for (int s = 0; s < 20; ++s) {
        const auto v = random_vector<K>(5, rng);
        const auto out = iso.apply(v);
        CHECK(lp_norm(out.support, 2.0) ==
              doctest::Approx(space.norm(v)).epsilon(1e-9));
    }
}

TEST_CASE("collation rejects bad families with precise blame") {
    const auto space = InnerProductSpace<double>::standard(2);
    Matrix<double> e1(2, 1, 0.0);
    e1(0, 0) = 1.0;
    Matrix<double> e2(2, 1, 0.0);
    e2(1, 0) = 1.0;
    Matrix<double> fat(2, 1, 0.0);
    fat(0, 0) = 2.0;

    try {
        (void)collate_orthogonal_family(OrthogonalFamily<double>{space, {e1, fat}});
        FAIL("expected OrthogonalityError");
    } catch (const OrthogonalityError& e) {
        CHECK(e.i == 1);
        CHECK(e.j == 1);
    }
    try {
        (void)collate_orthogonal_family(OrthogonalFamily<double>{space, {e1, e1}});
        FAIL("expected OrthogonalityError");
    } catch (const OrthogonalityError& e) {
        CHECK(e.i == 0);
        CHECK(e.j == 1);
    }
    CHECK_THROWS_AS(
        (void)collate_orthogonal_family(OrthogonalFamily<double>{space, {e1}}),
        SpanError);
}

TEST_CASE("eigenspace families collate into a diagonalizing isometry") {
    std::mt19937_64 rng(37);
    const auto t = random_hermitian<C>(6, rng);
    const auto space = InnerProductSpace<C>::standard(6);
    const auto dec = diagonalize_self_adjoint(space, t);
    const auto fam = eigenspace_family(space, dec);
    CHECK(fam.embeddings.size() == dec.group_count());
    const auto iso = collate_orthogonal_family(fam, 1e-7);
    // parseval again, now for eigenvector coordinates
    for (int s = 0; s < 10; ++s) {
        const auto v = random_vector<C>(6, rng);
        CHECK(lp_norm(iso.apply(v).support, 2.0) ==
              doctest::Approx(space.norm(v)).epsilon(1e-7));
    }
}

} // TEST_SUITE
