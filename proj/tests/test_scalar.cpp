#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "semilin/finite_field.hpp"
#include "semilin/ring_hom.hpp"
#include "semilin/scalar.hpp"

using namespace semilin;
using C = std::complex<double>;

TEST_SUITE("scalar") {

// The shared axiom set runs identically over both instances. Identities are
// phrased so they hold with i = 0 as well as i^2 = -1: in particular
// i^3 + i = 0 replaces i^2 = -1.
TEST_CASE_TEMPLATE("rc instances satisfy the shared axiom set", K, double, C) {
    std::mt19937_64 rng(101);
    const K i = rc<K>::unit_im();
    CHECK(abs_value<K>(i * i * i + i) == 0.0);
    CHECK(rc<K>::from_real(1.0) * rc<K>::from_real(1.0) == rc<K>::from_real(1.0));
    for (int s = 0; s < 200; ++s) {
        const K z = random_scalar<K>(rng, 2.0);
        const K w = random_scalar<K>(rng, 2.0);
        CHECK(rc<K>::conj(rc<K>::conj(z)) == z);
        CHECK(abs_value<K>(rc<K>::conj(z * w) - rc<K>::conj(z) * rc<K>::conj(w)) <= 1e-12);
        CHECK(abs_value<K>(rc<K>::conj(z + w) - (rc<K>::conj(z) + rc<K>::conj(w))) <= 1e-12);
        CHECK(rc<K>::norm_sq(z) == doctest::Approx(rc<K>::re(z) * rc<K>::re(z) +
                                                   rc<K>::im(z) * rc<K>::im(z))
                                       .epsilon(1e-14));
        CHECK(std::abs(abs_value<K>(rc<K>::conj(z)) - abs_value<K>(z)) <= 1e-12);
        CHECK(rc<K>::re(z + w) == doctest::Approx(rc<K>::re(z) + rc<K>::re(w)));
        CHECK(rc<K>::im(z + w) == doctest::Approx(rc<K>::im(z) + rc<K>::im(w)));
    }
}

TEST_CASE("real instance: conjugation is the identity, i is 0") {
    CHECK(rc<double>::conj(2.5) == 2.5);
    CHECK(rc<double>::im(7.0) == 0.0);
    CHECK(rc<double>::unit_im() == 0.0);
    CHECK(rc<double>::name() == "R");
}

TEST_CASE("complex instance: conjugation, norm, re(i z)") {
    const C z(3.0, 4.0);
    CHECK(rc<C>::conj(z) == C(3.0, -4.0));
    CHECK(rc<C>::norm_sq(z) == 25.0);
    const C i = rc<C>::unit_im();
    CHECK(i * i == C(-1.0, 0.0));
    // re(i z) = -im(z)
    const C z2(1.0, 2.0);
    CHECK(rc<C>::re(i * z2) == -rc<C>::im(z2));
    CHECK(rc<C>::re(i * z2) == -2.0);
}

TEST_CASE("complex field axioms hold on sampled triples") {
    std::mt19937_64 rng(77);
    for (int s = 0; s < 100; ++s) {
        const C a = random_scalar<C>(rng), b = random_scalar<C>(rng),
                c = random_scalar<C>(rng);
        CHECK(abs_value<C>((a + b) + c - (a + (b + c))) <= 1e-12);
        CHECK(abs_value<C>(a * (b + c) - (a * b + a * c)) <= 1e-12);
        CHECK(abs_value<C>(a * b - b * a) <= 1e-12);
        if (abs_value<C>(a) > 1e-3)
            CHECK(abs_value<C>(a * (C(1.0) / a) - C(1.0)) <= 1e-12);
    }
}

TEST_CASE_TEMPLATE("hom composition reaches normal form", K, double, C) {
    const auto id = RingHom<K>::identity();
    const auto cj = RingHom<K>::conjugation();

    CHECK(compose_hom(id, cj) == cj);
    CHECK(compose_hom(cj, id) == cj);
    CHECK(compose_hom(id, id).kind() == HomKind::identity);
    // the headline normal form: conj after conj is literally the identity
    // descriptor, not an unevaluated composite
    CHECK(compose_hom(cj, cj).kind() == HomKind::identity);

    std::mt19937_64 rng(5);
    for (const auto& f : {id, cj})
        for (const auto& g : {id, cj}) {
            const auto triple = resolve_comp_triple(f, g);
            for (int s = 0; s < 50; ++s) {
                const K x = random_scalar<K>(rng, 3.0);
                CHECK(abs_value<K>(triple.sigma23(triple.sigma12(x)) -
                                   triple.sigma13(x)) <= 1e-12);
            }
        }
}

TEST_CASE_TEMPLATE("inverse pairs certify both directions", K, double, C) {
    std::mt19937_64 rng(6);
    for (const auto& sigma :
         {RingHom<K>::identity(), RingHom<K>::conjugation()}) {
        const auto pair = resolve_inv_pair(sigma);
        CHECK(pair.tau == sigma); // identity and conjugation are involutions
        for (int s = 0; s < 50; ++s) {
            const K x = random_scalar<K>(rng, 3.0);
            CHECK(abs_value<K>(pair.tau(pair.sigma(x)) - x) <= 1e-12);
            CHECK(abs_value<K>(pair.sigma(pair.tau(x)) - x) <= 1e-12);
        }
    }
}

TEST_CASE("frobenius powers over F_32 compose by exponent addition") {
    const auto f32 = FieldSpec::make(2, 5);
    const auto f1 = RingHom<FFElement>::frobenius(f32, 1);
    const auto f2 = RingHom<FFElement>::frobenius(f32, 2);
    const auto triple = resolve_comp_triple(f1, f2);
    CHECK(triple.sigma13.kind() == HomKind::frobenius_power);
    CHECK(triple.sigma13.frobenius_exponent() == 3);
    for (std::uint32_t v = 0; v < f32->size(); ++v) {
        const FFElement x(f32, v);
        CHECK(triple.sigma23(triple.sigma12(x)) == triple.sigma13(x));
    }
}

TEST_CASE("frobenius inverse pair is the complementary power") {
    for (const auto& [p, r] : {std::pair{2, 2}, {2, 5}, {3, 2}}) {
        const auto field = FieldSpec::make(p, r);
        const auto sigma = RingHom<FFElement>::frobenius(field, 1);
        const auto pair = resolve_inv_pair(sigma);
        CHECK(pair.tau.kind() == HomKind::frobenius_power);
        CHECK(pair.tau.frobenius_exponent() == r - 1);
        for (std::uint32_t v = 0; v < field->size(); ++v) {
            const FFElement x(field, v);
            CHECK(pair.tau(pair.sigma(x)) == x);
            CHECK(pair.sigma(pair.tau(x)) == x);
        }
    }
}

TEST_CASE("frobenius exponents cancel to the literal identity") {
    const auto f32 = FieldSpec::make(2, 5);
    const auto f2 = RingHom<FFElement>::frobenius(f32, 2);
    const auto f3 = RingHom<FFElement>::frobenius(f32, 3);
    CHECK(compose_hom(f2, f3).kind() == HomKind::identity);
}

TEST_CASE("hom actions are ring homomorphisms on finite fields") {
    const auto f9 = FieldSpec::make(3, 2);
    const auto sigma = RingHom<FFElement>::frobenius(f9, 1);
    const FFElement one(f9, 1);
    CHECK(sigma(one) == one);
    for (std::uint32_t a = 0; a < f9->size(); ++a)
        for (std::uint32_t b = 0; b < f9->size(); ++b) {
            const FFElement x(f9, a), y(f9, b);
            CHECK(sigma(x + y) == sigma(x) + sigma(y));
            CHECK(sigma(x * y) == sigma(x) * sigma(y));
        }
}

TEST_CASE("explicit tables: bijective ones invert, constant ones do not") {
    const auto f4 = FieldSpec::make(2, 2);
    // frobenius tabulated explicitly
    std::vector<FFElement> images;
    for (std::uint32_t v = 0; v < f4->size(); ++v)
        images.push_back(frobenius_field(FFElement(f4, v)));
    const auto table = RingHom<FFElement>::from_table(f4, f4, images);
    const auto pair = resolve_inv_pair(table);
    for (std::uint32_t v = 0; v < f4->size(); ++v) {
        const FFElement x(f4, v);
        CHECK(pair.tau(pair.sigma(x)) == x);
    }
    // table composed with the complementary frobenius collapses to identity
    const auto f1 = RingHom<FFElement>::frobenius(f4, 1);
    CHECK(compose_hom(table, f1).kind() == HomKind::identity);

    std::vector<FFElement> constant(f4->size(), FFElement(f4, 1));
    const auto broken = RingHom<FFElement>::from_table(f4, f4, constant);
    CHECK_THROWS_AS((void)resolve_inv_pair(broken), NotInvertibleError);
}

TEST_CASE("composing homs over different fields is rejected") {
    const auto f4 = FieldSpec::make(2, 2);
    const auto f9 = FieldSpec::make(3, 2);
    const auto a = RingHom<FFElement>::frobenius(f4, 1);
    const auto b = RingHom<FFElement>::frobenius(f9, 1);
    CHECK_THROWS_AS((void)compose_hom(a, b), TwistMismatchError);
}

} // TEST_SUITE
