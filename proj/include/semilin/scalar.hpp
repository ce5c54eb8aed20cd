#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>

namespace semilin {

/// Traits for a scalar field carrying a "real or complex" structure: real and
/// imaginary parts, conjugation, the distinguished element i and the squared
/// absolute value.
///
/// Two instances are provided: double (where conj is the identity and i = 0)
/// and std::complex<double>. Code written against rc<K> runs unchanged over
/// both; identities such as i^3 + i = 0 hold in either instance, so no branch
/// on "is this the real case" is ever needed.
template <class K>
struct rc;

template <>
struct rc<double> {
    static constexpr bool is_complex = false;
    static double re(double z) { return z; }
    static double im(double) { return 0.0; }
    static double conj(double z) { return z; }
    static double unit_im() { return 0.0; } // the element i
    static double norm_sq(double z) { return z * z; }
    static double from_real(double x) { return x; }
    static std::string name() { return "R"; }
};

template <>
struct rc<std::complex<double>> {
    using C = std::complex<double>;
    static constexpr bool is_complex = true;
    static double re(const C& z) { return z.real(); }
    static double im(const C& z) { return z.imag(); }
    static C conj(const C& z) { return std::conj(z); }
    static C unit_im() { return C(0.0, 1.0); }
    static double norm_sq(const C& z) {
        return z.real() * z.real() + z.imag() * z.imag();
    }
    static C from_real(double x) { return C(x, 0.0); }
    static std::string name() { return "C"; }
};

template <class K>
concept rc_scalar = requires { rc<K>::is_complex; };

template <rc_scalar K>
double abs_value(const K& z) {
    return std::sqrt(rc<K>::norm_sq(z));
}

/// re + im * i. Collapses to re on the real instance because i = 0 there.
template <rc_scalar K>
K make_scalar(double re_part, double im_part) {
    return rc<K>::from_real(re_part) +
           rc<K>::unit_im() * rc<K>::from_real(im_part);
}

/// Uniform scalar in the square [-scale, scale]^2 (interval on the reals).
/// Always consumes two variates so real and complex runs stay in lockstep.
template <rc_scalar K, class Rng>
K random_scalar(Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    const double a = dist(rng);
    const double b = dist(rng);
    return make_scalar<K>(a, b);
}

} // namespace semilin
