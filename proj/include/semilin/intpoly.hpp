#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "semilin/errors.hpp"

namespace semilin {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse multivariate polynomial with exact integer coefficients. Variables
/// are indexed 0, 1, 2, ...; a monomial is its exponent vector with trailing
/// zeros trimmed, so the term order (lexicographic on exponent vectors) is
/// canonical and iteration is deterministic.
class IntPoly {
public:
    using Mono = std::vector<std::uint32_t>;

    IntPoly() = default;

    static IntPoly constant(BigInt c);
    static IntPoly variable(std::size_t index);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::size_t variable_bound() const; // 1 + largest used variable index

    /// Coefficient of the given monomial (exact; zero when absent).
    BigInt coeff(Mono mono) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }

    /// Nonnegative integer power by repeated multiplication; the bases in the
    /// ghost recursion are small, so a linear chain keeps intermediates sparse.
    IntPoly pow(std::uint32_t e) const;

    /// Exact division of every coefficient; a remainder anywhere means the
    /// caller's integrality invariant is broken.
    IntPoly divide_exact(const BigInt& d) const;

    /// Coefficients reduced into [0, p), zero terms dropped: the cheap
    /// characteristic-p shadow of this polynomial.
    IntPoly reduced_mod(const BigInt& p) const;

    /// Evaluate over any commutative ring R: `embed` maps BigInt into R and
    /// point[i] is the value of variable i. Only variables with nonzero
    /// exponent are read (the point must be long enough for those).
    template <class R, class Embed>
    R evaluate(const std::vector<R>& point, Embed&& embed) const {
        R acc = embed(BigInt(0));
        for (const auto& [mono, c] : terms_) {
            R term = embed(c);
            for (std::size_t v = 0; v < mono.size(); ++v) {
                if (mono[v] == 0) continue;
                if (v >= point.size())
                    throw DimensionError(
                        "evaluation point is missing variable " +
                        std::to_string(v));
                term = term * pow_positive(point[v], mono[v]);
            }
            acc = acc + term;
        }
        return acc;
    }

    std::string to_string() const;

private:
    // right-to-left binary power needing no multiplicative identity in R
    template <class R>
    static R pow_positive(const R& base, std::uint32_t e) {
        std::optional<R> result;
        R sq = base;
        while (true) {
            if (e & 1u) result = result ? (*result) * sq : sq;
            e >>= 1u;
            if (e == 0) break;
            sq = sq * sq;
        }
        return *result;
    }

    void add_term(Mono mono, BigInt c);
    static void trim(Mono& m);

    std::map<Mono, BigInt> terms_;
};

} // namespace semilin
