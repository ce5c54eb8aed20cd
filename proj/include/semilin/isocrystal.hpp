#pragma once

#include "semilin/semilinear.hpp"
#include "semilin/witt.hpp"

namespace semilin {

/// Solve frobenius(x)*a = x*b for a Witt vector x with x.coeff(0) != 0,
/// coefficient by coefficient: substituting x = (x_0..x_{i-1}, t, 0, ...)
/// makes coefficient i of the difference a univariate polynomial in t of
/// degree <= p (its t^p term carries a_0^{p^i}, its linear term -b_0^{p^i}),
/// and any root extends the solution one step. Both a and b need nonzero
/// leading coefficients. When a step has no root in the coefficient field,
/// FieldTooSmallError reports the offending polynomial and a field degree
/// that would contain a root.
WittVector solve_frobenius_twist(const WittVector& a, const WittVector& b);

/// A one-dimensional isocrystal over the fraction field K of W(k): the
/// Frobenius-semilinear structure map x -> c * frobenius_K(x), stored by its
/// structure constant c != 0.
class Isocrystal1D {
public:
    explicit Isocrystal1D(FractionFieldElement c);

    const WittContext::Ptr& context() const { return ctx_; }
    const FractionFieldElement& structure_constant() const { return c_; }

    FractionFieldElement apply(const FractionFieldElement& x) const {
        return c_ * frobenius_K(x);
    }

private:
    WittContext::Ptr ctx_;
    FractionFieldElement c_;
};

/// The slope-m model: structure map x -> p^m * frobenius_K(x).
struct StandardIsocrystal {
    WittContext::Ptr ctx;
    int slope = 0;

    FractionFieldElement apply(const FractionFieldElement& x) const {
        return frobenius_K(x).scale_by_p_power(slope);
    }
};

/// Outcome of checking c * frobenius_K(y) = p^m * y at working precision.
struct EquivalenceReport {
    bool verified = false;
    bool slope_mismatch = false;
    int first_diff_index = -1; // first disagreeing unit coefficient, or -1
    int precision = 0;         // coefficients actually compared
};

/// Multiplication by the unit y carries the standard slope-m isocrystal
/// onto the classified one, Frobenius-equivariantly.
struct IsocrystalEquivalence {
    int slope = 0;
    FractionFieldElement y;
    EquivalenceReport report;
};

/// Check whether multiplication by y intertwines the standard slope-`slope`
/// structure map with X's, i.e. c * frobenius_K(y) = p^slope * y on every
/// coefficient both sides retain. y must be nonzero.
EquivalenceReport verify_equivalence(const Isocrystal1D& X, int slope,
                                     const FractionFieldElement& y);
EquivalenceReport verify_equivalence(const Isocrystal1D& X,
                                     const IsocrystalEquivalence& e);

/// Dieudonne-Manin in dimension one: every X with structure constant
/// c = p^m * u is equivalent to the standard slope-m isocrystal, via
/// multiplication by the unit y solving frobenius_K(y) * u = y. The returned
/// report is re-derived through verify_equivalence (which shares no code
/// with the solver) and is always `verified`.
IsocrystalEquivalence classify(const Isocrystal1D& X);

/// The same structure map as a 1x1 Frobenius-twisted matrix over K; spot
/// checked against Isocrystal1D::apply before returning.
SemilinearMap<FractionFieldElement> as_semilinear(const Isocrystal1D& X);

} // namespace semilin
