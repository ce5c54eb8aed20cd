#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/finite_field.hpp"
#include "semilin/intpoly.hpp"
#include "semilin/matrix.hpp"
#include "semilin/ring_hom.hpp"

namespace semilin {

enum class WittOp { add, mul, neg };
std::string to_string(WittOp op);

/// Shared immutable context for truncated p-typical Witt arithmetic over
/// F_{p^r}: the coefficient field, the precision n (coefficient indices
/// 0..n-1), and the universal structure polynomials for every index, both in
/// exact integer form and reduced mod p for characteristic-p evaluation.
///
/// Structure polynomials use the interleaved variable convention
/// X_j -> 2j, Y_j -> 2j+1 (negation reads only the X slots).
class WittContext {
public:
    using Ptr = std::shared_ptr<const WittContext>;

    static Ptr make(FieldSpec::Ptr field, int n);

    int p() const { return field_->p(); }
    int n() const { return n_; }
    const FieldSpec::Ptr& field() const { return field_; }
    bool same(const WittContext& o) const {
        return n_ == o.n_ && field_->same(*o.field_);
    }
    std::string name() const;

    /// The exact integer structure polynomial S_i for the operation: the
    /// unique integer polynomial with ghost(S_0..S_i) = ghost(X) op ghost(Y).
    const IntPoly& structure_poly(WittOp op, int i) const;

    /// The same polynomial with coefficients reduced into [0, p) and zero
    /// terms dropped; this is what characteristic-p evaluation uses.
    const IntPoly& reduced_poly(WittOp op, int i) const;

    /// Ghost polynomial W_i(X) = sum_{j<=i} p^j X_j^{p^{i-j}} in the X slots.
    static IntPoly ghost_poly(int p, int i);

private:
    WittContext(FieldSpec::Ptr field, int n);

    FieldSpec::Ptr field_;
    int n_;
    std::vector<IntPoly> polys_[3];
    std::vector<IntPoly> reduced_[3];
};

/// Truncated Witt vector: n coefficients in the context's field. Immutable.
class WittVector {
public:
    WittVector(WittContext::Ptr ctx, std::vector<FFElement> coeffs);

    static WittVector zero(const WittContext::Ptr& ctx);
    static WittVector one(const WittContext::Ptr& ctx);
    /// (a, 0, 0, ...): multiplicative in a.
    static WittVector teichmuller(const WittContext::Ptr& ctx,
                                  const FFElement& a);

    const WittContext::Ptr& context() const { return ctx_; }
    const FFElement& coeff(int i) const;
    const std::vector<FFElement>& coeffs() const { return c_; }
    bool is_zero() const;

    bool operator==(const WittVector& o) const;
    bool operator!=(const WittVector& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    WittContext::Ptr ctx_;
    std::vector<FFElement> c_;
};

WittVector witt_add(const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittVector& x, const WittVector& y);
WittVector witt_neg(const WittVector& x);
WittVector witt_sub(const WittVector& x, const WittVector& y);

/// The ghost map on a characteristic-0 integer lift: component i is
/// W_i(x) = sum_{j<=i} p^j x_j^{p^{i-j}}. Oracle for certifying the structure
/// polynomials; exact integer arithmetic throughout.
std::vector<BigInt> ghost_components(const WittContext& ctx,
                                     const std::vector<BigInt>& x);

/// Coefficientwise p-th power; a ring automorphism here because the
/// coefficient field is perfect.
WittVector witt_frobenius(const WittVector& x);
/// Coefficientwise p-th root, the inverse automorphism.
WittVector witt_pth_root(const WittVector& x);
/// (x_0, ..., x_{n-2}) shifted right one slot with a zero in front.
WittVector witt_verschiebung(const WittVector& x);
/// p * x = verschiebung(frobenius(x)) over a perfect coefficient field.
WittVector witt_scale_p(const WittVector& x);

/// Index of the first nonzero coefficient; nullopt for the zero vector
/// (valuation infinity).
std::optional<int> valuation(const WittVector& x);

/// An element of the fraction field K of W(k): p^m times a unit Witt vector,
/// with `precision` trustworthy unit coefficients (indices 0..precision-1).
/// Zero is a distinguished case. Operations track precision honestly: values
/// agree with the exact field operations on all retained coefficients.
class FractionFieldElement {
public:
    static FractionFieldElement zero(WittContext::Ptr ctx);
    static FractionFieldElement one(const WittContext::Ptr& ctx);

    /// p^m * unit at the context's full precision; unit.coeff(0) must be
    /// nonzero.
    static FractionFieldElement from_unit(int m, const WittVector& unit);

    /// p^m * w for an arbitrary Witt vector: shifts out the valuation of w
    /// (each shifted slot is one factor of p and one coefficientwise p-th
    /// root) and reduces the stated precision accordingly. The zero vector
    /// yields the distinguished zero.
    static FractionFieldElement from_witt(int m, const WittVector& w);

    const WittContext::Ptr& context() const { return ctx_; }
    bool is_zero() const { return zero_; }
    /// The p-adic valuation m. Zero has no valuation.
    int valuation() const;
    int precision() const { return precision_; }
    const std::vector<FFElement>& unit_coeffs() const;

    FractionFieldElement operator*(const FractionFieldElement& o) const;
    FractionFieldElement operator/(const FractionFieldElement& o) const;
    FractionFieldElement operator+(const FractionFieldElement& o) const;
    FractionFieldElement operator-(const FractionFieldElement& o) const;
    FractionFieldElement operator-() const;
    FractionFieldElement inv() const;

    /// Multiplication by p^j: adds j to the valuation, exactly.
    FractionFieldElement scale_by_p_power(int j) const;

    /// Agreement on everything both sides retain: zero flags, valuations,
    /// and unit coefficients up to the smaller precision.
    bool operator==(const FractionFieldElement& o) const;
    bool operator!=(const FractionFieldElement& o) const {
        return !(*this == o);
    }

    std::string to_string() const;

private:
    FractionFieldElement(WittContext::Ptr ctx) : ctx_(std::move(ctx)) {}

    friend FractionFieldElement frobenius_K(const FractionFieldElement& x);

    WittContext::Ptr ctx_;
    bool zero_ = true;
    int m_ = 0;
    std::vector<FFElement> unit_; // length == precision_
    int precision_ = 0;
};

/// The Frobenius of W(k) extended to the fraction field:
/// p^m * u maps to p^m * frobenius(u).
FractionFieldElement frobenius_K(const FractionFieldElement& x);

template <>
struct ScalarSystem<FractionFieldElement> {
    using Tag = WittContext::Ptr;
    static constexpr bool singleton = false;
    static Tag tag_of(const FractionFieldElement& x) { return x.context(); }
    static bool same(const Tag& a, const Tag& b) {
        return a && b && (a == b || a->same(*b));
    }
    static std::string name(const Tag& t) { return t->name(); }
    static FractionFieldElement frobenius_power(const Tag&,
                                                const FractionFieldElement& x,
                                                int e) {
        FractionFieldElement y = x;
        for (int k = 0; k < e; ++k) y = frobenius_K(y);
        return y;
    }
    static int frobenius_order(const Tag& t) { return t->field()->r(); }
    template <class Rng>
    static FractionFieldElement random(const Tag& t, Rng& rng) {
        if (rng() % 16 == 0) return FractionFieldElement::zero(t);
        std::vector<FFElement> c;
        c.push_back(random_unit(t->field(), rng));
        for (int i = 1; i < t->n(); ++i)
            c.push_back(random_element(t->field(), rng));
        const int m = static_cast<int>(rng() % 5) - 2;
        return FractionFieldElement::from_unit(
            m, WittVector(t, std::move(c)));
    }
};

template <>
struct ScalarLike<FractionFieldElement> {
    static constexpr bool exact = true;
    static FractionFieldElement zero(const FractionFieldElement& sample) {
        return FractionFieldElement::zero(sample.context());
    }
    static FractionFieldElement one(const FractionFieldElement& sample) {
        return FractionFieldElement::one(sample.context());
    }
    static FractionFieldElement invert(const FractionFieldElement& x) {
        return x.inv();
    }
    static double weight(const FractionFieldElement& x) {
        return x.is_zero() ? 0.0 : 1.0;
    }
};

} // namespace semilin
