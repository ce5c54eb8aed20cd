#include "semilin/isocrystal.hpp"

#include <algorithm>

namespace semilin {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 16;

// map an element of the base field into an extension containing theta, a
// root of the base field's modulus: sum of base-p digits times theta powers
FFElement embed_via(const FFElement& c, const FFElement& theta) {
    const auto digits = c.coeffs();
    FFElement acc(theta.spec(), 0);
    FFElement power(theta.spec(), 1);
    for (const int d : digits) {
        acc = acc + FFElement(theta.spec(), static_cast<std::uint32_t>(d)) *
                        power;
        power = power * theta;
    }
    return acc;
}

// smallest extension degree r*s whose field contains a root (nonzero when
// required); falls back to a degree bound when the packed-table limit cuts
// the search short
int suggest_degree(const FFPoly& f, bool need_nonzero) {
    const FieldSpec::Ptr& spec = f.spec();
    const int r = spec->r();
    const int deg = std::max(2, f.degree());
    for (int s = 2; s <= deg; ++s) {
        double size = 1;
        for (int k = 0; k < r * s; ++k) size *= spec->p();
        if (size > static_cast<double>(kMaxFieldSize)) break;
        const auto big = FieldSpec::make(spec->p(), r * s);

        std::vector<std::uint32_t> mod;
        for (const int d : spec->modulus())
            mod.push_back(static_cast<std::uint32_t>(d));
        const auto thetas = find_roots(FFPoly(big, std::move(mod)));
        if (thetas.empty()) continue; // r does not divide r*s; unreachable
        const FFElement theta = thetas.front();

        std::vector<std::uint32_t> lifted;
        for (int i = 0; i <= f.degree(); ++i)
            lifted.push_back(embed_via(f.coeff(i), theta).value());
        for (const auto& root : find_roots(FFPoly(big, std::move(lifted))))
            if (!need_nonzero || !root.is_zero()) return r * s;
    }
    return r * deg;
}

} // namespace

WittVector solve_frobenius_twist(const WittVector& a, const WittVector& b) {
    const WittContext::Ptr& ctx = a.context();
    if (!ctx->same(*b.context()))
        throw ContextMismatchError("twist operands from different contexts");
    if (a.coeff(0).is_zero() || b.coeff(0).is_zero())
        throw NotInvertibleError(
            "twist equation needs unit leading coefficients");

    const FieldSpec::Ptr& spec = ctx->field();
    const int n = ctx->n();
    const int p = ctx->p();
    const auto embed = [&spec](const BigInt& c) {
        return FFPoly::constant(spec, c.convert_to<std::uint32_t>());
    };

    std::vector<FFElement> x;
    x.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // interleaved evaluation points over the univariate extension:
        // lhs reads frobenius(x) against a, rhs reads x against b, with the
        // unknown coefficient i entering as t^p on the left and t on the
        // right (higher coefficients do not reach index i)
        std::vector<FFPoly> lhs_pt, rhs_pt;
        const FFPoly t = FFPoly::variable(spec);
        for (int j = 0; j <= i; ++j) {
            if (j < i) {
                const auto k = static_cast<std::size_t>(j);
                lhs_pt.push_back(FFPoly::constant(frobenius_field(x[k])));
                rhs_pt.push_back(FFPoly::constant(x[k]));
            } else {
                FFPoly tp = t;
                for (int e = 1; e < p; ++e) tp = tp * t;
                lhs_pt.push_back(std::move(tp));
                rhs_pt.push_back(t);
            }
            lhs_pt.push_back(FFPoly::constant(a.coeff(j)));
            rhs_pt.push_back(FFPoly::constant(b.coeff(j)));
        }
        const IntPoly& mul_i = ctx->reduced_poly(WittOp::mul, i);
        const FFPoly diff = mul_i.evaluate<FFPoly>(lhs_pt, embed) -
                            mul_i.evaluate<FFPoly>(rhs_pt, embed);
        if (diff.degree() != p)
            throw InternalError("twist step lost its leading term");

        const auto roots = find_roots(diff);
        const FFElement* chosen = nullptr;
        for (const auto& root : roots)
            if (i > 0 || !root.is_zero()) {
                chosen = &root;
                break;
            }
        if (!chosen) {
            const int want = suggest_degree(diff, i == 0);
            throw FieldTooSmallError(
                "no " + std::string(i == 0 ? "nonzero " : "") +
                    "root over " + spec->name() + " at twist step " +
                    std::to_string(i) + "; a degree-" +
                    std::to_string(want) + " field would do",
                diff, want);
        }
        x.push_back(*chosen);
    }

    const WittVector result(ctx, std::move(x));
    // independent residual check through plain Witt arithmetic
    if (witt_mul(witt_frobenius(result), a) != witt_mul(result, b))
        throw InternalError("twist solution failed its residual check");
    return result;
}

Isocrystal1D::Isocrystal1D(FractionFieldElement c)
    : ctx_(c.context()), c_(std::move(c)) {
    if (c_.is_zero())
        throw NotInvertibleError(
            "isocrystal structure constant must be nonzero");
}

EquivalenceReport verify_equivalence(const Isocrystal1D& X, int slope,
                                     const FractionFieldElement& y) {
    if (y.is_zero())
        throw ZeroVectorError("multiplication by zero is not an equivalence");
    const FractionFieldElement lhs =
        X.structure_constant() * frobenius_K(y);
    const FractionFieldElement rhs = y.scale_by_p_power(slope);

    EquivalenceReport rep;
    rep.precision = std::min(lhs.precision(), rhs.precision());
    rep.slope_mismatch = lhs.valuation() != rhs.valuation();
    if (!rep.slope_mismatch)
        for (int i = 0; i < rep.precision; ++i)
            if (lhs.unit_coeffs()[static_cast<std::size_t>(i)] !=
                rhs.unit_coeffs()[static_cast<std::size_t>(i)]) {
                rep.first_diff_index = i;
                break;
            }
    rep.verified = !rep.slope_mismatch && rep.first_diff_index < 0;
    return rep;
}

EquivalenceReport verify_equivalence(const Isocrystal1D& X,
                                     const IsocrystalEquivalence& e) {
    return verify_equivalence(X, e.slope, e.y);
}

IsocrystalEquivalence classify(const Isocrystal1D& X) {
    const WittContext::Ptr& ctx = X.context();
    const FractionFieldElement& c = X.structure_constant();

    // unit part of c, zero-extended past its stated precision: coefficients
    // of y beyond that window are not reported as trustworthy anyway
    std::vector<FFElement> uc(static_cast<std::size_t>(ctx->n()),
                              FFElement(ctx->field(), 0));
    const auto& have = c.unit_coeffs();
    std::copy(have.begin(), have.end(), uc.begin());

    const WittVector y =
        solve_frobenius_twist(WittVector(ctx, std::move(uc)),
                              WittVector::one(ctx));

    IsocrystalEquivalence eq{c.valuation(),
                             FractionFieldElement::from_unit(0, y),
                             {}};
    eq.report = verify_equivalence(X, eq.slope, eq.y);
    if (!eq.report.verified)
        throw InternalError("classification failed its own verification");
    return eq;
}

SemilinearMap<FractionFieldElement> as_semilinear(const Isocrystal1D& X) {
    const SemilinearMap<FractionFieldElement> f{
        RingHom<FractionFieldElement>::frobenius(X.context(), 1),
        Matrix<FractionFieldElement>({{X.structure_constant()}})};

    const auto agree = [&](const FractionFieldElement& s) {
        const auto via_map = f(Vector<FractionFieldElement>{s});
        if (via_map.size() != 1 || !(via_map[0] == X.apply(s)))
            throw InternalError("semilinear bridge disagrees with the "
                                "isocrystal structure map");
    };
    agree(FractionFieldElement::one(X.context()));
    agree(FractionFieldElement::one(X.context()).scale_by_p_power(1));
    agree(X.structure_constant());
    return f;
}

} // namespace semilin
