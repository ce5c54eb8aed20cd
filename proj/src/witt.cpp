#include "semilin/witt.hpp"

#include <algorithm>

namespace semilin {

namespace {

std::uint32_t int_pow(int p, int e) {
    std::uint64_t r = 1;
    for (int k = 0; k < e; ++k) {
        r *= static_cast<std::uint64_t>(p);
        if (r > (1u << 30))
            throw PrecisionError("witt exponent overflow: precision too large");
    }
    return static_cast<std::uint32_t>(r);
}

// evaluate the first `len` reduced structure polynomials at the interleaved
// point (x_0, y_0, x_1, y_1, ...); for unary ops the x values fill both slots
std::vector<FFElement> eval_op(const WittContext& ctx, WittOp op,
                               const std::vector<FFElement>& x,
                               const std::vector<FFElement>& y,
                               std::size_t len) {
    const FieldSpec::Ptr& spec = ctx.field();
    std::vector<FFElement> point;
    point.reserve(2 * len);
    for (std::size_t i = 0; i < len; ++i) {
        point.push_back(x[i]);
        point.push_back(y.empty() ? x[i] : y[i]);
    }
    const auto embed = [&spec](const BigInt& c) {
        return FFElement(spec, c.convert_to<std::uint32_t>());
    };
    std::vector<FFElement> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        out.push_back(
            ctx.reduced_poly(op, static_cast<int>(i)).evaluate(point, embed));
    return out;
}

} // namespace

std::string to_string(WittOp op) {
    switch (op) {
    case WittOp::add: return "add";
    case WittOp::mul: return "mul";
    case WittOp::neg: return "neg";
    }
    throw InternalError("unknown witt operation");
}

IntPoly WittContext::ghost_poly(int p, int i) {
    IntPoly acc;
    BigInt pj = 1;
    for (int j = 0; j <= i; ++j) {
        acc = acc + IntPoly::constant(pj) *
                        IntPoly::variable(2 * static_cast<std::size_t>(j))
                            .pow(int_pow(p, i - j));
        pj *= p;
    }
    return acc;
}

WittContext::WittContext(FieldSpec::Ptr field, int n)
    : field_(std::move(field)), n_(n) {
    const int p = field_->p();
    const BigInt bp(p);

    const auto ghost_y = [&](int i) {
        IntPoly acc;
        BigInt pj = 1;
        for (int j = 0; j <= i; ++j) {
            acc = acc +
                  IntPoly::constant(pj) *
                      IntPoly::variable(2 * static_cast<std::size_t>(j) + 1)
                          .pow(int_pow(p, i - j));
            pj *= p;
        }
        return acc;
    };

    for (const WittOp op : {WittOp::add, WittOp::mul, WittOp::neg}) {
        const auto k = static_cast<std::size_t>(op);
        BigInt pi = 1; // p^i
        for (int i = 0; i < n_; ++i) {
            const IntPoly gx = ghost_poly(p, i);
            IntPoly target;
            switch (op) {
            case WittOp::add: target = gx + ghost_y(i); break;
            case WittOp::mul: target = gx * ghost_y(i); break;
            case WittOp::neg: target = -gx; break;
            }
            BigInt pj = 1;
            for (int j = 0; j < i; ++j) {
                target = target - IntPoly::constant(pj) *
                                      polys_[k][static_cast<std::size_t>(j)]
                                          .pow(int_pow(p, i - j));
                pj *= p;
            }
            polys_[k].push_back(target.divide_exact(pi));
            reduced_[k].push_back(polys_[k].back().reduced_mod(bp));
            pi *= p;
        }
    }
}

WittContext::Ptr WittContext::make(FieldSpec::Ptr field, int n) {
    if (!field) throw InvalidFieldError("witt context needs a field");
    if (n < 1) throw PrecisionError("witt precision must be at least 1");
    (void)int_pow(field->p(), n - 1); // reject precisions whose structure
                                      // polynomial exponents overflow
    return Ptr(new WittContext(std::move(field), n));
}

std::string WittContext::name() const {
    return "W(" + field_->name() + ",n=" + std::to_string(n_) + ")";
}

const IntPoly& WittContext::structure_poly(WittOp op, int i) const {
    if (i < 0 || i >= n_)
        throw DimensionError("structure polynomial index out of range");
    return polys_[static_cast<std::size_t>(op)][static_cast<std::size_t>(i)];
}

const IntPoly& WittContext::reduced_poly(WittOp op, int i) const {
    if (i < 0 || i >= n_)
        throw DimensionError("structure polynomial index out of range");
    return reduced_[static_cast<std::size_t>(op)][static_cast<std::size_t>(i)];
}

WittVector::WittVector(WittContext::Ptr ctx, std::vector<FFElement> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw InvalidFieldError("witt vector needs a context");
    if (c_.size() != static_cast<std::size_t>(ctx_->n()))
        throw DimensionError("witt vector needs exactly " +
                             std::to_string(ctx_->n()) + " coefficients");
    for (const auto& c : c_)
        if (!c.spec()->same(*ctx_->field()))
            throw ContextMismatchError(
                "witt coefficient from the wrong field");
}

WittVector WittVector::zero(const WittContext::Ptr& ctx) {
    if (!ctx) throw InvalidFieldError("witt vector needs a context");
    return WittVector(
        ctx, std::vector<FFElement>(static_cast<std::size_t>(ctx->n()),
                                    FFElement(ctx->field(), 0)));
}

WittVector WittVector::one(const WittContext::Ptr& ctx) {
    return teichmuller(ctx, FFElement(ctx ? ctx->field() : nullptr, 1));
}

WittVector WittVector::teichmuller(const WittContext::Ptr& ctx,
                                   const FFElement& a) {
    WittVector w = zero(ctx);
    if (!a.spec()->same(*ctx->field()))
        throw ContextMismatchError("teichmuller lift from the wrong field");
    w.c_[0] = a;
    return w;
}

const FFElement& WittVector::coeff(int i) const {
    if (i < 0 || i >= ctx_->n())
        throw DimensionError("witt coefficient index out of range");
    return c_[static_cast<std::size_t>(i)];
}

bool WittVector::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool WittVector::operator==(const WittVector& o) const {
    if (!ctx_->same(*o.ctx_))
        throw ContextMismatchError("comparing witt vectors across contexts");
    return c_ == o.c_;
}

std::string WittVector::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].to_string();
    }
    return s + "]";
}

namespace {

const WittContext::Ptr& common_context(const WittVector& x,
                                        const WittVector& y) {
    if (!x.context()->same(*y.context()))
        throw ContextMismatchError("witt operands from different contexts");
    return x.context();
}

} // namespace

WittVector witt_add(const WittVector& x, const WittVector& y) {
    const auto& ctx = common_context(x, y);
    return WittVector(ctx, eval_op(*ctx, WittOp::add, x.coeffs(), y.coeffs(),
                                   x.coeffs().size()));
}

WittVector witt_mul(const WittVector& x, const WittVector& y) {
    const auto& ctx = common_context(x, y);
    return WittVector(ctx, eval_op(*ctx, WittOp::mul, x.coeffs(), y.coeffs(),
                                   x.coeffs().size()));
}

WittVector witt_neg(const WittVector& x) {
    return WittVector(x.context(), eval_op(*x.context(), WittOp::neg,
                                           x.coeffs(), {}, x.coeffs().size()));
}

WittVector witt_sub(const WittVector& x, const WittVector& y) {
    return witt_add(x, witt_neg(y));
}

std::vector<BigInt> ghost_components(const WittContext& ctx,
                                     const std::vector<BigInt>& x) {
    const BigInt bp(ctx.p());
    std::vector<BigInt> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        BigInt acc = 0;
        BigInt pj = 1;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += pj * pow(x[j], int_pow(ctx.p(),
                                          static_cast<int>(i - j)));
            pj *= bp;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

WittVector witt_frobenius(const WittVector& x) {
    std::vector<FFElement> c;
    c.reserve(x.coeffs().size());
    for (const auto& a : x.coeffs()) c.push_back(frobenius_field(a));
    return WittVector(x.context(), std::move(c));
}

WittVector witt_pth_root(const WittVector& x) {
    std::vector<FFElement> c;
    c.reserve(x.coeffs().size());
    for (const auto& a : x.coeffs()) c.push_back(pth_root(a));
    return WittVector(x.context(), std::move(c));
}

WittVector witt_verschiebung(const WittVector& x) {
    std::vector<FFElement> c(x.coeffs().size(),
                             FFElement(x.context()->field(), 0));
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = x.coeffs()[i - 1];
    return WittVector(x.context(), std::move(c));
}

WittVector witt_scale_p(const WittVector& x) {
    return witt_verschiebung(witt_frobenius(x));
}

std::optional<int> valuation(const WittVector& x) {
    for (std::size_t i = 0; i < x.coeffs().size(); ++i)
        if (!x.coeffs()[i].is_zero()) return static_cast<int>(i);
    return std::nullopt;
}

// --- fraction field ---

FractionFieldElement FractionFieldElement::zero(WittContext::Ptr ctx) {
    if (!ctx) throw InvalidFieldError("fraction element needs a context");
    FractionFieldElement e(std::move(ctx));
    e.precision_ = e.ctx_->n();
    return e;
}

FractionFieldElement FractionFieldElement::one(const WittContext::Ptr& ctx) {
    return from_unit(0, WittVector::one(ctx));
}

FractionFieldElement FractionFieldElement::from_unit(int m,
                                                     const WittVector& unit) {
    if (unit.coeff(0).is_zero())
        throw NotInvertibleError(
            "fraction-field unit must have a nonzero leading coefficient");
    FractionFieldElement e(unit.context());
    e.zero_ = false;
    e.m_ = m;
    e.unit_ = unit.coeffs();
    e.precision_ = unit.context()->n();
    return e;
}

FractionFieldElement FractionFieldElement::from_witt(int m,
                                                     const WittVector& w) {
    const auto v = semilin::valuation(w);
    if (!v) return zero(w.context());
    FractionFieldElement e(w.context());
    e.zero_ = false;
    e.m_ = m + *v;
    e.precision_ = w.context()->n() - *v;
    e.unit_.reserve(static_cast<std::size_t>(e.precision_));
    for (int i = 0; i < e.precision_; ++i) {
        FFElement c = w.coeff(*v + i);
        for (int k = 0; k < *v; ++k) c = pth_root(c);
        e.unit_.push_back(c);
    }
    return e;
}

int FractionFieldElement::valuation() const {
    if (zero_)
        throw ZeroVectorError("the zero element has no finite valuation");
    return m_;
}

const std::vector<FFElement>& FractionFieldElement::unit_coeffs() const {
    if (zero_) throw ZeroVectorError("the zero element has no unit part");
    return unit_;
}

FractionFieldElement FractionFieldElement::operator*(
    const FractionFieldElement& o) const {
    if (!ctx_->same(*o.ctx_))
        throw ContextMismatchError("fraction operands from different contexts");
    if (zero_ || o.zero_) return zero(ctx_);
    const int prec = std::min(precision_, o.precision_);
    std::vector<FFElement> u = eval_op(*ctx_, WittOp::mul, unit_, o.unit_,
                                       static_cast<std::size_t>(prec));
    if (u[0].is_zero())
        throw InternalError("unit product lost its leading coefficient");
    FractionFieldElement e(ctx_);
    e.zero_ = false;
    e.m_ = m_ + o.m_;
    e.unit_ = std::move(u);
    e.precision_ = prec;
    return e;
}

FractionFieldElement FractionFieldElement::inv() const {
    if (zero_) throw DivisionByZeroError("inverting the zero element");
    const FieldSpec::Ptr& spec = ctx_->field();
    const auto embed = [&spec](const BigInt& c) {
        return FFElement(spec, c.convert_to<std::uint32_t>());
    };
    std::vector<FFElement> y;
    y.reserve(unit_.size());
    y.push_back(unit_[0].inv());
    for (int i = 1; i < precision_; ++i) {
        // the product's coefficient i is affine in y_i with slope u_0^{p^i};
        // evaluate at y_i = 0 and solve for the target coefficient 0
        std::vector<FFElement> point;
        point.reserve(2 * static_cast<std::size_t>(i) + 2);
        for (int j = 0; j <= i; ++j) {
            point.push_back(unit_[static_cast<std::size_t>(j)]);
            point.push_back(j < i ? y[static_cast<std::size_t>(j)]
                                  : FFElement(spec, 0));
        }
        const FFElement beta =
            ctx_->reduced_poly(WittOp::mul, i).evaluate(point, embed);
        const FFElement alpha = unit_[0].pow(int_pow(ctx_->p(), i));
        y.push_back(-beta * alpha.inv());
    }
    FractionFieldElement e(ctx_);
    e.zero_ = false;
    e.m_ = -m_;
    e.unit_ = std::move(y);
    e.precision_ = precision_;
    return e;
}

FractionFieldElement FractionFieldElement::operator/(
    const FractionFieldElement& o) const {
    return *this * o.inv();
}

FractionFieldElement FractionFieldElement::operator-() const {
    if (zero_) return *this;
    FractionFieldElement e(ctx_);
    e.zero_ = false;
    e.m_ = m_;
    e.unit_ = eval_op(*ctx_, WittOp::neg, unit_, {},
                      static_cast<std::size_t>(precision_));
    e.precision_ = precision_;
    return e;
}

FractionFieldElement FractionFieldElement::operator+(
    const FractionFieldElement& o) const {
    if (!ctx_->same(*o.ctx_))
        throw ContextMismatchError("fraction operands from different contexts");
    if (zero_) return o;
    if (o.zero_) return *this;
    const int n = ctx_->n();
    const int mlo = std::min(m_, o.m_);
    const FieldSpec::Ptr& spec = ctx_->field();

    // p^j * u as a plain Witt coefficient list: j zeros, then u raised
    // coefficientwise to the p^j (V compose F, j times), valid to length L
    const auto lift = [&](int j, const std::vector<FFElement>& u,
                          int prec) -> std::pair<std::vector<FFElement>, int> {
        const int len = std::min(n, j >= n ? n : j + prec);
        std::vector<FFElement> w(static_cast<std::size_t>(len),
                                 FFElement(spec, 0));
        for (int i = j; i < len; ++i) {
            FFElement c = u[static_cast<std::size_t>(i - j)];
            for (int k = 0; k < j; ++k) c = frobenius_field(c);
            w[static_cast<std::size_t>(i)] = c;
        }
        return {std::move(w), len};
    };

    const auto [wa, la] = lift(m_ - mlo, unit_, precision_);
    const auto [wb, lb] = lift(o.m_ - mlo, o.unit_, o.precision_);
    const int l = std::min(la, lb);
    std::vector<FFElement> sum =
        eval_op(*ctx_, WittOp::add, wa, wb, static_cast<std::size_t>(l));

    int v = -1;
    for (int i = 0; i < l; ++i)
        if (!sum[static_cast<std::size_t>(i)].is_zero()) {
            v = i;
            break;
        }
    if (v < 0) return zero(ctx_); // cancelled on every retained coefficient

    FractionFieldElement e(ctx_);
    e.zero_ = false;
    e.m_ = mlo + v;
    e.precision_ = l - v;
    e.unit_.reserve(static_cast<std::size_t>(e.precision_));
    for (int i = 0; i < e.precision_; ++i) {
        FFElement c = sum[static_cast<std::size_t>(v + i)];
        for (int k = 0; k < v; ++k) c = pth_root(c);
        e.unit_.push_back(c);
    }
    return e;
}

FractionFieldElement FractionFieldElement::operator-(
    const FractionFieldElement& o) const {
    return *this + (-o);
}

FractionFieldElement FractionFieldElement::scale_by_p_power(int j) const {
    FractionFieldElement e = *this;
    if (!e.zero_) e.m_ += j;
    return e;
}

bool FractionFieldElement::operator==(const FractionFieldElement& o) const {
    if (!ctx_->same(*o.ctx_))
        throw ContextMismatchError("comparing fractions across contexts");
    if (zero_ || o.zero_) return zero_ == o.zero_;
    if (m_ != o.m_) return false;
    const int prec = std::min(precision_, o.precision_);
    for (int i = 0; i < prec; ++i)
        if (unit_[static_cast<std::size_t>(i)] !=
            o.unit_[static_cast<std::size_t>(i)])
            return false;
    return true;
}

std::string FractionFieldElement::to_string() const {
    if (zero_) return "0";
    std::string s = "p^" + std::to_string(m_) + "*[";
    for (int i = 0; i < precision_; ++i) {
        if (i) s += ",";
        s += unit_[static_cast<std::size_t>(i)].to_string();
    }
    return s + "]";
}

FractionFieldElement frobenius_K(const FractionFieldElement& x) {
    if (x.is_zero()) return x;
    FractionFieldElement e = x; // keeps m and precision
    for (auto& c : e.unit_) c = frobenius_field(c);
    return e;
}

} // namespace semilin
