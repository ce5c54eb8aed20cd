#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/matrix.hpp"
#include "semilin/ring_hom.hpp"

namespace semilin {

/// A concrete model of F_{p^r}: characteristic, degree, and the monic
/// irreducible modulus polynomial the elements are reduced by. Elements are
/// packed integers in [0, p^r) whose base-p digits are the coefficients.
/// Construction builds discrete log/exp tables from a multiplicative
/// generator, so products and inverses are table lookups afterwards.
///
/// Specs are shared immutably; every element keeps a pointer to its spec and
/// arithmetic between different specs is rejected.
class FieldSpec {
public:
    using Ptr = std::shared_ptr<const FieldSpec>;

    /// Deterministic modulus: the first irreducible monic polynomial in
    /// packed-coefficient order. For r = 1 the modulus is t itself.
    static Ptr make(int p, int r);

    /// Explicit modulus, validated monic irreducible of degree r.
    /// Coefficients are given low-degree first, length r + 1.
    static Ptr make(int p, int r, std::vector<int> modulus);

    int p() const { return p_; }
    int r() const { return r_; }
    std::uint32_t size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    std::string name() const;

    bool same(const FieldSpec& o) const {
        return p_ == o.p_ && r_ == o.r_ && modulus_ == o.modulus_;
    }

    // packed-value arithmetic; all values must lie in [0, size())
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, long long e) const;

    /// a -> a^p, the absolute arithmetic automorphism.
    std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

    /// The unique b with b^p = a; equals a^(p^(r-1)).
    std::uint32_t pth_root(std::uint32_t a) const;

    std::vector<int> decode(std::uint32_t v) const;
    std::uint32_t encode(const std::vector<int>& digits) const;

private:
    FieldSpec(int p, int r, std::vector<int> modulus);
    void build_tables();
    std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const;

    int p_;
    int r_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> exp_; // exp_[k] = g^k, k in [0, q-1)
    std::vector<std::uint32_t> log_; // log_[v] for v != 0
};

/// One element of a finite field: a packed value plus the spec it lives in.
class FFElement {
public:
    FFElement(FieldSpec::Ptr spec, std::uint32_t value)
        : spec_(std::move(spec)), v_(value) {
        if (!spec_) throw InvalidFieldError("element needs a field");
        if (v_ >= spec_->size())
            throw InvalidFieldError("packed value out of range for field");
    }

    static FFElement from_coeffs(const FieldSpec::Ptr& spec,
                                 const std::vector<int>& coeffs) {
        if (!spec) throw InvalidFieldError("element needs a field");
        return FFElement(spec, spec->encode(coeffs));
    }

    const FieldSpec::Ptr& spec() const { return spec_; }
    std::uint32_t value() const { return v_; }
    std::vector<int> coeffs() const { return spec_->decode(v_); }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FFElement operator+(const FFElement& o) const {
        return with(spec_->add(v_, same_field(o)));
    }
    FFElement operator-(const FFElement& o) const {
        return with(spec_->sub(v_, same_field(o)));
    }
    FFElement operator*(const FFElement& o) const {
        return with(spec_->mul(v_, same_field(o)));
    }
    FFElement operator/(const FFElement& o) const {
        return with(spec_->mul(v_, spec_->inv(same_field(o))));
    }
    FFElement operator-() const { return with(spec_->neg(v_)); }

    FFElement inv() const { return with(spec_->inv(v_)); }
    FFElement pow(long long e) const { return with(spec_->pow(v_, e)); }

    bool operator==(const FFElement& o) const {
        return v_ == o.v_ && spec_->same(*o.spec_);
    }

    std::string to_string() const;

private:
    FFElement with(std::uint32_t v) const { return FFElement(spec_, v); }

    std::uint32_t same_field(const FFElement& o) const {
        if (spec_ != o.spec_ && !spec_->same(*o.spec_))
            throw ContextMismatchError("elements of different fields: " +
                                       spec_->name() + " vs " +
                                       o.spec_->name());
        return o.v_;
    }

    FieldSpec::Ptr spec_;
    std::uint32_t v_;
};

inline FFElement frobenius_field(const FFElement& a) {
    return FFElement(a.spec(), a.spec()->frobenius(a.value()));
}

inline FFElement pth_root(const FFElement& a) {
    return FFElement(a.spec(), a.spec()->pth_root(a.value()));
}

template <class Rng>
FFElement random_element(const FieldSpec::Ptr& spec, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, spec->size() - 1);
    return FFElement(spec, dist(rng));
}

template <class Rng>
FFElement random_unit(const FieldSpec::Ptr& spec, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(1, spec->size() - 1);
    return FFElement(spec, dist(rng));
}

/// Univariate polynomial over a finite field, coefficients low-degree first,
/// packed values, no trailing zeros (the zero polynomial has no terms).
class FFPoly {
public:
    explicit FFPoly(FieldSpec::Ptr spec) : spec_(std::move(spec)) {}
    FFPoly(FieldSpec::Ptr spec, std::vector<std::uint32_t> coeffs)
        : spec_(std::move(spec)), c_(std::move(coeffs)) {
        normalize();
    }

    static FFPoly constant(const FieldSpec::Ptr& spec, std::uint32_t v) {
        return FFPoly(spec, {v});
    }
    static FFPoly constant(const FFElement& v) {
        return FFPoly(v.spec(), {v.value()});
    }
    static FFPoly variable(const FieldSpec::Ptr& spec) {
        return FFPoly(spec, {0, 1});
    }

    const FieldSpec::Ptr& spec() const { return spec_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    FFElement coeff(int i) const {
        const std::uint32_t v =
            (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
        return FFElement(spec_, v);
    }

    FFPoly operator+(const FFPoly& o) const;
    FFPoly operator-(const FFPoly& o) const;
    FFPoly operator*(const FFPoly& o) const;
    FFPoly operator-() const;

    FFElement eval(const FFElement& x) const;

    bool operator==(const FFPoly& o) const {
        return c_ == o.c_ && spec_->same(*o.spec_);
    }

    std::string to_string() const;

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void same_field(const FFPoly& o) const {
        if (spec_ != o.spec_ && !spec_->same(*o.spec_))
            throw ContextMismatchError("polynomials over different fields");
    }

    FieldSpec::Ptr spec_;
    std::vector<std::uint32_t> c_;
};

/// All roots of a nonzero polynomial, found exhaustively, in packed-value
/// order. The zero polynomial has every element as a root and is rejected.
std::vector<FFElement> find_roots(const FFPoly& f);

/// Thrown when an equation provably has no solution in the current field.
/// Carries the polynomial whose roots were needed; the fix is to enlarge the
/// coefficient field.
class FieldTooSmallError : public Error {
public:
    FieldTooSmallError(const std::string& what, FFPoly poly,
                       int suggested_degree)
        : Error(what), polynomial(std::move(poly)),
          suggested_degree(suggested_degree) {}
    FFPoly polynomial;
    int suggested_degree; // a field degree r that would contain the roots
};

// --- twist/system integration ---

template <>
struct ScalarSystem<FFElement> {
    using Tag = FieldSpec::Ptr;
    static constexpr bool singleton = false;
    static Tag tag_of(const FFElement& x) { return x.spec(); }
    static bool same(const Tag& a, const Tag& b) {
        return a && b && (a == b || a->same(*b));
    }
    static std::string name(const Tag& t) { return t->name(); }
    static FFElement frobenius_power(const Tag& t, const FFElement& x, int e) {
        std::uint32_t v = x.value();
        for (int k = 0; k < e; ++k) v = t->frobenius(v);
        return FFElement(t, v);
    }
    static int frobenius_order(const Tag& t) { return t->r(); }
    static std::size_t enum_size(const Tag& t) { return t->size(); }
    static FFElement from_index(const Tag& t, std::size_t k) {
        return FFElement(t, static_cast<std::uint32_t>(k));
    }
    static std::size_t to_index(const Tag&, const FFElement& x) {
        return x.value();
    }
    template <class Rng>
    static FFElement random(const Tag& t, Rng& rng) {
        return random_element(t, rng);
    }
};

template <>
struct ScalarLike<FFElement> {
    static constexpr bool exact = true;
    static FFElement zero(const FFElement& x) {
        return FFElement(x.spec(), 0);
    }
    static FFElement one(const FFElement& x) { return FFElement(x.spec(), 1); }
    static FFElement invert(const FFElement& x) { return x.inv(); }
    static double weight(const FFElement& x) { return x.is_zero() ? 0.0 : 1.0; }
};

} // namespace semilin
