#include "semilin/finite_field.hpp"

#include <algorithm>
#include <utility>

namespace semilin {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 16;

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// dense low-first coefficient vectors over F_p, used only while building a
// spec (element arithmetic proper goes through the tables)
using Digits = std::vector<int>;

Digits poly_mod(Digits a, const Digits& m, int p) {
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int da = static_cast<int>(a.size()) - 1;
        const int lead = a.back();
        if (lead != 0) {
            // m is monic, subtract lead * t^(da-dm) * m
            for (int i = 0; i <= dm; ++i) {
                int& c = a[da - dm + i];
                c = (c - lead * m[i]) % p;
                if (c < 0) c += p;
            }
        }
        a.pop_back();
    }
    return a;
}

Digits poly_mul_raw(const Digits& a, const Digits& b, int p) {
    if (a.empty() || b.empty()) return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

// remainder of a by monic divisor d
Digits poly_rem(Digits a, const Digits& d, int p) { return poly_mod(std::move(a), d, p); }

bool all_zero(const Digits& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

bool is_irreducible(const Digits& m, int p, int r) {
    if (r == 1) return true;
    // no linear factors: no roots in F_p
    for (int x = 0; x < p; ++x) {
        long long acc = 0;
        for (int i = r; i >= 0; --i) acc = (acc * x + m[i]) % p;
        if (acc == 0) return false;
    }
    // trial division by every monic polynomial of degree 2..r/2
    for (int d = 2; 2 * d <= r; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long v = 0; v < count; ++v) {
            Digits div(d + 1, 0);
            long long t = v;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<int>(t % p);
                t /= p;
            }
            div[d] = 1;
            if (all_zero(poly_rem(m, div, p))) return false;
        }
    }
    return true;
}

} // namespace

FieldSpec::FieldSpec(int p, int r, std::vector<int> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < r_; ++i) q_ *= static_cast<std::uint32_t>(p_);
    build_tables();
}

FieldSpec::Ptr FieldSpec::make(int p, int r) {
    if (!is_prime(p)) throw InvalidFieldError("characteristic must be prime");
    if (r < 1) throw InvalidFieldError("field degree must be positive");
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldSize)
            throw InvalidFieldError("field too large for table arithmetic");
    }
    if (r == 1) return make(p, r, {0, 1});
    // first irreducible monic polynomial in packed order of the low
    // coefficients; the search is exhaustive, so the spec is reproducible
    for (long long v = 0; v < q; ++v) {
        std::vector<int> m(r + 1, 0);
        long long t = v;
        for (int i = 0; i < r; ++i) {
            m[i] = static_cast<int>(t % p);
            t /= p;
        }
        m[r] = 1;
        if (is_irreducible(m, p, r)) return make(p, r, std::move(m));
    }
    throw InternalError("no irreducible modulus found");
}

FieldSpec::Ptr FieldSpec::make(int p, int r, std::vector<int> modulus) {
    if (!is_prime(p)) throw InvalidFieldError("characteristic must be prime");
    if (r < 1) throw InvalidFieldError("field degree must be positive");
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldSize)
            throw InvalidFieldError("field too large for table arithmetic");
    }
    if (static_cast<int>(modulus.size()) != r + 1)
        throw InvalidFieldError("modulus must have degree exactly r");
    for (auto& c : modulus) {
        c %= p;
        if (c < 0) c += p;
    }
    if (modulus[r] != 1)
        throw InvalidFieldError("modulus must be monic");
    if (!is_irreducible(modulus, p, r))
        throw InvalidFieldError("modulus is reducible");
    return Ptr(new FieldSpec(p, r, std::move(modulus)));
}

std::string FieldSpec::name() const { return "F" + std::to_string(q_); }

std::vector<int> FieldSpec::decode(std::uint32_t v) const {
    std::vector<int> d(r_, 0);
    for (int i = 0; i < r_; ++i) {
        d[i] = static_cast<int>(v % static_cast<std::uint32_t>(p_));
        v /= static_cast<std::uint32_t>(p_);
    }
    return d;
}

std::uint32_t FieldSpec::encode(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) > r_)
        throw InvalidFieldError("too many coefficients for this field");
    std::uint32_t v = 0;
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        int c = digits[i] % p_;
        if (c < 0) c += p_;
        v = v * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(c);
    }
    return v;
}

std::uint32_t FieldSpec::poly_mul(std::uint32_t a, std::uint32_t b) const {
    Digits da = decode(a), db = decode(b);
    Digits prod = poly_mul_raw(da, db, p_);
    prod = poly_mod(std::move(prod), modulus_, p_);
    prod.resize(r_, 0);
    return encode(prod);
}

void FieldSpec::build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
        exp_[0] = 1;
        log_[1] = 0;
        return;
    }
    for (std::uint32_t g = 2; g < q_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t k = 0;
        bool generator = true;
        for (; k < q_ - 1; ++k) {
            exp_[k] = x;
            x = poly_mul(x, g);
            if (x == 1 && k + 1 < q_ - 1) {
                generator = false;
                break;
            }
        }
        if (generator && x == 1) {
            for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
            return;
        }
    }
    throw InternalError("no multiplicative generator found");
}

std::uint32_t FieldSpec::add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t v = 0;
    std::uint32_t mult = 1;
    const auto up = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < r_; ++i) {
        const std::uint32_t da = a % up, db = b % up;
        a /= up;
        b /= up;
        v += ((da + db) % up) * mult;
        mult *= up;
    }
    return v;
}

std::uint32_t FieldSpec::neg(std::uint32_t a) const {
    std::uint32_t v = 0;
    std::uint32_t mult = 1;
    const auto up = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < r_; ++i) {
        const std::uint32_t da = a % up;
        a /= up;
        v += ((up - da) % up) * mult;
        mult *= up;
    }
    return v;
}

std::uint32_t FieldSpec::sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
}

std::uint32_t FieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint32_t n = q_ - 1;
    return exp_[(log_[a] + log_[b]) % n];
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero in " + name());
    const std::uint32_t n = q_ - 1;
    return exp_[(n - log_[a]) % n];
}

std::uint32_t FieldSpec::pow(std::uint32_t a, long long e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        throw DivisionByZeroError("negative power of zero in " + name());
    }
    const long long n = q_ - 1;
    long long k = (static_cast<long long>(log_[a]) * (e % n)) % n;
    if (k < 0) k += n;
    return exp_[k];
}

std::uint32_t FieldSpec::pth_root(std::uint32_t a) const {
    long long e = 1;
    for (int i = 0; i < r_ - 1; ++i) e *= p_;
    return pow(a, e);
}

std::string FFElement::to_string() const {
    const auto d = coeffs();
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + "]";
}

FFPoly FFPoly::operator+(const FFPoly& o) const {
    same_field(o);
    std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const std::uint32_t a = i < c_.size() ? c_[i] : 0;
        const std::uint32_t b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = spec_->add(a, b);
    }
    return FFPoly(spec_, std::move(r));
}

FFPoly FFPoly::operator-() const {
    std::vector<std::uint32_t> r = c_;
    for (auto& v : r) v = spec_->neg(v);
    return FFPoly(spec_, std::move(r));
}

FFPoly FFPoly::operator-(const FFPoly& o) const { return *this + (-o); }

FFPoly FFPoly::operator*(const FFPoly& o) const {
    same_field(o);
    if (is_zero() || o.is_zero()) return FFPoly(spec_);
    std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] = spec_->add(r[i + j], spec_->mul(c_[i], o.c_[j]));
        }
    }
    return FFPoly(spec_, std::move(r));
}

FFElement FFPoly::eval(const FFElement& x) const {
    if (x.spec() != spec_ && !x.spec()->same(*spec_))
        throw ContextMismatchError("evaluation point from a different field");
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = spec_->add(spec_->mul(acc, x.value()), c_[i]);
    return FFElement(spec_, acc);
}

std::string FFPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += FFElement(spec_, c_[i]).to_string();
        if (i == 1) s += "*t";
        else if (i > 1) s += "*t^" + std::to_string(i);
    }
    return s;
}

std::vector<FFElement> find_roots(const FFPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError(
            "every element is a root of the zero polynomial");
    std::vector<FFElement> roots;
    const auto& spec = f.spec();
    for (std::uint32_t v = 0; v < spec->size(); ++v) {
        FFElement x(spec, v);
        if (f.eval(x).is_zero()) roots.push_back(x);
    }
    return roots;
}

} // namespace semilin
