#include "semilin/intpoly.hpp"

namespace semilin {

void IntPoly::trim(Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

void IntPoly::add_term(Mono mono, BigInt c) {
    if (c == 0) return;
    trim(mono);
    // try_emplace leaves c untouched when the key already exists
    auto [it, inserted] = terms_.try_emplace(std::move(mono), std::move(c));
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly IntPoly::constant(BigInt c) {
    IntPoly r;
    r.add_term({}, std::move(c));
    return r;
}

IntPoly IntPoly::variable(std::size_t index) {
    IntPoly r;
    Mono m(index + 1, 0);
    m[index] = 1;
    r.terms_.emplace(std::move(m), BigInt(1));
    return r;
}

std::size_t IntPoly::variable_bound() const {
    std::size_t bound = 0;
    for (const auto& [mono, c] : terms_)
        bound = std::max(bound, mono.size());
    return bound;
}

BigInt IntPoly::coeff(Mono mono) const {
    trim(mono);
    const auto it = terms_.find(mono);
    return it == terms_.end() ? BigInt(0) : it->second;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [mono, c] : o.terms_) r.add_term(mono, c);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [mono, c] : o.terms_) r.add_term(mono, -c);
    return r;
}

IntPoly IntPoly::operator-() const {
    IntPoly r;
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, -c);
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    IntPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(std::max(ma.size(), mb.size()), 0);
            for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
            for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
            r.add_term(std::move(m), ca * cb);
        }
    return r;
}

IntPoly IntPoly::pow(std::uint32_t e) const {
    if (e == 0) return constant(1);
    IntPoly r = *this;
    for (std::uint32_t k = 1; k < e; ++k) r = r * *this;
    return r;
}

IntPoly IntPoly::divide_exact(const BigInt& d) const {
    if (d == 0) throw DivisionByZeroError("divide_exact by zero");
    IntPoly r;
    for (const auto& [mono, c] : terms_) {
        if (c % d != 0)
            throw InternalError(
                "non-exact coefficient division: the ghost recursion "
                "produced a non-integer structure polynomial");
        r.terms_.emplace(mono, c / d);
    }
    return r;
}

IntPoly IntPoly::reduced_mod(const BigInt& p) const {
    if (p <= 0) throw DivisionByZeroError("reduction modulus must be positive");
    IntPoly r;
    for (const auto& [mono, c] : terms_) {
        BigInt m = c % p;
        if (m < 0) m += p;
        if (m != 0) r.terms_.emplace(mono, std::move(m));
    }
    return r;
}

std::string IntPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.str();
        for (std::size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            s += "*x" + std::to_string(v);
            if (mono[v] > 1) s += "^" + std::to_string(mono[v]);
        }
    }
    return s;
}

} // namespace semilin
