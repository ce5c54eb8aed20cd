#pragma once

#include <concepts>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/scalar.hpp"

namespace semilin {

/// The registered kinds of scalar twist. Everything a semilinear map is
/// allowed to twist by is one of these; composition and inversion are
/// resolved by rule on the descriptors, not by wrapping closures, so results
/// stay in normal form (composing two conjugations yields the identity
/// descriptor itself).
enum class HomKind { identity, conjugation, frobenius_power, table };

inline std::string to_string(HomKind k) {
    switch (k) {
    case HomKind::identity: return "identity";
    case HomKind::conjugation: return "conjugation";
    case HomKind::frobenius_power: return "frobenius-power";
    case HomKind::table: return "explicit-table";
    }
    return "?";
}

/// Describes the scalar system(s) elements of K may belong to and the extra
/// structure twists over K can use. rc scalars form a single anonymous
/// system with conjugation; finite-field elements belong to the system of
/// their FieldSpec and carry Frobenius twists; specializations live next to
/// the scalar types they describe.
template <class K>
struct ScalarSystem;

template <rc_scalar K>
struct ScalarSystem<K> {
    struct Tag {};
    static constexpr bool singleton = true; // one system for the whole type
    static Tag tag_of(const K&) { return {}; }
    static bool same(const Tag&, const Tag&) { return true; }
    static std::string name(const Tag&) { return rc<K>::name(); }
    static K conjugate(const Tag&, const K& x) { return rc<K>::conj(x); }
    template <class Rng>
    static K random(const Tag&, Rng& rng) {
        return random_scalar<K>(rng);
    }
};

template <class K>
concept has_conjugation =
    requires(const typename ScalarSystem<K>::Tag& t, const K& x) {
        { ScalarSystem<K>::conjugate(t, x) } -> std::convertible_to<K>;
    };

template <class K>
concept has_frobenius =
    requires(const typename ScalarSystem<K>::Tag& t, const K& x, int e) {
        { ScalarSystem<K>::frobenius_power(t, x, e) } -> std::convertible_to<K>;
        { ScalarSystem<K>::frobenius_order(t) } -> std::convertible_to<int>;
    };

template <class K>
concept enumerable_system =
    requires(const typename ScalarSystem<K>::Tag& t, const K& x, std::size_t k) {
        { ScalarSystem<K>::enum_size(t) } -> std::convertible_to<std::size_t>;
        { ScalarSystem<K>::from_index(t, k) } -> std::convertible_to<K>;
        { ScalarSystem<K>::to_index(t, x) } -> std::convertible_to<std::size_t>;
    };

/// A ring homomorphism between scalar systems of K, represented by kind plus
/// the data that kind needs. Apply with operator(). Frobenius exponents are
/// kept canonical in [0, order) with exponent 0 collapsing to identity, so
/// descriptor equality is meaningful.
template <class K>
class RingHom {
public:
    using Sys = typename ScalarSystem<K>::Tag;

    static RingHom identity(Sys sys) {
        return RingHom(HomKind::identity, sys, sys);
    }

    static RingHom identity()
        requires(ScalarSystem<K>::singleton)
    {
        return identity(Sys{});
    }

    static RingHom conjugation()
        requires(has_conjugation<K> && ScalarSystem<K>::singleton)
    {
        return RingHom(HomKind::conjugation, Sys{}, Sys{});
    }

    static RingHom frobenius(Sys sys, int exponent = 1)
        requires has_frobenius<K>
    {
        const int order = ScalarSystem<K>::frobenius_order(sys);
        int e = exponent % order;
        if (e < 0) e += order;
        if (e == 0) return identity(sys);
        RingHom h(HomKind::frobenius_power, sys, sys);
        h.power_ = e;
        return h;
    }

    static RingHom from_table(Sys domain, Sys codomain, std::vector<K> images)
        requires enumerable_system<K>
    {
        if (images.size() != ScalarSystem<K>::enum_size(domain))
            throw DimensionError("image table must cover the whole domain");
        RingHom h(HomKind::table, domain, codomain);
        h.table_ = std::make_shared<const std::vector<K>>(std::move(images));
        return h;
    }

    HomKind kind() const { return kind_; }
    const Sys& domain() const { return domain_; }
    const Sys& codomain() const { return codomain_; }
    bool is_identity() const { return kind_ == HomKind::identity; }

    /// Canonical exponent for frobenius-power descriptors, 0 otherwise.
    int frobenius_exponent() const { return power_; }

    K operator()(const K& x) const {
        switch (kind_) {
        case HomKind::identity:
            return x;
        case HomKind::conjugation:
            if constexpr (has_conjugation<K>)
                return ScalarSystem<K>::conjugate(domain_, x);
            break;
        case HomKind::frobenius_power:
            if constexpr (has_frobenius<K>)
                return ScalarSystem<K>::frobenius_power(domain_, x, power_);
            break;
        case HomKind::table:
            if constexpr (enumerable_system<K>)
                return (*table_)[ScalarSystem<K>::to_index(domain_, x)];
            break;
        }
        throw InternalError("ring hom kind impossible for this scalar type");
    }

    bool operator==(const RingHom& o) const {
        if (kind_ != o.kind_) return false;
        if (!ScalarSystem<K>::same(domain_, o.domain_)) return false;
        if (!ScalarSystem<K>::same(codomain_, o.codomain_)) return false;
        if (kind_ == HomKind::frobenius_power && power_ != o.power_)
            return false;
        if (kind_ == HomKind::table) {
            if (table_ == o.table_) return true;
            return *table_ == *o.table_;
        }
        return true;
    }

    std::string describe() const {
        switch (kind_) {
        case HomKind::identity:
            return "identity on " + ScalarSystem<K>::name(domain_);
        case HomKind::conjugation:
            return "conjugation on " + ScalarSystem<K>::name(domain_);
        case HomKind::frobenius_power:
            return "frobenius^" + std::to_string(power_) + " on " +
                   ScalarSystem<K>::name(domain_);
        case HomKind::table:
            return "table " + ScalarSystem<K>::name(domain_) + " -> " +
                   ScalarSystem<K>::name(codomain_);
        }
        return "?";
    }

private:
    RingHom(HomKind k, Sys d, Sys c)
        : kind_(k), domain_(std::move(d)), codomain_(std::move(c)) {}

    HomKind kind_;
    Sys domain_;
    Sys codomain_;
    int power_ = 0;
    std::shared_ptr<const std::vector<K>> table_;
};

/// Composition certificate: sigma13 acts as sigma23 after sigma12.
template <class K>
struct CompTriple {
    RingHom<K> sigma12;
    RingHom<K> sigma23;
    RingHom<K> sigma13;
};

/// Mutual-inverse certificate: tau undoes sigma and vice versa.
template <class K>
struct InvPair {
    RingHom<K> sigma;
    RingHom<K> tau;
};

/// The composite g after f, resolved by rule on descriptor kinds. The result
/// is always in normal form: identity absorbs, two conjugations cancel to
/// the literal identity descriptor, Frobenius exponents add modulo the
/// field's order, and table composites collapse to identity when they act
/// trivially.
template <class K>
RingHom<K> compose_hom(const RingHom<K>& f, const RingHom<K>& g) {
    using Sys = ScalarSystem<K>;
    if (!Sys::same(f.codomain(), g.domain()))
        throw TwistMismatchError("cannot compose " + g.describe() + " after " +
                                 f.describe() +
                                 ": scalar systems do not meet");
    if (f.kind() == HomKind::identity) return g;
    if (g.kind() == HomKind::identity) return f;
    if (f.kind() == HomKind::conjugation && g.kind() == HomKind::conjugation)
        return RingHom<K>::identity(f.domain());
    if constexpr (has_frobenius<K>) {
        if (f.kind() == HomKind::frobenius_power &&
            g.kind() == HomKind::frobenius_power)
            return RingHom<K>::frobenius(
                f.domain(), f.frobenius_exponent() + g.frobenius_exponent());
    }
    if constexpr (enumerable_system<K>) {
        const bool f_tab = f.kind() == HomKind::table ||
                           f.kind() == HomKind::frobenius_power;
        const bool g_tab = g.kind() == HomKind::table ||
                           g.kind() == HomKind::frobenius_power;
        if (f_tab && g_tab) {
            const std::size_t n = Sys::enum_size(f.domain());
            std::vector<K> images;
            images.reserve(n);
            bool is_id = Sys::same(f.domain(), g.codomain());
            for (std::size_t k = 0; k < n; ++k) {
                K x = Sys::from_index(f.domain(), k);
                K y = g(f(x));
                if (is_id && !(y == x)) is_id = false;
                images.push_back(std::move(y));
            }
            if (is_id) return RingHom<K>::identity(f.domain());
            return RingHom<K>::from_table(f.domain(), g.codomain(),
                                          std::move(images));
        }
    }
    throw TwistMismatchError("no composition rule for " + g.describe() +
                             " after " + f.describe());
}

template <class K>
CompTriple<K> resolve_comp_triple(const RingHom<K>& sigma12,
                                  const RingHom<K>& sigma23) {
    return CompTriple<K>{sigma12, sigma23, compose_hom(sigma12, sigma23)};
}

/// Produce the inverse descriptor of a bijective twist. Conjugation is its
/// own inverse; a Frobenius power on a field of order r inverts to the
/// complementary power; an explicit table inverts by search and rejects
/// non-bijective tables.
template <class K>
InvPair<K> resolve_inv_pair(const RingHom<K>& sigma) {
    switch (sigma.kind()) {
    case HomKind::identity:
    case HomKind::conjugation:
        return InvPair<K>{sigma, sigma};
    case HomKind::frobenius_power:
        if constexpr (has_frobenius<K>) {
            const int order = ScalarSystem<K>::frobenius_order(sigma.domain());
            return InvPair<K>{
                sigma, RingHom<K>::frobenius(
                           sigma.domain(), order - sigma.frobenius_exponent())};
        }
        break;
    case HomKind::table:
        if constexpr (enumerable_system<K>) {
            using Sys = ScalarSystem<K>;
            const std::size_t n = Sys::enum_size(sigma.domain());
            const std::size_t m = Sys::enum_size(sigma.codomain());
            if (n != m)
                throw NotInvertibleError(
                    "table twist between systems of different size");
            std::vector<bool> seen(m, false);
            std::vector<std::size_t> pre(m, 0);
            for (std::size_t k = 0; k < n; ++k) {
                const K y = sigma(Sys::from_index(sigma.domain(), k));
                const std::size_t idx = Sys::to_index(sigma.codomain(), y);
                if (seen[idx])
                    throw NotInvertibleError(
                        "table twist is not injective, cannot invert");
                seen[idx] = true;
                pre[idx] = k;
            }
            std::vector<K> inv_images;
            inv_images.reserve(m);
            for (std::size_t idx = 0; idx < m; ++idx)
                inv_images.push_back(
                    Sys::from_index(sigma.domain(), pre[idx]));
            return InvPair<K>{sigma,
                              RingHom<K>::from_table(sigma.codomain(),
                                                     sigma.domain(),
                                                     std::move(inv_images))};
        }
        break;
    }
    throw NotInvertibleError("no inversion rule for " + sigma.describe());
}

} // namespace semilin
