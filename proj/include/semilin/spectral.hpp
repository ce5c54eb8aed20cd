#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semilin/errors.hpp"
#include "semilin/inner_product.hpp"
#include "semilin/matrix.hpp"
#include "semilin/scalar.hpp"

namespace semilin {

struct SpectralOptions {
    int max_iterations = 10000;
    double rayleigh_rel_tol = 1e-12;  // Rayleigh-change convergence test
    double self_adjoint_tol = 1e-8;   // gate, relative to 1 + ||T||_F
    double normal_tol = 1e-8;         // commutator gate, relative to 1 + ||T||_F^2
    double residual_tol = 1e-7;       // ||Tv - lambda v|| limit, relative to ||T||_F
    double cluster_rel_tol = 1e-6;    // eigenvalue grouping, relative to ||T||_F
};

/// re(inner(x, Tx)) / ||x||^2. Scale-invariant in x; meaningful for
/// self-adjoint T, where it is the quadratic form normalized to the sphere.
template <rc_scalar K>
double rayleigh_quotient(const InnerProductSpace<K>& space, const Matrix<K>& t,
                         const Vector<K>& x) {
    if (t.rows() != space.dim() || t.cols() != space.dim())
        throw DimensionError("operator shape does not match space");
    const double nx = space.norm(x);
    if (nx == 0.0) throw ZeroVectorError("Rayleigh quotient of the zero vector");
    return rc<K>::re(space.inner(x, t * x)) / (nx * nx);
}

template <rc_scalar K>
struct EigenPair {
    double value = 0.0;
    Vector<K> vector;
    double residual = 0.0; // ||Tv - lambda v|| in the space norm
    int iterations = 0;
};

namespace detail {

template <rc_scalar K>
Vector<K> normalized(const InnerProductSpace<K>& space, const Vector<K>& v) {
    const double n = space.norm(v);
    if (n == 0.0) throw ZeroVectorError("cannot normalize the zero vector");
    return vec_scale(rc<K>::from_real(1.0 / n), v);
}

template <rc_scalar K>
double pair_residual(const InnerProductSpace<K>& space, const Matrix<K>& t,
                     const Vector<K>& v, double lam) {
    return space.norm(vec_sub(t * v, vec_scale(rc<K>::from_real(lam), v)));
}

struct PowerRun {
    double value = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

/// One power iteration on M = T + shift*I from a fixed start, recording the
/// Rayleigh value of T at the final iterate.
template <rc_scalar K>
PowerRun power_iterate(const InnerProductSpace<K>& space, const Matrix<K>& t,
                       double shift, Vector<K> x, Vector<K>& out,
                       const SpectralOptions& opts) {
    const std::size_t n = space.dim();
    Matrix<K> m = t;
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = m(i, i) + rc<K>::from_real(shift);
    PowerRun run;
    x = normalized(space, x);
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < opts.max_iterations; ++k) {
        Vector<K> y = m * x;
        const double mu = rc<K>::re(space.inner(x, y)) - shift;
        const double ny = space.norm(y);
        run.iterations = k + 1;
        if (!std::isnan(prev) &&
            std::abs(mu - prev) <= opts.rayleigh_rel_tol * std::max(1.0, std::abs(mu))) {
            run.value = mu;
            run.converged = true;
            break;
        }
        prev = mu;
        run.value = mu;
        if (ny == 0.0) {
            // x is annihilated by the shifted operator: exact eigenvector
            run.converged = true;
            break;
        }
        x = vec_scale(rc<K>::from_real(1.0 / ny), y);
    }
    run.residual = pair_residual(space, t, x, run.value);
    out = std::move(x);
    return run;
}

template <rc_scalar K>
Vector<K> ones_start(std::size_t n) {
    return Vector<K>(n, K(1));
}

/// Deterministic perturbation of the all-ones start; breaks the case where
/// all-ones happens to be an exact non-dominant eigenvector.
template <rc_scalar K>
Vector<K> perturbed_start(std::size_t n) {
    Vector<K> v(n, K(1));
    for (std::size_t i = 0; i < n; ++i) {
        const double bump = 0.25 + 0.5 * static_cast<double>(i) /
                                       static_cast<double>(n);
        v[i] = v[i] + make_scalar<K>((i % 2 == 0) ? bump : -bump, 0.0);
    }
    return v;
}

} // namespace detail

/// The extreme eigenpair of a self-adjoint operator: the eigenvalue of
/// largest absolute value (the operator norm) with a unit eigenvector.
///
/// Power iteration on T + ||T||_F I isolates the top of the spectrum and on
/// T - ||T||_F I the bottom; the winner by |lambda| among converged runs is
/// polished by Rayleigh-shift inverse iteration until the residual contract
/// ||Tv - lambda v|| <= residual_tol * ||T||_F holds. Each shift is run from
/// the deterministic all-ones start and once more from a perturbed start, so
/// an unlucky start that is itself an interior eigenvector cannot win.
template <rc_scalar K>
EigenPair<K> max_eigenpair(const InnerProductSpace<K>& space,
                           const Matrix<K>& t,
                           const SpectralOptions& opts = {}) {
    const std::size_t n = space.dim();
    if (n == 0) throw DimensionError("max_eigenpair needs dimension >= 1");
    const double scale = frobenius_norm(t);
    if (!is_self_adjoint(space, t, opts.self_adjoint_tol * (1.0 + scale)))
        throw NotSelfAdjointError("max_eigenpair requires a self-adjoint operator");
    if (scale == 0.0) {
        Vector<K> e(n, K(0));
        e[0] = K(1);
        return EigenPair<K>{0.0, detail::normalized(space, e), 0.0, 0};
    }

    // Rayleigh-shift inverse iteration: one step roughly cubes the
    // eigenvector error, so a couple of steps pin the residual near
    // machine precision
    const auto polish = [&](EigenPair<K>& pair) {
        for (int step = 0; step < 3 && pair.residual > 1e-9 * scale; ++step) {
            for (const double delta : {0.0, 1e-13 * scale, 1e-10 * scale}) {
                try {
                    Matrix<K> m = t;
                    for (std::size_t i = 0; i < n; ++i)
                        m(i, i) = m(i, i) - rc<K>::from_real(pair.value + delta);
                    Vector<K> z = solve(m, pair.vector);
                    z = detail::normalized(space, z);
                    const double mu = rc<K>::re(space.inner(z, t * z));
                    const double res = detail::pair_residual(space, t, z, mu);
                    if (res < pair.residual) {
                        pair.value = mu;
                        pair.vector = std::move(z);
                        pair.residual = res;
                    }
                    break;
                } catch (const NotInvertibleError&) {
                    continue; // shift was exactly singular, nudge and retry
                } catch (const ZeroVectorError&) {
                    continue;
                }
            }
        }
    };

    // every candidate is polished BEFORE the winner is chosen: runs that
    // stagnate early (small shifted-spectrum ratio) carry residuals near
    // sqrt(rayleigh_rel_tol), and those are often exactly the largest-|lambda|
    // candidates, so filtering on raw residuals would throw the answer away
    std::vector<EigenPair<K>> cands;
    for (const double shift : {scale, -scale}) {
        for (int start = 0; start < 2; ++start) {
            Vector<K> x = start == 0 ? detail::ones_start<K>(n)
                                     : detail::perturbed_start<K>(n);
            EigenPair<K> c;
            detail::PowerRun run =
                detail::power_iterate(space, t, shift, std::move(x), c.vector, opts);
            c.value = run.value;
            c.residual = run.residual;
            c.iterations = run.iterations;
            polish(c);
            cands.push_back(std::move(c));
        }
    }

    // among candidates meeting the residual contract take the largest
    // |lambda|; otherwise fall back to the smallest residual
    const double res_limit = opts.residual_tol * scale;
    const EigenPair<K>* best = nullptr;
    for (const auto& c : cands) {
        if (c.residual > res_limit) continue;
        if (!best || std::abs(c.value) > std::abs(best->value)) best = &c;
    }
    if (!best) {
        for (const auto& c : cands)
            if (!best || c.residual < best->residual) best = &c;
    }
    EigenPair<K> pair = *best;

    if (pair.residual > res_limit)
        throw ConvergenceError(
            "power iteration did not reach the residual tolerance (residual " +
                std::to_string(pair.residual) + ", limit " +
                std::to_string(res_limit) + ")",
            pair.residual);
    return pair;
}

/// Orthonormal eigenbasis with columns grouped by eigenvalue. `phi` holds the
/// basis columnwise in group order; `eigenvalues[g]` is the shared value of
/// group g (exactly real-valued entries for self-adjoint input).
template <rc_scalar K>
struct Eigendecomposition {
    std::vector<K> eigenvalues;
    std::vector<std::size_t> multiplicities;
    Matrix<K> phi;
    std::vector<std::size_t> group_start;     // size groups+1
    std::vector<std::size_t> group_of_column; // size n
    double ortho_residual = 0.0;          // max |Phi^H G Phi - I|
    double reconstruction_residual = 0.0; // ||Phi D Phi^-1 - T||_F

    std::size_t group_count() const { return eigenvalues.size(); }
    K column_eigenvalue(std::size_t j) const {
        return eigenvalues[group_of_column[j]];
    }
    std::vector<double> real_eigenvalues() const {
        std::vector<double> r;
        r.reserve(eigenvalues.size());
        for (const auto& mu : eigenvalues) r.push_back(rc<K>::re(mu));
        return r;
    }
};

namespace detail {

/// G-orthonormal basis of the orthogonal complement of `found`, grown from
/// standard basis vectors.
template <rc_scalar K>
std::vector<Vector<K>> complement_basis(const InnerProductSpace<K>& space,
                                        const std::vector<Vector<K>>& found) {
    const std::size_t n = space.dim();
    for (const double rel : {1e-8, 1e-12}) {
        std::vector<Vector<K>> comp;
        for (std::size_t i = 0; i < n && found.size() + comp.size() < n; ++i) {
            Vector<K> u(n, K(0));
            u[i] = K(1);
            const double in_norm = space.norm(u);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& e : found)
                    u = vec_sub(u, vec_scale(space.inner(e, u), e));
                for (const auto& e : comp)
                    u = vec_sub(u, vec_scale(space.inner(e, u), e));
            }
            const double res = space.norm(u);
            if (res > rel * in_norm)
                comp.push_back(vec_scale(rc<K>::from_real(1.0 / res), u));
        }
        if (found.size() + comp.size() == n) return comp;
    }
    throw InternalError("could not complete an orthonormal complement basis");
}

/// Shared assembly: sort eigenpairs, cluster nearly equal values, group
/// columns, and compute the residual diagnostics.
template <rc_scalar K>
Eigendecomposition<K> assemble_decomposition(
    const InnerProductSpace<K>& space, const Matrix<K>& t,
    std::vector<std::pair<K, Vector<K>>> pairs, double cluster_abs) {
    const std::size_t n = space.dim();
    // descending by real part quantized at the clustering granularity, then
    // by imaginary part; quantizing keeps the comparison a strict weak order
    const auto quant = [cluster_abs](double x) {
        return std::floor(x / cluster_abs + 0.5);
    };
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const auto& a, const auto& b) {
                         const double qa = quant(rc<K>::re(a.first));
                         const double qb = quant(rc<K>::re(b.first));
                         if (qa != qb) return qa > qb;
                         return rc<K>::im(a.first) > rc<K>::im(b.first);
                     });

    Eigendecomposition<K> dec;
    dec.phi = Matrix<K>(n, n, K(0));
    dec.group_of_column.resize(n);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < n; ++j) {
        bool placed = false;
        if (!groups.empty()) {
            const K rep = pairs[groups.back().front()].first;
            if (abs_value<K>(pairs[j].first - rep) <= cluster_abs) {
                groups.back().push_back(j);
                placed = true;
            }
        }
        if (!placed) groups.push_back({j});
    }

    dec.group_start.push_back(0);
    std::size_t col = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        K sum(0);
        for (const std::size_t j : groups[g]) sum = sum + pairs[j].first;
        const K mu = sum * rc<K>::from_real(1.0 / static_cast<double>(groups[g].size()));
        dec.eigenvalues.push_back(mu);
        dec.multiplicities.push_back(groups[g].size());
        for (const std::size_t j : groups[g]) {
            dec.phi.set_column(col, pairs[j].second);
            dec.group_of_column[col] = g;
            ++col;
        }
        dec.group_start.push_back(col);
    }

    // diagnostics: column gram vs identity, and reconstruction through the
    // G-inverse Phi^H G
    const Matrix<K>& gram = space.gram();
    const Matrix<K> phig = conj_transpose(dec.phi) * gram;
    dec.ortho_residual = max_abs(phig * dec.phi - Matrix<K>::identity(n));
    Matrix<K> d(n, n, K(0));
    for (std::size_t j = 0; j < n; ++j)
        d(j, j) = dec.column_eigenvalue(j);
    dec.reconstruction_residual =
        frobenius_norm(dec.phi * d * phig - t);
    return dec;
}

} // namespace detail

/// Full diagonalization of a self-adjoint operator by deflation: extract the
/// extreme eigenpair, restrict to the orthogonal complement of everything
/// found so far (the complement is invariant for self-adjoint T), repeat.
/// Restriction bases are re-orthonormalized every step.
template <rc_scalar K>
Eigendecomposition<K> diagonalize_self_adjoint(
    const InnerProductSpace<K>& space, const Matrix<K>& t,
    const SpectralOptions& opts = {}) {
    const std::size_t n = space.dim();
    if (t.rows() != n || t.cols() != n)
        throw DimensionError("operator shape does not match space");
    const double scale = frobenius_norm(t);
    if (!is_self_adjoint(space, t, opts.self_adjoint_tol * (1.0 + scale)))
        throw NotSelfAdjointError(
            "diagonalize_self_adjoint requires a self-adjoint operator");
    const double cluster_abs = opts.cluster_rel_tol * std::max(scale, 1e-300);

    std::vector<std::pair<K, Vector<K>>> pairs;
    if (scale == 0.0) {
        const auto basis = detail::complement_basis(space, {});
        for (const auto& e : basis) pairs.emplace_back(K(0), e);
        return detail::assemble_decomposition(space, t, std::move(pairs),
                                              cluster_abs);
    }

    std::vector<Vector<K>> found;
    while (found.size() < n) {
        const auto comp = detail::complement_basis(space, found);
        const std::size_t m = comp.size();
        Matrix<K> r(m, m, K(0));
        for (std::size_t a = 0; a < m; ++a) {
            const Vector<K> tc = t * comp[a];
            for (std::size_t b = 0; b < m; ++b)
                r(b, a) = space.inner(comp[b], tc);
        }
        r = (r + conj_transpose(r)).scaled(K(0.5));
        const auto sub = InnerProductSpace<K>::standard(m);
        const EigenPair<K> top = max_eigenpair(sub, r, opts);
        Vector<K> v(n, K(0));
        for (std::size_t a = 0; a < m; ++a)
            v = vec_add(v, vec_scale(top.vector[a], comp[a]));
        for (const auto& e : found)
            v = vec_sub(v, vec_scale(space.inner(e, v), e));
        v = detail::normalized(space, v);
        pairs.emplace_back(rc<K>::from_real(top.value), v);
        found.push_back(std::move(v));
    }

    // per-column Rayleigh refresh tightens values after the basis settled
    for (auto& [mu, v] : pairs)
        mu = rc<K>::from_real(rc<K>::re(space.inner(v, t * v)));
    return detail::assemble_decomposition(space, t, std::move(pairs),
                                          cluster_abs);
}

/// Diagonalization of a star-normal operator via its commuting self-adjoint
/// parts: T = A + iB with A = (T+T*)/2 and B = (T-T*)/(2i). A is
/// diagonalized first; B restricts to each eigenspace of A and is
/// diagonalized there; eigenvalues are reassembled as alpha + i beta.
///
/// The code is scalar-generic. Over the real instance i = 0, so B vanishes
/// identically and the representability check below rejects any input whose
/// skew part is nonzero: a real space simply cannot carry the complex
/// eigenvalues such an operator would need.
template <rc_scalar K>
Eigendecomposition<K> diagonalize_normal(const InnerProductSpace<K>& space,
                                         const Matrix<K>& t,
                                         const SpectralOptions& opts = {}) {
    const std::size_t n = space.dim();
    if (t.rows() != n || t.cols() != n)
        throw DimensionError("operator shape does not match space");
    const double scale = frobenius_norm(t);
    if (!is_star_normal(space, t, opts.normal_tol * (1.0 + scale * scale)))
        throw NotNormalError(
            "diagonalize_normal requires a star-normal operator");

    const Matrix<K> tadj = adjoint(space, space, t);
    const Matrix<K> a = (t + tadj).scaled(K(0.5));
    const Matrix<K> b = (t - tadj).scaled(make_scalar<K>(0.0, -0.5));
    if (max_abs(a + b.scaled(rc<K>::unit_im()) - t) > 1e-10 * (1.0 + scale))
        throw NotNormalError(
            "operator has a skew part this scalar field cannot represent "
            "(no imaginary unit); only self-adjoint operators are "
            "diagonalizable over it");
    const double cluster_abs = opts.cluster_rel_tol * std::max(scale, 1e-300);

    const Eigendecomposition<K> dec_a =
        diagonalize_self_adjoint(space, a, opts);

    std::vector<std::pair<K, Vector<K>>> pairs;
    for (std::size_t g = 0; g < dec_a.group_count(); ++g) {
        const std::size_t lo = dec_a.group_start[g];
        const std::size_t hi = dec_a.group_start[g + 1];
        const std::size_t k = hi - lo;
        std::vector<Vector<K>> cols;
        cols.reserve(k);
        for (std::size_t j = lo; j < hi; ++j)
            cols.push_back(dec_a.phi.column(j));
        Matrix<K> bg(k, k, K(0));
        for (std::size_t x = 0; x < k; ++x) {
            const Vector<K> bc = b * cols[x];
            for (std::size_t y = 0; y < k; ++y)
                bg(y, x) = space.inner(cols[y], bc);
        }
        bg = (bg + conj_transpose(bg)).scaled(K(0.5));
        const auto sub = InnerProductSpace<K>::standard(k);
        const Eigendecomposition<K> dec_b =
            diagonalize_self_adjoint(sub, bg, opts);
        for (std::size_t j = 0; j < k; ++j) {
            const Vector<K> w = dec_b.phi.column(j);
            Vector<K> v(n, K(0));
            for (std::size_t x = 0; x < k; ++x)
                v = vec_add(v, vec_scale(w[x], cols[x]));
            v = detail::normalized(space, v);
            const K rho = space.inner(v, t * v);
            pairs.emplace_back(rho, std::move(v));
        }
    }
    return detail::assemble_decomposition(space, t, std::move(pairs),
                                          cluster_abs);
}

/// Certifies normality operationally: the adjoint commutes with T and the
/// defining identity inner(T' x, y) = inner(x, T y) holds on random samples.
template <rc_scalar K>
bool is_normal_witness(const InnerProductSpace<K>& space, const Matrix<K>& t,
                       double tol = 1e-10, int samples = 16) {
    if (t.rows() != t.cols() || t.rows() != space.dim())
        throw DimensionError("operator shape does not match space");
    if (space.dim() == 0) return true;
    const double scale = frobenius_norm(t);
    const Matrix<K> tadj = adjoint(space, space, t);
    if (max_abs(tadj * t - t * tadj) > tol * (1.0 + scale * scale))
        return false;
    std::mt19937_64 rng(0x77697477ULL);
    for (int s = 0; s < samples; ++s) {
        const Vector<K> x = random_vector<K>(space.dim(), rng);
        const Vector<K> y = random_vector<K>(space.dim(), rng);
        const K lhs = space.inner(tadj * x, y);
        const K rhs = space.inner(x, t * y);
        const double allowed =
            tol * (1.0 + space.norm(x) * space.norm(y) * scale);
        if (abs_value<K>(lhs - rhs) > allowed) return false;
    }
    return true;
}

// --- finitely supported l^p elements ---

/// A finitely supported element of a direct sum: index -> component vector.
/// Per-index dimensions may differ. The exponent tags which l^p scale the
/// element is considered in.
template <rc_scalar K>
struct LpElement {
    double exponent = 2.0;
    std::map<int, Vector<K>> support;
};

/// Finitely supported candidates are members of every l^p, p >= 0: the
/// defining sum has finitely many terms.
template <rc_scalar K>
bool mem_lp(const std::map<int, Vector<K>>& f, double p) {
    if (p < 0.0 || std::isnan(p))
        throw Error("l^p exponent must be a nonnegative extended real");
    (void)f;
    return true;
}

/// Sum of per-index standard inner products over the union of supports
/// (conjugate-linear in the first argument). Components present in only one
/// operand pair with zero and contribute nothing.
template <rc_scalar K>
K lp_inner(const std::map<int, Vector<K>>& f,
           const std::map<int, Vector<K>>& g) {
    K acc(0);
    for (const auto& [idx, vf] : f) {
        const auto it = g.find(idx);
        if (it == g.end()) continue;
        if (it->second.size() != vf.size())
            throw DimensionError("component dimension mismatch at index " +
                                 std::to_string(idx));
        for (std::size_t i = 0; i < vf.size(); ++i)
            acc = acc + rc<K>::conj(vf[i]) * it->second[i];
    }
    return acc;
}

template <rc_scalar K>
double lp_norm(const std::map<int, Vector<K>>& f, double p) {
    if (p < 1.0 || std::isnan(p))
        throw Error("l^p norm needs exponent >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& [idx, v] : f) m = std::max(m, vec_norm2(v));
        return m;
    }
    double s = 0.0;
    for (const auto& [idx, v] : f) s += std::pow(vec_norm2(v), p);
    return std::pow(s, 1.0 / p);
}

// --- orthogonal families and their collation ---

/// A finite family of isometric embeddings into one ambient space, each given
/// by a matrix with G-orthonormal columns, with pairwise orthogonal ranges.
template <rc_scalar K>
struct OrthogonalFamily {
    InnerProductSpace<K> space;
    std::vector<Matrix<K>> embeddings;
};

/// The collation of an orthogonal family that spans: a unitary change of
/// coordinates onto the direct sum of the components. Block-row i of `u` is
/// V_i^H G, so applying `u` to v yields the stack of components of v.
template <rc_scalar K>
struct CollatedIsometry {
    Matrix<K> u;
    std::vector<std::size_t> offsets; // block i occupies rows [offsets[i], offsets[i+1])

    LpElement<K> apply(const Vector<K>& v) const {
        if (v.size() != u.cols())
            throw DimensionError("collated isometry input dimension mismatch");
        const Vector<K> w = u * v;
        LpElement<K> out;
        out.exponent = 2.0;
        for (std::size_t i = 0; i + 1 < offsets.size(); ++i)
            out.support[static_cast<int>(i)] =
                Vector<K>(w.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                          w.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
        return out;
    }
};

/// Validate the family (isometries, pairwise orthogonal ranges, spanning) and
/// stack the component projections into one unitary matrix.
template <rc_scalar K>
CollatedIsometry<K> collate_orthogonal_family(const OrthogonalFamily<K>& fam,
                                              double tol = 1e-10) {
    const std::size_t n = fam.space.dim();
    const Matrix<K>& gram = fam.space.gram();
    std::size_t total = 0;
    for (std::size_t i = 0; i < fam.embeddings.size(); ++i) {
        const Matrix<K>& vi = fam.embeddings[i];
        if (vi.rows() != n)
            throw DimensionError("family member " + std::to_string(i) +
                                 " does not live in the ambient space");
        const Matrix<K> gi = conj_transpose(vi) * gram * vi;
        if (max_abs(gi - Matrix<K>::identity(vi.cols())) > tol)
            throw OrthogonalityError("family member " + std::to_string(i) +
                                         " does not have orthonormal columns",
                                     i, i);
        total += vi.cols();
    }
    for (std::size_t i = 0; i < fam.embeddings.size(); ++i)
        for (std::size_t j = i + 1; j < fam.embeddings.size(); ++j) {
            const Matrix<K> cross =
                conj_transpose(fam.embeddings[i]) * gram * fam.embeddings[j];
            if (max_abs(cross) > tol)
                throw OrthogonalityError(
                    "family members " + std::to_string(i) + " and " +
                        std::to_string(j) + " have overlapping ranges",
                    i, j);
        }
    if (total != n)
        throw SpanError("family spans a subspace of dimension " +
                        std::to_string(total) + " inside dimension " +
                        std::to_string(n));
    if (n > 0) {
        Matrix<K> stacked(n, n, K(0));
        std::size_t col = 0;
        for (const auto& vi : fam.embeddings)
            for (std::size_t j = 0; j < vi.cols(); ++j)
                stacked.set_column(col++, vi.column(j));
        try {
            (void)inverse(stacked);
        } catch (const NotInvertibleError&) {
            throw SpanError("stacked family columns are singular");
        }
    }

    CollatedIsometry<K> iso;
    iso.u = Matrix<K>(n, n, K(0));
    iso.offsets.push_back(0);
    std::size_t row = 0;
    for (const auto& vi : fam.embeddings) {
        const Matrix<K> block = conj_transpose(vi) * gram;
        for (std::size_t a = 0; a < block.rows(); ++a, ++row)
            for (std::size_t c = 0; c < n; ++c) iso.u(row, c) = block(a, c);
        iso.offsets.push_back(row);
    }
    return iso;
}

/// The eigenspace family of a decomposition: one embedding per eigenvalue
/// group, columns taken straight from Phi.
template <rc_scalar K>
OrthogonalFamily<K> eigenspace_family(const InnerProductSpace<K>& space,
                                      const Eigendecomposition<K>& dec) {
    OrthogonalFamily<K> fam{space, {}};
    for (std::size_t g = 0; g < dec.group_count(); ++g) {
        const std::size_t lo = dec.group_start[g];
        const std::size_t hi = dec.group_start[g + 1];
        Matrix<K> vi(space.dim(), hi - lo, K(0));
        for (std::size_t j = lo; j < hi; ++j)
            vi.set_column(j - lo, dec.phi.column(j));
        fam.embeddings.push_back(std::move(vi));
    }
    return fam;
}

} // namespace semilin
