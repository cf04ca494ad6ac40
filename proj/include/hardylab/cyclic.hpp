#pragma once

// Cyclic subspaces K_f of C_{phi_a}: orthonormal Krylov bases of the
// forward orbit {C^n f}, projection distances, the convergence probe
// behind the minimal-invariant-subspace theorem, and the singular inner
// functions exp(b (z+1)/(z-1)) whose cyclic subspaces are never minimal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hardylab/comp_op.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

struct KrylovBasis {
    std::vector<CoefficientFunction> vectors;  // orthonormal
    double a = 0.5;
    CoefficientFunction source;
    std::size_t depth = 0;    // iterates consumed (n = 0..depth)
    std::size_t dropped = 0;  // rank-deficient or underflowed iterates
};

namespace detail {

// Subtract the projection onto the current basis; one full second pass
// keeps the result orthogonal when the new vector is nearly in the span.
inline void project_out(const std::vector<CoefficientFunction>& basis, CoefficientFunction& v) {
    for (int pass = 0; pass < 2; ++pass)
        for (const CoefficientFunction& b : basis) v = subtract(v, scale(b, h2_inner(v, b)));
}

}  // namespace detail

namespace detail {

// Rank threshold for a normalized iterate.  The matrix-vector product
// carries absolute rounding of order eps ||f||; when ||C^n f|| has
// collapsed (geometric eigen-decay, cancellation), normalization blows
// that residue up to eps ||f|| / ||C^n f||, and treating it as a new
// direction would fabricate basis vectors out of noise.
inline double rank_threshold(double rank_tol, std::size_t order, double source_norm,
                             double iterate_norm) {
    const double noise = 100.0 * std::sqrt(double(order + 1)) * 2.2e-16;
    return std::max(rank_tol, noise * source_norm / iterate_norm);
}

}  // namespace detail

// Modified Gram-Schmidt with reorthogonalization over the normalized
// iterates C^n f, n = 0..depth.  Iterates are normalized before
// orthogonalization because ||C^n f|| can decay geometrically, which would
// otherwise destroy the rank detection; vectors whose residual after
// projection falls below the noise-aware rank threshold are dropped.
inline KrylovBasis krylov_basis(const CoefficientFunction& f, double a, std::size_t depth,
                                std::size_t order, double rank_tol = 1e-12) {
    const double source_norm = h2_norm(f);
    if (source_norm == 0.0) throw std::domain_error("krylov_basis: f = 0");
    KrylovBasis B;
    B.a = a;
    B.source = f;
    B.depth = depth;
    CoefficientFunction padded = CoefficientFunction::zero(order);
    for (std::size_t k = 0; k <= std::min(order, f.order()); ++k) padded.coeffs[k] = f.coeff(k);

    for (std::size_t n = 0; n <= depth; ++n) {
        CoefficientFunction it = iterate_apply(a, padded, unsigned(n));
        const double nrm = h2_norm(it);
        if (nrm < 1e-150) {  // iterate numerically vanished
            ++B.dropped;
            continue;
        }
        it = scale(it, Complex(1.0 / nrm));
        detail::project_out(B.vectors, it);
        const double res = h2_norm(it);
        if (res < detail::rank_threshold(rank_tol, order, source_norm, nrm)) {
            ++B.dropped;
            continue;
        }
        B.vectors.push_back(scale(it, Complex(1.0 / res)));
    }
    return B;
}

// Relative projection distance ||g - sum <g,v_i> v_i|| / ||g||.
inline double distance(const CoefficientFunction& g, const KrylovBasis& B) {
    const double ng = h2_norm(g);
    if (ng == 0.0) return 0.0;
    CoefficientFunction r = g;
    detail::project_out(B.vectors, r);
    return h2_norm(r) / ng;
}

// ---------------------------------------------------------------------------
// boundary limits along the orbit 1 - a^n

struct OrbitLimit {
    bool has_limit = false;
    Complex value{0.0};
    std::vector<Complex> samples;
    bool low_confidence = false;  // truncated series used near the boundary
};

// Evaluates g at 1 - a^n and extrapolates.  Aitken acceleration on the
// last samples; NoLimit when the successive differences refuse to decay
// (unimodular oscillation and the like).  Sampling stops before 1 - a^n
// collapses onto 1.0 in double precision.
inline OrbitLimit limit_along_orbit(const std::function<Complex(double)>& g_at, double a,
                                    unsigned n_max = 60) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("limit_along_orbit: need 0 < a < 1");
    OrbitLimit out;
    const unsigned n_cap =
        std::min<unsigned>(n_max, unsigned(std::log(1e-14) / std::log(a)));
    double an = 1.0;
    for (unsigned n = 0; n <= n_cap; ++n) {
        out.samples.push_back(g_at(1.0 - an));
        an *= a;
    }
    const std::size_t n = out.samples.size();
    if (n < 4) return out;

    std::vector<Complex> d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) d[k] = out.samples[k + 1] - out.samples[k];
    const double scale0 = std::max(1.0, std::abs(out.samples.back()));

    // already flat to machine precision
    bool flat = true;
    for (std::size_t k = n > 6 ? n - 6 : 0; k + 1 < n; ++k)
        flat = flat && std::abs(d[k]) <= 1e-13 * scale0;
    if (flat) {
        out.has_limit = true;
        out.value = out.samples.back();
        return out;
    }

    // require decaying differences over the tail
    std::vector<double> ratio;
    for (std::size_t k = n / 2; k + 2 < n; ++k)
        if (std::abs(d[k]) > 1e-300) ratio.push_back(std::abs(d[k + 1]) / std::abs(d[k]));
    if (ratio.empty()) {
        out.has_limit = true;
        out.value = out.samples.back();
        return out;
    }
    std::sort(ratio.begin(), ratio.end());
    const double med = ratio[ratio.size() / 2];
    if (med >= 0.999) return out;  // NoLimit

    // Aitken extrapolation on the final triple, cross-checked with the
    // previous triple
    auto aitken = [&](std::size_t k) {
        const Complex den = d[k + 1] - d[k];
        if (std::abs(den) < 1e-300) return out.samples[k + 2];
        return out.samples[k + 2] - d[k + 1] * d[k + 1] / den;
    };
    const Complex l1 = aitken(n - 3);
    const Complex l2 = aitken(n - 4);
    out.has_limit = std::abs(l1 - l2) <= 1e-6 * std::max(1.0, std::abs(l1));
    out.value = l1;
    return out;
}

inline OrbitLimit limit_along_orbit(const CoefficientFunction& g, double a, unsigned n_max = 60) {
    OrbitLimit out = limit_along_orbit(
        [&g](double x) { return evaluate(g, Complex(x), true); }, a, n_max);
    out.low_confidence = true;  // truncated series sampled toward z = 1
    return out;
}

// ---------------------------------------------------------------------------
// the convergence probe behind the minimal-subspace theorem

struct ConvergenceProbe {
    Complex L{0.0};                 // limit of g along the orbit
    std::vector<double> residuals;  // r_n = || C^n(f_s g)/a^{ns} - L f_s || on the window
    double fitted_ratio = 0.0;      // median of r_{n+1}/r_n over the last third
};

// For f = f_s g with lim g(1 - a^n) = L != 0 and Re(s) >= 0, the scaled
// iterates C^n f / a^{ns} converge to L f_s; the residual sequence and its
// geometric rate are the checkable content.
inline ConvergenceProbe convergence_probe(const CoefficientFunction& g,
                                          const std::function<Complex(double)>& g_at, Complex s,
                                          double a, unsigned n_max, std::size_t order) {
    if (s.real() < 0.0)
        throw std::domain_error("convergence_probe: need Re(s) >= 0 (f_s must be a multiplier)");
    const OrbitLimit lim = limit_along_orbit(g_at, a);
    if (!lim.has_limit || std::abs(lim.value) < 1e-12)
        throw std::domain_error("convergence_probe: hypothesis violated, g has no nonzero limit");

    ConvergenceProbe probe;
    probe.L = lim.value;
    const CoefficientFunction fs = binomial_series(s, order);
    const CoefficientFunction f = multiply(fs, g, order);
    const CoefficientFunction target = scale(fs, probe.L);
    const std::size_t w = order / 2;
    const Complex log_a(std::log(a));
    for (unsigned n = 0; n <= n_max; ++n) {
        const CoefficientFunction it = iterate_apply(a, f, n);
        const Complex rescale = std::exp(-double(n) * s * log_a);  // a^{-ns}
        probe.residuals.push_back(window_distance(scale(it, rescale), target, w));
    }

    std::vector<double> ratios;
    for (std::size_t k = probe.residuals.size() * 2 / 3; k + 1 < probe.residuals.size(); ++k)
        if (probe.residuals[k] > 1e-300)
            ratios.push_back(probe.residuals[k + 1] / probe.residuals[k]);
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        probe.fitted_ratio = ratios[ratios.size() / 2];
    }
    return probe;
}

// ---------------------------------------------------------------------------
// singular inner functions

struct SingularInner {
    double b = 1.0;
    CoefficientFunction coeffs;  // exp(b (z+1)/(z-1)) truncated
};

// b (z+1)/(z-1) = -b (1 + 2z + 2z^2 + ...), fed through the series
// exponential.  The value at 0 is exp(-b).
inline SingularInner singular_inner(double b, std::size_t order) {
    if (b < 0.0) throw std::domain_error("singular_inner: need b >= 0");
    std::vector<Complex> g(order + 1, Complex(-2.0 * b));
    g[0] = Complex(-b);
    SingularInner out;
    out.b = b;
    out.coeffs = exp_series(CoefficientFunction(std::move(g)), order);
    return out;
}

// Window residual of the invariance relation
// C_{phi_a} I_b = e^{(b/a)(a-1)} I_{b/a}.
//
// Singular inner coefficients only decay like n^{-3/4}, and the
// composition kernel centered at k = j/a sits exactly on the truncation
// edge when j = order/2 and a = 1/2.  The series and the matrix are
// therefore built at twice the requested order, which moves the edge many
// kernel widths past the comparison window.
inline double singular_invariance_check(double a, double b, std::size_t order) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("singular_invariance_check: need 0 < a < 1");
    const std::size_t big = 2 * order;
    const SingularInner ib = singular_inner(b, big);
    const SingularInner iba = singular_inner(b / a, big);
    const CoefficientFunction lhs = apply(affine_matrix(a, big), ib.coeffs);
    const CoefficientFunction rhs = scale(iba.coeffs, std::exp((b / a) * (a - 1.0)));
    return window_distance(lhs, rhs, order / 2);
}

// ---------------------------------------------------------------------------
// non-minimality evidence for the singular shift-invariant subspaces

struct NonminimalityGap {
    std::vector<double> gap_by_depth;  // distance(f, Krylov of g at depth m), m = 0..depth
    std::size_t basis_rank = 0;
};

// g = C^{n0} I_b generates a proper invariant subspace of K_{I_b}; the
// measured projection distance of I_b to the growing Krylov span of g is
// the finite evidence.  Reported per depth so stabilization above a
// positive floor is visible rather than asserted.
inline NonminimalityGap nonminimality_gap(double b, double a, unsigned n0, std::size_t depth,
                                          std::size_t order) {
    const CoefficientFunction f = singular_inner(b, order).coeffs;
    const CoefficientFunction g = iterate_apply(a, f, n0);

    NonminimalityGap out;
    const double nf = h2_norm(f);
    const double ng = h2_norm(g);
    CoefficientFunction r = f;  // running orthogonal residual of f
    std::vector<CoefficientFunction> basis;
    for (std::size_t m = 0; m <= depth; ++m) {
        CoefficientFunction it = iterate_apply(a, g, unsigned(m));
        const double nrm = h2_norm(it);
        if (nrm >= 1e-150) {
            it = scale(it, Complex(1.0 / nrm));
            detail::project_out(basis, it);
            const double res = h2_norm(it);
            if (res >= detail::rank_threshold(1e-12, order, ng, nrm)) {
                const CoefficientFunction v = scale(it, Complex(1.0 / res));
                basis.push_back(v);
                r = subtract(r, scale(v, h2_inner(r, v)));
            }
        }
        out.gap_by_depth.push_back(h2_norm(r) / nf);
    }
    out.basis_rank = basis.size();
    return out;
}

}  // namespace hardylab
