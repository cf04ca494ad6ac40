#pragma once

// Eigenvectors of C_{phi_a} and their dynamics: the family f_s = (1-z)^s
// with C_{phi_a} f_s = a^s f_s, residual certificates for the truncated
// matrices, point-spectrum branch inversion, the eigenvector locus A_f
// over a in (0,1), orbit limits at the boundary fixed point, zero orbits,
// and analytic continuation across the half-plane Re(z) < 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardylab/comp_op.hpp"
#include "hardylab/detail/gamma.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

// ---------------------------------------------------------------------------
// eigenvector families

struct EigenPair {
    double a = 0.5;
    Complex s{0.0};
    Complex lambda{1.0};  // a^s with the real logarithm of a
    CoefficientFunction f;
};

inline EigenPair make_eigen_pair(double a, Complex s, std::size_t order) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("make_eigen_pair: need 0 < a < 1");
    if (s.real() <= -0.5) throw std::domain_error("make_eigen_pair: f_s not in H^2");
    EigenPair p;
    p.a = a;
    p.s = s;
    p.lambda = std::exp(s * std::log(a));
    p.f = binomial_series(s, order);
    return p;
}

// ||f_s||^2 = Gamma(1 + 2 Re s) / |Gamma(1 + s)|^2, by Gauss's summation
// of the coefficient series.
inline double binomial_norm_sq(Complex s) {
    if (s.real() <= -0.5) throw std::domain_error("binomial_norm_sq: f_s not in H^2");
    const Complex g1s = detail::complex_gamma(Complex(1.0) + s);
    return std::real(detail::complex_gamma(Complex(1.0) + 2.0 * s.real())) / std::norm(g1s);
}

// Finite combination sum coef_i (1-z)^{s_i}, evaluable in closed form on
// all of Re(z) < 1 (principal branch of the logarithm, so term(0) = coef).
struct ClosedFormEigenvector {
    struct Term {
        Complex coef;
        Complex s;
    };
    std::vector<Term> terms;

    // Evaluation parameterized by 1 - z.  Orbit points pile up at z = 1
    // where 1 - z computed by subtraction loses every significant digit;
    // callers that know 1 - z directly (orbits do) must pass it here.
    Complex eval_from_one_minus(Complex one_minus_z) const {
        Complex acc(0.0);
        for (const Term& t : terms) acc += t.coef * std::exp(t.s * std::log(one_minus_z));
        return acc;
    }

    Complex operator()(Complex z) const { return eval_from_one_minus(Complex(1.0) - z); }

    CoefficientFunction coefficients(std::size_t order) const {
        CoefficientFunction acc = CoefficientFunction::zero(order);
        for (const Term& t : terms) acc = add(acc, scale(binomial_series(t.s, order), t.coef));
        return acc;
    }

    static ClosedFormEigenvector single(Complex s, Complex coef = Complex(1.0)) {
        return ClosedFormEigenvector{{Term{coef, s}}};
    }

    // h = f_s + f_{s + 2 pi i / log a}, an eigenvector for C_{phi_a} with
    // eigenvalue a^s whose eigenvector locus is exactly {a^n}.  The equal
    // weights put the zeros on the real interval (the two unimodular parts
    // can cancel), which is what the zero-orbit checks need.
    static ClosedFormEigenvector resonant_pair(Complex s, double a) {
        const Complex s2 = s + Complex(0.0, 2.0 * M_PI / std::log(a));
        return ClosedFormEigenvector{{Term{Complex(1.0), s}, Term{Complex(1.0), s2}}};
    }

    // Same span, components scaled to unit H^2 norm.  ||f_{s + i tau}||
    // grows like e^{pi |tau| / 2}, so the equal-weight pair is numerically
    // a single-direction vector and collinearity scans cannot resolve it;
    // the balanced pair keeps the locus {a^n} and makes tight tolerances
    // meaningful.
    static ClosedFormEigenvector resonant_pair_balanced(Complex s, double a) {
        const Complex s2 = s + Complex(0.0, 2.0 * M_PI / std::log(a));
        return ClosedFormEigenvector{
            {Term{Complex(1.0 / std::sqrt(binomial_norm_sq(s))), s},
             Term{Complex(1.0 / std::sqrt(binomial_norm_sq(s2))), s2}}};
    }
};

// ---------------------------------------------------------------------------
// residual certificate for the truncated eigen-relation

struct EigenResidual {
    double window_residual = 0.0;  // || M_a P_N f_s - a^s P_N f_s || on 0..N/2
    double tail_budget = 0.0;      // certified bound on the truncation contamination
    double total() const { return window_residual + tail_budget; }
    bool passes(double base_tol = 1e-8) const {
        return window_residual <= base_tol + tail_budget;
    }
};

// The truncated matrix applied to the truncated eigenvector differs from
// a^s P_N f_s exactly by the window part of C_{phi_a}(tail of f_s), whose
// norm is at most ||C_{phi_a}|| sqrt(tail) <= sqrt((2-a)/a) sqrt(tail).
inline double eigen_tail_budget(double a, Complex s, std::size_t order) {
    return std::sqrt((2.0 - a) / a) * std::sqrt(tail_bound(s, order));
}

inline EigenResidual eigen_residual(double a, Complex s, std::size_t order,
                                    const OperatorMatrix* prebuilt = nullptr) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("eigen_residual: need 0 < a < 1");
    if (s.real() <= -0.5) throw std::domain_error("eigen_residual: Re(s) <= -1/2");
    const CoefficientFunction fs = binomial_series(s, order);
    const Complex lambda = std::exp(s * std::log(a));
    const CoefficientFunction image =
        prebuilt ? apply(*prebuilt, fs) : apply(affine_matrix(a, order), fs);
    EigenResidual r;
    r.window_residual = window_distance(image, scale(fs, lambda), order / 2);
    r.tail_budget = eigen_tail_budget(a, s, order);
    return r;
}

// Invert lambda = a^s on the principal branch.  Valid exactly on the
// punctured disk 0 < |lambda| < a^{-1/2}, where the resulting exponent has
// Re(s) > -1/2 and f_s is an honest H^2 eigenvector.
inline Complex branch_exponent(double a, Complex lambda) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("branch_exponent: need 0 < a < 1");
    const double mod = std::abs(lambda);
    if (!(mod > 0.0) || mod >= 1.0 / std::sqrt(a))
        throw std::domain_error("branch_exponent: lambda outside 0 < |lambda| < a^{-1/2}");
    return std::log(lambda) / std::log(a);
}

// ---------------------------------------------------------------------------
// the eigenvector locus A_f

struct AfScanResult {
    std::vector<double> grid;
    std::vector<double> hits;
    std::vector<double> defects;          // defect per grid point, same order as grid
    bool all_hits = false;                // A_f = (0,1): f is an f_s multiple
    std::optional<double> fitted_c;       // geometric base when hits ~ {c^n}
    std::vector<double> verified_powers;  // powers c^n re-tested individually
    bool powers_consistent = false;
};

namespace detail {

// Collinearity defect 1 - |<g,f>|^2 / (||g||^2 ||f||^2), clamped to [0,1].
inline double collinearity_defect(double gg, double ff, Complex gf) {
    const double denom = gg * ff;
    if (denom <= 0.0) return 1.0;
    double d = 1.0 - std::norm(gf) / denom;
    return std::min(std::max(d, 0.0), 1.0);
}

inline void fit_geometric_hits(AfScanResult& res, double grid_spacing,
                               const std::function<double(double)>& defect_at, double tol) {
    if (res.hits.size() < 2) return;
    const double c = *std::max_element(res.hits.begin(), res.hits.end());
    res.fitted_c = c;
    // every hit should sit on the lattice {c^n} up to the grid resolution
    bool ok = true;
    for (double h : res.hits) {
        const double n = std::log(h) / std::log(c);
        const double nearest = std::round(n);
        if (std::abs(std::pow(c, nearest) - h) > grid_spacing) ok = false;
    }
    // refinement pass: probe the powers of c directly, below the coarse grid
    const double floor_value =
        res.grid.empty() ? 1e-3 : *std::min_element(res.grid.begin(), res.grid.end());
    double p = c;
    while (p >= std::max(floor_value * 0.5, 1e-8)) {
        res.verified_powers.push_back(p);
        if (defect_at(p) > tol) ok = false;
        p *= c;
    }
    res.powers_consistent = ok;
}

}  // namespace detail

// Scan of A_f for a coefficient-space f: g = C_{phi_a} f via the truncated
// matrix, collinearity tested on the window 0..N/2.  Truncation puts a
// floor on resolvable defects; certifying tolerances below that floor
// needs the closed-form overload.
inline AfScanResult afscan(const CoefficientFunction& f, const std::vector<double>& grid,
                           double tol = 1e-9) {
    if (h2_norm(f) == 0.0) throw std::domain_error("afscan: f = 0");
    AfScanResult res;
    res.grid = grid;
    const std::size_t w = f.order() / 2;
    double ff = 0.0;
    for (std::size_t k = 0; k <= w; ++k) ff += std::norm(f.coeff(k));

    auto defect_at = [&](double a) {
        const CoefficientFunction g = apply(affine_matrix(a, f.order()), f);
        double gg = 0.0;
        Complex gf(0.0);
        for (std::size_t k = 0; k <= w; ++k) {
            gg += std::norm(g.coeff(k));
            gf += g.coeff(k) * std::conj(f.coeff(k));
        }
        return detail::collinearity_defect(gg, ff, gf);
    };

    for (double a : grid) {
        const double d = defect_at(a);
        res.defects.push_back(d);
        if (d <= tol) res.hits.push_back(a);
    }
    res.all_hits = res.hits.size() == res.grid.size() && !res.grid.empty();
    const double spacing = grid.size() > 1 ? std::abs(grid[1] - grid[0]) : 1e-3;
    if (!res.all_hits) detail::fit_geometric_hits(res, spacing, defect_at, tol);
    return res;
}

// Closed-form scan for finite combinations of f_s terms.  Inner products
// come from Gauss's summation of the coefficient series,
//   <f_s, f_t> = Gamma(1 + s + conj(t)) / (Gamma(1+s) Gamma(1+conj(t))),
// so the collinearity defect is computed exactly in the span coordinates
// and tolerances as tight as 1e-9 are meaningful.
inline AfScanResult afscan(const ClosedFormEigenvector& f, const std::vector<double>& grid,
                           double tol = 1e-9) {
    const std::size_t m = f.terms.size();
    if (m == 0) throw std::domain_error("afscan: f = 0");
    std::vector<Complex> G(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const Complex si = f.terms[i].s, sj = std::conj(f.terms[j].s);
            G[i * m + j] = detail::complex_gamma(Complex(1.0) + si + sj) /
                           (detail::complex_gamma(Complex(1.0) + si) *
                            detail::complex_gamma(Complex(1.0) + sj));
        }
    std::vector<Complex> alpha(m);
    for (std::size_t i = 0; i < m; ++i) alpha[i] = f.terms[i].coef;

    auto pairing = [&](const std::vector<Complex>& u, const std::vector<Complex>& v) {
        Complex acc(0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) acc += u[i] * std::conj(v[j]) * G[i * m + j];
        return acc;
    };

    const double ff = std::real(pairing(alpha, alpha));
    auto defect_at = [&](double a) {
        std::vector<Complex> beta(m);
        for (std::size_t i = 0; i < m; ++i)
            beta[i] = alpha[i] * std::exp(f.terms[i].s * std::log(a));
        const double gg = std::real(pairing(beta, beta));
        return detail::collinearity_defect(gg, ff, pairing(beta, alpha));
    };

    AfScanResult res;
    res.grid = grid;
    for (double a : grid) {
        const double d = defect_at(a);
        res.defects.push_back(d);
        if (d <= tol) res.hits.push_back(a);
    }
    res.all_hits = res.hits.size() == res.grid.size() && !res.grid.empty();
    const double spacing = grid.size() > 1 ? std::abs(grid[1] - grid[0]) : 1e-3;
    if (!res.all_hits) detail::fit_geometric_hits(res, spacing, defect_at, tol);
    return res;
}

// ---------------------------------------------------------------------------
// orbit limits at the boundary fixed point

enum class OrbitVerdict { LimitZero, LimitFinite, Diverges, Oscillates };

inline const char* to_string(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::LimitZero: return "LimitZero";
        case OrbitVerdict::LimitFinite: return "LimitFinite";
        case OrbitVerdict::Diverges: return "Diverges";
        case OrbitVerdict::Oscillates: return "Oscillates";
    }
    return "?";
}

struct OrbitThresholds {
    double zero = 1e-6;
    double diverge = 1e6;
    double cauchy = 1e-8;
};

struct OrbitTrace {
    Complex w{0.0};
    std::vector<Complex> values;  // f(phi_{a^n}(w)), n = 0..n_max
    OrbitVerdict verdict = OrbitVerdict::Oscillates;
    std::optional<Complex> limit;
    bool low_confidence = false;  // truncated series sampled near z = 1
};

namespace detail {

inline OrbitVerdict classify_orbit(const std::vector<Complex>& v, const OrbitThresholds& th,
                                   std::optional<Complex>& limit) {
    const std::size_t n = v.size();
    if (n < 4) return OrbitVerdict::Oscillates;
    // an orbit that never leaves the zero threshold counts as vanishing
    // (exact zero orbits only reach rounding noise)
    bool all_small = true;
    for (const Complex& x : v) all_small = all_small && std::abs(x) <= th.zero;
    if (all_small) {
        limit = Complex(0.0);
        return OrbitVerdict::LimitZero;
    }
    const std::size_t tail = std::max<std::size_t>(3, n / 4);
    // geometric fit over the tail: median modulus ratio
    std::vector<double> ratios;
    for (std::size_t k = n - tail; k + 1 < n; ++k) {
        const double num = std::abs(v[k + 1]), den = std::abs(v[k]);
        if (den > 1e-300) ratios.push_back(num / den);
    }
    double med = 1.0;
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        med = ratios[ratios.size() / 2];
    }
    if (std::abs(v.back()) <= th.zero && (ratios.empty() || med < 1.0)) {
        limit = Complex(0.0);
        return OrbitVerdict::LimitZero;
    }
    if (std::abs(v.back()) >= th.diverge && med > 1.0) return OrbitVerdict::Diverges;
    bool cauchy = true;
    for (std::size_t k = n - tail; k + 1 < n; ++k)
        cauchy = cauchy && std::abs(v[k + 1] - v[k]) <= th.cauchy;
    if (cauchy) {
        limit = v.back();
        return OrbitVerdict::LimitFinite;
    }
    return OrbitVerdict::Oscillates;
}

}  // namespace detail

inline OrbitTrace orbit_trace(const std::function<Complex(Complex)>& f, Complex w, double a,
                              unsigned n_max, const OrbitThresholds& th = {}) {
    if (std::abs(w) >= 1.0) throw std::domain_error("orbit_trace: need |w| < 1");
    OrbitTrace tr;
    tr.w = w;
    tr.values.reserve(n_max + 1);
    double an = 1.0;
    for (unsigned n = 0; n <= n_max; ++n) {
        const Complex z = an * w + (1.0 - an);
        tr.values.push_back(f(z));
        an *= a;
    }
    tr.verdict = detail::classify_orbit(tr.values, th, tr.limit);
    return tr;
}

// Closed forms track 1 - z = a^n (1 - w) directly, so the samples stay
// accurate however close the orbit gets to the boundary.
inline OrbitTrace orbit_trace(const ClosedFormEigenvector& f, Complex w, double a, unsigned n_max,
                              const OrbitThresholds& th = {}) {
    if (std::abs(w) >= 1.0) throw std::domain_error("orbit_trace: need |w| < 1");
    OrbitTrace tr;
    tr.w = w;
    tr.values.reserve(n_max + 1);
    const Complex omw = Complex(1.0) - w;
    double an = 1.0;
    for (unsigned n = 0; n <= n_max; ++n) {
        tr.values.push_back(f.eval_from_one_minus(an * omw));
        an *= a;
    }
    tr.verdict = detail::classify_orbit(tr.values, th, tr.limit);
    return tr;
}

// Truncated-series orbit: the series diverges pointwise at 1 for slowly
// decaying coefficients, so samples past |z| > 0.99 are flagged.
inline OrbitTrace orbit_trace(const CoefficientFunction& f, Complex w, double a, unsigned n_max,
                              const OrbitThresholds& th = {}) {
    OrbitTrace tr = orbit_trace(std::function<Complex(Complex)>([&f](Complex z) {
                                    return evaluate(f, z, true);
                                }),
                                w, a, n_max, th);
    double an = 1.0;
    for (unsigned n = 0; n <= n_max; ++n) {
        if (std::abs(an * w + (1.0 - an)) > 0.99) tr.low_confidence = true;
        an *= a;
    }
    return tr;
}

// ---------------------------------------------------------------------------
// zero orbits of the resonant eigenvectors (h = f_s + f_{s + 2 pi i/log a})

struct ZeroOrbitReport {
    std::vector<double> zeros;     // located on (-1, 1), ascending
    std::vector<double> expected;  // 1 - a^{m+1/2} for integer m, same range
    double max_location_error = 0.0;
    double max_forward_residual = 0.0;  // |h(phi_a(z))| over located zeros
    bool one_orbit = false;
};

// The resonant eigenvector factors as h = f_s (1 + (1-z)^{i tau}) with
// tau = 2 pi / log a, so its real-interval zeros sit where the phase
// u = tau log(1-x) is an odd multiple of pi.  Everything runs in the
// variable y = 1 - x (the phase is exact there; x itself loses all digits
// near 1): the phase is monotone in y, each odd multiple gets an exact
// bracket y = e^{(u -+ 0.4 pi)/tau}, and bisection resolves the crossing
// to full relative precision.
inline ZeroOrbitReport zero_orbit_check(Complex s, double a, double edge = 1e-6) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("zero_orbit_check: need 0 < a < 1");
    const double tau = 2.0 * M_PI / std::log(a);
    const ClosedFormEigenvector h = ClosedFormEigenvector::resonant_pair(s, a);

    ZeroOrbitReport rep;
    const double ylo = edge, yhi = 2.0 - edge;  // y = 1 - x over x in (-1+edge, 1-edge)
    const double u_at_ylo = tau * std::log(ylo), u_at_yhi = tau * std::log(yhi);
    const double umin = std::min(u_at_ylo, u_at_yhi), umax = std::max(u_at_ylo, u_at_yhi);
    const double margin = 0.4 * M_PI;

    auto phase_sin = [&](double y) { return std::sin(tau * std::log(y)); };

    std::vector<double> zero_y;
    for (long k = (long)std::ceil((umin + margin - M_PI) / (2.0 * M_PI));
         M_PI + 2.0 * M_PI * double(k) <= umax - margin; ++k) {
        const double u = M_PI + 2.0 * M_PI * double(k);
        if (u < umin + margin) continue;
        double lo = std::exp((u - margin) / tau), hi = std::exp((u + margin) / tau);
        if (lo > hi) std::swap(lo, hi);
        if (phase_sin(lo) * phase_sin(hi) > 0.0) continue;  // cannot happen for exact brackets
        for (int it = 0; it < 200 && hi - lo > 1e-15 * lo; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (phase_sin(lo) * phase_sin(mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        zero_y.push_back(0.5 * (lo + hi));
    }

    for (double y : zero_y) rep.zeros.push_back(1.0 - y);
    std::sort(rep.zeros.begin(), rep.zeros.end());

    // the single orbit 1 - a^{m+1/2} has phase (2m+1) pi; enumerate under
    // the same bracket criterion so the two sets are range-consistent
    for (long m = (long)std::floor((umin + margin) / (2.0 * M_PI) - 0.5) - 1;; ++m) {
        const double u = (2.0 * double(m) + 1.0) * M_PI;
        if (u < umin + margin) continue;
        if (u > umax - margin) break;
        rep.expected.push_back(1.0 - std::pow(a, double(m) + 0.5));
    }
    std::sort(rep.expected.begin(), rep.expected.end());

    rep.one_orbit = rep.zeros.size() == rep.expected.size();
    if (rep.one_orbit)
        for (std::size_t i = 0; i < rep.zeros.size(); ++i)
            rep.max_location_error =
                std::max(rep.max_location_error, std::abs(rep.zeros[i] - rep.expected[i]));
    // forward closure |h(phi_a(zero))| = |h| at 1 - z = a y, in the exact variable
    for (double y : zero_y)
        rep.max_forward_residual =
            std::max(rep.max_forward_residual, std::abs(h.eval_from_one_minus(Complex(a * y))));
    return rep;
}

// ---------------------------------------------------------------------------
// analytic continuation of eigenvectors across Re(z) < 1

// Least n with z inside the disk D_n of center 1 - a^{-n} and radius a^{-n};
// the eigen-relation then continues f by f(z) = f(phi_{a^n}(z)) / lambda^n
// with phi_{a^n}(z) back in the unit disk.
inline Complex continue_analytically(const std::function<Complex(Complex)>& f, Complex lambda,
                                     double a, Complex z, unsigned* disk_index = nullptr) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("continue_analytically: need 0 < a < 1");
    if (std::abs(lambda) == 0.0)
        throw std::domain_error("continue_analytically: lambda = 0 has no eigenvector");
    if (z.real() >= 1.0)
        throw std::domain_error("continue_analytically: Re(z) >= 1 is outside the continuation domain");
    double radius = 1.0;  // a^{-n}
    for (unsigned n = 0; n < 8192; ++n) {
        if (std::abs(z - Complex(1.0 - radius)) < radius) {
            if (disk_index) *disk_index = n;
            const double an = 1.0 / radius;
            const Complex inside = an * z + (1.0 - an);
            return f(inside) / std::pow(lambda, double(n));
        }
        radius /= a;
        if (!std::isfinite(radius))
            break;
    }
    throw std::runtime_error("continue_analytically: no covering disk found");
}

inline Complex continue_analytically(const EigenPair& p, Complex z, unsigned* disk_index = nullptr) {
    return continue_analytically(
        std::function<Complex(Complex)>([&p](Complex w) { return evaluate(p.f, w); }), p.lambda,
        p.a, z, disk_index);
}

inline Complex continue_analytically(const ClosedFormEigenvector& f, Complex lambda, double a,
                                     Complex z, unsigned* disk_index = nullptr) {
    return continue_analytically(
        std::function<Complex(Complex)>([&f](Complex w) { return f(w); }), lambda, a, z,
        disk_index);
}

}  // namespace hardylab
