#pragma once

// Sturm-sequence machinery for real symmetric tridiagonal matrices:
// eigenvalue counts below a shift and extremal eigenvalues by bisection.
// Used on Golub-Kahan forms, so singular values of bidiagonal blocks are
// counted without squaring the matrix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hardylab::detail {

// Number of eigenvalues strictly below x (negative pivots of the LDL^T
// factorization of T - x I, with the usual tiny-pivot guard).
inline int tridiag_count_below(const std::vector<double>& diag, const std::vector<double>& off,
                               double x) {
    const double tiny = 1e-300;
    int cnt = 0;
    double t = diag[0] - x;
    for (std::size_t i = 0;;) {
        if (t < 0.0) ++cnt;
        if (++i >= diag.size()) break;
        double den = t;
        if (std::abs(den) < tiny) den = (den < 0.0) ? -tiny : tiny;
        t = diag[i] - x - off[i - 1] * off[i - 1] / den;
    }
    return cnt;
}

inline double tridiag_smallest_eigenvalue(const std::vector<double>& diag,
                                          const std::vector<double>& off, double tol = 1e-14) {
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                         (i + 1 < diag.size() ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double span = std::max(hi - lo, 1.0);
    for (int it = 0; it < 200 && hi - lo > tol * span; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tridiag_count_below(diag, off, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Count of singular values of a bidiagonal matrix strictly below tau,
// via the Golub-Kahan tridiagonal (zero diagonal, interleaved entries),
// whose eigenvalues are exactly +-sigma.
inline int bidiagonal_count_singular_below(const std::vector<double>& diag,
                                           const std::vector<double>& sub, double tau) {
    const std::size_t n = diag.size();
    std::vector<double> gk_diag(2 * n, 0.0);
    std::vector<double> gk_off(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        gk_off[2 * i] = diag[i];
        if (i + 1 < n) gk_off[2 * i + 1] = sub[i];
    }
    const int below_plus = tridiag_count_below(gk_diag, gk_off, tau);
    const int below_minus = tridiag_count_below(gk_diag, gk_off, -tau);
    return (below_plus - below_minus) / 2;
}

}  // namespace hardylab::detail
