#pragma once

// Dense matrix representation of (weighted) composition operators on the
// monomial basis of H^2(D).  Column k holds the Taylor coefficients of
// weight * symbol^k truncated at the matrix order, so applying the matrix
// to a coefficient vector is the truncated composition.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardylab/moebius.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

struct OperatorMatrix {
    std::vector<Complex> entries;  // row-major, (order+1) x (order+1)
    std::size_t order = 0;
    MoebiusMap symbol;
    std::optional<CoefficientFunction> weight;
    // column k supported on rows 0..k (true for affine symbols); enables
    // the O(N^2/2) apply path
    bool triangular = false;

    Complex& at(std::size_t row, std::size_t col) { return entries[row * (order + 1) + col]; }
    Complex at(std::size_t row, std::size_t col) const {
        return entries[row * (order + 1) + col];
    }
};

// Taylor coefficients of (alpha z + beta)/(gamma z + delta) about 0; the
// pole -delta/gamma must lie outside the closed disk.
inline CoefficientFunction symbol_taylor(const MoebiusMap& m, std::size_t order) {
    if (std::abs(m.delta) <= std::abs(m.gamma))
        throw std::domain_error("symbol_taylor: pole of the symbol in the closed disk");
    std::vector<Complex> t(order + 1, Complex(0.0));
    const Complex q = -m.gamma / m.delta;  // geometric ratio, |q| < 1
    Complex qk(1.0);
    t[0] = m.beta / m.delta;
    for (std::size_t k = 1; k <= order; ++k) {
        // coefficient of z^k in (alpha z + beta) (1/delta) sum q^j z^j
        t[k] = (m.beta * qk * q + m.alpha * qk) / m.delta;
        qk *= q;
    }
    return CoefficientFunction(std::move(t));
}

// C_m on the monomial basis: column 0 = (1,0,...), column k = column_{k-1}
// Cauchy-multiplied by the symbol's Taylor series.
inline OperatorMatrix build_matrix(const MoebiusMap& m, std::size_t order) {
    if (m.domain != Domain::Disk) throw std::domain_error("build_matrix: disk symbols only");
    const CoefficientFunction t = symbol_taylor(m, order);
    OperatorMatrix M;
    M.order = order;
    M.symbol = m;
    M.entries.assign((order + 1) * (order + 1), Complex(0.0));
    CoefficientFunction col = CoefficientFunction::monomial(0, order);
    M.at(0, 0) = Complex(1.0);
    for (std::size_t k = 1; k <= order; ++k) {
        col = multiply(col, t, order);
        for (std::size_t j = 0; j <= order; ++j) M.at(j, k) = col.coeff(j);
    }
    M.triangular = m.is_affine();
    return M;
}

// Exact binomial entries M[j][k] = C(k,j) a^j (1-a)^{k-j} for phi_a,
// built column-by-column with the Pascal-style recurrence
// M[j][k] = (1-a) M[j][k-1] + a M[j-1][k-1].
inline OperatorMatrix affine_matrix(double a, std::size_t order) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("affine_matrix: need 0 < a < 1");
    OperatorMatrix M;
    M.order = order;
    M.symbol = affine_disk_map(a);
    M.triangular = true;
    M.entries.assign((order + 1) * (order + 1), Complex(0.0));
    M.at(0, 0) = Complex(1.0);
    const double b = 1.0 - a;
    for (std::size_t k = 1; k <= order; ++k) {
        M.at(0, k) = b * M.at(0, k - 1);
        for (std::size_t j = 1; j <= k; ++j)
            M.at(j, k) = b * M.at(j, k - 1) + a * M.at(j - 1, k - 1);
    }
    return M;
}

// W_m with weight w: column k = coefficients of w * m^k.
inline OperatorMatrix weighted_matrix(const MoebiusMap& m, const CoefficientFunction& w,
                                      std::size_t order) {
    if (m.domain != Domain::Disk) throw std::domain_error("weighted_matrix: disk symbols only");
    const CoefficientFunction t = symbol_taylor(m, order);
    OperatorMatrix M;
    M.order = order;
    M.symbol = m;
    M.weight = w;
    M.entries.assign((order + 1) * (order + 1), Complex(0.0));
    CoefficientFunction col(std::vector<Complex>(w.coeffs));
    for (std::size_t j = 0; j <= order; ++j) M.at(j, 0) = col.coeff(j);
    for (std::size_t k = 1; k <= order; ++k) {
        col = multiply(col, t, order);
        for (std::size_t j = 0; j <= order; ++j) M.at(j, k) = col.coeff(j);
    }
    return M;
}

// Matrix-vector product; coefficients past order/2 of the result may carry
// truncation contamination, which is why identity checks use the window rule.
inline CoefficientFunction apply(const OperatorMatrix& M, const CoefficientFunction& f) {
    if (f.order() > M.order) throw std::domain_error("apply: input order exceeds matrix order");
    std::vector<Complex> y(M.order + 1, Complex(0.0));
    const std::size_t kmax = std::min(M.order, f.order());
    for (std::size_t k = 0; k <= kmax; ++k) {
        const Complex c = f.coeffs[k];
        if (c == Complex(0.0)) continue;
        const std::size_t jmax = M.triangular ? k : M.order;
        for (std::size_t j = 0; j <= jmax; ++j) y[j] += M.at(j, k) * c;
    }
    return CoefficientFunction(std::move(y));
}

// C^n_{phi_a} f via the semigroup identity C^n_{phi_a} = C_{phi_{a^n}}:
// one application of the matrix for a^n, never n successive products.
inline CoefficientFunction iterate_apply(double a, const CoefficientFunction& f, unsigned n) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("iterate_apply: need 0 < a < 1");
    if (n == 0) {
        CoefficientFunction out = f;
        return out;
    }
    const double an = std::pow(a, double(n));
    return apply(affine_matrix(an, f.order()), f);
}

// Largest singular value of the truncation, by power iteration on A*A.
// Deterministic start vector; tolerance on the Rayleigh quotient.
inline double operator_norm_estimate(const OperatorMatrix& M, std::size_t max_iter = 300,
                                     double tol = 1e-12) {
    const std::size_t n = M.order + 1;
    std::vector<Complex> v(n), av(n), atav(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = Complex(1.0 + double(k % 7) / 7.0, 0.0);

    auto matvec = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0);
            const std::size_t k0 = M.triangular ? j : 0;
            for (std::size_t k = k0; k < n; ++k) acc += M.at(j, k) * x[k];
            y[j] = acc;
        }
    };
    auto matvec_adj = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex acc(0.0);
            const std::size_t jmax = M.triangular ? k : n - 1;
            for (std::size_t j = 0; j <= jmax; ++j) acc += std::conj(M.at(j, k)) * x[j];
            y[k] = acc;
        }
    };

    double prev = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        double nv = 0.0;
        for (const Complex& c : v) nv += std::norm(c);
        nv = std::sqrt(nv);
        for (Complex& c : v) c /= nv;
        matvec(v, av);
        matvec_adj(av, atav);
        double ray = 0.0;
        for (std::size_t k = 0; k < n; ++k) ray += std::real(std::conj(v[k]) * atav[k]);
        v.swap(atav);
        const double sigma = std::sqrt(std::max(ray, 0.0));
        if (std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
        prev = sigma;
    }
    return prev;
}

}  // namespace hardylab
