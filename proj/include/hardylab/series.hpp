#pragma once

// Truncated power series on the unit disk.  A function f(z) = sum c_k z^k
// is stored as its coefficient vector c_0..c_N; the H^2(D) norm is the
// l^2 norm of the coefficients, so norms and inner products are exact
// finite sums.  Everything here is a pure function over immutable values.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hardylab {

using Complex = std::complex<double>;

struct CoefficientFunction {
    std::vector<Complex> coeffs;  // c_0 .. c_N, never empty

    CoefficientFunction() : coeffs(1, Complex(0.0)) {}
    explicit CoefficientFunction(std::vector<Complex> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.assign(1, Complex(0.0));
    }

    std::size_t order() const { return coeffs.size() - 1; }

    // c_k, with zero beyond the truncation order
    Complex coeff(std::size_t k) const {
        return k < coeffs.size() ? coeffs[k] : Complex(0.0);
    }

    static CoefficientFunction zero(std::size_t order) {
        return CoefficientFunction(std::vector<Complex>(order + 1, Complex(0.0)));
    }

    static CoefficientFunction constant(Complex c, std::size_t order) {
        auto f = zero(order);
        f.coeffs[0] = c;
        return f;
    }

    static CoefficientFunction monomial(std::size_t k, std::size_t order) {
        auto f = zero(order < k ? k : order);
        f.coeffs[k] = Complex(1.0);
        return f;
    }
};

// Exponent s of the family f_s(z) = (1-z)^s.  Membership in H^2 requires
// Re(s) > -1/2; the flag is kept separate so out-of-space exponents can
// still be manipulated symbolically.
struct ComplexExponent {
    Complex s;
    bool in_h2() const { return s.real() > -0.5; }
};

inline Complex h2_inner(const CoefficientFunction& f, const CoefficientFunction& g) {
    const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
    Complex acc(0.0);
    for (std::size_t k = 0; k < n; ++k) acc += f.coeffs[k] * std::conj(g.coeffs[k]);
    return acc;
}

inline double h2_norm_sq(const CoefficientFunction& f) {
    double acc = 0.0;
    for (const Complex& c : f.coeffs) acc += std::norm(c);
    return acc;
}

inline double h2_norm(const CoefficientFunction& f) { return std::sqrt(h2_norm_sq(f)); }

// l^2 norm of c_0..c_hi only.  Identity checks compare on the window
// 0..N/2 because composition and multiplication contaminate the high
// coefficients first.
inline double window_norm(const CoefficientFunction& f, std::size_t hi) {
    double acc = 0.0;
    const std::size_t n = std::min(hi + 1, f.coeffs.size());
    for (std::size_t k = 0; k < n; ++k) acc += std::norm(f.coeffs[k]);
    return std::sqrt(acc);
}

inline double window_distance(const CoefficientFunction& f, const CoefficientFunction& g,
                              std::size_t hi) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= hi; ++k) acc += std::norm(f.coeff(k) - g.coeff(k));
    return std::sqrt(acc);
}

// Horner evaluation of the truncated polynomial.  Outside the closed disk
// the truncation has no approximation meaning; callers must say they want
// the extrapolation.
inline Complex evaluate(const CoefficientFunction& f, Complex z, bool allow_extrapolation = false) {
    if (!allow_extrapolation && std::abs(z) > 1.0 + 1e-12)
        throw std::domain_error("evaluate: |z| > 1 without extrapolation flag");
    Complex acc(0.0);
    for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
    return acc;
}

inline CoefficientFunction add(const CoefficientFunction& f, const CoefficientFunction& g) {
    std::vector<Complex> out(std::max(f.coeffs.size(), g.coeffs.size()), Complex(0.0));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.coeff(k) + g.coeff(k);
    return CoefficientFunction(std::move(out));
}

inline CoefficientFunction subtract(const CoefficientFunction& f, const CoefficientFunction& g) {
    std::vector<Complex> out(std::max(f.coeffs.size(), g.coeffs.size()), Complex(0.0));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.coeff(k) - g.coeff(k);
    return CoefficientFunction(std::move(out));
}

inline CoefficientFunction scale(const CoefficientFunction& f, Complex a) {
    CoefficientFunction out = f;
    for (Complex& c : out.coeffs) c *= a;
    return out;
}

// Cauchy product truncated at the requested order:
// (fg)_k = sum_{i+j=k} f_i g_j for k <= order.
inline CoefficientFunction multiply(const CoefficientFunction& f, const CoefficientFunction& g,
                                    std::size_t order) {
    std::vector<Complex> out(order + 1, Complex(0.0));
    const std::size_t nf = std::min(f.coeffs.size(), order + 1);
    for (std::size_t i = 0; i < nf; ++i) {
        const Complex fi = f.coeffs[i];
        if (fi == Complex(0.0)) continue;
        const std::size_t ng = std::min(g.coeffs.size(), order + 1 - i);
        for (std::size_t j = 0; j < ng; ++j) out[i + j] += fi * g.coeffs[j];
    }
    return CoefficientFunction(std::move(out));
}

// Coefficients of (1-z)^s (principal branch, so the constant term is 1).
// Stable product form: c_0 = 1, c_{n+1} = c_n (n - s)/(n + 1); for
// non-negative integer s the recurrence terminates exactly.
inline CoefficientFunction binomial_series(Complex s, std::size_t order) {
    std::vector<Complex> c(order + 1);
    c[0] = Complex(1.0);
    for (std::size_t n = 0; n < order; ++n)
        c[n + 1] = c[n] * (Complex(double(n)) - s) / double(n + 1);
    return CoefficientFunction(std::move(c));
}

inline CoefficientFunction binomial_series(const ComplexExponent& s, std::size_t order) {
    return binomial_series(s.s, order);
}

// Coefficients of exp(f) by the standard convolution recurrence
// n b_n = sum_{k=1..n} k f_k b_{n-k}, b_0 = exp(f_0).
inline CoefficientFunction exp_series(const CoefficientFunction& f, std::size_t order) {
    std::vector<Complex> b(order + 1, Complex(0.0));
    b[0] = std::exp(f.coeff(0));
    for (std::size_t n = 1; n <= order; ++n) {
        Complex acc(0.0);
        for (std::size_t k = 1; k <= n; ++k) acc += double(k) * f.coeff(k) * b[n - k];
        b[n] = acc / double(n);
    }
    return CoefficientFunction(std::move(b));
}

// Coefficient map of d/dz: (Df)_k = (k+1) c_{k+1}.
inline CoefficientFunction derivative(const CoefficientFunction& f) {
    if (f.coeffs.size() == 1) return CoefficientFunction::zero(0);
    std::vector<Complex> out(f.coeffs.size() - 1);
    for (std::size_t k = 0; k + 1 < f.coeffs.size(); ++k) out[k] = double(k + 1) * f.coeffs[k + 1];
    return CoefficientFunction(std::move(out));
}

// Certified upper bound on the l^2 tail sum_{k>order} |c_k((1-z)^s)|^2.
// Sums the recurrence to a far cutoff N' (default 16*order) and closes with
// an integral comparison: for k >= N',
//   |k - s| <= (k - sigma) + tau^2 / (2 (k - sigma)),
// so |c_k| decays at least like (k+1)^{-(1+sigma-eps)} past N' and the
// remainder is bounded by |c_{N'}|^2 (N'+1)/(1 + 2 sigma - 2 eps).
inline double tail_bound(Complex s, std::size_t order, std::size_t cutoff_factor = 16) {
    const double sigma = s.real();
    const double tau = s.imag();
    if (sigma <= -0.5) throw std::domain_error("tail_bound: Re(s) <= -1/2, tail diverges");

    std::size_t big = std::max<std::size_t>(cutoff_factor * std::max<std::size_t>(order, 1),
                                            order + 64);
    // Ensure the comparison exponent stays above -1/2.
    while (1.0 + 2.0 * (sigma - tau * tau / (2.0 * (double(big) - sigma))) <= 1e-6)
        big *= 2;

    Complex c(1.0);
    double partial = 0.0;
    for (std::size_t n = 0; n < big; ++n) {
        c = c * (Complex(double(n)) - s) / double(n + 1);
        if (n + 1 > order) partial += std::norm(c);
    }
    const double eps = tau * tau / (2.0 * (double(big) - sigma));
    const double remainder = std::norm(c) * double(big + 1) / (1.0 + 2.0 * (sigma - eps));
    return partial + remainder;
}

inline double tail_bound(const ComplexExponent& s, std::size_t order,
                         std::size_t cutoff_factor = 16) {
    return tail_bound(s.s, order, cutoff_factor);
}

}  // namespace hardylab
