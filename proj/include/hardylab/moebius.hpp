#pragma once

// Linear fractional symbols z -> (alpha z + beta)/(gamma z + delta) on the
// disk or the right half-plane, their fixed points, the Cayley conjugation
// between the two domains, and the universality classification of the
// induced composition operators.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "hardylab/series.hpp"

namespace hardylab {

enum class Domain { Disk, HalfPlane };

struct MoebiusMap {
    Complex alpha{1.0}, beta{0.0}, gamma{0.0}, delta{1.0};
    Domain domain = Domain::Disk;

    Complex determinant() const { return alpha * delta - beta * gamma; }

    Complex apply(Complex z) const { return (alpha * z + beta) / (gamma * z + delta); }

    Complex derivative(Complex z) const {
        const Complex d = gamma * z + delta;
        return determinant() / (d * d);
    }

    bool is_identity(double tol = 1e-12) const {
        return std::abs(gamma) <= tol && std::abs(beta) <= tol &&
               std::abs(alpha - delta) <= tol;
    }

    bool is_affine(double tol = 1e-14) const { return std::abs(gamma) <= tol; }

    MoebiusMap inverse() const {
        return MoebiusMap{delta, -beta, -gamma, alpha, domain};
    }

    // Projective representatives are not unique; comparisons go through
    // this normal form (delta = 1 when possible, else gamma = 1).
    MoebiusMap normalized() const {
        MoebiusMap m = *this;
        const Complex pivot = std::abs(delta) > 1e-300 ? delta : gamma;
        m.alpha /= pivot;
        m.beta /= pivot;
        m.gamma /= pivot;
        m.delta /= pivot;
        return m;
    }
};

inline MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
    // matrix product of the coefficient matrices, f after g
    return MoebiusMap{f.alpha * g.alpha + f.beta * g.gamma,
                      f.alpha * g.beta + f.beta * g.delta,
                      f.gamma * g.alpha + f.delta * g.gamma,
                      f.gamma * g.beta + f.delta * g.delta, g.domain};
}

inline MoebiusMap identity_map(Domain d = Domain::Disk) { return MoebiusMap{1, 0, 0, 1, d}; }

// phi_a(z) = a z + (1-a), the canonical affine self-map of the disk
inline MoebiusMap affine_disk_map(double a) {
    return MoebiusMap{Complex(a), Complex(1.0 - a), Complex(0.0), Complex(1.0), Domain::Disk};
}

// psi(w) = a w + b on the half-plane, stored with gamma = 0, delta = 1
inline MoebiusMap affine_halfplane_map(double a, Complex b) {
    return MoebiusMap{Complex(a), b, Complex(0.0), Complex(1.0), Domain::HalfPlane};
}

// h(z) = (z + a)/(a z + 1), the canonical hyperbolic automorphism fixing +-1
inline MoebiusMap canonical_automorphism(double a) {
    return MoebiusMap{Complex(1.0), Complex(a), Complex(a), Complex(1.0), Domain::Disk};
}

struct RiemannPoint {
    Complex value{0.0};
    bool at_infinity = false;

    static RiemannPoint infinity() { return RiemannPoint{Complex(0.0), true}; }
    static RiemannPoint finite(Complex z) { return RiemannPoint{z, false}; }
};

struct FixedPoints {
    std::array<RiemannPoint, 2> points;
    bool degenerate_identity = false;  // alpha = delta, beta = gamma = 0
};

// Roots of gamma z^2 + (delta - alpha) z - beta = 0, with infinity reported
// when gamma = 0 (twice when additionally alpha = delta).
inline FixedPoints fixed_points(const MoebiusMap& m) {
    FixedPoints out;
    if (std::abs(m.gamma) < 1e-300) {
        if (std::abs(m.alpha - m.delta) < 1e-14 * (std::abs(m.alpha) + std::abs(m.delta))) {
            out.points = {RiemannPoint::infinity(), RiemannPoint::infinity()};
            out.degenerate_identity = m.is_identity();
            return out;
        }
        out.points = {RiemannPoint::finite(m.beta / (m.delta - m.alpha)),
                      RiemannPoint::infinity()};
        return out;
    }
    const Complex a = m.gamma, b = m.delta - m.alpha, c = -m.beta;
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // pick the sign that avoids cancellation in -b -+ disc
    const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                              : -0.5 * (b - disc);
    Complex z1, z2;
    if (std::abs(q) < 1e-300) {
        z1 = z2 = -b / (2.0 * a);  // double root
    } else {
        z1 = q / a;
        z2 = c / q;
    }
    out.points = {RiemannPoint::finite(z1), RiemannPoint::finite(z2)};
    return out;
}

enum class SymbolKind {
    InteriorFixed,
    ParabolicBoundary,
    HyperbolicAutomorphism,
    HyperbolicNonAutomorphism,
    HalfPlaneAutomorphism,
    HalfPlaneParabolicType,
    TypeI,
    TypeII,
};

inline const char* to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::InteriorFixed: return "InteriorFixed";
        case SymbolKind::ParabolicBoundary: return "ParabolicBoundary";
        case SymbolKind::HyperbolicAutomorphism: return "HyperbolicAutomorphism";
        case SymbolKind::HyperbolicNonAutomorphism: return "HyperbolicNonAutomorphism";
        case SymbolKind::HalfPlaneAutomorphism: return "HalfPlaneAutomorphism";
        case SymbolKind::HalfPlaneParabolicType: return "HalfPlaneParabolicType";
        case SymbolKind::TypeI: return "TypeI";
        case SymbolKind::TypeII: return "TypeII";
    }
    return "?";
}

// Punctured disk or annulus of translates lambda for which C_phi - lambda
// is universal: { inner < |lambda| < outer }.
struct LambdaRegion {
    double inner = 0.0;
    double outer = 0.0;
};

struct SymbolClass {
    SymbolKind kind;
    FixedPoints fixed;
    Complex derivative_at_attracting{0.0};
    bool universal_translate = false;
    std::optional<LambdaRegion> lambda_region;
};

namespace detail {

// Self-map validation on a 360-point boundary sample plus an interior
// margin probe; robust against near-boundary images.
inline void require_disk_self_map(const MoebiusMap& m, double tol = 1e-9) {
    if (std::abs(m.determinant()) < 1e-300)
        throw std::domain_error("moebius: degenerate map (alpha delta = beta gamma)");
    for (int k = 0; k < 360; ++k) {
        const double th = 2.0 * M_PI * k / 360.0;
        const Complex z = std::polar(1.0, th);
        if (std::abs(m.gamma * z + m.delta) < 1e-300 || std::abs(m.apply(z)) > 1.0 + tol)
            throw std::domain_error("moebius: map does not send the disk into itself");
    }
    if (std::abs(m.apply(Complex(0.0))) > 1.0 + tol)
        throw std::domain_error("moebius: map does not send the disk into itself");
}

inline bool maps_circle_to_circle(const MoebiusMap& m, double tol = 1e-9) {
    for (int k = 0; k < 360; ++k) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * k / 360.0);
        if (std::abs(std::abs(m.apply(z)) - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace detail

// Classification of a disk symbol per the fixed-point configuration.
// Points within 1e-9 of the unit circle count as on it (tie-break toward
// the boundary keeps the verdict stable under representation noise).
inline SymbolClass classify_disk(const MoebiusMap& m, double boundary_tol = 1e-9) {
    if (m.domain != Domain::Disk) throw std::domain_error("classify_disk: not a disk symbol");
    detail::require_disk_self_map(m, boundary_tol);

    SymbolClass out;
    out.fixed = fixed_points(m);

    const auto radius_band = [&](const RiemannPoint& p) {
        // -1 inside, 0 on the circle, +1 outside (infinity counts outside)
        if (p.at_infinity) return +1;
        const double r = std::abs(p.value);
        if (std::abs(r - 1.0) <= boundary_tol) return 0;
        return r < 1.0 ? -1 : +1;
    };

    const auto& p0 = out.fixed.points[0];
    const auto& p1 = out.fixed.points[1];
    const int b0 = radius_band(p0);
    const int b1 = radius_band(p1);

    if (out.fixed.degenerate_identity) {
        out.kind = SymbolKind::ParabolicBoundary;  // identity, flagged degenerate
        out.derivative_at_attracting = Complex(1.0);
        return out;
    }

    if (b0 < 0 || b1 < 0) {
        // Denjoy-Wolff point in the open disk; Koenigs spectrum, never universal
        out.kind = SymbolKind::InteriorFixed;
        const RiemannPoint inner = b0 < 0 ? p0 : p1;
        out.derivative_at_attracting = m.derivative(inner.value);
        return out;
    }

    const bool same_point = !p0.at_infinity && !p1.at_infinity &&
                            std::abs(p0.value - p1.value) <= boundary_tol;
    if (same_point || (p0.at_infinity && p1.at_infinity)) {
        out.kind = SymbolKind::ParabolicBoundary;
        out.derivative_at_attracting = Complex(1.0);
        return out;
    }

    if (b0 == 0 && b1 == 0) {
        // Two distinct circle fixed points force an automorphism.
        if (!detail::maps_circle_to_circle(m, 1e-7))
            throw std::domain_error("classify_disk: two circle fixed points but not an automorphism");
        out.kind = SymbolKind::HyperbolicAutomorphism;
        const Complex d0 = m.derivative(p0.value);
        const Complex d1 = m.derivative(p1.value);
        out.derivative_at_attracting = std::abs(d0) < std::abs(d1) ? d0 : d1;
        out.universal_translate = true;
        return out;
    }

    // Exactly one fixed point on the circle, the other strictly outside the
    // closed disk (possibly infinity): hyperbolic non-automorphism.  The
    // operator is similar to C_{phi_a} with a the derivative at the circle
    // fixed point, and the universal translates fill 0 < |lambda| < a^{-1/2}.
    const RiemannPoint boundary = (b0 == 0) ? p0 : p1;
    const Complex d = m.derivative(boundary.value);
    out.kind = SymbolKind::HyperbolicNonAutomorphism;
    out.derivative_at_attracting = d;
    out.universal_translate = true;
    const double a = std::abs(d);
    out.lambda_region = LambdaRegion{0.0, 1.0 / std::sqrt(a)};
    return out;
}

// Classification of an affine half-plane symbol psi(w) = a w + b with
// a > 0 and Re(b) >= 0 (the only bounded case).  Type II (a > 1 with
// Re(b) > 0) is the sole kind with universal translates.
inline SymbolClass classify_halfplane(const MoebiusMap& m) {
    if (m.domain != Domain::HalfPlane)
        throw std::domain_error("classify_halfplane: not a half-plane symbol");
    if (!m.is_affine() || std::abs(m.delta - Complex(1.0)) > 1e-12)
        throw std::domain_error("classify_halfplane: symbol must be stored as a w + b");
    if (std::abs(m.alpha.imag()) > 1e-12 || m.alpha.real() <= 0.0)
        throw std::domain_error("classify_halfplane: require a > 0");
    const double a = m.alpha.real();
    const Complex b = m.beta;
    if (b.real() < 0.0) throw std::domain_error("classify_halfplane: require Re(b) >= 0");

    SymbolClass out;
    out.fixed = fixed_points(m);
    const bool automorphism = b.real() == 0.0 || b.real() < 1e-15 * std::max(1.0, std::abs(b));

    if (automorphism) {
        out.kind = SymbolKind::HalfPlaneAutomorphism;
        out.derivative_at_attracting = a >= 1.0 ? Complex(1.0 / a) : Complex(a);
        return out;
    }
    if (a == 1.0) {
        out.kind = SymbolKind::HalfPlaneParabolicType;
        out.derivative_at_attracting = Complex(1.0);
        return out;
    }
    if (a < 1.0) {
        out.kind = SymbolKind::TypeI;
        out.derivative_at_attracting = Complex(a);  // interior Denjoy-Wolff point b/(1-a)
        return out;
    }
    out.kind = SymbolKind::TypeII;
    out.derivative_at_attracting = Complex(1.0 / a);  // angular derivative at infinity
    out.universal_translate = true;
    out.lambda_region = LambdaRegion{0.0, 1.0 / std::sqrt(a)};
    return out;
}

// lim_{w->infinity} w / psi(w) = 1/a for psi(w) = a w + b.
inline double angular_derivative_at_infinity(const MoebiusMap& m) {
    if (m.domain != Domain::HalfPlane || !m.is_affine())
        throw std::domain_error("angular_derivative_at_infinity: need an affine half-plane symbol");
    const MoebiusMap n = m.normalized();
    return 1.0 / n.alpha.real();
}

// phi_a^[n] = a^n z + (1 - a^n); n = 0 gives the identity.
inline MoebiusMap iterate_affine(double a, unsigned n) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("iterate_affine: need 0 < a < 1");
    const double an = std::pow(a, double(n));
    return affine_disk_map(an);
}

// gamma(z) = (1+z)/(1-z) maps the disk onto the right half-plane.
inline MoebiusMap cayley_transform() {
    return MoebiusMap{Complex(1.0), Complex(1.0), Complex(-1.0), Complex(1.0), Domain::Disk};
}

// Conjugate an affine half-plane symbol to the disk: Phi = gamma^{-1} o psi o gamma,
// returned in normal form.  For psi_a(w) = a^{-1} w + (a^{-1} - 1) this is phi_a.
inline MoebiusMap cayley_conjugate(const MoebiusMap& psi) {
    if (psi.domain != Domain::HalfPlane || !psi.is_affine())
        throw std::domain_error("cayley_conjugate: need an affine half-plane symbol");
    const MoebiusMap g = cayley_transform();
    const MoebiusMap ginv{Complex(1.0), Complex(-1.0), Complex(1.0), Complex(1.0),
                          Domain::HalfPlane};
    MoebiusMap phi = compose(ginv, compose(psi, g));
    phi.domain = Domain::Disk;
    phi = phi.normalized();
    // snap exact zeros produced by the algebra
    if (std::abs(phi.gamma) < 1e-14) phi.gamma = Complex(0.0);
    return phi;
}

}  // namespace hardylab
