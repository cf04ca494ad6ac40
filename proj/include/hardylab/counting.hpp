#pragma once

// Nevanlinna counting function of a linear fractional disk symbol and the
// change-of-variables identity
//   ||C_phi f||^2 = 2 integral |f'(w)|^2 N_phi(w) dA(w) + |f(phi(0))|^2
// with dA the normalized area measure (area of the disk = 1).

#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hardylab/comp_op.hpp"
#include "hardylab/moebius.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

struct CountingEvaluation {
    Complex w{0.0};
    double value = 0.0;   // N_phi(w); 0 off the image of the disk
    bool in_image = false;
    bool singular = false;  // w = phi(0), logarithmic pole
};

// Linear fractional symbols are injective, so the counting sum has a
// single term: N_phi(w) = log(1/|phi^{-1}(w)|) when the preimage is in
// the disk, 0 otherwise.
inline CountingEvaluation nevanlinna(const MoebiusMap& m, Complex w) {
    if (m.domain != Domain::Disk) throw std::domain_error("nevanlinna: disk symbols only");
    CountingEvaluation out;
    out.w = w;
    const Complex at_zero = m.apply(Complex(0.0));
    if (std::abs(w - at_zero) < 1e-14) {
        out.singular = true;
        out.in_image = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const Complex z = m.inverse().apply(w);
    if (std::abs(z) < 1.0) {
        out.in_image = true;
        out.value = std::log(1.0 / std::abs(z));
    }
    return out;
}

// Image of the unit disk under the symbol (a disk again, pole outside).
struct ImageDisk {
    Complex center{0.0};
    double radius = 1.0;
};

inline ImageDisk image_disk(const MoebiusMap& m) {
    const double D = std::norm(m.delta) - std::norm(m.gamma);
    if (D <= 0.0) throw std::domain_error("image_disk: pole of the symbol in the closed disk");
    ImageDisk img;
    img.center = (std::conj(m.delta) * m.beta - std::conj(m.gamma) * m.alpha) / D;
    img.radius = std::abs(m.determinant()) / D;
    return img;
}

struct PolarGridSpec {
    std::size_t radial = 512;   // geometric annuli, refined toward the center
    std::size_t angular = 512;  // uniform angular midpoints
};

struct CovCheck {
    double lhs = 0.0;  // ||C_phi f||^2 of the truncated image
    double rhs = 0.0;  // 2 * area integral + |f(phi(0))|^2
    double defect = 0.0;
    double refinement_delta = 0.0;  // |rhs - rhs at doubled grid| / |rhs|
    bool converged = false;
};

namespace detail {

// Area integral of |f'(w)|^2 N_phi(w) over the image disk, in polar
// coordinates about the image center.  Radial annuli shrink geometrically
// toward the center, where the integrand carries the integrable
// log singularity for affine symbols (phi(0) = center there); two-point
// Gauss nodes per annulus, angular midpoints, pairwise tree summation.
inline double counting_area_integral(const MoebiusMap& m, const CoefficientFunction& fprime,
                                     const PolarGridSpec& grid) {
    const ImageDisk img = image_disk(m);
    const MoebiusMap inv = m.inverse();
    const std::size_t nr = grid.radial, nth = grid.angular;
    const double shrink = std::pow(1e-13, 1.0 / double(nr));

    std::vector<double> annulus_sums(nr, 0.0);
    parallel_for(nr, [&](std::size_t k) {
        const double r_hi = img.radius * std::pow(shrink, double(k));
        const double r_lo = r_hi * shrink;
        const double mid = 0.5 * (r_hi + r_lo), half = 0.5 * (r_hi - r_lo);
        const double nodes[2] = {mid - half / std::sqrt(3.0), mid + half / std::sqrt(3.0)};
        double acc = 0.0;
        for (double r : nodes) {
            double ring = 0.0;
            for (std::size_t q = 0; q < nth; ++q) {
                const double th = 2.0 * M_PI * (double(q) + 0.5) / double(nth);
                const Complex w = img.center + std::polar(r, th);
                const Complex z = inv.apply(w);
                const double az = std::abs(z);
                if (az >= 1.0) continue;
                const Complex df = evaluate(fprime, w, true);
                ring += std::norm(df) * std::log(1.0 / az);
            }
            acc += half * r * ring;  // Gauss weight (r_hi-r_lo)/2 per node
        }
        annulus_sums[k] = acc * (2.0 * M_PI / double(nth)) / M_PI;
    });
    return pairwise_sum(std::move(annulus_sums));
}

}  // namespace detail

inline CovCheck change_of_variables_check(const MoebiusMap& m, const CoefficientFunction& f,
                                          PolarGridSpec grid = {}, std::size_t order = 0) {
    if (order == 0) order = std::max<std::size_t>(f.order(), m.is_affine() ? f.order() : 256);
    CoefficientFunction fpad = CoefficientFunction::zero(order);
    for (std::size_t k = 0; k <= std::min(order, f.order()); ++k) fpad.coeffs[k] = f.coeff(k);

    CovCheck out;
    out.lhs = h2_norm_sq(apply(build_matrix(m, order), fpad));

    const CoefficientFunction fprime = derivative(f);
    const double boundary = std::norm(evaluate(f, m.apply(Complex(0.0))));
    out.rhs = 2.0 * detail::counting_area_integral(m, fprime, grid) + boundary;

    PolarGridSpec fine{grid.radial * 2, grid.angular * 2};
    const double rhs2 = 2.0 * detail::counting_area_integral(m, fprime, fine) + boundary;
    out.refinement_delta = std::abs(out.rhs - rhs2) / std::max(std::abs(rhs2), 1e-300);
    out.converged = out.refinement_delta < 1e-3;
    out.defect = std::abs(out.lhs - out.rhs) / std::max(out.lhs, 1e-300);
    return out;
}

}  // namespace hardylab
