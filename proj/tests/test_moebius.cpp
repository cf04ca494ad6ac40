#include <doctest.h>

#include <cmath>
#include <complex>

#include "hardylab/moebius.hpp"

using namespace hardylab;
using doctest::Approx;

TEST_CASE("fixed points of the canonical symbols") {
    // phi_a with a = 0.5 fixes 1 and infinity
    const auto fp = fixed_points(affine_disk_map(0.5));
    CHECK(std::abs(fp.points[0].value - Complex(1.0)) < 1e-14);
    CHECK_FALSE(fp.points[0].at_infinity);
    CHECK(fp.points[1].at_infinity);

    const auto id = fixed_points(identity_map());
    CHECK(id.points[0].at_infinity);
    CHECK(id.points[1].at_infinity);
    CHECK(id.degenerate_identity);

    // h(z) = (z + 0.5)/(0.5 z + 1) fixes 1 and -1
    const auto hp = fixed_points(canonical_automorphism(0.5));
    const Complex z0 = hp.points[0].value, z1 = hp.points[1].value;
    CHECK(std::abs(std::min(std::abs(z0 - 1.0), std::abs(z1 - 1.0))) < 1e-14);
    CHECK(std::abs(std::min(std::abs(z0 + 1.0), std::abs(z1 + 1.0))) < 1e-14);
}

TEST_CASE("disk classification: hyperbolic non-automorphism") {
    const auto cls = classify_disk(affine_disk_map(0.5));
    CHECK(cls.kind == SymbolKind::HyperbolicNonAutomorphism);
    CHECK(cls.universal_translate);
    REQUIRE(cls.lambda_region.has_value());
    CHECK(cls.lambda_region->inner == 0.0);
    CHECK(cls.lambda_region->outer == Approx(std::sqrt(2.0)));
    CHECK(cls.derivative_at_attracting.real() == Approx(0.5));

    // a = 0.25 gives radius 2
    const auto cls25 = classify_disk(affine_disk_map(0.25));
    CHECK(cls25.lambda_region->outer == Approx(2.0));
}

TEST_CASE("disk classification: hyperbolic automorphism and non-universal kinds") {
    const auto h = classify_disk(canonical_automorphism(0.5));
    CHECK(h.kind == SymbolKind::HyperbolicAutomorphism);
    CHECK(h.universal_translate);
    // derivative at the attracting fixed point 1 is (1-a)/(1+a) = 1/3
    CHECK(std::abs(h.derivative_at_attracting) == Approx(1.0 / 3.0));

    const auto half = classify_disk(MoebiusMap{0.5, 0.0, 0.0, 1.0, Domain::Disk});
    CHECK(half.kind == SymbolKind::InteriorFixed);
    CHECK_FALSE(half.universal_translate);

    // z / (2 - z): interior fixed point 0, boundary fixed point 1
    const auto mixed = classify_disk(MoebiusMap{1.0, 0.0, -1.0, 2.0, Domain::Disk});
    CHECK(mixed.kind == SymbolKind::InteriorFixed);

    // 1 / (2 - z): parabolic, double fixed point at 1
    const auto par = classify_disk(MoebiusMap{0.0, 1.0, -1.0, 2.0, Domain::Disk});
    CHECK(par.kind == SymbolKind::ParabolicBoundary);
    CHECK_FALSE(par.universal_translate);

    // maps that leave the disk are rejected
    CHECK_THROWS_AS(classify_disk(MoebiusMap{2.0, 0.0, 0.0, 1.0, Domain::Disk}),
                    std::domain_error);
}

TEST_CASE("half-plane classification") {
    const auto t2 = classify_halfplane(affine_halfplane_map(2.0, Complex(1.0)));
    CHECK(t2.kind == SymbolKind::TypeII);
    CHECK(t2.universal_translate);
    CHECK(t2.lambda_region->outer == Approx(1.0 / std::sqrt(2.0)));

    const auto t1 = classify_halfplane(affine_halfplane_map(0.5, Complex(1.0)));
    CHECK(t1.kind == SymbolKind::TypeI);
    CHECK_FALSE(t1.universal_translate);
    CHECK_FALSE(t1.lambda_region.has_value());

    const auto aut = classify_halfplane(affine_halfplane_map(1.0, Complex(0.0, 1.0)));
    CHECK(aut.kind == SymbolKind::HalfPlaneAutomorphism);
    CHECK_FALSE(aut.universal_translate);

    const auto parab = classify_halfplane(affine_halfplane_map(1.0, Complex(1.0)));
    CHECK(parab.kind == SymbolKind::HalfPlaneParabolicType);
    CHECK_FALSE(parab.universal_translate);

    CHECK_THROWS_AS(classify_halfplane(affine_halfplane_map(-1.0, Complex(1.0))),
                    std::domain_error);
    CHECK_THROWS_AS(classify_halfplane(affine_halfplane_map(2.0, Complex(-0.1))),
                    std::domain_error);
}

TEST_CASE("angular derivative at infinity") {
    CHECK(angular_derivative_at_infinity(affine_halfplane_map(2.0, Complex(1.0))) ==
          Approx(0.5));
    CHECK(angular_derivative_at_infinity(affine_halfplane_map(1.0, Complex(0.0))) ==
          Approx(1.0));
    CHECK(angular_derivative_at_infinity(affine_halfplane_map(0.25, Complex(3.0, 4.0))) ==
          Approx(4.0));
}

TEST_CASE("affine iterates") {
    const auto it2 = iterate_affine(0.5, 2);
    CHECK(it2.alpha.real() == Approx(0.25));
    CHECK(it2.beta.real() == Approx(0.75));

    CHECK(iterate_affine(0.5, 0).is_identity());

    const auto lhs = iterate_affine(0.5, 3).normalized();
    const auto rhs = compose(affine_disk_map(0.5), iterate_affine(0.5, 2)).normalized();
    CHECK(std::abs(lhs.alpha - rhs.alpha) < 1e-15);
    CHECK(std::abs(lhs.beta - rhs.beta) < 1e-15);

    // semigroup law m+n and fixed points {1, infinity} for every n >= 1
    for (unsigned mth = 1; mth <= 4; ++mth)
        for (unsigned nth = 1; nth <= 4; ++nth) {
            const auto ab = iterate_affine(0.7, mth + nth).normalized();
            const auto cc =
                compose(iterate_affine(0.7, mth), iterate_affine(0.7, nth)).normalized();
            CHECK(std::abs(ab.alpha - cc.alpha) < 1e-14);
            CHECK(std::abs(ab.beta - cc.beta) < 1e-14);
            const auto fp = fixed_points(ab);
            CHECK(std::abs(fp.points[0].value - Complex(1.0)) < 1e-12);
            CHECK(fp.points[1].at_infinity);
        }
}

TEST_CASE("Cayley conjugation of affine half-plane symbols") {
    // psi(w) = 2w + 1 corresponds to a = 0.5 and conjugates to phi_{0.5}
    const auto phi = cayley_conjugate(affine_halfplane_map(2.0, Complex(1.0)));
    CHECK(phi.domain == Domain::Disk);
    CHECK(std::abs(phi.alpha - Complex(0.5)) < 1e-14);
    CHECK(std::abs(phi.beta - Complex(0.5)) < 1e-14);
    CHECK(std::abs(phi.gamma) < 1e-14);
    CHECK(std::abs(phi.delta - Complex(1.0)) < 1e-14);

    const auto id = cayley_conjugate(affine_halfplane_map(1.0, Complex(0.0)));
    CHECK(id.is_identity());

    // pointwise conjugation oracle for psi(w) = 4w + 3
    const auto psi = affine_halfplane_map(4.0, Complex(3.0));
    const auto conj = cayley_conjugate(psi);
    const auto gamma = cayley_transform();
    const MoebiusMap ginv{1.0, -1.0, 1.0, 1.0, Domain::HalfPlane};
    for (int k = 0; k < 20; ++k) {
        const Complex z = std::polar(0.9, 2.0 * M_PI * k / 20.0);
        const Complex via = ginv.apply(psi.apply(gamma.apply(z)));
        CHECK(std::abs(conj.apply(z) - via) < 1e-12);
    }
}

TEST_CASE("Cayley consistency of the classifications") {
    // Type II half-plane symbols conjugate to hyperbolic non-automorphisms
    for (double a : {2.0, 4.0, 1.25}) {
        const auto psi = affine_halfplane_map(a, Complex(1.0, 0.5));
        const auto disk_cls = classify_disk(cayley_conjugate(psi));
        CHECK(disk_cls.kind == SymbolKind::HyperbolicNonAutomorphism);
        CHECK(disk_cls.universal_translate);
        // the disk parameter is the reciprocal of the half-plane dilation
        CHECK(std::abs(disk_cls.derivative_at_attracting) == Approx(1.0 / a).epsilon(1e-9));
    }
    // and the non-universal type I stays non-universal on the disk
    const auto t1 = cayley_conjugate(affine_halfplane_map(0.5, Complex(1.0)));
    const auto cls = classify_disk(t1);
    CHECK_FALSE(cls.universal_translate);
}

TEST_CASE("hyperbolic non-automorphism derivative sits in (0,1)") {
    // conjugates of phi_a by rotations keep one circle fixed point
    for (double a : {0.3, 0.5, 0.8}) {
        const auto cls = classify_disk(affine_disk_map(a));
        const double d = std::abs(cls.derivative_at_attracting);
        CHECK(d > 0.0);
        CHECK(d < 1.0);
    }
}

TEST_CASE("half-plane classification requires affine symbols") {
    const MoebiusMap m{1.0, 1.0, -1.0, 1.0, Domain::HalfPlane};
    CHECK_THROWS_AS(classify_halfplane(m), std::domain_error);
    CHECK_THROWS_AS(angular_derivative_at_infinity(m), std::domain_error);
}
