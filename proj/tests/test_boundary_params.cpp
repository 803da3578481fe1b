#include "xxzb/boundary_params.hpp"

#include <doctest.h>

#include <random>

using namespace xxzb;

TEST_CASE("xi = 0, kappa = -i/2 gives p+- = 0") {
    for (const double nu : {2.5, 3.7, 6.0}) {
        const BulkParams bulk(nu);
        BoundaryParams b;
        b.xi = 0.0;
        b.kappa = Complex(0.0, -0.5);
        const DerivedBoundary d = derive_pm_from_bare(b, bulk);
        CHECK(std::abs(d.p_plus) < 1e-7);  // acosh(1 + O(eps)) only resolves sqrt(eps)
        CHECK(std::abs(d.p_minus) < 1e-7);
        CHECK(barecon_residuals(b, DerivedBoundary::from_pm(0.0, 0.0), bulk).max() < 1e-15);

        const BoundaryParams back = derive_bare_from_pm(0.0, 0.0, bulk);
        CHECK(std::abs(back.xi) < 1e-15);
        CHECK(std::abs(back.kappa - Complex(0.0, -0.5)) < 1e-15);
    }
}

TEST_CASE("random bare parameters: re-substitution and both identities") {
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const BulkParams bulk(3.7);
    for (int i = 0; i < 50; ++i) {
        BoundaryParams b;
        const double xr = u(g), xi = u(g), kr = u(g), ki = u(g);
        b.xi = Complex(1.5 * xr, xi);
        b.kappa = Complex(kr, ki);
        if (std::abs(b.kappa) < 0.1) continue;
        const DerivedBoundary d = derive_pm_from_bare(b, bulk);
        CHECK(param_roundtrip_residual(b, d, bulk) < 1e-12);
        const auto r = barecon_residuals(b, d, bulk);
        CHECK(r.cosh_product < 1e-12);
        CHECK(r.cosh_squares < 1e-12);
    }
}

TEST_CASE("p+- = (0.8, 1.3) at nu = 3 round trip and exchange symmetry") {
    const BulkParams bulk(3.0);
    const BoundaryParams b = derive_bare_from_pm(0.8, 1.3, bulk);
    const DerivedBoundary d = derive_pm_from_bare(b, bulk);
    // recovered up to the exchange / sign / shift symmetries of the inverse cosh
    const auto c = [&](Complex p) { return std::cosh(kI * bulk.mu() * p); };
    const Complex a1 = c(0.8), a2 = c(1.3), b1 = c(d.p_plus), b2 = c(d.p_minus);
    CHECK(std::abs(a1 * a2 - b1 * b2) < 1e-12);
    CHECK(std::min(std::abs(a1 * a1 - b1 * b1) + std::abs(a2 * a2 - b2 * b2),
                   std::abs(a1 * a1 - b2 * b2) + std::abs(a2 * a2 - b1 * b1)) < 1e-12);
    CHECK(barecon_residuals(b, DerivedBoundary::from_pm(0.8, 1.3), bulk).max() < 1e-12);

    const BoundaryParams swapped = derive_bare_from_pm(1.3, 0.8, bulk);
    CHECK(std::abs(swapped.xi - b.xi) < 1e-14);
    CHECK(std::abs(swapped.kappa - b.kappa) < 1e-14);
}

TEST_CASE("kappa divergence is reported, not clamped") {
    const BulkParams bulk(3.0);
    // cosh(i mu S) = cos(pi S / 3) vanishes at S = 1.5
    CHECK_THROWS_AS(derive_bare_from_pm(0.5, 1.0, bulk), InvalidInput);
}

TEST_CASE("dual flips both signs") {
    const auto d = DerivedBoundary::from_pm(0.8, 1.3).dual();
    CHECK(d.p_plus == Complex(-0.8, 0.0));
    CHECK(d.p_minus == Complex(-1.3, 0.0));
    CHECK(std::abs(d.beta_gamma_sum - Complex(-2.1, 0.0)) < 1e-15);
}

TEST_CASE("GZ map") {
    const BulkParams bulk(3.0);
    const DerivedBoundary d = DerivedBoundary::from_pm(0.8, 1.5);
    const BoundaryParams b = derive_bare_from_pm(0.8, 1.5, bulk);
    const GZParams gz = map_to_gz(bulk, d, b);
    CHECK(gz.lambda_gz == doctest::Approx(0.5));
    CHECK(std::abs(gz.eta) < 1e-15);  // p- = nu/2
    const GZInverse inv = map_from_gz(bulk, gz);
    CHECK(std::abs(inv.p_plus - d.p_plus) < 1e-14);
    CHECK(std::abs(inv.p_minus - d.p_minus) < 1e-14);
    CHECK(std::abs(inv.xi - b.xi) < 1e-14);
    CHECK(std::abs(inv.kappa - b.kappa) < 1e-14);
    CHECK(std::isfinite(std::abs(gz.constraint_product)));
    CHECK(std::isfinite(std::abs(gz.constraint_squares)));
}

TEST_CASE("kernel window") {
    const BulkParams bulk(3.7);
    CHECK_NOTHROW(require_kernel_window(0.8, bulk, "p"));
    CHECK_THROWS_AS(require_kernel_window(-0.6, bulk, "p"), InvalidInput);
    CHECK_THROWS_AS(require_kernel_window(3.3, bulk, "p"), InvalidInput);
    CHECK_THROWS_AS(require_kernel_window(Complex(0.8, 0.1), bulk, "p"), InvalidInput);
}
