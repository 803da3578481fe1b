#include "xxzb/smatrix.hpp"

#include "reference.hpp"

#include <doctest.h>

using namespace xxzb;

TEST_CASE("kernels at omega = 0 and the eps identity") {
    for (const double nu : {2.5, 3.0, 3.7, 5.0}) {
        const BulkParams bulk(nu);
        CHECK(kernel_a_hat(1.0, 0.0, bulk) == doctest::Approx((nu - 1.0) / nu).epsilon(1e-15));
        CHECK(kernel_a_hat(2.0, 0.0, bulk) == doctest::Approx((nu - 2.0) / nu).epsilon(1e-15));
        CHECK(kernel_b_hat(1.0, 0.0, bulk) == doctest::Approx(-1.0 / nu).epsilon(1e-15));
        CHECK(std::abs(kernel_eps_hat(0.0, bulk) - 0.5) < 1e-15);
        for (int i = 0; i <= 400; ++i) {
            const double w = -20.0 + 0.1 * i;
            CHECK(std::abs(kernel_eps_hat(w, bulk) - kernel_eps_hat_closed(w)) < 1e-14);
        }
    }
    CHECK_THROWS_AS(kernel_a_hat(8.0, 0.3, BulkParams(3.7)), InvalidInput);
}

TEST_CASE("sinh ratio is stable for large omega") {
    CHECK(std::isfinite(sinh_ratio<double>(1.5, 2.0, 800.0)));
    CHECK(sinh_ratio<double>(1.5, 2.0, 800.0) > 0.0);
    CHECK(std::abs(sinh_ratio<double>(1.5, 2.0, 0.0) - 0.75) < 1e-15);
    CHECK(std::abs(sinh_ratio<double>(1.5, 2.0, 0.7) - std::sinh(1.05) / std::sinh(1.4)) < 1e-14);
}

TEST_CASE("hole energy: even, quadrature matches closed form and references") {
    const BulkParams bulk(3.7);
    for (const double l : {0.0, 0.4, 1.1, 2.5}) {
        CHECK(hole_energy(l) == hole_energy(-l));
        CHECK(std::abs(hole_energy_quadrature(l, bulk, 1e-13).value - hole_energy(l)) < 1e-11);
    }
    for (const auto& e : testref::data().at("eps")) {
        const double l = e.at("lambda").get<double>();
        CHECK(std::abs(hole_energy(l) - e.at("value").get<double>()) < 1e-15);
    }
    CHECK(std::abs(hole_momentum(0.0) - 0.5 * kPi) < 1e-15);
    CHECK(std::abs(hole_momentum(30.0) - kPi) < 1e-12);
    CHECK(std::abs(hole_momentum(-30.0)) < 1e-12);
}

TEST_CASE("density transform: bulk limit and validation") {
    const BulkParams bulk(3.7);
    const DerivedBoundary d = DerivedBoundary::from_pm(0.8, 1.3);
    for (const double w : {0.0, 0.4, 2.0}) {
        CHECK(std::abs(density_hat(w, 1000000000, d, bulk) - 2.0 * kernel_eps_hat(w, bulk)) < 1e-8);
        // omega -> 0 is taken as a limit, not a 0/0
        CHECK(std::abs(density_hat(1e-9, 51, d, bulk) - density_hat(0.0, 51, d, bulk)) < 1e-8);
    }
    CHECK(density_hat(0.5, 51, d, bulk, 0.3) != density_hat(0.5, 51, d, bulk));
    CHECK_THROWS_AS(density_hat(0.3, 0, d, bulk), InvalidInput);
    CHECK_THROWS_AS(density(0.3, 51, DerivedBoundary::from_pm(-0.7, 1.3), bulk), InvalidInput);
}

TEST_CASE("k0 against references, both routes") {
    for (const auto& e : testref::data().at("k0")) {
        const BulkParams bulk(e.at("nu").get<double>());
        const double l = e.at("lambda").get<double>();
        const Complex ref = testref::cplx(e.at("value"));
        CHECK(std::abs(k0_integral(l, bulk).value - ref) < 1e-11);
        CHECK(std::abs(k0_gamma(l, bulk).value - ref) < 1e-11);
    }
}

TEST_CASE("k1 against references, both routes") {
    for (const auto& e : testref::data().at("k1")) {
        const BulkParams bulk(e.at("nu").get<double>());
        const double l = e.at("lambda").get<double>(), x = e.at("x").get<double>();
        const Complex kap = testref::cplx(e.at("kappa"));
        const Complex ref = testref::cplx(e.at("value"));
        INFO("nu " << bulk.nu() << " x " << x << " l " << l);
        CHECK(std::abs(k1_integral(l, x, kap, bulk).value - ref) < 1e-10 * std::abs(ref));
        CHECK(std::abs(k1_gamma(l, x, kap, bulk).value - ref) < 1e-10 * std::abs(ref));
    }
}

TEST_CASE("k0: unitarity, value at zero, product length") {
    const BulkParams bulk(3.7);
    for (const int n : {1, 10, 200, 1000}) CHECK(std::abs(k0_gamma(0.0, bulk, n).value - 1.0) < 1e-14);
    for (const double l : {0.2, 0.9, 3.0}) {
        const Complex a = k0_integral(l, bulk).value;
        CHECK(std::abs(a * k0_integral(-l, bulk).value - 1.0) < 1e-11);
        CHECK(std::abs(std::abs(a) - 1.0) < 1e-11);
    }
    // per-term factor tends to 1
    CHECK(std::abs(std::exp(k0_gamma_term_log(0.7, bulk, 1000)) - 1.0) < 1e-5);
    CHECK_THROWS(k0_gamma(0.3, bulk, 0));
}

TEST_CASE("Gamma products need balanced terms") {
    CHECK_THROWS_AS(gamma_product_log({{1.0, 1.0}}, 1.0, 50), NumericalError);
    const auto ok = gamma_product_log({{1.0, 1.0}, {-1.0, 1.0}}, 1.0, 50);
    CHECK(std::abs(ok.log_value) < 1e-15);
}

TEST_CASE("k1_full finite at prefactor poles") {
    const BulkParams bulk(3.7);
    const BoundaryParams b = derive_bare_from_pm(0.5, 1.3, bulk);
    const DerivedBoundary d = DerivedBoundary::from_pm(0.5, 1.3);
    for (const double l : {0.0, 0.4}) {
        const Amplitude a = k1_full(l, d, b.kappa, bulk, AmpMethod::Integral);
        CHECK(std::isfinite(std::abs(a.value)));
        // approach the pole on the product route
        const double p = 0.5 + 1e-7;
        const Amplitude g = k1_full(l, DerivedBoundary::from_pm(p, 1.3), derive_bare_from_pm(p, 1.3, bulk).kappa, bulk,
                                    AmpMethod::GammaProduct);
        CHECK(std::abs(a.value - g.value) < 1e-5 * std::max(1.0, std::abs(g.value)));
    }
    CHECK(std::abs(k1_full(0.0, DerivedBoundary::from_pm(0.8, 1.3), derive_bare_from_pm(0.8, 1.3, bulk).kappa, bulk,
                           AmpMethod::Integral)
                       .value -
                   1.0) < 1e-12);
}

TEST_CASE("k2/k1: unimodular, one at zero, equals the K eigenvalue ratio") {
    const BulkParams bulk(3.7);
    const DerivedBoundary d = DerivedBoundary::from_pm(0.8, 1.3);
    CHECK(std::abs(k2_over_k1(0.0, d, bulk) - 1.0) < 1e-14);
    for (const double l : {-2.0, -0.3, 0.5, 1.7}) {
        CHECK(std::abs(std::abs(k2_over_k1(l, d, bulk)) - 1.0) < 1e-13);
        CHECK(k2_over_k1_eigen_residual(l, d, bulk) < 1e-12);
    }
}

TEST_CASE("amplitude method names") {
    for (const auto m : {AmpMethod::Integral, AmpMethod::GammaProduct, AmpMethod::ClosedForm})
        CHECK(parse_amp_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_amp_method("series"), InvalidInput);
}
