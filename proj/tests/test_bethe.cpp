#include "xxzb/bethe.hpp"

#include <doctest.h>

using namespace xxzb;

namespace {

const DerivedBoundary kDefault = DerivedBoundary::from_pm(0.8, 1.3);

BetheRoots sea(int n, const BulkParams& bulk, const DerivedBoundary& d = kDefault) {
    QuantumNumbers qn;
    for (int i = 1; i <= n / 2; ++i) qn.values.push_back(i);
    return solve_log_form(n, qn, d, bulk);
}

}  // namespace

TEST_CASE("e_n parity and modulus") {
    const BulkParams bulk(3.7);
    for (const double n : {1.0, 2.0, 2.6, 4.5}) {
        CHECK(std::abs(e_fn(n, 0.0, bulk) + 1.0) < 1e-15);
        for (int i = 0; i <= 100; ++i) {
            const double l = -3.0 + 0.06 * i;
            CHECK(std::abs(e_fn(n, l, bulk) * e_fn(n, -l, bulk) - 1.0) < 1e-13);
            CHECK(std::abs(std::abs(e_fn(n, l, bulk)) - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("phase functions match e_n and g_n on the odd branch") {
    const BulkParams bulk(3.7);
    for (const double n : {1.0, 2.0, 2.6}) {
        double worst_q = 0.0, worst_odd = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double l = -5.0 + 0.01 * i;
            worst_q = std::max(worst_q, std::abs(e_fn(n, l, bulk) + std::exp(-kI * q_fn(n, l, bulk))));
            worst_odd = std::max(worst_odd, std::abs(q_fn(n, l, bulk) + q_fn(n, -l, bulk)));
        }
        CHECK(worst_q < 1e-12);
        CHECK(worst_odd < 1e-15);
        CHECK(q_fn(n, 0.0, bulk) == 0.0);
        CHECK(std::abs(q_fn(n, 40.0, bulk) - q_fn_inf(n, bulk)) < 1e-12);
        const double h = 1e-6, l = 0.37;
        CHECK(std::abs((q_fn(n, l + h, bulk) - q_fn(n, l - h, bulk)) / (2 * h) - dq_fn(n, l, bulk)) < 1e-8);
    }
    for (const double n : {0.5, 1.0, 2.6}) {
        for (const double l : {-1.3, 0.2, 2.0})
            CHECK(std::abs(g_fn(n, l, bulk) - std::exp(-kI * r_fn(n, l, bulk))) < 1e-12);
        CHECK(std::abs(r_fn(n, 40.0, bulk) - r_fn_inf(n, bulk)) < 1e-12);
        const double h = 1e-6, l = -0.6;
        CHECK(std::abs((r_fn(n, l + h, bulk) - r_fn(n, l - h, bulk)) / (2 * h) - dr_fn(n, l, bulk)) < 1e-8);
    }
    CHECK_THROWS_AS(q_fn(8.0, 0.1, bulk), InvalidInput);
    CHECK_THROWS_AS(r_fn(4.0, 0.1, bulk), InvalidInput);
}

TEST_CASE("BAE residual basics") {
    const BulkParams bulk(3.7);
    BetheRoots empty;
    empty.n_sites = 2;
    empty.bulk = bulk;
    empty.derived = kDefault;
    CHECK(bae_residual(empty) == 0.0);

    BetheRoots s = sea(12, bulk);
    CHECK(bae_residual(s) <= 1e-10);
    BetheRoots neg = s;
    for (auto& r : neg.roots) r = -r;
    CHECK(std::abs(bae_residual(neg) - bae_residual(s)) < 1e-12);
    BetheRoots off = s;
    off.roots[1] += 1e-3;
    CHECK(bae_residual(off) > 1e-6);
}

TEST_CASE("log-form solver: N = 8, M = 4 at nu = 3") {
    const BulkParams bulk(3.0);
    const BetheRoots s = sea(8, bulk);
    REQUIRE(s.converged);
    CHECK(s.m_roots() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(s.roots[i].imag() == 0.0);
        CHECK(s.roots[i].real() > 0.0);
        if (i) CHECK(s.roots[i].real() > s.roots[i - 1].real());
        CHECK(std::abs(counting_function(s.roots[i].real(), s) - (i + 1)) < 1e-8);
    }
    CHECK(bae_residual(s) <= 1e-10);
}

TEST_CASE("counting function: monotone, linear in N") {
    const BulkParams bulk(3.7);
    const BetheRoots s = sea(41, bulk);
    double prev = counting_function(0.0, s);
    for (int i = 1; i <= 200; ++i) {
        const double l = 0.02 * i;
        const double h = counting_function(l, s);
        CHECK(h > prev);
        CHECK(counting_function_derivative(l, s) > 0.0);
        prev = h;
    }
    BetheRoots bigger = s;
    bigger.n_sites += 1;
    for (const double l : {0.1, 0.9, 2.4})
        CHECK(std::abs(counting_function(l, bigger) - counting_function(l, s) - q_fn(1.0, l, bulk) / kPi) < 1e-13);
}

TEST_CASE("log-form solver rejects bad input") {
    const BulkParams bulk(3.7);
    CHECK_THROWS_AS(solve_log_form(10, QuantumNumbers{{2, 1}}, kDefault, bulk), InvalidInput);
    CHECK_THROWS_AS(solve_log_form(10, QuantumNumbers{{0, 1}}, kDefault, bulk), InvalidInput);
    CHECK_THROWS_AS(solve_log_form(10, QuantumNumbers{{1, 2}}, DerivedBoundary::from_pm(Complex(0.8, 0.1), 1.3), bulk),
                    InvalidInput);
}

TEST_CASE("small-N multistart against exact diagonalization") {
    const BulkParams bulk(3.7);
    const BoundaryParams bnd = derive_bare_from_pm(0.8, 1.3, bulk);
    const SpinChainSpec spec{2, bulk, bnd};
    const std::vector<Complex> pts = {{0.31, 0.17}, {-0.42, 0.23}, {0.77, -0.11}, {0.05, 0.61}, {1.13, 0.29}};

    const auto m0 = solve_all_small(2, 0, kDefault, bulk);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0].roots.empty());

    // M = 0: the closed form with empty products
    const double mu = bulk.mu();
    const Complex l(0.3, 0.2), sh = std::sinh(kI * mu), den = std::sinh(mu * (2.0 * l + kI));
    const Complex pp = 0.8, pm = 1.3, kap = bnd.kappa;
    const Complex k1m = -2.0 * kI * kap * std::exp(mu * l) * std::sinh(mu * (l - kI * pm)) * std::sinh(mu * (l - kI * pp));
    const Complex k4m = -2.0 * kI * kap * std::exp(mu * l) * std::sinh(mu * (l + kI * pm + kI)) *
                        std::sinh(mu * (l + kI * pp + kI)) * std::sinh(2.0 * mu * l) / sh;
    const Complex k1p = std::exp(-mu * l) * std::sinh(2.0 * mu * (l + kI)) / den;
    const Complex k4p = std::exp(-mu * l) * sh / den;
    const Complex closed = k1p * k1m * std::pow(std::sinh(mu * (l + kI)), 4) + k4p * k4m * std::pow(std::sinh(mu * l), 4);
    CHECK(std::abs(lambda_from_roots(l, m0[0], kap) - closed) < 1e-13 * std::abs(closed));

    int total = 0;
    for (const bool dual : {false, true}) {
        const DerivedBoundary set = dual ? kDefault.dual() : kDefault;
        for (int m = 0; m <= 2; ++m) {
            for (const auto& s : solve_all_small(2, m, set, bulk)) {
                ++total;
                CHECK(bae_residual(s) < 1e-8);
                for (const Complex p : pts) {
                    const Complex lam = lambda_from_roots(p, s, kap);
                    double best = 1e300;
                    for (const Complex e : diagonalize(build_transfer_matrix(p, spec)))
                        best = std::min(best, std::abs(lam - e) / std::abs(lam));
                    CHECK(best < 1e-8);
                }
            }
        }
    }
    CHECK(total >= 4);
}

TEST_CASE("multistart is reproducible and seed-driven") {
    const BulkParams bulk(3.7);
    MultistartOptions opt;
    opt.n_starts = 60;
    const auto a = solve_all_small(3, 2, kDefault, bulk, opt);
    const auto b = solve_all_small(3, 2, kDefault, bulk, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a[i].roots.size(); ++k) CHECK(a[i].roots[k] == b[i].roots[k]);
    CHECK_THROWS_AS(solve_all_small(4, 1, kDefault, bulk), InvalidInput);
    CHECK_THROWS_AS(solve_all_small(2, 3, kDefault, bulk), InvalidInput);
}

TEST_CASE("spectrum formula has no pole at a Bethe root") {
    const BulkParams bulk(3.7);
    const BoundaryParams bnd = derive_bare_from_pm(0.8, 1.3, bulk);
    const auto sols = solve_all_small(2, 1, kDefault, bulk);
    REQUIRE(!sols.empty());
    for (const auto& s : sols) {
        const Complex r = s.roots[0] - 0.5 * kI;
        // probe around the would-be pole l = r from two directions
        for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
            const Complex a = lambda_from_roots(r + 1e-4 * dir, s, bnd.kappa);
            const Complex b = lambda_from_roots(r + 1e-6 * dir, s, bnd.kappa);
            CHECK(std::abs(b) < 10.0 * std::abs(a) + 1.0);
        }
    }
}

TEST_CASE("canonical roots") {
    const BulkParams bulk(3.7);
    const auto c = canonical_roots({Complex(-0.4, 0.1), Complex(0.2, 3.7 + 0.05)}, bulk);
    CHECK(std::abs(c[0] - Complex(0.2, 0.05)) < 1e-12);
    CHECK(std::abs(c[1] - Complex(0.4, -0.1)) < 1e-12);
}

TEST_CASE("ground-state vacancies at odd N") {
    const BulkParams bulk(3.7);
    const BetheRoots s = sea(101, bulk);
    QuantumNumbers qn;
    for (int i = 1; i <= 50; ++i) qn.values.push_back(i);
    CHECK(counting_function_inf(s) > 50.0);
    CHECK(counting_function_inf(s) < 51.0);
    CHECK(find_vacancies(s, qn).empty());
    CHECK_THROWS_AS(locate_hole(s, 51), InvalidInput);
}
