#include "xxzb/algebra.hpp"
#include "xxzb/boundary_params.hpp"
#include "xxzb/charge.hpp"

#include <doctest.h>

#include <random>

using namespace xxzb;

TEST_CASE("coproducts for one and two sites") {
    const BulkParams bulk(3.7);
    const Complex q = bulk.q(), sq = std::sqrt(q);
    const auto g1 = build_coproducts(1, bulk);
    CHECK(std::abs(g1.k_op(0, 0) - sq) < 1e-15);
    CHECK(std::abs(g1.k_op(1, 1) - 1.0 / sq) < 1e-15);
    CHECK(max_norm(g1.e_op - pauli::plus()) == 0.0);

    Matrix k(2, 2);
    k << sq, 0.0, 0.0, 1.0 / sq;
    const auto kron = [](const Matrix& a, const Matrix& b) {
        Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return r;
    };
    const auto g2 = build_coproducts(2, bulk);
    CHECK(max_norm(g2.e_op - (kron(k.inverse(), pauli::plus()) + kron(pauli::plus(), k))) < 1e-15);
    CHECK(max_norm(g2.k_op - kron(k, k)) < 1e-15);
}

TEST_CASE("q-commutation of the coproducts") {
    const BulkParams bulk(2.9);
    for (int n = 1; n <= 4; ++n) {
        const auto g = build_coproducts(n, bulk);
        const Matrix ki = g.k_op.inverse();
        CHECK(max_norm(g.k_op * g.e_op * ki - bulk.q() * g.e_op) < 1e-12);
        CHECK(max_norm(g.k_op * g.f_op * ki - g.f_op / bulk.q()) < 1e-12);
    }
}

TEST_CASE("predicted spectrum: sector counts") {
    const BulkParams bulk(3.7);
    const Complex s = 2.1;
    const auto l1 = predicted_q_spectrum(1, s, bulk);
    REQUIRE(l1.size() == 2);
    for (const auto& lv : l1) CHECK(lv.multiplicity == 1);
    const Complex pre = -kI / std::sinh(kI * bulk.mu());
    CHECK(multiset_distance({l1[0].value, l1[1].value},
                            {pre * std::cosh(kI * bulk.mu() * (s - 1.0)), pre * std::cosh(kI * bulk.mu() * (s + 1.0))}) <
          1e-15);

    const auto l2 = predicted_q_spectrum(2, s, bulk);
    REQUIRE(l2.size() == 3);
    CHECK(l2[0].multiplicity + l2[1].multiplicity + l2[2].multiplicity == 4);
    for (const auto& lv : l2)
        if (lv.spin == 0.0) CHECK(lv.multiplicity == 2);
    CHECK(expand_levels(l2).size() == 4);
}

TEST_CASE("Q spectrum matches the prediction up to N = 4") {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const BulkParams bulk(3.7);
    for (int n = 1; n <= 4; ++n) {
        for (int draw = 0; draw < 4; ++draw) {
            BoundaryParams b;
            const double a = u(g), c = u(g), e = u(g), f = u(g);
            b.xi = Complex(a, c);
            b.kappa = Complex(0.6 + 0.3 * e, f);
            const DerivedBoundary d = derive_pm_from_bare(b, bulk);
            const auto pred = expand_levels(predicted_q_spectrum(n, d.beta_gamma_sum, bulk));
            CHECK(multiset_distance(diagonalize(build_q_charge(n, bulk, b)), pred) < 1e-10);
        }
    }
}

TEST_CASE("Q commutes with the transfer matrix and H at theta = 0") {
    const BulkParams bulk(3.7);
    const BoundaryParams b = derive_bare_from_pm(0.8, 1.3, bulk);
    for (int n = 2; n <= 3; ++n) {
        const SpinChainSpec spec{n, bulk, b};
        const Matrix q = build_q_charge(n, bulk, b);
        CHECK(commutator_residual(q, build_transfer_matrix({0.4, -0.2}, spec)) < 1e-10);
        CHECK(commutator_residual(q, build_hamiltonian(spec)) < 1e-10);
    }
}
