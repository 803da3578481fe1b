#include "xxzb/charge.hpp"

#include "xxzb/algebra.hpp"

#include <cmath>

namespace xxzb {

namespace {

Matrix kron_chain(const std::vector<Matrix>& factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors) {
        Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
        out = std::move(next);
    }
    return out;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

CoproductGenerators build_coproducts(int n_sites, const BulkParams& bulk) {
    const auto dim = static_cast<Eigen::Index>(chain_dim(n_sites));
    const Complex qh = std::exp(0.5 * kI * bulk.mu());
    Matrix k = Matrix::Zero(2, 2);
    k(0, 0) = qh;
    k(1, 1) = 1.0 / qh;
    const Matrix kinv = k.inverse();

    CoproductGenerators g;
    g.n_sites = n_sites;
    g.k_op = kron_chain(std::vector<Matrix>(n_sites, k));
    g.e_op = Matrix::Zero(dim, dim);
    g.f_op = Matrix::Zero(dim, dim);
    for (int n = 1; n <= n_sites; ++n) {
        std::vector<Matrix> fe, ff;
        for (int s = 1; s <= n_sites; ++s) {
            const Matrix& side = s < n ? kinv : k;
            fe.push_back(s == n ? pauli::plus() : side);
            ff.push_back(s == n ? pauli::minus() : side);
        }
        g.e_op += kron_chain(fe);
        g.f_op += kron_chain(ff);
    }
    return g;
}

Matrix build_q_charge(int n_sites, const BulkParams& bulk, const BoundaryParams& bnd) {
    if (bnd.kappa == Complex(0.0, 0.0)) throw InvalidInput("kappa must be nonzero");
    const auto g = build_coproducts(n_sites, bulk);
    const double mu = bulk.mu();
    const Complex a = std::exp(kI * mu * (-0.5 + bnd.theta));
    const Complex b = std::exp(kI * mu * (0.5 - bnd.theta));
    const Complex c = std::exp(-kI * mu * bnd.xi) / (2.0 * bnd.kappa * std::sinh(kI * mu));
    return a * g.k_op * g.e_op + b * g.k_op * g.f_op - c * g.k_op * g.k_op;
}

std::vector<QLevel> predicted_q_spectrum(int n_sites, Complex beta_gamma_sum, const BulkParams& bulk) {
    if (n_sites < 1) throw InvalidInput("n_sites must be positive");
    const double mu = bulk.mu();
    const Complex pre = -kI / std::sinh(kI * mu);
    std::vector<QLevel> out;
    for (int m = 0; m <= n_sites; ++m) {
        QLevel l;
        l.m_roots = m;
        l.spin = 0.5 * n_sites - m;
        l.multiplicity = static_cast<int>(binomial(n_sites, m));
        l.value = pre * std::cosh(kI * mu * (beta_gamma_sum - 2.0 * l.spin));
        out.push_back(l);
    }
    return out;
}

std::vector<Complex> expand_levels(const std::vector<QLevel>& levels) {
    std::vector<Complex> out;
    for (const auto& l : levels) out.insert(out.end(), l.multiplicity, l.value);
    return out;
}

}  // namespace xxzb
