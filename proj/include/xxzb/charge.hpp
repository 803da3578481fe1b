// Boundary nonlocal charge built from U_q(sl2) coproducts.

#pragma once

#include "xxzb/core.hpp"

#include <vector>

namespace xxzb {

struct CoproductGenerators {
    int n_sites = 0;
    Matrix k_op;
    Matrix e_op;
    Matrix f_op;
};

/// K^(N) = K x ... x K, X^(N) = sum_n K^-1 x .. x K^-1 x X(site n) x K x .. x K,
/// with K = diag(q^{1/2}, q^{-1/2}), E = sigma^+, F = sigma^-.
CoproductGenerators build_coproducts(int n_sites, const BulkParams& bulk);

/// Q = q^{-1/2+theta} K E + q^{1/2-theta} K F - e^{-i mu xi}/(2 kappa sinh(i mu)) K^2.
Matrix build_q_charge(int n_sites, const BulkParams& bulk, const BoundaryParams& bnd);

struct QLevel {
    Complex value;
    int multiplicity = 0;
    int m_roots = 0;  // M = N/2 - S
    double spin = 0.0;
};

/// -(i/sinh(i mu)) cosh[i mu (beta+gamma - 2S)] for S = N/2 - M, multiplicity C(N, M).
std::vector<QLevel> predicted_q_spectrum(int n_sites, Complex beta_gamma_sum, const BulkParams& bulk);

/// Flattened multiset (each level repeated by its multiplicity).
std::vector<Complex> expand_levels(const std::vector<QLevel>& levels);

}  // namespace xxzb
