// R and K matrices, the open-chain transfer matrix, the Hamiltonian and the
// brute-force algebraic checks (Yang-Baxter, reflection equation, commutators).
//
// Conventions used throughout:
//   * single-site basis {up, down} = {0, 1}
//   * two-space objects (R, K1, K2) are 4x4 in the basis 2*a + b, first space leftmost
//   * chain operators act on site 1 ... N with site 1 the leftmost tensor factor;
//     site 1 carries the non-diagonal K boundary, site N the sigma^z_N term
//   * the auxiliary space of the transfer matrix is traced last and never
//     materialised as a tensor factor (the monodromy is kept as 2x2 blocks)

#pragma once

#include "xxzb/core.hpp"

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace xxzb {

/// How sigma^z inside the diagonal blocks of the R-matrix is read.
/// SpinHalf (eigenvalues +-1/2) satisfies Yang-Baxter; Pauli (+-1) does not and
/// exists only as a negative control.
enum class RReading { SpinHalf, Pauli };

struct SpinChainSpec {
    int n_sites = 2;
    BulkParams bulk{3.7};
    BoundaryParams boundary{};
};

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
Matrix plus();   // |up><down|
Matrix minus();  // |down><up|
}  // namespace pauli

Matrix build_r_matrix(Complex lambda, const BulkParams& bulk,
                      RReading reading = RReading::SpinHalf);

/// Swap of two spin-1/2 spaces.
Matrix permutation_matrix();

/// K^-(lambda) with entries exactly as in the generic boundary solution; kappa = 0
/// is allowed and gives the diagonal limit.
Matrix build_k_minus(Complex lambda, const BulkParams& bulk, const BoundaryParams& bnd);

/// Normalized max-norm residual of R12(l1-l2) R13(l1) R23(l2) = R23(l2) R13(l1) R12(l1-l2).
/// The R-matrix comes from `r_of`, so corrupted or alternative R's can be probed.
double check_yang_baxter(Complex lambda1, Complex lambda2,
                         const std::function<Matrix(Complex)>& r_of);
double check_yang_baxter(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                         RReading reading = RReading::SpinHalf);

/// Normalized residual of the reflection equation
///   R12(l1-l2) K1(l1) R21(l1+l2) K2(l2) = K2(l2) R12(l1+l2) K1(l1) R21(l1-l2).
double check_reflection(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                        const std::function<Matrix(Complex)>& k_of);
double check_reflection(Complex lambda1, Complex lambda2, const BulkParams& bulk,
                        const BoundaryParams& bnd);

/// identity x ... x op (at `site`, 1-based from the left) x ... x identity.
Matrix embed_site_operator(const Matrix& op, int site, int n_sites);

/// t(lambda) = tr_0 { M K+ T K- T^ } with K+ = 1, M = diag(q, 1/q),
/// T = R_0N ... R_01 and T^ = R_10 ... R_N0.
Matrix build_transfer_matrix(Complex lambda, const SpinChainSpec& spec);

/// Same object assembled on the full (aux x chain) space with explicit Kronecker
/// products and a partial trace. Slow; used as an independent construction path.
Matrix build_transfer_matrix_dense(Complex lambda, const SpinChainSpec& spec);

Matrix build_hamiltonian(const SpinChainSpec& spec);

/// ||AB - BA||_max / (||A||_max ||B||_max).
double commutator_residual(const Matrix& a, const Matrix& b);

/// All eigenvalues of a general complex matrix (no Hermiticity assumed).
std::vector<Complex> diagonalize(const Matrix& m);

/// Eigenvalue functions of the commuting family: t(lambda_ref) is diagonalized once
/// and each t(points[k]) is read off in that eigenbasis. Row k, column = state.
/// Needs a non-degenerate t(lambda_ref).
Matrix transfer_eigenfunctions(const SpinChainSpec& spec, Complex lambda_ref,
                               const std::vector<Complex>& points);

/// Closed-form K^- eigenvalues -2i kappa sinh[mu(l +- i p+)] sinh[mu(l +- i p-)];
/// first = upper signs.
std::pair<Complex, Complex> k_eigenvalues_closed_form(Complex lambda, const BulkParams& bulk,
                                                      Complex p_plus, Complex p_minus,
                                                      Complex kappa);

/// Greedy closest-pair matching of two equally sized multisets; returns the largest
/// matched distance. Throws InvalidInput on size mismatch.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace xxzb
