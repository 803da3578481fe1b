// Bare (xi, kappa) <-> derived (p+, p-, beta+gamma, zeta) boundary parameters, and
// the identification with the Ghoshal-Zamolodchikov boundary parameters.

#pragma once

#include "xxzb/core.hpp"

namespace xxzb {

struct DerivedBoundary {
    Complex p_plus{0.0, 0.0};
    Complex p_minus{0.0, 0.0};
    Complex beta_gamma_sum{0.0, 0.0};  // p+ + p-
    Complex zeta{0.0, 0.0};            // p+ - p-
    // set when an inverse cosh was taken exactly on its cut (real argument in [-1, 1]);
    // the value is still the deterministic principal one
    bool on_branch_cut = false;

    static DerivedBoundary from_pm(Complex p_plus, Complex p_minus);
    /// The second reference state: p+- -> -p+-.
    DerivedBoundary dual() const;
    bool is_real(double tol = 0.0) const;
};

DerivedBoundary derive_pm_from_bare(const BoundaryParams& bnd, const BulkParams& bulk);

/// Returns (xi, kappa) with theta = 0. kappa^2 is fixed by the cosh-squared sum, xi by
/// e^{i mu xi} = 2 i kappa cosh(i mu zeta); of the two equivalent solutions
/// (xi, kappa), (xi + nu, -kappa) the one with Re(mu xi) in (-pi/2, pi/2] is returned.
BoundaryParams derive_bare_from_pm(Complex p_plus, Complex p_minus, const BulkParams& bulk);

struct BareconResiduals {
    double cosh_product = 0.0;  // |cosh(i mu xi)/(2 i kappa) - cosh(i mu p+) cosh(i mu p-)|
    double cosh_squares = 0.0;  // |cosh^2(i mu p+) + cosh^2(i mu p-) - 1 + 1/(4 kappa^2)|
    double max() const { return cosh_product > cosh_squares ? cosh_product : cosh_squares; }
};
BareconResiduals barecon_residuals(const BoundaryParams& bnd, const DerivedBoundary& d,
                                   const BulkParams& bulk);

/// |e^{-i mu xi}/(2 kappa) - i cosh(i mu (beta+gamma))| and the zeta analogue, max of both.
double param_roundtrip_residual(const BoundaryParams& bnd, const DerivedBoundary& d,
                                const BulkParams& bulk);

struct GZParams {
    double lambda_gz = 0.0;
    Complex eta{0.0, 0.0};
    Complex vartheta{0.0, 0.0};
    Complex xi_prime{0.0, 0.0};
    Complex k_gz{0.0, 0.0};
    // cos(eta) cosh(vartheta) + cos(xi')/k  and  cos^2(eta) + cosh^2(vartheta) - 1 - 1/k^2
    Complex constraint_product{0.0, 0.0};
    Complex constraint_squares{0.0, 0.0};
};

GZParams map_to_gz(const BulkParams& bulk, const DerivedBoundary& d, const BoundaryParams& bnd);

/// Inverts the affine/linear identifications; the GZ constraint fields are ignored.
struct GZInverse {
    Complex p_plus, p_minus, xi, kappa;
};
GZInverse map_from_gz(const BulkParams& bulk, const GZParams& gz);

/// Throws InvalidInput unless p is real and inside (-1/2, nu - 1/2), where the
/// Fourier kernels with index 2p + 1 are defined.
void require_kernel_window(Complex p, const BulkParams& bulk, const char* name);

}  // namespace xxzb
