// Thermodynamic-limit objects: Fourier kernels, hole energy/momentum, the one-hole
// root density, and the boundary reflection amplitudes in integral and Gamma-product
// form.
//
// Fourier convention: f(l) = (1/2 pi) int dw e^{-i w l} f^(w); for even f^ this is
// (1/pi) int_0^inf cos(w l) f^(w) dw.

#pragma once

#include "xxzb/boundary_params.hpp"
#include "xxzb/quad.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace xxzb {

double kernel_a_hat(double n, double omega, const BulkParams& bulk);
double kernel_b_hat(double n, double omega, const BulkParams& bulk);
/// a_1/(1 + a_2) assembled from the kernels (no closed form used).
double kernel_eps_hat(double omega, const BulkParams& bulk);
double kernel_eps_hat_closed(double omega);

/// sinh(a w)/sinh(b w) for b > 0, stable for large w, with the w -> 0 limit.
template <class T>
T sinh_ratio(T a, double b, double omega) {
    const double w = std::abs(omega);
    if (b * w < 1e-4) return (a / b) * (1.0 + (a * a - b * b) * (w * w / 6.0));
    const double den = -std::expm1(-2.0 * b * w);
    if constexpr (std::is_same_v<T, double>) {
        if (std::abs(2.0 * a * w) < 50.0) return std::exp(-(a + b) * w) * std::expm1(2.0 * a * w) / den;
    }
    return (std::exp((a - b) * w) - std::exp(-(a + b) * w)) / den;
}

double hole_energy(double lambda_tilde);    // 1/(2 cosh(pi l))
double hole_momentum(double lambda_tilde);  // pi/2 + 2 atan(tanh(pi l / 2))
/// Inverse Fourier transform of the kernel-built eps^ by quadrature.
QuadResult<double> hole_energy_quadrature(double lambda_tilde, const BulkParams& bulk, double tol);

/// Fourier transform of the one-hole density; no hole term when lambda_tilde is empty.
double density_hat(double omega, int n_sites, const DerivedBoundary& d, const BulkParams& bulk,
                   std::optional<double> lambda_tilde = std::nullopt);
QuadResult<double> density(double lambda, int n_sites, const DerivedBoundary& d, const BulkParams& bulk,
                           std::optional<double> lambda_tilde = std::nullopt, double tol = 1e-11);

enum class AmpMethod { Integral, GammaProduct, ClosedForm };
std::string to_string(AmpMethod m);
AmpMethod parse_amp_method(const std::string& s);

struct Amplitude {
    Complex value{0.0, 0.0};
    AmpMethod method = AmpMethod::Integral;
    double trunc_param = 0.0;  // quadrature cutoff or product length
    double err_estimate = 0.0;
};

Amplitude k0_integral(double lambda_tilde, const BulkParams& bulk, double tol = 1e-12);
Amplitude k1_integral(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk,
                      double tol = 1e-12);

/// The k1 exponent int_0^inf sin(2 w l)/w sinh(a w)/(2 sinh(b w) cosh w) dw with
/// a = nu - 2x - 1 (x may be complex), b = nu - 1.
QuadResult<Complex> k1_exponent_integral(double lambda_tilde, Complex x, const BulkParams& bulk,
                                         double tol = 1e-12);

struct GammaTerm {
    double sign;
    Complex offset;
};

struct GammaProductLog {
    Complex log_value{0.0, 0.0};
    double err = 0.0;
    Complex tail{0.0, 0.0};
    Complex c1{0.0, 0.0};  // coefficient of the 1/n term of log(term_n); must vanish
};

/// log prod_{n=0}^{inf} prod_i Gamma(A n + b_i)^{s_i}, summed up to n_max - 1 with the
/// remainder taken from the large-n expansion of each log Gamma (Bernoulli polynomials,
/// Hurwitz zeta). Needs sum s_i = sum s_i b_i = 0 and a vanishing 1/n coefficient.
GammaProductLog gamma_product_log(const std::vector<GammaTerm>& terms, double slope, int n_max,
                                  bool with_tail = true);

std::vector<GammaTerm> k0_gamma_terms(double lambda_tilde, const BulkParams& bulk);
std::vector<GammaTerm> k1_gamma_terms_literal(double lambda_tilde, double x, const BulkParams& bulk);
/// log of the n-th factor of the k0 product.
Complex k0_gamma_term_log(double lambda_tilde, const BulkParams& bulk, int n);

Amplitude k0_gamma(double lambda_tilde, const BulkParams& bulk, int n_max = 200);
/// Normalized product: sqrt(i/2 kappa) Gamma(1/2 + cd) Gamma(1/2 - cd) prod_n term_n(l)/term_n(0).
Amplitude k1_gamma(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk, int n_max = 200);
/// The displayed product truncated at n_max with no tail; it does not converge.
Complex k1_gamma_literal_partial(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk,
                                 int n_max);

struct AmpSettings {
    double tol = 1e-12;
    int n_max = 200;
};

/// Full first eigenvalue (-2 i kappa/pi^2) cosh cosh k0 k1(p+) k1(p-).
Amplitude k1_full(double lambda_tilde, const DerivedBoundary& d, Complex kappa, const BulkParams& bulk,
                  AmpMethod method, const AmpSettings& s = {});

Complex k2_over_k1(double lambda_tilde, const DerivedBoundary& d, const BulkParams& bulk);

/// |k2/k1 - eps_1/eps_2| where eps are the K-matrix eigenvalues written at the
/// renormalized coupling pi/(nu - 1) with boundary parameters nu - p+- - 1/2.
double k2_over_k1_eigen_residual(double lambda_tilde, const DerivedBoundary& d, const BulkParams& bulk);

struct DiagonalLimitPoint {
    double t;
    double exponent_abs;  // |log| of the k1 exponential factor at x = nu/2 - i t
};
std::vector<DiagonalLimitPoint> diagonal_limit_trend(double lambda_tilde, const BulkParams& bulk,
                                                     const std::vector<double>& ts, double tol = 1e-10);

}  // namespace xxzb
