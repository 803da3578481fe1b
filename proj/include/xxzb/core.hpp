// Shared scalar and matrix aliases, parameter types and error classes.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace xxzb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Bad user input: out-of-window parameters, malformed configs, out-of-range sites.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its contract (pole hit, no convergence, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bulk anisotropy of the critical chain: mu = pi/nu, q = exp(i mu), |q| = 1.
class BulkParams {
public:
    explicit BulkParams(double nu);

    double nu() const { return nu_; }
    double mu() const { return mu_; }
    Complex q() const { return q_; }

private:
    double nu_;
    double mu_;
    Complex q_;
};

/// Bare parameters (xi, kappa, theta) of the non-diagonal K-matrix.
struct BoundaryParams {
    Complex xi{0.0, 0.0};
    Complex kappa{1.0, 0.0};
    double theta = 0.0;
};

/// Largest dense matrix dimension a chain operator may have. Reads BB_MAX_DIM,
/// otherwise 1024 (N = 10).
std::size_t max_dense_dim();

/// Throws InvalidInput unless 1 <= n_sites and 2^n_sites <= max_dense_dim().
std::size_t chain_dim(int n_sites);

/// Entry-wise max modulus.
double max_norm(const Matrix& m);

}  // namespace xxzb
