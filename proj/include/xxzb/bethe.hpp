// Bethe equations for the open chain with one non-diagonal boundary: multiplicative
// and logarithmic forms, small-N multistart solver, large-N sea solver and the
// transfer-matrix eigenvalue built from a root set.
//
// Roots are stored in the variables of the Bethe equations (the e_n form). The
// eigenvalue formula uses rapidities shifted by -i/2 with respect to these.

#pragma once

#include "xxzb/algebra.hpp"
#include "xxzb/boundary_params.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace xxzb {

Complex e_fn(double n, Complex lambda, const BulkParams& bulk);
Complex e_fn(Complex n, Complex lambda, const BulkParams& bulk);
Complex g_fn(double n, Complex lambda, const BulkParams& bulk);

// Real-axis phases with e_n = -exp(-i q_n), g_n = exp(-i r_n). Continuous odd
// branch: q_n(0) = r_n(0) = 0. Need 0 < n < 2 nu for q_n and 0 < n < nu for r_n.
double q_fn(double n, double lambda, const BulkParams& bulk);
double r_fn(double n, double lambda, const BulkParams& bulk);
double dq_fn(double n, double lambda, const BulkParams& bulk);
double dr_fn(double n, double lambda, const BulkParams& bulk);
/// lambda -> +infinity limits.
double q_fn_inf(double n, const BulkParams& bulk);
double r_fn_inf(double n, const BulkParams& bulk);

struct BetheRoots {
    int n_sites = 0;
    std::vector<Complex> roots;
    DerivedBoundary derived{};
    BulkParams bulk{3.7};
    bool converged = false;
    double residual = 0.0;
    int iterations = 0;

    int m_roots() const { return static_cast<int>(roots.size()); }
};

struct QuantumNumbers {
    std::vector<int> values;
};

struct HoleState {
    BetheRoots sea;
    double hole_rapidity = 0.0;
    int hole_number = 0;
};

/// max_i |LHS_i / RHS_i - 1|; 0 for M = 0. Throws NumericalError at a pole.
double bae_residual(const BetheRoots& state);

/// LHS_i - RHS_i of the multiplicative equations (what the small-N Newton zeroes).
std::vector<Complex> bae_difference(const std::vector<Complex>& roots, int n_sites,
                                    const DerivedBoundary& d, const BulkParams& bulk);

/// Smallest |sinh| / |cosh| over every factor of the Bethe equations; solutions
/// sitting on a common zero of both sides show up as ~0 here.
double bae_singularity_margin(const std::vector<Complex>& roots, const DerivedBoundary& d,
                              const BulkParams& bulk);

double counting_function(double lambda, const BetheRoots& state);
double counting_function_derivative(double lambda, const BetheRoots& state);
double counting_function_inf(const BetheRoots& state);

struct LogSolveOptions {
    double tol = 1e-12;
    int max_iter = 200;
};

BetheRoots solve_log_form(int n_sites, const QuantumNumbers& qn, const DerivedBoundary& d,
                          const BulkParams& bulk,
                          const std::optional<std::vector<double>>& seed = std::nullopt,
                          const LogSolveOptions& opt = {});

struct MultistartOptions {
    int n_starts = 400;
    std::uint64_t seed = 12345;
    double box = 2.0;          // starts uniform in [-box, box]^2 per root
    double accept = 1e-8;      // bae_residual threshold
    double singular = 1e-6;    // bae_singularity_margin threshold
    double dedup = 1e-8;
};

/// All distinct solutions with M roots reachable from the random starts, in canonical
/// form (see canonical_roots), sorted. N <= 3.
std::vector<BetheRoots> solve_all_small(int n_sites, int m_roots, const DerivedBoundary& d,
                                        const BulkParams& bulk, const MultistartOptions& opt = {});

/// Representative modulo the symmetries of the equations: each root is defined up to
/// lambda -> -lambda and lambda -> lambda + i nu; roots are then sorted.
std::vector<Complex> canonical_roots(std::vector<Complex> roots, const BulkParams& bulk);

/// Transfer-matrix eigenvalue from the generic-boundary spectrum formula.
Complex lambda_from_roots(Complex lambda, const BetheRoots& state, Complex kappa);

/// Integers k in (0, h(inf)) not used by the state's quantum numbers.
std::vector<int> find_vacancies(const BetheRoots& state, const QuantumNumbers& qn);

/// Rapidity where the counting function equals `hole_number` (bisection on the
/// positive axis). Throws if h never reaches that value.
HoleState locate_hole(const BetheRoots& sea, int hole_number);

}  // namespace xxzb
