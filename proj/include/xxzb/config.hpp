// Run configuration: key = value files with # comments, overridden by CLI flags.

#pragma once

#include "xxzb/boundary_params.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xxzb {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridSpec {
    double min = 0.0;
    double max = 2.0;
    double step = 0.25;
    std::vector<double> points() const;
};

GridSpec parse_grid(const std::string& s);

struct RunConfig {
    double nu = 3.7;

    // boundary, exactly one form; neither set means the default p+- = (0.8, 1.3)
    std::optional<double> p_plus, p_minus;
    std::optional<double> xi_re, xi_im, kappa_re, kappa_im, theta;

    std::optional<int> n_sites;  // suite default when empty
    std::optional<int> m_roots;  // spectrum only: restrict to one sector

    double algebra_tol = 1e-12;
    double commutator_tol = 1e-10;
    double bae_tol = 1e-8;
    double amp_tol = 1e-8;
    double quad_tol = 1e-12;
    int n_max = 200;
    int n_starts = 400;
    GridSpec grid{};
    std::uint64_t seed = 12345;
    std::string out_dir = "out";
    std::string format = "json";
    bool record_runtime = false;
    std::string fault = "none";  // "corrupt_r" perturbs one R entry (negative control)

    bool uses_pm_form() const;
    bool uses_bare_form() const;
    /// Throws ConfigError on an invalid combination or value.
    void validate() const;

    BulkParams bulk() const;
    /// Bare parameters and derived p+- for the configured boundary.
    std::pair<BoundaryParams, DerivedBoundary> boundary() const;

    /// Resolved config as (key, rendered JSON value) pairs for report headers.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parses `key = value` lines; unknown keys and bad values raise ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);
void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& kv);
RunConfig load_config_file(const std::string& path);

}  // namespace xxzb
