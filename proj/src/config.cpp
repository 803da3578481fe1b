#include "xxzb/config.hpp"

#include "xxzb/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace xxzb {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a finite number: '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

}  // namespace

std::vector<double> GridSpec::points() const {
    const long long n = std::llround((max - min) / step);
    std::vector<double> out;
    for (long long k = 0; k <= n; ++k) out.push_back(min + static_cast<double>(k) * step);
    return out;
}

GridSpec parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw ConfigError("grid must be 'min:max:step', got '" + s + "'");
    GridSpec g{to_double("grid", parts[0]), to_double("grid", parts[1]), to_double("grid", parts[2])};
    if (!(g.step > 0.0)) throw ConfigError("grid step must be positive");
    if (g.max < g.min) throw ConfigError("grid max below min");
    if ((g.max - g.min) / g.step > 1e5) throw ConfigError("grid has more than 1e5 points");
    // the endpoint has to be hit by whole steps
    const double n = (g.max - g.min) / g.step;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
        throw ConfigError("grid (max - min) is not a multiple of step");
    return g;
}

bool RunConfig::uses_pm_form() const { return p_plus.has_value() || p_minus.has_value(); }

bool RunConfig::uses_bare_form() const {
    return xi_re.has_value() || xi_im.has_value() || kappa_re.has_value() || kappa_im.has_value() ||
           theta.has_value();
}

void RunConfig::validate() const {
    if (!(nu > 2.0)) throw ConfigError("nu must be > 2");
    if (uses_pm_form() && uses_bare_form())
        throw ConfigError("give either p_plus/p_minus or xi/kappa/theta, not both");
    if (uses_pm_form() && !(p_plus && p_minus)) throw ConfigError("p_plus and p_minus must be given together");
    if (uses_bare_form() && !(xi_re || xi_im)) throw ConfigError("bare boundary form needs xi_re and/or xi_im");
    for (const double t : {algebra_tol, commutator_tol, bae_tol, amp_tol, quad_tol})
        if (!(t > 0.0)) throw ConfigError("all tolerances must be > 0");
    if (n_sites && *n_sites < 1) throw ConfigError("n_sites must be >= 1");
    if (m_roots && *m_roots < 0) throw ConfigError("m_roots must be >= 0");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (n_starts < 1) throw ConfigError("n_starts must be >= 1");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    if (fault != "none" && fault != "corrupt_r") throw ConfigError("fault must be none or corrupt_r");
    if (out_dir.empty()) throw ConfigError("out must not be empty");
}

BulkParams RunConfig::bulk() const { return BulkParams(nu); }

std::pair<BoundaryParams, DerivedBoundary> RunConfig::boundary() const {
    const BulkParams b = bulk();
    if (uses_bare_form()) {
        BoundaryParams bnd;
        bnd.xi = Complex(xi_re.value_or(0.0), xi_im.value_or(0.0));
        bnd.kappa = Complex(kappa_re.value_or(1.0), kappa_im.value_or(0.0));
        bnd.theta = theta.value_or(0.0);
        return {bnd, derive_pm_from_bare(bnd, b)};
    }
    const double pp = p_plus.value_or(0.8), pm = p_minus.value_or(1.3);
    return {derive_bare_from_pm(pp, pm, b), DerivedBoundary::from_pm(pp, pm)};
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    std::vector<std::pair<std::string, std::string>> r;
    r.emplace_back("nu", fmt_num(nu));
    const auto [bnd, d] = boundary();
    r.emplace_back("boundary_form", json_escape(uses_bare_form() ? "bare" : "pm"));
    r.emplace_back("p_plus_re", fmt_num(d.p_plus.real()));
    r.emplace_back("p_plus_im", fmt_num(d.p_plus.imag()));
    r.emplace_back("p_minus_re", fmt_num(d.p_minus.real()));
    r.emplace_back("p_minus_im", fmt_num(d.p_minus.imag()));
    r.emplace_back("xi_re", fmt_num(bnd.xi.real()));
    r.emplace_back("xi_im", fmt_num(bnd.xi.imag()));
    r.emplace_back("kappa_re", fmt_num(bnd.kappa.real()));
    r.emplace_back("kappa_im", fmt_num(bnd.kappa.imag()));
    r.emplace_back("theta", fmt_num(bnd.theta));
    r.emplace_back("n_sites", n_sites ? std::to_string(*n_sites) : "null");
    r.emplace_back("m_roots", m_roots ? std::to_string(*m_roots) : "null");
    r.emplace_back("algebra_tol", fmt_num(algebra_tol));
    r.emplace_back("commutator_tol", fmt_num(commutator_tol));
    r.emplace_back("bae_tol", fmt_num(bae_tol));
    r.emplace_back("amp_tol", fmt_num(amp_tol));
    r.emplace_back("quad_tol", fmt_num(quad_tol));
    r.emplace_back("n_max", std::to_string(n_max));
    r.emplace_back("n_starts", std::to_string(n_starts));
    r.emplace_back("grid", json_escape(fmt_num(grid.min) + ":" + fmt_num(grid.max) + ":" + fmt_num(grid.step)));
    r.emplace_back("seed", std::to_string(seed));
    r.emplace_back("format", json_escape(format));
    r.emplace_back("fault", json_escape(fault));
    r.emplace_back("max_dense_dim", std::to_string(max_dense_dim()));
    return r;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) throw ConfigError("config key '" + key + "' given twice");
        kv[key] = val;
    }
    return kv;
}

void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "nu") cfg.nu = to_double(k, v);
        else if (k == "p_plus") cfg.p_plus = to_double(k, v);
        else if (k == "p_minus") cfg.p_minus = to_double(k, v);
        else if (k == "xi_re") cfg.xi_re = to_double(k, v);
        else if (k == "xi_im") cfg.xi_im = to_double(k, v);
        else if (k == "kappa_re") cfg.kappa_re = to_double(k, v);
        else if (k == "kappa_im") cfg.kappa_im = to_double(k, v);
        else if (k == "theta") cfg.theta = to_double(k, v);
        else if (k == "n_sites") cfg.n_sites = static_cast<int>(to_int(k, v));
        else if (k == "m_roots") cfg.m_roots = static_cast<int>(to_int(k, v));
        else if (k == "algebra_tol") cfg.algebra_tol = to_double(k, v);
        else if (k == "commutator_tol") cfg.commutator_tol = to_double(k, v);
        else if (k == "bae_tol") cfg.bae_tol = to_double(k, v);
        else if (k == "amp_tol") cfg.amp_tol = to_double(k, v);
        else if (k == "quad_tol") cfg.quad_tol = to_double(k, v);
        else if (k == "n_max") cfg.n_max = static_cast<int>(to_int(k, v));
        else if (k == "n_starts") cfg.n_starts = static_cast<int>(to_int(k, v));
        else if (k == "grid") cfg.grid = parse_grid(v);
        else if (k == "seed") {
            const long long s = to_int(k, v);
            if (s < 0) throw ConfigError("seed must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (k == "out") cfg.out_dir = v;
        else if (k == "format") cfg.format = v;
        else if (k == "record_runtime") cfg.record_runtime = to_bool(k, v);
        else if (k == "fault") cfg.fault = v;
        else throw ConfigError("unknown config key '" + k + "'");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg;
    apply_config_entries(cfg, parse_config_text(buf.str()));
    return cfg;
}

}  // namespace xxzb
