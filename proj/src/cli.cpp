#include "xxzb/suites.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace xxzb {

namespace {

struct Flags {
    std::string config;
    double nu = 0, p_plus = 0, p_minus = 0, xi_re = 0, xi_im = 0, kappa_re = 0, kappa_im = 0;
    int n_sites = 0, m_roots = 0, n_starts = 0;
    long long seed = 0;
    std::string grid, out, format, fault;
    bool record_runtime = false;
};

struct Registered {
    CLI::Option *nu, *p_plus, *p_minus, *xi_re, *xi_im, *kappa_re, *kappa_im, *n_sites, *m_roots, *n_starts, *seed,
        *grid, *out, *format, *fault;
};

Registered add_flags(CLI::App* sub, Flags& f) {
    Registered r{};
    sub->add_option("--config", f.config, "key = value config file");
    r.nu = sub->add_option("--nu", f.nu, "anisotropy nu > 2 (mu = pi/nu)");
    r.p_plus = sub->add_option("--p-plus", f.p_plus, "boundary parameter p+");
    r.p_minus = sub->add_option("--p-minus", f.p_minus, "boundary parameter p-");
    r.xi_re = sub->add_option("--xi-re", f.xi_re, "Re xi (bare form)");
    r.xi_im = sub->add_option("--xi-im", f.xi_im, "Im xi (bare form)");
    r.kappa_re = sub->add_option("--kappa-re", f.kappa_re, "Re kappa (bare form)");
    r.kappa_im = sub->add_option("--kappa-im", f.kappa_im, "Im kappa (bare form)");
    r.n_sites = sub->add_option("--n-sites", f.n_sites, "chain length");
    r.m_roots = sub->add_option("--m-roots", f.m_roots, "spectrum: restrict to M roots");
    r.n_starts = sub->add_option("--n-starts", f.n_starts, "spectrum: multistart count");
    r.seed = sub->add_option("--seed", f.seed, "random seed");
    r.grid = sub->add_option("--grid", f.grid, "lambda grid min:max:step");
    r.out = sub->add_option("--out", f.out, "output directory");
    r.format = sub->add_option("--format", f.format, "data file format")->check(CLI::IsMember({"json", "csv"}));
    r.fault = sub->add_option("--fault", f.fault, "fault injection (corrupt_r)");
    sub->add_flag("--record-runtime", f.record_runtime, "store per-check runtimes in the report");
    return r;
}

RunConfig resolve(const Flags& f, const Registered& r) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config_file(f.config);
    if (r.nu->count()) cfg.nu = f.nu;
    if (r.p_plus->count()) cfg.p_plus = f.p_plus;
    if (r.p_minus->count()) cfg.p_minus = f.p_minus;
    if (r.xi_re->count()) cfg.xi_re = f.xi_re;
    if (r.xi_im->count()) cfg.xi_im = f.xi_im;
    if (r.kappa_re->count()) cfg.kappa_re = f.kappa_re;
    if (r.kappa_im->count()) cfg.kappa_im = f.kappa_im;
    if (r.n_sites->count()) cfg.n_sites = f.n_sites;
    if (r.m_roots->count()) cfg.m_roots = f.m_roots;
    if (r.n_starts->count()) cfg.n_starts = f.n_starts;
    if (r.seed->count()) {
        if (f.seed < 0) throw ConfigError("seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(f.seed);
    }
    if (r.grid->count()) cfg.grid = parse_grid(f.grid);
    if (r.out->count()) cfg.out_dir = f.out;
    if (r.format->count()) cfg.format = f.format;
    if (r.fault->count()) cfg.fault = f.fault;
    if (f.record_runtime) cfg.record_runtime = true;
    cfg.validate();
    return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Open XXZ chain with a non-diagonal boundary: verification suites"};
    app.require_subcommand(1);
    Flags f;
    std::vector<std::pair<CLI::App*, Registered>> subs;
    const std::map<std::string, std::string> blurb = {
        {"verify-algebra", "Yang-Baxter, reflection and commutation residuals"},
        {"spectrum", "Bethe solutions against exact diagonalization, N <= 3"},
        {"amplitude", "reflection amplitudes, integral vs Gamma product"},
        {"charge", "spectrum of the nonlocal charge Q, N <= 4"},
        {"density", "root density of the ground-state sea vs the Fourier prediction"},
        {"map-params", "bare <-> derived <-> GZ parameter round trips"}};
    for (const auto& name : suite_names()) {
        CLI::App* s = app.add_subcommand(name, blurb.count(name) ? blurb.at(name) : "");
        subs.emplace_back(s, add_flags(s, f));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string name;
    RunConfig cfg;
    try {
        for (const auto& [s, r] : subs)
            if (s->parsed()) {
                name = s->get_name();
                cfg = resolve(f, r);
            }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    SuiteOutput res;
    try {
        res = run_suite(name, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    }

    try {
        const auto paths = write_outputs(res, cfg);
        for (const auto& c : res.report.checks) {
            std::cout << to_string(c.status) << "  " << c.name << "  measured " << fmt_num(c.measured);
            if (c.threshold) std::cout << "  threshold " << fmt_num(*c.threshold);
            std::cout << "\n";
        }
        for (const auto& p : paths) std::cout << "wrote " << p << "\n";
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 1;
    }
    const bool ok = res.report.passed();
    std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace xxzb
