#include "xxzb/suites.hpp"

#include "xxzb/algebra.hpp"
#include "xxzb/bethe.hpp"
#include "xxzb/boundary_params.hpp"
#include "xxzb/charge.hpp"
#include "xxzb/smatrix.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

namespace xxzb {

namespace {

constexpr double kSpectralTol = 1e-8;  // relative match of Bethe eigenvalues against diagonalization
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

Complex rand_complex(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

double rand_real(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

// rows of pre-rendered cells, emitted as CSV or JSON lines
struct Table {
    std::vector<std::string> cols;
    std::vector<bool> text;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    std::string csv() const {
        std::string s;
        for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
            s += "\n";
        }
        return s;
    }

    std::string jsonl() const {
        std::string s;
        for (const auto& r : rows) {
            JsonObject o;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const bool finite_num = !text[i] && r[i] != "nan" && r[i] != "inf" && r[i] != "-inf";
                o.raw(cols[i], finite_num ? r[i] : json_escape(r[i]));
            }
            s += o.render() + "\n";
        }
        return s;
    }
};

void emit(SuiteOutput& out, const std::string& base, const Table& t, const std::string& format) {
    if (format == "csv")
        out.files.emplace_back(base + ".csv", t.csv());
    else
        out.files.emplace_back(base + ".jsonl", t.jsonl());
}

std::vector<double> standard_nus(double cfg_nu) {
    std::vector<double> nus = {2.5, 3.0, 3.7, 5.0};
    if (std::find(nus.begin(), nus.end(), cfg_nu) == nus.end()) nus.push_back(cfg_nu);
    std::sort(nus.begin(), nus.end());
    return nus;
}

Report new_report(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    Report r;
    r.suite = suite;
    r.config = cfg.resolved();
    return r;
}

double rel_diff(Complex a, Complex b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

std::string complex_list(const std::vector<Complex>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + JsonObject().num("re", v[i].real()).num("im", v[i].imag()).render();
    return s + "]";
}

}  // namespace

// ---------------------------------------------------------------- verify-algebra

SuiteOutput cmd_verify_algebra(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("verify-algebra", cfg);
    const auto [bnd, d] = cfg.boundary();
    const BulkParams bulk = cfg.bulk();
    const double tol = cfg.algebra_tol;
    const bool corrupt = cfg.fault == "corrupt_r";
    std::mt19937_64 rng(cfg.seed);

    Table tab{{"check", "nu", "n_sites", "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im", "residual"},
              {true, false, false, false, false, false, false, false},
              {}};
    auto row = [&](const std::string& check, double nu, int n, Complex l1, Complex l2, double res) {
        tab.add({check, fmt_num(nu), std::to_string(n), fmt_num(l1.real()), fmt_num(l1.imag()),
                 fmt_num(l2.real()), fmt_num(l2.imag()), fmt_num(res)});
    };

    for (const double nu : standard_nus(cfg.nu)) {
        const BulkParams b(nu);
        auto r_of = [b, corrupt](Complex l) {
            Matrix r = build_r_matrix(l, b);
            if (corrupt) r(0, 0) *= 1.0 + 1e-3;
            return r;
        };
        Stopwatch sw;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            const double res = check_yang_baxter(l1, l2, r_of);
            worst = std::max(worst, res);
            row("yang_baxter", nu, 0, l1, l2, res);
        }
        rep.gate("yang_baxter nu=" + short_num(nu), 1, worst, tol, "100 random complex pairs in [-1,1]^2")
            .runtime_s = sw.seconds();
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            worst = std::max(worst, check_yang_baxter(l1, l2, bulk, RReading::Pauli));
        }
        rep.diagnostic("yang_baxter pauli_reading", 0, worst, "negative control: sigma^z read with eigenvalues +-1");
    }

    for (const double nu : standard_nus(cfg.nu)) {
        const BulkParams b(nu);
        Stopwatch sw;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            const double res = check_reflection(l1, l2, b, bnd);
            worst = std::max(worst, res);
            row("reflection", nu, 0, l1, l2, res);
        }
        rep.gate("reflection nu=" + short_num(nu), 1, worst, tol, "configured boundary, 100 random pairs")
            .runtime_s = sw.seconds();
    }
    {
        Stopwatch sw;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            BoundaryParams rb;
            rb.xi = rand_complex(rng, -1.0, 1.0);
            rb.kappa = rand_complex(rng, 0.2, 1.0);
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            worst = std::max(worst, check_reflection(l1, l2, bulk, rb));
        }
        rep.gate("reflection random_boundary", 1, worst, tol, "100 random (xi, kappa), theta = 0").runtime_s =
            sw.seconds();
    }
    {
        double worst = 0.0;
        BoundaryParams tb = bnd;
        tb.theta = 0.3;
        for (int i = 0; i < 20; ++i) {
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            worst = std::max(worst, check_reflection(l1, l2, bulk, tb));
        }
        rep.diagnostic("reflection theta=0.3", 0, worst);

        Matrix k(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k(i, j) = rand_complex(rng, -1.0, 1.0);
        const Complex l1 = rand_complex(rng, -1.0, 1.0);
        const Complex l2 = rand_complex(rng, -1.0, 1.0);
        rep.diagnostic("reflection random_constant_k", 0,
                       check_reflection(l1, l2, bulk, [&](Complex) { return k; }),
                       "negative control: generic constant K");
    }

    for (int n = 1; n <= 6; ++n) {
        if ((std::size_t{1} << n) > max_dense_dim()) {
            rep.diagnostic("transfer_commute N=" + std::to_string(n), 1, kNaN, "skipped: above dense-matrix cap");
            continue;
        }
        const SpinChainSpec spec{n, bulk, bnd};
        Stopwatch sw;
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Complex l1 = rand_complex(rng, -1.0, 1.0);
            const Complex l2 = rand_complex(rng, -1.0, 1.0);
            const double res = commutator_residual(build_transfer_matrix(l1, spec), build_transfer_matrix(l2, spec));
            worst = std::max(worst, res);
            row("transfer_commute", cfg.nu, n, l1, l2, res);
        }
        rep.gate("transfer_commute N=" + std::to_string(n), 1, worst, cfg.commutator_tol).runtime_s = sw.seconds();
    }
    for (int n = 2; n <= 4; ++n) {
        const SpinChainSpec spec{n, bulk, bnd};
        Stopwatch sw;
        const Matrix h = build_hamiltonian(spec);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Complex l = rand_complex(rng, -1.0, 1.0);
            const double res = commutator_residual(h, build_transfer_matrix(l, spec));
            worst = std::max(worst, res);
            row("hamiltonian_transfer_commute", cfg.nu, n, l, 0.0, res);
        }
        rep.gate("hamiltonian_transfer_commute N=" + std::to_string(n), 1, worst, cfg.commutator_tol).runtime_s =
            sw.seconds();
    }

    {
        const Complex s = std::sinh(kI * bulk.mu() * bnd.xi);
        const Matrix k0 = build_k_minus(0.0, bulk, bnd);
        rep.gate("k_at_zero", 0, max_norm(k0 - s * pauli::identity()) / std::abs(s), tol,
                 "K(0) = sinh(i mu xi) 1");
        const Complex sr = std::sinh(kI * bulk.mu());
        const Matrix r0 = build_r_matrix(0.0, bulk);
        rep.gate("r_at_zero", 0, max_norm(r0 - sr * permutation_matrix()) / std::abs(sr), tol,
                 "R(0) = sinh(i mu) P");
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Complex l = rand_complex(rng, -1.0, 1.0);
            const auto [e1, e2] = k_eigenvalues_closed_form(l, bulk, d.p_plus, d.p_minus, bnd.kappa);
            worst = std::max(worst, rel_diff(build_k_minus(l, bulk, bnd).determinant(), e1 * e2));
        }
        rep.gate("k_determinant_closed_form", 0, worst, 1e-10);
    }
    {
        const SpinChainSpec spec{3, bulk, bnd};
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Complex l = rand_complex(rng, -1.0, 1.0);
            const Matrix a = build_transfer_matrix(l, spec);
            worst = std::max(worst, max_norm(a - build_transfer_matrix_dense(l, spec)) / max_norm(a));
        }
        rep.gate("transfer_dense_path N=3", 0, worst, tol, "block monodromy vs explicit Kronecker construction");
    }

    emit(out, "algebra_residuals", tab, cfg.format);
    return out;
}

// ---------------------------------------------------------------- spectrum

SuiteOutput cmd_spectrum(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("spectrum", cfg);
    const auto [bnd, d] = cfg.boundary();
    const BulkParams bulk = cfg.bulk();

    std::vector<int> ns = cfg.n_sites ? std::vector<int>{*cfg.n_sites} : std::vector<int>{2, 3};
    for (const int n : ns)
        if (n < 1 || n > 3) throw InvalidInput("spectrum: n_sites must be in 1..3, got " + std::to_string(n));
    if (cfg.m_roots)
        for (const int n : ns)
            if (*cfg.m_roots > n)
                throw InvalidInput("spectrum: M = " + std::to_string(*cfg.m_roots) + " out of range {0.." +
                                   std::to_string(n) + "}");

    const std::vector<Complex> points = {{0.31, 0.17}, {-0.42, 0.23}, {0.77, -0.11}, {0.05, 0.61}, {1.13, 0.29}};
    const Complex lambda_ref(0.37, 0.21);

    Table tab{{"nu", "n_sites", "m_roots", "reference", "solution", "root_index", "re", "im", "bae_residual",
               "soundness"},
              {false, false, false, true, false, false, false, false, false, false},
              {}};
    std::string jl;

    for (const int n : ns) {
        Stopwatch sw;
        const SpinChainSpec spec{n, bulk, bnd};
        std::vector<std::vector<Complex>> evs;
        for (const Complex p : points) evs.push_back(diagonalize(build_transfer_matrix(p, spec)));
        const Matrix ef = transfer_eigenfunctions(spec, lambda_ref, points);
        const int dim = static_cast<int>(ef.cols());
        std::vector<bool> covered(dim, false);

        double worst_sound = 0.0, calib = 0.0;
        int n_solutions = 0;
        for (const bool dual : {false, true}) {
            const DerivedBoundary set = dual ? d.dual() : d;
            const char* ref = dual ? "-p" : "+p";
            for (int m = 0; m <= n; ++m) {
                if (cfg.m_roots && m != *cfg.m_roots) continue;
                MultistartOptions opt;
                opt.n_starts = cfg.n_starts;
                opt.seed = cfg.seed;
                opt.accept = cfg.bae_tol;
                const auto sols = solve_all_small(n, m, set, bulk, opt);
                for (std::size_t si = 0; si < sols.size(); ++si) {
                    const auto& sol = sols[si];
                    ++n_solutions;
                    std::vector<Complex> lam(points.size());
                    double sound = 0.0;
                    try {
                        for (std::size_t p = 0; p < points.size(); ++p) {
                            lam[p] = lambda_from_roots(points[p], sol, bnd.kappa);
                            double best = std::numeric_limits<double>::infinity();
                            for (const Complex e : evs[p]) best = std::min(best, rel_diff(lam[p], e));
                            sound = std::max(sound, best);
                        }
                    } catch (const NumericalError&) {
                        sound = std::numeric_limits<double>::infinity();
                    }
                    worst_sound = std::max(worst_sound, sound);
                    if (std::isfinite(sound)) {
                        for (int j = 0; j < dim; ++j) {
                            double dev = 0.0;
                            for (std::size_t p = 0; p < points.size(); ++p)
                                dev = std::max(dev, rel_diff(ef(static_cast<Eigen::Index>(p), j), lam[p]));
                            if (dev < kSpectralTol) covered[j] = true;
                            if (m == 0 && dev < kSpectralTol)
                                for (std::size_t p = 0; p < points.size(); ++p)
                                    calib = std::max(calib, std::abs(lam[p] / ef(static_cast<Eigen::Index>(p), j) - 1.0));
                        }
                    }
                    const double res = bae_residual(sol);
                    if (sol.roots.empty())
                        tab.add({fmt_num(bulk.nu()), std::to_string(n), "0", ref, std::to_string(si), "-1", "nan",
                                 "nan", fmt_num(res), fmt_num(sound)});
                    for (std::size_t k = 0; k < sol.roots.size(); ++k)
                        tab.add({fmt_num(bulk.nu()), std::to_string(n), std::to_string(m), ref, std::to_string(si),
                                 std::to_string(k), fmt_num(sol.roots[k].real()), fmt_num(sol.roots[k].imag()),
                                 fmt_num(res), fmt_num(sound)});
                    jl += JsonObject()
                              .num("nu", bulk.nu())
                              .integer("N", n)
                              .integer("M", m)
                              .str("reference", ref)
                              .raw("p_plus", complex_list({set.p_plus}))
                              .raw("p_minus", complex_list({set.p_minus}))
                              .raw("quantum_numbers", "null")
                              .raw("roots", complex_list(sol.roots))
                              .num("residual", res)
                              .num("soundness", sound)
                              .render() +
                          "\n";
                }
            }
        }
        const std::string tag = "N=" + std::to_string(n);
        rep.require("solutions_found " + tag, 2, n_solutions > 0, n_solutions);
        rep.gate("soundness " + tag, 2, worst_sound, kSpectralTol,
                 "worst relative distance of a Bethe eigenvalue to the diagonalized spectrum over 5 points")
            .runtime_s = sw.seconds();
        const double frac = static_cast<double>(std::count(covered.begin(), covered.end(), true)) / dim;
        rep.diagnostic("coverage " + tag, 2, frac, "fraction of transfer eigenvalues reproduced using +p and -p");
        rep.diagnostic("calibration_deviation " + tag, 0, calib, "max |Lambda/eigenvalue - 1| for M = 0");
    }
    if (cfg.format == "csv")
        out.files.emplace_back("spectrum_roots.csv", tab.csv());
    else
        out.files.emplace_back("spectrum_roots.jsonl", jl);
    return out;
}

// ---------------------------------------------------------------- amplitude

SuiteOutput cmd_amplitude(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("amplitude", cfg);
    const auto [bnd, d] = cfg.boundary();
    const BulkParams bulk = cfg.bulk();
    const Complex kappa = bnd.kappa;
    const auto grid = cfg.grid.points();
    const std::vector<double> xs = {0.3, 0.7, 1.2};
    const double spot_tol = 1e-10;

    const std::vector<std::string> cols = {"lambda_tilde", "nu", "p_plus", "p_minus", "re", "im", "method", "err"};
    const std::vector<bool> text = {false, false, false, false, false, false, true, false};
    Table t_k0{cols, text, {}}, t_k1{cols, text, {}}, t_full{cols, text, {}}, t_ratio{cols, text, {}};
    std::string jl;
    auto add = [&](Table& t, const char* qty, double l, double nu, double pp, double pm, const Amplitude& a) {
        t.add({fmt_num(l), fmt_num(nu), fmt_num(pp), fmt_num(pm), fmt_num(a.value.real()), fmt_num(a.value.imag()),
               to_string(a.method), fmt_num(a.err_estimate)});
        jl += JsonObject()
                  .str("quantity", qty)
                  .num("lambda_tilde", l)
                  .num("nu", nu)
                  .num("p_plus", pp)
                  .num("p_minus", pm)
                  .num("re", a.value.real())
                  .num("im", a.value.imag())
                  .str("method", to_string(a.method))
                  .num("err", a.err_estimate)
                  .render() +
              "\n";
    };

    const double cfg_pp = d.p_plus.real(), cfg_pm = d.p_minus.real();
    double k0_diff = 0.0, k1_diff = 0.0, k0_unit = 0.0, k0_odd = 0.0, k0_zero = 0.0, k1_zero = 0.0;
    int n_cmp = 0, n_bounded = 0;
    Stopwatch sw_cross;
    for (const double nu : standard_nus(cfg.nu)) {
        const BulkParams b(nu);
        for (const double l : grid) {
            const auto ki = k0_integral(l, b, cfg.quad_tol);
            const auto kg = k0_gamma(l, b, cfg.n_max);
            add(t_k0, "k0", l, nu, cfg_pp, cfg_pm, ki);
            add(t_k0, "k0", l, nu, cfg_pp, cfg_pm, kg);
            const double diff = std::abs(ki.value - kg.value);
            k0_diff = std::max(k0_diff, diff);
            ++n_cmp;
            n_bounded += diff <= ki.err_estimate + kg.err_estimate;
            k0_unit = std::max({k0_unit, std::abs(std::abs(ki.value) - 1.0), std::abs(std::abs(kg.value) - 1.0)});
            if (l != 0.0) {
                const auto km = k0_integral(-l, b, cfg.quad_tol);
                k0_odd = std::max(k0_odd, std::abs(ki.value * km.value - 1.0));
            } else {
                k0_zero = std::max({k0_zero, std::abs(ki.value - 1.0), std::abs(kg.value - 1.0)});
            }
            for (const double x : xs) {
                const auto ai = k1_integral(l, x, kappa, b, cfg.quad_tol);
                const auto ag = k1_gamma(l, x, kappa, b, cfg.n_max);
                add(t_k1, "k1", l, nu, x, x, ai);
                add(t_k1, "k1", l, nu, x, x, ag);
                const double dk = std::abs(ai.value - ag.value);
                k1_diff = std::max(k1_diff, dk);
                ++n_cmp;
                n_bounded += dk <= ai.err_estimate + ag.err_estimate;
                if (l == 0.0) {
                    const Complex closed = kPi * std::sqrt(kI / (2.0 * kappa)) /
                                           std::cos(kPi * (nu - 2.0 * x) / (2.0 * (nu - 1.0)));
                    k1_zero = std::max({k1_zero, std::abs(ai.value - closed), std::abs(ag.value - closed)});
                }
            }
        }
    }
    const double t_cross = sw_cross.seconds();
    rep.gate("k0 integral_vs_gamma", 3, k0_diff, cfg.amp_tol, "max abs difference over the lambda, nu grid")
        .runtime_s = t_cross;
    rep.gate("k1 integral_vs_gamma", 3, k1_diff, cfg.amp_tol, "max abs difference over the lambda, nu, x grid")
        .runtime_s = t_cross;
    rep.require("error_estimates_bound_discrepancy", 0, n_bounded >= 0.99 * n_cmp,
                static_cast<double>(n_bounded) / n_cmp, "fraction of grid points with |diff| <= err_a + err_b");

    const bool has_zero = std::find(grid.begin(), grid.end(), 0.0) != grid.end();
    if (has_zero) {
        rep.gate("k0 at_zero", 4, k0_zero, spot_tol, "k0(0) = 1, both methods");
        rep.gate("k1 at_zero_closed_form", 4, k1_zero, spot_tol,
                 "k1(0, x) = pi (-2 i kappa)^(-1/2) / cos[pi (nu - 2x) / (2 (nu - 1))], both methods");
    }
    rep.gate("k0 unimodular", 4, k0_unit, spot_tol, "| |k0| - 1 | on the grid, both methods");
    rep.gate("k0 unitarity", 0, k0_odd, spot_tol, "|k0(l) k0(-l) - 1|");

    // full first eigenvalue and the duality ratio need real p+- inside the kernel window
    bool pm_ok = d.is_real();
    std::string why;
    try {
        require_kernel_window(d.p_plus, bulk, "p_plus");
        require_kernel_window(d.p_minus, bulk, "p_minus");
    } catch (const InvalidInput& e) {
        pm_ok = false;
        why = e.what();
    }
    if (pm_ok) {
        double full_diff = 0.0, full_zero = 0.0, ratio_unit = 0.0, ratio_zero = 0.0, eig_res = 0.0;
        AmpSettings s{cfg.quad_tol, cfg.n_max};
        for (const double l : grid) {
            const auto fi = k1_full(l, d, kappa, bulk, AmpMethod::Integral, s);
            const auto fg = k1_full(l, d, kappa, bulk, AmpMethod::GammaProduct, s);
            add(t_full, "k1_full", l, bulk.nu(), cfg_pp, cfg_pm, fi);
            add(t_full, "k1_full", l, bulk.nu(), cfg_pp, cfg_pm, fg);
            full_diff = std::max(full_diff, std::abs(fi.value - fg.value));
            Amplitude r;
            r.value = k2_over_k1(l, d, bulk);
            r.method = AmpMethod::ClosedForm;
            add(t_ratio, "k2_over_k1", l, bulk.nu(), cfg_pp, cfg_pm, r);
            ratio_unit = std::max(ratio_unit, std::abs(std::abs(r.value) - 1.0));
            eig_res = std::max(eig_res, k2_over_k1_eigen_residual(l, d, bulk));
            if (l == 0.0) {
                ratio_zero = std::abs(r.value - 1.0);
                full_zero = std::max(std::abs(fi.value - 1.0), std::abs(fg.value - 1.0));
            }
        }
        rep.gate("k1_full integral_vs_gamma", 0, full_diff, cfg.amp_tol);
        if (has_zero) {
            rep.gate("k2_over_k1 at_zero", 4, ratio_zero, spot_tol);
            rep.gate("k1_full at_zero", 0, full_zero, spot_tol, "composition of the k1(0, x) closed forms gives 1");
        }
        rep.gate("k2_over_k1 unimodular", 4, ratio_unit, spot_tol);
        rep.diagnostic("k2_over_k1 vs_k_eigenvalue_ratio", 0, eig_res,
                       "K-matrix eigenvalue ratio at coupling pi/(nu-1), parameters nu - p - 1/2");
    } else {
        rep.diagnostic("k1_full skipped", 0, kNaN, why.empty() ? "p+- not real" : why);
    }

    {
        const auto trend = diagonal_limit_trend(0.5, bulk, {1.0, 2.0, 4.0, 8.0, 16.0}, 1e-10);
        std::string det = "x = nu/2 - i t, |2 I(t)|:";
        bool monotone = true;
        for (std::size_t i = 0; i < trend.size(); ++i) {
            det += " t=" + short_num(trend[i].t) + " -> " + fmt_num(trend[i].exponent_abs) + ";";
            if (i && std::abs(trend[i].exponent_abs - trend[i - 1].exponent_abs) >
                         std::abs(trend[i - 1].exponent_abs - (i > 1 ? trend[i - 2].exponent_abs : 0.0)) + 1e-12)
                monotone = false;
        }
        det += monotone ? " increments shrink" : " increments not monotone";
        rep.diagnostic("diagonal_limit_trend", 0, trend.back().exponent_abs, det);
    }
    {
        // the partial products underflow long before n_max, so compare logs
        const auto terms = k1_gamma_terms_literal(0.5, 0.7, bulk);
        const double slope = 2.0 / (bulk.nu() - 1.0);
        const Complex a = gamma_product_log(terms, slope, cfg.n_max, false).log_value;
        const Complex b2 = gamma_product_log(terms, slope, 2 * cfg.n_max, false).log_value;
        rep.diagnostic("k1 literal_product_drift", 0, std::abs(b2 - a),
                       "|log P(2n) - log P(n)| of the unnormalized displayed product; its factors fall off "
                       "like n^(-4/(nu-1)), so it does not converge");
    }

    out.files.emplace_back("k0.csv", t_k0.csv());
    out.files.emplace_back("k1.csv", t_k1.csv());
    if (pm_ok) {
        out.files.emplace_back("k1_full.csv", t_full.csv());
        out.files.emplace_back("k2_over_k1.csv", t_ratio.csv());
    }
    out.files.emplace_back("amplitudes.jsonl", jl);
    return out;
}

// ---------------------------------------------------------------- charge

SuiteOutput cmd_charge(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("charge", cfg);
    const auto [bnd, d] = cfg.boundary();
    const BulkParams bulk = cfg.bulk();
    std::mt19937_64 rng(cfg.seed);
    const std::vector<int> ns = cfg.n_sites ? std::vector<int>{*cfg.n_sites} : std::vector<int>{1, 2, 3, 4};

    Table tab{{"n_sites", "draw", "m_roots", "spin", "multiplicity", "re", "im"},
              {false, false, false, false, false, false, false},
              {}};

    for (const int n : ns) {
        chain_dim(n);
        Stopwatch sw;
        const std::string tag = "N=" + std::to_string(n);
        double worst = 0.0;
        for (int draw = 0; draw <= 5; ++draw) {
            BoundaryParams b = bnd;
            DerivedBoundary dd = d;
            if (draw > 0) {
                b.xi = rand_complex(rng, -1.0, 1.0);
                b.kappa = rand_complex(rng, 0.2, 1.0);
                b.theta = 0.0;
                dd = derive_pm_from_bare(b, bulk);
            }
            const auto levels = predicted_q_spectrum(n, dd.beta_gamma_sum, bulk);
            const double dist = multiset_distance(diagonalize(build_q_charge(n, bulk, b)), expand_levels(levels));
            worst = std::max(worst, dist);
            for (const auto& lv : levels)
                tab.add({std::to_string(n), std::to_string(draw), std::to_string(lv.m_roots), fmt_num(lv.spin),
                         std::to_string(lv.multiplicity), fmt_num(lv.value.real()), fmt_num(lv.value.imag())});
        }
        rep.gate("q_spectrum " + tag, 8, worst, 1e-10, "configured boundary plus 5 random (xi, kappa)")
            .runtime_s = sw.seconds();

        if (n >= 2 && n <= 4) {
            const SpinChainSpec spec{n, bulk, bnd};
            const Matrix q = build_q_charge(n, bulk, bnd);
            double ct = 0.0;
            for (int i = 0; i < 3; ++i)
                ct = std::max(ct, commutator_residual(q, build_transfer_matrix(rand_complex(rng, -1.0, 1.0), spec)));
            rep.diagnostic("q_transfer_commutator " + tag, 8, ct);
            rep.diagnostic("q_hamiltonian_commutator " + tag, 0, commutator_residual(q, build_hamiltonian(spec)));
        }
        const auto g = build_coproducts(n, bulk);
        const Complex qq = bulk.q();
        const double qc = max_norm(g.k_op * g.e_op * g.k_op.inverse() - qq * g.e_op) +
                          max_norm(g.k_op * g.f_op * g.k_op.inverse() - g.f_op / qq);
        rep.gate("coproduct_q_commutation " + tag, 0, qc, 1e-12, "K E K^-1 = q E, K F K^-1 = F/q");
    }
    emit(out, "charge_levels", tab, cfg.format);
    return out;
}

// ---------------------------------------------------------------- density

SuiteOutput cmd_density(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("density", cfg);
    const auto [bnd, d] = cfg.boundary();
    (void)bnd;
    const BulkParams bulk = cfg.bulk();
    require_kernel_window(d.p_plus, bulk, "p_plus");
    require_kernel_window(d.p_minus, bulk, "p_minus");
    const int n_main = cfg.n_sites.value_or(201);
    if (n_main < 21) throw InvalidInput("density: n_sites must be >= 21");
    const int n_ref = (n_main / 2) | 1;
    const double w_lo = 0.1, w_hi = 1.0;

    Table tab{{"n_sites", "lambda", "sigma_empirical", "sigma_theory", "rel_err"},
              {false, false, false, false, false},
              {}};

    auto sup_for = [&](int n, double& seconds) {
        Stopwatch sw;
        const int m = n / 2;
        QuantumNumbers qn;
        for (int i = 1; i <= m; ++i) qn.values.push_back(i);
        LogSolveOptions lo;
        const BetheRoots sea = solve_log_form(n, qn, d, bulk, std::nullopt, lo);
        rep.gate("sea_bae_residual N=" + std::to_string(n), 0, bae_residual(sea), cfg.bae_tol);

        std::optional<double> hole;
        std::string hole_note = "no vacancy below h(inf); hole term omitted";
        const auto vac = find_vacancies(sea, qn);
        if (!vac.empty()) {
            hole = locate_hole(sea, vac.front()).hole_rapidity;
            hole_note = "hole at lambda = " + fmt_num(*hole);
        }
        std::vector<double> r;
        for (const Complex z : sea.roots) r.push_back(z.real());
        double sup = 0.0;
        for (std::size_t j = 0; j + 1 < r.size(); ++j) {
            const double mid = 0.5 * (r[j] + r[j + 1]);
            if (mid < w_lo || mid > w_hi) continue;
            const double emp = 1.0 / (n * (r[j + 1] - r[j]));
            const double th = density(mid, n, d, bulk, hole).value;
            const double rel = std::abs(emp - th) / th;
            sup = std::max(sup, rel);
            tab.add({std::to_string(n), fmt_num(mid), fmt_num(emp), fmt_num(th), fmt_num(rel)});
        }
        rep.diagnostic("hole N=" + std::to_string(n), 0, hole ? *hole : kNaN, hole_note);
        seconds = sw.seconds();
        return sup;
    };

    double t_main = 0.0, t_ref = 0.0;
    const double sup_main = sup_for(n_main, t_main);
    const double sup_ref = sup_for(n_ref, t_ref);
    rep.gate("density_sup_rel N=" + std::to_string(n_main), 6, sup_main, 0.02,
             "relative sup-norm on rapidity window [0.1, 1.0]")
        .runtime_s = t_main;
    rep.require("density_finite_size_trend", 6, sup_main < sup_ref, sup_ref,
                "N=" + std::to_string(n_ref) + " discrepancy must exceed the N=" + std::to_string(n_main) + " one")
        .runtime_s = t_ref;

    {
        double worst = 0.0;
        for (const double nu : standard_nus(cfg.nu)) {
            const BulkParams b(nu);
            for (int i = 0; i < 1000; ++i) {
                const double w = -20.0 + 40.0 * i / 999.0;
                worst = std::max(worst, std::abs(kernel_eps_hat(w, b) - kernel_eps_hat_closed(w)));
            }
        }
        rep.gate("kernel_identity", 5, worst, 1e-14, "a1/(1 + a2) = 1/(2 cosh(w/2)) on 1000 points in [-20, 20]");
    }
    {
        double worst = 0.0;
        for (int i = 0; i <= 16; ++i) {
            const double l = 0.25 * i - 2.0;
            worst = std::max(worst, std::abs(hole_energy_quadrature(l, bulk, 1e-12).value - hole_energy(l)));
        }
        rep.gate("hole_energy_closed_form", 5, worst, 1e-10, "quadrature inverse transform vs 1/(2 cosh(pi l))");
        const auto span = quad_semi_infinite([](double l) { return 4.0 * kPi * hole_energy(l); }, kPi, 1e-13);
        rep.gate("hole_momentum_span", 0, std::abs(span.value - kPi), 1e-10, "p(+inf) - p(-inf) = pi");
        rep.gate("hole_momentum_zero", 0, std::abs(hole_momentum(0.0) - kPi / 2), 1e-15);
    }

    emit(out, "density", tab, cfg.format);
    return out;
}

// ---------------------------------------------------------------- map-params

SuiteOutput cmd_map_params(const RunConfig& cfg) {
    SuiteOutput out;
    Report& rep = out.report;
    rep = new_report("map-params", cfg);
    const auto [bnd, d] = cfg.boundary();
    const BulkParams bulk = cfg.bulk();
    const double nu = bulk.nu();
    std::mt19937_64 rng(cfg.seed);
    const double tol = 1e-12;

    Table tab{{"sample", "p_plus_re", "p_plus_im", "p_minus_re", "p_minus_im", "xi_re", "xi_im", "kappa_re",
               "kappa_im", "roundtrip", "barecon"},
              {false, false, false, false, false, false, false, false, false, false, false},
              {}};
    auto row = [&](int i, const DerivedBoundary& dd, const BoundaryParams& b, double rt, double bc) {
        tab.add({std::to_string(i), fmt_num(dd.p_plus.real()), fmt_num(dd.p_plus.imag()), fmt_num(dd.p_minus.real()),
                 fmt_num(dd.p_minus.imag()), fmt_num(b.xi.real()), fmt_num(b.xi.imag()), fmt_num(b.kappa.real()),
                 fmt_num(b.kappa.imag()), fmt_num(rt), fmt_num(bc)});
    };
    // p+- are fixed only up to exchange, a common sign and p+- -> p+- +- nu (which flips
    // both cosh signs), so compare cosh^2 as a pair and the product cosh(p+) cosh(p-)
    auto pm_distance = [&](const DerivedBoundary& a, const DerivedBoundary& b) {
        const double mu = bulk.mu();
        const Complex ap = std::cosh(kI * mu * a.p_plus), am = std::cosh(kI * mu * a.p_minus);
        const Complex bp = std::cosh(kI * mu * b.p_plus), bm = std::cosh(kI * mu * b.p_minus);
        return std::max(multiset_distance({ap * ap, am * am}, {bp * bp, bm * bm}), std::abs(ap * am - bp * bm));
    };

    row(0, d, bnd, param_roundtrip_residual(bnd, d, bulk), barecon_residuals(bnd, d, bulk).max());
    rep.gate("config barecon", 7, barecon_residuals(bnd, d, bulk).max(), tol);
    rep.gate("config roundtrip", 7, param_roundtrip_residual(bnd, d, bulk), tol);

    double w_bare = 0.0, w_pm = 0.0, w_bc = 0.0, w_rt = 0.0;
    for (int i = 1; i <= 100; ++i) {
        // bare -> derived -> bare, xi inside the canonical strip
        BoundaryParams b;
        b.xi = Complex(rand_real(rng, -0.45 * nu, 0.45 * nu), rand_real(rng, -1.0, 1.0));
        b.kappa = rand_complex(rng, -1.0, 1.0);
        if (std::abs(b.kappa) < 0.1) b.kappa += 0.5;
        const DerivedBoundary dd = derive_pm_from_bare(b, bulk);
        const BoundaryParams back = derive_bare_from_pm(dd.p_plus, dd.p_minus, bulk);
        w_bare = std::max({w_bare, rel_diff(back.xi, b.xi), rel_diff(back.kappa, b.kappa)});
        const double bc = barecon_residuals(b, dd, bulk).max();
        const double rt = param_roundtrip_residual(b, dd, bulk);
        w_bc = std::max(w_bc, bc);
        w_rt = std::max(w_rt, rt);
        row(i, dd, b, rt, bc);
    }
    for (int i = 101; i <= 200; ++i) {
        // derived (real, kernel window) -> bare -> derived
        const DerivedBoundary dd =
            DerivedBoundary::from_pm(rand_real(rng, -0.45, nu - 0.55), rand_real(rng, -0.45, nu - 0.55));
        BoundaryParams b;
        try {
            b = derive_bare_from_pm(dd.p_plus, dd.p_minus, bulk);
        } catch (const InvalidInput&) {
            continue;  // kappa divergence surface, measure zero
        }
        const DerivedBoundary again = derive_pm_from_bare(b, bulk);
        w_pm = std::max(w_pm, pm_distance(dd, again));
        const double bc = barecon_residuals(b, dd, bulk).max();
        const double rt = param_roundtrip_residual(b, again, bulk);
        w_bc = std::max(w_bc, bc);
        w_rt = std::max(w_rt, rt);
        row(i, dd, b, rt, bc);
    }
    rep.gate("roundtrip bare_derived_bare", 7, w_bare, tol, "100 random complex (xi, kappa)");
    rep.gate("roundtrip derived_bare_derived", 7, w_pm, tol, "100 random real p+- in the kernel window");
    rep.gate("barecon identities", 7, w_bc, tol, "both identities over all samples");
    rep.gate("roundtrip exponential_identities", 7, w_rt, tol);

    const GZParams gz = map_to_gz(bulk, d, bnd);
    rep.diagnostic("gz constraint_product", 7, std::abs(gz.constraint_product));
    rep.diagnostic("gz constraint_squares", 7, std::abs(gz.constraint_squares));
    const GZInverse inv = map_from_gz(bulk, gz);
    const double inv_err = std::max({std::abs(inv.p_plus - d.p_plus), std::abs(inv.p_minus - d.p_minus),
                                     std::abs(inv.xi - bnd.xi), std::abs(inv.kappa - bnd.kappa)});
    rep.gate("gz inverse_map", 0, inv_err, tol);
    rep.diagnostic("branch_cut", 0, d.on_branch_cut ? 1.0 : 0.0, "1 when an inverse cosh was taken on its cut");

    std::string params = JsonObject()
                             .num("nu", nu)
                             .raw("p_plus", complex_list({d.p_plus}))
                             .raw("p_minus", complex_list({d.p_minus}))
                             .raw("beta_gamma_sum", complex_list({d.beta_gamma_sum}))
                             .raw("zeta", complex_list({d.zeta}))
                             .raw("xi", complex_list({bnd.xi}))
                             .raw("kappa", complex_list({bnd.kappa}))
                             .num("theta", bnd.theta)
                             .num("gz_lambda", gz.lambda_gz)
                             .raw("gz_eta", complex_list({gz.eta}))
                             .raw("gz_vartheta", complex_list({gz.vartheta}))
                             .raw("gz_xi_prime", complex_list({gz.xi_prime}))
                             .raw("gz_k", complex_list({gz.k_gz}))
                             .render() +
                         "\n";
    out.files.emplace_back("params.json", params);
    emit(out, "param_samples", tab, cfg.format);
    return out;
}

// ---------------------------------------------------------------- dispatch

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"verify-algebra", "spectrum", "amplitude",
                                                   "charge",         "density",  "map-params"};
    return names;
}

SuiteOutput run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "verify-algebra") return cmd_verify_algebra(cfg);
    if (name == "spectrum") return cmd_spectrum(cfg);
    if (name == "amplitude") return cmd_amplitude(cfg);
    if (name == "charge") return cmd_charge(cfg);
    if (name == "density") return cmd_density(cfg);
    if (name == "map-params") return cmd_map_params(cfg);
    throw ConfigError("unknown suite '" + name + "'");
}

std::vector<std::string> write_outputs(SuiteOutput& out, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    out.report.files.clear();
    for (const auto& [name, content] : out.files) {
        const std::string p = (fs::path(cfg.out_dir) / name).string();
        write_text_file(p, content);
        out.report.files.push_back(name);
        paths.push_back(p);
    }
    const std::string rp = (fs::path(cfg.out_dir) / (out.report.suite + "_report.json")).string();
    write_text_file(rp, out.report.to_json(cfg.record_runtime));
    paths.insert(paths.begin(), rp);
    return paths;
}

}  // namespace xxzb
