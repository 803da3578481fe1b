#include "xxzb/bethe.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace xxzb {

namespace {

Complex checked_ratio(Complex num, Complex den, const char* what) {
    if (std::abs(den) <= 1e-15 * (1.0 + std::abs(num))) {
        std::ostringstream os;
        os << what << ": pole (|denominator| = " << std::abs(den) << ")";
        throw NumericalError(os.str());
    }
    return num / den;
}

void require_q_window(double n, const BulkParams& bulk) {
    if (!(n > 0.0 && n < 2.0 * bulk.nu())) {
        std::ostringstream os;
        os << "q_n needs 0 < n < 2 nu (n = " << n << ", nu = " << bulk.nu() << ")";
        throw InvalidInput(os.str());
    }
}

void require_r_window(double n, const BulkParams& bulk) {
    if (!(n > 0.0 && n < bulk.nu())) {
        std::ostringstream os;
        os << "r_n needs 0 < n < nu (n = " << n << ", nu = " << bulk.nu() << ")";
        throw InvalidInput(os.str());
    }
}

struct SeaCoefficients {
    double n_plus, n_minus;
};

SeaCoefficients real_sea_indices(const DerivedBoundary& d, const BulkParams& bulk) {
    require_kernel_window(d.p_plus, bulk, "p_plus");
    require_kernel_window(d.p_minus, bulk, "p_minus");
    return {2.0 * d.p_plus.real() + 1.0, 2.0 * d.p_minus.real() + 1.0};
}

double wrap_imag(double y, double nu) {
    y -= nu * std::floor((y + 0.5 * nu) / nu);
    if (std::abs(y + 0.5 * nu) < 1e-9 || std::abs(y - 0.5 * nu) < 1e-9) y = 0.5 * nu;
    return y;
}

}  // namespace

Complex e_fn(Complex n, Complex lambda, const BulkParams& bulk) {
    const double mu = bulk.mu();
    return checked_ratio(std::sinh(mu * (lambda + 0.5 * kI * n)),
                         std::sinh(mu * (lambda - 0.5 * kI * n)), "e_n");
}

Complex e_fn(double n, Complex lambda, const BulkParams& bulk) {
    return e_fn(Complex(n, 0.0), lambda, bulk);
}

Complex g_fn(double n, Complex lambda, const BulkParams& bulk) {
    const double mu = bulk.mu();
    return checked_ratio(std::cosh(mu * (lambda + 0.5 * kI * n)),
                         std::cosh(mu * (lambda - 0.5 * kI * n)), "g_n");
}

double q_fn(double n, double lambda, const BulkParams& bulk) {
    require_q_window(n, bulk);
    const double b = 0.5 * n * bulk.mu();
    return 2.0 * std::atan(std::cos(b) * std::tanh(bulk.mu() * lambda) / std::sin(b));
}

double r_fn(double n, double lambda, const BulkParams& bulk) {
    require_r_window(n, bulk);
    const double b = 0.5 * n * bulk.mu();
    return -2.0 * std::atan(std::tan(b) * std::tanh(bulk.mu() * lambda));
}

double dq_fn(double n, double lambda, const BulkParams& bulk) {
    require_q_window(n, bulk);
    const double mu = bulk.mu();
    return 2.0 * mu * std::sin(n * mu) / (std::cosh(2.0 * mu * lambda) - std::cos(n * mu));
}

double dr_fn(double n, double lambda, const BulkParams& bulk) {
    require_r_window(n, bulk);
    const double mu = bulk.mu();
    return -2.0 * mu * std::sin(n * mu) / (std::cosh(2.0 * mu * lambda) + std::cos(n * mu));
}

double q_fn_inf(double n, const BulkParams& bulk) {
    require_q_window(n, bulk);
    return kPi - n * bulk.mu();
}

double r_fn_inf(double n, const BulkParams& bulk) {
    require_r_window(n, bulk);
    return -n * bulk.mu();
}

std::vector<Complex> bae_difference(const std::vector<Complex>& roots, int n_sites,
                                    const DerivedBoundary& d, const BulkParams& bulk) {
    std::vector<Complex> out;
    out.reserve(roots.size());
    const Complex n_plus = 2.0 * d.p_plus + 1.0;
    const Complex n_minus = 2.0 * d.p_minus + 1.0;
    for (const Complex v : roots) {
        const Complex lhs = g_fn(1.0, v, bulk) * std::pow(e_fn(1.0, v, bulk), 2 * n_sites + 1) /
                            (e_fn(n_minus, v, bulk) * e_fn(n_plus, v, bulk));
        Complex rhs = -1.0;
        for (const Complex w : roots) rhs *= e_fn(2.0, v - w, bulk) * e_fn(2.0, v + w, bulk);
        out.push_back(lhs - rhs);
    }
    return out;
}

double bae_residual(const BetheRoots& state) {
    const auto& r = state.roots;
    if (r.empty()) return 0.0;
    const Complex n_plus = 2.0 * state.derived.p_plus + 1.0;
    const Complex n_minus = 2.0 * state.derived.p_minus + 1.0;
    double worst = 0.0;
    for (const Complex v : r) {
        const Complex lhs = g_fn(1.0, v, state.bulk) *
                            std::pow(e_fn(1.0, v, state.bulk), 2 * state.n_sites + 1) /
                            (e_fn(n_minus, v, state.bulk) * e_fn(n_plus, v, state.bulk));
        Complex rhs = -1.0;
        for (const Complex w : r)
            rhs *= e_fn(2.0, v - w, state.bulk) * e_fn(2.0, v + w, state.bulk);
        worst = std::max(worst, std::abs(checked_ratio(lhs, rhs, "Bethe equations") - 1.0));
    }
    return worst;
}

double bae_singularity_margin(const std::vector<Complex>& roots, const DerivedBoundary& d,
                              const BulkParams& bulk) {
    const double mu = bulk.mu();
    double m = std::numeric_limits<double>::infinity();
    auto sh = [&](Complex z) { m = std::min(m, std::abs(std::sinh(mu * z))); };
    auto ch = [&](Complex z) { m = std::min(m, std::abs(std::cosh(mu * z))); };
    const Complex ns[3] = {1.0, 2.0 * d.p_plus + 1.0, 2.0 * d.p_minus + 1.0};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex x = roots[i];
        for (const Complex n : ns) {
            sh(x + 0.5 * kI * n);
            sh(x - 0.5 * kI * n);
        }
        ch(x + 0.5 * kI);
        ch(x - 0.5 * kI);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            const Complex y = roots[j];
            if (j != i) {
                sh(x - y + kI);
                sh(x - y - kI);
                sh(x - y);
            }
            sh(x + y + kI);
            sh(x + y - kI);
            sh(x + y);
        }
    }
    return m;
}

double counting_function(double lambda, const BetheRoots& state) {
    const auto& bulk = state.bulk;
    const auto idx = real_sea_indices(state.derived, bulk);
    double s = (2 * state.n_sites + 1) * q_fn(1.0, lambda, bulk) + r_fn(1.0, lambda, bulk) -
               q_fn(idx.n_plus, lambda, bulk) - q_fn(idx.n_minus, lambda, bulk);
    for (const Complex v : state.roots)
        s -= q_fn(2.0, lambda - v.real(), bulk) + q_fn(2.0, lambda + v.real(), bulk);
    return s / (2.0 * kPi);
}

double counting_function_derivative(double lambda, const BetheRoots& state) {
    const auto& bulk = state.bulk;
    const auto idx = real_sea_indices(state.derived, bulk);
    double s = (2 * state.n_sites + 1) * dq_fn(1.0, lambda, bulk) + dr_fn(1.0, lambda, bulk) -
               dq_fn(idx.n_plus, lambda, bulk) - dq_fn(idx.n_minus, lambda, bulk);
    for (const Complex v : state.roots)
        s -= dq_fn(2.0, lambda - v.real(), bulk) + dq_fn(2.0, lambda + v.real(), bulk);
    return s / (2.0 * kPi);
}

double counting_function_inf(const BetheRoots& state) {
    const auto& bulk = state.bulk;
    const auto idx = real_sea_indices(state.derived, bulk);
    const double s = (2 * state.n_sites + 1) * q_fn_inf(1.0, bulk) + r_fn_inf(1.0, bulk) -
                     q_fn_inf(idx.n_plus, bulk) - q_fn_inf(idx.n_minus, bulk) -
                     2.0 * state.m_roots() * q_fn_inf(2.0, bulk);
    return s / (2.0 * kPi);
}

BetheRoots solve_log_form(int n_sites, const QuantumNumbers& qn, const DerivedBoundary& d,
                          const BulkParams& bulk, const std::optional<std::vector<double>>& seed,
                          const LogSolveOptions& opt) {
    if (n_sites < 1) throw InvalidInput("n_sites must be positive");
    real_sea_indices(d, bulk);
    const auto& I = qn.values;
    const int m = static_cast<int>(I.size());
    for (int i = 0; i < m; ++i)
        if (I[i] < 1 || (i > 0 && I[i] <= I[i - 1]))
            throw InvalidInput("quantum numbers must be positive and strictly increasing");

    BetheRoots st;
    st.n_sites = n_sites;
    st.derived = d;
    st.bulk = bulk;
    if (m == 0) {
        st.converged = true;
        return st;
    }

    std::vector<double> x(m);
    if (seed) {
        if (static_cast<int>(seed->size()) != m) throw InvalidInput("seed length differs from M");
        x = *seed;
    } else {
        const double top = I.back() + 0.5;
        for (int i = 0; i < m; ++i)
            x[i] = std::asinh(std::tan(0.5 * kPi * (I[i] - 0.5) / top)) / kPi;
    }

    auto admissible = [&](const std::vector<double>& y) {
        for (int i = 0; i < m; ++i) {
            if (!(y[i] > 0.0) || !std::isfinite(y[i])) return false;
            if (i > 0 && !(y[i] > y[i - 1])) return false;
        }
        return true;
    };
    if (!admissible(x)) throw InvalidInput("seed roots must be positive and increasing");

    auto residual = [&](const std::vector<double>& y) {
        BetheRoots tmp = st;
        tmp.roots.assign(y.begin(), y.end());
        Eigen::VectorXd f(m);
        for (int i = 0; i < m; ++i) f(i) = counting_function(y[i], tmp) - I[i];
        return f;
    };

    const double mu2 = 2.0;
    Eigen::VectorXd f = residual(x);
    bool done = false;
    int it = 0;
    for (; it < opt.max_iter && !done; ++it) {
        BetheRoots tmp = st;
        tmp.roots.assign(x.begin(), x.end());
        Eigen::MatrixXd jac(m, m);
        const double dq0 = dq_fn(mu2, 0.0, bulk);
        for (int i = 0; i < m; ++i) {
            for (int k = 0; k < m; ++k) {
                if (k == i) {
                    jac(i, i) = counting_function_derivative(x[i], tmp) +
                                (dq0 - dq_fn(mu2, 2.0 * x[i], bulk)) / (2.0 * kPi);
                } else {
                    jac(i, k) = (dq_fn(mu2, x[i] - x[k], bulk) - dq_fn(mu2, x[i] + x[k], bulk)) /
                                (2.0 * kPi);
                }
            }
        }
        const Eigen::VectorXd step = jac.partialPivLu().solve(-f);
        if (!step.allFinite()) throw NumericalError("log-form Newton: singular Jacobian");

        double t = 1.0;
        std::vector<double> xn(m);
        Eigen::VectorXd fn;
        for (;;) {
            for (int i = 0; i < m; ++i) xn[i] = x[i] + t * step(i);
            if (admissible(xn)) {
                fn = residual(xn);
                if (fn.cwiseAbs().maxCoeff() <= f.cwiseAbs().maxCoeff() || t < 1e-3) break;
            } else if (t < 1e-12) {
                throw NumericalError("log-form Newton: damping could not keep roots ordered");
            }
            t *= 0.5;
        }
        double xmax = 0.0;
        for (double v : xn) xmax = std::max(xmax, std::abs(v));
        done = (t * step).cwiseAbs().maxCoeff() <= opt.tol * std::max(1.0, xmax);
        x = xn;
        f = fn;
    }
    if (!done) {
        std::ostringstream os;
        os << "log-form Newton did not converge in " << opt.max_iter
           << " iterations (max |h - I| = " << f.cwiseAbs().maxCoeff() << ")";
        throw NumericalError(os.str());
    }
    st.roots.assign(x.begin(), x.end());
    st.iterations = it;
    st.residual = bae_residual(st);
    st.converged = true;
    return st;
}

std::vector<Complex> canonical_roots(std::vector<Complex> roots, const BulkParams& bulk) {
    const double nu = bulk.nu();
    for (auto& x : roots) {
        double re = x.real();
        double im = wrap_imag(x.imag(), nu);
        if (std::abs(re) < 1e-10) re = 0.0;
        if (re < 0.0 || (re == 0.0 && im < 0.0)) {
            re = -re;
            im = wrap_imag(-im, nu);
        }
        x = Complex(re, im);
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        const long long ra = std::llround(a.real() * 1e7), rb = std::llround(b.real() * 1e7);
        if (ra != rb) return ra < rb;
        return a.imag() < b.imag();
    });
    return roots;
}

std::vector<BetheRoots> solve_all_small(int n_sites, int m_roots, const DerivedBoundary& d,
                                        const BulkParams& bulk, const MultistartOptions& opt) {
    if (n_sites < 1 || n_sites > 3) throw InvalidInput("solve_all_small needs 1 <= N <= 3");
    if (m_roots < 0 || m_roots > n_sites) {
        std::ostringstream os;
        os << "root count M = " << m_roots << " outside {0.." << n_sites << "}";
        throw InvalidInput(os.str());
    }
    BetheRoots base;
    base.n_sites = n_sites;
    base.derived = d;
    base.bulk = bulk;
    if (m_roots == 0) {
        base.converged = true;
        return {base};
    }

    std::mt19937_64 rng(opt.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(m_roots));
    std::uniform_real_distribution<double> uni(-opt.box, opt.box);
    const int m = m_roots;
    std::vector<BetheRoots> found;

    auto newton = [&](std::vector<Complex> v) -> std::optional<std::vector<Complex>> {
        for (int it = 0; it < 100; ++it) {
            std::vector<Complex> f;
            try {
                f = bae_difference(v, n_sites, d, bulk);
            } catch (const NumericalError&) {
                return std::nullopt;
            }
            Eigen::VectorXcd fv(m);
            for (int i = 0; i < m; ++i) fv(i) = f[i];
            if (!fv.allFinite()) return std::nullopt;
            Eigen::MatrixXcd jac(m, m);
            for (int k = 0; k < m; ++k) {
                const double h = 1e-7 * std::max(1.0, std::abs(v[k]));
                auto vp = v;
                vp[k] += h;
                std::vector<Complex> fp;
                try {
                    fp = bae_difference(vp, n_sites, d, bulk);
                } catch (const NumericalError&) {
                    return std::nullopt;
                }
                for (int i = 0; i < m; ++i) jac(i, k) = (fp[i] - f[i]) / h;
            }
            const Eigen::VectorXcd step = jac.partialPivLu().solve(-fv);
            if (!step.allFinite()) return std::nullopt;
            double vmax = 1.0;
            for (int i = 0; i < m; ++i) {
                v[i] += step(i);
                vmax = std::max(vmax, std::abs(v[i]));
            }
            if (step.cwiseAbs().maxCoeff() < 1e-13 * vmax) return v;
        }
        return std::nullopt;
    };

    for (int s = 0; s < opt.n_starts; ++s) {
        std::vector<Complex> start(m);
        for (auto& z : start) {
            const double re = uni(rng);
            z = Complex(re, uni(rng));
        }
        auto sol = newton(start);
        if (!sol) continue;
        if (bae_singularity_margin(*sol, d, bulk) < opt.singular) continue;
        BetheRoots cand = base;
        cand.roots = canonical_roots(*sol, bulk);
        try {
            cand.residual = bae_residual(cand);
        } catch (const NumericalError&) {
            continue;
        }
        if (!(cand.residual <= opt.accept)) continue;
        bool dup = false;
        for (const auto& f : found) {
            double dist = 0.0;
            for (int i = 0; i < m; ++i) dist = std::max(dist, std::abs(f.roots[i] - cand.roots[i]));
            if (dist <= opt.dedup) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        cand.converged = true;
        found.push_back(std::move(cand));
    }
    std::sort(found.begin(), found.end(), [](const BetheRoots& a, const BetheRoots& b) {
        for (std::size_t i = 0; i < a.roots.size(); ++i) {
            if (a.roots[i].real() != b.roots[i].real()) return a.roots[i].real() < b.roots[i].real();
            if (a.roots[i].imag() != b.roots[i].imag()) return a.roots[i].imag() < b.roots[i].imag();
        }
        return false;
    });
    return found;
}

Complex lambda_from_roots(Complex lambda, const BetheRoots& state, Complex kappa) {
    const double mu = state.bulk.mu();
    const Complex pp = state.derived.p_plus;
    const Complex pm = state.derived.p_minus;
    const Complex l = lambda;
    const Complex sh_i = std::sinh(kI * mu);
    const Complex den_k = std::sinh(mu * (2.0 * l + kI));
    if (std::abs(den_k) < 1e-14) throw NumericalError("spectrum formula: pole at sinh(mu(2l+i)) = 0");

    const Complex k1m = -2.0 * kI * kappa * std::exp(mu * l) * std::sinh(mu * (l - kI * pm)) *
                        std::sinh(mu * (l - kI * pp));
    const Complex k4m = -2.0 * kI * kappa * std::exp(mu * l) * std::sinh(mu * (l + kI * pm + kI)) *
                        std::sinh(mu * (l + kI * pp + kI)) * std::sinh(2.0 * mu * l) / sh_i;
    const Complex k1p = std::exp(-mu * l) * std::sinh(2.0 * mu * (l + kI)) / den_k;
    const Complex k4p = std::exp(-mu * l) * sh_i / den_k;

    const int n2 = 2 * state.n_sites;
    Complex a = k1p * k1m * std::pow(std::sinh(mu * (l + kI)), n2);
    Complex b = k4p * k4m * std::pow(std::sinh(mu * l), n2);
    for (const Complex v : state.roots) {
        const Complex r = v - 0.5 * kI;
        const Complex d1 = std::sinh(mu * (l + r + kI));
        const Complex d2 = std::sinh(mu * (l - r));
        if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14) {
            std::ostringstream os;
            os << "spectrum formula: lambda = " << lambda << " sits on a pole of root " << r;
            throw NumericalError(os.str());
        }
        a *= std::sinh(mu * (l + r)) * std::sinh(mu * (l - r - kI)) / (d1 * d2);
        b *= std::sinh(mu * (l + r + 2.0 * kI)) * std::sinh(mu * (l - r + kI)) / (d1 * d2);
    }
    return a + b;
}

std::vector<int> find_vacancies(const BetheRoots& state, const QuantumNumbers& qn) {
    const double top = counting_function_inf(state);
    std::vector<int> out;
    for (int k = 1; k < top; ++k)
        if (std::find(qn.values.begin(), qn.values.end(), k) == qn.values.end()) out.push_back(k);
    return out;
}

HoleState locate_hole(const BetheRoots& sea, int hole_number) {
    if (hole_number < 1) throw InvalidInput("hole quantum number must be positive");
    if (!(counting_function_inf(sea) > hole_number)) {
        std::ostringstream os;
        os << "counting function never reaches " << hole_number << " (h(inf) = "
           << counting_function_inf(sea) << ")";
        throw InvalidInput(os.str());
    }
    double lo = 0.0, hi = 1.0;
    while (counting_function(hi, sea) < hole_number) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) throw NumericalError("hole rapidity beyond 1e3");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (counting_function(mid, sea) < hole_number ? lo : hi) = mid;
    }
    HoleState h;
    h.sea = sea;
    h.hole_rapidity = 0.5 * (lo + hi);
    h.hole_number = hole_number;
    return h;
}

}  // namespace xxzb
