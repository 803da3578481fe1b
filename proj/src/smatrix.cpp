#include "xxzb/smatrix.hpp"

#include "xxzb/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace xxzb {

namespace {

constexpr double kEps = 2.220446049250313e-16;

void require_range(double n, double hi, const char* what) {
    if (!(n > 0.0 && n < hi)) {
        std::ostringstream os;
        os << what << ": kernel index n = " << n << " outside (0, " << hi << ")";
        throw InvalidInput(os.str());
    }
}

// sqrt(i / 2 kappa) = (-2 i kappa)^{-1/2}; one principal branch for every route.
Complex inv_sqrt_m2ik(Complex kappa) {
    if (kappa == Complex(0.0, 0.0)) throw InvalidInput("kappa must be nonzero");
    return std::sqrt(kI / (2.0 * kappa));
}

Complex renorm_cosh(double lambda, Complex p, const BulkParams& bulk, double sign) {
    const double nu = bulk.nu();
    return std::cosh(kPi / (nu - 1.0) * (lambda + sign * 0.5 * kI * (nu - 2.0 * p)));
}

}  // namespace

double kernel_a_hat(double n, double omega, const BulkParams& bulk) {
    require_range(n, 2.0 * bulk.nu(), "a_hat");
    return sinh_ratio<double>(0.5 * (bulk.nu() - n), 0.5 * bulk.nu(), omega);
}

double kernel_b_hat(double n, double omega, const BulkParams& bulk) {
    require_range(n, bulk.nu(), "b_hat");
    return -sinh_ratio<double>(0.5 * n, 0.5 * bulk.nu(), omega);
}

double kernel_eps_hat(double omega, const BulkParams& bulk) {
    return kernel_a_hat(1.0, omega, bulk) / (1.0 + kernel_a_hat(2.0, omega, bulk));
}

double kernel_eps_hat_closed(double omega) { return 0.5 / std::cosh(0.5 * omega); }

double hole_energy(double lambda_tilde) { return 0.5 / std::cosh(kPi * lambda_tilde); }

double hole_momentum(double lambda_tilde) {
    return 0.5 * kPi + 2.0 * std::atan(std::tanh(0.5 * kPi * lambda_tilde));
}

QuadResult<double> hole_energy_quadrature(double lambda_tilde, const BulkParams& bulk, double tol) {
    auto r = quad_semi_infinite(
        [&](double w) { return std::cos(w * lambda_tilde) * kernel_eps_hat(w, bulk); }, 0.5, tol * kPi);
    r.value /= kPi;
    r.err /= kPi;
    return r;
}

double density_hat(double omega, int n_sites, const DerivedBoundary& d, const BulkParams& bulk,
                   std::optional<double> lambda_tilde) {
    if (n_sites < 1) throw InvalidInput("n_sites must be positive");
    require_kernel_window(d.p_plus, bulk, "p_plus");
    require_kernel_window(d.p_minus, bulk, "p_minus");
    const double np = 2.0 * d.p_plus.real() + 1.0;
    const double nm = 2.0 * d.p_minus.real() + 1.0;
    const double a1 = kernel_a_hat(1.0, omega, bulk);
    const double a2 = kernel_a_hat(2.0, omega, bulk);
    const double inv = 1.0 / (1.0 + a2);
    double s = 2.0 * a1 * inv +
               (a1 + a2 + kernel_b_hat(1.0, omega, bulk) - kernel_a_hat(nm, omega, bulk) -
                kernel_a_hat(np, omega, bulk)) *
                   inv / n_sites;
    if (lambda_tilde) s += a2 * inv * 2.0 * std::cos(omega * *lambda_tilde) / n_sites;
    return s;
}

QuadResult<double> density(double lambda, int n_sites, const DerivedBoundary& d, const BulkParams& bulk,
                           std::optional<double> lambda_tilde, double tol) {
    density_hat(0.0, n_sites, d, bulk, lambda_tilde);  // validates the window
    const double rate = std::min({0.5, 0.5 * (2.0 * d.p_plus.real() + 1.0),
                                  0.5 * (2.0 * d.p_minus.real() + 1.0), 0.5 * (bulk.nu() - 1.0)});
    auto r = quad_semi_infinite(
        [&](double w) { return std::cos(w * lambda) * density_hat(w, n_sites, d, bulk, lambda_tilde); },
        rate, tol * kPi);
    r.value /= kPi;
    r.err /= kPi;
    return r;
}

std::string to_string(AmpMethod m) {
    switch (m) {
        case AmpMethod::Integral: return "integral";
        case AmpMethod::GammaProduct: return "gamma_product";
        case AmpMethod::ClosedForm: return "closed_form";
    }
    return "unknown";
}

AmpMethod parse_amp_method(const std::string& s) {
    if (s == "integral") return AmpMethod::Integral;
    if (s == "gamma_product" || s == "gamma") return AmpMethod::GammaProduct;
    if (s == "closed_form") return AmpMethod::ClosedForm;
    throw InvalidInput("unknown amplitude method '" + s + "'");
}

Amplitude k0_integral(double lambda_tilde, const BulkParams& bulk, double tol) {
    const double nu = bulk.nu();
    auto r = quad_semi_infinite(
        [&](double w) {
            return std::sin(2.0 * w * lambda_tilde) / w * sinh_ratio<double>(1.5, 2.0, w) *
                   sinh_ratio<double>(0.5 * (nu - 2.0), 0.5 * (nu - 1.0), w);
        },
        1.0, tol);
    Amplitude a;
    a.value = std::exp(2.0 * kI * r.value);
    a.method = AmpMethod::Integral;
    a.trunc_param = r.cutoff;
    a.err_estimate = 2.0 * std::abs(a.value) * r.err;
    return a;
}

QuadResult<Complex> k1_exponent_integral(double lambda_tilde, Complex x, const BulkParams& bulk, double tol) {
    const double nu = bulk.nu();
    const Complex a = nu - 2.0 * x - 1.0;
    const double b = nu - 1.0;
    const double rate = b + 1.0 - std::abs(a.real());
    if (!(rate > 0.0)) {
        std::ostringstream os;
        os << "k1 exponent diverges for x = " << x << " (need |Re(nu - 2x - 1)| < nu)";
        throw InvalidInput(os.str());
    }
    return quad_semi_infinite(
        [&](double w) -> Complex {
            const double sech_half = std::exp(-w) / (1.0 + std::exp(-2.0 * w));  // 1/(2 cosh w)
            return std::sin(2.0 * w * lambda_tilde) / w * sinh_ratio<Complex>(a, b, w) * sech_half;
        },
        rate, tol);
}

Amplitude k1_integral(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk, double tol) {
    require_kernel_window(x, bulk, "x");
    const Complex ch = renorm_cosh(lambda_tilde, x, bulk, -1.0);
    if (std::abs(ch) < 1e-300) throw NumericalError("k1: pole of the cosh prefactor");
    const auto r = k1_exponent_integral(lambda_tilde, x, bulk, tol);
    Amplitude a;
    a.value = kPi * inv_sqrt_m2ik(kappa) / ch * std::exp(-2.0 * kI * r.value);
    a.method = AmpMethod::Integral;
    a.trunc_param = r.cutoff;
    a.err_estimate = 2.0 * std::abs(a.value) * r.err;
    return a;
}

GammaProductLog gamma_product_log(const std::vector<GammaTerm>& terms, double slope, int n_max,
                                  bool with_tail) {
    if (n_max < 1) throw InvalidInput("Gamma product needs n_max >= 1");
    if (!(slope > 0.0)) throw InvalidInput("Gamma product needs a positive slope");
    GammaProductLog out;
    double sumsq = 0.0;
    for (int n = 0; n < n_max; ++n) {
        Complex t = 0.0;
        for (const auto& g : terms) {
            const Complex lg = log_gamma_complex(slope * n + g.offset);
            t += g.sign * lg;
            sumsq += std::norm(lg);
        }
        out.log_value += t;
    }
    double roundoff = 4.0 * kEps * std::sqrt(sumsq);

    if (!with_tail) {
        out.err = roundoff;
        return out;
    }
    Complex s0 = 0.0, s1 = 0.0;
    double bmax = 0.0, bscale = 1.0;
    for (const auto& g : terms) {
        s0 += g.sign;
        s1 += g.sign * g.offset;
        bmax = std::max(bmax, std::abs(g.offset));
        bscale += std::abs(g.offset);
    }
    if (std::abs(s0) > 1e-12 || std::abs(s1) > 1e-10 * bscale)
        throw NumericalError("Gamma product diverges: sum s_i or sum s_i b_i is nonzero");

    constexpr int kOrders = 10;
    Complex c[kOrders + 2];
    for (int k = 1; k <= kOrders + 1; ++k) {
        Complex acc = 0.0;
        for (const auto& g : terms) acc += g.sign * bernoulli_poly(k + 1, g.offset);
        c[k] = (k % 2 == 1 ? 1.0 : -1.0) * acc / (k * (k + 1.0));
    }
    out.c1 = c[1];
    if (std::abs(c[1]) > 1e-10 * std::pow(bscale, 2))
        throw NumericalError("Gamma product diverges: 1/n coefficient of the factors is nonzero");
    Complex tail = 0.0;
    for (int k = 2; k <= kOrders; ++k) tail += c[k] * std::pow(slope, -k) * hurwitz_zeta(k, n_max);
    double tail_err = std::abs(c[kOrders + 1]) * std::pow(slope, -(kOrders + 1)) * hurwitz_zeta(kOrders + 1, n_max);
    if (slope * n_max < 4.0 * bmax) tail_err = std::max(tail_err, 1.0);  // expansion not yet asymptotic
    out.tail = tail;
    out.log_value += tail;
    out.err = roundoff + tail_err;
    return out;
}

std::vector<GammaTerm> k0_gamma_terms(double lambda_tilde, const BulkParams& bulk) {
    const double c = 1.0 / (bulk.nu() - 1.0);
    const Complex il = 2.0 * kI * lambda_tilde;
    // (+, -) pairs that coincide at lambda = 0
    return {{+1.0, c * (-il + 3.0) + 1.0}, {-1.0, c * (il + 3.0) + 1.0},
            {+1.0, c * (-il + 1.0)},       {-1.0, c * (il + 1.0)},
            {+1.0, c * il + 1.0},          {-1.0, c * (-il) + 1.0},
            {+1.0, c * (il + 4.0)},        {-1.0, c * (-il + 4.0)}};
}

std::vector<GammaTerm> k1_gamma_terms_literal(double lambda_tilde, double x, const BulkParams& bulk) {
    const double c = 1.0 / (bulk.nu() - 1.0);
    const double d = 0.5 * (bulk.nu() - 2.0 * x);
    const Complex il = kI * lambda_tilde;
    return {{+1.0, c * (-il - d) + 0.5},       {+1.0, c * (-il + d) + 0.5},
            {-1.0, c * (il + 2.0 - d) + 0.5},  {-1.0, c * (il + 2.0 + d) + 0.5},
            {+1.0, c * (il + 1.0 - d) + 0.5},  {+1.0, c * (il + 1.0 + d) + 0.5},
            {-1.0, c * (-il + 1.0 - d) + 0.5}, {-1.0, c * (-il + 1.0 + d) + 0.5}};
}

Complex k0_gamma_term_log(double lambda_tilde, const BulkParams& bulk, int n) {
    const double slope = 4.0 / (bulk.nu() - 1.0);
    Complex t = 0.0;
    for (const auto& g : k0_gamma_terms(lambda_tilde, bulk)) t += g.sign * log_gamma_complex(slope * n + g.offset);
    return t;
}

Amplitude k0_gamma(double lambda_tilde, const BulkParams& bulk, int n_max) {
    const auto r = gamma_product_log(k0_gamma_terms(lambda_tilde, bulk), 4.0 / (bulk.nu() - 1.0), n_max);
    Amplitude a;
    a.value = std::exp(r.log_value);
    a.method = AmpMethod::GammaProduct;
    a.trunc_param = n_max;
    a.err_estimate = std::abs(a.value) * r.err;
    return a;
}

Amplitude k1_gamma(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk, int n_max) {
    require_kernel_window(x, bulk, "x");
    const double c = 1.0 / (bulk.nu() - 1.0);
    const double cd = c * 0.5 * (bulk.nu() - 2.0 * x);
    const auto lit = k1_gamma_terms_literal(lambda_tilde, x, bulk);
    const auto lit0 = k1_gamma_terms_literal(0.0, x, bulk);
    std::vector<GammaTerm> terms;
    for (std::size_t i = 0; i < lit.size(); ++i) {
        terms.push_back(lit[i]);
        terms.push_back({-lit0[i].sign, lit0[i].offset});
    }
    const auto r = gamma_product_log(terms, 2.0 * c, n_max);
    const Complex reflect = log_gamma_complex(0.5 + cd) + log_gamma_complex(0.5 - cd);
    Amplitude a;
    a.value = inv_sqrt_m2ik(kappa) * std::exp(reflect + r.log_value);
    a.method = AmpMethod::GammaProduct;
    a.trunc_param = n_max;
    a.err_estimate = std::abs(a.value) * (r.err + 8.0 * kEps * (1.0 + std::abs(reflect)));
    return a;
}

Complex k1_gamma_literal_partial(double lambda_tilde, double x, Complex kappa, const BulkParams& bulk,
                                 int n_max) {
    const auto r = gamma_product_log(k1_gamma_terms_literal(lambda_tilde, x, bulk), 2.0 / (bulk.nu() - 1.0),
                                     n_max, false);
    return inv_sqrt_m2ik(kappa) * std::exp(r.log_value);
}

Amplitude k1_full(double lambda_tilde, const DerivedBoundary& d, Complex kappa, const BulkParams& bulk,
                  AmpMethod method, const AmpSettings& s) {
    require_kernel_window(d.p_plus, bulk, "p_plus");
    require_kernel_window(d.p_minus, bulk, "p_minus");
    const double pp = d.p_plus.real(), pm = d.p_minus.real();
    Amplitude out;
    out.method = method;
    if (method == AmpMethod::Integral) {
        // the cosh prefactors and kappa cancel against the k1 prefactors exactly
        const auto k0 = k0_integral(lambda_tilde, bulk, s.tol);
        const auto ep = k1_exponent_integral(lambda_tilde, pp, bulk, s.tol);
        const auto em = k1_exponent_integral(lambda_tilde, pm, bulk, s.tol);
        out.value = k0.value * std::exp(-2.0 * kI * (ep.value + em.value));
        out.trunc_param = std::max({k0.trunc_param, ep.cutoff, em.cutoff});
        out.err_estimate = std::abs(out.value) * (k0.err_estimate / std::abs(k0.value) + 2.0 * (ep.err + em.err));
    } else if (method == AmpMethod::GammaProduct) {
        const auto k0 = k0_gamma(lambda_tilde, bulk, s.n_max);
        const auto kp = k1_gamma(lambda_tilde, pp, kappa, bulk, s.n_max);
        const auto km = k1_gamma(lambda_tilde, pm, kappa, bulk, s.n_max);
        const Complex pre = -2.0 * kI * kappa / (kPi * kPi) * renorm_cosh(lambda_tilde, pp, bulk, -1.0) *
                            renorm_cosh(lambda_tilde, pm, bulk, -1.0);
        out.value = pre * k0.value * kp.value * km.value;
        out.trunc_param = s.n_max;
        out.err_estimate = std::abs(out.value) * (k0.err_estimate / std::abs(k0.value) +
                                                  kp.err_estimate / std::abs(kp.value) +
                                                  km.err_estimate / std::abs(km.value) + 16.0 * kEps);
    } else {
        throw InvalidInput("k1_full: method must be integral or gamma_product");
    }
    return out;
}

Complex k2_over_k1(double lambda_tilde, const DerivedBoundary& d, const BulkParams& bulk) {
    Complex r = 1.0;
    for (const Complex p : {d.p_plus, d.p_minus}) {
        const Complex den = renorm_cosh(lambda_tilde, p, bulk, -1.0);
        if (std::abs(den) < 1e-14) {
            std::ostringstream os;
            os << "k2/k1: denominator vanishes at lambda = " << lambda_tilde << ", p = " << p;
            throw NumericalError(os.str());
        }
        r *= renorm_cosh(lambda_tilde, p, bulk, +1.0) / den;
    }
    return r;
}

double k2_over_k1_eigen_residual(double lambda_tilde, const DerivedBoundary& d, const BulkParams& bulk) {
    const double nu = bulk.nu();
    const double mt = kPi / (nu - 1.0);
    Complex eig = 1.0;
    for (const Complex p : {d.p_plus, d.p_minus}) {
        const Complex big_p = nu - p - 0.5;
        eig *= std::sinh(mt * (lambda_tilde + kI * big_p)) / std::sinh(mt * (lambda_tilde - kI * big_p));
    }
    return std::abs(k2_over_k1(lambda_tilde, d, bulk) - eig);
}

std::vector<DiagonalLimitPoint> diagonal_limit_trend(double lambda_tilde, const BulkParams& bulk,
                                                     const std::vector<double>& ts, double tol) {
    std::vector<DiagonalLimitPoint> out;
    for (const double t : ts) {
        const Complex x(0.5 * bulk.nu(), -t);
        const auto r = k1_exponent_integral(lambda_tilde, x, bulk, tol);
        out.push_back({t, 2.0 * std::abs(r.value)});
    }
    return out;
}

}  // namespace xxzb
