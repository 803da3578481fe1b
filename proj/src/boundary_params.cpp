#include "xxzb/boundary_params.hpp"

#include <cmath>
#include <sstream>

namespace xxzb {

namespace {

// i mu X = acosh(w), principal branch. Real w in [-1, 1] is exactly the cut of the
// complex acosh; there the sign of a signed zero would decide, so pick i*acos(w).
Complex inverse_cosh_over_imu(Complex w, double mu, bool& on_cut) {
    Complex a;
    if (w.imag() == 0.0 && std::abs(w.real()) <= 1.0) {
        a = kI * std::acos(w.real());
        on_cut = true;
    } else {
        a = std::acosh(w);
    }
    return -kI * a / mu;
}

}  // namespace

DerivedBoundary DerivedBoundary::from_pm(Complex p_plus, Complex p_minus) {
    DerivedBoundary d;
    d.p_plus = p_plus;
    d.p_minus = p_minus;
    d.beta_gamma_sum = p_plus + p_minus;
    d.zeta = p_plus - p_minus;
    return d;
}

DerivedBoundary DerivedBoundary::dual() const {
    DerivedBoundary d = from_pm(-p_plus, -p_minus);
    d.on_branch_cut = on_branch_cut;
    return d;
}

bool DerivedBoundary::is_real(double tol) const {
    return std::abs(p_plus.imag()) <= tol && std::abs(p_minus.imag()) <= tol;
}

DerivedBoundary derive_pm_from_bare(const BoundaryParams& bnd, const BulkParams& bulk) {
    if (bnd.kappa == Complex(0.0, 0.0)) throw InvalidInput("kappa must be nonzero");
    if (!std::isfinite(std::abs(bnd.xi)) || !std::isfinite(std::abs(bnd.kappa)))
        throw InvalidInput("non-finite boundary parameters");
    const double mu = bulk.mu();
    const Complex two_i_kappa = 2.0 * kI * bnd.kappa;
    const Complex w_sum = std::exp(-kI * mu * bnd.xi) / two_i_kappa;   // cosh(i mu (beta+gamma))
    const Complex w_zeta = std::exp(kI * mu * bnd.xi) / two_i_kappa;   // cosh(i mu zeta)

    bool cut = false;
    const Complex s = inverse_cosh_over_imu(w_sum, mu, cut);
    const Complex z = inverse_cosh_over_imu(w_zeta, mu, cut);
    DerivedBoundary d;
    d.beta_gamma_sum = s;
    d.zeta = z;
    d.p_plus = 0.5 * (s + z);
    d.p_minus = 0.5 * (s - z);
    d.on_branch_cut = cut;
    return d;
}

BoundaryParams derive_bare_from_pm(Complex p_plus, Complex p_minus, const BulkParams& bulk) {
    const double mu = bulk.mu();
    const Complex ch_sum = std::cosh(kI * mu * (p_plus + p_minus));
    const Complex ch_zeta = std::cosh(kI * mu * (p_plus - p_minus));
    // 1/(4 kappa^2) = 1 - cosh^2(i mu p+) - cosh^2(i mu p-) = -cosh(i mu S) cosh(i mu zeta)
    const Complex denom = ch_sum * ch_zeta;
    if (std::abs(denom) < 1e-14) {
        std::ostringstream os;
        os << "kappa diverges: cosh^2(i mu p+) + cosh^2(i mu p-) = 1 at p+ = " << p_plus
           << ", p- = " << p_minus;
        throw InvalidInput(os.str());
    }
    BoundaryParams b;
    b.kappa = std::sqrt(-1.0 / (4.0 * denom));
    Complex w = 2.0 * kI * b.kappa * ch_zeta;  // e^{i mu xi}
    b.xi = -kI * std::log(w) / mu;
    if (std::abs((mu * b.xi).real()) > kPi / 2 + 1e-12 ||
        std::abs((mu * b.xi).real() + kPi / 2) <= 1e-12) {
        b.kappa = -b.kappa;
        w = -w;
        b.xi = -kI * std::log(w) / mu;
    }
    b.theta = 0.0;
    return b;
}

BareconResiduals barecon_residuals(const BoundaryParams& bnd, const DerivedBoundary& d,
                                   const BulkParams& bulk) {
    const double mu = bulk.mu();
    const Complex cp = std::cosh(kI * mu * d.p_plus);
    const Complex cm = std::cosh(kI * mu * d.p_minus);
    BareconResiduals r;
    r.cosh_product = std::abs(std::cosh(kI * mu * bnd.xi) / (2.0 * kI * bnd.kappa) - cp * cm);
    r.cosh_squares = std::abs(cp * cp + cm * cm - 1.0 + 1.0 / (4.0 * bnd.kappa * bnd.kappa));
    return r;
}

double param_roundtrip_residual(const BoundaryParams& bnd, const DerivedBoundary& d,
                                const BulkParams& bulk) {
    const double mu = bulk.mu();
    const Complex a = std::exp(-kI * mu * bnd.xi) / (2.0 * bnd.kappa) -
                      kI * std::cosh(kI * mu * d.beta_gamma_sum);
    const Complex b = std::exp(kI * mu * bnd.xi) / (2.0 * bnd.kappa) - kI * std::cosh(kI * mu * d.zeta);
    return std::max(std::abs(a), std::abs(b));
}

GZParams map_to_gz(const BulkParams& bulk, const DerivedBoundary& d, const BoundaryParams& bnd) {
    const double nu = bulk.nu();
    const double scale = kPi / (2.0 * (nu - 1.0));
    GZParams g;
    g.lambda_gz = 1.0 / (nu - 1.0);
    g.vartheta = kI * scale * (nu - 2.0 * d.p_plus);
    g.eta = scale * (nu - 2.0 * d.p_minus);
    g.xi_prime = scale * (nu - 2.0 * bnd.xi);
    g.k_gz = -2.0 * kI * bnd.kappa;
    const Complex ce = std::cos(g.eta);
    const Complex cth = std::cosh(g.vartheta);
    g.constraint_product = ce * cth + std::cos(g.xi_prime) / g.k_gz;
    g.constraint_squares = ce * ce + cth * cth - 1.0 - 1.0 / (g.k_gz * g.k_gz);
    return g;
}

GZInverse map_from_gz(const BulkParams& bulk, const GZParams& gz) {
    const double nu = bulk.nu();
    const double scale = kPi / (2.0 * (nu - 1.0));
    GZInverse inv;
    inv.p_plus = 0.5 * (nu - gz.vartheta / (kI * scale));
    inv.p_minus = 0.5 * (nu - gz.eta / scale);
    inv.xi = 0.5 * (nu - gz.xi_prime / scale);
    inv.kappa = gz.k_gz / (-2.0 * kI);
    return inv;
}

void require_kernel_window(Complex p, const BulkParams& bulk, const char* name) {
    const double nu = bulk.nu();
    if (p.imag() != 0.0 || !(p.real() > -0.5 && p.real() < nu - 0.5)) {
        std::ostringstream os;
        os << name << " = " << p.real() << (p.imag() != 0.0 ? " (complex)" : "")
           << " outside the kernel window: need real " << name << " in (-1/2, nu - 1/2) = (-0.5, "
           << nu - 0.5 << ") so that 0 < 2*" << name << " + 1 < 2 nu";
        throw InvalidInput(os.str());
    }
}

}  // namespace xxzb
