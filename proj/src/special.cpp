#include "xxzb/special.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace xxzb {

namespace {

// B_0 .. B_30 as exact rationals; odd ones past B_1 vanish.
const std::array<double, 31>& bernoulli_table() {
    static const std::array<double, 31> table = [] {
        std::array<double, 31> b{};
        b[0] = 1.0;
        b[1] = -0.5;
        const double even[15][2] = {{1, 6},
                                    {-1, 30},
                                    {1, 42},
                                    {-1, 30},
                                    {5, 66},
                                    {-691, 2730},
                                    {7, 6},
                                    {-3617, 510},
                                    {43867, 798},
                                    {-174611, 330},
                                    {854513, 138},
                                    {-236364091, 2730},
                                    {8553103, 6},
                                    {-23749461029.0, 870},
                                    {8615841276005.0, 14322}};
        for (int k = 1; k <= 15; ++k) b[2 * k] = even[k - 1][0] / even[k - 1][1];
        return b;
    }();
    return table;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

double bernoulli_number(int n) {
    if (n < 0 || n > 30) throw InvalidInput("Bernoulli index outside 0..30");
    return bernoulli_table()[n];
}

Complex bernoulli_poly(int n, Complex x) {
    if (n < 0 || n > 30) throw InvalidInput("Bernoulli index outside 0..30");
    Complex s = 0.0;
    Complex xp = 1.0;
    for (int k = n; k >= 0; --k) {  // x^{n-k} grows as k falls
        s += binom(n, k) * bernoulli_number(k) * xp;
        xp *= x;
    }
    return s;
}

Complex log_gamma_complex(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidInput("log_gamma_complex: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        std::ostringstream os;
        os << "log_gamma_complex: pole at z = " << z.real();
        throw NumericalError(os.str());
    }
    Complex shift = 0.0;
    while (z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    // Stirling series
    const Complex zi = 1.0 / z;
    const Complex zi2 = zi * zi;
    Complex corr = 0.0;
    Complex p = zi;
    for (int k = 1; k <= 10; ++k) {
        corr += bernoulli_number(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= zi2;
    }
    const double half_log_2pi = 0.91893853320467274178;
    return (z - 0.5) * std::log(z) - z + half_log_2pi + corr - shift;
}

double hurwitz_zeta(int s, double a) {
    if (s < 2) throw InvalidInput("hurwitz_zeta needs integer s >= 2");
    if (!(a > 0.0)) throw InvalidInput("hurwitz_zeta needs a > 0");
    double sum = 0.0;
    while (a < 20.0) {
        sum += std::pow(a, -s);
        a += 1.0;
    }
    // Euler-Maclaurin at a >= 20
    sum += std::pow(a, 1 - s) / (s - 1) + 0.5 * std::pow(a, -s);
    double rising = s;  // s (s+1) ... (s+2j-2)
    double fact = 2.0;  // (2j)!
    double ap = std::pow(a, -s - 1);
    for (int j = 1; j <= 8; ++j) {
        sum += bernoulli_number(2 * j) / fact * rising * ap;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        ap /= a * a;
    }
    return sum;
}

}  // namespace xxzb
