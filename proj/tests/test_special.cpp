#include "xxzb/special.hpp"

#include "reference.hpp"

#include <doctest.h>

#include <random>

using namespace xxzb;

TEST_CASE("log gamma: classical values") {
    CHECK(std::abs(log_gamma_complex(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma_complex(2.0)) < 1e-15);
    CHECK(std::abs(std::exp(log_gamma_complex(0.5)) - std::sqrt(kPi)) < 1e-13);
    CHECK_THROWS_AS(log_gamma_complex(0.0), NumericalError);
    CHECK_THROWS_AS(log_gamma_complex(-3.0), NumericalError);
}

TEST_CASE("log gamma against high-precision references") {
    for (const auto& e : testref::data().at("log_gamma")) {
        const Complex z = testref::cplx(e.at("z"));
        const Complex ref = testref::cplx(e.at("value"));
        const Complex got = log_gamma_complex(z);
        INFO("z = " << z.real() << " + " << z.imag() << "i");
        CHECK(std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("log gamma recurrence") {
    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> re(-30.0, 300.0), im(-100.0, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double a = re(g), b = im(g);
        const Complex z(a, b);
        Complex r = log_gamma_complex(z + 1.0) - log_gamma_complex(z) - std::log(z);
        r -= 2.0 * kPi * kI * std::round(r.imag() / (2.0 * kPi));
        CHECK(std::abs(r) <= 1e-12 * std::max(1.0, std::abs(log_gamma_complex(z))));
    }
}

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == 1.0);
    CHECK(bernoulli_number(1) == -0.5);
    CHECK(bernoulli_number(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bernoulli_number(3) == 0.0);
    CHECK(bernoulli_number(30) == doctest::Approx(8615841276005.0 / 14322.0).epsilon(1e-14));
    for (const auto& e : testref::data().at("bernoulli_poly")) {
        const Complex x = testref::cplx(e.at("x"));
        const Complex ref = testref::cplx(e.at("value"));
        CHECK(std::abs(bernoulli_poly(e.at("n").get<int>(), x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("Hurwitz zeta against references") {
    for (const auto& e : testref::data().at("hurwitz_zeta")) {
        const double ref = e.at("value").get<double>();
        const double got = hurwitz_zeta(e.at("s").get<int>(), e.at("a").get<double>());
        CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref));
    }
    CHECK(hurwitz_zeta(2, 1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
}
