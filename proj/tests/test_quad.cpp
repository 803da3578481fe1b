#include "xxzb/quad.hpp"

#include <doctest.h>

using namespace xxzb;

TEST_CASE("exponential integral") {
    const auto r = quad_semi_infinite([](double w) { return std::exp(-w); }, 1.0, 1e-13);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    CHECK(r.err < 1e-12);
}

TEST_CASE("sin(2 w l) e^-w / w integrates to atan(2 l)") {
    for (const double l : {0.3, 1.0, 2.0}) {
        auto f = [l](double w) { return w < 1e-8 ? 2.0 * l * std::exp(-w) : std::sin(2.0 * w * l) * std::exp(-w) / w; };
        const auto r = quad_semi_infinite(f, 1.0, 1e-13);
        CHECK(std::abs(r.value - std::atan(2.0 * l)) < 1e-12);
        CHECK(std::abs(r.value - std::atan(2.0 * l)) <= r.err + 1e-15);
    }
}

TEST_CASE("halving tol never increases the reported error") {
    auto f = [](double w) { return std::cos(3.0 * w) * std::exp(-0.7 * w) / (1.0 + w * w); };
    double prev = 1e300;
    for (double tol = 1e-3; tol > 1e-13; tol *= 0.5) {
        const auto r = quad_semi_infinite(f, 0.7, tol);
        CHECK(r.err <= prev);
        prev = r.err;
    }
}

TEST_CASE("complex integrands") {
    const auto r = quad_semi_infinite([](double w) { return std::exp(Complex(-1.0, 2.0) * w); }, 1.0, 1e-13);
    CHECK(std::abs(r.value - 1.0 / Complex(1.0, -2.0)) < 1e-12);
}

TEST_CASE("bad arguments") {
    auto f = [](double w) { return std::exp(-w); };
    CHECK_THROWS_AS(quad_semi_infinite(f, 0.0, 1e-10), InvalidInput);
    CHECK_THROWS_AS(quad_semi_infinite(f, 1.0, 0.0), InvalidInput);
    // claimed decay far faster than the truth: the tail bound cannot be met
    CHECK_THROWS_AS(quad_semi_infinite([](double w) { return 1.0 / (1.0 + w * w); }, 50.0, 1e-12), NumericalError);
}
