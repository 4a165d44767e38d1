#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "genfock/bargmann.hpp"
#include "genfock/specfun.hpp"

using namespace genfock;
using namespace genfock::specfun;

namespace {

/// Explicit floor(n/2)-sum for He_n with exact integer coefficients:
/// He_n(z) = sum_k (-1)^k n! / (k! (n-2k)! 2^k) z^{n-2k}.
Complex hermite_explicit(int n, Complex z) {
    Complex acc(0.0);
    for (int k = 0; 2 * k <= n; ++k) {
        BigInt c = factorial_big(static_cast<unsigned>(n));
        c /= factorial_big(static_cast<unsigned>(k));
        c /= factorial_big(static_cast<unsigned>(n - 2 * k));
        c /= int_pow(BigInt(2), static_cast<unsigned>(k));
        Complex term = std::pow(z, n - 2 * k) * c.convert_to<double>();
        acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

TEST_CASE("hermite_He basics") {
    CHECK(hermite_He(0, Complex(3.0, -2.0)) == Complex(1.0));
    for (Complex z : {Complex(0.5, 0.0), Complex(1.0, 2.0), Complex(-0.3, 0.7)})
        CHECK(std::abs(hermite_He(2, z) - (z * z - 1.0)) <= 1e-15 * (1.0 + std::abs(z * z)));
    CHECK(hermite_He(3, Complex(2.0)) == Complex(2.0));  // 8 - 6
    CHECK_THROWS_AS(hermite_He(-1, Complex(0.0)), std::invalid_argument);
}

TEST_CASE("hermite_He agrees with the explicit sum") {
    for (int n = 0; n <= 10; ++n) {
        for (Complex z : {Complex(0.3, 0.0), Complex(1.2, -0.8), Complex(-2.0, 1.5)}) {
            const Complex a = hermite_He(n, z);
            const Complex b = hermite_explicit(n, z);
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
        }
    }
}

TEST_CASE("normalized Hermite functions") {
    CHECK(hermite_xi(0, 0.0) == doctest::Approx(std::pow(2.0 * M_PI, -0.25)).epsilon(1e-15));
    CHECK(hermite_xi(1, 0.0) == 0.0);

    // the recurrence invariant holds entrywise to machine precision
    for (double x : {-3.1, -0.5, 0.0, 1.7, 4.2}) {
        const auto e = hermite_xi_all(30, x);
        CHECK(e.values[0] ==
              doctest::Approx(std::pow(2.0 * M_PI, -0.25) * std::exp(-x * x / 4.0)).epsilon(1e-15));
        for (int n = 1; n < 30; ++n) {
            const double lhs = e.values[static_cast<size_t>(n) + 1];
            const double rhs = (x * e.values[static_cast<size_t>(n)] -
                                std::sqrt(static_cast<double>(n)) * e.values[static_cast<size_t>(n) - 1]) /
                               std::sqrt(n + 1.0);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
        }
    }
}

TEST_CASE("xi_5 is a unit vector under quadrature") {
    const auto quad = bargmann::QuadratureRule::gauss_hermite(200);
    double norm = 0.0;
    for (size_t i = 0; i < quad.nodes.size(); ++i) {
        const double v = hermite_xi(5, quad.nodes[i]);
        norm += quad.weights[i] * v * v;
    }
    CHECK(std::abs(norm - 1.0) <= 1e-10);
}

TEST_CASE("h_n recovers from xi_n through the log norm") {
    for (int n : {0, 1, 5, 12}) {
        for (double x : {-1.3, 0.4, 2.0}) {
            const double hn = hermite_xi(n, x) * std::exp(log_hermite_norm(n));
            const double want =
                std::exp(-x * x / 4.0) * hermite_He(n, Complex(x)).real();
            CHECK(hn == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("stirling2 values and range errors") {
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(5, 2) == 15);
    for (int n = 0; n <= 12; ++n) CHECK(stirling2(n, n) == 1);
    for (int n = 1; n <= 12; ++n) CHECK(stirling2(n, 0) == 0);

    CHECK_THROWS_AS(stirling2(2, 3), std::out_of_range);
    CHECK_THROWS_AS(stirling2(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(stirling2(31, 4), std::out_of_range);
    CHECK_THROWS_AS(StirlingTable(31), std::out_of_range);
}

TEST_CASE("stirling recurrence matches the stored triangle") {
    StirlingTable t(12);
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(t.at(n, k) == BigInt(k) * t.at(n - 1, k) + t.at(n - 1, k - 1));
}

TEST_CASE("touchard polynomials") {
    const auto c4 = touchard_coeffs(4);
    CHECK(c4[0] == 0);
    CHECK(c4[1] == 1);
    CHECK(c4[2] == 7);
    CHECK(c4[3] == 6);
    CHECK(c4[4] == 1);

    for (Complex z : {Complex(0.7, 0.0), Complex(-1.0, 2.0)})
        CHECK(touchard(1, z) == z);
    CHECK(touchard(3, Complex(1.0)) == Complex(5.0));
    CHECK(touchard_exact(5, Rational(1)) == Rational(52));  // Bell number B_5

    // an odd-index Touchard polynomial always divides by x
    for (int p = 0; p <= 6; ++p) CHECK(touchard_coeffs(2 * p + 1)[0] == 0);
}

TEST_CASE("touchard generating identity at a few points") {
    for (int n : {2, 5, 8}) {
        for (double x : {0.5, 1.5, 3.0}) {
            long double sum = 0.0L, term = 1.0L;
            for (int k = 0; k <= 80; ++k) {
                sum += std::pow(static_cast<long double>(k), static_cast<long double>(n)) * term;
                term *= static_cast<long double>(x) / (k + 1);
            }
            const double gen = static_cast<double>(std::exp(static_cast<long double>(-x)) * sum);
            CHECK(touchard(n, Complex(x)).real() == doctest::Approx(gen).epsilon(1e-13));
        }
    }
}

TEST_CASE("pochhammer") {
    for (int n : {0, 1, 4, 7})
        CHECK(pochhammer(1.0, n) == doctest::Approx(std::tgamma(n + 1.0)).epsilon(1e-14));
    CHECK(pochhammer(2.0, 3) == 24.0);
    CHECK(pochhammer(0.5, 0) == 1.0);
    CHECK_THROWS_AS(pochhammer(-1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(pochhammer(1.0, -1), std::invalid_argument);
}

TEST_CASE("hyper_1s2s") {
    for (int p : {0, 1, 3}) CHECK(hyper_1s2s(p, Complex(0.0), 10) == Complex(1.0));
    CHECK(std::abs(hyper_1s2s(0, Complex(1.0), 40) - std::exp(1.0)) <= 1e-14);

    // independent oracle: plain partial sum at N = 200
    long double oracle = 0.0L, base = 1.0L;
    for (int n = 0; n <= 200; ++n) {
        oracle += base / ((n + 1.0L) * (n + 1.0L));
        base /= (n + 1.0L);
    }
    CHECK(std::abs(hyper_1s2s(1, Complex(1.0), 40).real() - static_cast<double>(oracle)) <= 1e-4);
    CHECK(std::abs(hyper_1s2s(1, Complex(1.0), 40).real() - static_cast<double>(oracle)) <= 1e-13);
}
