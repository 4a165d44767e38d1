#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "genfock/coeffspace.hpp"
#include "genfock/json_io.hpp"
#include "genfock/kernels.hpp"

using namespace genfock;

namespace {

CoeffSeq random_poly(std::mt19937_64& rng, int deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CoeffSeq f = CoeffSeq::zero(deg);
    for (auto& c : f.coeffs) c = Complex(u(rng), u(rng));
    return f;
}

}  // namespace

TEST_CASE("weights match the three inner products") {
    CHECK(weight(KernelSpec(Space::Fock, 0), 3) == 6.0);
    CHECK(weight(KernelSpec(Space::Hp, 1), 2) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(weight(KernelSpec(Space::Fp, 1), 2) == doctest::Approx(18.0).epsilon(1e-15));

    CHECK(weight_exact(KernelSpec(Space::Hp, 1), 2) == Rational(2, 9));
    CHECK(weight_exact(KernelSpec(Space::Fp, 1), 2) == Rational(18));
    CHECK(weight_exact(KernelSpec(Space::Fock, 0), 3) == Rational(6));
}

TEST_CASE("linear-domain weight overflows are signalled, log domain is not") {
    CHECK_THROWS_AS(weight(KernelSpec(Space::Fock, 0), 200), std::overflow_error);
    const double lw = log_weight(KernelSpec(Space::Fock, 0), 200);
    CHECK(lw == doctest::Approx(std::lgamma(201.0)).epsilon(1e-14));
    // Hp pulls the value down; for p = 2 it shifts the log by -4 log(n+1)
    CHECK(log_weight(KernelSpec(Space::Hp, 2), 200) ==
          doctest::Approx(std::lgamma(201.0) - 4.0 * std::log(201.0)).epsilon(1e-14));
}

TEST_CASE("p = 0 collapses all three spaces onto the Fock weight") {
    for (int n = 0; n <= 100; ++n) {
        const Rational w = weight_exact(KernelSpec(Space::Fock, 0), n);
        CHECK(weight_exact(KernelSpec(Space::Hp, 0), n) == w);
        CHECK(weight_exact(KernelSpec(Space::Fp, 0), n) == w);
    }
}

TEST_CASE("monomial inner products") {
    for (int p = 0; p <= 3; ++p) {
        const KernelSpec spec(Space::Hp, p);
        for (int n : {0, 1, 4, 9}) {
            const CoeffSeq zn = CoeffSeq::monomial(n);
            const Complex v = inner(spec, zn, zn);
            CHECK(v.real() == doctest::Approx(weight(spec, n)).epsilon(1e-14));
            CHECK(v.imag() == 0.0);
        }
    }
    // distinct monomials are orthogonal in every space
    const CoeffSeq z2 = CoeffSeq::monomial(2, 3);
    const CoeffSeq z3 = CoeffSeq::monomial(3);
    for (Space sp : {Space::Fock, Space::Hp, Space::Fp})
        CHECK(inner(KernelSpec(sp, 2), z2, z3) == Complex(0.0));

    CHECK(inner(KernelSpec(Space::Fp, 1), CoeffSeq::monomial(2), CoeffSeq::monomial(2)).real() ==
          doctest::Approx(18.0));
}

TEST_CASE("norm_sq examples") {
    CHECK(norm_sq(KernelSpec(Space::Hp, 1), CoeffSeq::zero(5)) == 0.0);

    CoeffSeq one_plus_z = CoeffSeq::zero(1);
    one_plus_z.coeffs[0] = 1.0;
    one_plus_z.coeffs[1] = 1.0;
    CHECK(norm_sq(KernelSpec(Space::Hp, 1), one_plus_z) == doctest::Approx(1.25).epsilon(1e-15));

    // normalized monomial z^n / sqrt(n!)
    const int n = 12;
    CoeffSeq f = CoeffSeq::monomial(n);
    f.coeffs[static_cast<size_t>(n)] = 1.0 / std::sqrt(std::tgamma(n + 1.0));
    CHECK(norm_sq(KernelSpec(Space::Fock, 0), f) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner is conjugate symmetric and linear") {
    std::mt19937_64 rng(7);
    for (int c = 0; c < 50; ++c) {
        const KernelSpec spec(static_cast<Space>(c % 3), c % 3);
        const CoeffSeq f = random_poly(rng, 12), g = random_poly(rng, 12);
        const Complex a = inner(spec, f, g);
        const Complex b = inner(spec, g, f);
        CHECK(std::abs(a - std::conj(b)) <= 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("inner zero-pads mismatched truncations") {
    const CoeffSeq shorter = CoeffSeq::monomial(1, 1);
    CoeffSeq longer = CoeffSeq::zero(5);
    longer.coeffs[1] = 2.0;
    longer.coeffs[5] = 100.0;  // pairs against an implicit zero
    const Complex v = inner(KernelSpec(Space::Fock, 0), shorter, longer);
    CHECK(v == Complex(2.0));
}

TEST_CASE("eval") {
    CHECK(eval(CoeffSeq::monomial(2), Complex(1.0, 1.0)) == Complex(0.0, 2.0));
    CHECK(eval(CoeffSeq::monomial(0), Complex(42.0, -3.0)) == Complex(1.0));

    CoeffSeq expseries = CoeffSeq::zero(40);
    double inv_fact = 1.0;
    for (int n = 0; n <= 40; ++n) {
        expseries.coeffs[static_cast<size_t>(n)] = inv_fact;
        inv_fact /= (n + 1.0);
    }
    CHECK(std::abs(eval(expseries, Complex(1.0)) - std::exp(1.0)) <= 1e-14);
}

TEST_CASE("evaluation is bounded by norm times kernel norm") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int c = 0; c < 50; ++c) {
        const KernelSpec spec(Space::Hp, c % 3);
        const CoeffSeq f = random_poly(rng, 20);
        const Complex w(u(rng), u(rng));
        const double kw = kernels::kernel_eval(spec, w, w, 80).series_value.real();
        const double bound = std::sqrt(norm_sq(spec, f)) * std::sqrt(kw);
        CHECK(std::abs(eval(f, w)) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(CoeffSeq::zero(-1), std::invalid_argument);
    CHECK_THROWS_AS(CoeffSeq::monomial(-2), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec(Space::Hp, -1), std::invalid_argument);
    CHECK(CoeffSeq().truncation() == 0);
}

TEST_CASE("CoeffSeq JSON round trip and validation") {
    std::mt19937_64 rng(23);
    for (int c = 0; c < 20; ++c) {
        const CoeffSeq f = random_poly(rng, c);
        const CoeffSeq g = coeffseq_from_json(coeffseq_to_json(f));
        REQUIRE(g.truncation() == f.truncation());
        for (int n = 0; n <= f.truncation(); ++n)
            CHECK(g.coeffs[static_cast<size_t>(n)] == f.coeffs[static_cast<size_t>(n)]);
    }

    CHECK_THROWS_AS(coeffseq_from_json(nlohmann::json::parse(R"({"coeffs": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        coeffseq_from_json(nlohmann::json::parse(R"({"truncation": 1, "coeffs": [[0,0]]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        coeffseq_from_json(nlohmann::json::parse(R"({"truncation": 0, "coeffs": [[0]]})")),
        std::invalid_argument);
}
