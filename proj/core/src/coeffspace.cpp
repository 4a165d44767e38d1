#include "genfock/coeffspace.hpp"

#include <algorithm>
#include <cmath>

namespace genfock {

std::string space_name(Space s) {
    switch (s) {
        case Space::Fock: return "fock";
        case Space::Hp: return "hp";
        case Space::Fp: return "fp";
    }
    return "?";
}

bool CoeffSeq::all_finite() const {
    for (const Complex& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

CoeffSeq CoeffSeq::zero(int N) {
    if (N < 0) throw std::invalid_argument("CoeffSeq::zero: N must be >= 0");
    return CoeffSeq(std::vector<Complex>(static_cast<size_t>(N) + 1, Complex(0.0)));
}

CoeffSeq CoeffSeq::monomial(int n, int N) {
    if (n < 0) throw std::invalid_argument("CoeffSeq::monomial: n must be >= 0");
    CoeffSeq f = zero(std::max(n, N));
    f.coeffs[static_cast<size_t>(n)] = Complex(1.0);
    return f;
}

double weight(const KernelSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("weight: n must be >= 0");
    const int q = 2 * spec.p;
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
        // w_{k+1}/w_k: interleaving the polynomial ratio with the factorial
        // step keeps Hp weights in range a little longer than n! alone.
        w *= static_cast<double>(k + 1);
        switch (spec.space) {
            case Space::Fock: break;
            case Space::Hp:
                w *= std::pow(static_cast<double>(k + 1) / static_cast<double>(k + 2), q);
                break;
            case Space::Fp:
                w *= std::pow(static_cast<double>(k + 2) / static_cast<double>(k + 1), q);
                break;
        }
    }
    if (!std::isfinite(w))
        throw std::overflow_error("weight: linear-domain overflow at n = " + std::to_string(n));
    return w;
}

double log_weight(const KernelSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("log_weight: n must be >= 0");
    const double lf = std::lgamma(static_cast<double>(n) + 1.0);
    const double lp = 2.0 * spec.p * std::log(static_cast<double>(n) + 1.0);
    switch (spec.space) {
        case Space::Fock: return lf;
        case Space::Hp: return lf - lp;
        case Space::Fp: return lf + lp;
    }
    return lf;
}

Rational weight_exact(const KernelSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("weight_exact: n must be >= 0");
    const Rational fact(factorial_big(static_cast<unsigned>(n)));
    const Rational poly(int_pow(BigInt(n + 1), static_cast<unsigned>(2 * spec.p)));
    switch (spec.space) {
        case Space::Fock: return fact;
        case Space::Hp: return fact / poly;
        case Space::Fp: return fact * poly;
    }
    return fact;
}

Complex inner(const KernelSpec& spec, const CoeffSeq& f, const CoeffSeq& g) {
    const int N = std::min(f.truncation(), g.truncation());
    // Terms above the shorter truncation pair against implicit zeros.
    Complex acc(0.0);
    const int q = 2 * spec.p;
    double w = 1.0;
    for (int n = 0; n <= N; ++n) {
        acc += w * f.coeffs[static_cast<size_t>(n)] * std::conj(g.coeffs[static_cast<size_t>(n)]);
        w *= static_cast<double>(n + 1);
        switch (spec.space) {
            case Space::Fock: break;
            case Space::Hp:
                w *= std::pow(static_cast<double>(n + 1) / static_cast<double>(n + 2), q);
                break;
            case Space::Fp:
                w *= std::pow(static_cast<double>(n + 2) / static_cast<double>(n + 1), q);
                break;
        }
    }
    return acc;
}

double norm_sq(const KernelSpec& spec, const CoeffSeq& f) {
    double acc = 0.0;
    double w = 1.0;
    const int q = 2 * spec.p;
    for (int n = 0; n <= f.truncation(); ++n) {
        acc += w * std::norm(f.coeffs[static_cast<size_t>(n)]);
        w *= static_cast<double>(n + 1);
        switch (spec.space) {
            case Space::Fock: break;
            case Space::Hp:
                w *= std::pow(static_cast<double>(n + 1) / static_cast<double>(n + 2), q);
                break;
            case Space::Fp:
                w *= std::pow(static_cast<double>(n + 2) / static_cast<double>(n + 1), q);
                break;
        }
    }
    return acc;
}

Complex eval(const CoeffSeq& f, Complex z) {
    Complex acc(0.0);
    for (int n = f.truncation(); n >= 0; --n) acc = acc * z + f.coeffs[static_cast<size_t>(n)];
    return acc;
}

}  // namespace genfock
