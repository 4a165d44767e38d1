#include "genfock/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace genfock::specfun {

Complex hermite_He(int n, Complex z) {
    if (n < 0) throw std::invalid_argument("hermite_He: n must be >= 0");
    Complex hm(1.0);  // He_0
    if (n == 0) return hm;
    Complex h = z;  // He_1
    for (int k = 1; k < n; ++k) {
        Complex next = z * h - static_cast<double>(k) * hm;
        hm = h;
        h = next;
    }
    return h;
}

HermiteEval hermite_xi_all(int N, double x) {
    if (N < 0) throw std::invalid_argument("hermite_xi_all: N must be >= 0");
    HermiteEval out;
    out.x = x;
    out.values.resize(static_cast<size_t>(N) + 1);
    const double xi0 = std::pow(2.0 * M_PI, -0.25) * std::exp(-0.25 * x * x);
    out.values[0] = xi0;
    if (N == 0) return out;
    out.values[1] = x * xi0;
    for (int n = 1; n < N; ++n) {
        out.values[static_cast<size_t>(n) + 1] =
            (x * out.values[static_cast<size_t>(n)] -
             std::sqrt(static_cast<double>(n)) * out.values[static_cast<size_t>(n) - 1]) /
            std::sqrt(static_cast<double>(n) + 1.0);
    }
    return out;
}

double hermite_xi(int n, double x) { return hermite_xi_all(n, x).values.back(); }

double log_hermite_norm(int n) {
    return 0.25 * std::log(2.0 * M_PI) + 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
}

StirlingTable::StirlingTable(int max_n) : max_n_(max_n) {
    if (max_n < 0) throw std::invalid_argument("StirlingTable: max_n must be >= 0");
    if (max_n > kMaxSupported)
        throw std::out_of_range("StirlingTable: max_n beyond supported cap of 30");
    rows_.resize(static_cast<size_t>(max_n) + 1);
    rows_[0] = {BigInt(1)};  // S(0,0) = 1
    for (int n = 1; n <= max_n; ++n) {
        rows_[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, BigInt(0));
        for (int k = 1; k <= n; ++k) {
            const auto& prev = rows_[static_cast<size_t>(n) - 1];
            BigInt v = prev[static_cast<size_t>(k) - 1];
            if (k <= n - 1) v += BigInt(k) * prev[static_cast<size_t>(k)];
            rows_[static_cast<size_t>(n)][static_cast<size_t>(k)] = v;
        }
    }
}

const BigInt& StirlingTable::at(int n, int k) const {
    if (n < 0 || k < 0 || k > n || n > max_n_)
        throw std::out_of_range("StirlingTable::at: need 0 <= k <= n <= max_n");
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

namespace {
const StirlingTable& shared_table() {
    static StirlingTable table(StirlingTable::kMaxSupported);
    return table;
}
}  // namespace

BigInt stirling2(int n, int k) { return shared_table().at(n, k); }

std::vector<BigInt> touchard_coeffs(int n) {
    std::vector<BigInt> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = stirling2(n, k);
    return c;
}

Complex touchard(int n, Complex z) {
    const auto c = touchard_coeffs(n);
    Complex acc(0.0);
    for (int k = n; k >= 0; --k)
        acc = acc * z + c[static_cast<size_t>(k)].convert_to<double>();
    return acc;
}

Rational touchard_exact(int n, const Rational& x) {
    const auto c = touchard_coeffs(n);
    Rational acc(0);
    for (int k = n; k >= 0; --k) acc = acc * x + Rational(c[static_cast<size_t>(k)]);
    return acc;
}

double pochhammer(double a, int n) {
    if (a <= 0.0) throw std::invalid_argument("pochhammer: a must be > 0");
    if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
    return r;
}

Complex hyper_1s2s(int p, Complex z, int N) {
    if (p < 0 || N < 0) throw std::invalid_argument("hyper_1s2s: p, N must be >= 0");
    std::complex<long double> term(1.0L);
    std::complex<long double> acc(0.0L);
    const std::complex<long double> zl(z);
    for (int n = 0; n <= N; ++n) {
        acc += term;
        // [(1)_n / (2)_n]^{2p} ratio step is ((n+1)/(n+2))^{2p}.
        term *= zl *
                std::pow(static_cast<long double>(n + 1) / static_cast<long double>(n + 2),
                         2 * p) /
                static_cast<long double>(n + 1);
    }
    return Complex(acc);
}

}  // namespace genfock::specfun
