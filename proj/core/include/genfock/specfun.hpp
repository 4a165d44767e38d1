#pragma once

#include <vector>

#include "genfock/types.hpp"

namespace genfock::specfun {

/// Probabilists' Hermite polynomial He_n at a complex point, by the
/// three-term recurrence H_{k+1}(z) = z H_k(z) - k H_{k-1}(z).
Complex hermite_He(int n, Complex z);

/// Batched values xi_0(x)..xi_N(x) of the orthonormal Hermite functions
/// xi_n = h_n / ||h_n||, computed by the normalized recurrence
///   xi_{n+1} = (x xi_n - sqrt(n) xi_{n-1}) / sqrt(n+1),
/// which never forms a factorial and is stable to n in the hundreds.
struct HermiteEval {
    double x = 0.0;
    std::vector<double> values;  // xi_0..xi_N

    int max_n() const { return static_cast<int>(values.size()) - 1; }
};

HermiteEval hermite_xi_all(int N, double x);
double hermite_xi(int n, double x);

/// log ||h_n||_{L2} = log((2pi)^{1/4} sqrt(n!)); h_n = xi_n * exp of this.
double log_hermite_norm(int n);

/// Exact-integer triangle of Stirling numbers of the second kind, built by
/// the additive recurrence. Capped at n = 30; construction beyond the cap is
/// refused.
class StirlingTable {
  public:
    static constexpr int kMaxSupported = 30;

    explicit StirlingTable(int max_n);

    int max_n() const { return max_n_; }
    const BigInt& at(int n, int k) const;  // throws std::out_of_range outside 0<=k<=n<=max_n

  private:
    int max_n_;
    std::vector<std::vector<BigInt>> rows_;
};

/// S(n, k) from a shared table. Throws std::out_of_range for k > n,
/// negatives, or n beyond the supported cap.
BigInt stirling2(int n, int k);

/// Coefficients of the Touchard polynomial T_n, index k = 0..n (the constant
/// term is 0 for n >= 1).
std::vector<BigInt> touchard_coeffs(int n);

/// T_n(z), Horner over the exact coefficients, converted to floating complex
/// only at the multiply-accumulate step.
Complex touchard(int n, Complex z);

/// T_n(x) in exact rational arithmetic.
Rational touchard_exact(int n, const Rational& x);

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1) by running product.
double pochhammer(double a, int n);

/// Partial sum of 2pF2p(1,...,1; 2,...,2; z): term ratio
/// t_{n+1}/t_n = z * ((n+1)/(n+2))^{2p} / (n+1), summed to n = N.
/// For p = 0 this is the truncated exponential series.
Complex hyper_1s2s(int p, Complex z, int N);

}  // namespace genfock::specfun
