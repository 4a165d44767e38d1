#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "genfock/coeffspace.hpp"
#include "genfock/types.hpp"

namespace genfock::bargmann {

/// Gauss-Hermite rule rebased so that sum W_i f(x_i) approximates
/// int f(x) dx directly, exact (up to rounding) whenever f(x) is
/// q(x) e^{-x^2/2} with q a polynomial of degree <= 2M-1. That is precisely
/// the shape of every pairing of Hermite functions used here.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int count() const { return static_cast<int>(nodes.size()); }

    static QuadratureRule gauss_hermite(int M);

    Complex integrate(const std::function<Complex(double)>& f) const;
};

/// An L^2(R) element given by Hermite coefficients c_n = <phi, xi_n>, by a
/// callable sample rule, or both.
class L2Function {
  public:
    static L2Function zero();
    static L2Function from_hermite(CoeffSeq coeffs);
    static L2Function from_callable(std::function<Complex(double)> fn);
    static L2Function from_both(CoeffSeq coeffs, std::function<Complex(double)> fn);
    /// xi_n as a pure callable (forces transforms through quadrature
    /// extraction rather than reading stored coefficients).
    static L2Function hermite_mode(int n);

    bool has_coeffs() const { return coeffs_.has_value(); }
    bool has_callable() const { return static_cast<bool>(fn_); }

    /// c_0..c_N: stored coefficients zero-padded, else extracted from the
    /// callable with the given rule.
    std::vector<Complex> hermite_coeffs(int N, const QuadratureRule& quad) const;

    /// Pointwise value: the callable when present, else synthesis from the
    /// stored coefficients.
    Complex operator()(double x) const;

  private:
    std::optional<CoeffSeq> coeffs_;
    std::function<Complex(double)> fn_;
};

/// A(z, x) = (2 pi)^{-1/4} exp(-x^2/4 - z^2/2 + z x).
Complex kernel_A(Complex z, double x);

/// A_p(z, x) = sum (n+1)^p z^n xi_n(x) / sqrt(n!), truncated at N. The
/// z^n/sqrt(n!) factor is accumulated multiplicatively.
Complex kernel_Ap(int p, Complex z, double x, int N);

/// calA_p(z, x) = sum z^n xi_n(x) / ((n+1)^p sqrt(n!)), truncated at N.
Complex kernel_calAp(int p, Complex z, double x, int N);

enum class TransformKind { B, Bp, SBp };

/// Coefficients of the transformed entire function on degrees 0..N:
/// b_n = c_n s_n / sqrt(n!) with s_n = 1, (n+1)^p, (n+1)^{-p} respectively.
CoeffSeq transform_coeffs(TransformKind kind, int p, const L2Function& phi, int N,
                          const QuadratureRule& quad);

/// Transform value at z via the coefficient route.
Complex transform(TransformKind kind, int p, const L2Function& phi, Complex z, int N,
                  const QuadratureRule& quad);

struct TransformResult {
    Complex value{0.0};       // coefficient route
    Complex direct{0.0};      // direct quadrature of the kernel integral
    double route_gap = 0.0;   // |value - direct|
    double tail_ratio = 0.0;  // |c_N| / max|c_n|
    bool tail_warning = false;
};

/// Both routes plus the unresolved-tail diagnostic (warns when
/// |c_N| > 1e-8 max |c_n|).
TransformResult transform_report(TransformKind kind, int p, const L2Function& phi,
                                 Complex z, int N, const QuadratureRule& quad);

/// Preimage of a finite-degree f under the classical transform:
/// Hermite coefficients c_n = b_n sqrt(n!).
L2Function inverse_B(const CoeffSeq& f);

/// d^k/dz^k A(z, x) = He_k(x - z) A(z, x).
Complex dkA(int k, Complex z, double x);

/// sum_{j<=p} sum_{k<=j} C(p,j) S(j,k) Mz^k Dz^k applied to a transformed
/// coefficient sequence (exact integer multiplier per degree); equals the
/// diagonal (n+1)^p route.
CoeffSeq stirling_form_Bp(int p, const CoeffSeq& f_B, int N);

/// |A_{p+1} - A_p - Mz (Id + Dz Mz)^p Dz A| at (z, x): left side by kernel
/// series, right side by the literal operator matrices acting on the
/// truncated coefficient sequence of A in z.
double recurrence_gap(int p, Complex z, double x, int N);

/// Quadrature inner product of two transform-kernel sections in x:
/// <A_p^z, A_p^w> (kind Hp) or <calA_p^z, calA_p^w> (kind Fp).
Complex kernel_gram(Space kind, int p, Complex z, Complex w, const QuadratureRule& quad,
                    int N);

}  // namespace genfock::bargmann
