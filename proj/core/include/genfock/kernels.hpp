#pragma once

#include "genfock/coeffspace.hpp"
#include "genfock/types.hpp"

namespace genfock::kernels {

/// One kernel evaluation through two independent routes. The truncated
/// series is the defining expression; the closed form goes through the
/// Touchard polynomial (Hp) or the 2pF2p series (Fp).
struct KernelValue {
    Complex series_value{0.0};
    Complex closed_value{0.0};
    double abs_gap = 0.0;
    int terms_used = 0;
    double last_term_mag = 0.0;  // truncation diagnostic
};

/// K_p(z, w) = sum (n+1)^{2p} (z conj(w))^n / n!
/// closed:     e^t * (T_{2p+1}(t)/t) with t = z conj(w), the division taken
/// on exact polynomial coefficients so t = 0 is an ordinary point.
KernelValue kernel_hp(int p, Complex z, Complex w, int N);

/// K_p(z, w) = sum (z conj(w))^n / ((n+1)^{2p} n!), closed via hyper_1s2s.
KernelValue kernel_fp(int p, Complex z, Complex w, int N);

/// Dispatch on spec.space (Fock goes through p = 0).
KernelValue kernel_eval(const KernelSpec& spec, Complex z, Complex w, int N);

/// The kernel section K(., w) materialized as a CoeffSeq of degree N:
/// coefficient n = conj(w)^n / weight(spec, n).
CoeffSeq kernel_section(const KernelSpec& spec, Complex w, int N);

/// |<f, K(., w)> - f(w)| with the section built at degree N.
double reproduce_check(const KernelSpec& spec, const CoeffSeq& f, Complex w, int N);

}  // namespace genfock::kernels
