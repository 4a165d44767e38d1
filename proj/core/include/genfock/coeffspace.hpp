#pragma once

#include <string>
#include <vector>

#include "genfock/types.hpp"

namespace genfock {

/// Which coefficient weight the inner product uses:
///   Fock : n!
///   Hp   : n! / (n+1)^{2p}
///   Fp   : n! * (n+1)^{2p}
enum class Space { Fock, Hp, Fp };

std::string space_name(Space s);

struct KernelSpec {
    Space space = Space::Fock;
    int p = 0;  // >= 0; p = 0 collapses Hp and Fp onto Fock

    KernelSpec() = default;
    KernelSpec(Space s, int p_) : space(s), p(p_) {
        if (p < 0) throw std::invalid_argument("KernelSpec: p must be >= 0");
    }
};

/// Truncated power-series coefficient vector a_0..a_N. The truncation degree
/// is implied by the vector length, so the length invariant holds by
/// construction.
struct CoeffSeq {
    std::vector<Complex> coeffs;

    CoeffSeq() : coeffs(1, Complex(0.0)) {}
    explicit CoeffSeq(std::vector<Complex> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.assign(1, Complex(0.0));
    }

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

    Complex at(int n) const {
        return (n >= 0 && n <= truncation()) ? coeffs[static_cast<size_t>(n)]
                                             : Complex(0.0);
    }

    bool all_finite() const;

    static CoeffSeq zero(int N);
    /// z^n, truncated at max(n, N).
    static CoeffSeq monomial(int n, int N = -1);
};

/// Coefficient weight w_n of the inner product, linear domain. Computed by a
/// running recurrence rather than a naive factorial; throws
/// std::overflow_error once the value leaves double range (n ~ 171).
double weight(const KernelSpec& spec, int n);

/// log of weight(spec, n); valid far beyond the linear-domain range.
double log_weight(const KernelSpec& spec, int n);

/// Exact rational weight.
Rational weight_exact(const KernelSpec& spec, int n);

/// <f, g> = sum_n w_n a_n conj(b_n); mismatched truncations zero-pad.
Complex inner(const KernelSpec& spec, const CoeffSeq& f, const CoeffSeq& g);

/// <f, f>, accumulated through |a_n|^2 so the result is exactly real.
double norm_sq(const KernelSpec& spec, const CoeffSeq& f);

/// Horner evaluation of sum a_n z^n.
Complex eval(const CoeffSeq& f, Complex z);

}  // namespace genfock
