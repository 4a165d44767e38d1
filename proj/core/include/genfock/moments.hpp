#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "genfock/types.hpp"

namespace genfock::moments {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Exact real moment sequence s_0, s_1, ... given by a generator.
struct MomentSeq {
    std::function<Rational(int)> gen;
    std::string label;

    Rational at(int n) const { return gen(n); }
};

/// s_n = n! / (n+1)^{2p}  (these moments do admit a radial measure).
MomentSeq moment_seq_hp(int p);
/// s_n = n! (n+1)^{2p}  (no radial measure; the Hankel test fails).
MomentSeq moment_seq_fp(int p);
/// s_n = n!.
MomentSeq moment_seq_factorial();
/// Arbitrary explicit front terms (used for user data; doubles convert to
/// rationals exactly).
MomentSeq moment_seq_values(std::vector<Rational> values, std::string label);

/// (N+1) x (N+1) matrix with entry (i, j) = s_{i+j}, or s_{i+j+1} when
/// shifted (the Hankel matrix of the shifted sequence Es).
RatMatrix hankel(const MomentSeq& s, int N, bool shifted);

enum class PsdMode { ExactMinors, FloatEig };

struct HankelReport {
    int order = 0;            // N for an (N+1) x (N+1) matrix
    std::string kind;         // "H(s)" or "H(Es)"
    double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();  // float path only
    std::vector<Rational> leading_minors;  // exact path only
    bool psd = false;
};

/// Exact determinant by rational Gaussian elimination with pivoting.
Rational rational_det(RatMatrix a);

/// Leading principal minors d_1..d_n, fraction-free (Bareiss) on the
/// denominator-cleared matrix when pivots allow, else per-minor elimination.
std::vector<Rational> leading_minors(const RatMatrix& a);

/// PSD verdict. Exact path: negative leading minor refutes; all positive
/// proves; zeros fall back to checking every principal minor. Float path:
/// min eigenvalue >= -1e-10 (1 + trace).
HankelReport psd_check(const RatMatrix& a, PsdMode mode);

/// Reports for H_N(s) and H_N(Es), N = 0..N_max, in exact mode. The overall
/// Stieltjes verdict is the conjunction.
std::vector<HankelReport> stieltjes_certificate(const MomentSeq& s, int N_max);

bool certificate_verdict(const std::vector<HankelReport>& reports);

/// s_n <= M^n (2n)! for all n <= N, checked in log-domain.
bool carleman_bound_check(const MomentSeq& s, double M, int N);

}  // namespace genfock::moments
