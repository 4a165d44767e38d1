#include "genfock/moments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace genfock::moments {

MomentSeq moment_seq_hp(int p) {
    if (p < 0) throw std::invalid_argument("moment_seq_hp: p must be >= 0");
    return {[p](int n) {
                return Rational(factorial_big(static_cast<unsigned>(n)),
                                int_pow(BigInt(n + 1), static_cast<unsigned>(2 * p)));
            },
            "hp:" + std::to_string(p)};
}

MomentSeq moment_seq_fp(int p) {
    if (p < 0) throw std::invalid_argument("moment_seq_fp: p must be >= 0");
    return {[p](int n) {
                return Rational(factorial_big(static_cast<unsigned>(n)) *
                                int_pow(BigInt(n + 1), static_cast<unsigned>(2 * p)));
            },
            "fp:" + std::to_string(p)};
}

MomentSeq moment_seq_factorial() {
    return {[](int n) { return Rational(factorial_big(static_cast<unsigned>(n))); },
            "factorial"};
}

MomentSeq moment_seq_values(std::vector<Rational> values, std::string label) {
    auto v = std::make_shared<std::vector<Rational>>(std::move(values));
    return {[v](int n) {
                if (n < 0 || n >= static_cast<int>(v->size()))
                    throw std::out_of_range("moment sequence: index beyond supplied values");
                return (*v)[static_cast<size_t>(n)];
            },
            std::move(label)};
}

RatMatrix hankel(const MomentSeq& s, int N, bool shifted) {
    if (N < 0) throw std::invalid_argument("hankel: N must be >= 0");
    RatMatrix m(static_cast<size_t>(N) + 1,
                std::vector<Rational>(static_cast<size_t>(N) + 1));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                s.at(i + j + (shifted ? 1 : 0));
    return m;
}

Rational rational_det(RatMatrix a) {
    const size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("rational_det: not square");
    Rational det(1);
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

namespace {

RatMatrix leading_block(const RatMatrix& a, size_t k) {
    RatMatrix b(k, std::vector<Rational>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) b[i][j] = a[i][j];
    return b;
}

/// Bareiss one-pass: on an integer matrix with nonzero leading minors the
/// pivot after step k equals the order-(k+1) leading minor. Returns false if
/// a zero pivot forces the caller onto the per-minor path.
bool bareiss_minors(const std::vector<std::vector<BigInt>>& input,
                    std::vector<BigInt>& minors) {
    auto a = input;
    const size_t n = a.size();
    minors.assign(n, BigInt(0));
    BigInt prev(1);
    for (size_t k = 0; k < n; ++k) {
        const BigInt pivot = a[k][k];  // leading minor of order k+1
        minors[k] = pivot;
        if (pivot == 0 && k + 1 < n) return false;  // cannot divide further
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = pivot;
    }
    return true;
}

}  // namespace

std::vector<Rational> leading_minors(const RatMatrix& a) {
    const size_t n = a.size();
    std::vector<Rational> out(n);
    // Clear denominators: det(L*A leading block k) = L^k * minor_k with
    // L > 0, so dividing back is exact.
    BigInt L(1);
    for (const auto& row : a)
        for (const auto& e : row) L = boost::multiprecision::lcm(L, denominator(e));
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Rational scaled = a[i][j] * Rational(L);
            m[i][j] = numerator(scaled);  // denominator is 1 by construction
        }
    std::vector<BigInt> mi;
    if (bareiss_minors(m, mi)) {
        BigInt scale(1);
        for (size_t k = 0; k < n; ++k) {
            scale *= L;
            out[k] = Rational(mi[k]) / Rational(scale);
        }
        return out;
    }
    for (size_t k = 1; k <= n; ++k) out[k - 1] = rational_det(leading_block(a, k));
    return out;
}

namespace {

/// Every principal minor (not only leading) is >= 0. Only reached for tiny
/// matrices in the degenerate all-leading-minors-nonnegative-with-zeros case.
bool all_principal_minors_nonneg(const RatMatrix& a) {
    const size_t n = a.size();
    if (n > 16) throw std::invalid_argument("psd_check: degenerate exact path capped at 16");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        RatMatrix b(idx.size(), std::vector<Rational>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) b[i][j] = a[idx[i]][idx[j]];
        if (rational_det(std::move(b)) < 0) return false;
    }
    return true;
}

}  // namespace

HankelReport psd_check(const RatMatrix& a, PsdMode mode) {
    HankelReport r;
    r.order = static_cast<int>(a.size()) - 1;
    if (mode == PsdMode::FloatEig) {
        const int n = static_cast<int>(a.size());
        Eigen::MatrixXd m(n, n);
        double trace = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m(i, j) = to_double(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                if (i == j) trace += m(i, j);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        r.min_eigenvalue = es.eigenvalues().minCoeff();
        r.psd = r.min_eigenvalue >= -1e-10 * (1.0 + trace);
        return r;
    }
    r.leading_minors = leading_minors(a);
    bool any_zero = false;
    bool any_negative = false;
    for (const Rational& d : r.leading_minors) {
        if (d < 0) any_negative = true;
        if (d == 0) any_zero = true;
    }
    if (any_negative) {
        r.psd = false;
    } else if (!any_zero) {
        r.psd = true;  // positive definite
    } else {
        // Leading minors >= 0 alone do not decide semidefiniteness.
        r.psd = all_principal_minors_nonneg(a);
    }
    return r;
}

std::vector<HankelReport> stieltjes_certificate(const MomentSeq& s, int N_max) {
    if (N_max < 1) throw std::invalid_argument("stieltjes_certificate: N_max must be >= 1");
    std::vector<HankelReport> out;
    for (int N = 0; N <= N_max; ++N) {
        for (bool shifted : {false, true}) {
            HankelReport r = psd_check(hankel(s, N, shifted), PsdMode::ExactMinors);
            r.kind = shifted ? "H(Es)" : "H(s)";
            out.push_back(std::move(r));
        }
    }
    return out;
}

bool certificate_verdict(const std::vector<HankelReport>& reports) {
    for (const auto& r : reports)
        if (!r.psd) return false;
    return true;
}

bool carleman_bound_check(const MomentSeq& s, double M, int N) {
    if (M <= 0.0) throw std::invalid_argument("carleman_bound_check: M must be > 0");
    // A double M is an exact rational, so the bound compares exactly; this
    // keeps boundary sequences s_n = M^n (2n)! on the passing side.
    const Rational Mr(M);
    for (int n = 0; n <= N; ++n) {
        const Rational bound =
            rat_pow(Mr, n) * Rational(factorial_big(static_cast<unsigned>(2 * n)));
        if (s.at(n) > bound) return false;
    }
    return true;
}

}  // namespace genfock::moments
