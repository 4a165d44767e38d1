#include "genfock/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "genfock/bargmann.hpp"
#include "genfock/coeffspace.hpp"
#include "genfock/kernels.hpp"
#include "genfock/moments.hpp"
#include "genfock/operators.hpp"
#include "genfock/specfun.hpp"
#include "genfock/types.hpp"

namespace genfock::verify {

namespace {

using bargmann::L2Function;
using bargmann::QuadratureRule;
using bargmann::TransformKind;
using ops::BaseOp;
using ops::DiagonalOp;
using ops::OpMatrix;
using ops::WeightedShiftOp;

struct Env {
    Profile profile;
    std::uint64_t seed;
    int pmax;         // quick 2, full 4
    int trunc;        // quick 32, full 64
    int cases_small;  // per-check random case budget
    int cases_large;
    QuadratureRule quad;
};

std::mt19937_64 rng_for(const Env& env, const std::string& id) {
    std::uint64_t h = env.seed;
    for (char c : id) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return std::mt19937_64(splitmix64(h));
}

Complex random_complex(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> u(-rmax, rmax);
    return Complex(u(rng), u(rng));
}

CoeffSeq random_poly(std::mt19937_64& rng, int deg) {
    CoeffSeq f = CoeffSeq::zero(deg);
    for (int n = 0; n <= deg; ++n) f.coeffs[static_cast<size_t>(n)] = random_complex(rng, 1.0);
    return f;
}

/// Explicit alternating-sum route for S(n, k), independent of the table
/// recurrence: S(n,k) = (1/k!) sum_i (-1)^i C(k,i) (k-i)^n.
BigInt stirling_explicit(int n, int k) {
    BigInt acc = 0;
    for (int i = 0; i <= k; ++i) {
        BigInt term = binomial_big(static_cast<unsigned>(k), static_cast<unsigned>(i)) *
                      int_pow(BigInt(k - i), static_cast<unsigned>(n));
        if (i % 2 == 1) term = -term;
        acc += term;
    }
    return acc / factorial_big(static_cast<unsigned>(k));
}

using CheckFn = std::function<void(const Env&, CheckResult&)>;

struct CheckDef {
    std::string id;
    std::string ref;
    double threshold;
    CheckFn fn;
};

void worst(double& metric, double candidate) { metric = std::max(metric, candidate); }

// ---------------------------------------------------------------------------
// coeffspace

void check_weight_p0(const Env&, CheckResult& r) {
    int bad = 0;
    for (int n = 0; n <= 100; ++n) {
        const Rational w = weight_exact(KernelSpec(Space::Fock, 0), n);
        if (weight_exact(KernelSpec(Space::Hp, 0), n) != w) ++bad;
        if (weight_exact(KernelSpec(Space::Fp, 0), n) != w) ++bad;
        const double wf = weight(KernelSpec(Space::Fock, 0), n);
        if (weight(KernelSpec(Space::Hp, 0), n) != wf) ++bad;
        if (weight(KernelSpec(Space::Fp, 0), n) != wf) ++bad;
    }
    r.params["n_max"] = "100";
    r.metric = bad;
}

void check_inner_linearity(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    const int cases = env.cases_small;
    for (int c = 0; c < cases; ++c) {
        const Space sp = static_cast<Space>(c % 3);
        const KernelSpec spec(sp, c % (env.pmax + 1));
        const int deg = 16;
        CoeffSeq f = random_poly(rng, deg), g = random_poly(rng, deg), h = random_poly(rng, deg);
        const Complex a = random_complex(rng, 2.0), b = random_complex(rng, 2.0);
        CoeffSeq combo = CoeffSeq::zero(deg);
        for (int n = 0; n <= deg; ++n)
            combo.coeffs[static_cast<size_t>(n)] =
                a * f.coeffs[static_cast<size_t>(n)] + b * g.coeffs[static_cast<size_t>(n)];
        const Complex lhs = inner(spec, combo, h);
        const Complex rhs = a * inner(spec, f, h) + b * inner(spec, g, h);
        worst(r.metric, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    r.params["cases"] = std::to_string(cases);
}

void check_inner_self_real(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const KernelSpec spec(static_cast<Space>(c % 3), c % (env.pmax + 1));
        const CoeffSeq f = random_poly(rng, 20);
        const Complex v = inner(spec, f, f);
        worst(r.metric, std::abs(v.imag()) / (1e-300 + std::abs(v)));
        worst(r.metric, std::abs(v.real() - norm_sq(spec, f)) / (1.0 + std::abs(v)));
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_eval_bound(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const KernelSpec spec(Space::Hp, c % (env.pmax + 1));
        const CoeffSeq f = random_poly(rng, 24);
        const Complex w = random_complex(rng, 2.0);
        const double kw = kernels::kernel_eval(spec, w, w, 80).series_value.real();
        const double bound = std::sqrt(norm_sq(spec, f)) * std::sqrt(kw);
        const double val = std::abs(eval(f, w));
        if (val > bound) worst(r.metric, (val - bound) / bound);
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

// ---------------------------------------------------------------------------
// specfun

void check_hermite_orthonormal(const Env& env, CheckResult& r) {
    const int K = 20;
    std::vector<std::vector<double>> xi(env.quad.nodes.size());
    for (size_t i = 0; i < env.quad.nodes.size(); ++i)
        xi[i] = specfun::hermite_xi_all(K, env.quad.nodes[i]).values;
    for (int m = 0; m <= K; ++m)
        for (int n = m; n <= K; ++n) {
            double g = 0.0;
            for (size_t i = 0; i < env.quad.nodes.size(); ++i)
                g += env.quad.weights[i] * xi[i][static_cast<size_t>(m)] * xi[i][static_cast<size_t>(n)];
            worst(r.metric, std::abs(g - (m == n ? 1.0 : 0.0)));
        }
    r.params["modes"] = std::to_string(K + 1);
    r.params["nodes"] = std::to_string(env.quad.count());
}

void check_hermite_recurrence(const Env&, CheckResult& r) {
    int bad = 0;
    for (int zi = -3; zi <= 3; ++zi) {
        const Complex z(static_cast<double>(zi));
        for (int k = 1; k <= 10; ++k) {
            const Complex lhs = specfun::hermite_He(k + 1, z);
            const Complex rhs =
                z * specfun::hermite_He(k, z) - static_cast<double>(k) * specfun::hermite_He(k - 1, z);
            if (lhs != rhs) ++bad;  // integer-valued, so equality is exact
        }
    }
    r.metric = bad;
}

void check_stirling_dual(const Env&, CheckResult& r) {
    int bad = 0;
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= n; ++k)
            if (specfun::stirling2(n, k) != stirling_explicit(n, k)) ++bad;
    r.metric = bad;
}

void check_touchard_generating(const Env&, CheckResult& r) {
    const int K = 80;
    for (int n = 0; n <= 8; ++n) {
        for (double x = 0.25; x <= 3.0; x += 0.25) {
            // Long-double oracle: the polynomial side is exact at dyadic x,
            // so the absolute tolerance has to be carried by the series side.
            long double sum = 0.0L;
            long double term = 1.0L;  // x^k / k!
            for (int k = 0; k <= K; ++k) {
                sum += std::pow(static_cast<long double>(k), static_cast<long double>(n)) * term;
                term *= static_cast<long double>(x) / static_cast<long double>(k + 1);
            }
            const long double gen = std::exp(static_cast<long double>(-x)) * sum;
            worst(r.metric,
                  std::abs(static_cast<double>(
                      static_cast<long double>(specfun::touchard(n, Complex(x)).real()) - gen)));
        }
    }
    r.params["n_max"] = "8";
}

void check_touchard_odd(const Env&, CheckResult& r) {
    int bad = 0;
    for (int p = 0; p <= 6; ++p)
        if (specfun::touchard_coeffs(2 * p + 1)[0] != 0) ++bad;
    r.metric = bad;
}

// ---------------------------------------------------------------------------
// kernels

void two_route_metric(const Env& env, CheckResult& r, bool hp) {
    auto rng = rng_for(env, r.check_id);
    const int N = 60;
    for (int p = 0; p <= env.pmax; ++p) {
        for (int c = 0; c < env.cases_small; ++c) {
            const Complex z = random_complex(rng, 1.5);
            const Complex w = random_complex(rng, 1.5);
            const auto v = hp ? kernels::kernel_hp(p, z, w, N) : kernels::kernel_fp(p, z, w, N);
            worst(r.metric, v.abs_gap / (1.0 + std::abs(v.series_value)));
        }
        // pinned corner: z = w = 1
        const auto v = hp ? kernels::kernel_hp(p, 1.0, 1.0, N) : kernels::kernel_fp(p, 1.0, 1.0, N);
        worst(r.metric, v.abs_gap / (1.0 + std::abs(v.series_value)));
    }
    r.params["p_max"] = std::to_string(env.pmax);
    r.params["terms"] = std::to_string(N);
}

void check_hp_two_route(const Env& env, CheckResult& r) { two_route_metric(env, r, true); }
void check_fp_two_route(const Env& env, CheckResult& r) { two_route_metric(env, r, false); }

void check_kernel_hermitian(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const int p = c % (env.pmax + 1);
        const Complex z = random_complex(rng, 1.5), w = random_complex(rng, 1.5);
        const Complex a = kernels::kernel_hp(p, z, w, 60).series_value;
        const Complex b = kernels::kernel_hp(p, w, z, 60).series_value;
        worst(r.metric, std::abs(a - std::conj(b)) / (1.0 + std::abs(a)));
        const Complex c1 = kernels::kernel_fp(p, z, w, 60).series_value;
        const Complex c2 = kernels::kernel_fp(p, w, z, 60).series_value;
        worst(r.metric, std::abs(c1 - std::conj(c2)) / (1.0 + std::abs(c1)));
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_kernel_gram_psd(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (Space sp : {Space::Hp, Space::Fp}) {
        for (int p = 0; p <= std::min(env.pmax, 3); ++p) {
            const KernelSpec spec(sp, p);
            const int m = 6;
            std::vector<Complex> pts(m);
            for (auto& z : pts) z = random_complex(rng, 1.2);
            Eigen::MatrixXcd G(m, m);
            double trace = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    G(i, j) = kernels::kernel_eval(spec, pts[static_cast<size_t>(i)],
                                                   pts[static_cast<size_t>(j)], 60)
                                  .series_value;
                    if (i == j) trace += G(i, j).real();
                }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
            const double lam = es.eigenvalues().minCoeff();
            if (lam < 0) worst(r.metric, -lam / trace);
        }
    }
}

void check_reproducing(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    const int cases = env.cases_large;
    std::uniform_int_distribution<int> degd(0, 32);
    for (int c = 0; c < cases; ++c) {
        const KernelSpec spec(c % 2 == 0 ? Space::Hp : Space::Fp, c % 4);
        const int deg = degd(rng);
        const CoeffSeq f = random_poly(rng, deg);
        const Complex w = random_complex(rng, 1.4);
        const double err = kernels::reproduce_check(spec, f, w, deg);
        worst(r.metric, err / (1.0 + std::abs(eval(f, w))));
    }
    r.params["cases"] = std::to_string(cases);
}

void check_theta_bridge(const Env& env, CheckResult& r) {
    int bad = 0;
    for (int p = 0; p <= env.pmax; ++p) {
        for (int n = 0; n <= 60; ++n) {
            // section coefficient ratio: applying diag((n+1)^{2p}) twice to
            // the Fp section must give the Hp section, i.e.
            // (n+1)^{4p} / w_fp(n) == 1 / w_hp(n) exactly.
            const Rational lhs = rat_pow(Rational(n + 1), 4L * p) /
                                 weight_exact(KernelSpec(Space::Fp, p), n);
            const Rational rhs = Rational(1) / weight_exact(KernelSpec(Space::Hp, p), n);
            if (lhs != rhs) ++bad;
        }
    }
    r.params["n_max"] = "60";
    r.metric = bad;
}

// ---------------------------------------------------------------------------
// operators

void check_adjoint_pairing(const Env& env, CheckResult& r) {
    double m = 0.0;
    for (BaseOp op : {BaseOp::R0, BaseOp::I, BaseOp::Dz, BaseOp::Mz}) {
        worst(m, to_double(ops::adjoint_pairing_check(op, KernelSpec(Space::Fock, 0), 30)));
        for (int p = 1; p <= env.pmax; ++p) {
            worst(m, to_double(ops::adjoint_pairing_check(op, KernelSpec(Space::Hp, p), 30)));
            worst(m, to_double(ops::adjoint_pairing_check(op, KernelSpec(Space::Fp, p), 30)));
        }
    }
    r.params["n_max"] = "30";
    r.metric = m;
}

void check_table_vs_composed(const Env& env, CheckResult& r) {
    const int N = env.trunc >= 40 ? 40 : env.trunc;
    int bad = 0;
    for (Space sp : {Space::Hp, Space::Fp}) {
        for (int p = 0; p <= env.pmax; ++p) {
            const KernelSpec spec(sp, p);
            for (BaseOp op : {BaseOp::R0, BaseOp::I, BaseOp::Dz, BaseOp::Mz}) {
                const OpMatrix table = OpMatrix::of(ops::adjoint_of(op, spec), N);
                const OpMatrix composed = ops::composed_adjoint(op, spec, N);
                if (!composed.equal_on_columns(table, N - ops::composed_adjoint_margin(op, spec)))
                    ++bad;
            }
        }
    }
    r.params["trunc"] = std::to_string(N);
    r.metric = bad;
}

void check_shift_powers(const Env&, CheckResult& r) {
    int bad = 0;
    const WeightedShiftOp R0 = ops::base_op(BaseOp::R0);
    const WeightedShiftOp I = ops::base_op(BaseOp::I);
    const WeightedShiftOp Mz = ops::base_op(BaseOp::Mz);
    const WeightedShiftOp r0i = ops::compose(R0, I);
    const WeightedShiftOp ir0 = ops::compose(I, R0);
    const WeightedShiftOp aux = ops::compose(ops::compose(R0, R0), ops::compose(I, Mz));
    for (int k = 0; k <= 6; ++k) {
        const WeightedShiftOp a = ops::op_power(r0i, k);
        const WeightedShiftOp b = ops::op_power(ir0, k);
        const WeightedShiftOp c = ops::op_power(aux, k);
        if (a.shift() != 0 || b.shift() != 0 || c.shift() != 0) ++bad;
        for (int n = 0; n <= 30; ++n) {
            if (a.weight_at(n) != rat_pow(Rational(1, n + 1), k)) ++bad;
            const Rational exp_b = (n == 0 && k > 0) ? Rational(0) : rat_pow(Rational(1, std::max(n, 1)), k);
            if (b.weight_at(n) != exp_b) ++bad;
            if (c.weight_at(n) != rat_pow(Rational(1, n + 2), k)) ++bad;
        }
    }
    r.params["k_max"] = "6";
    r.metric = bad;
}

void check_commutator_closed(const Env& env, CheckResult& r) {
    const int N = 32;
    int bad = 0;
    for (Space sp : {Space::Hp, Space::Fp}) {
        for (int p = 0; p <= env.pmax; ++p) {
            const KernelSpec spec(sp, p);
            const OpMatrix mz = OpMatrix::of(ops::base_op(BaseOp::Mz), N);
            const OpMatrix mzs = OpMatrix::of(ops::adjoint_of(BaseOp::Mz, spec), N);
            const OpMatrix r0 = OpMatrix::of(ops::base_op(BaseOp::R0), N);
            const OpMatrix r0s = OpMatrix::of(ops::adjoint_of(BaseOp::R0, spec), N);
            const OpMatrix cm = ops::commutator_matrix(mz, mzs);
            const OpMatrix cr = ops::commutator_matrix(r0, r0s);
            for (int n = 0; n <= 30; ++n) {
                if (cm.at(n, n) != ops::commutator_diag_formula(ops::CommPair::MzMzStar, spec, n)) ++bad;
                if (cr.at(n, n) != ops::commutator_diag_formula(ops::CommPair::R0R0Star, spec, n)) ++bad;
            }
            // pinned boundary values at n = 0
            const Rational four_p(int_pow(BigInt(4), static_cast<unsigned>(p)));
            if (sp == Space::Hp && cr.at(0, 0) != four_p) ++bad;
            if (sp == Space::Fp && cr.at(0, 0) != Rational(1) / four_p) ++bad;
            if (sp == Space::Fp && cm.at(0, 0) != -four_p) ++bad;
        }
    }
    r.params["n_max"] = "30";
    r.metric = bad;
}

void check_p0_collapse(const Env&, CheckResult& r) {
    int bad = 0;
    const auto fock_dual = [](BaseOp op) {
        switch (op) {
            case BaseOp::R0: return BaseOp::I;
            case BaseOp::I: return BaseOp::R0;
            case BaseOp::Dz: return BaseOp::Mz;
            case BaseOp::Mz: return BaseOp::Dz;
        }
        return BaseOp::R0;
    };
    for (BaseOp op : {BaseOp::R0, BaseOp::I, BaseOp::Dz, BaseOp::Mz}) {
        const WeightedShiftOp expect = ops::base_op(fock_dual(op));
        for (Space sp : {Space::Hp, Space::Fp}) {
            const WeightedShiftOp got = ops::adjoint_of(op, KernelSpec(sp, 0));
            if (got.shift() != expect.shift()) ++bad;
            for (int n = 0; n <= 40; ++n)
                if (got.weight_at(n) != expect.weight_at(n)) ++bad;
        }
    }
    // [Mz, Dz] = -Id and [R0, I] = D0 on interior columns
    const int N = 12;
    const OpMatrix cm = ops::commutator_matrix(OpMatrix::of(ops::base_op(BaseOp::Mz), N),
                                               OpMatrix::of(ops::base_op(BaseOp::Dz), N));
    const OpMatrix cr = ops::commutator_matrix(OpMatrix::of(ops::base_op(BaseOp::R0), N),
                                               OpMatrix::of(ops::base_op(BaseOp::I), N));
    const DiagonalOp D = ops::d0();
    for (int n = 0; n + 2 <= N; ++n) {
        if (cm.at(n, n) != Rational(-1)) ++bad;
        if (cr.at(n, n) != D.entry(n)) ++bad;
    }
    r.metric = bad;
}

void check_isometry(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    const int cases = 100;
    for (int c = 0; c < cases; ++c) {
        const int p = 1 + c % std::max(env.pmax, 1);
        const CoeffSeq f = random_poly(rng, env.trunc);
        const double base = norm_sq(KernelSpec(Space::Fock, 0), f);
        const CoeffSeq ef = ops::diag_unitary(ops::DiagUnitary::Ep, p).apply(f);
        const CoeffSeq vf = ops::diag_unitary(ops::DiagUnitary::Vp, p).apply(f);
        worst(r.metric, std::abs(norm_sq(KernelSpec(Space::Hp, p), ef) - base) / base);
        worst(r.metric, std::abs(norm_sq(KernelSpec(Space::Fp, p), vf) - base) / base);
    }
    r.params["cases"] = std::to_string(cases);
}

void check_theta_lambda(const Env& env, CheckResult& r) {
    int bad = 0;
    for (int p = 0; p <= env.pmax; ++p) {
        const DiagonalOp ep = ops::diag_unitary(ops::DiagUnitary::Ep, p);
        const DiagonalOp vp = ops::diag_unitary(ops::DiagUnitary::Vp, p);
        const DiagonalOp th = ops::diag_unitary(ops::DiagUnitary::Thetap, p);
        const DiagonalOp la = ops::diag_unitary(ops::DiagUnitary::Lambdap, p);
        for (int n = 0; n <= 200; ++n) {
            if (th.entry(n) != ep.entry(n) * ep.entry(n)) ++bad;
            if (la.entry(n) != vp.entry(n) * vp.entry(n)) ++bad;
            if (th.entry(n) * la.entry(n) != 1) ++bad;
            if (ep.entry(n) * vp.entry(n) != 1) ++bad;
        }
    }
    r.params["n_max"] = "200";
    r.metric = bad;
}

void check_lambda_reconstruction(const Env& env, CheckResult& r) {
    const int N = env.profile == Profile::Full ? 30 : 20;
    const int n_max = 6;
    const auto table = ops::lambda_table(n_max);
    const OpMatrix I = OpMatrix::of(ops::base_op(BaseOp::I), N);
    const OpMatrix R0 = OpMatrix::of(ops::base_op(BaseOp::R0), N);
    const OpMatrix ir0 = I * R0;
    int bad = 0;
    for (int n = 1; n <= n_max; ++n) {
        OpMatrix sum(N);
        for (int k = 1; k <= n; ++k) {
            const OpMatrix lam = OpMatrix::of(table.at(std::make_pair(k, n)), N);
            sum = sum + lam * I.pow(k) * R0.pow(k);
        }
        if (!(sum == ir0.pow(n))) ++bad;
        if (!(OpMatrix::of(table.at(std::make_pair(n, n)), N) == OpMatrix::identity(N))) ++bad;
    }
    r.params["trunc"] = std::to_string(N);
    r.metric = bad;
}

// ---------------------------------------------------------------------------
// bargmann

void check_a_series(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const Complex z = random_complex(rng, 2.0);
        std::uniform_real_distribution<double> xd(-4.0, 4.0);
        const double x = xd(rng);
        const Complex direct = bargmann::kernel_A(z, x);
        const Complex series = bargmann::kernel_Ap(0, z, x, 60);
        worst(r.metric, std::abs(direct - series) / (1.0 + std::abs(direct)));
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_derivative(const Env&, CheckResult& r) {
    const double h = 1e-3;
    const double zs[] = {-1.0, -0.4, 0.2, 0.7, 1.3};
    const double xs[] = {-2.0, -0.5, 0.0, 1.1, 2.2};
    for (int k = 1; k <= 6; ++k) {
        for (double zr : zs) {
            for (double x : xs) {
                const Complex z(zr, 0.3 * zr);
                auto fd = [&](Complex dir) {
                    const Complex d = dir * h;
                    return (-bargmann::dkA(k - 1, z + 2.0 * d, x) +
                            8.0 * bargmann::dkA(k - 1, z + d, x) -
                            8.0 * bargmann::dkA(k - 1, z - d, x) +
                            bargmann::dkA(k - 1, z - 2.0 * d, x)) /
                           (12.0 * d);
                };
                const Complex exact = bargmann::dkA(k, z, x);
                worst(r.metric, std::abs(fd(Complex(1.0)) - exact) / (1.0 + std::abs(exact)));
                worst(r.metric, std::abs(fd(Complex(0.0, 1.0)) - exact) / (1.0 + std::abs(exact)));
            }
        }
    }
    r.params["k_max"] = "6";
}

void eigenrelation_metric(const Env& env, CheckResult& r, TransformKind kind) {
    const int n_max = env.profile == Profile::Full ? 20 : 12;
    const int p = kind == TransformKind::B ? 0 : std::min(2, env.pmax);
    const Complex zs[] = {{1.0, 0.0}, {0.3, -1.1}, {-1.4, 0.9}, {2.0, 0.0}};
    for (int n = 0; n <= n_max; ++n) {
        const L2Function phi = L2Function::hermite_mode(n);
        for (const Complex& z : zs) {
            const Complex got = bargmann::transform(kind, p, phi, z, n_max + 4, env.quad);
            Complex want = std::pow(z, n) / std::sqrt(std::tgamma(static_cast<double>(n) + 1.0));
            const double s = std::pow(static_cast<double>(n + 1), p);
            if (kind == TransformKind::Bp) want *= s;
            if (kind == TransformKind::SBp) want /= s;
            worst(r.metric, std::abs(got - want));
        }
    }
    r.params["n_max"] = std::to_string(n_max);
    r.params["p"] = std::to_string(p);
}

void check_eigen_b(const Env& env, CheckResult& r) { eigenrelation_metric(env, r, TransformKind::B); }
void check_eigen_bp(const Env& env, CheckResult& r) { eigenrelation_metric(env, r, TransformKind::Bp); }
void check_eigen_sbp(const Env& env, CheckResult& r) { eigenrelation_metric(env, r, TransformKind::SBp); }

void check_parseval(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const int p = 1 + c % std::max(env.pmax, 1);
        const CoeffSeq modes = random_poly(rng, 20);
        double l2 = 0.0;
        for (const Complex& v : modes.coeffs) l2 += std::norm(v);
        const L2Function phi = L2Function::from_hermite(modes);
        const CoeffSeq bp = bargmann::transform_coeffs(TransformKind::Bp, p, phi, 20, env.quad);
        const CoeffSeq sbp = bargmann::transform_coeffs(TransformKind::SBp, p, phi, 20, env.quad);
        worst(r.metric, std::abs(norm_sq(KernelSpec(Space::Hp, p), bp) - l2) / l2);
        worst(r.metric, std::abs(norm_sq(KernelSpec(Space::Fp, p), sbp) - l2) / l2);
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_route_agreement(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    const auto smooth = [](double x) {
        return Complex(std::exp(-0.5 * x * x) * (1.0 + 0.3 * x),
                       0.2 * x * std::exp(-0.4 * x * x));
    };
    const L2Function phi = L2Function::from_callable(smooth);
    for (int c = 0; c < env.cases_small; ++c) {
        const Complex z = random_complex(rng, 1.4);
        const TransformKind kind = static_cast<TransformKind>(c % 3);
        const int p = kind == TransformKind::B ? 0 : 1 + c % std::max(env.pmax, 1);
        const auto rep = bargmann::transform_report(kind, p, phi, z, 40, env.quad);
        worst(r.metric, rep.route_gap / (1.0 + std::abs(rep.value)));
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_factorization(const Env& env, CheckResult& r) {
    auto rng = rng_for(env, r.check_id);
    for (int c = 0; c < env.cases_small; ++c) {
        const int p = 1 + c % std::max(env.pmax, 1);
        const L2Function phi = L2Function::from_hermite(random_poly(rng, 20));
        const CoeffSeq b = bargmann::transform_coeffs(TransformKind::B, 0, phi, 20, env.quad);
        const CoeffSeq bp = bargmann::transform_coeffs(TransformKind::Bp, p, phi, 20, env.quad);
        const CoeffSeq sbp = bargmann::transform_coeffs(TransformKind::SBp, p, phi, 20, env.quad);
        const CoeffSeq ep_b = ops::diag_unitary(ops::DiagUnitary::Ep, p).apply(b);
        const CoeffSeq vp_b = ops::diag_unitary(ops::DiagUnitary::Vp, p).apply(b);
        for (int n = 0; n <= 20; ++n) {
            if (bp.coeffs[static_cast<size_t>(n)] != ep_b.coeffs[static_cast<size_t>(n)]) r.metric += 1;
            if (sbp.coeffs[static_cast<size_t>(n)] != vp_b.coeffs[static_cast<size_t>(n)]) r.metric += 1;
        }
    }
    r.params["cases"] = std::to_string(env.cases_small);
}

void check_bridge_maps(const Env& env, CheckResult& r) {
    // Lambda_p(B_p) = SB_p and Theta_p(SB_p) = B_p. Exact on the diagonal
    // multipliers; float application agrees to rounding.
    int bad = 0;
    for (int p = 0; p <= env.pmax; ++p) {
        const DiagonalOp la = ops::diag_unitary(ops::DiagUnitary::Lambdap, p);
        const DiagonalOp th = ops::diag_unitary(ops::DiagUnitary::Thetap, p);
        const DiagonalOp ep = ops::diag_unitary(ops::DiagUnitary::Ep, p);
        const DiagonalOp vp = ops::diag_unitary(ops::DiagUnitary::Vp, p);
        for (int n = 0; n <= 100; ++n) {
            if (la.entry(n) * ep.entry(n) != vp.entry(n)) ++bad;
            if (th.entry(n) * vp.entry(n) != ep.entry(n)) ++bad;
        }
    }
    r.metric = bad;
    auto rng = rng_for(env, r.check_id);
    const int p = std::max(env.pmax, 1);
    const L2Function phi = L2Function::from_hermite(random_poly(rng, 16));
    const CoeffSeq bp = bargmann::transform_coeffs(TransformKind::Bp, p, phi, 16, env.quad);
    const CoeffSeq sbp = bargmann::transform_coeffs(TransformKind::SBp, p, phi, 16, env.quad);
    const CoeffSeq mapped = ops::diag_unitary(ops::DiagUnitary::Lambdap, p).apply(bp);
    for (int n = 0; n <= 16; ++n) {
        const double denom = 1e-300 + std::abs(sbp.coeffs[static_cast<size_t>(n)]);
        const double rel =
            std::abs(mapped.coeffs[static_cast<size_t>(n)] - sbp.coeffs[static_cast<size_t>(n)]) / denom;
        if (rel > 1e-14) r.metric += 1;  // float spot-check on top of the exact part
    }
}

void check_generating_sum(const Env& env, CheckResult& r) {
    const int P = 20;
    const int N = 20;
    const Complex zs[] = {{0.05, 0.0}, {0.0, 0.1}, {0.08, 0.06}};
    const double xs[] = {0.0, 0.5, 1.5};
    for (const Complex& z : zs) {
        for (double x : xs) {
            Complex lhs(0.0);
            double inv_fact = 1.0;
            for (int p = 0; p <= P; ++p) {
                lhs += bargmann::kernel_Ap(p, z, x, N) * inv_fact;
                inv_fact /= static_cast<double>(p + 1);
            }
            // exp(Id + Mz Dz) acts on degree n by exp(n+1)
            const auto xi = specfun::hermite_xi_all(N, x);
            Complex rhs(0.0);
            Complex factor(1.0);
            for (int n = 0; n <= N; ++n) {
                rhs += std::exp(static_cast<double>(n + 1)) * factor *
                       xi.values[static_cast<size_t>(n)];
                factor *= z / std::sqrt(static_cast<double>(n) + 1.0);
            }
            worst(r.metric, std::abs(lhs - rhs));
        }
    }
    r.params["terms_p"] = std::to_string(P);
}

void check_lambda_route(const Env& env, CheckResult& r) {
    const int N = 25;
    const int pmax = std::min(env.pmax, 3);
    const auto table = ops::lambda_table(std::max(pmax, 1));
    const OpMatrix I = OpMatrix::of(ops::base_op(BaseOp::I), N);
    const OpMatrix R0 = OpMatrix::of(ops::base_op(BaseOp::R0), N);
    const OpMatrix D0m = OpMatrix::of(ops::d0(), N);
    int bad = 0;
    for (int p = 0; p <= pmax; ++p) {
        // direct diagonal
        OpMatrix direct(N);
        for (int n = 0; n <= N; ++n) direct.at(n, n) = rat_pow(Rational(n + 1), -p);
        // literal (R0 I)^p
        const OpMatrix literal = (R0 * I).pow(p);
        // (D0 + I R0)^p
        const OpMatrix viaD0 = (D0m + I * R0).pow(p);
        // binomial expansion with the Lambda table; the j = 0 term is D0^p
        OpMatrix expansion(N);
        for (int j = 0; j <= p; ++j) {
            const Rational cj(binomial_big(static_cast<unsigned>(p), static_cast<unsigned>(j)));
            OpMatrix term = D0m.pow(p - j);
            if (j > 0) {
                OpMatrix inner(N);
                for (int k = 1; k <= j; ++k)
                    inner = inner + OpMatrix::of(table.at(std::make_pair(k, j)), N) * I.pow(k) * R0.pow(k);
                term = term * inner;
            }
            OpMatrix scaled(N);
            for (int i = 0; i <= N; ++i)
                for (int jj = 0; jj <= N; ++jj) scaled.at(i, jj) = cj * term.at(i, jj);
            expansion = expansion + scaled;
        }
        if (!literal.equal_on_columns(direct, N - 1)) ++bad;
        if (!viaD0.equal_on_columns(direct, N)) ++bad;
        if (!expansion.equal_on_columns(direct, N)) ++bad;
    }
    r.params["degree"] = std::to_string(N);
    r.metric = bad;
}

void check_recurrence(const Env& env, CheckResult& r) {
    const double xs[] = {-1.2, 0.0, 0.3, 1.7};
    const Complex zs[] = {{0.0, 0.0}, {0.8, 0.0}, {0.4, -0.6}, {-0.9, 0.2}};
    for (int p = 0; p <= env.pmax; ++p)
        for (const Complex& z : zs)
            for (double x : xs) worst(r.metric, bargmann::recurrence_gap(p, z, x, 60));
    r.params["p_max"] = std::to_string(env.pmax);
}

void check_bargmann_gram(const Env& env, CheckResult& r) {
    const std::pair<Complex, Complex> pts[] = {
        {Complex(1.0, 0.0), Complex(1.0, 0.0)},
        {Complex(0.5, 0.3), Complex(1.2, 0.0)},
    };
    for (int p = 0; p <= std::min(env.pmax, 2); ++p) {
        for (const auto& [z, w] : pts) {
            const Complex hp = bargmann::kernel_gram(Space::Hp, p, z, w, env.quad, 40);
            const Complex fp = bargmann::kernel_gram(Space::Fp, p, z, w, env.quad, 40);
            worst(r.metric, std::abs(hp - kernels::kernel_hp(p, z, w, 60).closed_value));
            worst(r.metric, std::abs(fp - kernels::kernel_fp(p, z, w, 60).closed_value));
        }
    }
    r.params["p_max"] = std::to_string(std::min(env.pmax, 2));
}

// ---------------------------------------------------------------------------
// moments

void check_hp_certificate(const Env& env, CheckResult& r) {
    int bad = 0;
    for (int p = 1; p <= std::min(env.pmax, 3); ++p) {
        const auto reports = moments::stieltjes_certificate(moments::moment_seq_hp(p), 6);
        if (!moments::certificate_verdict(reports)) ++bad;
    }
    // Hausdorff-type: moments of Lebesgue measure on [0,1]
    const moments::MomentSeq leb{[](int n) { return Rational(1, n + 1); }, "lebesgue01"};
    if (!moments::certificate_verdict(moments::stieltjes_certificate(leb, 5))) ++bad;
    r.metric = bad;
}

void check_fp_witness(const Env&, CheckResult& r) {
    int bad = 0;
    // p = 1: order-1 Hankel is still PSD (det 2); order 2 fails with det -24.
    const auto h1 = moments::psd_check(moments::hankel(moments::moment_seq_fp(1), 1, false),
                                       moments::PsdMode::ExactMinors);
    if (!h1.psd || h1.leading_minors.back() != 2) ++bad;
    const auto h2 = moments::psd_check(moments::hankel(moments::moment_seq_fp(1), 2, false),
                                       moments::PsdMode::ExactMinors);
    if (h2.psd || h2.leading_minors.back() != -24) ++bad;
    // p = 2: already the order-1 matrix fails, det 162 - 256 = -94.
    const auto g1 = moments::psd_check(moments::hankel(moments::moment_seq_fp(2), 1, false),
                                       moments::PsdMode::ExactMinors);
    if (g1.psd || g1.leading_minors.back() != -94) ++bad;
    r.metric = bad;
}

void check_hadamard(const Env& env, CheckResult& r) {
    int bad = 0;
    const int N = 8;
    for (int p = 1; p <= std::min(env.pmax, 3); ++p) {
        const auto H = moments::hankel(moments::moment_seq_hp(p), N, false);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) {
                const Rational fact(factorial_big(static_cast<unsigned>(i + j)));
                const Rational poly(int_pow(BigInt(i + j + 1), static_cast<unsigned>(2 * p)));
                if (H[static_cast<size_t>(i)][static_cast<size_t>(j)] != fact / poly) ++bad;
            }
    }
    // ((n+m)!) = Diag(n!) Pascal Diag(m!)
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            const BigInt lhs = factorial_big(static_cast<unsigned>(i + j));
            const BigInt rhs = factorial_big(static_cast<unsigned>(i)) *
                               binomial_big(static_cast<unsigned>(i + j), static_cast<unsigned>(i)) *
                               factorial_big(static_cast<unsigned>(j));
            if (lhs != rhs) ++bad;
        }
    r.metric = bad;
}

void check_pascal_psd(const Env&, CheckResult& r) {
    const int N = 8;
    moments::RatMatrix pascal(static_cast<size_t>(N) + 1,
                              std::vector<Rational>(static_cast<size_t>(N) + 1));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            pascal[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                Rational(binomial_big(static_cast<unsigned>(i + j), static_cast<unsigned>(i)));
    const auto rep = moments::psd_check(pascal, moments::PsdMode::ExactMinors);
    r.metric = rep.psd ? 0 : 1;
}

void check_monotone_failure(const Env&, CheckResult& r) {
    int bad = 0;
    for (int p : {1, 2}) {
        bool failed = false;
        for (int N = 0; N <= 6; ++N) {
            const auto rep = moments::psd_check(moments::hankel(moments::moment_seq_fp(p), N, false),
                                                moments::PsdMode::ExactMinors);
            if (failed && rep.psd) ++bad;  // a failure must persist
            if (!rep.psd) failed = true;
        }
        if (!failed) ++bad;
    }
    r.metric = bad;
}

void check_carleman(const Env&, CheckResult& r) {
    int bad = 0;
    for (int p : {1, 2, 3})
        if (!moments::carleman_bound_check(moments::moment_seq_hp(p), 1.0, 40)) ++bad;
    if (!moments::carleman_bound_check(moments::moment_seq_factorial(), 1.0, 40)) ++bad;
    const moments::MomentSeq boundary{
        [](int n) {
            return Rational(factorial_big(static_cast<unsigned>(2 * n)) *
                            int_pow(BigInt(2), static_cast<unsigned>(n)));
        },
        "boundary"};
    if (!moments::carleman_bound_check(boundary, 2.0, 20)) ++bad;
    if (moments::carleman_bound_check(boundary, 1.0, 20)) ++bad;  // must fail at n = 1
    r.metric = bad;
}

std::vector<CheckDef> make_checks() {
    return {
        {"bargmann.a_series", "transform kernel equals its Hermite generating series", 1e-12, check_a_series},
        {"bargmann.bridge_maps", "diagonal bridges exchange the two generalized transforms", 0.0, check_bridge_maps},
        {"bargmann.derivative", "derivative recurrence of the transform kernel", 1e-6, check_derivative},
        {"bargmann.eigenrelation_b", "classical transform sends Hermite modes to monomials", 1e-8, check_eigen_b},
        {"bargmann.eigenrelation_bp", "weighted transform scales monomials by (n+1)^p", 1e-8, check_eigen_bp},
        {"bargmann.eigenrelation_sbp", "inverse-weighted transform scales monomials by (n+1)^-p", 1e-8, check_eigen_sbp},
        {"bargmann.factorization", "transforms factor through the diagonal unitaries", 0.0, check_factorization},
        {"bargmann.generating_sum", "exponential generating sum of the kernel family", 1e-8, check_generating_sum},
        {"bargmann.gram", "kernel section pairings match the closed kernels", 1e-7, check_bargmann_gram},
        {"bargmann.lambda_route", "kernel diagonal route equals the shift expansions", 0.0, check_lambda_route},
        {"bargmann.parseval", "transform unitarity", 1e-10, check_parseval},
        {"bargmann.recurrence", "kernel family recurrence via the operator route", 1e-9, check_recurrence},
        {"bargmann.route_agreement", "coefficient route vs direct quadrature", 1e-7, check_route_agreement},
        {"coeffspace.eval_bound", "evaluation bounded by norm times kernel norm", 1e-10, check_eval_bound},
        {"coeffspace.inner_linearity", "inner product linearity in the first slot", 1e-12, check_inner_linearity},
        {"coeffspace.inner_self_real", "self inner product is real and equals the norm", 1e-14, check_inner_self_real},
        {"coeffspace.weight_p0", "p = 0 weights collapse to the Fock weight", 0.0, check_weight_p0},
        {"kernels.fp_two_route", "series vs hypergeometric closed form", 1e-12, check_fp_two_route},
        {"kernels.gram_psd", "kernel Gram matrices are positive semidefinite", 1e-9, check_kernel_gram_psd},
        {"kernels.hermitian", "kernel Hermitian symmetry", 1e-13, check_kernel_hermitian},
        {"kernels.hp_two_route", "series vs Touchard closed form", 1e-12, check_hp_two_route},
        {"kernels.reproducing", "reproducing property of the kernel sections", 1e-10, check_reproducing},
        {"kernels.theta_bridge", "squared diagonal bridges the two kernel families", 0.0, check_theta_bridge},
        {"moments.carleman", "growth bound guaranteeing a unique measure", 0.0, check_carleman},
        {"moments.fp_witness", "non-PSD Hankel witnesses for the heavy moments", 0.0, check_fp_witness},
        {"moments.hadamard", "Hankel factorization as an entrywise product", 0.0, check_hadamard},
        {"moments.hp_certificate", "Stieltjes PSD certificates for the light moments", 0.0, check_hp_certificate},
        {"moments.monotone_failure", "once non-PSD, always non-PSD", 0.0, check_monotone_failure},
        {"moments.pascal_psd", "binomial Pascal matrix positivity", 0.0, check_pascal_psd},
        {"operators.adjoint_pairing", "adjoint pairing across the operator tables", 0.0, check_adjoint_pairing},
        {"operators.commutator_closed", "closed commutator diagonals equal matrix commutators", 0.0, check_commutator_closed},
        {"operators.isometry", "diagonal unitaries are isometries", 1e-12, check_isometry},
        {"operators.lambda_reconstruction", "iterated shift product expands through the Lambda table", 0.0, check_lambda_reconstruction},
        {"operators.p0_collapse", "p = 0 adjoints collapse to the Fock adjoints", 0.0, check_p0_collapse},
        {"operators.shift_powers", "diagonal action of iterated shift products", 0.0, check_shift_powers},
        {"operators.table_vs_composed", "table adjoints equal their composed forms", 0.0, check_table_vs_composed},
        {"operators.theta_lambda", "bridge diagonals square and invert correctly", 0.0, check_theta_lambda},
        {"specfun.hermite_orthonormal", "orthonormality of the Hermite functions", 1e-9, check_hermite_orthonormal},
        {"specfun.hermite_recurrence", "Hermite three-term recurrence at integer points", 0.0, check_hermite_recurrence},
        {"specfun.stirling_dual", "Stirling recurrence equals the explicit sum", 0.0, check_stirling_dual},
        {"specfun.touchard_generating", "Touchard exponential generating identity", 1e-10, check_touchard_generating},
        {"specfun.touchard_odd", "odd Touchard polynomials have zero constant term", 0.0, check_touchard_odd},
    };
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
    Env env{opts.profile,
            opts.seed,
            opts.profile == Profile::Full ? 4 : 2,
            opts.profile == Profile::Full ? 64 : 32,
            opts.profile == Profile::Full ? 40 : 10,
            opts.profile == Profile::Full ? 220 : 60,
            QuadratureRule::gauss_hermite(200)};

    std::vector<CheckResult> out;
    for (const CheckDef& def : make_checks()) {
        CheckResult r;
        r.check_id = def.id;
        r.ref = def.ref;
        r.threshold = def.threshold;
        const auto t0 = std::chrono::steady_clock::now();
        def.fn(env, r);
        const auto t1 = std::chrono::steady_clock::now();
        r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.pass = r.metric <= r.threshold;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace genfock::verify
