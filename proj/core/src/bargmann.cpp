#include "genfock/bargmann.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "genfock/operators.hpp"
#include "genfock/specfun.hpp"

namespace genfock::bargmann {

QuadratureRule QuadratureRule::gauss_hermite(int M) {
    if (M < 1) throw std::invalid_argument("gauss_hermite: M must be >= 1");
    // Nodes are the roots of He_M: eigenvalues of the Jacobi matrix for the
    // weight e^{-x^2/2} (off-diagonal sqrt(k)), polished by Newton on the
    // normalized Hermite function xi_M. The rebased weight for integrating
    // f(x) dx directly is the Christoffel form 1 / sum_{k<M} xi_k(x_i)^2,
    // which never leaves O(1) quantities; the eigenvector-based Golub-Welsch
    // weight drowns in rounding noise at the edge nodes long before M = 200.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
    for (int k = 1; k < M; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite: eigen decomposition failed");

    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(M));
    rule.weights.resize(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        double x = es.eigenvalues()(i);
        for (int step = 0; step < 2; ++step) {
            const auto xi = specfun::hermite_xi_all(M, x);
            // at a root of xi_M the derivative is sqrt(M) xi_{M-1}
            const double d = -0.5 * x * xi.values[static_cast<size_t>(M)] +
                             std::sqrt(static_cast<double>(M)) *
                                 xi.values[static_cast<size_t>(M) - 1];
            if (d != 0.0) x -= xi.values[static_cast<size_t>(M)] / d;
        }
        const auto xi = specfun::hermite_xi_all(M - 1, x);
        double christoffel = 0.0;
        for (double v : xi.values) christoffel += v * v;
        rule.nodes[static_cast<size_t>(i)] = x;
        rule.weights[static_cast<size_t>(i)] = 1.0 / christoffel;
    }
    return rule;
}

Complex QuadratureRule::integrate(const std::function<Complex(double)>& f) const {
    Complex acc(0.0);
    for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
}

L2Function L2Function::zero() { return from_hermite(CoeffSeq::zero(0)); }

L2Function L2Function::from_hermite(CoeffSeq coeffs) {
    L2Function f;
    f.coeffs_ = std::move(coeffs);
    return f;
}

L2Function L2Function::from_callable(std::function<Complex(double)> fn) {
    L2Function f;
    f.fn_ = std::move(fn);
    return f;
}

L2Function L2Function::from_both(CoeffSeq coeffs, std::function<Complex(double)> fn) {
    L2Function f;
    f.coeffs_ = std::move(coeffs);
    f.fn_ = std::move(fn);
    return f;
}

L2Function L2Function::hermite_mode(int n) {
    if (n < 0) throw std::invalid_argument("hermite_mode: n must be >= 0");
    return from_callable([n](double x) { return Complex(specfun::hermite_xi(n, x)); });
}

std::vector<Complex> L2Function::hermite_coeffs(int N, const QuadratureRule& quad) const {
    if (N < 0) throw std::invalid_argument("hermite_coeffs: N must be >= 0");
    std::vector<Complex> c(static_cast<size_t>(N) + 1, Complex(0.0));
    if (coeffs_) {
        const int stored = coeffs_->truncation();
        for (int n = 0; n <= std::min(N, stored); ++n)
            c[static_cast<size_t>(n)] = coeffs_->coeffs[static_cast<size_t>(n)];
        return c;
    }
    if (!fn_) return c;
    for (size_t i = 0; i < quad.nodes.size(); ++i) {
        const double x = quad.nodes[i];
        const Complex fw = quad.weights[i] * fn_(x);
        const specfun::HermiteEval xi = specfun::hermite_xi_all(N, x);
        for (int n = 0; n <= N; ++n)
            c[static_cast<size_t>(n)] += fw * xi.values[static_cast<size_t>(n)];
    }
    return c;
}

Complex L2Function::operator()(double x) const {
    if (fn_) return fn_(x);
    if (!coeffs_) return Complex(0.0);
    const int N = coeffs_->truncation();
    const specfun::HermiteEval xi = specfun::hermite_xi_all(N, x);
    Complex acc(0.0);
    for (int n = 0; n <= N; ++n)
        acc += coeffs_->coeffs[static_cast<size_t>(n)] * xi.values[static_cast<size_t>(n)];
    return acc;
}

Complex kernel_A(Complex z, double x) {
    return std::pow(2.0 * M_PI, -0.25) *
           std::exp(-0.25 * x * x - 0.5 * z * z + z * x);
}

namespace {

Complex kernel_series(int p_sign_exponent, int p, Complex z, double x, int N) {
    // p_sign_exponent: +1 scales by (n+1)^p, -1 divides.
    const specfun::HermiteEval xi = specfun::hermite_xi_all(N, x);
    Complex factor(1.0);  // z^n / sqrt(n!)
    Complex acc(0.0);
    for (int n = 0; n <= N; ++n) {
        const double scale = std::pow(static_cast<double>(n + 1),
                                      p_sign_exponent > 0 ? p : -p);
        acc += factor * scale * xi.values[static_cast<size_t>(n)];
        factor *= z / std::sqrt(static_cast<double>(n) + 1.0);
    }
    return acc;
}

}  // namespace

Complex kernel_Ap(int p, Complex z, double x, int N) {
    if (p < 0 || N < 0) throw std::invalid_argument("kernel_Ap: p, N must be >= 0");
    return kernel_series(+1, p, z, x, N);
}

Complex kernel_calAp(int p, Complex z, double x, int N) {
    if (p < 0 || N < 0) throw std::invalid_argument("kernel_calAp: p, N must be >= 0");
    return kernel_series(-1, p, z, x, N);
}

CoeffSeq transform_coeffs(TransformKind kind, int p, const L2Function& phi, int N,
                          const QuadratureRule& quad) {
    if (p < 0 || N < 0) throw std::invalid_argument("transform_coeffs: p, N must be >= 0");
    const std::vector<Complex> c = phi.hermite_coeffs(N, quad);
    CoeffSeq out = CoeffSeq::zero(N);
    double inv_sqrt_fact = 1.0;  // 1 / sqrt(n!)
    for (int n = 0; n <= N; ++n) {
        Complex b = c[static_cast<size_t>(n)] * inv_sqrt_fact;
        const double s = std::pow(static_cast<double>(n + 1), p);
        switch (kind) {
            case TransformKind::B: break;
            case TransformKind::Bp: b *= s; break;
            case TransformKind::SBp: b /= s; break;
        }
        out.coeffs[static_cast<size_t>(n)] = b;
        inv_sqrt_fact /= std::sqrt(static_cast<double>(n) + 1.0);
    }
    return out;
}

Complex transform(TransformKind kind, int p, const L2Function& phi, Complex z, int N,
                  const QuadratureRule& quad) {
    return eval(transform_coeffs(kind, p, phi, N, quad), z);
}

TransformResult transform_report(TransformKind kind, int p, const L2Function& phi,
                                 Complex z, int N, const QuadratureRule& quad) {
    TransformResult r;
    const std::vector<Complex> c = phi.hermite_coeffs(N, quad);
    double cmax = 0.0;
    for (const Complex& v : c) cmax = std::max(cmax, std::abs(v));
    r.tail_ratio = cmax > 0.0 ? std::abs(c.back()) / cmax : 0.0;
    r.tail_warning = r.tail_ratio > 1e-8;

    r.value = transform(kind, p, phi, z, N, quad);
    r.direct = quad.integrate([&](double x) {
        Complex k;
        switch (kind) {
            case TransformKind::B: k = kernel_A(z, x); break;
            case TransformKind::Bp: k = kernel_Ap(p, z, x, N); break;
            case TransformKind::SBp: k = kernel_calAp(p, z, x, N); break;
        }
        return k * phi(x);
    });
    r.route_gap = std::abs(r.value - r.direct);
    return r;
}

L2Function inverse_B(const CoeffSeq& f) {
    CoeffSeq c = CoeffSeq::zero(f.truncation());
    double sqrt_fact = 1.0;  // sqrt(n!)
    for (int n = 0; n <= f.truncation(); ++n) {
        c.coeffs[static_cast<size_t>(n)] = f.coeffs[static_cast<size_t>(n)] * sqrt_fact;
        sqrt_fact *= std::sqrt(static_cast<double>(n) + 1.0);
    }
    return L2Function::from_hermite(std::move(c));
}

Complex dkA(int k, Complex z, double x) {
    if (k < 0) throw std::invalid_argument("dkA: k must be >= 0");
    return specfun::hermite_He(k, Complex(x) - z) * kernel_A(z, x);
}

CoeffSeq stirling_form_Bp(int p, const CoeffSeq& f_B, int N) {
    if (p < 0 || N < 0) throw std::invalid_argument("stirling_form_Bp: p, N must be >= 0");
    CoeffSeq out = CoeffSeq::zero(N);
    for (int n = 0; n <= N; ++n) {
        // multiplier(n) = sum_j C(p,j) sum_k S(j,k) n(n-1)...(n-k+1), exact;
        // the inner sum telescopes to n^j so the total is (n+1)^p.
        BigInt mult = 0;
        for (int j = 0; j <= p; ++j) {
            const BigInt cj = binomial_big(static_cast<unsigned>(p), static_cast<unsigned>(j));
            BigInt inner = 0;
            BigInt falling = 1;  // ff(n, k) = n (n-1) ... (n-k+1)
            for (int k = 0; k <= j; ++k) {
                if (k > 0) falling *= (n - k + 1);
                if (falling == 0) break;  // ff vanishes for every larger k
                inner += specfun::stirling2(j, k) * falling;
            }
            mult += cj * inner;
        }
        out.coeffs[static_cast<size_t>(n)] =
            f_B.at(n) * mult.convert_to<double>();
    }
    return out;
}

double recurrence_gap(int p, Complex z, double x, int N) {
    if (p < 0 || N < 0) throw std::invalid_argument("recurrence_gap: p, N must be >= 0");
    const Complex lhs = kernel_Ap(p + 1, z, x, N) - kernel_Ap(p, z, x, N);

    // Right side: Mz (Id + Dz Mz)^p Dz acting on the degree-N section of
    // A(., x), assembled from the literal base-operator matrices.
    using ops::BaseOp;
    using ops::OpMatrix;
    const OpMatrix mz = OpMatrix::of(ops::base_op(BaseOp::Mz), N);
    const OpMatrix dz = OpMatrix::of(ops::base_op(BaseOp::Dz), N);
    const OpMatrix id = OpMatrix::identity(N);
    const OpMatrix rhs_op = mz * (id + dz * mz).pow(p) * dz;

    const specfun::HermiteEval xi = specfun::hermite_xi_all(N, x);
    CoeffSeq a = CoeffSeq::zero(N);
    double inv_sqrt_fact = 1.0;
    for (int n = 0; n <= N; ++n) {
        a.coeffs[static_cast<size_t>(n)] = xi.values[static_cast<size_t>(n)] * inv_sqrt_fact;
        inv_sqrt_fact /= std::sqrt(static_cast<double>(n) + 1.0);
    }
    const Complex rhs = eval(rhs_op.apply(a), z);
    return std::abs(lhs - rhs);
}

Complex kernel_gram(Space kind, int p, Complex z, Complex w, const QuadratureRule& quad,
                    int N) {
    if (kind == Space::Fock)
        return quad.integrate(
            [&](double x) { return kernel_A(z, x) * std::conj(kernel_A(w, x)); });
    if (kind == Space::Hp)
        return quad.integrate([&](double x) {
            return kernel_Ap(p, z, x, N) * std::conj(kernel_Ap(p, w, x, N));
        });
    return quad.integrate([&](double x) {
        return kernel_calAp(p, z, x, N) * std::conj(kernel_calAp(p, w, x, N));
    });
}

}  // namespace genfock::bargmann
