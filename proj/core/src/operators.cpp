#include "genfock/operators.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace genfock::ops {

std::string base_op_name(BaseOp op) {
    switch (op) {
        case BaseOp::R0: return "R0";
        case BaseOp::I: return "I";
        case BaseOp::Dz: return "D";
        case BaseOp::Mz: return "Mz";
    }
    return "?";
}

CoeffSeq WeightedShiftOp::apply(const CoeffSeq& f, bool* dropped_top) const {
    const int N = f.truncation();
    CoeffSeq out = CoeffSeq::zero(N);
    bool dropped = false;
    for (int n = 0; n <= N; ++n) {
        const int m = n + shift_;
        if (m < 0) continue;
        const Rational c = weight_at(n);
        if (c == 0) continue;
        const Complex v = f.coeffs[static_cast<size_t>(n)] * to_double(c);
        if (m > N) {
            if (v != Complex(0.0)) dropped = true;
            continue;
        }
        out.coeffs[static_cast<size_t>(m)] += v;
    }
    if (dropped_top) *dropped_top = dropped;
    return out;
}

WeightedShiftOp WeightedShiftOp::identity() {
    return WeightedShiftOp(0, [](int) { return Rational(1); });
}

WeightedShiftOp compose(const WeightedShiftOp& a, const WeightedShiftOp& b) {
    const int sb = b.shift();
    return WeightedShiftOp(a.shift() + sb, [a, b, sb](int n) {
        const Rational cb = b.weight_at(n);
        if (cb == 0) return Rational(0);
        return cb * a.weight_at(n + sb);
    });
}

WeightedShiftOp op_power(const WeightedShiftOp& a, int k) {
    if (k < 0) throw std::invalid_argument("op_power: negative exponent");
    WeightedShiftOp acc = WeightedShiftOp::identity();
    for (int i = 0; i < k; ++i) acc = compose(acc, a);
    return acc;
}

WeightedShiftOp base_op(BaseOp op) {
    switch (op) {
        case BaseOp::R0:
            return WeightedShiftOp(-1, [](int) { return Rational(1); });
        case BaseOp::I:
            return WeightedShiftOp(+1, [](int n) { return Rational(1, n + 1); });
        case BaseOp::Dz:
            return WeightedShiftOp(-1, [](int n) { return Rational(n); });
        case BaseOp::Mz:
            return WeightedShiftOp(+1, [](int) { return Rational(1); });
    }
    throw std::logic_error("base_op: bad op");
}

CoeffSeq apply_base(BaseOp op, const CoeffSeq& f) { return base_op(op).apply(f); }

WeightedShiftOp adjoint_of(BaseOp op, const KernelSpec& spec) {
    const long q = 2L * spec.p;
    switch (spec.space == Space::Fock ? Space::Hp : spec.space) {
        // Fock is the p = 0 instance of either table; route through Hp.
        case Space::Hp: {
            const int p0 = (spec.space == Space::Fock) ? 0 : spec.p;
            const long qq = 2L * p0;
            switch (op) {
                case BaseOp::R0:  // (n+2)^{2p} / (n+1)^{2p+1} z^{n+1}
                    return WeightedShiftOp(+1, [qq](int n) {
                        return Rational(int_pow(BigInt(n + 2), static_cast<unsigned>(qq)),
                                        int_pow(BigInt(n + 1), static_cast<unsigned>(qq + 1)));
                    });
                case BaseOp::Dz:  // (n+2)^{2p} / (n+1)^{2p} z^{n+1}
                    return WeightedShiftOp(+1, [qq](int n) {
                        return rat_pow(Rational(n + 2, n + 1), qq);
                    });
                case BaseOp::Mz:  // n^{2p+1} / (n+1)^{2p} z^{n-1}, 0 at n = 0
                    return WeightedShiftOp(-1, [qq](int n) {
                        if (n == 0) return Rational(0);
                        return Rational(int_pow(BigInt(n), static_cast<unsigned>(qq + 1)),
                                        int_pow(BigInt(n + 1), static_cast<unsigned>(qq)));
                    });
                case BaseOp::I:  // n^{2p} / (n+1)^{2p} z^{n-1}, 0 at n = 0
                    return WeightedShiftOp(-1, [qq](int n) {
                        if (n == 0) return Rational(0);
                        return rat_pow(Rational(n, n + 1), qq);
                    });
            }
            break;
        }
        case Space::Fp: {
            switch (op) {
                case BaseOp::R0:  // (n+1)^{2p-1} / (n+2)^{2p} z^{n+1}
                    return WeightedShiftOp(+1, [q](int n) {
                        return rat_pow(Rational(n + 1), q - 1) /
                               rat_pow(Rational(n + 2), q);
                    });
                case BaseOp::Dz:  // (n+1)^{2p} / (n+2)^{2p} z^{n+1}
                    return WeightedShiftOp(+1, [q](int n) {
                        return rat_pow(Rational(n + 1, n + 2), q);
                    });
                case BaseOp::Mz:  // (n+1)^{2p} / n^{2p-1} z^{n-1}, 0 at n = 0
                    return WeightedShiftOp(-1, [q](int n) {
                        if (n == 0) return Rational(0);
                        return rat_pow(Rational(n + 1), q) / rat_pow(Rational(n), q - 1);
                    });
                case BaseOp::I:  // (n+1)^{2p} / n^{2p} z^{n-1}, 0 at n = 0
                    return WeightedShiftOp(-1, [q](int n) {
                        if (n == 0) return Rational(0);
                        return rat_pow(Rational(n + 1, n), q);
                    });
            }
            break;
        }
        default: break;
    }
    throw std::logic_error("adjoint_of: bad op/space");
}

DiagonalOp DiagonalOp::forward(int k) const {
    if (k < 0) throw std::invalid_argument("DiagonalOp::forward: k must be >= 0");
    auto e = entries_;
    return DiagonalOp([e, k](int n) { return n >= k ? e(n - k) : Rational(0); });
}

DiagonalOp DiagonalOp::backward(int k) const {
    if (k < 0) throw std::invalid_argument("DiagonalOp::backward: k must be >= 0");
    auto e = entries_;
    return DiagonalOp([e, k](int n) { return e(n + k); });
}

DiagonalOp DiagonalOp::operator+(const DiagonalOp& rhs) const {
    auto a = entries_;
    auto b = rhs.entries_;
    return DiagonalOp([a, b](int n) { return a(n) + b(n); });
}

DiagonalOp DiagonalOp::operator*(const DiagonalOp& rhs) const {
    auto a = entries_;
    auto b = rhs.entries_;
    return DiagonalOp([a, b](int n) { return a(n) * b(n); });
}

DiagonalOp DiagonalOp::pow(int k) const {
    if (k < 0) throw std::invalid_argument("DiagonalOp::pow: k must be >= 0");
    auto e = entries_;
    return DiagonalOp([e, k](int n) { return rat_pow(e(n), k); });
}

CoeffSeq DiagonalOp::apply(const CoeffSeq& f) const {
    CoeffSeq out = f;
    for (int n = 0; n <= f.truncation(); ++n) {
        const Rational r = entry(n);
        // (a * num) / den keeps integer scalings and pure reciprocals exact.
        out.coeffs[static_cast<size_t>(n)] =
            f.coeffs[static_cast<size_t>(n)] * to_double(Rational(numerator(r))) /
            to_double(Rational(denominator(r)));
    }
    return out;
}

WeightedShiftOp DiagonalOp::as_shift() const {
    auto e = entries_;
    return WeightedShiftOp(0, [e](int n) { return e(n); });
}

DiagonalOp DiagonalOp::identity() {
    return DiagonalOp([](int) { return Rational(1); });
}

DiagonalOp DiagonalOp::zero() {
    return DiagonalOp([](int) { return Rational(0); });
}

DiagonalOp d0() {
    return DiagonalOp([](int n) {
        if (n == 0) return Rational(1);
        return Rational(-1, BigInt(n) * BigInt(n + 1));
    });
}

OpMatrix::OpMatrix(int trunc, Rational fill) : trunc_(trunc) {
    if (trunc < 0) throw std::invalid_argument("OpMatrix: truncation must be >= 0");
    a_.assign(static_cast<size_t>(dim()) * static_cast<size_t>(dim()), fill);
}

Rational& OpMatrix::at(int row, int col) {
    return a_[static_cast<size_t>(row) * static_cast<size_t>(dim()) + static_cast<size_t>(col)];
}

const Rational& OpMatrix::at(int row, int col) const {
    return a_[static_cast<size_t>(row) * static_cast<size_t>(dim()) + static_cast<size_t>(col)];
}

OpMatrix OpMatrix::identity(int N) {
    OpMatrix m(N);
    for (int i = 0; i <= N; ++i) m.at(i, i) = 1;
    return m;
}

OpMatrix OpMatrix::of(const WeightedShiftOp& op, int N) {
    OpMatrix m(N);
    for (int j = 0; j <= N; ++j) {
        const int i = j + op.shift();
        if (i < 0 || i > N) continue;
        m.at(i, j) = op.weight_at(j);
    }
    return m;
}

OpMatrix OpMatrix::of(const DiagonalOp& op, int N) {
    OpMatrix m(N);
    for (int j = 0; j <= N; ++j) m.at(j, j) = op.entry(j);
    return m;
}

OpMatrix OpMatrix::operator*(const OpMatrix& rhs) const {
    if (trunc_ != rhs.trunc_) throw std::invalid_argument("OpMatrix: truncation mismatch");
    OpMatrix out(trunc_);
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Rational& aik = at(i, k);
            if (aik == 0) continue;  // operator sections are sparse
            for (int j = 0; j < n; ++j) {
                const Rational& bkj = rhs.at(k, j);
                if (bkj == 0) continue;
                out.at(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

OpMatrix OpMatrix::operator+(const OpMatrix& rhs) const {
    if (trunc_ != rhs.trunc_) throw std::invalid_argument("OpMatrix: truncation mismatch");
    OpMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

OpMatrix OpMatrix::operator-(const OpMatrix& rhs) const {
    if (trunc_ != rhs.trunc_) throw std::invalid_argument("OpMatrix: truncation mismatch");
    OpMatrix out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

bool OpMatrix::operator==(const OpMatrix& rhs) const {
    return trunc_ == rhs.trunc_ && a_ == rhs.a_;
}

bool OpMatrix::equal_on_columns(const OpMatrix& rhs, int max_col) const {
    if (trunc_ != rhs.trunc_) return false;
    for (int j = 0; j <= max_col; ++j)
        for (int i = 0; i <= trunc_; ++i)
            if (at(i, j) != rhs.at(i, j)) return false;
    return true;
}

OpMatrix OpMatrix::pow(int k) const {
    if (k < 0) throw std::invalid_argument("OpMatrix::pow: negative exponent");
    OpMatrix acc = identity(trunc_);
    for (int i = 0; i < k; ++i) acc = acc * (*this);
    return acc;
}

CoeffSeq OpMatrix::apply(const CoeffSeq& f) const {
    if (f.truncation() != trunc_)
        throw std::invalid_argument("OpMatrix::apply: truncation mismatch");
    CoeffSeq out = CoeffSeq::zero(trunc_);
    for (int j = 0; j <= trunc_; ++j) {
        const Complex v = f.coeffs[static_cast<size_t>(j)];
        if (v == Complex(0.0)) continue;
        for (int i = 0; i <= trunc_; ++i) {
            const Rational& r = at(i, j);
            if (r == 0) continue;
            out.coeffs[static_cast<size_t>(i)] += v * to_double(r);
        }
    }
    return out;
}

OpMatrix commutator_matrix(const OpMatrix& a, const OpMatrix& b) {
    return a * b - b * a;
}

OpMatrix composed_adjoint(BaseOp op, const KernelSpec& spec, int N) {
    const int q = 2 * spec.p;
    const bool fp = (spec.space == Space::Fp);
    const OpMatrix r0 = OpMatrix::of(base_op(BaseOp::R0), N);
    const OpMatrix in = OpMatrix::of(base_op(BaseOp::I), N);
    const OpMatrix dz = OpMatrix::of(base_op(BaseOp::Dz), N);
    const OpMatrix mz = OpMatrix::of(base_op(BaseOp::Mz), N);
    const OpMatrix id = OpMatrix::identity(N);

    OpMatrix inner_pow(N);
    switch (op) {
        case BaseOp::R0:
        case BaseOp::Dz:
            // Hp: (Id + R0 I)^{2p};  Fp: (Id - R0^2 I Mz)^{2p}
            inner_pow = fp ? (id - (r0 * r0 * in * mz)).pow(q)
                           : (id + r0 * in).pow(q);
            break;
        case BaseOp::Mz:
        case BaseOp::I:
            // Hp: (Id - R0 I)^{2p};  Fp: (Id + I R0)^{2p}
            inner_pow = fp ? (id + in * r0).pow(q) : (id - r0 * in).pow(q);
            break;
    }

    switch (op) {
        case BaseOp::R0: return in * inner_pow;
        case BaseOp::Dz: return mz * inner_pow;
        case BaseOp::Mz: return dz * inner_pow;
        case BaseOp::I: return r0 * inner_pow;
    }
    throw std::logic_error("composed_adjoint: bad op");
}

int composed_adjoint_margin(BaseOp op, const KernelSpec& spec) {
    if (spec.p == 0) return 0;
    if (spec.space != Space::Fp) return 1;  // every Hp formula peaks one degree up
    switch (op) {
        case BaseOp::R0:
        case BaseOp::Dz: return 2;  // R0^2 I Mz peaks two degrees up
        case BaseOp::Mz:
        case BaseOp::I: return 0;  // I R0 never exceeds the input degree
    }
    return 2;
}

Rational commutator_diag_formula(CommPair pair, const KernelSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("commutator_diag_formula: n must be >= 0");
    const long q = 2L * spec.p;
    const bool fp = (spec.space == Space::Fp);
    if (pair == CommPair::MzMzStar) {
        if (fp) {
            if (n == 0) return -rat_pow(Rational(4), spec.p);
            return Rational(n) * rat_pow(Rational(n + 1, n), q) -
                   Rational(n + 1) * rat_pow(Rational(n + 2, n + 1), q);
        }
        // Hp closed form is regular at n = 0 and equals -4^{-p} there.
        return Rational(n) * rat_pow(Rational(n, n + 1), q) -
               Rational(n + 1) * rat_pow(Rational(n + 1, n + 2), q);
    }
    // R0R0Star
    if (n == 0)
        return fp ? Rational(1, int_pow(BigInt(4), static_cast<unsigned>(spec.p)))
                  : Rational(int_pow(BigInt(4), static_cast<unsigned>(spec.p)));
    const Rational pref(-1, BigInt(n) * BigInt(n + 1));
    if (fp) {
        return pref * (Rational(n + 1) * rat_pow(Rational(n, n + 1), q) -
                       Rational(n) * rat_pow(Rational(n + 1, n + 2), q));
    }
    return pref * (Rational(n + 1) * rat_pow(Rational(n + 1, n), q) -
                   Rational(n) * rat_pow(Rational(n + 2, n + 1), q));
}

DiagonalOp diag_unitary(DiagUnitary kind, int p) {
    if (p < 0) throw std::invalid_argument("diag_unitary: p must be >= 0");
    long e = 0;
    switch (kind) {
        case DiagUnitary::Ep: e = p; break;
        case DiagUnitary::Vp: e = -p; break;
        case DiagUnitary::Thetap: e = 2L * p; break;
        case DiagUnitary::Lambdap: e = -2L * p; break;
    }
    return DiagonalOp([e](int n) { return rat_pow(Rational(n + 1), e); });
}

namespace {

// Evaluates every Lambda_{k,n} entry at one index m in a single pass: the
// diagonal products in the recurrence are entrywise, so for fixed m it is a
// small DP over (k, n). Results are memoized per index behind a mutex so the
// returned DiagonalOps stay cheap and thread-safe.
struct LambdaEvaluator {
    int n_max;
    std::mutex mu;
    std::map<int, std::vector<std::vector<Rational>>> cache;  // m -> lam[n][k]

    explicit LambdaEvaluator(int n) : n_max(n) {}

    Rational entry(int k, int n, int m) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, compute(m)).first;
        return it->second[static_cast<size_t>(n)][static_cast<size_t>(k)];
    }

    std::vector<std::vector<Rational>> compute(int m) const {
        const DiagonalOp D = d0();
        std::vector<std::vector<Rational>> lam(
            static_cast<size_t>(n_max) + 1,
            std::vector<Rational>(static_cast<size_t>(n_max) + 1, Rational(0)));
        lam[0][0] = 1;  // Lambda_{0,0} = Id
        for (int n = 1; n <= n_max; ++n) {
            Rational shift_sum(0);  // sum_{l=1..k} D0^{(l)} entry at m, grown with k
            for (int k = 1; k <= n; ++k) {
                if (m >= k) shift_sum += D.entry(m - k);
                lam[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                    lam[static_cast<size_t>(n) - 1][static_cast<size_t>(k) - 1] +
                    shift_sum * lam[static_cast<size_t>(n) - 1][static_cast<size_t>(k)];
            }
        }
        return lam;
    }
};

}  // namespace

std::map<std::pair<int, int>, DiagonalOp> lambda_table(int n_max) {
    if (n_max < 1) throw std::invalid_argument("lambda_table: n_max must be >= 1");
    auto eval = std::make_shared<LambdaEvaluator>(n_max);
    std::map<std::pair<int, int>, DiagonalOp> t;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 1; k <= n; ++k)
            t.emplace(std::make_pair(k, n),
                      DiagonalOp([eval, k, n](int m) { return eval->entry(k, n, m); }));
    return t;
}

Rational adjoint_pairing_check(BaseOp op, const KernelSpec& spec, int N) {
    if (N < 1) throw std::invalid_argument("adjoint_pairing_check: N must be >= 1");
    const WeightedShiftOp T = base_op(op);
    const WeightedShiftOp Tstar = adjoint_of(op, spec);
    Rational worst(0);
    for (int n = 0; n <= N; ++n) {
        const Rational wn = weight_exact(spec, n);
        for (int m = 0; m <= N; ++m) {
            Rational lhs(0);
            if (n + T.shift() == m) lhs = T.weight_at(n) * weight_exact(spec, m);
            Rational rhs(0);
            if (m + Tstar.shift() == n) rhs = Tstar.weight_at(m) * wn;
            Rational defect = lhs - rhs;
            if (defect < 0) defect = -defect;
            if (defect > worst) worst = defect;
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// expression parser

namespace {

struct ExprParser {
    const std::string& s;
    size_t pos = 0;

    explicit ExprParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("op expression: expected '" + std::string(1, c) +
                                        "' at position " + std::to_string(pos));
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])))) ++pos;
        if (start == pos)
            throw std::invalid_argument("op expression: expected identifier at position " +
                                        std::to_string(pos));
        return s.substr(start, pos - start);
    }

    int uint_lit() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos)
            throw std::invalid_argument("op expression: expected integer at position " +
                                        std::to_string(pos));
        return std::stoi(s.substr(start, pos - start));
    }

    BaseOp parse_base(const std::string& name) {
        if (name == "R0") return BaseOp::R0;
        if (name == "I") return BaseOp::I;
        if (name == "D") return BaseOp::Dz;
        if (name == "Mz") return BaseOp::Mz;
        throw std::invalid_argument("op expression: unknown base operator '" + name + "'");
    }

    Space parse_space(const std::string& name) {
        if (name == "fock") return Space::Fock;
        if (name == "hp") return Space::Hp;
        if (name == "fp") return Space::Fp;
        throw std::invalid_argument("op expression: unknown space '" + name + "'");
    }

    WeightedShiftOp atom() {
        skip_ws();
        if (eat('(')) {
            WeightedShiftOp e = expr();
            expect(')');
            return e;
        }
        const std::string name = ident();
        if (name == "adj") {
            expect('(');
            BaseOp op = parse_base(ident());
            expect(',');
            Space sp = parse_space(ident());
            expect(',');
            int p = uint_lit();
            expect(')');
            return adjoint_of(op, KernelSpec(sp, p));
        }
        if (name == "Ep" || name == "Vp" || name == "Thetap" || name == "Lambdap") {
            expect('(');
            int p = uint_lit();
            expect(')');
            DiagUnitary kind = name == "Ep"       ? DiagUnitary::Ep
                               : name == "Vp"     ? DiagUnitary::Vp
                               : name == "Thetap" ? DiagUnitary::Thetap
                                                  : DiagUnitary::Lambdap;
            return diag_unitary(kind, p).as_shift();
        }
        return base_op(parse_base(name));
    }

    WeightedShiftOp term() {
        WeightedShiftOp a = atom();
        skip_ws();
        if (eat('^')) return op_power(a, uint_lit());
        return a;
    }

    WeightedShiftOp expr() {
        WeightedShiftOp acc = term();
        while (true) {
            skip_ws();
            if (!eat('*')) break;
            acc = compose(acc, term());
        }
        return acc;
    }
};

}  // namespace

WeightedShiftOp parse_op_expr(const std::string& expr) {
    ExprParser p(expr);
    WeightedShiftOp op = p.expr();
    p.skip_ws();
    if (p.pos != expr.size())
        throw std::invalid_argument("op expression: trailing input at position " +
                                    std::to_string(p.pos));
    return op;
}

}  // namespace genfock::ops
