#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "genfock/coeffspace.hpp"
#include "genfock/types.hpp"

namespace genfock::ops {

enum class BaseOp { R0, I, Dz, Mz };

std::string base_op_name(BaseOp op);

/// Operator acting on monomials as T z^n = c(n) z^{n+s}. Everything in the
/// operator tables (base operators, adjoints in every space, diagonal
/// unitaries) is of this form, and the form is closed under composition, so
/// applications stay O(N) with exact rational weights.
class WeightedShiftOp {
  public:
    WeightedShiftOp(int shift, std::function<Rational(int)> weight)
        : shift_(shift), weight_(std::move(weight)) {}

    int shift() const { return shift_; }

    /// c(n); identically 0 whenever the image degree n + s is negative.
    Rational weight_at(int n) const {
        if (n < 0 || n + shift_ < 0) return Rational(0);
        return weight_(n);
    }

    /// Floating application. Degree-raising output beyond the truncation is
    /// dropped; *dropped_top reports whether that lost a nonzero value.
    CoeffSeq apply(const CoeffSeq& f, bool* dropped_top = nullptr) const;

    static WeightedShiftOp identity();

  private:
    int shift_;
    std::function<Rational(int)> weight_;
};

/// a after b (operator product a∘b).
WeightedShiftOp compose(const WeightedShiftOp& a, const WeightedShiftOp& b);
WeightedShiftOp op_power(const WeightedShiftOp& a, int k);

WeightedShiftOp base_op(BaseOp op);
CoeffSeq apply_base(BaseOp op, const CoeffSeq& f);

/// The adjoint of a base operator in the given space, straight from the
/// per-space tables (exact weights).
WeightedShiftOp adjoint_of(BaseOp op, const KernelSpec& spec);

/// Sequence-indexed diagonal with forward/backward shifting.
class DiagonalOp {
  public:
    explicit DiagonalOp(std::function<Rational(int)> entries)
        : entries_(std::move(entries)) {}

    Rational entry(int n) const {
        if (n < 0) return Rational(0);
        return entries_(n);
    }

    /// D^{(k)} = diag(0,...,0, d_0, d_1, ...): k leading zeros.
    DiagonalOp forward(int k = 1) const;
    /// D^{(-k)} = diag(d_k, d_{k+1}, ...).
    DiagonalOp backward(int k = 1) const;

    DiagonalOp operator+(const DiagonalOp& rhs) const;
    DiagonalOp operator*(const DiagonalOp& rhs) const;  // entrywise product
    DiagonalOp pow(int k) const;

    CoeffSeq apply(const CoeffSeq& f) const;
    WeightedShiftOp as_shift() const;

    static DiagonalOp identity();
    static DiagonalOp zero();

  private:
    std::function<Rational(int)> entries_;
};

/// D_0 = [R_0, I] = diag(1, -1/2, -1/6, ..., -1/(n(n+1)), ...).
DiagonalOp d0();

/// Dense finite section over exact rationals; column j holds the coefficient
/// vector of T z^j truncated at degree N.
class OpMatrix {
  public:
    OpMatrix(int trunc, Rational fill = Rational(0));

    int trunc() const { return trunc_; }
    int dim() const { return trunc_ + 1; }
    Rational& at(int row, int col);
    const Rational& at(int row, int col) const;

    static OpMatrix identity(int N);
    static OpMatrix of(const WeightedShiftOp& op, int N);
    static OpMatrix of(const DiagonalOp& op, int N);

    OpMatrix operator*(const OpMatrix& rhs) const;
    OpMatrix operator+(const OpMatrix& rhs) const;
    OpMatrix operator-(const OpMatrix& rhs) const;
    bool operator==(const OpMatrix& rhs) const;

    /// Column-restricted equality: agree on columns 0..max_col.
    bool equal_on_columns(const OpMatrix& rhs, int max_col) const;

    OpMatrix pow(int k) const;
    CoeffSeq apply(const CoeffSeq& f) const;

  private:
    int trunc_;
    std::vector<Rational> a_;  // row-major (N+1)^2
};

/// AB - BA. Throws on truncation mismatch.
OpMatrix commutator_matrix(const OpMatrix& a, const OpMatrix& b);

/// The adjoint built literally from the composed-form theorems as a finite
/// product of base-operator matrix sections, e.g. R0* = I (Id + R0 I)^{2p}
/// in Hp and I (Id - R0^2 I Mz)^{2p} in Fp.
OpMatrix composed_adjoint(BaseOp op, const KernelSpec& spec, int N);

/// Columns j <= N - margin of the composed product are truncation-exact;
/// the margin is the largest intermediate degree raise of the formula.
int composed_adjoint_margin(BaseOp op, const KernelSpec& spec);

enum class CommPair { MzMzStar, R0R0Star };

/// Closed-form diagonal entry of [M_z, M_z*] or [R_0, R_0*] at index n.
Rational commutator_diag_formula(CommPair pair, const KernelSpec& spec, int n);

enum class DiagUnitary { Ep, Vp, Thetap, Lambdap };

/// diag((n+1)^p), diag((n+1)^{-p}), diag((n+1)^{2p}), diag((n+1)^{-2p}).
DiagonalOp diag_unitary(DiagUnitary kind, int p);

/// Lambda_{k,n} for 1 <= k <= n <= n_max, from the recurrence
/// Lambda_{k,n} = Lambda_{k-1,n-1} + sum_{l=1..k} D0^{(l)} Lambda_{k,n-1},
/// with Lambda_{n,n} = Id and Lambda_{0,n} = 0. Keys are (k, n).
std::map<std::pair<int, int>, DiagonalOp> lambda_table(int n_max);

/// max over n,m <= N of |<T z^n, z^m> - <z^n, T* z^m>| in exact rationals.
Rational adjoint_pairing_check(BaseOp op, const KernelSpec& spec, int N);

/// Tiny expression language over the operator tokens:
///   expr := term ('*' term)*          product; right factor applies first
///   term := atom ('^' UINT)?
///   atom := 'R0' | 'I' | 'D' | 'Mz'
///         | 'adj(' base ',' space ',' UINT ')'   space in {fock, hp, fp}
///         | 'Ep(' UINT ')' | 'Vp(' UINT ')' | 'Thetap(' UINT ')' | 'Lambdap(' UINT ')'
///         | '(' expr ')'
/// Throws std::invalid_argument on malformed input.
WeightedShiftOp parse_op_expr(const std::string& expr);

}  // namespace genfock::ops
