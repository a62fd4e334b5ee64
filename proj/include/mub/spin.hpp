#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace mub {

using DenseMatrix = Eigen::MatrixXcd;

/// Index (j,k) of a generalized spin matrix S_{j,k} acting in dimension d.
struct SpinIndex {
  long d, j, k;

  bool is_identity() const { return j == 0 && k == 0; }
  bool operator==(const SpinIndex&) const = default;
};

SpinIndex make_spin_index(long d, long long j, long long k);

/// A spin matrix together with an exact scalar zeta^phase_exp, where
/// zeta = exp(i pi / d). Even exponents are powers of eta = exp(2 pi i / d);
/// odd ones only arise from alpha corrections in even dimension. Phases stay
/// integers until materialization, so products of any length are exact.
struct PhasedSpinOp {
  SpinIndex index;
  long phase_exp = 0;  // reduced mod 2d

  bool operator==(const PhasedSpinOp&) const = default;
};

PhasedSpinOp phased(const SpinIndex& u, long long phase_exp = 0);

/// zeta^e = exp(i pi e / d).
std::complex<double> zeta_power(long d, long long e);

/// S_{j,k} = sum_m eta^{mj} |m><m+k|.
DenseMatrix spin_matrix(const SpinIndex& u);

DenseMatrix dense(const PhasedSpinOp& a);

/// S_{j,k} S_{a,b} = eta^{ka} S_{j+a,k+b}, phases accumulated exactly.
PhasedSpinOp spin_mul(const PhasedSpinOp& a, const PhasedSpinOp& b);

/// (S_{j,k})^m = eta^{jk C(m,2)} S_{mj,mk}, m >= 0.
PhasedSpinOp spin_pow(const SpinIndex& u, long m);

/// (S_{j,k})^dag = eta^{jk} S_{-j,-k}.
PhasedSpinOp spin_adjoint(const PhasedSpinOp& a);

/// Exponent of alpha_u as a power of zeta: d+1 when d is even and both j,k
/// are odd (alpha_u = -zeta), otherwise 0 (alpha_u = 1).
long alpha_exponent(const SpinIndex& u);

/// Index of an n-fold tensor product of dimension-p spin matrices,
/// equivalently the vector w = (x0,y0,...,x_{n-1},y_{n-1}) in Z_p^{2n}.
/// Factor 0 is the leftmost tensor factor.
struct TensorSpinIndex {
  long p, n;
  std::vector<SpinIndex> pairs;

  static TensorSpinIndex from_flat(long p, const std::vector<long>& w);
  std::vector<long> flat() const;
  long dim() const;  // p^n
  bool is_identity() const;
  bool operator==(const TensorSpinIndex&) const = default;
};

/// Kronecker product, A's index most significant.
DenseMatrix kron(const DenseMatrix& A, const DenseMatrix& B);

DenseMatrix tensor_spin_matrix(const TensorSpinIndex& w);

/// Frobenius inner product tr(A^dag B).
std::complex<double> trace_inner(const DenseMatrix& A, const DenseMatrix& B);

}  // namespace mub
