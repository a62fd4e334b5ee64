#include "mub/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mub/galois.hpp"

namespace mub {

SpinIndex make_spin_index(long d, long long j, long long k) {
  if (d < 1) throw std::invalid_argument("SpinIndex: dimension must be positive");
  return SpinIndex{d, mod(j, d), mod(k, d)};
}

PhasedSpinOp phased(const SpinIndex& u, long long phase_exp) {
  return PhasedSpinOp{make_spin_index(u.d, u.j, u.k), mod(phase_exp, 2 * u.d)};
}

std::complex<double> zeta_power(long d, long long e) {
  e = mod(e, 2 * d);
  return std::polar(1.0, std::numbers::pi * static_cast<double>(e) / static_cast<double>(d));
}

DenseMatrix spin_matrix(const SpinIndex& u) {
  if (u.j < 0 || u.j >= u.d || u.k < 0 || u.k >= u.d)
    throw std::invalid_argument("spin_matrix: index out of range");
  DenseMatrix S = DenseMatrix::Zero(u.d, u.d);
  for (long m = 0; m < u.d; ++m) S(m, (m + u.k) % u.d) = zeta_power(u.d, 2 * m * u.j);
  return S;
}

DenseMatrix dense(const PhasedSpinOp& a) { return zeta_power(a.index.d, a.phase_exp) * spin_matrix(a.index); }

PhasedSpinOp spin_mul(const PhasedSpinOp& a, const PhasedSpinOp& b) {
  if (a.index.d != b.index.d) throw std::invalid_argument("spin_mul: dimension mismatch");
  long d = a.index.d;
  SpinIndex idx = make_spin_index(d, a.index.j + b.index.j, a.index.k + b.index.k);
  long long phase = static_cast<long long>(a.phase_exp) + b.phase_exp + 2LL * a.index.k * b.index.j;
  return PhasedSpinOp{idx, mod(phase, 2 * d)};
}

PhasedSpinOp spin_pow(const SpinIndex& u, long m) {
  if (m < 0) throw std::invalid_argument("spin_pow: exponent must be >= 0");
  long d = u.d;
  long long choose2 = static_cast<long long>(m) * (m - 1) / 2;  // 0 for m in {0,1}
  SpinIndex idx = make_spin_index(d, static_cast<long long>(m) * u.j, static_cast<long long>(m) * u.k);
  long long phase = (2LL * u.j * u.k % (2 * d)) * (choose2 % (2 * d));
  return PhasedSpinOp{idx, mod(phase, 2 * d)};
}

PhasedSpinOp spin_adjoint(const PhasedSpinOp& a) {
  long d = a.index.d;
  SpinIndex idx = make_spin_index(d, -a.index.j, -a.index.k);
  long long phase = 2LL * a.index.j * a.index.k - a.phase_exp;
  return PhasedSpinOp{idx, mod(phase, 2 * d)};
}

long alpha_exponent(const SpinIndex& u) {
  if (u.d % 2 == 0 && u.j % 2 == 1 && u.k % 2 == 1) return u.d + 1;
  return 0;
}

TensorSpinIndex TensorSpinIndex::from_flat(long p, const std::vector<long>& w) {
  if (w.empty() || w.size() % 2 != 0)
    throw std::invalid_argument("TensorSpinIndex: flat vector must have even positive length");
  TensorSpinIndex t;
  t.p = p;
  t.n = static_cast<long>(w.size()) / 2;
  t.pairs.reserve(t.n);
  for (long s = 0; s < t.n; ++s) t.pairs.push_back(make_spin_index(p, w[2 * s], w[2 * s + 1]));
  return t;
}

std::vector<long> TensorSpinIndex::flat() const {
  std::vector<long> w;
  w.reserve(2 * n);
  for (const auto& u : pairs) {
    w.push_back(u.j);
    w.push_back(u.k);
  }
  return w;
}

long TensorSpinIndex::dim() const {
  long d = 1;
  for (long i = 0; i < n; ++i) d *= p;
  return d;
}

bool TensorSpinIndex::is_identity() const {
  for (const auto& u : pairs)
    if (!u.is_identity()) return false;
  return true;
}

DenseMatrix kron(const DenseMatrix& A, const DenseMatrix& B) {
  DenseMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

DenseMatrix tensor_spin_matrix(const TensorSpinIndex& w) {
  DenseMatrix M = spin_matrix(w.pairs.front());
  for (long s = 1; s < w.n; ++s) M = kron(M, spin_matrix(w.pairs[s]));
  return M;
}

std::complex<double> trace_inner(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("trace_inner: dimension mismatch");
  return (A.adjoint() * B).trace();
}

}  // namespace mub
