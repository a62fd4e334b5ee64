#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mub/galois.hpp"
#include "mub/spin.hpp"

using namespace mub;
using cd = std::complex<double>;

namespace {

DenseMatrix pauli_x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
DenseMatrix pauli_y() {
  DenseMatrix m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}
DenseMatrix pauli_z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

double max_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin matrices at d = 2 are the Pauli matrices") {
  CHECK(max_diff(spin_matrix({2, 1, 0}), pauli_z()) < 1e-15);
  CHECK(max_diff(spin_matrix({2, 0, 1}), pauli_x()) < 1e-15);
  CHECK(max_diff(spin_matrix({2, 1, 1}), cd(0, 1) * pauli_y()) < 1e-15);
  CHECK(max_diff(spin_matrix({5, 0, 0}), DenseMatrix::Identity(5, 5)) < 1e-15);
}

TEST_CASE("spin_mul matches the product rule and the dense oracle") {
  // S_{0,1} S_{1,0} = eta S_{1,1}
  for (long d : {2L, 3L, 5L, 7L}) {
    PhasedSpinOp prod = spin_mul(phased({d, 0, 1}), phased({d, 1, 0}));
    CHECK(prod.index == SpinIndex{d, 1, 1});
    CHECK(prod.phase_exp == 2);  // eta = zeta^2
  }
  PhasedSpinOp id = spin_mul(phased({4, 0, 0}), phased({4, 2, 3}));
  CHECK(id.index == SpinIndex{4, 2, 3});
  CHECK(id.phase_exp == 0);

  CHECK_THROWS_AS(spin_mul(phased({2, 1, 0}), phased({3, 1, 0})), std::invalid_argument);

  // d=3: S_{1,2} S_{2,1} = eta^4 S_{0,0} = eta S_{0,0}, checked densely
  PhasedSpinOp q = spin_mul(phased({3, 1, 2}), phased({3, 2, 1}));
  CHECK(q.index == SpinIndex{3, 0, 0});
  CHECK(max_diff(dense(q), spin_matrix({3, 1, 2}) * spin_matrix({3, 2, 1})) < 1e-12);

  std::mt19937_64 rng(7);
  for (long d : {2L, 3L, 4L, 5L, 6L, 9L}) {
    for (int trial = 0; trial < 20; ++trial) {
      PhasedSpinOp a = phased({d, static_cast<long>(rng() % d), static_cast<long>(rng() % d)},
                              static_cast<long>(rng() % (2 * d)));
      PhasedSpinOp b = phased({d, static_cast<long>(rng() % d), static_cast<long>(rng() % d)},
                              static_cast<long>(rng() % (2 * d)));
      CHECK(max_diff(dense(spin_mul(a, b)), dense(a) * dense(b)) < 1e-12);
    }
  }
}

TEST_CASE("spin powers") {
  PhasedSpinOp zero = spin_pow({6, 3, 2}, 0);
  CHECK(zero.index == SpinIndex{6, 0, 0});
  CHECK(zero.phase_exp == 0);

  // (i sigma_y)^2 = -I
  PhasedSpinOp sq = spin_pow({2, 1, 1}, 2);
  CHECK(max_diff(dense(sq), -DenseMatrix::Identity(2, 2)) < 1e-12);

  // d=3, (S_{1,1})^3 = eta^3 S_{0,0} = I
  PhasedSpinOp cube = spin_pow({3, 1, 1}, 3);
  CHECK(max_diff(dense(cube), DenseMatrix::Identity(3, 3)) < 1e-12);

  for (long d : {2L, 3L, 4L, 5L}) {
    for (long j = 0; j < d; ++j)
      for (long k = 0; k < d; ++k)
        for (long m = 0; m <= 2 * d; ++m) {
          DenseMatrix direct = DenseMatrix::Identity(d, d);
          for (long t = 0; t < m; ++t) direct = direct * spin_matrix({d, j, k});
          CHECK(max_diff(dense(spin_pow({d, j, k}, m)), direct) < 1e-11);
        }
  }
}

TEST_CASE("adjoints") {
  PhasedSpinOp adj = spin_adjoint(phased({5, 0, 3}));
  CHECK(adj.index == SpinIndex{5, 0, 2});
  CHECK(adj.phase_exp == 0);

  // (i sigma_y)^dag = -i sigma_y = eta S_{1,1}
  CHECK(max_diff(dense(spin_adjoint(phased({2, 1, 1}))), cd(0, -1) * pauli_y()) < 1e-12);

  for (long d : {2L, 3L, 4L, 5L, 8L}) {
    for (long j = 0; j < d; ++j)
      for (long k = 0; k < d; ++k) {
        PhasedSpinOp a = phased({d, j, k}, (j + 3 * k) % (2 * d));
        CHECK(max_diff(dense(spin_adjoint(a)), dense(a).adjoint()) < 1e-12);
        PhasedSpinOp unit = spin_mul(a, spin_adjoint(a));
        CHECK(unit.index.is_identity());
        CHECK(unit.phase_exp == 0);
      }
  }
}

TEST_CASE("alpha exponent and its defining identity") {
  CHECK(alpha_exponent({2, 1, 1}) == 3);  // alpha = -i = zeta^3 at d = 2
  CHECK(std::abs(zeta_power(2, alpha_exponent({2, 1, 1})) - cd(0, -1)) < 1e-15);
  CHECK(alpha_exponent({3, 1, 1}) == 0);
  CHECK(alpha_exponent({5, 2, 3}) == 0);
  CHECK(alpha_exponent({4, 1, 3}) == 5);
  CHECK(alpha_exponent({4, 1, 2}) == 0);

  // alpha_u^d eta^{jk C(d,2)} = 1 as exact integers mod 2d
  for (long d = 2; d <= 16; ++d)
    for (long j = 0; j < d; ++j)
      for (long k = 0; k < d; ++k) {
        long long c2 = static_cast<long long>(d) * (d - 1) / 2;
        long long e = static_cast<long long>(alpha_exponent({d, j, k})) * d + 2 * ((j * k % (2 * d)) * (c2 % (2 * d)));
        CHECK(mod(e, 2 * d) == 0);
      }

  // and numerically for the derived d=4 example
  cd total = std::pow(zeta_power(4, alpha_exponent({4, 1, 3})), 4) * zeta_power(4, 2 * 3 * 6);
  CHECK(std::abs(total - cd(1, 0)) < 1e-12);
}

TEST_CASE("unitarity and trace orthogonality") {
  for (long d = 2; d <= 16; ++d)
    for (long j = 0; j < d; ++j)
      for (long k = 0; k < d; ++k) {
        DenseMatrix S = spin_matrix({d, j, k});
        CHECK(max_diff(S * S.adjoint(), DenseMatrix::Identity(d, d)) < 1e-12);
      }

  for (long d : {2L, 3L, 4L, 5L}) {
    for (long u = 0; u < d * d; ++u)
      for (long v = 0; v < d * d; ++v) {
        DenseMatrix A = spin_matrix({d, u / d, u % d});
        DenseMatrix B = spin_matrix({d, v / d, v % d});
        double expect = (u == v) ? static_cast<double>(d) : 0.0;
        CHECK(std::abs(trace_inner(A, B) - expect) < 1e-12);
      }
  }
}

TEST_CASE("commutation criterion ka = jb mod d") {
  for (long d : {2L, 3L, 4L, 5L, 6L}) {
    for (long u = 0; u < d * d; ++u)
      for (long v = 0; v < d * d; ++v) {
        long j = u / d, k = u % d, a = v / d, b = v % d;
        DenseMatrix A = spin_matrix({d, j, k});
        DenseMatrix B = spin_matrix({d, a, b});
        bool commute_dense = max_diff(A * B, B * A) < 1e-12;
        bool commute_index = mod(static_cast<long long>(k) * a - static_cast<long long>(j) * b, d) == 0;
        CHECK(commute_dense == commute_index);
      }
  }
}

TEST_CASE("tensor spin matrices") {
  DenseMatrix expected = kron(pauli_x(), pauli_z());
  CHECK(max_diff(tensor_spin_matrix(TensorSpinIndex::from_flat(2, {0, 1, 1, 0})), expected) < 1e-15);

  CHECK(max_diff(tensor_spin_matrix(TensorSpinIndex::from_flat(2, {0, 0, 0, 0, 0, 0})),
                 DenseMatrix::Identity(8, 8)) < 1e-15);
  CHECK(max_diff(tensor_spin_matrix(TensorSpinIndex::from_flat(3, {0, 0, 0, 0})), DenseMatrix::Identity(9, 9)) <
        1e-15);

  // sigma_z x sigma_x x sigma_0
  DenseMatrix szx0 = kron(kron(pauli_z(), pauli_x()), DenseMatrix::Identity(2, 2));
  CHECK(max_diff(tensor_spin_matrix(TensorSpinIndex::from_flat(2, {1, 0, 0, 1, 0, 0})), szx0) < 1e-15);

  TensorSpinIndex w = TensorSpinIndex::from_flat(2, {1, 0, 0, 1, 0, 0});
  CHECK(w.flat() == std::vector<long>{1, 0, 0, 1, 0, 0});
  CHECK(w.dim() == 8);
}

TEST_CASE("frobenius inner product basics") {
  CHECK(std::abs(trace_inner(DenseMatrix::Identity(4, 4), DenseMatrix::Identity(4, 4)) - cd(4, 0)) < 1e-15);
  CHECK_THROWS_AS(trace_inner(DenseMatrix::Identity(2, 2), DenseMatrix::Identity(3, 3)), std::invalid_argument);
}
