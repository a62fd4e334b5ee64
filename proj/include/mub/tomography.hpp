#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mub/classes.hpp"
#include "mub/projections.hpp"
#include "mub/spin.hpp"

namespace mub {

/// Throws unless rho is Hermitian, trace one, and positive semidefinite
/// within the stated tolerances.
void validate_density(const DenseMatrix& rho, double herm_tol = 1e-12, double trace_tol = 1e-12,
                      double psd_tol = 1e-10);

/// Seeded random density matrix A A^dag / tr(A A^dag), A complex Gaussian.
DenseMatrix random_density(long dim, std::uint64_t seed);
/// Seeded random pure state |v><v|.
DenseMatrix random_pure_density(long dim, std::uint64_t seed);

/// Born probabilities per class, exact or multinomially sampled.
struct MeasurementRecord {
  bool exact = true;
  std::optional<long long> shots;
  std::optional<std::uint64_t> seed;
  std::string rng;  // set when sampled
  std::vector<std::pair<ClassLabel, std::vector<double>>> probs;

  const std::vector<double>& at(const ClassLabel& label) const;
};

MeasurementRecord measure_probs(const DenseMatrix& rho, const MubFamily& fam,
                                const std::vector<ProjectionFamily>& projs);
MeasurementRecord measure_probs(const DenseMatrix& rho, const MubFamily& fam);

/// Multinomial resampling of an exact record with an explicitly seeded
/// mt19937_64 and inverse-CDF draws, so identical seeds reproduce identical
/// records.
MeasurementRecord sample_record(const MeasurementRecord& exact, long long shots, std::uint64_t seed);

/// s_u = Tr(S_u^dag rho), evaluated directly.
std::complex<double> spin_coefficient(const DenseMatrix& rho, const SpinIndex& u);

/// The same coefficient from measured probabilities,
/// s_u = alpha_u sum_m eta^m p_u(m), with the level shift of the class
/// generator applied when u = b u_t.
std::complex<double> spin_coefficient(const MeasurementRecord& rec, const MubFamily& fam, const SpinIndex& u);

/// rho = (1/p) [ I + sum over classes, nonzero members of s_u S_u ] for
/// prime dimension.
DenseMatrix reconstruct_prime(const MeasurementRecord& rec, const MubFamily& fam);

/// rho = sum_b sum_r p_b(r) P_b(r) - I for any p^n, gated behind a one-time
/// oracle check against the spin-basis expansion at d = 4.
DenseMatrix reconstruct_general(const MeasurementRecord& rec, const MubFamily& fam,
                                const std::vector<ProjectionFamily>& projs);

}  // namespace mub
