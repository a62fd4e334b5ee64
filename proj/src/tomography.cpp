#include "mub/tomography.hpp"

#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>

#include "mub/galois.hpp"

namespace mub {

void validate_density(const DenseMatrix& rho, double herm_tol, double trace_tol, double psd_tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1, 0)) > trace_tol)
    throw std::invalid_argument("density matrix does not have trace one");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

namespace {

// 53-bit uniform in [0,1); pinned construction, independent of library
// distribution internals.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

DenseMatrix random_gaussian(long dim, std::uint64_t seed, long cols) {
  std::mt19937_64 rng(seed);
  // Box-Muller on pinned uniforms
  auto gauss = [&rng]() {
    double u1 = canonical(rng), u2 = canonical(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  DenseMatrix A(dim, cols);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < cols; ++j) A(i, j) = std::complex<double>(gauss(), gauss());
  return A;
}

}  // namespace

DenseMatrix random_density(long dim, std::uint64_t seed) {
  DenseMatrix A = random_gaussian(dim, seed, dim);
  DenseMatrix rho = A * A.adjoint();
  rho /= rho.trace().real();
  // symmetrize away the last bits of rounding
  rho = (rho + DenseMatrix(rho.adjoint())) / 2.0;
  return rho;
}

DenseMatrix random_pure_density(long dim, std::uint64_t seed) {
  DenseMatrix A = random_gaussian(dim, seed, 1);
  Eigen::VectorXcd v = A.col(0) / A.col(0).norm();
  return v * v.adjoint();
}

const std::vector<double>& MeasurementRecord::at(const ClassLabel& label) const {
  for (const auto& [l, p] : probs)
    if (l == label) return p;
  throw std::invalid_argument("MeasurementRecord: no probabilities for class " + label.str());
}

MeasurementRecord measure_probs(const DenseMatrix& rho, const MubFamily& fam,
                                const std::vector<ProjectionFamily>& projs) {
  validate_density(rho);
  if (rho.rows() != fam.d) throw std::invalid_argument("measure_probs: dimension mismatch");
  MeasurementRecord rec;
  rec.exact = true;
  for (const auto& pf : projs) {
    std::vector<double> pr(pf.projections.size());
    for (size_t r = 0; r < pf.projections.size(); ++r)
      pr[r] = pf.projections[r].cwiseProduct(rho.transpose()).sum().real();
    rec.probs.emplace_back(pf.label, std::move(pr));
  }
  return rec;
}

MeasurementRecord measure_probs(const DenseMatrix& rho, const MubFamily& fam) {
  return measure_probs(rho, fam, projections_for(fam));
}

MeasurementRecord sample_record(const MeasurementRecord& exact, long long shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("sample_record: shots must be positive");
  std::mt19937_64 rng(seed);
  MeasurementRecord rec;
  rec.exact = false;
  rec.shots = shots;
  rec.seed = seed;
  rec.rng = "mt19937_64";
  for (const auto& [label, pr] : exact.probs) {
    std::vector<long long> counts(pr.size(), 0);
    for (long long s = 0; s < shots; ++s) {
      double u = canonical(rng);
      double acc = 0;
      size_t pick = pr.size() - 1;
      for (size_t r = 0; r < pr.size(); ++r) {
        acc += pr[r];
        if (u < acc) {
          pick = r;
          break;
        }
      }
      ++counts[pick];
    }
    std::vector<double> est(pr.size());
    for (size_t r = 0; r < pr.size(); ++r) est[r] = static_cast<double>(counts[r]) / static_cast<double>(shots);
    rec.probs.emplace_back(label, std::move(est));
  }
  return rec;
}

std::complex<double> spin_coefficient(const DenseMatrix& rho, const SpinIndex& u) {
  if (u.is_identity()) throw std::invalid_argument("spin_coefficient: u = 0 is fixed by normalization");
  return (dense(spin_adjoint(phased(u))) * rho).trace();
}

std::complex<double> spin_coefficient(const MeasurementRecord& rec, const MubFamily& fam, const SpinIndex& u) {
  if (u.is_identity()) throw std::invalid_argument("spin_coefficient: u = 0 is fixed by normalization");
  if (fam.n != 1) throw std::invalid_argument("spin_coefficient: probability route requires prime dimension");
  long d = fam.d;
  const ClassLabel& label = fam.label_of({u.j, u.k});
  const auto& pr = rec.at(label);
  std::complex<double> sum = 0;
  for (long m = 0; m < d; ++m) {
    long s = reduce_multiple(u, m).second;
    sum += zeta_power(d, 2 * m) * pr[s];
  }
  return zeta_power(d, alpha_exponent(u)) * sum;
}

DenseMatrix reconstruct_prime(const MeasurementRecord& rec, const MubFamily& fam) {
  if (fam.n != 1) throw std::invalid_argument("reconstruct_prime: requires a prime-dimension family");
  long d = fam.d;
  if (rec.probs.size() != fam.classes.size())
    throw std::invalid_argument("reconstruct_prime: record does not cover all classes");
  DenseMatrix rho = DenseMatrix::Identity(d, d);
  for (const auto& cls : fam.classes) {
    for (const auto& m : cls.members) {
      if (m[0] == 0 && m[1] == 0) continue;
      SpinIndex u{d, m[0], m[1]};
      rho += spin_coefficient(rec, fam, u) * spin_matrix(u);
    }
  }
  return rho / static_cast<double>(d);
}

namespace {

// One-time check that the projector expansion agrees with the spin-basis
// expansion; refuses reconstruction if it ever fails.
void general_route_gate() {
  static std::once_flag flag;
  static bool ok = false;
  std::call_once(flag, [] {
    MubFamily fam = classes_general(FieldContext::create(2, 2));
    auto projs = projections_for(fam);
    long d = fam.d;
    for (int trial = 0; trial < 20; ++trial) {
      DenseMatrix rho = random_density(d, 900 + static_cast<std::uint64_t>(trial));
      // independent route: Frobenius expansion in the d^2 spin matrices
      DenseMatrix spin_rec = DenseMatrix::Zero(d, d);
      for (long j = 0; j < d; ++j)
        for (long k = 0; k < d; ++k) {
          DenseMatrix S = spin_matrix(SpinIndex{d, j, k});
          spin_rec += (S.adjoint() * rho).trace() * S;
        }
      spin_rec /= static_cast<double>(d);
      DenseMatrix proj_rec = -DenseMatrix::Identity(d, d);
      MeasurementRecord rec = measure_probs(rho, fam, projs);
      for (size_t f = 0; f < projs.size(); ++f) {
        const auto& pr = rec.at(projs[f].label);
        for (size_t r = 0; r < projs[f].projections.size(); ++r) proj_rec += pr[r] * projs[f].projections[r];
      }
      if ((proj_rec - spin_rec).cwiseAbs().maxCoeff() > 1e-9) return;
    }
    ok = true;
  });
  if (!ok) throw std::runtime_error("reconstruct_general: oracle gate failed, refusing to reconstruct");
}

}  // namespace

DenseMatrix reconstruct_general(const MeasurementRecord& rec, const MubFamily& fam,
                                const std::vector<ProjectionFamily>& projs) {
  general_route_gate();
  if (rec.probs.size() != fam.classes.size() || projs.size() != fam.classes.size())
    throw std::invalid_argument("reconstruct_general: record does not cover all classes");
  long d = fam.d;
  DenseMatrix rho = -DenseMatrix::Identity(d, d);
  for (const auto& pf : projs) {
    const auto& pr = rec.at(pf.label);
    if (pr.size() != pf.projections.size())
      throw std::invalid_argument("reconstruct_general: level count mismatch for class " + pf.label.str());
    for (size_t r = 0; r < pf.projections.size(); ++r) rho += pr[r] * pf.projections[r];
  }
  return rho;
}

}  // namespace mub
