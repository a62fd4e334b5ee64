#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mub/tomography.hpp"

using namespace mub;
using cd = std::complex<double>;

namespace {

MubFamily family_for(long p, long n) {
  if (n == 1) return classes_prime(p);
  return classes_general(FieldContext::create(p, n));
}

DenseMatrix ket0_density(long d) {
  DenseMatrix rho = DenseMatrix::Zero(d, d);
  rho(0, 0) = 1;
  return rho;
}

}  // namespace

TEST_CASE("density validation") {
  CHECK_NOTHROW(validate_density(DenseMatrix::Identity(3, 3) / 3.0));
  CHECK_THROWS_AS(validate_density(DenseMatrix::Identity(3, 3)), std::invalid_argument);  // trace 3
  DenseMatrix bad = DenseMatrix::Zero(2, 2);
  bad(0, 1) = 1;  // not Hermitian
  CHECK_THROWS_AS(validate_density(bad), std::invalid_argument);
  DenseMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;  // trace one but indefinite
  CHECK_THROWS_AS(validate_density(neg), std::invalid_argument);
}

TEST_CASE("random states are reproducible, normalized and positive") {
  DenseMatrix a = random_density(4, 11), b = random_density(4, 11), c = random_density(4, 12);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
  CHECK_NOTHROW(validate_density(a));
  DenseMatrix pure = random_pure_density(5, 3);
  CHECK_NOTHROW(validate_density(pure));
  CHECK(std::abs((pure * pure - pure).cwiseAbs().maxCoeff()) < 1e-12);
}

TEST_CASE("born probabilities") {
  MubFamily fam = classes_prime(2);
  auto projs = projections_for(fam);

  MeasurementRecord flat = measure_probs(DenseMatrix::Identity(2, 2) / 2.0, fam, projs);
  for (const auto& [label, pr] : flat.probs)
    for (double v : pr) CHECK(std::abs(v - 0.5) < 1e-12);

  MeasurementRecord ket0 = measure_probs(ket0_density(2), fam, projs);
  CHECK(ket0.at(ClassLabel::of({0}))[0] == doctest::Approx(1.0).epsilon(1e-12));  // sigma_z eigenstate
  CHECK(ket0.at(ClassLabel::of({0}))[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ket0.at(ClassLabel::of({1}))[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ket0.at(ClassLabel::infinity())[0] == doctest::Approx(0.5).epsilon(1e-12));

  MubFamily fam3 = classes_prime(3);
  MeasurementRecord rec3 = measure_probs(random_density(3, 5), fam3);
  for (const auto& [label, pr] : rec3.probs) {
    double sum = 0;
    for (double v : pr) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(measure_probs(random_density(3, 1), fam, projs), std::invalid_argument);
}

TEST_CASE("spin coefficients by both routes") {
  for (long d : {2L, 3L, 5L, 7L}) {
    MubFamily fam = classes_prime(d);
    auto projs = projections_for(fam);

    DenseMatrix max_mixed = DenseMatrix::Identity(d, d) / static_cast<double>(d);
    for (long u = 1; u < d * d; ++u) CHECK(std::abs(spin_coefficient(max_mixed, {d, u / d, u % d})) < 1e-12);

    DenseMatrix rho = random_density(d, 77 + d);
    MeasurementRecord rec = measure_probs(rho, fam, projs);
    for (long u = 1; u < d * d; ++u) {
      SpinIndex idx{d, u / d, u % d};
      cd direct = spin_coefficient(rho, idx);
      cd from_probs = spin_coefficient(rec, fam, idx);
      CHECK(std::abs(direct - from_probs) < 1e-10);
      CHECK(std::abs(direct) <= 1.0 + 1e-12);
    }
  }

  CHECK(std::abs(spin_coefficient(ket0_density(2), {2, 1, 0}) - cd(1, 0)) < 1e-12);
  CHECK(std::abs(spin_coefficient(ket0_density(3), {3, 1, 0}) - cd(1, 0)) < 1e-12);
  CHECK_THROWS_AS(spin_coefficient(ket0_density(2), {2, 0, 0}), std::invalid_argument);
}

TEST_CASE("prime reconstruction round trip") {
  MubFamily fam3 = classes_prime(3);
  auto projs3 = projections_for(fam3);

  DenseMatrix mixed = DenseMatrix::Identity(3, 3) / 3.0;
  CHECK((reconstruct_prime(measure_probs(mixed, fam3, projs3), fam3) - mixed).norm() < 1e-12);

  for (int trial = 0; trial < 5; ++trial) {
    DenseMatrix rho = random_density(3, 100 + trial);
    DenseMatrix rec = reconstruct_prime(measure_probs(rho, fam3, projs3), fam3);
    CHECK((rec - rho).norm() < 1e-9);
  }

  MubFamily fam5 = classes_prime(5);
  auto projs5 = projections_for(fam5);
  DenseMatrix pure = random_pure_density(5, 42);
  CHECK((reconstruct_prime(measure_probs(pure, fam5, projs5), fam5) - pure).norm() < 1e-9);

  MeasurementRecord incomplete = measure_probs(pure, fam5, projs5);
  incomplete.probs.pop_back();
  CHECK_THROWS_AS(reconstruct_prime(incomplete, fam5), std::invalid_argument);
}

TEST_CASE("general reconstruction round trip") {
  MubFamily fam4 = family_for(2, 2);
  auto projs4 = projections_for(fam4);
  DenseMatrix mixed = DenseMatrix::Identity(4, 4) / 4.0;
  CHECK((reconstruct_general(measure_probs(mixed, fam4, projs4), fam4, projs4) - mixed).norm() < 1e-12);
  for (int trial = 0; trial < 5; ++trial) {
    DenseMatrix rho = random_density(4, 200 + trial);
    DenseMatrix rec = reconstruct_general(measure_probs(rho, fam4, projs4), fam4, projs4);
    CHECK((rec - rho).norm() < 1e-9);
  }

  MubFamily fam9 = classes_prime_squared(3, 2);
  auto projs9 = projections_for(fam9);
  DenseMatrix pure = random_pure_density(9, 7);
  CHECK((reconstruct_general(measure_probs(pure, fam9, projs9), fam9, projs9) - pure).norm() < 1e-9);

  MeasurementRecord incomplete = measure_probs(pure, fam9, projs9);
  incomplete.probs.erase(incomplete.probs.begin());
  CHECK_THROWS_AS(reconstruct_general(incomplete, fam9, projs9), std::invalid_argument);
}

TEST_CASE("round trip across all desk-scale dimensions") {
  struct Case {
    long p, n;
  };
  for (Case c : {Case{2, 1}, Case{3, 1}, Case{2, 2}, Case{5, 1}, Case{2, 3}, Case{3, 2}}) {
    MubFamily fam = family_for(c.p, c.n);
    auto projs = projections_for(fam);
    DenseMatrix rho = random_density(fam.d, 31 * c.p + c.n);
    MeasurementRecord rec = measure_probs(rho, fam, projs);
    DenseMatrix out = fam.n == 1 ? reconstruct_prime(rec, fam) : reconstruct_general(rec, fam, projs);
    CHECK((out - rho).norm() < 1e-9);
  }
}

TEST_CASE("sampling error shrinks with more shots") {
  MubFamily fam = family_for(2, 2);
  auto projs = projections_for(fam);
  DenseMatrix rho = random_density(4, 9001);
  MeasurementRecord exact = measure_probs(rho, fam, projs);

  MeasurementRecord few = sample_record(exact, 1000, 5);
  MeasurementRecord many = sample_record(exact, 1000000, 5);
  double err_few = (reconstruct_general(few, fam, projs) - rho).norm();
  double err_many = (reconstruct_general(many, fam, projs) - rho).norm();
  CHECK(err_many < err_few);
  CHECK(few.shots == 1000);
  CHECK(many.rng == "mt19937_64");

  // per-class estimates stay normalized
  for (const auto& [label, pr] : few.probs) {
    double sum = 0;
    for (double v : pr) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  MeasurementRecord again = sample_record(exact, 1000, 5);
  for (size_t c = 0; c < few.probs.size(); ++c) CHECK(few.probs[c].second == again.probs[c].second);
}
