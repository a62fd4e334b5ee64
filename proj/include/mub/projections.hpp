#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mub/classes.hpp"
#include "mub/spin.hpp"

namespace mub {

/// The d rank-1 projections of one commuting class. Levels are multi-indices
/// r = (r_0,...,r_{n-1}) with r_t attached to generator t; the flat position
/// reads them in generator order, r_0 most significant.
struct ProjectionFamily {
  ClassLabel label;
  long d = 0, p = 0, n = 0;
  std::vector<DenseMatrix> projections;

  std::vector<long> level_of(long idx) const;
  long index_of(const std::vector<long>& levels) const;
};

/// Orthonormal basis extracted from a rank-1 projection family; vector r
/// spans the range of projection r.
struct MUBasis {
  ClassLabel label;
  std::vector<Eigen::VectorXcd> vectors;
};

/// P_u(r) = (1/d) sum_m (alpha_u eta^r S_u)^m for prime d, built from exact
/// phase exponents and materialized once.
ProjectionFamily projections_prime(const SpinIndex& u);

/// Canonical generator u_t and shifted level s with P_u(r) = P_{u_t}(s),
/// where u = b u_t and s = b^{-1} (r - j_t k_t C(b,2)).
std::pair<SpinIndex, long> reduce_multiple(const SpinIndex& u, long r);

/// Decomposition of u as b * u_t with u_t the class generator ((1,a) or (0,1)).
std::pair<SpinIndex, long> canonical_generator(const SpinIndex& u);

/// Tensor-product projections of a class: each generator's tensor operator
/// carries a per-factor alpha correction so its p-th power is the identity,
/// which the telescoping argument behind idempotence requires.
ProjectionFamily projections_tensor(const CommutingClass& cls);

/// Projection families for every class of a family, in class order.
std::vector<ProjectionFamily> projections_for(const MubFamily& fam);

MUBasis extract_basis(const ProjectionFamily& fam, double tol = 1e-10);

/// Reassembles (alpha_u eta^r S_u)^t = sum_m eta^{-mt} P_u(m+r); self-test
/// companion to the projection formula.
DenseMatrix spin_from_projections(const SpinIndex& u, long t, long r = 0);

struct MubCheck {
  bool pass = true;
  double worst_within = 0;        // |Tr(P(r)P(s)) - delta(r,s)| inside one family
  double worst_completeness = 0;  // max-norm of sum_r P(r) - I
  double worst_cross = 0;         // |Tr(P P') - 1/d| across families
  double worst_vec_within = 0;    // |<v_r,v_s> - delta(r,s)| inside one basis
  double worst_vec_cross = 0;     // ||<v,w>|^2 - 1/d| across bases
  double tol = 0;
  std::vector<std::string> failures;
};

/// Full numerical MUB verification over the families of one construction.
MubCheck check_mub(const std::vector<ProjectionFamily>& fams, double tol = 1e-9);

}  // namespace mub
