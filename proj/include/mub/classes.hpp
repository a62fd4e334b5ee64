#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mub/galois.hpp"
#include "mub/spin.hpp"

namespace mub {

/// Label of a commuting class: either the digit tuple (a0,...,a_{n-1}) of
/// alpha in the lambda-power basis, or the distinguished symbol infinity.
struct ClassLabel {
  bool inf = false;
  std::vector<long> digits;  // empty when inf

  static ClassLabel infinity() { return ClassLabel{true, {}}; }
  static ClassLabel of(std::vector<long> d) { return ClassLabel{false, std::move(d)}; }

  std::string str() const;
  bool operator==(const ClassLabel&) const = default;
};

/// One commuting class: a p^n-element subspace of Z_p^{2n} whose vectors have
/// pairwise symplectic product zero, given by n generators and the full
/// member list.
struct CommutingClass {
  long p = 0, n = 0;
  ClassLabel label;
  std::vector<TensorSpinIndex> generators;
  std::vector<std::vector<long>> members;
};

struct PartitionCheck {
  bool pass = true;
  long n_classes = 0;
  long members_per_class = 0;
  long nonzero_covered = 0;
  std::vector<std::string> failures;
};

/// A complete family of p^n + 1 commuting classes whose nonzero members
/// partition Z_p^{2n} \ {0}.
class MubFamily {
 public:
  long p = 0, n = 0, d = 0;
  FieldRef ctx;
  std::optional<long> nonresidue;
  std::vector<CommutingClass> classes;  // digit labels in index order, then infinity

  const CommutingClass& at(const ClassLabel& label) const;
  /// Class label of a nonzero vector; throws for the zero vector (it belongs
  /// to every class) or a vector outside the family.
  const ClassLabel& label_of(const std::vector<long>& w) const;

  void build_lookup();

 private:
  std::unordered_map<std::string, size_t> lookup_;
};

/// Symplectic product k j' - j k' mod m of the pairs (j,k), (j',k').
long symplectic2(long j, long k, long j2, long k2, long m);
long symplectic2(const SpinIndex& u, const SpinIndex& v);

/// The same form with GF(p^n) components: b a2 - a b2 for z = (a,b).
GFElement symplectic_gf(const GFElement& a, const GFElement& b, const GFElement& a2, const GFElement& b2);

/// Sum of pairwise symplectic products mod p; zero iff the tensor spin
/// operators commute.
long symplectic2n(const TensorSpinIndex& w1, const TensorSpinIndex& w2);
long symplectic2n(long p, const std::vector<long>& w1, const std::vector<long>& w2);

/// Image of z = (a,b) in V_2(GF(p^n)) under the basis map M: coordinates
/// x_j = Tr(a lambda^j) against the dual basis and y_k the coefficients of b,
/// interleaved as (x0,y0,...,x_{n-1},y_{n-1}).
std::vector<long> m_map(const GFElement& a, const GFElement& b);

/// The p+1 classes C_a = {b(1,a)} and C_inf = {b(0,1)} for prime dimension.
MubFamily classes_prime(long p);

/// The explicit p^2 + 1 classes for odd p built from a quadratic nonresidue D.
MubFamily classes_prime_squared(long p, long D);

/// The general p^n + 1 classes through the field extension: members of
/// C_alpha are the M-images of {beta (1,alpha)}, C_inf maps to the span of
/// the f-positions. Generators take beta over the dual basis so each has a
/// single 1 among its x-coordinates.
MubFamily classes_general(FieldRef ctx);

/// Checks the partition structure: each class a p^n-member subspace, pairwise
/// intersections trivial, nonzero members covering Z_p^{2n} \ {0} exactly
/// once, and intra-class symplectic products all zero.
PartitionCheck verify_partition(const MubFamily& fam);

}  // namespace mub
