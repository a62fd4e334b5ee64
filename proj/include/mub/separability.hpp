#pragma once

#include <string>
#include <vector>

#include "mub/classes.hpp"
#include "mub/projections.hpp"

namespace mub {

enum class SeparabilityTag { CompletelySeparable, PartiallySeparable, CompletelyInseparable };

std::string tag_str(SeparabilityTag t);

/// Finest tensor factorization of a class: disjoint blocks of 1-based
/// subsystem indices whose coordinate-restricted subspaces sum to the class.
struct SeparabilityReport {
  ClassLabel label;
  std::vector<std::vector<int>> partition;
  SeparabilityTag tag = SeparabilityTag::CompletelyInseparable;
  /// Set when more than one partition with the maximal block count validates.
  bool ambiguous = false;

  std::string partition_str() const;  // "(12)(3)"
};

/// Enumerates all set partitions of the subsystems and returns the valid one
/// with the most blocks; a partition is valid when the block-restricted
/// subspace dimensions sum to n. Ties break to the lexicographically smallest
/// block structure.
SeparabilityReport decompose_class(const CommutingClass& cls);

struct FactorizationReport {
  bool pass = true;
  double worst_product = 0;  // entrywise gap between block product and full projector
  double worst_match = 0;    // gap when matching against the class's own family
  std::vector<std::string> failures;
};

/// Rebuilds the class family from block-aligned generators, builds each
/// block's local projector family from the restricted generators, and checks
/// that their site-embedded product reproduces every full projector; also
/// matches the result one-to-one against projections_tensor(cls) and checks
/// the block vectors' symplectic products vanish.
FactorizationReport factored_projections(const CommutingClass& cls, const std::vector<std::vector<int>>& partition,
                                         double tol = 1e-10);

}  // namespace mub
