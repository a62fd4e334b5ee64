#include "mub/separability.hpp"

#include <algorithm>
#include <stdexcept>

#include "mub/galois.hpp"

namespace mub {

std::string tag_str(SeparabilityTag t) {
  switch (t) {
    case SeparabilityTag::CompletelySeparable: return "completely separable";
    case SeparabilityTag::PartiallySeparable: return "partially separable";
    case SeparabilityTag::CompletelyInseparable: return "completely inseparable";
  }
  return "?";
}

std::string SeparabilityReport::partition_str() const {
  std::string s;
  for (const auto& block : partition) {
    s += '(';
    for (int site : block) s += std::to_string(site);
    s += ')';
  }
  return s;
}

namespace {

// Basis of {b in Z_p^ncols : M b = 0} by Gaussian elimination.
std::vector<std::vector<long>> nullspace_mod_p(std::vector<std::vector<long>> M, long ncols, long p) {
  long nrows = static_cast<long>(M.size());
  std::vector<long> pivot_col;
  long row = 0;
  for (long col = 0; col < ncols && row < nrows; ++col) {
    long piv = -1;
    for (long r = row; r < nrows; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[row], M[piv]);
    long inv = inv_mod(M[row][col], p);
    for (long c = 0; c < ncols; ++c) M[row][c] = mod(static_cast<long long>(M[row][c]) * inv, p);
    for (long r = 0; r < nrows; ++r) {
      if (r == row || M[r][col] == 0) continue;
      long f = M[r][col];
      for (long c = 0; c < ncols; ++c) M[r][c] = mod(M[r][c] - static_cast<long long>(f) * M[row][c], p);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<long>> basis;
  for (long free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<long> b(ncols, 0);
    b[free_col] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) b[pivot_col[r]] = mod(-M[r][free_col], p);
    basis.push_back(std::move(b));
  }
  return basis;
}

// Coefficient vectors b with sum_j b_j gen_j supported only on the block's
// coordinate pairs.
std::vector<std::vector<long>> block_coefficients(const CommutingClass& cls, const std::vector<int>& block) {
  long p = cls.p, n = cls.n;
  std::vector<bool> inside(n, false);
  for (int site : block) inside[site - 1] = true;
  std::vector<std::vector<long>> constraints;
  std::vector<std::vector<long>> gen_flat;
  gen_flat.reserve(n);
  for (const auto& g : cls.generators) gen_flat.push_back(g.flat());
  for (long s = 0; s < n; ++s) {
    if (inside[s]) continue;
    for (long c : {2 * s, 2 * s + 1}) {
      std::vector<long> row(n);
      for (long j = 0; j < n; ++j) row[j] = gen_flat[j][c];
      constraints.push_back(std::move(row));
    }
  }
  return nullspace_mod_p(std::move(constraints), n, p);
}

std::vector<long> combine(const CommutingClass& cls, const std::vector<long>& coeffs) {
  std::vector<long> v(2 * cls.n, 0);
  for (long j = 0; j < cls.n; ++j) {
    if (coeffs[j] == 0) continue;
    std::vector<long> g = cls.generators[j].flat();
    for (long c = 0; c < 2 * cls.n; ++c) v[c] = mod(v[c] + static_cast<long long>(coeffs[j]) * g[c], cls.p);
  }
  return v;
}

void enumerate_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<int> rgs(n, 0);
  auto emit = [&]() {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> part(blocks);
    for (int i = 0; i < n; ++i) part[rgs[i]].push_back(i + 1);
    out.push_back(std::move(part));
  };
  // restricted growth strings
  while (true) {
    emit();
    int i = n - 1;
    for (; i > 0; --i) {
      int maxprev = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] <= maxprev) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
}

bool partition_valid(const CommutingClass& cls, const std::vector<std::vector<int>>& part) {
  long total = 0;
  for (const auto& block : part) total += static_cast<long>(block_coefficients(cls, block).size());
  return total == cls.n;
}

}  // namespace

SeparabilityReport decompose_class(const CommutingClass& cls) {
  if (cls.n > 5) throw std::invalid_argument("decompose_class: partition enumeration capped at n = 5");
  std::vector<std::vector<std::vector<int>>> parts;
  enumerate_partitions(static_cast<int>(cls.n), parts);

  std::vector<std::vector<std::vector<int>>> valid;
  for (auto& part : parts) {
    std::sort(part.begin(), part.end());
    if (partition_valid(cls, part)) valid.push_back(part);
  }
  size_t max_blocks = 0;
  for (const auto& part : valid) max_blocks = std::max(max_blocks, part.size());
  std::vector<std::vector<std::vector<int>>> best;
  for (const auto& part : valid)
    if (part.size() == max_blocks) best.push_back(part);
  std::sort(best.begin(), best.end());

  SeparabilityReport rep;
  rep.label = cls.label;
  rep.partition = best.front();
  rep.ambiguous = best.size() > 1;
  if (max_blocks == static_cast<size_t>(cls.n))
    rep.tag = SeparabilityTag::CompletelySeparable;
  else if (max_blocks == 1)
    rep.tag = SeparabilityTag::CompletelyInseparable;
  else
    rep.tag = SeparabilityTag::PartiallySeparable;
  return rep;
}

FactorizationReport factored_projections(const CommutingClass& cls, const std::vector<std::vector<int>>& partition,
                                         double tol) {
  long p = cls.p, n = cls.n;
  FactorizationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.pass = false;
    if (rep.failures.size() < 16) rep.failures.push_back(msg);
  };

  // block-aligned basis of the class
  std::vector<std::vector<std::vector<long>>> block_vecs;  // per block, full 2n vectors
  long total_dim = 0;
  for (const auto& block : partition) {
    std::vector<std::vector<long>> vecs;
    for (const auto& coeffs : block_coefficients(cls, block)) vecs.push_back(combine(cls, coeffs));
    total_dim += static_cast<long>(vecs.size());
    block_vecs.push_back(std::move(vecs));
  }
  if (total_dim != n)
    throw std::invalid_argument("factored_projections: partition " + std::to_string(partition.size()) +
                                " blocks is not valid for class " + cls.label.str());

  for (size_t k = 0; k < block_vecs.size(); ++k)
    for (size_t i = 0; i < block_vecs[k].size(); ++i)
      for (size_t j = i + 1; j < block_vecs[k].size(); ++j)
        if (symplectic2n(p, block_vecs[k][i], block_vecs[k][j]) != 0)
          fail("block " + std::to_string(k + 1) + " vectors have nonzero symplectic product");

  // full family over the block-aligned generators
  CommutingClass aligned;
  aligned.p = p;
  aligned.n = n;
  aligned.label = cls.label;
  aligned.members = cls.members;
  std::vector<long> block_offset;
  for (const auto& vecs : block_vecs) {
    block_offset.push_back(static_cast<long>(aligned.generators.size()));
    for (const auto& v : vecs) aligned.generators.push_back(TensorSpinIndex::from_flat(p, v));
  }
  ProjectionFamily full = projections_tensor(aligned);

  // local family per block from the restricted generators
  std::vector<ProjectionFamily> locals;
  std::vector<std::vector<int>> sites_of_block;
  for (size_t k = 0; k < partition.size(); ++k) {
    std::vector<int> sites = partition[k];
    std::sort(sites.begin(), sites.end());
    CommutingClass local;
    local.p = p;
    local.n = static_cast<long>(sites.size());
    local.label = cls.label;
    for (const auto& v : block_vecs[k]) {
      std::vector<long> flat;
      for (int site : sites) {
        flat.push_back(v[2 * (site - 1)]);
        flat.push_back(v[2 * (site - 1) + 1]);
      }
      local.generators.push_back(TensorSpinIndex::from_flat(p, flat));
    }
    // a block with fewer generators than sites cannot happen for a valid
    // partition: dim C(I_k) = |I_k| when the dimensions sum to n
    if (local.generators.size() != sites.size())
      throw std::invalid_argument("factored_projections: block dimension mismatch in class " + cls.label.str());
    locals.push_back(projections_tensor(local));
    sites_of_block.push_back(std::move(sites));
  }

  // site digit of a full index, site 0 most significant
  auto digit = [p, n](long idx, int site) {
    for (int s = static_cast<int>(n) - 1; s > site; --s) idx /= p;
    return idx % p;
  };

  long d = full.d;
  for (long ridx = 0; ridx < d; ++ridx) {
    std::vector<long> r = full.level_of(ridx);
    DenseMatrix prod(d, d);
    for (long row = 0; row < d; ++row)
      for (long col = 0; col < d; ++col) {
        std::complex<double> val = 1.0;
        for (size_t k = 0; k < locals.size(); ++k) {
          long lr = 0, lc = 0;
          for (int site : sites_of_block[k]) {
            lr = lr * p + digit(row, site - 1);
            lc = lc * p + digit(col, site - 1);
          }
          val *= locals[k].projections[locals[k].index_of(std::vector<long>(
              r.begin() + block_offset[k], r.begin() + block_offset[k] + locals[k].n))](lr, lc);
        }
        prod(row, col) = val;
      }
    double dev = (prod - full.projections[ridx]).cwiseAbs().maxCoeff();
    rep.worst_product = std::max(rep.worst_product, dev);
    if (dev >= tol) fail("level " + std::to_string(ridx) + ": block product differs from full projector");
  }

  // the block-aligned family must be the class's own family, up to relabeling
  ProjectionFamily original = projections_tensor(cls);
  std::vector<bool> used(d, false);
  for (long ridx = 0; ridx < d; ++ridx) {
    double best = 1e30;
    long best_s = -1;
    for (long s = 0; s < d; ++s) {
      if (used[s]) continue;
      double dev = (full.projections[ridx] - original.projections[s]).cwiseAbs().maxCoeff();
      if (dev < best) {
        best = dev;
        best_s = s;
      }
    }
    rep.worst_match = std::max(rep.worst_match, best);
    if (best >= tol)
      fail("level " + std::to_string(ridx) + ": no matching projector in the class's own family");
    else
      used[best_s] = true;
  }
  return rep;
}

}  // namespace mub
