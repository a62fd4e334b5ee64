#include "mub/projections.hpp"

#include <cmath>
#include <stdexcept>

#include "mub/galois.hpp"

namespace mub {

std::vector<long> ProjectionFamily::level_of(long idx) const {
  std::vector<long> r(n);
  for (long t = n - 1; t >= 0; --t) {
    r[t] = idx % p;
    idx /= p;
  }
  return r;
}

long ProjectionFamily::index_of(const std::vector<long>& levels) const {
  if (static_cast<long>(levels.size()) != n) throw std::invalid_argument("ProjectionFamily: wrong level count");
  long idx = 0;
  for (long t = 0; t < n; ++t) idx = idx * p + mod(levels[t], p);
  return idx;
}

std::pair<SpinIndex, long> canonical_generator(const SpinIndex& u) {
  if (u.is_identity()) throw std::invalid_argument("canonical_generator: (0,0) generates no class");
  if (u.j != 0) {
    long b = u.j;
    long a = mod(static_cast<long long>(u.k) * inv_mod(u.j, u.d), u.d);
    return {SpinIndex{u.d, 1, a}, b};
  }
  return {SpinIndex{u.d, 0, 1}, u.k};
}

ProjectionFamily projections_prime(const SpinIndex& u) {
  if (!is_prime(u.d)) throw std::invalid_argument("projections_prime: dimension must be prime");
  if (u.is_identity()) throw std::invalid_argument("projections_prime: u = (0,0) has no projection family");
  long d = u.d;
  long alpha = alpha_exponent(u);

  ProjectionFamily fam;
  auto [ut, b] = canonical_generator(u);
  fam.label = (ut.j == 0) ? ClassLabel::infinity() : ClassLabel::of({ut.k});
  fam.d = d;
  fam.p = d;
  fam.n = 1;
  fam.projections.reserve(d);
  for (long r = 0; r < d; ++r) {
    DenseMatrix P = DenseMatrix::Zero(d, d);
    for (long m = 0; m < d; ++m) {
      PhasedSpinOp term = spin_pow(u, m);
      term.phase_exp = mod(term.phase_exp + static_cast<long long>(m) * (alpha + 2 * r), 2 * d);
      P += dense(term);
    }
    fam.projections.push_back(P / static_cast<double>(d));
  }
  return fam;
}

std::pair<SpinIndex, long> reduce_multiple(const SpinIndex& u, long r) {
  auto [ut, b] = canonical_generator(u);
  long d = u.d;
  r = mod(r, d);
  if (b == 1) return {ut, r};
  long long choose2 = static_cast<long long>(b) * (b - 1) / 2;
  long s = mod(inv_mod(b, d) * (r - static_cast<long long>(ut.j) * ut.k % d * (choose2 % d)), d);
  return {ut, s};
}

namespace {

// Tensor operator with one exact scalar zeta_p^phase, zeta_p = exp(i pi / p).
struct PhasedTensorOp {
  std::vector<SpinIndex> factors;
  long phase = 0;  // mod 2p
};

PhasedTensorOp pt_identity(long p, long n) {
  PhasedTensorOp id;
  id.factors.assign(n, SpinIndex{p, 0, 0});
  return id;
}

PhasedTensorOp pt_mul(const PhasedTensorOp& a, const PhasedTensorOp& b) {
  long p = a.factors.front().d;
  PhasedTensorOp out;
  long long phase = a.phase + b.phase;
  out.factors.reserve(a.factors.size());
  for (size_t s = 0; s < a.factors.size(); ++s) {
    PhasedSpinOp prod = spin_mul(PhasedSpinOp{a.factors[s], 0}, PhasedSpinOp{b.factors[s], 0});
    phase += prod.phase_exp;
    out.factors.push_back(prod.index);
  }
  out.phase = mod(phase, 2 * p);
  return out;
}

PhasedTensorOp pt_pow(const PhasedTensorOp& a, long m) {
  long p = a.factors.front().d;
  PhasedTensorOp out;
  long long phase = static_cast<long long>(mod(static_cast<long long>(a.phase) * m, 2 * p));
  out.factors.reserve(a.factors.size());
  for (const auto& u : a.factors) {
    PhasedSpinOp pw = spin_pow(u, m);
    phase += pw.phase_exp;
    out.factors.push_back(pw.index);
  }
  out.phase = mod(phase, 2 * p);
  return out;
}

DenseMatrix pt_dense(const PhasedTensorOp& a) {
  long p = a.factors.front().d;
  DenseMatrix M = spin_matrix(a.factors.front());
  for (size_t s = 1; s < a.factors.size(); ++s) M = kron(M, spin_matrix(a.factors[s]));
  return zeta_power(p, a.phase) * M;
}

}  // namespace

ProjectionFamily projections_tensor(const CommutingClass& cls) {
  long p = cls.p, n = cls.n;
  if (static_cast<long>(cls.generators.size()) != n)
    throw std::invalid_argument("projections_tensor: class must carry n generators");
  for (size_t i = 0; i < cls.generators.size(); ++i) {
    if (cls.generators[i].is_identity())
      throw std::invalid_argument("projections_tensor: zero generator in class " + cls.label.str());
    for (size_t j = i + 1; j < cls.generators.size(); ++j)
      if (symplectic2n(cls.generators[i], cls.generators[j]) != 0)
        throw std::invalid_argument("projections_tensor: generators of class " + cls.label.str() +
                                    " do not commute");
  }

  long d = 1;
  for (long i = 0; i < n; ++i) d *= p;

  // A_t = tensor of the generator's factors, each with its own alpha; then
  // A_t^p = I factor-wise.
  std::vector<PhasedTensorOp> A(n);
  for (long t = 0; t < n; ++t) {
    A[t].factors = cls.generators[t].pairs;
    long long alpha = 0;
    for (const auto& u : A[t].factors) alpha += alpha_exponent(u);
    A[t].phase = mod(alpha, 2 * p);
  }

  ProjectionFamily fam;
  fam.label = cls.label;
  fam.d = d;
  fam.p = p;
  fam.n = n;
  fam.projections.reserve(d);

  for (long ridx = 0; ridx < d; ++ridx) {
    std::vector<long> r = fam.level_of(ridx);
    DenseMatrix P = DenseMatrix::Zero(d, d);
    std::vector<long> m(n, 0);
    for (long midx = 0; midx < d; ++midx) {
      long v = midx;
      for (long t = n - 1; t >= 0; --t) {
        m[t] = v % p;
        v /= p;
      }
      PhasedTensorOp term = pt_identity(p, n);
      for (long t = 0; t < n; ++t) {
        PhasedTensorOp factor = pt_pow(A[t], m[t]);
        factor.phase = mod(factor.phase + 2LL * r[t] * m[t], 2 * p);
        term = pt_mul(term, factor);
      }
      P += pt_dense(term);
    }
    fam.projections.push_back(P / static_cast<double>(d));
  }
  return fam;
}

std::vector<ProjectionFamily> projections_for(const MubFamily& fam) {
  std::vector<ProjectionFamily> out;
  out.reserve(fam.classes.size());
  for (const auto& cls : fam.classes) out.push_back(projections_tensor(cls));
  return out;
}

MUBasis extract_basis(const ProjectionFamily& fam, double tol) {
  MUBasis basis;
  basis.label = fam.label;
  basis.vectors.reserve(fam.projections.size());
  for (const auto& P : fam.projections) {
    double tr = P.trace().real();
    double tr2 = (P * P).trace().real();
    if (std::abs(tr - 1.0) > tol || std::abs(tr2 - 1.0) > tol)
      throw std::invalid_argument("extract_basis: projection of class " + fam.label.str() + " is not rank 1");
    Eigen::Index best = 0;
    double best_norm = -1;
    for (Eigen::Index c = 0; c < P.cols(); ++c) {
      double nrm = P.col(c).norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    Eigen::VectorXcd v = P.col(best) / best_norm;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-8) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

DenseMatrix spin_from_projections(const SpinIndex& u, long t, long r) {
  ProjectionFamily fam = projections_prime(u);
  long d = u.d;
  DenseMatrix M = DenseMatrix::Zero(d, d);
  for (long m = 0; m < d; ++m) M += zeta_power(d, -2LL * m * t) * fam.projections[mod(m + r, d)];
  return M;
}

namespace {

// Tr(P Q) without forming the product
std::complex<double> product_trace(const DenseMatrix& P, const DenseMatrix& Q) {
  return P.cwiseProduct(Q.transpose()).sum();
}

}  // namespace

MubCheck check_mub(const std::vector<ProjectionFamily>& fams, double tol) {
  MubCheck rep;
  rep.tol = tol;
  if (fams.empty()) throw std::invalid_argument("check_mub: no families");
  long d = fams.front().d;
  double inv_d = 1.0 / static_cast<double>(d);
  auto fail = [&rep](double dev, const std::string& msg) {
    rep.pass = false;
    if (rep.failures.size() < 32) rep.failures.push_back(msg + " (deviation " + std::to_string(dev) + ")");
  };

  std::vector<MUBasis> bases;
  bases.reserve(fams.size());
  for (const auto& f : fams) bases.push_back(extract_basis(f, 1e-8));

  for (const auto& f : fams) {
    if (f.d != d) throw std::invalid_argument("check_mub: families of mixed dimension");
    DenseMatrix sum = DenseMatrix::Zero(d, d);
    for (size_t r = 0; r < f.projections.size(); ++r) {
      sum += f.projections[r];
      for (size_t s = 0; s < f.projections.size(); ++s) {
        double expect = (r == s) ? 1.0 : 0.0;
        double dev = std::abs(product_trace(f.projections[r], f.projections[s]) - expect);
        rep.worst_within = std::max(rep.worst_within, dev);
        if (dev >= tol)
          fail(dev, "family " + f.label.str() + ": Tr(P(" + std::to_string(r) + ")P(" + std::to_string(s) +
                        ")) off from " + std::to_string(expect));
      }
    }
    double dev = (sum - DenseMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    rep.worst_completeness = std::max(rep.worst_completeness, dev);
    if (dev >= tol) fail(dev, "family " + f.label.str() + ": projections do not sum to the identity");
  }

  for (size_t f1 = 0; f1 < fams.size(); ++f1)
    for (size_t f2 = f1 + 1; f2 < fams.size(); ++f2) {
      for (const auto& P : fams[f1].projections)
        for (const auto& Q : fams[f2].projections) {
          double dev = std::abs(product_trace(P, Q) - std::complex<double>(inv_d, 0));
          rep.worst_cross = std::max(rep.worst_cross, dev);
          if (dev >= tol)
            fail(dev, "families " + fams[f1].label.str() + "," + fams[f2].label.str() + ": Tr(PP') off from 1/d");
        }
      for (const auto& v : bases[f1].vectors)
        for (const auto& w : bases[f2].vectors) {
          double ip2 = std::norm(v.dot(w));
          double dev = std::abs(ip2 - inv_d);
          rep.worst_vec_cross = std::max(rep.worst_vec_cross, dev);
          if (dev >= tol)
            fail(dev, "bases " + fams[f1].label.str() + "," + fams[f2].label.str() + ": |<v,w>|^2 off from 1/d");
        }
    }

  for (size_t f = 0; f < bases.size(); ++f)
    for (size_t r = 0; r < bases[f].vectors.size(); ++r)
      for (size_t s = 0; s < bases[f].vectors.size(); ++s) {
        std::complex<double> expect = (r == s) ? 1.0 : 0.0;
        double dev = std::abs(bases[f].vectors[r].dot(bases[f].vectors[s]) - expect);
        rep.worst_vec_within = std::max(rep.worst_vec_within, dev);
        if (dev >= tol) fail(dev, "basis " + fams[f].label.str() + ": vectors not orthonormal");
      }

  return rep;
}

}  // namespace mub
