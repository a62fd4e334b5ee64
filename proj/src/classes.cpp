#include "mub/classes.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mub {

std::string ClassLabel::str() const {
  if (inf) return "inf";
  std::string s;
  for (long a : digits) s += std::to_string(a);
  return s;
}

namespace {

std::string vec_key(const std::vector<long>& w) {
  std::string s;
  for (long v : w) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

bool is_zero_vec(const std::vector<long>& w) {
  return std::all_of(w.begin(), w.end(), [](long v) { return v == 0; });
}

}  // namespace

const CommutingClass& MubFamily::at(const ClassLabel& label) const {
  for (const auto& c : classes)
    if (c.label == label) return c;
  throw std::invalid_argument("MubFamily: no class labeled " + label.str());
}

const ClassLabel& MubFamily::label_of(const std::vector<long>& w) const {
  if (is_zero_vec(w)) throw std::invalid_argument("MubFamily::label_of: zero vector lies in every class");
  auto it = lookup_.find(vec_key(w));
  if (it == lookup_.end()) throw std::invalid_argument("MubFamily::label_of: vector not in any class");
  return classes[it->second].label;
}

void MubFamily::build_lookup() {
  lookup_.clear();
  for (size_t i = 0; i < classes.size(); ++i)
    for (const auto& m : classes[i].members)
      if (!is_zero_vec(m)) lookup_.emplace(vec_key(m), i);
}

long symplectic2(long j, long k, long j2, long k2, long m) {
  return mod(static_cast<long long>(k) * j2 - static_cast<long long>(j) * k2, m);
}

long symplectic2(const SpinIndex& u, const SpinIndex& v) {
  if (u.d != v.d) throw std::invalid_argument("symplectic2: dimension mismatch");
  return symplectic2(u.j, u.k, v.j, v.k, u.d);
}

GFElement symplectic_gf(const GFElement& a, const GFElement& b, const GFElement& a2, const GFElement& b2) {
  return b * a2 - a * b2;
}

long symplectic2n(const TensorSpinIndex& w1, const TensorSpinIndex& w2) {
  if (w1.p != w2.p || w1.n != w2.n) throw std::invalid_argument("symplectic2n: shape mismatch");
  long acc = 0;
  for (long s = 0; s < w1.n; ++s) acc = mod(acc + symplectic2(w1.pairs[s], w2.pairs[s]), w1.p);
  return acc;
}

long symplectic2n(long p, const std::vector<long>& w1, const std::vector<long>& w2) {
  if (w1.size() != w2.size() || w1.size() % 2 != 0) throw std::invalid_argument("symplectic2n: shape mismatch");
  long acc = 0;
  for (size_t s = 0; s + 1 < w1.size(); s += 2)
    acc = mod(acc + symplectic2(w1[s], w1[s + 1], w2[s], w2[s + 1], p), p);
  return acc;
}

std::vector<long> m_map(const GFElement& a, const GFElement& b) {
  const FieldContext& F = a.field();
  if (b.context().get() != &F) throw std::invalid_argument("m_map: components from different fields");
  std::vector<long> w(2 * F.n());
  GFElement lam_j = F.one();
  for (long j = 0; j < F.n(); ++j) {
    w[2 * j] = trace(a * lam_j);
    w[2 * j + 1] = b.coeffs()[j];
    lam_j = lam_j * F.lambda();
  }
  return w;
}

MubFamily classes_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("classes_prime: " + std::to_string(p) + " is not prime");
  MubFamily fam;
  fam.p = p;
  fam.n = 1;
  fam.d = p;
  fam.ctx = FieldContext::create(p, 1);
  for (long a = 0; a < p; ++a) {
    CommutingClass cls;
    cls.p = p;
    cls.n = 1;
    cls.label = ClassLabel::of({a});
    cls.generators = {TensorSpinIndex::from_flat(p, {1, a})};
    for (long b = 0; b < p; ++b) cls.members.push_back({b, mod(static_cast<long long>(b) * a, p)});
    fam.classes.push_back(std::move(cls));
  }
  CommutingClass inf;
  inf.p = p;
  inf.n = 1;
  inf.label = ClassLabel::infinity();
  inf.generators = {TensorSpinIndex::from_flat(p, {0, 1})};
  for (long b = 0; b < p; ++b) inf.members.push_back({0, b});
  fam.classes.push_back(std::move(inf));
  fam.build_lookup();
  return fam;
}

MubFamily classes_prime_squared(long p, long D) {
  if (p == 2) throw std::invalid_argument("classes_prime_squared: requires an odd prime");
  if (!is_prime(p)) throw std::invalid_argument("classes_prime_squared: " + std::to_string(p) + " is not prime");
  D = mod(D, p);
  for (long k = 0; k < p; ++k)
    if (mod(static_cast<long long>(k) * k, p) == D)
      throw std::invalid_argument("classes_prime_squared: D = " + std::to_string(D) + " is a quadratic residue mod " +
                                  std::to_string(p));

  MubFamily fam;
  fam.p = p;
  fam.n = 2;
  fam.d = p * p;
  fam.nonresidue = D;
  fam.ctx = FieldContext::create(ZpPolynomial{p, {mod(-D, p), 0, 1}});  // x^2 - D

  // labels enumerate with a0 fastest, matching field index order
  for (long idx = 0; idx < p * p; ++idx) {
    long a0 = idx % p, a1 = idx / p;
    CommutingClass cls;
    cls.p = p;
    cls.n = 2;
    cls.label = ClassLabel::of({a0, a1});
    cls.generators = {TensorSpinIndex::from_flat(p, {2, a0, 0, a1}),
                      TensorSpinIndex::from_flat(p, {0, mod(static_cast<long long>(a1) * D, p), mod(2 * D, p), a0})};
    for (long bidx = 0; bidx < p * p; ++bidx) {
      long b0 = bidx % p, b1 = bidx / p;
      cls.members.push_back({mod(2 * b0, p), mod(static_cast<long long>(a0) * b0 + static_cast<long long>(a1) * b1 * D, p),
                             mod(2LL * b1 * D, p), mod(static_cast<long long>(a0) * b1 + static_cast<long long>(a1) * b0, p)});
    }
    fam.classes.push_back(std::move(cls));
  }

  CommutingClass inf;
  inf.p = p;
  inf.n = 2;
  inf.label = ClassLabel::infinity();
  inf.generators = {TensorSpinIndex::from_flat(p, {0, 1, 0, 0}), TensorSpinIndex::from_flat(p, {0, 0, 0, 1})};
  for (long bidx = 0; bidx < p * p; ++bidx) inf.members.push_back({0, bidx % p, 0, bidx / p});
  fam.classes.push_back(std::move(inf));
  fam.build_lookup();
  return fam;
}

MubFamily classes_general(FieldRef ctx) {
  if (!ctx) throw std::invalid_argument("classes_general: null field context");
  const FieldContext& F = *ctx;
  long p = F.p(), n = F.n(), d = F.order();

  MubFamily fam;
  fam.p = p;
  fam.n = n;
  fam.d = d;
  fam.ctx = ctx;
  fam.nonresidue = F.nonresidue();

  const auto g = F.dual_basis();

  for (long ai = 0; ai < d; ++ai) {
    GFElement alpha = F.from_index(ai);
    CommutingClass cls;
    cls.p = p;
    cls.n = n;
    cls.label = ClassLabel::of(alpha.coeffs());
    for (long j = 0; j < n; ++j) cls.generators.push_back(TensorSpinIndex::from_flat(p, m_map(g[j], g[j] * alpha)));
    for (long bi = 0; bi < d; ++bi) {
      GFElement beta = F.from_index(bi);
      cls.members.push_back(m_map(beta, beta * alpha));
    }
    fam.classes.push_back(std::move(cls));
  }

  CommutingClass inf;
  inf.p = p;
  inf.n = n;
  inf.label = ClassLabel::infinity();
  for (long j = 0; j < n; ++j) {
    std::vector<long> w(2 * n, 0);
    w[2 * j + 1] = 1;
    inf.generators.push_back(TensorSpinIndex::from_flat(p, w));
  }
  for (long bi = 0; bi < d; ++bi) {
    GFElement beta = F.from_index(bi);
    inf.members.push_back(m_map(F.zero(), beta));
  }
  fam.classes.push_back(std::move(inf));
  fam.build_lookup();
  return fam;
}

PartitionCheck verify_partition(const MubFamily& fam) {
  PartitionCheck rep;
  rep.n_classes = static_cast<long>(fam.classes.size());
  rep.members_per_class = fam.d;
  auto fail = [&rep](const std::string& msg) {
    rep.pass = false;
    if (rep.failures.size() < 32) rep.failures.push_back(msg);
  };

  if (rep.n_classes != fam.d + 1)
    fail("expected " + std::to_string(fam.d + 1) + " classes, found " + std::to_string(rep.n_classes));

  std::set<std::string> seen;
  long nonzero = 0;
  for (const auto& cls : fam.classes) {
    if (static_cast<long>(cls.members.size()) != fam.d)
      fail("class " + cls.label.str() + ": expected " + std::to_string(fam.d) + " members, found " +
           std::to_string(cls.members.size()));
    std::set<std::vector<long>> distinct(cls.members.begin(), cls.members.end());
    if (distinct.size() != cls.members.size()) fail("class " + cls.label.str() + ": duplicated member vector");
    if (!distinct.count(std::vector<long>(2 * fam.n, 0)))
      fail("class " + cls.label.str() + ": missing the zero vector");
    for (const auto& m : cls.members) {
      if (is_zero_vec(m)) continue;
      // pairwise intersection check: every nonzero vector in exactly one class
      if (!seen.insert(vec_key(m)).second)
        fail("vector " + vec_key(m) + " appears in more than one class (last: " + cls.label.str() + ")");
      ++nonzero;
    }
    for (size_t i = 0; i < cls.members.size(); ++i)
      for (size_t j = i + 1; j < cls.members.size(); ++j)
        if (symplectic2n(fam.p, cls.members[i], cls.members[j]) != 0) {
          fail("class " + cls.label.str() + ": members " + vec_key(cls.members[i]) + " and " +
               vec_key(cls.members[j]) + " have nonzero symplectic product");
          break;
        }
  }
  rep.nonzero_covered = static_cast<long>(seen.size());
  long expected = fam.d * fam.d - 1;
  if (rep.nonzero_covered != expected)
    fail("nonzero vectors covered: " + std::to_string(rep.nonzero_covered) + " of " + std::to_string(expected));
  return rep;
}

}  // namespace mub
