#include "mub/galois.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mub {

long mod(long long a, long m) {
  long r = static_cast<long>(a % m);
  return r < 0 ? r + m : r;
}

long inv_mod(long a, long m) {
  a = mod(a, m);
  if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
  // extended Euclid
  long old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(old_s, m);
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

long ZpPolynomial::eval(long x) const {
  long acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = mod(static_cast<long long>(acc) * x + *it, p);
  return acc;
}

std::string ZpPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    long c = coeffs[k];
    if (c == 0 && degree() > 0) continue;
    if (!first) os << " + ";
    if (k == 0 || c != 1) os << c;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

namespace {

// Remainder of a mod b over Z_p; b need not be monic.
std::vector<long> poly_rem(long p, std::vector<long> a, const std::vector<long>& b) {
  long db = static_cast<long>(b.size()) - 1;
  while (db > 0 && b[db] == 0) --db;
  long lead_inv = inv_mod(b[db], p);
  for (long da = static_cast<long>(a.size()) - 1; da >= db; --da) {
    if (a[da] == 0) continue;
    long q = mod(static_cast<long long>(a[da]) * lead_inv, p);
    for (long k = 0; k <= db; ++k)
      a[da - db + k] = mod(a[da - db + k] - static_cast<long long>(q) * b[k], p);
  }
  a.resize(std::max<long>(db, 1));
  return a;
}

bool poly_is_zero(const std::vector<long>& a) {
  return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

// ---- raw GF(p^n) arithmetic on length-n coefficient vectors ----

std::vector<long> raw_add(long p, const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = mod(a[k] + b[k], p);
  return r;
}

std::vector<long> raw_neg(long p, const std::vector<long>& a) {
  std::vector<long> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = mod(-a[k], p);
  return r;
}

// Reduce an arbitrary-degree coefficient vector by lambda^n = -(c_0 + ... +
// c_{n-1} lambda^{n-1}).
std::vector<long> raw_reduce(long p, const std::vector<long>& f, std::vector<long> a) {
  long n = static_cast<long>(f.size()) - 1;
  for (long deg = static_cast<long>(a.size()) - 1; deg >= n; --deg) {
    long t = a[deg];
    if (t == 0) continue;
    a[deg] = 0;
    for (long k = 0; k < n; ++k)
      a[deg - n + k] = mod(a[deg - n + k] - static_cast<long long>(t) * f[k], p);
  }
  a.resize(n);
  return a;
}

std::vector<long> raw_mul(long p, const std::vector<long>& f, const std::vector<long>& a,
                          const std::vector<long>& b) {
  std::vector<long> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = mod(prod[i + j] + static_cast<long long>(a[i]) * b[j], p);
  }
  return raw_reduce(p, f, prod);
}

std::vector<long> raw_pow(long p, const std::vector<long>& f, std::vector<long> a, long long e) {
  long n = static_cast<long>(f.size()) - 1;
  std::vector<long> r(n, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = raw_mul(p, f, r, a);
    a = raw_mul(p, f, a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_irreducible(const ZpPolynomial& f) {
  long n = f.degree();
  if (n < 1) return false;
  if (f.coeffs[n] == 0) return false;
  for (long m = 1; 2 * m <= n; ++m) {
    // all monic divisor candidates of degree m
    long count = 1;
    for (long i = 0; i < m; ++i) count *= f.p;
    for (long enc = 0; enc < count; ++enc) {
      std::vector<long> g(m + 1, 0);
      long v = enc;
      for (long i = 0; i < m; ++i) {
        g[i] = v % f.p;
        v /= f.p;
      }
      g[m] = 1;
      if (poly_is_zero(poly_rem(f.p, f.coeffs, g))) return false;
    }
  }
  return true;
}

ZpPolynomial find_irreducible(long p, long n) {
  if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p = " + std::to_string(p) + " is not prime");
  if (n < 1 || n > 6) throw std::invalid_argument("find_irreducible: degree must be in [1,6]");
  long count = 1;
  for (long i = 0; i < n; ++i) count *= p;
  for (long enc = 0; enc < count; ++enc) {
    // enc reads the tuple (c_{n-1},...,c_0) as a base-p integer, so c_0 is
    // its least significant digit
    std::vector<long> c(n + 1, 0);
    long v = enc;
    for (long i = 0; i < n; ++i) {
      c[i] = v % p;
      v /= p;
    }
    c[n] = 1;
    if (c[0] == 0) continue;
    ZpPolynomial f{p, c};
    if (is_irreducible(f)) return f;
  }
  throw std::runtime_error("find_irreducible: no candidate found");
}

long quadratic_nonresidue(long p) {
  if (p == 2) throw std::invalid_argument("quadratic_nonresidue: p = 2 has no nonresidue");
  if (!is_prime(p)) throw std::invalid_argument("quadratic_nonresidue: p must be an odd prime");
  std::set<long> squares;
  for (long k = 0; k < p; ++k) squares.insert(mod(static_cast<long long>(k) * k, p));
  for (long D = 2; D < p; ++D)
    if (!squares.count(D)) return D;
  throw std::runtime_error("quadratic_nonresidue: unreachable");
}

// ---- GFElement ----

GFElement::GFElement(FieldRef ctx, std::vector<long> c) : ctx_(std::move(ctx)), c_(std::move(c)) {}

long GFElement::p() const { return ctx_->p(); }

bool GFElement::is_zero() const { return poly_is_zero(c_); }

bool GFElement::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](long c) { return c == 0; });
}

long GFElement::index() const {
  long idx = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) idx = idx * ctx_->p() + *it;
  return idx;
}

std::string GFElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << "+";
    if (k == 0 || c_[k] != 1) os << c_[k];
    if (k == 1) os << "L";
    if (k >= 2) os << "L^" << k;
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {
void check_same_field(const GFElement& a, const GFElement& b) {
  if (a.context().get() != b.context().get())
    throw std::invalid_argument("GFElement: operands belong to different field contexts");
}
}  // namespace

GFElement operator+(const GFElement& a, const GFElement& b) {
  check_same_field(a, b);
  return GFElement(a.ctx_, raw_add(a.p(), a.c_, b.c_));
}

GFElement operator-(const GFElement& a, const GFElement& b) {
  check_same_field(a, b);
  return GFElement(a.ctx_, raw_add(a.p(), a.c_, raw_neg(a.p(), b.c_)));
}

GFElement operator-(const GFElement& a) { return GFElement(a.ctx_, raw_neg(a.p(), a.c_)); }

GFElement operator*(const GFElement& a, const GFElement& b) {
  check_same_field(a, b);
  return GFElement(a.ctx_, raw_mul(a.p(), a.field().poly().coeffs, a.c_, b.c_));
}

GFElement operator*(long c, const GFElement& a) {
  std::vector<long> r(a.c_.size());
  for (size_t k = 0; k < r.size(); ++k) r[k] = mod(static_cast<long long>(c) * a.c_[k], a.p());
  return GFElement(a.ctx_, std::move(r));
}

bool operator==(const GFElement& a, const GFElement& b) {
  check_same_field(a, b);
  return a.c_ == b.c_;
}

bool operator!=(const GFElement& a, const GFElement& b) { return !(a == b); }

GFElement GFElement::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  return GFElement(ctx_, raw_pow(p(), field().poly().coeffs, c_, e));
}

GFElement GFElement::inverse() const {
  if (is_zero()) throw std::domain_error("GFElement: division by zero");
  long long e = ctx_->order() - 2;  // a^(p^n - 2)
  return pow(e);
}

// ---- FieldContext ----

FieldRef FieldContext::create(long p, long n) { return create(find_irreducible(p, n)); }

FieldRef FieldContext::create(ZpPolynomial f) {
  if (!is_prime(f.p)) throw std::invalid_argument("FieldContext: p = " + std::to_string(f.p) + " is not prime");
  for (auto& c : f.coeffs) c = mod(c, f.p);
  if (f.degree() < 1) throw std::invalid_argument("FieldContext: polynomial must have degree >= 1");
  if (!f.is_monic()) throw std::invalid_argument("FieldContext: polynomial " + f.str() + " is not monic");
  if (!is_irreducible(f))
    throw std::invalid_argument("FieldContext: polynomial " + f.str() + " is reducible over Z_" + std::to_string(f.p));
  return FieldRef(new FieldContext(std::move(f)));
}

FieldContext::FieldContext(ZpPolynomial f) : p_(f.p), n_(f.degree()), f_(std::move(f)) {
  order_ = 1;
  for (long i = 0; i < n_; ++i) order_ *= p_;

  lambda_ = raw_reduce(p_, f_.coeffs, {0, 1});

  // Frobenius orbit of lambda; each power is a root of f.
  root_coeffs_.push_back(lambda_);
  for (long t = 1; t < n_; ++t) root_coeffs_.push_back(raw_pow(p_, f_.coeffs, root_coeffs_.back(), p_));
  for (const auto& r : root_coeffs_) {
    // Horner evaluation of f at r
    std::vector<long> acc(n_, 0);
    for (long k = n_; k >= 0; --k) {
      acc = raw_mul(p_, f_.coeffs, acc, r);
      acc[0] = mod(acc[0] + f_.coeffs[k], p_);
    }
    if (!poly_is_zero(acc))
      throw std::invalid_argument("FieldContext: " + f_.str() + " is not satisfied by a Frobenius power");
  }
  for (size_t i = 0; i < root_coeffs_.size(); ++i)
    for (size_t j = i + 1; j < root_coeffs_.size(); ++j)
      if (root_coeffs_[i] == root_coeffs_[j])
        throw std::invalid_argument("FieldContext: repeated root, " + f_.str() + " is not separable");

  // f'(lambda) and its inverse
  std::vector<long> dcoeffs(std::max<long>(n_ - 1, 0) + 1, 0);
  for (long k = 1; k <= n_; ++k) dcoeffs[k - 1] = mod(static_cast<long long>(k) * f_.coeffs[k], p_);
  std::vector<long> fp(n_, 0);
  for (long k = static_cast<long>(dcoeffs.size()) - 1; k >= 0; --k) {
    fp = raw_mul(p_, f_.coeffs, fp, lambda_);
    fp[0] = mod(fp[0] + dcoeffs[k], p_);
  }
  if (poly_is_zero(fp)) throw std::invalid_argument("FieldContext: f'(lambda) = 0, repeated-root polynomial");
  dprime_inv_coeffs_ = raw_pow(p_, f_.coeffs, fp, order_ - 2);

  // d_{n-r} = sum_{j<r} lambda^j c_{n+j+1-r}, with c_n = 1
  dk_coeffs_.assign(n_, std::vector<long>(n_, 0));
  for (long r = 1; r <= n_; ++r) {
    std::vector<long> acc(n_, 0);
    std::vector<long> lam_j(n_, 0);
    lam_j[0] = 1;
    for (long j = 0; j <= r - 1; ++j) {
      long c = f_.coeffs[n_ + j + 1 - r];
      for (long k = 0; k < n_; ++k) acc[k] = mod(acc[k] + static_cast<long long>(c) * lam_j[k], p_);
      lam_j = raw_mul(p_, f_.coeffs, lam_j, lambda_);
    }
    dk_coeffs_[n_ - r] = acc;
  }

  gj_coeffs_.reserve(n_);
  for (long j = 0; j < n_; ++j) gj_coeffs_.push_back(raw_mul(p_, f_.coeffs, dk_coeffs_[j], dprime_inv_coeffs_));

  if (p_ % 2 == 1 && n_ == 2) nonresidue_ = quadratic_nonresidue(p_);
}

GFElement FieldContext::wrap(std::vector<long> raw) const {
  return GFElement(shared_from_this(), std::move(raw));
}

GFElement FieldContext::zero() const { return wrap(std::vector<long>(n_, 0)); }

GFElement FieldContext::one() const { return from_int(1); }

GFElement FieldContext::lambda() const { return wrap(lambda_); }

GFElement FieldContext::element(std::vector<long> coeffs) const {
  if (static_cast<long>(coeffs.size()) != n_)
    throw std::invalid_argument("FieldContext::element: expected " + std::to_string(n_) + " coefficients");
  for (auto& c : coeffs) c = mod(c, p_);
  return wrap(std::move(coeffs));
}

GFElement FieldContext::from_index(long idx) const {
  if (idx < 0 || idx >= order_) throw std::invalid_argument("FieldContext::from_index: out of range");
  std::vector<long> c(n_, 0);
  for (long k = 0; k < n_; ++k) {
    c[k] = idx % p_;
    idx /= p_;
  }
  return wrap(std::move(c));
}

GFElement FieldContext::from_int(long v) const {
  std::vector<long> c(n_, 0);
  c[0] = mod(v, p_);
  return wrap(std::move(c));
}

std::vector<GFElement> FieldContext::roots() const {
  std::vector<GFElement> out;
  out.reserve(n_);
  for (const auto& r : root_coeffs_) out.push_back(wrap(r));
  return out;
}

std::vector<GFElement> FieldContext::quotient_coeffs() const {
  std::vector<GFElement> out;
  out.reserve(n_);
  for (const auto& d : dk_coeffs_) out.push_back(wrap(d));
  return out;
}

std::vector<GFElement> FieldContext::dual_basis() const {
  std::vector<GFElement> out;
  out.reserve(n_);
  for (const auto& g : gj_coeffs_) out.push_back(wrap(g));
  return out;
}

GFElement FieldContext::dprime_inv() const { return wrap(dprime_inv_coeffs_); }

long trace(const GFElement& a) {
  const FieldContext& F = a.field();
  GFElement sum = F.zero();
  for (const auto& root : F.roots()) {
    GFElement acc = F.zero();
    const auto& c = a.coeffs();
    for (long k = F.n() - 1; k >= 0; --k) acc = acc * root + F.from_int(c[k]);
    sum = sum + acc;
  }
  for (long k = 1; k < F.n(); ++k)
    if (sum.coeffs()[k] != 0) throw std::logic_error("trace: result not in the base field");
  return sum.coeffs()[0];
}

GFElement eval(const ZpPolynomial& f, const GFElement& x) {
  const FieldContext& F = x.field();
  GFElement acc = F.zero();
  for (long k = f.degree(); k >= 0; --k) acc = acc * x + F.from_int(f.coeffs[k]);
  return acc;
}

}  // namespace mub
