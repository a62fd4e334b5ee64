#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mub {

long mod(long long a, long m);
long inv_mod(long a, long m);
bool is_prime(long p);

/// Polynomial over Z_p, coefficients stored from the constant term up:
/// coeffs[k] multiplies x^k. Field-defining polynomials are monic.
struct ZpPolynomial {
  long p = 0;
  std::vector<long> coeffs;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  long eval(long x) const;
  std::string str() const;
  bool operator==(const ZpPolynomial&) const = default;
};

/// Trial division by every monic polynomial of degree <= deg(f)/2.
bool is_irreducible(const ZpPolynomial& f);

/// Smallest monic irreducible polynomial of degree n over Z_p, where
/// "smallest" reads the coefficient tuple (c_{n-1},...,c_0) as a base-p
/// integer. Polynomials divisible by x are excluded, so the n = 1 result is
/// x + 1 rather than x.
ZpPolynomial find_irreducible(long p, long n);

/// Smallest D in [2,p) with no solution of k^2 = D mod p. p must be an odd
/// prime.
long quadratic_nonresidue(long p);

class FieldContext;
using FieldRef = std::shared_ptr<const FieldContext>;

/// Element of GF(p^n) as a coefficient vector in the power basis
/// {1, lambda, ..., lambda^{n-1}}. Carries a handle to its field; operations
/// mixing fields throw rather than coerce.
class GFElement {
 public:
  const std::vector<long>& coeffs() const { return c_; }
  long p() const;
  long n() const { return static_cast<long>(c_.size()); }
  const FieldContext& field() const { return *ctx_; }
  FieldRef context() const { return ctx_; }

  bool is_zero() const;
  bool is_one() const;
  /// Base-p encoding a0 + a1 p + ... + a_{n-1} p^{n-1}.
  long index() const;
  std::string str() const;

  GFElement pow(long long e) const;
  GFElement inverse() const;

  friend GFElement operator+(const GFElement& a, const GFElement& b);
  friend GFElement operator-(const GFElement& a, const GFElement& b);
  friend GFElement operator-(const GFElement& a);
  friend GFElement operator*(const GFElement& a, const GFElement& b);
  friend GFElement operator*(long c, const GFElement& a);
  friend bool operator==(const GFElement& a, const GFElement& b);
  friend bool operator!=(const GFElement& a, const GFElement& b);

 private:
  friend class FieldContext;
  GFElement(FieldRef ctx, std::vector<long> c);

  FieldRef ctx_;
  std::vector<long> c_;
};

/// Immutable description of GF(p^n): the defining polynomial, its Frobenius
/// roots, the quotient coefficients d_k of f(x)/(x - lambda), and the dual
/// basis g_j with Tr(g_j lambda^k) = delta(j,k). Construction validates the
/// polynomial and precomputes everything; instances are safe to share across
/// threads.
class FieldContext : public std::enable_shared_from_this<FieldContext> {
 public:
  static FieldRef create(long p, long n);
  static FieldRef create(ZpPolynomial f);

  long p() const { return p_; }
  long n() const { return n_; }
  long order() const { return order_; }  // p^n
  const ZpPolynomial& poly() const { return f_; }

  GFElement zero() const;
  GFElement one() const;
  GFElement lambda() const;
  GFElement element(std::vector<long> coeffs) const;
  GFElement from_index(long idx) const;
  GFElement from_int(long v) const;  // embeds a Z_p value as a constant

  /// The n roots {lambda^(p^t)}, each verified to satisfy f(root) = 0.
  std::vector<GFElement> roots() const;
  /// d_0..d_{n-1} with f(x)/(x - lambda) = d_0 + d_1 x + ... + d_{n-1} x^{n-1}.
  std::vector<GFElement> quotient_coeffs() const;
  /// g_j = d_j / f'(lambda).
  std::vector<GFElement> dual_basis() const;
  GFElement dprime_inv() const;
  std::optional<long> nonresidue() const { return nonresidue_; }

 private:
  explicit FieldContext(ZpPolynomial f);
  GFElement wrap(std::vector<long> raw) const;

  long p_, n_, order_;
  ZpPolynomial f_;
  std::vector<long> lambda_;
  std::vector<std::vector<long>> root_coeffs_;
  std::vector<std::vector<long>> dk_coeffs_;
  std::vector<std::vector<long>> gj_coeffs_;
  std::vector<long> dprime_inv_coeffs_;
  std::optional<long> nonresidue_;
};

/// Field trace Tr(a) = sum over conjugate roots of a's coefficient polynomial;
/// always lands in Z_p.
long trace(const GFElement& a);

/// Evaluate a Z_p polynomial at a field element (coefficients embedded as
/// constants).
GFElement eval(const ZpPolynomial& f, const GFElement& x);

}  // namespace mub
