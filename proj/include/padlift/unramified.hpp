#ifndef PADLIFT_UNRAMIFIED_HPP
#define PADLIFT_UNRAMIFIED_HPP

#include <memory>
#include <vector>

#include "padlift/padic.hpp"

namespace padlift {

/// Truncated unramified ring W_N(F_q), q = p^f, realized as
/// (Z/p^N)[z] / (modulus) for a monic lift of an irreducible polynomial.
/// Elements are coordinate vectors w.r.t. the power basis of the modulus.
/// The basis choice is a convention; Conway compatibility is not promised.
class UnramifiedContext {
public:
  UnramifiedContext(long p, long f, long precision, IntPolynomial modulus);

  /// Context with the smallest monic irreducible lift found by search
  /// (z^2+z+1 for F_4, z^2+1 for F_9, ...). f = 1 uses modulus z.
  static std::shared_ptr<const UnramifiedContext> make(long p, long f,
                                                       long precision);
  static std::shared_ptr<const UnramifiedContext>
  make(long p, long f, long precision, IntPolynomial modulus);

  long p() const { return p_; }
  long f() const { return f_; }
  long precision() const { return prec_; }
  const IntPolynomial& modulus() const { return modulus_; }
  const BigInt& p_pow_prec() const { return p_pow_prec_; }
  BigInt q() const { return pow_int(p_, f_); }

private:
  long p_, f_, prec_;
  IntPolynomial modulus_;
  BigInt p_pow_prec_;
};

using ContextPtr = std::shared_ptr<const UnramifiedContext>;

/// Element of O_K / p^N as a coefficient vector, each entry canonical
/// in [0, p^N). Immutable value type.
class OkElement {
public:
  OkElement(ContextPtr ctx, std::vector<BigInt> coeffs);

  static OkElement zero(ContextPtr ctx);
  static OkElement one(ContextPtr ctx);
  static OkElement from_int(ContextPtr ctx, const BigInt& n);
  static OkElement generator(ContextPtr ctx); // the class of z

  const ContextPtr& context() const { return ctx_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// min over coordinates of v_p; AtLeast(N) when zero at precision N.
  Valuation val() const;

  OkElement add(const OkElement& o) const;
  OkElement sub(const OkElement& o) const;
  OkElement mul(const OkElement& o) const;
  OkElement neg() const;
  OkElement pow(const BigInt& e) const;
  /// Inverse of a unit (reduction mod p nonzero); Error(NonUnit) otherwise.
  OkElement inverse() const;

  OkElement mul_scalar(const BigInt& s) const;

  /// Coordinatewise reduction mod p^M; a ring map onto the depth-M ring.
  OkElement truncate(long M) const;
  /// Reduction to the residue field (depth 1).
  OkElement reduce_mod_p() const;

  bool operator==(const OkElement& o) const;
  bool operator!=(const OkElement& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  ContextPtr ctx_;
  std::vector<BigInt> coeffs_;
};

/// Evaluate an integer-coefficient polynomial at an O_K element.
OkElement eval_poly(const IntPolynomial& P, const OkElement& x);

/// The unique lift xi of a depth-1 element with xi^q = xi, at precision
/// targetN (fixed point of z -> z^q; the post-check is certified).
OkElement teichmuller(const OkElement& xbar, long targetN);

/// The ring automorphism lifting z -> z^p on the residue field; an isometry.
OkElement frobenius(const OkElement& x);

/// Frobenius on the residue field (depth 1): x -> x^p.
OkElement residue_frobenius(const OkElement& xbar);

/// Teichmueller digits of x at depth N: x = sum Teich(d_i) p^i, d_i in F_q
/// (returned at depth 1). Requires precision(x) >= N.
std::vector<OkElement> teichmuller_digits(const OkElement& x, long N);

/// Checks the shift-register identity for multiplication by p in Witt
/// coordinates: coords(p z) at depth N+1 equal (0, c_0^p, ..., c_{N-1}^p)
/// where c_i = d_i^{p^i} are the Witt coordinates of z at depth N.
/// Requires precision of z's context >= N+1.
bool verschiebung_shift_check(const OkElement& z, long N);

/// Depth-N cylinder: the fiber of truncation over a residue.
struct WittCylinder {
  long depth;
  OkElement residue;
};

/// All q^N cylinders at depth N; pairwise disjoint and exhaustive.
std::vector<WittCylinder> witt_cylinder_partition(const ContextPtr& ctx, long N,
                                                  long size_limit = 1000000);

/// All residue-field elements (depth 1), in base-p coordinate order.
std::vector<OkElement> residue_field_elements(const ContextPtr& ctx);

/// Index of a depth-1 element in residue_field_elements order.
long residue_index(const OkElement& xbar);

} // namespace padlift

#endif
