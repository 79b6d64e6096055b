#ifndef PADLIFT_PADIC_HPP
#define PADLIFT_PADIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "padlift/errors.hpp"

namespace padlift {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

bool is_prime(long p);

BigInt pow_int(long base, long exp);

/// p-adic valuation of an exact integer or rational.
///
/// Three kinds are distinguished: a finite exponent, the exact zero
/// (PlusInfinity), and AtLeast(N) for a residue that is zero at working
/// precision N. The last one exists so that dominance and exactness
/// checks never mistake a truncated zero for an exact one.
struct Valuation {
  enum class Kind { Finite, AtLeast, PlusInfinity };

  Kind kind = Kind::PlusInfinity;
  long v = 0; // finite value, or the bound N for AtLeast

  static Valuation finite(long n) { return {Kind::Finite, n}; }
  static Valuation at_least(long n) { return {Kind::AtLeast, n}; }
  static Valuation plus_infinity() { return {Kind::PlusInfinity, 0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_at_least() const { return kind == Kind::AtLeast; }
  bool is_infinite() const { return kind == Kind::PlusInfinity; }

  bool operator==(const Valuation& o) const {
    return kind == o.kind && (kind == Kind::PlusInfinity || v == o.v);
  }

  /// Certified lower bound on the valuation (the exact value when Finite).
  long lower_bound(long cap) const {
    switch (kind) {
    case Kind::Finite: return v;
    case Kind::AtLeast: return v;
    default: return cap;
    }
  }

  std::string to_string() const;
};

Valuation valuation(const BigInt& z, long p);
Valuation valuation(const BigRat& z, long p);

/// Magnitude p^{-e} as the integer exponent e, or +infinity for zero.
/// Closed under min (max of magnitudes), max, and addition (products).
struct NormExponent {
  bool infinite = true;
  long e = 0;

  static NormExponent zero() { return {true, 0}; } // the zero magnitude
  static NormExponent of(long exp) { return {false, exp}; }

  bool operator==(const NormExponent& o) const {
    return infinite == o.infinite && (infinite || e == o.e);
  }

  // Magnitude comparison: larger magnitude = smaller exponent.
  bool magnitude_lt(const NormExponent& o) const {
    if (infinite) return !o.infinite;
    if (o.infinite) return false;
    return e > o.e;
  }

  NormExponent operator+(const NormExponent& o) const {
    if (infinite || o.infinite) return zero();
    return of(e + o.e);
  }

  std::string to_string() const;
};

/// max(|a|,|b|) as exponents
NormExponent norm_max(const NormExponent& a, const NormExponent& b);

/// Truncated p-adic integer: canonical residue in [0, p^N).
class PadicInt {
public:
  PadicInt(long p, long precision, const BigInt& value);

  long prime() const { return p_; }
  long precision() const { return prec_; }
  const BigInt& value() const { return value_; }
  const BigInt& modulus() const { return modulus_; }

  Valuation val() const;

  PadicInt add(const PadicInt& o) const;
  PadicInt sub(const PadicInt& o) const;
  PadicInt mul(const PadicInt& o) const;
  /// Inverse of a unit; throws Error(NonUnit) carrying the valuation text.
  PadicInt inverse() const;

  PadicInt truncate(long new_precision) const;

  bool operator==(const PadicInt& o) const {
    return p_ == o.p_ && prec_ == o.prec_ && value_ == o.value_;
  }

private:
  PadicInt common(const PadicInt& o, const BigInt& raw) const;

  long p_;
  long prec_;
  BigInt value_;
  BigInt modulus_; // p^prec
};

/// Modular inverse of a unit u modulo m (m a prime power); throws on non-unit.
BigInt mod_inverse(const BigInt& u, const BigInt& m);

/// Closed ball B(center, p^{-radius_exp}) in Z_p. Radii are never floats.
struct Ball {
  long p = 2;
  BigInt center;
  long radius_exp = 0;

  BigInt depth_modulus() const { return pow_int(p, radius_exp); }
  std::string to_string() const;
};

enum class NestingRelation { Disjoint, FirstInsideSecond, SecondInsideFirst, Equal };

std::string to_string(NestingRelation r);

NestingRelation ball_nesting(const Ball& b1, const Ball& b2);

/// B(c, p^{-n}) == B(c2, p^{-n})  iff  v_p(c - c2) >= n.
bool ball_equal(const BigInt& c, const BigInt& c2, long radius_exp, long p);

/// Image of b under z -> beta + u (z - alpha); exact for u != 0.
Ball affine_image(const BigInt& u, const BigInt& alpha, const BigInt& beta,
                  const Ball& b);

/// Polynomial with exact arbitrary-precision integer coefficients,
/// constant term first. Coefficient valuations are therefore exact.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial identity(); // z

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return (long)coeffs_.size() - 1; } // -1 for zero

  const BigInt coeff(size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
  }

  BigInt eval(const BigInt& z) const;
  BigInt eval_mod(const BigInt& z, const BigInt& m) const;

  IntPolynomial derivative() const;
  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;

  bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const;

private:
  std::vector<BigInt> coeffs_;
};

/// Polynomial over exact rationals; produced by interpolation and by
/// conjugation with affine isometries (denominators are p-units there).
class RatPolynomial {
public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<BigRat> coeffs);
  RatPolynomial(const IntPolynomial& f); // NOLINT: deliberate widening

  const std::vector<BigRat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return (long)coeffs_.size() - 1; }

  const BigRat coeff(size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : BigRat(0);
  }

  BigRat eval(const BigRat& z) const;

  RatPolynomial derivative() const;
  RatPolynomial operator+(const RatPolynomial& o) const;
  RatPolynomial operator-(const RatPolynomial& o) const;
  RatPolynomial operator*(const RatPolynomial& o) const;

  /// All coefficients p-integral (no p in any denominator)?
  bool is_p_integral(long p) const;
  /// Exact IntPolynomial if all coefficients are integers.
  std::optional<IntPolynomial> as_integer() const;

  std::string to_string() const;

private:
  std::vector<BigRat> coeffs_;
};

/// Taylor coefficients of f at a: returns c with f(z) = sum c_k (z-a)^k.
IntPolynomial recenter(const IntPolynomial& f, const BigInt& a);
RatPolynomial recenter(const RatPolynomial& f, const BigRat& a);

/// Certified Gauss norm bound on the ball: exponent min_k (v(c_k) + k n)
/// for the coefficients recentered at the ball's center. An upper bound
/// for the point-sup over the valuation ring; equality is never asserted.
NormExponent gauss_norm_on_ball(const IntPolynomial& f, const Ball& b);
NormExponent gauss_norm_on_ball(const RatPolynomial& f, const Ball& b);

/// Per-index bounds |c_k(f) - c_k(g)| r^k from the recentered difference.
std::vector<NormExponent> coefficient_stability_gap(const IntPolynomial& f,
                                                    const IntPolynomial& g,
                                                    const Ball& b);

} // namespace padlift

#endif
