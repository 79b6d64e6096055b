#include "padlift/padic.hpp"

#include <sstream>

namespace padlift {

bool is_prime(long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

BigInt pow_int(long base, long exp) {
  BigInt r = 1, b = base;
  for (long e = exp; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

std::string Valuation::to_string() const {
  switch (kind) {
  case Kind::Finite: return std::to_string(v);
  case Kind::AtLeast: return ">=" + std::to_string(v);
  default: return "+inf";
  }
}

Valuation valuation(const BigInt& z, long p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "valuation: p is not prime");
  if (z == 0) return Valuation::plus_infinity();
  BigInt a = abs(z);
  long v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return Valuation::finite(v);
}

Valuation valuation(const BigRat& z, long p) {
  if (z == 0) return Valuation::plus_infinity();
  Valuation num = valuation(numerator(z), p);
  Valuation den = valuation(denominator(z), p);
  return Valuation::finite(num.v - den.v);
}

std::string NormExponent::to_string() const {
  return infinite ? "+inf" : std::to_string(e);
}

NormExponent norm_max(const NormExponent& a, const NormExponent& b) {
  if (a.infinite) return b;
  if (b.infinite) return a;
  return NormExponent::of(std::min(a.e, b.e));
}

PadicInt::PadicInt(long p, long precision, const BigInt& value)
    : p_(p), prec_(precision) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "PadicInt: p is not prime");
  if (precision < 1) fail(ErrorCode::InvalidInput, "PadicInt: precision < 1");
  modulus_ = pow_int(p, precision);
  value_ = value % modulus_;
  if (value_ < 0) value_ += modulus_;
}

Valuation PadicInt::val() const {
  if (value_ == 0) return Valuation::at_least(prec_);
  return valuation(value_, p_);
}

PadicInt PadicInt::common(const PadicInt& o, const BigInt& raw) const {
  if (p_ != o.p_) fail(ErrorCode::InvalidInput, "PadicInt: mixed primes");
  return PadicInt(p_, std::min(prec_, o.prec_), raw);
}

PadicInt PadicInt::add(const PadicInt& o) const { return common(o, value_ + o.value_); }
PadicInt PadicInt::sub(const PadicInt& o) const { return common(o, value_ - o.value_); }
PadicInt PadicInt::mul(const PadicInt& o) const { return common(o, value_ * o.value_); }

BigInt mod_inverse(const BigInt& u, const BigInt& m) {
  // extended Euclid
  BigInt a = u % m, b = m, x0 = 1, x1 = 0;
  if (a < 0) a += m;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) fail(ErrorCode::NonUnit, "mod_inverse: not a unit");
  x0 %= m;
  if (x0 < 0) x0 += m;
  return x0;
}

PadicInt PadicInt::inverse() const {
  Valuation v = val();
  if (!(v.is_finite() && v.v == 0))
    fail(ErrorCode::NonUnit, "inverse of non-unit, valuation " + v.to_string());
  return PadicInt(p_, prec_, mod_inverse(value_, modulus_));
}

PadicInt PadicInt::truncate(long new_precision) const {
  if (new_precision > prec_)
    fail(ErrorCode::Precondition, "truncate: target precision exceeds current");
  return PadicInt(p_, new_precision, value_);
}

std::string Ball::to_string() const {
  std::ostringstream os;
  os << "B(" << center << ", " << p << "^-" << radius_exp << ")";
  return os.str();
}

std::string to_string(NestingRelation r) {
  switch (r) {
  case NestingRelation::Disjoint: return "Disjoint";
  case NestingRelation::FirstInsideSecond: return "FirstInsideSecond";
  case NestingRelation::SecondInsideFirst: return "SecondInsideFirst";
  default: return "Equal";
  }
}

NestingRelation ball_nesting(const Ball& b1, const Ball& b2) {
  if (b1.p != b2.p) fail(ErrorCode::InvalidInput, "ball_nesting: mixed primes");
  Valuation d = valuation(BigInt(b1.center - b2.center), b1.p);
  long shallow = std::min(b1.radius_exp, b2.radius_exp);
  // |c1-c2| > max radius  <=>  v(c1-c2) < min exponent
  if (d.is_finite() && d.v < shallow) return NestingRelation::Disjoint;
  if (b1.radius_exp == b2.radius_exp) return NestingRelation::Equal;
  return b1.radius_exp > b2.radius_exp ? NestingRelation::FirstInsideSecond
                                       : NestingRelation::SecondInsideFirst;
}

bool ball_equal(const BigInt& c, const BigInt& c2, long radius_exp, long p) {
  Valuation d = valuation(BigInt(c - c2), p);
  return d.is_infinite() || d.v >= radius_exp;
}

Ball affine_image(const BigInt& u, const BigInt& alpha, const BigInt& beta,
                  const Ball& b) {
  if (u == 0) fail(ErrorCode::Degenerate, "affine_image: u = 0");
  Valuation vu = valuation(u, b.p);
  return Ball{b.p, beta + u * (b.center - alpha), b.radius_exp + vu.v};
}

namespace {
template <typename T>
void trim(std::vector<T>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}
} // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
  return IntPolynomial({c});
}

IntPolynomial IntPolynomial::identity() { return IntPolynomial({0, 1}); }

BigInt IntPolynomial::eval(const BigInt& z) const {
  BigInt r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + *it;
  return r;
}

BigInt IntPolynomial::eval_mod(const BigInt& z, const BigInt& m) const {
  BigInt r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = (r * z + *it) % m;
  if (r < 0) r += m;
  return r;
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<BigInt> d;
  for (size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * (long)k);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + o.coeff(k);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) - o.coeff(k);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return IntPolynomial();
  std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return IntPolynomial(std::move(c));
}

namespace {
template <typename C>
std::string poly_to_string(const std::vector<C>& coeffs) {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs[k];
    if (k == 1) os << "*z";
    if (k > 1) os << "*z^" << k;
  }
  return os.str();
}
} // namespace

std::string IntPolynomial::to_string() const { return poly_to_string(coeffs_); }

RatPolynomial::RatPolynomial(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

RatPolynomial::RatPolynomial(const IntPolynomial& f) {
  for (const auto& c : f.coeffs()) coeffs_.emplace_back(c);
}

BigRat RatPolynomial::eval(const BigRat& z) const {
  BigRat r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + *it;
  return r;
}

RatPolynomial RatPolynomial::derivative() const {
  std::vector<BigRat> d;
  for (size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * (long)k);
  return RatPolynomial(std::move(d));
}

RatPolynomial RatPolynomial::operator+(const RatPolynomial& o) const {
  std::vector<BigRat> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + o.coeff(k);
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::operator-(const RatPolynomial& o) const {
  std::vector<BigRat> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) - o.coeff(k);
  return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::operator*(const RatPolynomial& o) const {
  if (is_zero() || o.is_zero()) return RatPolynomial();
  std::vector<BigRat> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return RatPolynomial(std::move(c));
}

bool RatPolynomial::is_p_integral(long p) const {
  for (const auto& c : coeffs_)
    if (denominator(c) % p == 0) return false;
  return true;
}

std::optional<IntPolynomial> RatPolynomial::as_integer() const {
  std::vector<BigInt> out;
  for (const auto& c : coeffs_) {
    if (denominator(c) != 1) return std::nullopt;
    out.push_back(numerator(c));
  }
  return IntPolynomial(std::move(out));
}

std::string RatPolynomial::to_string() const { return poly_to_string(coeffs_); }

namespace {
// Taylor shift by synthetic division: coefficients of f in powers of (z-a).
template <typename Poly, typename C>
Poly recenter_impl(const Poly& f, const C& a) {
  std::vector<C> c(f.coeffs().begin(), f.coeffs().end());
  size_t deg1 = c.size();
  std::vector<C> taylor;
  taylor.reserve(deg1);
  for (size_t k = 0; k < deg1; ++k) {
    // divide c (degree deg1-1-k) by (z - a), quotient in place, remainder out
    C rem = c.back();
    std::vector<C> q(c.size() - 1);
    for (size_t i = c.size() - 1; i-- > 0;) {
      q[i] = rem;
      rem = c[i] + rem * a;
    }
    taylor.push_back(rem);
    c = std::move(q);
    if (c.empty()) break;
  }
  return Poly(std::move(taylor));
}
} // namespace

IntPolynomial recenter(const IntPolynomial& f, const BigInt& a) {
  return recenter_impl<IntPolynomial, BigInt>(f, a);
}

RatPolynomial recenter(const RatPolynomial& f, const BigRat& a) {
  return recenter_impl<RatPolynomial, BigRat>(f, a);
}

namespace {
template <typename Poly, typename ValFn>
NormExponent gauss_norm_impl(const Poly& recentered, long n, ValFn val) {
  NormExponent e = NormExponent::zero();
  const auto& c = recentered.coeffs();
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Valuation v = val(c[k]);
    e = norm_max(e, NormExponent::of(v.v + (long)k * n));
  }
  return e;
}
} // namespace

NormExponent gauss_norm_on_ball(const IntPolynomial& f, const Ball& b) {
  IntPolynomial g = recenter(f, b.center);
  return gauss_norm_impl(g, b.radius_exp,
                         [&](const BigInt& c) { return valuation(c, b.p); });
}

NormExponent gauss_norm_on_ball(const RatPolynomial& f, const Ball& b) {
  RatPolynomial g = recenter(f, BigRat(b.center));
  return gauss_norm_impl(g, b.radius_exp,
                         [&](const BigRat& c) { return valuation(c, b.p); });
}

std::vector<NormExponent> coefficient_stability_gap(const IntPolynomial& f,
                                                    const IntPolynomial& g,
                                                    const Ball& b) {
  IntPolynomial d = recenter(f - g, b.center);
  size_t len = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<NormExponent> out(len, NormExponent::zero());
  for (size_t k = 0; k < d.coeffs().size(); ++k) {
    if (d.coeffs()[k] == 0) continue;
    Valuation v = valuation(d.coeffs()[k], b.p);
    out[k] = NormExponent::of(v.v + (long)k * b.radius_exp);
  }
  return out;
}

} // namespace padlift
