#include "padlift/unramified.hpp"

#include <sstream>

namespace padlift {

namespace {

// --- small F_p[x] helpers for the irreducibility search ------------------

using FpPoly = std::vector<long>; // constant first, entries in [0,p)

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, long p) {
  // b monic assumed
  fp_trim(a);
  while (a.size() >= b.size() && !b.empty()) {
    long c = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      long& t = a[shift + i];
      t = (t - c * b[i]) % p;
      if (t < 0) t += p;
    }
    fp_trim(a);
  }
  return a;
}

FpPoly reduce_mod_p(const IntPolynomial& f, long p) {
  FpPoly out;
  for (const auto& c : f.coeffs()) {
    BigInt r = c % p;
    if (r < 0) r += p;
    out.push_back((long)r);
  }
  fp_trim(out);
  return out;
}

bool fp_is_irreducible(const FpPoly& m, long p) {
  long deg = (long)m.size() - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // exhaustive monic-factor search up to degree deg/2
  for (long d = 1; 2 * d <= deg; ++d) {
    BigInt count = pow_int(p, d);
    for (BigInt idx = 0; idx < count; ++idx) {
      FpPoly cand(d + 1, 0);
      BigInt t = idx;
      for (long i = 0; i < d; ++i) {
        cand[i] = (long)(t % p);
        t /= p;
      }
      cand[d] = 1;
      if (fp_mod(m, cand, p).empty()) return false;
    }
  }
  return true;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  return a->p() == b->p() && a->f() == b->f() &&
         a->precision() == b->precision() && a->modulus() == b->modulus();
}

} // namespace

UnramifiedContext::UnramifiedContext(long p, long f, long precision,
                                     IntPolynomial modulus)
    : p_(p), f_(f), prec_(precision), modulus_(std::move(modulus)) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "context: p is not prime");
  if (f < 1 || f > 8) fail(ErrorCode::InvalidInput, "context: need 1 <= f <= 8");
  if (precision < 1) fail(ErrorCode::InvalidInput, "context: precision < 1");
  if (modulus_.degree() != f)
    fail(ErrorCode::InvalidInput, "context: modulus degree != f");
  if (modulus_.coeff(f) != 1)
    fail(ErrorCode::InvalidInput, "context: modulus is not monic");
  FpPoly mbar = reduce_mod_p(modulus_, p);
  if ((long)mbar.size() - 1 != f || !fp_is_irreducible(mbar, p))
    fail(ErrorCode::InvalidInput, "context: modulus is reducible mod p");
  p_pow_prec_ = pow_int(p, precision);
}

ContextPtr UnramifiedContext::make(long p, long f, long precision,
                                   IntPolynomial modulus) {
  return std::make_shared<UnramifiedContext>(p, f, precision, std::move(modulus));
}

ContextPtr UnramifiedContext::make(long p, long f, long precision) {
  if (f == 1)
    return make(p, 1, precision, IntPolynomial::identity());
  // smallest monic irreducible lift in base-p constant-first order
  BigInt count = pow_int(p, f);
  for (BigInt idx = 0; idx < count; ++idx) {
    std::vector<BigInt> c(f + 1, 0);
    BigInt t = idx;
    for (long i = 0; i < f; ++i) {
      c[i] = t % p;
      t /= p;
    }
    c[f] = 1;
    IntPolynomial cand(c);
    if (fp_is_irreducible(reduce_mod_p(cand, p), p))
      return make(p, f, precision, cand);
  }
  fail(ErrorCode::Internal, "no irreducible modulus found"); // unreachable
}

OkElement::OkElement(ContextPtr ctx, std::vector<BigInt> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if ((long)coeffs_.size() != ctx_->f())
    fail(ErrorCode::InvalidInput, "OkElement: coordinate count != f");
  const BigInt& m = ctx_->p_pow_prec();
  for (auto& c : coeffs_) {
    c %= m;
    if (c < 0) c += m;
  }
}

OkElement OkElement::zero(ContextPtr ctx) {
  std::vector<BigInt> c(ctx->f(), 0);
  return OkElement(std::move(ctx), std::move(c));
}

OkElement OkElement::one(ContextPtr ctx) { return from_int(std::move(ctx), 1); }

OkElement OkElement::from_int(ContextPtr ctx, const BigInt& n) {
  std::vector<BigInt> c(ctx->f(), 0);
  c[0] = n;
  return OkElement(std::move(ctx), std::move(c));
}

OkElement OkElement::generator(ContextPtr ctx) {
  if (ctx->f() == 1) return zero(std::move(ctx));
  std::vector<BigInt> c(ctx->f(), 0);
  c[1] = 1;
  return OkElement(std::move(ctx), std::move(c));
}

bool OkElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

Valuation OkElement::val() const {
  if (is_zero()) return Valuation::at_least(ctx_->precision());
  long best = -1;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    Valuation v = valuation(c, ctx_->p());
    if (best < 0 || v.v < best) best = v.v;
  }
  return Valuation::finite(best);
}

namespace {
// multiply coordinate polynomials and reduce by the monic modulus, mod p^N
std::vector<BigInt> polymul_reduce(const UnramifiedContext& ctx,
                                   const std::vector<BigInt>& a,
                                   const std::vector<BigInt>& b) {
  long f = ctx.f();
  const BigInt& m = ctx.p_pow_prec();
  std::vector<BigInt> prod(2 * f - 1, 0);
  for (long i = 0; i < f; ++i)
    for (long j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
  // reduce by monic modulus: z^f = -(lower terms)
  const auto& mod = ctx.modulus().coeffs();
  for (long d = 2 * f - 2; d >= f; --d) {
    BigInt c = prod[d] % m;
    prod[d] = 0;
    for (long i = 0; i < f; ++i) prod[d - f + i] -= c * mod[i];
  }
  prod.resize(f);
  for (auto& c : prod) {
    c %= m;
    if (c < 0) c += m;
  }
  return prod;
}
} // namespace

OkElement OkElement::add(const OkElement& o) const {
  if (!same_context(ctx_, o.ctx_)) fail(ErrorCode::InvalidInput, "OkElement: mixed contexts");
  std::vector<BigInt> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return OkElement(ctx_, std::move(c));
}

OkElement OkElement::sub(const OkElement& o) const {
  if (!same_context(ctx_, o.ctx_)) fail(ErrorCode::InvalidInput, "OkElement: mixed contexts");
  std::vector<BigInt> c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return OkElement(ctx_, std::move(c));
}

OkElement OkElement::mul(const OkElement& o) const {
  if (!same_context(ctx_, o.ctx_)) fail(ErrorCode::InvalidInput, "OkElement: mixed contexts");
  return OkElement(ctx_, polymul_reduce(*ctx_, coeffs_, o.coeffs_));
}

OkElement OkElement::neg() const {
  std::vector<BigInt> c(coeffs_);
  for (auto& x : c) x = -x;
  return OkElement(ctx_, std::move(c));
}

OkElement OkElement::mul_scalar(const BigInt& s) const {
  std::vector<BigInt> c(coeffs_);
  for (auto& x : c) x *= s;
  return OkElement(ctx_, std::move(c));
}

OkElement OkElement::pow(const BigInt& e) const {
  OkElement r = one(ctx_);
  OkElement b = *this;
  BigInt k = e;
  while (k > 0) {
    if (k % 2 == 1) r = r.mul(b);
    b = b.mul(b);
    k /= 2;
  }
  return r;
}

OkElement OkElement::inverse() const {
  Valuation v = val();
  if (!(v.is_finite() && v.v == 0))
    fail(ErrorCode::NonUnit, "OkElement inverse of non-unit, valuation " + v.to_string());
  // Invert in the residue field, then Newton-lift x -> x(2 - a x).
  long p = ctx_->p(), f = ctx_->f();
  // residue inverse by brute-force search over F_q (q is small here);
  // exact for any modulus without needing field-specific tables
  OkElement abar = reduce_mod_p();
  ContextPtr c1 = UnramifiedContext::make(p, f, 1, ctx_->modulus());
  OkElement a1(c1, abar.coeffs());
  OkElement inv1 = OkElement::zero(c1);
  bool found = false;
  BigInt q = ctx_->q();
  // a^(q-2) = a^{-1} in F_q^x
  inv1 = a1.pow(q - 2);
  found = a1.mul(inv1) == OkElement::one(c1);
  if (!found) fail(ErrorCode::Internal, "residue inverse failed");
  OkElement x(ctx_, inv1.coeffs());
  OkElement two = OkElement::from_int(ctx_, 2);
  for (long k = 1; k < ctx_->precision(); k *= 2)
    x = x.mul(two.sub(this->mul(x)));
  if (!(this->mul(x) == OkElement::one(ctx_)))
    fail(ErrorCode::Internal, "inverse post-check failed");
  return x;
}

OkElement OkElement::truncate(long M) const {
  if (M > ctx_->precision())
    fail(ErrorCode::Precondition, "truncate: M exceeds context precision");
  ContextPtr c = UnramifiedContext::make(ctx_->p(), ctx_->f(), M, ctx_->modulus());
  return OkElement(std::move(c), coeffs_);
}

OkElement OkElement::reduce_mod_p() const { return truncate(1); }

bool OkElement::operator==(const OkElement& o) const {
  return ctx_->p() == o.ctx_->p() && ctx_->f() == o.ctx_->f() &&
         ctx_->precision() == o.ctx_->precision() && coeffs_ == o.coeffs_;
}

std::string OkElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << coeffs_[i];
  }
  os << "]";
  return os.str();
}

OkElement eval_poly(const IntPolynomial& P, const OkElement& x) {
  OkElement r = OkElement::zero(x.context());
  const auto& c = P.coeffs();
  for (size_t k = c.size(); k-- > 0;)
    r = r.mul(x).add(OkElement::from_int(x.context(), c[k]));
  return r;
}

OkElement teichmuller(const OkElement& xbar, long targetN) {
  ContextPtr ctx = xbar.context();
  ContextPtr tgt = UnramifiedContext::make(ctx->p(), ctx->f(), targetN,
                                           ctx->modulus());
  OkElement xi(tgt, xbar.coeffs());
  BigInt q = ctx->q();
  for (long i = 0; i <= targetN; ++i) {
    OkElement next = xi.pow(q);
    if (next == xi) break;
    xi = next;
  }
  if (!(xi.pow(q) == xi))
    fail(ErrorCode::Internal, "teichmuller: fixed-point post-check failed");
  return xi;
}

OkElement residue_frobenius(const OkElement& xbar) {
  return xbar.pow(xbar.context()->p());
}

OkElement frobenius(const OkElement& x) {
  const ContextPtr& ctx = x.context();
  long f = ctx->f();
  if (f == 1) return x;
  // image of the generator: the root of the modulus lifting g^p, found by
  // Newton from the depth-1 value (the modulus is separable mod p)
  OkElement g = OkElement::generator(ctx);
  OkElement y = g.pow(ctx->p()); // correct mod p
  const IntPolynomial& m = ctx->modulus();
  IntPolynomial md = m.derivative();
  for (long k = 0; k < ctx->precision() + 1; ++k) {
    OkElement num = eval_poly(m, y);
    if (num.is_zero()) break;
    y = y.sub(num.mul(eval_poly(md, y).inverse()));
  }
  if (!eval_poly(m, y).is_zero())
    fail(ErrorCode::Internal, "frobenius: generator lift failed");
  // substitute: x = sum x_i g^i  ->  sum x_i y^i
  OkElement r = OkElement::zero(ctx);
  OkElement ypow = OkElement::one(ctx);
  for (long i = 0; i < f; ++i) {
    r = r.add(ypow.mul_scalar(x.coeffs()[i]));
    if (i + 1 < f) ypow = ypow.mul(y);
  }
  return r;
}

std::vector<OkElement> teichmuller_digits(const OkElement& x, long N) {
  const ContextPtr& ctx = x.context();
  if (ctx->precision() < N)
    fail(ErrorCode::Precondition, "teichmuller_digits: precision < N");
  std::vector<OkElement> digits;
  OkElement cur = x;
  long prec = ctx->precision();
  for (long i = 0; i < N; ++i) {
    OkElement d = cur.reduce_mod_p();
    digits.push_back(d);
    if (i + 1 == N) break;
    OkElement t = teichmuller(d, prec);
    std::vector<BigInt> diff = cur.sub(OkElement(cur.context(), t.coeffs())).coeffs();
    // exact division by p, dropping one level of precision
    --prec;
    ContextPtr next = UnramifiedContext::make(ctx->p(), ctx->f(), prec,
                                              ctx->modulus());
    std::vector<BigInt> c(diff.size());
    for (size_t j = 0; j < diff.size(); ++j) {
      if (diff[j] % ctx->p() != 0)
        fail(ErrorCode::Internal, "digit expansion: non-divisible remainder");
      c[j] = diff[j] / ctx->p();
    }
    cur = OkElement(next, std::move(c));
  }
  return digits;
}

bool verschiebung_shift_check(const OkElement& z, long N) {
  const ContextPtr& ctx = z.context();
  if (ctx->precision() < N + 1)
    fail(ErrorCode::Precondition, "verschiebung check: need precision >= N+1");
  // Witt coordinates at depth N: c_i = d_i^{p^i} with d_i the Teichmueller
  // digits; multiplication by p must shift and apply Frobenius per entry.
  auto digits_z = teichmuller_digits(z.truncate(ctx->precision()), N);
  auto digits_pz = teichmuller_digits(z.mul_scalar(ctx->p()), N + 1);
  if (!digits_pz[0].is_zero()) return false;
  for (long i = 0; i < N; ++i) {
    OkElement ci = digits_z[i].pow(pow_int(ctx->p(), i));
    OkElement ci1 = digits_pz[i + 1].pow(pow_int(ctx->p(), i + 1));
    if (ci1 != residue_frobenius(ci)) return false;
  }
  return true;
}

std::vector<OkElement> residue_field_elements(const ContextPtr& ctx) {
  ContextPtr c1 = ctx->precision() == 1
                      ? ctx
                      : UnramifiedContext::make(ctx->p(), ctx->f(), 1,
                                                ctx->modulus());
  long f = ctx->f(), p = ctx->p();
  BigInt q = ctx->q();
  std::vector<OkElement> out;
  for (BigInt idx = 0; idx < q; ++idx) {
    std::vector<BigInt> coeffs(f, 0);
    BigInt t = idx;
    for (long i = 0; i < f; ++i) {
      coeffs[i] = t % p;
      t /= p;
    }
    out.emplace_back(c1, std::move(coeffs));
  }
  return out;
}

long residue_index(const OkElement& xbar) {
  long p = xbar.context()->p();
  BigInt idx = 0, pw = 1;
  for (const auto& c : xbar.coeffs()) {
    idx += (c % p) * pw;
    pw *= p;
  }
  return (long)idx;
}

std::vector<WittCylinder> witt_cylinder_partition(const ContextPtr& ctx, long N,
                                                  long size_limit) {
  if (N > ctx->precision())
    fail(ErrorCode::Precondition, "witt_cylinder_partition: N exceeds precision");
  BigInt total = 1;
  BigInt pN = pow_int(ctx->p(), N);
  for (long i = 0; i < ctx->f(); ++i) {
    total *= pN;
    if (total > size_limit)
      fail(ErrorCode::SizeLimit, "witt_cylinder_partition: q^N exceeds size limit");
  }
  ContextPtr cN = UnramifiedContext::make(ctx->p(), ctx->f(), N, ctx->modulus());
  std::vector<WittCylinder> out;
  long f = ctx->f();
  std::vector<BigInt> coeffs(f, 0);
  for (BigInt idx = 0; idx < total; ++idx) {
    BigInt t = idx;
    for (long i = 0; i < f; ++i) {
      coeffs[i] = t % pN;
      t /= pN;
    }
    out.push_back(WittCylinder{N, OkElement(cN, coeffs)});
  }
  return out;
}

} // namespace padlift
