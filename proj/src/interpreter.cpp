#include "padlift/interpreter.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace padlift {

BallSystem BallSystem::make(long p, std::vector<Ball> balls,
                            std::vector<long> tau, std::vector<Ball> targets) {
  if (balls.empty()) fail(ErrorCode::InvalidInput, "ball system: no balls");
  if (balls.size() != targets.size() || balls.size() != tau.size())
    fail(ErrorCode::InvalidInput, "ball system: size mismatch");
  for (const auto& b : balls)
    if (b.p != p) fail(ErrorCode::InvalidInput, "ball system: mixed primes");
  for (const auto& b : targets)
    if (b.p != p) fail(ErrorCode::InvalidInput, "ball system: mixed primes");
  for (long t : tau)
    if (t < 0 || t >= (long)balls.size())
      fail(ErrorCode::InvalidInput, "ball system: tau out of range");
  for (size_t i = 0; i < balls.size(); ++i)
    for (size_t j = i + 1; j < balls.size(); ++j)
      if (ball_nesting(balls[i], balls[j]) != NestingRelation::Disjoint)
        fail(ErrorCode::InvalidInput, "ball system: source balls not disjoint");
  return BallSystem{p, std::move(balls), std::move(tau), std::move(targets)};
}

BallSystem ball_system_from_graph(const FunctionalGraph& g, long p, long depth) {
  if (pow_int(p, depth) < g.size()) {
    std::ostringstream os;
    os << "depth too small: " << g.size() << " states do not embed in " << p
       << "^" << depth << " cylinders";
    fail(ErrorCode::Precondition, os.str());
  }
  std::vector<Ball> balls;
  std::vector<long> tau;
  for (long x = 0; x < g.size(); ++x) {
    balls.push_back(Ball{p, x, depth});
    tau.push_back(g.successor(x));
  }
  std::vector<Ball> targets = balls;
  return BallSystem::make(p, std::move(balls), std::move(tau),
                          std::move(targets));
}

PiecewiseAffine synthesize_piecewise_affine(const BallSystem& bs) {
  PiecewiseAffine psi;
  for (size_t i = 0; i < bs.balls.size(); ++i) {
    const Ball& src = bs.balls[i];
    const Ball& tgt = bs.targets[bs.tau[i]];
    long delta = tgt.radius_exp - src.radius_exp;
    BigInt pd = pow_int(bs.p, std::abs(delta));
    BigRat u = delta >= 0 ? BigRat(pd) : BigRat(1, pd);
    // psi_i(z) = b + u (z - a)
    BigRat c0 = BigRat(tgt.center) - u * BigRat(src.center);
    psi.slopes.push_back(u);
    psi.pieces.emplace_back(std::vector<BigRat>{c0, u});
  }
  return psi;
}

Interpolant interpolate_at_centers(const BallSystem& bs) {
  size_t n = bs.balls.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (bs.balls[i].center == bs.balls[j].center)
        fail(ErrorCode::InvalidInput, "interpolation: duplicate centers");
  RatPolynomial acc;
  for (size_t i = 0; i < n; ++i) {
    RatPolynomial li(std::vector<BigRat>{BigRat(1)});
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      BigRat d = BigRat(bs.balls[i].center) - BigRat(bs.balls[j].center);
      // (z - a_j) / (a_i - a_j)
      li = li * RatPolynomial(
                    std::vector<BigRat>{-BigRat(bs.balls[j].center) / d,
                                        BigRat(1) / d});
    }
    BigRat value(bs.targets[bs.tau[i]].center);
    li = li * RatPolynomial(std::vector<BigRat>{value});
    acc = acc + li;
  }
  Interpolant out;
  out.poly = acc;
  for (const auto& c : acc.coeffs())
    out.coefficient_valuations.push_back(valuation(c, bs.p));
  out.p_integral = acc.is_p_integral(bs.p);
  return out;
}

DominanceVerdict check_linear_dominance(const std::vector<Valuation>& cv,
                                        long n) {
  DominanceVerdict out;
  Valuation c1 = cv.size() > 1 ? cv[1] : Valuation::plus_infinity();
  if (c1.is_infinite()) {
    out.status = DominanceStatus::DegenerateLinearTerm;
    return out;
  }
  if (c1.is_at_least()) {
    out.status = DominanceStatus::Inconclusive;
    return out;
  }
  out.linear_valuation = c1;
  for (size_t k = 2; k < cv.size(); ++k) {
    const Valuation& ck = cv[k];
    if (ck.is_infinite()) continue;
    long lhs = ck.v + ((long)k - 1) * n; // lower bound when AtLeast
    if (lhs > c1.v) continue;
    out.violating_index = (long)k;
    out.status = ck.is_at_least() ? DominanceStatus::Inconclusive
                                  : DominanceStatus::Fail;
    return out;
  }
  out.status = DominanceStatus::Pass;
  return out;
}

namespace {
template <typename Poly, typename Center>
DominanceVerdict dominance_impl(const Poly& f, const Ball& b, const Center& c) {
  Poly g = recenter(f, c);
  std::vector<Valuation> cv;
  for (const auto& coeff : g.coeffs()) cv.push_back(valuation(coeff, b.p));
  return check_linear_dominance(cv, b.radius_exp);
}
} // namespace

DominanceVerdict check_linear_dominance(const IntPolynomial& f, const Ball& b) {
  return dominance_impl(f, b, b.center);
}

DominanceVerdict check_linear_dominance(const RatPolynomial& f, const Ball& b) {
  return dominance_impl(f, b, BigRat(b.center));
}

Ball image_ball(const IntPolynomial& f, const Ball& b) {
  DominanceVerdict d = check_linear_dominance(f, b);
  if (!d.passed())
    fail(ErrorCode::Precondition, "image_ball: linear dominance required");
  long n = b.radius_exp + d.linear_valuation.v;
  BigInt center = f.eval(b.center);
  if (n >= 0) {
    center %= pow_int(b.p, n);
    if (center < 0) center += pow_int(b.p, n);
  }
  return Ball{b.p, center, n};
}

std::string to_string(InterpretationKind k) {
  switch (k) {
  case InterpretationKind::Contractive: return "contractive";
  case InterpretationKind::Indifferent: return "indifferent";
  default: return "expansive";
  }
}

namespace {

InterpretationType classify_by_enumeration(const IntPolynomial& f,
                                           const Ball& source,
                                           const Ball& target) {
  InterpretationType t;
  t.enumerated_only = true;
  long cap = std::max(source.radius_exp, target.radius_exp) + 4;
  BigInt mod = pow_int(source.p, cap);
  BigInt step = pow_int(source.p, source.radius_exp);
  BigInt c = ((source.center % step) + step) % step;
  std::set<BigInt> image;
  for (BigInt x = c; x < mod; x += step) image.insert(f.eval_mod(x, mod));
  BigInt tstep = pow_int(target.p, target.radius_exp);
  BigInt tc = ((target.center % tstep) + tstep) % tstep;
  std::set<BigInt> tset;
  for (BigInt x = tc; x < mod; x += tstep) tset.insert(x);
  bool meets = false, inside = true;
  for (const auto& y : image) {
    if (tset.count(y))
      meets = true;
    else
      inside = false;
  }
  t.image_meets_target = meets;
  t.image_inside_target = inside;
  t.image_equals_target = inside && image.size() == tset.size();
  // smallest covering ball: minimal pairwise valuation from a basepoint
  long cover = cap;
  const BigInt& x0 = *image.begin();
  for (const auto& y : image) {
    if (y == x0) continue;
    Valuation v = valuation(BigInt(y - x0), source.p);
    cover = std::min(cover, v.lower_bound(cap));
  }
  t.sigma_exponent = cover - target.radius_exp;
  t.kind = t.sigma_exponent > 0    ? InterpretationKind::Contractive
           : t.sigma_exponent == 0 ? InterpretationKind::Indifferent
                                   : InterpretationKind::Expansive;
  return t;
}

} // namespace

InterpretationType classify_ball(const IntPolynomial& f, const Ball& source,
                                 const Ball& target) {
  DominanceVerdict d = check_linear_dominance(f, source);
  if (!d.passed()) return classify_by_enumeration(f, source, target);
  InterpretationType t;
  t.sigma_exponent =
      source.radius_exp + d.linear_valuation.v - target.radius_exp;
  t.kind = t.sigma_exponent > 0   ? InterpretationKind::Contractive
           : t.sigma_exponent == 0 ? InterpretationKind::Indifferent
                                   : InterpretationKind::Expansive;
  Ball img = image_ball(f, source);
  switch (ball_nesting(img, target)) {
  case NestingRelation::Disjoint: break;
  case NestingRelation::Equal:
    t.image_equals_target = true;
    [[fallthrough]];
  case NestingRelation::FirstInsideSecond:
    t.image_inside_target = true;
    [[fallthrough]];
  case NestingRelation::SecondInsideFirst:
    t.image_meets_target = true;
  }
  return t;
}

CommutationResult check_inclusion_by_commutation(const IntPolynomial& f,
                                                 const FunctionalGraph& g,
                                                 long p, long depth) {
  BigInt mod = pow_int(p, depth);
  if (mod < g.size())
    fail(ErrorCode::Precondition, "commutation: p^depth < number of states");
  CommutationResult r;
  for (BigInt x = 0; x < mod; ++x) {
    BigInt fx = f.eval_mod(x, mod);
    if (x < g.size()) {
      if (fx != g.successor((long)x)) {
        r.commutes = false;
        if (r.witness < 0) r.witness = (long)x;
      }
    } else {
      ++r.surplus_total;
      if (fx < g.size()) ++r.surplus_into_states;
    }
  }
  return r;
}

CertifiedReport robust_exactness_certificate(const IntPolynomial& f,
                                             const PiecewiseAffine& psi,
                                             const BallSystem& bs) {
  if (psi.pieces.size() != bs.balls.size())
    fail(ErrorCode::InvalidInput, "certificate: piece count mismatch");
  CertifiedReport rep;
  rep.all_eps_infinite = true;
  bool have_eps = false;
  for (size_t i = 0; i < bs.balls.size(); ++i) {
    BallReport br;
    RatPolynomial diff = RatPolynomial(f) - psi.pieces[i];
    br.eps = gauss_norm_on_ball(diff, bs.balls[i]);
    if (!br.eps.infinite) {
      rep.all_eps_infinite = false;
      rep.min_eps_exponent =
          have_eps ? std::min(rep.min_eps_exponent, br.eps.e) : br.eps.e;
      have_eps = true;
    }
    const Ball& tgt = bs.targets[bs.tau[i]];
    rep.max_target_exponent =
        i == 0 ? tgt.radius_exp : std::max(rep.max_target_exponent, tgt.radius_exp);
    br.dominance = check_linear_dominance(f, bs.balls[i]);
    br.type = classify_ball(f, bs.balls[i], tgt);
    if (br.dominance.passed()) {
      br.image = image_ball(f, bs.balls[i]);
      // exactness only via the certified ball-image route
      br.exact_here = br.type->image_equals_target;
    }
    rep.per_ball.push_back(std::move(br));
  }
  rep.eps_certificate =
      rep.all_eps_infinite || rep.min_eps_exponent > rep.max_target_exponent;
  bool all_exact = true, all_inside = true, all_meet = true;
  for (size_t i = 0; i < rep.per_ball.size(); ++i) {
    const BallReport& br = rep.per_ball[i];
    bool meets = br.type && br.type->image_meets_target;
    bool inside = br.type && br.type->image_inside_target;
    all_exact &= br.exact_here;
    all_inside &= inside;
    all_meet &= meets;
    if (!br.exact_here && rep.failing_ball < 0) rep.failing_ball = (long)i;
  }
  if (rep.eps_certificate && !all_exact)
    fail(ErrorCode::Internal, "certificate margin held but an image differs");
  rep.exact = all_exact;
  rep.with_inclusion = all_inside;
  rep.interpreter = all_meet;
  if (rep.exact) rep.failing_ball = -1;
  return rep;
}

std::vector<MultiplierEntry> multiplier_report(const IntPolynomial& f,
                                               const BallSystem& bs) {
  std::vector<MultiplierEntry> out;
  IntPolynomial df = f.derivative();
  for (size_t i = 0; i < bs.balls.size(); ++i) {
    if (bs.tau[i] != (long)i) continue;
    MultiplierEntry e;
    e.ball_index = (long)i;
    BigInt lambda = df.eval(bs.balls[i].center);
    e.multiplier_valuation = valuation(lambda, bs.p);
    if (e.multiplier_valuation.is_infinite())
      e.stability = InterpretationKind::Contractive; // superattracting
    else if (e.multiplier_valuation.v > 0)
      e.stability = InterpretationKind::Contractive;
    else if (e.multiplier_valuation.v == 0)
      e.stability = InterpretationKind::Indifferent;
    else
      e.stability = InterpretationKind::Expansive;
    long expected = bs.targets[i].radius_exp - bs.balls[i].radius_exp;
    e.matches_radius_ratio = e.multiplier_valuation.is_finite() &&
                             e.multiplier_valuation.v == expected;
    out.push_back(e);
  }
  return out;
}

ReductionVerdict good_reduction_check(const IntPolynomial& f,
                                      const FunctionalGraph& g,
                                      const ContextPtr& ctx) {
  if (f.degree() < 1)
    fail(ErrorCode::Precondition, "good reduction: nonconstant map required");
  if (g.size() != (long)ctx->q())
    fail(ErrorCode::InvalidInput, "good reduction: graph size != field size");
  Valuation lead = valuation(f.coeff(f.degree()), ctx->p());
  if (!(lead.is_finite() && lead.v == 0))
    return ReductionVerdict{ReductionStatus::NotStrict, -1,
                            "leading coefficient is not a unit; degree drops"};
  auto elems = residue_field_elements(ctx);
  for (size_t i = 0; i < elems.size(); ++i) {
    long img = residue_index(eval_poly(f, elems[i]));
    if (img != g.successor((long)i))
      return ReductionVerdict{ReductionStatus::StrictGoodMismatch, (long)i, ""};
  }
  return ReductionVerdict{ReductionStatus::StrictGoodMatches, -1, ""};
}

std::vector<Valuation> stratum_signature(const IntPolynomial& f,
                                         const BallSystem& bs,
                                         const CertifiedReport& report) {
  if (!report.with_inclusion)
    fail(ErrorCode::Precondition,
         "stratum signature: certified interpreter with inclusion required");
  std::vector<Valuation> sig;
  IntPolynomial df = f.derivative();
  for (size_t i = 0; i < bs.balls.size(); ++i)
    if (bs.tau[i] == (long)i)
      sig.push_back(valuation(df.eval(bs.balls[i].center), bs.p));
  return sig;
}

RatPolynomial conjugate_affine_isometry(const IntPolynomial& f,
                                        const BigInt& alpha, const BigInt& beta,
                                        long p) {
  Valuation va = valuation(alpha, p);
  if (!(va.is_finite() && va.v == 0))
    fail(ErrorCode::NonUnit, "conjugation: alpha is not an isometry slope");
  // f(alpha z + beta) by Horner over exact integers
  IntPolynomial sigma(std::vector<BigInt>{beta, alpha});
  IntPolynomial comp;
  const auto& c = f.coeffs();
  for (size_t k = c.size(); k-- > 0;)
    comp = comp * sigma + IntPolynomial::constant(c[k]);
  // then (w - beta) / alpha
  std::vector<BigRat> out(comp.coeffs().size());
  for (size_t k = 0; k < out.size(); ++k) {
    BigRat v(comp.coeff(k));
    if (k == 0) v -= BigRat(beta);
    out[k] = v / BigRat(alpha);
  }
  return RatPolynomial(std::move(out));
}

} // namespace padlift
