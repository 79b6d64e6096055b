#include "padlift/arith.hpp"

#include <numeric>
#include <sstream>

namespace padlift {

CpVerdict is_congruence_preserving(const FunctionalGraph& g, long size_cap) {
  long m = g.size();
  if (m > size_cap)
    fail(ErrorCode::SizeLimit, "congruence check: modulus exceeds cap");
  // largest divisor first so the reported witness uses the coarsest
  // congruence that already fails
  for (long d = m - 1; d >= 2; --d) {
    if (m % d != 0) continue;
    for (long x = 0; x < m; ++x)
      for (long y = x + d; y < m; y += d)
        if ((g.successor(x) - g.successor(y)) % d != 0)
          return CpVerdict{false, d, x, y};
  }
  return CpVerdict{};
}

std::vector<PrimePower> factor_prime_powers(long m) {
  if (m < 1) fail(ErrorCode::InvalidInput, "factorization: m < 1");
  std::vector<PrimePower> out;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    long k = 0, v = 1;
    while (m % p == 0) {
      m /= p;
      ++k;
      v *= p;
    }
    out.push_back(PrimePower{p, k, v});
  }
  if (m > 1) out.push_back(PrimePower{m, 1, m});
  return out;
}

namespace {

// row-major index of a residue tuple w.r.t. the component moduli
long tuple_index(const std::vector<long>& t, const std::vector<PrimePower>& m) {
  long idx = 0;
  for (size_t i = 0; i < m.size(); ++i) idx = idx * m[i].value + t[i];
  return idx;
}

// CRT: the unique x mod prod with x = t_i mod m_i
long crt_combine(const std::vector<long>& t, const std::vector<PrimePower>& m) {
  long x = 0, mod = 1;
  for (size_t i = 0; i < m.size(); ++i) {
    long mi = m[i].value;
    // solve x + mod * s = t_i mod mi
    long rem = ((t[i] - x) % mi + mi) % mi;
    long inv = (long)mod_inverse(BigInt(mod % mi), BigInt(mi));
    long s = (rem * inv) % mi;
    x += mod * s;
    mod *= mi;
  }
  return x;
}

} // namespace

DcrtDecomposition dcrt_decompose(const FunctionalGraph& g) {
  CpVerdict cp = is_congruence_preserving(g);
  if (!cp.is_cp) {
    std::ostringstream os;
    os << "map is not congruence-preserving: divisor " << cp.divisor
       << ", pair (" << cp.x << ", " << cp.y << ")";
    fail(ErrorCode::Precondition, os.str());
  }
  long m = g.size();
  DcrtDecomposition out;
  out.moduli = factor_prime_powers(m);
  for (const auto& pp : out.moduli) {
    std::vector<long> succ(pp.value, -1);
    for (long x = 0; x < m; ++x) {
      long r = x % pp.value, s = g.successor(x) % pp.value;
      if (succ[r] < 0)
        succ[r] = s;
      else if (succ[r] != s)
        fail(ErrorCode::Internal, "component map not well-defined");
    }
    out.components.push_back(FunctionalGraph::from_successors(std::move(succ)));
  }
  // the CRT bijection must carry edges of g onto edges of the product graph
  if (out.components.size() > 1) {
    FunctionalGraph prod = out.components[0];
    for (size_t i = 1; i < out.components.size(); ++i)
      prod = graph_product(prod, out.components[i]);
    for (long x = 0; x < m; ++x) {
      std::vector<long> t;
      for (const auto& pp : out.moduli) t.push_back(x % pp.value);
      long xi = tuple_index(t, out.moduli);
      std::vector<long> ft;
      for (const auto& pp : out.moduli)
        ft.push_back(g.successor(x) % pp.value);
      if (prod.successor(xi) != tuple_index(ft, out.moduli))
        fail(ErrorCode::Internal, "CRT bijection is not a graph isomorphism");
    }
  }
  return out;
}

FunctionalGraph dcrt_assemble(const std::vector<PrimePower>& moduli,
                              const std::vector<FunctionalGraph>& comps) {
  if (moduli.size() != comps.size() || moduli.empty())
    fail(ErrorCode::InvalidInput, "assemble: component count mismatch");
  long m = 1;
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (comps[i].size() != moduli[i].value)
      fail(ErrorCode::InvalidInput, "assemble: component size != modulus");
    for (size_t j = i + 1; j < moduli.size(); ++j)
      if (std::gcd(moduli[i].value, moduli[j].value) != 1)
        fail(ErrorCode::InvalidInput, "assemble: moduli are not coprime");
    CpVerdict cp = is_congruence_preserving(comps[i]);
    if (!cp.is_cp)
      fail(ErrorCode::Precondition,
           "assemble: a component is not congruence-preserving");
    m *= moduli[i].value;
  }
  std::vector<long> succ(m);
  for (long x = 0; x < m; ++x) {
    std::vector<long> t;
    for (size_t i = 0; i < moduli.size(); ++i)
      t.push_back(comps[i].successor(x % moduli[i].value));
    succ[x] = crt_combine(t, moduli);
  }
  FunctionalGraph g = FunctionalGraph::from_successors(std::move(succ));
  CpVerdict cp = is_congruence_preserving(g);
  if (!cp.is_cp)
    fail(ErrorCode::Internal, "assembled map lost congruence preservation");
  return g;
}

ProductPhaseVerdict verify_product_phase_space(
    const std::vector<IntPolynomial>& local_polys,
    const std::vector<PrimePower>& moduli, const FunctionalGraph& global) {
  if (local_polys.size() != moduli.size() || moduli.empty())
    fail(ErrorCode::InvalidInput, "product phase space: arity mismatch");
  long m = 1;
  for (const auto& pp : moduli) m *= pp.value;
  if (global.size() != m)
    fail(ErrorCode::InvalidInput, "product phase space: global size mismatch");
  std::vector<long> t(moduli.size(), 0);
  for (;;) {
    long x = crt_combine(t, moduli);
    long gx = global.successor(x);
    for (size_t i = 0; i < moduli.size(); ++i) {
      long local = (long)local_polys[i].eval_mod(BigInt(t[i]),
                                                 BigInt(moduli[i].value));
      if (local != gx % moduli[i].value)
        return ProductPhaseVerdict{false, t};
    }
    size_t i = 0;
    while (i < t.size() && ++t[i] == moduli[i].value) t[i++] = 0;
    if (i == t.size()) break;
  }
  return ProductPhaseVerdict{};
}

Tower build_tower(const IntPolynomial& P, long p, long maxN, long size_limit) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "tower: p is not prime");
  if (maxN < 1) fail(ErrorCode::InvalidInput, "tower: maxN < 1");
  if (pow_int(p, maxN) > size_limit)
    fail(ErrorCode::SizeLimit, "tower: p^maxN exceeds size limit");
  Tower t{p, {}};
  for (long n = 1; n <= maxN; ++n)
    t.levels.push_back(graph_of_polynomial_mod(P, pow_int(p, n), size_limit));
  TowerCompatibility c = check_tower_compatibility(t);
  if (!c.compatible)
    fail(ErrorCode::Internal, "polynomial tower failed compatibility");
  return t;
}

TowerCompatibility check_tower_compatibility(const Tower& t) {
  for (size_t n = 0; n + 1 < t.levels.size(); ++n) {
    long mod = (long)pow_int(t.p, (long)n + 1);
    const FunctionalGraph& lo = t.levels[n];
    const FunctionalGraph& hi = t.levels[n + 1];
    for (long x = 0; x < hi.size(); ++x)
      if (hi.successor(x) % mod != lo.successor(x % mod))
        return TowerCompatibility{false, (long)n + 1, x};
  }
  return TowerCompatibility{};
}

HenselLiftResult hensel_lift_cycle(const IntPolynomial& P, long p,
                                   const BigInt& xbar, long m, long targetN) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "hensel: p is not prime");
  if (m < 1 || targetN < 1)
    fail(ErrorCode::InvalidInput, "hensel: need m >= 1 and targetN >= 1");
  BigInt x0 = xbar % p;
  if (x0 < 0) x0 += p;
  // exact period m of the residue
  BigInt y = x0;
  for (long i = 0; i < m; ++i) y = P.eval_mod(y, p);
  if (y != x0) {
    HenselLiftResult r;
    r.status = HenselStatus::NotExactPeriod;
    r.divisor = 0; // the orbit does not even return after m steps
    return r;
  }
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    BigInt z = x0;
    for (long i = 0; i < d; ++i) z = P.eval_mod(z, p);
    if (z == x0) {
      HenselLiftResult r;
      r.status = HenselStatus::NotExactPeriod;
      r.divisor = d;
      return r;
    }
  }
  BigInt pN = pow_int(p, targetN);
  IntPolynomial dP = P.derivative();
  // mu = (P^m)'(x) = prod P'(orbit) along the cycle
  auto orbit_derivative = [&](const BigInt& x, const BigInt& mod) {
    BigInt mu = 1, z = x;
    for (long i = 0; i < m; ++i) {
      mu = (mu * dP.eval_mod(z, mod)) % mod;
      z = P.eval_mod(z, mod);
    }
    return mu;
  };
  BigInt mu_p = orbit_derivative(x0, BigInt(p));
  if (mu_p == 1) {
    HenselLiftResult r;
    r.status = HenselStatus::Degenerate;
    r.period = m;
    r.multiplier_residue = mu_p;
    return r;
  }
  auto iterate = [&](BigInt z, const BigInt& mod) {
    for (long i = 0; i < m; ++i) z = P.eval_mod(z, mod);
    return z;
  };
  HenselLiftResult r;
  r.status = HenselStatus::Lifted;
  r.period = m;
  BigInt x = x0;
  r.trace.push_back(x);
  for (long n = 1; n < targetN; ++n) {
    BigInt mod = pow_int(p, n + 1);
    // F(z) = P^m(z) - z; one Newton step raises correctness one level
    BigInt F = (iterate(x, mod) - x) % mod;
    BigInt dF = (orbit_derivative(x, mod) - 1) % mod;
    if (dF < 0) dF += mod;
    x = (x - F * mod_inverse(dF, mod)) % mod;
    if (x < 0) x += mod;
    r.trace.push_back(x);
  }
  r.point = x;
  if (iterate(x, pN) != x)
    fail(ErrorCode::Internal, "hensel: lifted point is not periodic");
  // exact period still m: the residue-level check rules out proper divisors
  r.multiplier_residue = mu_p;
  return r;
}

std::vector<long> detect_parabolic_growth(const IntPolynomial& P, long p,
                                          long maxN, long seed,
                                          long size_limit) {
  Tower t = build_tower(P, p, maxN, size_limit);
  std::vector<long> lengths;
  for (const auto& level : t.levels)
    lengths.push_back((long)cycle_of(level, seed % level.size()).size());
  return lengths;
}

LiftCheckWitness locally_constant_lift_check(const Tower& t) {
  TowerCompatibility c = check_tower_compatibility(t);
  if (!c.compatible)
    fail(ErrorCode::Precondition, "lift check: tower is not compatible");
  // f_n(z) = level_n(z mod p^n) as an integer; the next level must agree
  // to within p^{-n} at every residue mod p^{n+1}
  for (size_t n = 0; n + 1 < t.levels.size(); ++n) {
    BigInt pn = pow_int(t.p, (long)n + 1);
    const FunctionalGraph& lo = t.levels[n];
    const FunctionalGraph& hi = t.levels[n + 1];
    for (long x = 0; x < hi.size(); ++x) {
      long diff = hi.successor(x) - lo.successor(x % (long)pn);
      if (BigInt(diff) % pn != 0)
        return LiftCheckWitness{false, (long)n + 1, BigInt(x)};
    }
  }
  return LiftCheckWitness{};
}

CauchyVerdict route2_cauchy_check(const std::vector<IntPolynomial>& seq,
                                  const Tower& t, long C_exp) {
  if (seq.size() != t.levels.size())
    fail(ErrorCode::InvalidInput, "cauchy check: sequence length != height");
  for (size_t i = 0; i < seq.size(); ++i) {
    long n = (long)i + 1;
    BigInt mod = pow_int(t.p, n);
    for (BigInt x = 0; x < mod; ++x)
      if (seq[i].eval_mod(x, mod) != t.levels[i].successor((long)x)) {
        std::ostringstream os;
        os << "level-" << n << " correctness fails at residue " << x;
        return CauchyVerdict{false, n, os.str()};
      }
  }
  Ball unit{t.p, BigInt(0), 0};
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    long n = (long)i + 1;
    NormExponent e = gauss_norm_on_ball(seq[i + 1] - seq[i], unit);
    if (!e.infinite && e.e < n - C_exp) {
      std::ostringstream os;
      os << "difference at level " << n << " has norm exponent " << e.e
         << " < " << (n - C_exp);
      return CauchyVerdict{false, n, os.str()};
    }
  }
  return CauchyVerdict{};
}

bool rigidity_check(const BigInt& c1, const BigInt& c2, long p, long n,
                    long size_limit) {
  BigInt mod = pow_int(p, n);
  std::vector<BigInt> a{c1 % mod, BigInt(0), BigInt(1)};
  std::vector<BigInt> b{c2 % mod, BigInt(0), BigInt(1)};
  if (a[0] < 0) a[0] += mod;
  if (b[0] < 0) b[0] += mod;
  FunctionalGraph g1 = graph_of_polynomial_mod(IntPolynomial(a), mod, size_limit);
  FunctionalGraph g2 = graph_of_polynomial_mod(IntPolynomial(b), mod, size_limit);
  return g1 == g2;
}

} // namespace padlift
