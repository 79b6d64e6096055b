#ifndef PADLIFT_ARITH_HPP
#define PADLIFT_ARITH_HPP

#include <optional>
#include <vector>

#include "padlift/graph.hpp"
#include "padlift/padic.hpp"

namespace padlift {

/// Congruence-preservation of a self-map of Z/mZ: x = y mod d implies
/// f(x) = f(y) mod d for every divisor d of m. A failure carries a
/// checkable witness.
struct CpVerdict {
  bool is_cp = true;
  long divisor = 0; // witness d | m, d > 1
  long x = 0, y = 0; // x = y mod d but f(x) != f(y) mod d
};

CpVerdict is_congruence_preserving(const FunctionalGraph& g,
                                   long size_cap = 10000);

struct PrimePower {
  long p;
  long k;
  long value; // p^k
};

/// Factor m into prime powers, ascending primes.
std::vector<PrimePower> factor_prime_powers(long m);

/// Components of a congruence-preserving map over each prime-power divisor,
/// with the CRT bijection verified edge by edge against the row-major
/// product graph.
struct DcrtDecomposition {
  std::vector<PrimePower> moduli;
  std::vector<FunctionalGraph> components;
};

DcrtDecomposition dcrt_decompose(const FunctionalGraph& g);

/// Map on Z/mZ (m the product of the pairwise-coprime component moduli)
/// whose reduction to each modulus is the given component.
FunctionalGraph dcrt_assemble(const std::vector<PrimePower>& moduli,
                              const std::vector<FunctionalGraph>& components);

/// Pi o Phi = F o Pi over all residue tuples: the local maps run one step
/// componentwise, the global map runs one step on the CRT-combined residue.
struct ProductPhaseVerdict {
  bool commutes = true;
  std::vector<long> witness_tuple; // one residue per factor on failure
};

ProductPhaseVerdict verify_product_phase_space(
    const std::vector<IntPolynomial>& local_polys,
    const std::vector<PrimePower>& moduli, const FunctionalGraph& global);

/// Levels n = 1..maxN of the graphs of P mod p^n; reduction mod p^n of
/// level n+1 always equals level n for polynomial maps.
struct Tower {
  long p;
  std::vector<FunctionalGraph> levels;
};

Tower build_tower(const IntPolynomial& P, long p, long maxN,
                  long size_limit = kDefaultSizeLimit);

struct TowerCompatibility {
  bool compatible = true;
  long level = -1;   // n such that level n+1 fails to reduce onto level n
  long residue = -1; // witness residue mod p^{n+1}
};

TowerCompatibility check_tower_compatibility(const Tower& t);

enum class HenselStatus { Lifted, Degenerate, NotExactPeriod };

struct HenselLiftResult {
  HenselStatus status;
  long period = 0;
  long divisor = 0;             // NotExactPeriod: proper divisor fixing xbar
  BigInt multiplier_residue;    // Degenerate: mu = 1 mod p witness
  BigInt point;                 // Lifted: residue mod p^targetN
  std::vector<BigInt> trace;    // Lifted: residue at each level 1..targetN
};

/// Lift an exact period-m residue cycle of P mod p to precision targetN by
/// one Newton step per level on F(z) = P^m(z) - z; the orbit derivative mu
/// must differ from 1 mod p.
HenselLiftResult hensel_lift_cycle(const IntPolynomial& P, long p,
                                   const BigInt& xbar, long m, long targetN);

/// Length of the cycle containing the seed at each level 1..maxN; strictly
/// growing lengths signal a degenerate (parabolic) cycle.
std::vector<long> detect_parabolic_growth(const IntPolynomial& P, long p,
                                          long maxN, long seed = 0,
                                          long size_limit = kDefaultSizeLimit);

struct LiftCheckWitness {
  bool ok = true;
  long level = -1;
  BigInt residue;
};

/// Locally-constant lifts of the levels converge: the inclusion of level n
/// agrees with the inclusion of level n+1 to p-adic distance p^{-n},
/// checked on all residues mod p^{n+1}.
LiftCheckWitness locally_constant_lift_check(const Tower& t);

struct CauchyVerdict {
  bool pass = true;
  long level = -1;
  std::string reason;
};

/// Certifies a polynomial approximation sequence for the tower: seq[n]
/// induces level n+1's predecessor... specifically seq[n] matches level n+1
/// on residues, and consecutive differences have Gauss-norm exponent at
/// least n+1 - C_exp on the unit ball.
CauchyVerdict route2_cauchy_check(const std::vector<IntPolynomial>& seq,
                                  const Tower& t, long C_exp);

/// Same cylinder graphs for z^2 + c1 and z^2 + c2 mod p^n whenever
/// c1 = c2 mod p^n (the converse is not asserted).
bool rigidity_check(const BigInt& c1, const BigInt& c2, long p, long n,
                    long size_limit = kDefaultSizeLimit);

} // namespace padlift

#endif
