#ifndef PADLIFT_INTERPRETER_HPP
#define PADLIFT_INTERPRETER_HPP

#include <optional>
#include <string>
#include <vector>

#include "padlift/graph.hpp"
#include "padlift/padic.hpp"
#include "padlift/unramified.hpp"

namespace padlift {

/// Source balls (pairwise disjoint), an index transition tau, and target
/// balls; |balls| = |targets| and tau is total on indices.
struct BallSystem {
  long p = 2;
  std::vector<Ball> balls;
  std::vector<long> tau;
  std::vector<Ball> targets;

  static BallSystem make(long p, std::vector<Ball> balls, std::vector<long> tau,
                         std::vector<Ball> targets);
};

/// Source cylinders at the given depth with centers 0..g.size-1 and tau the
/// successor map; requires p^depth >= g.size so the states embed.
BallSystem ball_system_from_graph(const FunctionalGraph& g, long p, long depth);

/// One affine piece per ball: psi_i(z) = b_{tau(i)} + u_i (z - a_i) with
/// |u_i| = target radius / source radius, so each piece maps its ball onto
/// its target exactly.
struct PiecewiseAffine {
  std::vector<BigRat> slopes; // valuation(u_i) = t_exp - r_exp exactly
  std::vector<RatPolynomial> pieces;
};

PiecewiseAffine synthesize_piecewise_affine(const BallSystem& bs);

/// The unique degree <= N-1 polynomial through (a_i, b_{tau(i)}), exact over
/// rationals. Non-p-integral coefficients are a warning, not an error: the
/// interpolant matches centers only and need not map balls.
struct Interpolant {
  RatPolynomial poly;
  std::vector<Valuation> coefficient_valuations;
  bool p_integral = true;
};

Interpolant interpolate_at_centers(const BallSystem& bs);

enum class DominanceStatus {
  Pass,
  Fail,                 // some higher coefficient is too large
  DegenerateLinearTerm, // c_1 = 0 at the center
  Inconclusive,         // a truncated-zero coefficient blocks the comparison
};

struct DominanceVerdict {
  DominanceStatus status = DominanceStatus::Fail;
  Valuation linear_valuation;    // v(c_1) when not degenerate
  long violating_index = -1;     // k with v(c_k) + (k-1) n <= v(c_1) on Fail
  bool passed() const { return status == DominanceStatus::Pass; }
};

/// Pass iff for all k >= 2: v(c_k) + (k-1) n > v(c_1), coefficients
/// recentered at the ball's center, exact integer comparisons throughout.
DominanceVerdict check_linear_dominance(const IntPolynomial& f, const Ball& b);
DominanceVerdict check_linear_dominance(const RatPolynomial& f, const Ball& b);
/// Valuation-level core; AtLeast entries yield Inconclusive instead of Pass.
DominanceVerdict check_linear_dominance(const std::vector<Valuation>& coeff_vals,
                                        long radius_exp);

/// Under passing dominance the image is exactly B(f(a), r * |c_1|).
Ball image_ball(const IntPolynomial& f, const Ball& b);

enum class InterpretationKind { Contractive, Indifferent, Expansive };

std::string to_string(InterpretationKind k);

struct InterpretationType {
  InterpretationKind kind = InterpretationKind::Indifferent;
  long sigma_exponent = 0; // sigma_i = p^{-sigma_exponent}
  bool image_meets_target = false;
  bool image_inside_target = false;
  bool image_equals_target = false;
  // Without dominance the image need not be a ball; the verdict then comes
  // from exhaustive residue enumeration at finite depth. Meets/inside stay
  // exact facts; equals is evidence only in that mode.
  bool enumerated_only = false;
};

/// sigma-exponent = (source r-exp + v(c_1)) - target r-exp; positive is
/// contractive, zero indifferent, negative expansive. When dominance fails
/// the classification falls back to enumeration (enumerated_only set) with
/// the sigma-exponent taken from the smallest ball covering the image.
InterpretationType classify_ball(const IntPolynomial& f, const Ball& source,
                                 const Ball& target);

struct CommutationResult {
  bool commutes = true;
  long witness = -1;       // first state where f(x) mod p^depth != successor
  long surplus_total = 0;  // residues >= g.size (unconstrained cylinders)
  long surplus_into_states = 0;
};

/// f(x) mod p^depth == successor[x] for every state x; equivalent to every
/// state cylinder mapping inside its target cylinder. Surplus cylinders
/// (when g.size < p^depth) are reported, not constrained.
CommutationResult check_inclusion_by_commutation(const IntPolynomial& f,
                                                 const FunctionalGraph& g,
                                                 long p, long depth);

struct BallReport {
  DominanceVerdict dominance;
  std::optional<Ball> image;
  std::optional<InterpretationType> type;
  NormExponent eps; // certified bound on |f - psi_i| over the ball
  bool exact_here = false;
};

struct CertifiedReport {
  std::vector<BallReport> per_ball;
  bool interpreter = false;    // every image meets its target
  bool with_inclusion = false; // every image inside its target
  bool exact = false;          // every image equals its target
  bool eps_certificate = false;    // the perturbation-margin route passed
  long min_eps_exponent = 0;       // over balls with finite eps
  bool all_eps_infinite = false;
  long max_target_exponent = 0;
  long failing_ball = -1;
};

/// Exactness certificate: if min_i eps-exp(f - psi_i on B_i) strictly
/// exceeds max_i target-exp, every piece inherits dominance and maps its
/// ball onto its target; ties fail. Per-ball diagnosis either way.
CertifiedReport robust_exactness_certificate(const IntPolynomial& f,
                                             const PiecewiseAffine& psi,
                                             const BallSystem& bs);

struct MultiplierEntry {
  long ball_index = -1;
  Valuation multiplier_valuation;
  InterpretationKind stability = InterpretationKind::Indifferent;
  bool matches_radius_ratio = false; // v(lambda) == t_exp - r_exp
};

/// Per fixed ball (tau(i) = i, dominance passing): |f'(center)| and its
/// stability class; for exact interpreters v(lambda) equals the exponent of
/// target radius / source radius.
std::vector<MultiplierEntry> multiplier_report(const IntPolynomial& f,
                                               const BallSystem& bs);

enum class ReductionStatus { StrictGoodMatches, StrictGoodMismatch, NotStrict };

struct ReductionVerdict {
  ReductionStatus status;
  long mismatch_vertex = -1;
  std::string reason;
};

/// Strict good reduction for a polynomial: integral coefficients and unit
/// leading coefficient (degree preserved mod p); then the induced residue
/// map must equal g vertex by vertex (residue_index order).
ReductionVerdict good_reduction_check(const IntPolynomial& f,
                                      const FunctionalGraph& g,
                                      const ContextPtr& ctx);

/// Multiplier valuations over fixed balls, in ball order; equal vectors on
/// interpreters in the same stratum. Requires a report certifying at least
/// an interpreter with inclusion.
std::vector<Valuation> stratum_signature(const IntPolynomial& f,
                                         const BallSystem& bs,
                                         const CertifiedReport& report);

/// sigma^{-1} o f o sigma for sigma(z) = alpha z + beta, expanded exactly;
/// alpha must be a p-unit so sigma is an isometry. Denominators are powers
/// of alpha, hence p-units, and all valuations stay exact.
RatPolynomial conjugate_affine_isometry(const IntPolynomial& f,
                                        const BigInt& alpha, const BigInt& beta,
                                        long p);

} // namespace padlift

#endif
