#include "padlift/jobs.hpp"

#include <cstdlib>
#include <sstream>

#include "padlift/arith.hpp"
#include "padlift/interpreter.hpp"
#include "padlift/parse.hpp"
#include "padlift/unramified.hpp"

namespace padlift {

using nlohmann::json;

std::string to_dot(const FunctionalGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (long v = 0; v < g.size(); ++v)
    os << "  " << v << " -> " << g.successor(v) << ";\n";
  os << "}\n";
  return os.str();
}

long default_size_limit() {
  if (const char* env = std::getenv("PADIC_LIFT_SIZE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultSizeLimit;
}

namespace {

long require_long(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(ErrorCode::InvalidInput, "job: missing integer field '" + key + "'");
  return j[key].get<long>();
}

long get_long(const json& j, const std::string& key, long dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer())
    fail(ErrorCode::InvalidInput, "job: field '" + key + "' must be an integer");
  return j[key].get<long>();
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_string())
    fail(ErrorCode::InvalidInput, "job: missing string field '" + key + "'");
  return j[key].get<std::string>();
}

IntPolynomial require_poly(const json& j, const std::string& key) {
  return parse_polynomial(require_string(j, key));
}

FunctionalGraph load_graph(const json& job, long size_limit) {
  if (!job.contains("graph"))
    fail(ErrorCode::InvalidInput, "job: missing 'graph'");
  const json& g = job["graph"];
  if (g.contains("successors")) {
    if (!g["successors"].is_array())
      fail(ErrorCode::InvalidInput, "graph: 'successors' must be an array");
    std::vector<long> succ;
    for (const auto& e : g["successors"]) {
      if (!e.is_number_integer())
        fail(ErrorCode::InvalidInput, "graph: successors must be integers");
      succ.push_back(e.get<long>());
    }
    if ((long)succ.size() > size_limit)
      fail(ErrorCode::SizeLimit, "graph exceeds size limit");
    if (g.contains("m") && require_long(g, "m") != (long)succ.size())
      fail(ErrorCode::InvalidInput, "graph: 'm' disagrees with table length");
    return FunctionalGraph::from_successors(std::move(succ));
  }
  if (g.contains("polynomial")) {
    IntPolynomial P = require_poly(g, "polynomial");
    long m = require_long(g, "modulus");
    return graph_of_polynomial_mod(P, BigInt(m), size_limit);
  }
  fail(ErrorCode::InvalidInput, "graph: need 'successors' or 'polynomial'");
}

json ball_json(const Ball& b) {
  return json{{"center", b.center.str()}, {"radius_exp", b.radius_exp}};
}

json valuation_json(const Valuation& v) { return v.to_string(); }

json graph_json(const FunctionalGraph& g) {
  return json{{"m", g.size()}, {"successors", g.successors()}};
}

std::string dominance_name(DominanceStatus s) {
  switch (s) {
  case DominanceStatus::Pass: return "pass";
  case DominanceStatus::Fail: return "fail";
  case DominanceStatus::DegenerateLinearTerm: return "degenerate-linear-term";
  default: return "inconclusive";
  }
}

json rational_json(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

JobResult cmd_encode(const json& job, long size_limit) {
  FunctionalGraph g = load_graph(job, size_limit);
  long p = require_long(job, "p");
  long depth = require_long(job, "depth");
  BallSystem bs = ball_system_from_graph(g, p, depth);
  json balls = json::array();
  for (size_t i = 0; i < bs.balls.size(); ++i) {
    json b = ball_json(bs.balls[i]);
    b["index"] = i;
    b["tau"] = bs.tau[i];
    balls.push_back(b);
  }
  json rep{{"command", "encode"},
           {"p", p},
           {"depth", depth},
           {"balls", balls},
           {"surplus_cylinders", (pow_int(p, depth) - g.size()).str()}};
  return JobResult{kJobOk, rep};
}

JobResult cmd_certify(const json& job, long size_limit) {
  IntPolynomial P = require_poly(job, "polynomial");
  long p = require_long(job, "p");
  long depth = require_long(job, "depth");
  long f = get_long(job, "f", 1);
  json rep{{"command", "certify"}, {"p", p}, {"depth", depth}, {"f", f}};
  FunctionalGraph g = load_graph(job, size_limit);
  if (f > 1) {
    if (depth != 1)
      fail(ErrorCode::InvalidInput, "certify: extension fields support depth 1");
    ContextPtr ctx = UnramifiedContext::make(p, f, get_long(job, "precision", 4));
    ReductionVerdict v = good_reduction_check(P, g, ctx);
    bool ok = v.status == ReductionStatus::StrictGoodMatches;
    rep["good_reduction"] = v.status == ReductionStatus::NotStrict ? "not-strict"
                            : ok ? "strict-matches"
                                 : "strict-mismatch";
    if (v.mismatch_vertex >= 0) rep["mismatch_vertex"] = v.mismatch_vertex;
    if (!v.reason.empty()) rep["reason"] = v.reason;
    rep["exact"] = ok;
    return JobResult{ok ? kJobOk : kJobCertificationFailed, rep};
  }
  BallSystem bs = ball_system_from_graph(g, p, depth);
  PiecewiseAffine psi = synthesize_piecewise_affine(bs);
  CertifiedReport cert = robust_exactness_certificate(P, psi, bs);
  CommutationResult comm = check_inclusion_by_commutation(P, g, p, depth);
  json per_ball = json::array();
  for (size_t i = 0; i < cert.per_ball.size(); ++i) {
    const BallReport& br = cert.per_ball[i];
    json b{{"index", i},
           {"dominance", dominance_name(br.dominance.status)},
           {"eps_exponent", br.eps.to_string()},
           {"exact", br.exact_here}};
    if (br.image) b["image"] = ball_json(*br.image);
    if (br.type) {
      b["type"] = to_string(br.type->kind);
      b["sigma_exponent"] = br.type->sigma_exponent;
    }
    per_ball.push_back(b);
  }
  json mults = json::array();
  for (const auto& m : multiplier_report(P, bs))
    mults.push_back(json{{"ball", m.ball_index},
                         {"valuation", valuation_json(m.multiplier_valuation)},
                         {"stability", to_string(m.stability)}});
  rep["per_ball"] = per_ball;
  rep["exact"] = cert.exact;
  rep["with_inclusion"] = cert.with_inclusion;
  rep["interpreter"] = cert.interpreter;
  rep["commutes"] = comm.commutes;
  if (comm.witness >= 0) rep["commutation_witness"] = comm.witness;
  rep["multipliers"] = mults;
  if (cert.failing_ball >= 0) rep["failing_ball"] = cert.failing_ball;
  return JobResult{cert.exact ? kJobOk : kJobCertificationFailed, rep};
}

JobResult cmd_synthesize(const json& job, long size_limit) {
  FunctionalGraph g = load_graph(job, size_limit);
  long p = require_long(job, "p");
  long depth = require_long(job, "depth");
  BallSystem bs = ball_system_from_graph(g, p, depth);
  PiecewiseAffine psi = synthesize_piecewise_affine(bs);
  Interpolant interp = interpolate_at_centers(bs);
  json pieces = json::array();
  for (size_t i = 0; i < psi.pieces.size(); ++i) {
    json coeffs = json::array();
    for (const auto& c : psi.pieces[i].coeffs()) coeffs.push_back(rational_json(c));
    pieces.push_back(json{{"index", i},
                          {"slope", rational_json(psi.slopes[i])},
                          {"coefficients", coeffs}});
  }
  json icoeffs = json::array(), ivals = json::array();
  for (const auto& c : interp.poly.coeffs()) icoeffs.push_back(rational_json(c));
  for (const auto& v : interp.coefficient_valuations)
    ivals.push_back(valuation_json(v));
  json rep{{"command", "synthesize"},
           {"p", p},
           {"depth", depth},
           {"pieces", pieces},
           {"interpolant",
            json{{"coefficients", icoeffs},
                 {"coefficient_valuations", ivals},
                 {"p_integral", interp.p_integral}}}};
  if (!interp.p_integral)
    rep["warnings"] = json::array(
        {"interpolant has a non-p-integral coefficient; ball mapping "
         "properties are not implied"});
  return JobResult{kJobOk, rep};
}

JobResult cmd_classify(const json& job, long size_limit) {
  FunctionalGraph g = load_graph(job, size_limit);
  IntPolynomial P = require_poly(job, "polynomial");
  long p = require_long(job, "p");
  long depth = require_long(job, "depth");
  BallSystem bs = ball_system_from_graph(g, p, depth);
  json balls = json::array();
  for (size_t i = 0; i < bs.balls.size(); ++i) {
    DominanceVerdict d = check_linear_dominance(P, bs.balls[i]);
    json b{{"index", i}, {"dominance", dominance_name(d.status)}};
    if (d.violating_index >= 0) b["violating_index"] = d.violating_index;
    if (d.passed()) {
      InterpretationType t = classify_ball(P, bs.balls[i], bs.targets[bs.tau[i]]);
      b["type"] = to_string(t.kind);
      b["sigma_exponent"] = t.sigma_exponent;
      b["image"] = ball_json(image_ball(P, bs.balls[i]));
      b["image_meets_target"] = t.image_meets_target;
      b["image_inside_target"] = t.image_inside_target;
      b["image_equals_target"] = t.image_equals_target;
    }
    balls.push_back(b);
  }
  json rep{{"command", "classify"}, {"p", p}, {"depth", depth}, {"balls", balls}};
  return JobResult{kJobOk, rep};
}

JobResult cmd_dcrt(const json& job, long size_limit) {
  std::string mode = job.contains("mode") ? require_string(job, "mode")
                                          : std::string("decompose");
  json rep{{"command", "dcrt"}, {"mode", mode}};
  if (mode == "decompose") {
    FunctionalGraph g = load_graph(job, size_limit);
    CpVerdict cp = is_congruence_preserving(g);
    rep["congruence_preserving"] = cp.is_cp;
    if (!cp.is_cp) {
      rep["witness"] =
          json{{"divisor", cp.divisor}, {"x", cp.x}, {"y", cp.y}};
      return JobResult{kJobCertificationFailed, rep};
    }
    DcrtDecomposition dec = dcrt_decompose(g);
    json comps = json::array(), dots = json::array();
    for (size_t i = 0; i < dec.components.size(); ++i) {
      json c = graph_json(dec.components[i]);
      c["p"] = dec.moduli[i].p;
      c["k"] = dec.moduli[i].k;
      comps.push_back(c);
      std::ostringstream name;
      name << "component_mod_" << dec.moduli[i].value;
      dots.push_back(json{{"name", name.str()},
                          {"content", to_dot(dec.components[i], name.str())}});
    }
    rep["components"] = comps;
    rep["dot"] = dots;
    return JobResult{kJobOk, rep};
  }
  if (mode == "assemble") {
    if (!job.contains("components") || !job["components"].is_array())
      fail(ErrorCode::InvalidInput, "dcrt assemble: missing 'components'");
    std::vector<PrimePower> moduli;
    std::vector<FunctionalGraph> comps;
    for (const auto& c : job["components"]) {
      json wrapped{{"graph", c}};
      FunctionalGraph g = load_graph(wrapped, size_limit);
      auto fac = factor_prime_powers(g.size());
      if (fac.size() != 1)
        fail(ErrorCode::InvalidInput,
             "dcrt assemble: component modulus must be a prime power");
      moduli.push_back(fac[0]);
      comps.push_back(std::move(g));
    }
    FunctionalGraph global = dcrt_assemble(moduli, comps);
    rep["graph"] = graph_json(global);
    rep["dot"] = json::array(
        {json{{"name", "assembled"}, {"content", to_dot(global, "assembled")}}});
    return JobResult{kJobOk, rep};
  }
  fail(ErrorCode::InvalidInput, "dcrt: mode must be decompose or assemble");
}

JobResult cmd_tower(const json& job, long size_limit) {
  IntPolynomial P = require_poly(job, "polynomial");
  long p = require_long(job, "p");
  long maxN = require_long(job, "max_n");
  long seed = get_long(job, "seed", 0);
  Tower t = build_tower(P, p, maxN, size_limit);
  TowerCompatibility comp = check_tower_compatibility(t);
  LiftCheckWitness lift = locally_constant_lift_check(t);
  std::vector<long> growth;
  for (const auto& level : t.levels)
    growth.push_back((long)cycle_of(level, seed % level.size()).size());
  json dots = json::array();
  for (size_t n = 0; n < t.levels.size(); ++n) {
    std::ostringstream name;
    name << "level_" << (n + 1);
    dots.push_back(json{{"name", name.str()},
                        {"content", to_dot(t.levels[n], name.str())}});
  }
  json rep{{"command", "tower"},
           {"p", p},
           {"max_n", maxN},
           {"seed", seed},
           {"compatible", comp.compatible},
           {"locally_constant_lift", lift.ok},
           {"cycle_growth", growth},
           {"dot", dots}};
  return JobResult{kJobOk, rep};
}

JobResult cmd_hensel(const json& job, long) {
  IntPolynomial P = require_poly(job, "polynomial");
  long p = require_long(job, "p");
  long xbar = require_long(job, "xbar");
  long m = require_long(job, "period");
  long targetN = require_long(job, "target_n");
  HenselLiftResult r = hensel_lift_cycle(P, p, BigInt(xbar), m, targetN);
  json rep{{"command", "hensel"},
           {"p", p},
           {"xbar", xbar},
           {"period", m},
           {"target_n", targetN}};
  switch (r.status) {
  case HenselStatus::Lifted: {
    json trace = json::array();
    for (const auto& x : r.trace) trace.push_back(x.str());
    rep["status"] = "lifted";
    rep["point"] = r.point.str();
    rep["trace"] = trace;
    return JobResult{kJobOk, rep};
  }
  case HenselStatus::Degenerate:
    rep["status"] = "degenerate";
    rep["multiplier_residue"] = r.multiplier_residue.str();
    return JobResult{kJobCertificationFailed, rep};
  default:
    rep["status"] = "not-exact-period";
    rep["divisor"] = r.divisor;
    return JobResult{kJobCertificationFailed, rep};
  }
}

JobResult cmd_profinite_check(const json& job, long size_limit) {
  IntPolynomial P = require_poly(job, "polynomial");
  long p = require_long(job, "p");
  long maxN = require_long(job, "max_n");
  long c_exp = get_long(job, "c_exp", 0);
  Tower t = build_tower(P, p, maxN, size_limit);
  TowerCompatibility comp = check_tower_compatibility(t);
  LiftCheckWitness lift = locally_constant_lift_check(t);
  std::vector<IntPolynomial> seq(t.levels.size(), P);
  CauchyVerdict cauchy = route2_cauchy_check(seq, t, c_exp);
  bool ok = comp.compatible && lift.ok && cauchy.pass;
  json rep{{"command", "profinite-check"},
           {"p", p},
           {"max_n", maxN},
           {"compatible", comp.compatible},
           {"locally_constant_lift", lift.ok},
           {"cauchy", cauchy.pass}};
  if (!cauchy.pass) rep["cauchy_reason"] = cauchy.reason;
  return JobResult{ok ? kJobOk : kJobCertificationFailed, rep};
}

JobResult cmd_rigidity(const json& job, long size_limit) {
  long c1 = require_long(job, "c1");
  long c2 = require_long(job, "c2");
  long p = require_long(job, "p");
  long n = require_long(job, "n");
  bool congruent = ((c1 - c2) % (long)pow_int(p, n)) == 0;
  bool identical = rigidity_check(BigInt(c1), BigInt(c2), p, n, size_limit);
  json rep{{"command", "rigidity"},
           {"c1", c1},
           {"c2", c2},
           {"p", p},
           {"n", n},
           {"congruent", congruent},
           {"identical", identical}};
  return JobResult{identical ? kJobOk : kJobCertificationFailed, rep};
}

} // namespace

JobResult run_job(const json& job) {
  try {
    if (!job.is_object())
      fail(ErrorCode::InvalidInput, "job: document must be a JSON object");
    long size_limit = get_long(job, "size_limit", default_size_limit());
    std::string cmd = require_string(job, "command");
    if (cmd == "encode") return cmd_encode(job, size_limit);
    if (cmd == "certify") return cmd_certify(job, size_limit);
    if (cmd == "synthesize") return cmd_synthesize(job, size_limit);
    if (cmd == "classify") return cmd_classify(job, size_limit);
    if (cmd == "dcrt") return cmd_dcrt(job, size_limit);
    if (cmd == "tower") return cmd_tower(job, size_limit);
    if (cmd == "hensel") return cmd_hensel(job, size_limit);
    if (cmd == "profinite-check") return cmd_profinite_check(job, size_limit);
    if (cmd == "rigidity") return cmd_rigidity(job, size_limit);
    fail(ErrorCode::InvalidInput, "job: unknown command '" + cmd + "'");
  } catch (const Error& e) {
    int status = kJobInternal;
    switch (e.code()) {
    case ErrorCode::InvalidInput:
    case ErrorCode::Precondition:
    case ErrorCode::NonUnit:
    case ErrorCode::Degenerate: status = kJobInvalidInput; break;
    case ErrorCode::SizeLimit: status = kJobSizeLimit; break;
    case ErrorCode::Internal: status = kJobInternal; break;
    }
    return JobResult{status, json{{"error", e.what()}}};
  } catch (const std::exception& e) {
    return JobResult{kJobInternal, json{{"error", e.what()}}};
  }
}

} // namespace padlift
