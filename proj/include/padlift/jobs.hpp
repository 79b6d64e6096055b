#ifndef PADLIFT_JOBS_HPP
#define PADLIFT_JOBS_HPP

#include <string>

#include <json.hpp>

#include "padlift/graph.hpp"

namespace padlift {

/// DOT rendering with stable vertex order; fixed points appear as
/// self-loops.
std::string to_dot(const FunctionalGraph& g, const std::string& name);

/// Status values shared by the job runner, the C API, and CLI exit codes.
enum JobStatus : int {
  kJobOk = 0,
  kJobCertificationFailed = 2,
  kJobInvalidInput = 3,
  kJobSizeLimit = 4,
  kJobInternal = 5,
};

struct JobResult {
  int status = kJobOk;
  nlohmann::json report;
};

/// Run one job described by a JSON document:
///   {"command": "encode" | "certify" | "synthesize" | "classify" |
///               "dcrt" | "tower" | "hensel" | "profinite-check" |
///               "rigidity",
///    "graph": {"m": int, "successors": [..]} or
///             {"polynomial": "...", "modulus": int},
///    "polynomial": "...", "p": int, "f": int, "depth": int,
///    "precision": int, "max_n": int, "xbar": int, "period": int,
///    "c1": int, "c2": int, "mode": "...", "size_limit": int, ...}
/// Reports are deterministic: identical jobs yield identical JSON text.
/// Never throws; failures are encoded in status and report["error"].
JobResult run_job(const nlohmann::json& job);

/// Size cap applied when a job does not set one: the PADIC_LIFT_SIZE_LIMIT
/// environment variable, else 10^6.
long default_size_limit();

} // namespace padlift

#endif
