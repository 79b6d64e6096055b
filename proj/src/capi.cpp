#include "padlift.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "padlift/graph.hpp"
#include "padlift/jobs.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = (char*)std::malloc(s.size() + 1);
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int status_of(padlift::ErrorCode code) {
  switch (code) {
  case padlift::ErrorCode::SizeLimit: return PADLIFT_SIZE_LIMIT;
  case padlift::ErrorCode::Internal: return PADLIFT_INTERNAL;
  default: return PADLIFT_INVALID_INPUT;
  }
}

} // namespace

struct padlift_graph {
  padlift::FunctionalGraph graph;
};

extern "C" {

int padlift_run_job(const char* job_json, char** report_json) {
  g_last_error.clear();
  if (report_json) *report_json = nullptr;
  if (!job_json) {
    g_last_error = "null job document";
    return PADLIFT_INVALID_INPUT;
  }
  nlohmann::json job = nlohmann::json::parse(job_json, nullptr, false);
  if (job.is_discarded()) {
    g_last_error = "job document is not valid JSON";
    return PADLIFT_INVALID_INPUT;
  }
  padlift::JobResult r = padlift::run_job(job);
  if (r.status != PADLIFT_OK && r.report.contains("error"))
    g_last_error = r.report["error"].get<std::string>();
  if (report_json) *report_json = dup_string(r.report.dump(2));
  return r.status;
}

const char* padlift_last_error(void) { return g_last_error.c_str(); }

void padlift_string_free(char* s) { std::free(s); }

int padlift_graph_create(const long* successors, long size,
                         padlift_graph** out) {
  g_last_error.clear();
  if (out) *out = nullptr;
  if (!successors || !out || size < 1) {
    g_last_error = "invalid arguments";
    return PADLIFT_INVALID_INPUT;
  }
  try {
    std::vector<long> succ(successors, successors + size);
    *out = new padlift_graph{
        padlift::FunctionalGraph::from_successors(std::move(succ))};
    return PADLIFT_OK;
  } catch (const padlift::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  }
}

void padlift_graph_destroy(padlift_graph* g) { delete g; }

long padlift_graph_size(const padlift_graph* g) {
  return g ? g->graph.size() : 0;
}

long padlift_graph_successor(const padlift_graph* g, long vertex) {
  if (!g || vertex < 0 || vertex >= g->graph.size()) return -1;
  return g->graph.successor(vertex);
}

int padlift_graph_to_dot(const padlift_graph* g, const char* name, char** out) {
  g_last_error.clear();
  if (out) *out = nullptr;
  if (!g || !out) {
    g_last_error = "invalid arguments";
    return PADLIFT_INVALID_INPUT;
  }
  *out = dup_string(padlift::to_dot(g->graph, name ? name : "graph"));
  return PADLIFT_OK;
}

const char* padlift_version(void) { return "0.1.0"; }

} // extern "C"
