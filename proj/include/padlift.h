/* C interface to the p-adic lifting library. All functions return a status
 * code; 0 is success. Strings returned through out-parameters are owned by
 * the caller and released with padlift_string_free. */
#ifndef PADLIFT_H
#define PADLIFT_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the command-line tool uses the same values as exit codes. */
enum {
  PADLIFT_OK = 0,
  PADLIFT_CERTIFICATION_FAILED = 2,
  PADLIFT_INVALID_INPUT = 3,
  PADLIFT_SIZE_LIMIT = 4,
  PADLIFT_INTERNAL = 5
};

/* Run one job described by a JSON document (see README for the schema).
 * On return *report_json holds the report as a JSON string, also on
 * non-success statuses when a diagnostic report exists; it may be null on
 * invalid input. Reports are deterministic for identical jobs. */
int padlift_run_job(const char* job_json, char** report_json);

/* Message for the most recent failure on this thread; empty on success. */
const char* padlift_last_error(void);

void padlift_string_free(char* s);

/* Opaque functional-graph handle for direct embedding. */
typedef struct padlift_graph padlift_graph;

/* successors: array of `size` vertex indices in [0, size). */
int padlift_graph_create(const long* successors, long size,
                         padlift_graph** out);
void padlift_graph_destroy(padlift_graph* g);
long padlift_graph_size(const padlift_graph* g);
/* Returns the successor, or -1 if the vertex is out of range. */
long padlift_graph_successor(const padlift_graph* g, long vertex);
int padlift_graph_to_dot(const padlift_graph* g, const char* name, char** out);

const char* padlift_version(void);

#ifdef __cplusplus
}
#endif

#endif
