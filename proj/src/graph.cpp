#include "padlift/graph.hpp"

#include <algorithm>
#include <sstream>

namespace padlift {

FunctionalGraph FunctionalGraph::from_successors(std::vector<long> succ) {
  long m = (long)succ.size();
  if (m == 0) fail(ErrorCode::InvalidInput, "graph: empty successor table");
  for (long v = 0; v < m; ++v) {
    if (succ[v] < 0 || succ[v] >= m) {
      std::ostringstream os;
      os << "graph: successor out of range at vertex " << v;
      fail(ErrorCode::InvalidInput, os.str());
    }
  }
  return FunctionalGraph(std::move(succ));
}

GraphStats stats(const FunctionalGraph& g) {
  long m = g.size();
  GraphStats s;
  s.indegree.assign(m, 0);
  for (long v = 0; v < m; ++v) ++s.indegree[g.successor(v)];
  for (long v = 0; v < m; ++v)
    if (s.indegree[v] == 0) s.leaves.push_back(v);

  // single-pass cycle detection by color-marking paths
  std::vector<long> state(m, 0); // 0 unseen, 1 on current path, 2 done
  std::vector<long> on_cycle(m, 0);
  s.tail_depth.assign(m, -1);
  for (long start = 0; start < m; ++start) {
    if (state[start] != 0) continue;
    std::vector<long> path;
    long v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = g.successor(v);
    }
    if (state[v] == 1) {
      // found a new cycle starting at v
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<long> cyc(it, path.end());
      auto min_it = std::min_element(cyc.begin(), cyc.end());
      std::rotate(cyc.begin(), min_it, cyc.end());
      for (long c : cyc) on_cycle[c] = 1;
      s.cycles.push_back(std::move(cyc));
    }
    for (long u : path) state[u] = 2;
  }
  std::sort(s.cycles.begin(), s.cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });

  // tail depths by walking until a known depth (cycle vertices are 0)
  for (long v = 0; v < m; ++v)
    if (on_cycle[v]) s.tail_depth[v] = 0;
  for (long start = 0; start < m; ++start) {
    if (s.tail_depth[start] >= 0) continue;
    std::vector<long> path;
    long v = start;
    while (s.tail_depth[v] < 0) {
      path.push_back(v);
      v = g.successor(v);
    }
    long d = s.tail_depth[v];
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      s.tail_depth[*it] = ++d;
  }
  return s;
}

std::vector<long> cycle_of(const FunctionalGraph& g, long seed) {
  if (seed < 0 || seed >= g.size())
    fail(ErrorCode::InvalidInput, "cycle_of: seed out of range");
  std::vector<long> seen(g.size(), -1);
  std::vector<long> path;
  long v = seed;
  while (seen[v] < 0) {
    seen[v] = (long)path.size();
    path.push_back(v);
    v = g.successor(v);
  }
  return std::vector<long>(path.begin() + seen[v], path.end());
}

BigInt encode(const std::vector<long>& digits, long p) {
  BigInt x = 0, pw = 1;
  for (long d : digits) {
    if (d < 0 || d >= p) fail(ErrorCode::InvalidInput, "encode: digit out of range");
    x += d * pw;
    pw *= p;
  }
  return x;
}

std::vector<long> decode(const BigInt& x, long p, long n) {
  if (x < 0 || x >= pow_int(p, n))
    fail(ErrorCode::InvalidInput, "decode: value out of range");
  std::vector<long> d(n);
  BigInt t = x;
  for (long i = 0; i < n; ++i) {
    d[i] = (long)(t % p);
    t /= p;
  }
  return d;
}

std::vector<Ball> cylinder_partition(long p, long n, long size_limit) {
  if (n < 0) fail(ErrorCode::InvalidInput, "cylinder_partition: negative depth");
  BigInt count = pow_int(p, n);
  if (count > size_limit)
    fail(ErrorCode::SizeLimit, "cylinder_partition: p^n exceeds size limit");
  std::vector<Ball> out;
  for (BigInt c = 0; c < count; ++c) out.push_back(Ball{p, c, n});
  return out;
}

BigInt refine_center(const BigInt& center, long p, long m) {
  return center % pow_int(p, m);
}

FunctionalGraph graph_product(const FunctionalGraph& g1,
                              const FunctionalGraph& g2, long size_limit) {
  long m1 = g1.size(), m2 = g2.size();
  if ((BigInt)m1 * m2 > size_limit)
    fail(ErrorCode::SizeLimit, "graph_product: product exceeds size limit");
  std::vector<long> succ(m1 * m2);
  for (long x1 = 0; x1 < m1; ++x1)
    for (long x2 = 0; x2 < m2; ++x2)
      succ[x1 * m2 + x2] = g1.successor(x1) * m2 + g2.successor(x2);
  return FunctionalGraph::from_successors(std::move(succ));
}

FunctionalGraph graph_of_polynomial_mod(const IntPolynomial& P, const BigInt& m,
                                        long size_limit) {
  if (m < 1) fail(ErrorCode::InvalidInput, "graph_of_polynomial_mod: m < 1");
  if (m > size_limit)
    fail(ErrorCode::SizeLimit, "graph_of_polynomial_mod: m exceeds size limit");
  std::vector<long> succ((long)m);
  for (BigInt x = 0; x < m; ++x)
    succ[(long)x] = (long)P.eval_mod(x, m);
  return FunctionalGraph::from_successors(std::move(succ));
}

ExtensionGraph indegree_under_extension(const IntPolynomial& P, long p, long f,
                                        long size_limit) {
  if (f > 4) fail(ErrorCode::InvalidInput, "indegree_under_extension: f > 4");
  ContextPtr ctx = UnramifiedContext::make(p, f, 1);
  BigInt q = ctx->q();
  if (q > size_limit)
    fail(ErrorCode::SizeLimit, "indegree_under_extension: q exceeds size limit");
  auto elems = residue_field_elements(ctx);
  std::vector<long> succ(elems.size());
  for (size_t i = 0; i < elems.size(); ++i)
    succ[i] = residue_index(eval_poly(P, elems[i]));
  FunctionalGraph g = FunctionalGraph::from_successors(std::move(succ));
  GraphStats s = stats(g);
  return ExtensionGraph{std::move(g), std::move(s)};
}

} // namespace padlift
