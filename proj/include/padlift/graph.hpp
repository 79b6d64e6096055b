#ifndef PADLIFT_GRAPH_HPP
#define PADLIFT_GRAPH_HPP

#include <vector>

#include "padlift/padic.hpp"
#include "padlift/unramified.hpp"

namespace padlift {

inline constexpr long kDefaultSizeLimit = 1000000;

/// Finite map on [0, m) as its transition diagram. Every vertex has exactly
/// one outgoing edge; fixed points are self-loops.
class FunctionalGraph {
public:
  static FunctionalGraph from_successors(std::vector<long> succ);

  long size() const { return (long)succ_.size(); }
  long successor(long v) const { return succ_[v]; }
  const std::vector<long>& successors() const { return succ_; }

  bool operator==(const FunctionalGraph& o) const { return succ_ == o.succ_; }
  bool operator!=(const FunctionalGraph& o) const { return !(*this == o); }

private:
  explicit FunctionalGraph(std::vector<long> succ) : succ_(std::move(succ)) {}
  std::vector<long> succ_;
};

struct GraphStats {
  std::vector<long> indegree;
  std::vector<long> leaves;              // vertices of indegree 0, ascending
  std::vector<std::vector<long>> cycles; // each starts at its smallest vertex
  std::vector<long> tail_depth;          // distance to the eventual cycle
};

GraphStats stats(const FunctionalGraph& g);

/// Cycle containing a given seed vertex (possibly after a tail), in orbit
/// order starting at the first revisited vertex.
std::vector<long> cycle_of(const FunctionalGraph& g, long seed);

/// Base-p positional value of a digit tuple, least significant first.
BigInt encode(const std::vector<long>& digits, long p);
std::vector<long> decode(const BigInt& x, long p, long n);

/// The p^n depth-n cylinders, centers 0..p^n-1, radius exponent n.
std::vector<Ball> cylinder_partition(long p, long n,
                                     long size_limit = kDefaultSizeLimit);

/// Which depth-m cylinder contains the depth-n one (m <= n): keeps the
/// first m digits of the center.
BigInt refine_center(const BigInt& center, long p, long m);

/// Direct product on X1 x X2 with row-major index (x1, x2) -> x1*|X2| + x2.
FunctionalGraph graph_product(const FunctionalGraph& g1,
                              const FunctionalGraph& g2,
                              long size_limit = kDefaultSizeLimit);

/// successor[x] = P(x) mod m on [0, m).
FunctionalGraph graph_of_polynomial_mod(const IntPolynomial& P, const BigInt& m,
                                        long size_limit = kDefaultSizeLimit);

/// Induced map of P on the residue field F_{p^f}, vertices indexed per
/// residue_index, plus its stats. Demonstrates indegree growth under
/// horizontal extension.
struct ExtensionGraph {
  FunctionalGraph graph;
  GraphStats statistics;
};
ExtensionGraph indegree_under_extension(const IntPolynomial& P, long p, long f,
                                        long size_limit = kDefaultSizeLimit);

} // namespace padlift

#endif
