#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "padlift/graph.hpp"

using namespace padlift;

TEST_CASE("graph construction and validation") {
  auto g = FunctionalGraph::from_successors({1, 0, 1, 3});
  CHECK(g.size() == 4);
  CHECK(g.successor(2) == 1);
  CHECK_NOTHROW(FunctionalGraph::from_successors({0}));
  CHECK_NOTHROW(FunctionalGraph::from_successors({1, 2, 0}));
  CHECK_THROWS_AS(FunctionalGraph::from_successors({0, 4, 1}), Error);
  CHECK_THROWS_AS(FunctionalGraph::from_successors({-1}), Error);
  CHECK_THROWS_AS(FunctionalGraph::from_successors({}), Error);
}

TEST_CASE("stats of squaring on F_7") {
  // x -> x^2 mod 7; leaves are the non-quadratic residues
  auto g = FunctionalGraph::from_successors({0, 1, 4, 2, 2, 4, 1});
  GraphStats s = stats(g);
  CHECK(s.leaves == std::vector<long>{3, 5, 6});
  CHECK(std::accumulate(s.indegree.begin(), s.indegree.end(), 0L) == 7);
}

TEST_CASE("stats of x^2+1 mod 3") {
  auto g = FunctionalGraph::from_successors({1, 2, 2});
  GraphStats s = stats(g);
  REQUIRE(s.cycles.size() == 1);
  CHECK(s.cycles[0] == std::vector<long>{2});
  CHECK(s.tail_depth == std::vector<long>{2, 1, 0});
  CHECK(s.leaves == std::vector<long>{0});
}

TEST_CASE("stats of the identity graph") {
  auto g = FunctionalGraph::from_successors({0, 1, 2, 3});
  GraphStats s = stats(g);
  CHECK(s.cycles.size() == 4);
  CHECK(s.leaves.empty());
  for (long v = 0; v < 4; ++v) {
    CHECK(s.indegree[v] == 1);
    CHECK(s.tail_depth[v] == 0);
  }
}

TEST_CASE("every vertex reaches exactly one cycle") {
  auto g = FunctionalGraph::from_successors({1, 2, 3, 1, 3, 5, 0});
  GraphStats s = stats(g);
  std::set<long> cycle_vertices;
  for (const auto& c : s.cycles)
    for (long v : c) cycle_vertices.insert(v);
  for (long v = 0; v < g.size(); ++v) {
    CHECK((s.tail_depth[v] == 0) == (cycle_vertices.count(v) == 1));
    // walking tail_depth steps lands on the cycle
    long w = v;
    for (long i = 0; i < s.tail_depth[v]; ++i) w = g.successor(w);
    CHECK(cycle_vertices.count(w) == 1);
  }
}

TEST_CASE("cycle_of follows the orbit") {
  auto g = FunctionalGraph::from_successors({1, 2, 3, 1, 3, 5, 0});
  CHECK(cycle_of(g, 0) == std::vector<long>{1, 2, 3});
  CHECK(cycle_of(g, 5) == std::vector<long>{5});
  CHECK_THROWS_AS(cycle_of(g, 9), Error);
}

TEST_CASE("digit encoding") {
  CHECK(encode({1, 1}, 2) == 3);
  CHECK(encode({0, 1}, 2) == 2);
  CHECK(encode({2, 0, 1}, 3) == 11);
  CHECK_THROWS_AS(encode({2}, 2), Error);
  CHECK(decode(BigInt(11), 3, 3) == std::vector<long>{2, 0, 1});
  // bijection at p=2, n=3
  std::set<long> seen;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 2; ++b)
      for (long c = 0; c < 2; ++c) {
        BigInt v = encode({a, b, c}, 2);
        CHECK(decode(v, 2, 3) == std::vector<long>{a, b, c});
        seen.insert((long)v);
      }
  CHECK(seen.size() == 8);
}

TEST_CASE("cylinder partition") {
  auto part = cylinder_partition(2, 2);
  REQUIRE(part.size() == 4);
  for (long i = 0; i < 4; ++i) {
    CHECK(part[i].center == i);
    CHECK(part[i].radius_exp == 2);
  }
  auto depth1 = cylinder_partition(2, 1);
  REQUIRE(depth1.size() == 2);
  // pairwise disjoint, and each depth-2 ball refines exactly one depth-1 ball
  for (size_t i = 0; i < part.size(); ++i)
    for (size_t j = i + 1; j < part.size(); ++j)
      CHECK(ball_nesting(part[i], part[j]) == NestingRelation::Disjoint);
  for (const auto& b : part) {
    long inside = 0;
    for (const auto& c : depth1)
      if (ball_nesting(b, c) == NestingRelation::FirstInsideSecond) ++inside;
    CHECK(inside == 1);
    CHECK(refine_center(b.center, 2, 1) == b.center % 2);
  }
  CHECK_THROWS_AS(cylinder_partition(2, 10, 100), Error);
}

TEST_CASE("graph product indexing and periods") {
  auto two_cycle = FunctionalGraph::from_successors({1, 0});
  auto loop = FunctionalGraph::from_successors({0});
  auto three_cycle = FunctionalGraph::from_successors({1, 2, 0});
  CHECK(graph_product(two_cycle, loop) == two_cycle);
  CHECK(graph_product(two_cycle, three_cycle).size() == 6);
  // 2-cycle x 3-cycle is a single 6-cycle
  CHECK(cycle_of(graph_product(two_cycle, three_cycle), 0).size() == 6);
  // row-major successor: (x1, x2) -> x1*|X2| + x2
  auto prod = graph_product(two_cycle, three_cycle);
  CHECK(prod.successor(0 * 3 + 0) == 1 * 3 + 1);
  CHECK(prod.successor(1 * 3 + 2) == 0 * 3 + 0);
  // identity factor on the right leaves the left factor intact
  auto g = FunctionalGraph::from_successors({1, 2, 2});
  CHECK(graph_product(g, loop) == g);
}

TEST_CASE("product periods are lcms of factor periods") {
  auto g1 = FunctionalGraph::from_successors({1, 2, 0, 0, 4});
  auto g2 = FunctionalGraph::from_successors({1, 0, 3, 2});
  auto prod = graph_product(g1, g2);
  GraphStats s1 = stats(g1), s2 = stats(g2), sp = stats(prod);
  for (long x1 = 0; x1 < g1.size(); ++x1)
    for (long x2 = 0; x2 < g2.size(); ++x2) {
      long v = x1 * g2.size() + x2;
      bool periodic1 = s1.tail_depth[x1] == 0, periodic2 = s2.tail_depth[x2] == 0;
      bool periodic = sp.tail_depth[v] == 0;
      CHECK(periodic == (periodic1 && periodic2));
      if (periodic) {
        long l1 = (long)cycle_of(g1, x1).size();
        long l2 = (long)cycle_of(g2, x2).size();
        CHECK((long)cycle_of(prod, v).size() == std::lcm(l1, l2));
      }
    }
}

TEST_CASE("graphs of polynomials modulo m") {
  IntPolynomial sq1(std::vector<BigInt>{1, 0, 1}); // z^2 + 1
  CHECK(graph_of_polynomial_mod(sq1, BigInt(6)) ==
        FunctionalGraph::from_successors({1, 2, 5, 4, 5, 2}));
  IntPolynomial sq(std::vector<BigInt>{0, 0, 1});
  CHECK(graph_of_polynomial_mod(sq, BigInt(5)) ==
        FunctionalGraph::from_successors({0, 1, 4, 4, 1}));
  CHECK(graph_of_polynomial_mod(IntPolynomial::identity(), BigInt(7)) ==
        FunctionalGraph::from_successors({0, 1, 2, 3, 4, 5, 6}));
  CHECK_THROWS_AS(graph_of_polynomial_mod(sq, BigInt(0)), Error);
  CHECK_THROWS_AS(graph_of_polynomial_mod(sq, BigInt(1000), 100), Error);
}

TEST_CASE("indegrees grow under field extension") {
  IntPolynomial sq1(std::vector<BigInt>{1, 0, 1}); // z^2 + 1
  // x^2 = -1 has no solution mod 3, so 0 is a leaf over F_3
  auto e1 = indegree_under_extension(sq1, 3, 1);
  CHECK(e1.statistics.indegree[0] == 0);
  // but two square roots of -1 appear over F_9
  auto e2 = indegree_under_extension(sq1, 3, 2);
  CHECK(e2.statistics.indegree[0] == 2);
  // 2^2 + 1 = 5 = 0 mod 5 and 3^2 + 1 = 10: indegree 2 already over F_5
  auto e5 = indegree_under_extension(sq1, 5, 1);
  CHECK(e5.statistics.indegree[0] == 2);
  CHECK_THROWS_AS(indegree_under_extension(sq1, 3, 5), Error);
}
