#pragma once

#include <optional>
#include <vector>

#include "roecart/space.hpp"

namespace roecart {

// Bipartite graph in left-adjacency form.  Lists are kept sorted so that the
// matching routines visit edges in one canonical order.
struct BipartiteGraph {
  BipartiteGraph(int left, int right, std::vector<std::vector<int>> adjacency);

  int left_size = 0;
  int right_size = 0;
  std::vector<std::vector<int>> adj;  // adj[l]: sorted right neighbours of l
};

struct Matching {
  std::vector<int> left_to_right;  // -1 where unmatched
  std::vector<int> right_to_left;
  int size = 0;
};

// Either a left-saturating matching, or a deficient set D of left vertices
// with |N(D)| < |D|.  Exactly one branch is populated.
struct HallResult {
  std::optional<Matching> matching;
  std::vector<int> deficient_set;  // sorted
  std::vector<int> neighborhood;   // N(deficient_set), sorted
};

// Maximum matching by Hopcroft-Karp over the canonical vertex order.  When
// the left side is not saturated, the deficient set is read off the final
// alternating-layer structure: left vertices reachable from the unmatched
// ones along alternating paths.
HallResult hall_matching(const BipartiteGraph& g);

// Given injections f: Y -> X and g: X -> Y, produce the bijection h: X -> Y
// with h(x) = g(x) except along chains entered from a point of Y outside
// g(X), where h(x) = f^{-1}(x).  Chains are traced from the lowest-index
// unmatched starts, so the output is canonical.
std::vector<int> konig_csb(const std::vector<int>& f, const std::vector<int>& g);

struct BijectifyResult {
  std::optional<std::vector<int>> h;  // bijection with d(f(x), h(x)) <= achieved_r
  double achieved_r = 0.0;            // last radius attempted
  std::vector<int> deficient_set;     // certificate (indices in X) when h is absent
  std::vector<int> neighborhood;      // its image-side neighbourhood in Y
};

// Turn a map f: X -> Y between equal-size spaces into a nearby bijection.
// Builds the displacement graph {(x, y) : d(f(x), y) <= r} and matches; on
// failure r escalates by doubling (from the smallest positive distance of Y
// when r = 0).  Escalation stops below diam(Y): at r >= diam(Y) every
// bijection qualifies, so success there certifies nothing, and the last
// blocking certificate is returned instead.
BijectifyResult bijectify(const std::vector<int>& f, const FiniteSpace& X,
                          const FiniteSpace& Y, double r);

}  // namespace roecart
