#include "roecart/matching.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace roecart {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

}  // namespace

BipartiteGraph::BipartiteGraph(int left, int right, std::vector<std::vector<int>> adjacency)
    : left_size(left), right_size(right), adj(std::move(adjacency)) {
  if (left < 0 || right < 0) throw std::invalid_argument("negative bipartite side");
  if (static_cast<int>(adj.size()) != left)
    throw std::invalid_argument("adjacency size does not match the left side");
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (int r : row)
      if (r < 0 || r >= right) throw std::invalid_argument("right neighbour out of range");
  }
}

HallResult hall_matching(const BipartiteGraph& g) {
  const int nl = g.left_size;
  const int nr = g.right_size;
  std::vector<int> match_l(nl, -1), match_r(nr, -1);
  std::vector<int> layer(nl, kInf);

  // BFS builds alternating layers from the unmatched left vertices; returns
  // false when no augmenting path remains.
  auto bfs = [&]() {
    std::queue<int> q;
    for (int l = 0; l < nl; ++l) {
      if (match_l[l] == -1) {
        layer[l] = 0;
        q.push(l);
      } else {
        layer[l] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : g.adj[l]) {
        int next = match_r[r];
        if (next == -1) {
          found = true;
        } else if (layer[next] == kInf) {
          layer[next] = layer[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int l) {
    for (int r : g.adj[l]) {
      int next = match_r[r];
      if (next == -1 || (layer[next] == layer[l] + 1 && dfs(next))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    layer[l] = kInf;
    return false;
  };

  int size = 0;
  while (bfs()) {
    for (int l = 0; l < nl; ++l)
      if (match_l[l] == -1 && dfs(l)) ++size;
  }

  HallResult result;
  if (size == nl) {
    Matching m;
    m.left_to_right = std::move(match_l);
    m.right_to_left = std::move(match_r);
    m.size = size;
    result.matching = std::move(m);
    return result;
  }

  // Deficient set: left vertices reachable from an unmatched one by
  // alternating paths.  Every reachable right vertex is matched (otherwise an
  // augmenting path would exist) and its partner is reachable too, so the
  // matching maps N(D) into D while missing the unmatched members of D:
  // |N(D)| = |D| - (#unmatched in D) < |D|.
  std::vector<char> seen_l(nl, 0), seen_r(nr, 0);
  std::queue<int> q;
  for (int l = 0; l < nl; ++l)
    if (match_l[l] == -1) {
      seen_l[l] = 1;
      q.push(l);
    }
  while (!q.empty()) {
    int l = q.front();
    q.pop();
    for (int r : g.adj[l]) {
      if (seen_r[r]) continue;
      seen_r[r] = 1;
      int next = match_r[r];
      if (next != -1 && !seen_l[next]) {
        seen_l[next] = 1;
        q.push(next);
      }
    }
  }
  for (int l = 0; l < nl; ++l)
    if (seen_l[l]) result.deficient_set.push_back(l);
  for (int r = 0; r < nr; ++r)
    if (seen_r[r]) result.neighborhood.push_back(r);
  return result;
}

std::vector<int> konig_csb(const std::vector<int>& f, const std::vector<int>& g) {
  const int ny = static_cast<int>(f.size());
  const int nx = static_cast<int>(g.size());
  if (nx != ny) throw std::invalid_argument("injections both ways force equal sizes");

  std::vector<int> f_inv(nx, -1);
  for (int y = 0; y < ny; ++y) {
    const int x = f[y];
    if (x < 0 || x >= nx) throw std::invalid_argument("f value out of range");
    if (f_inv[x] != -1) throw std::invalid_argument("f is not injective");
    f_inv[x] = y;
  }
  std::vector<char> in_g_image(ny, 0);
  for (int x = 0; x < nx; ++x) {
    const int y = g[x];
    if (y < 0 || y >= ny) throw std::invalid_argument("g value out of range");
    if (in_g_image[y]) throw std::invalid_argument("g is not injective");
    in_g_image[y] = 1;
  }

  // Chain decomposition of the functional graph y -> f(y), x -> g(x).  Points
  // on a chain entered from Y outside g(X) take h = f^{-1}; cycles and the
  // rest take h = g.  Starts are scanned in ascending order.  With total
  // injections on equal finite sets every point sits on a cycle and the scan
  // finds nothing, which is exactly the classical "h = g" case; the trace is
  // kept general (and bounded by the visited marks) all the same.
  std::vector<char> use_f_inv(nx, 0);
  std::vector<char> visited_y(ny, 0);
  for (int y0 = 0; y0 < ny; ++y0) {
    if (in_g_image[y0]) continue;
    int y = y0;
    while (!visited_y[y]) {
      visited_y[y] = 1;
      const int x = f[y];
      use_f_inv[x] = 1;
      y = g[x];
    }
  }

  std::vector<int> h(nx);
  for (int x = 0; x < nx; ++x) h[x] = use_f_inv[x] ? f_inv[x] : g[x];

  std::vector<char> hit(ny, 0);
  for (int y : h) {
    if (hit[y]) throw std::logic_error("chain decomposition produced a non-bijection");
    hit[y] = 1;
  }
  return h;
}

BijectifyResult bijectify(const std::vector<int>& f, const FiniteSpace& X,
                          const FiniteSpace& Y, double r) {
  if (X.size() != Y.size()) throw std::invalid_argument("bijectify needs equal-size spaces");
  if (static_cast<int>(f.size()) != X.size())
    throw std::invalid_argument("map must assign every point of X");
  for (int v : f)
    if (v < 0 || v >= Y.size()) throw std::invalid_argument("map value out of range");
  if (r < 0) throw std::invalid_argument("displacement radius must be nonnegative");

  const int n = X.size();
  double min_positive = Y.diameter();
  for (double v : Y.distance_values())
    if (v > 0) {
      min_positive = v;
      break;
    }

  BijectifyResult result;
  double radius = r;
  while (true) {
    std::vector<std::vector<int>> adj(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (Y.dist(f[x], y) <= radius) adj[x].push_back(y);
    HallResult hall = hall_matching(BipartiteGraph(n, n, std::move(adj)));
    result.achieved_r = radius;
    if (hall.matching) {
      result.h = std::move(hall.matching->left_to_right);
      result.deficient_set.clear();
      result.neighborhood.clear();
      return result;
    }
    result.deficient_set = std::move(hall.deficient_set);
    result.neighborhood = std::move(hall.neighborhood);

    const double next = radius == 0.0 ? min_positive : 2.0 * radius;
    if (next >= Y.diameter()) return result;
    radius = next;
  }
}

}  // namespace roecart
