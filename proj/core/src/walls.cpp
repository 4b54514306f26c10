#include "medalg/walls.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace medalg {

const WallSet& walls(const FiniteMedianAlgebra& a) {
  return a.walls_memo().get_or_compute<WallSet>([&] {
    WallSet ws;
    const int n = a.size();
    std::unordered_map<SubsetMask, int, SubsetMaskHash> seen;

    for (auto [u, v] : a.adjacent_pairs()) {
      SubsetMask side_u(n);
      for (int z = 0; z < n; ++z)
        if (a.med(u, z, v) == u) side_u.set(z);
      SubsetMask canon = side_u.test(0) ? side_u : side_u.complement();
      if (seen.emplace(canon, ws.count()).second)
        ws.walls.push_back(Wall{canon, canon.complement()});
    }

    for (const auto& w : ws.walls) {
      if (w.side_a.empty() || w.side_b.empty())
        throw Error("internal-consistency", "wall with an empty side");
      if (!is_convex(a, w.side_a) || !is_convex(a, w.side_b))
        throw Error("internal-consistency", "wall side fails convexity");
    }

    ws.side_bits.assign(n, SubsetMask(ws.count()));
    for (int x = 0; x < n; ++x)
      for (int i = 0; i < ws.count(); ++i)
        if (ws.walls[i].side_b.test(x)) ws.side_bits[x].set(i);

    // Walls of a median algebra separate points.
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (ws.side_bits[x] == ws.side_bits[y])
          throw Error("internal-consistency", "walls fail to separate a pair");
    return ws;
  });
}

std::vector<int> separating_wall_indices(const FiniteMedianAlgebra& a, Element x, Element y) {
  const auto& ws = walls(a);
  return (ws.side_bits[x] ^ ws.side_bits[y]).to_vector();
}

std::vector<Wall> separating_walls(const FiniteMedianAlgebra& a, Element x, Element y) {
  const auto& ws = walls(a);
  std::vector<Wall> out;
  for (int i : separating_wall_indices(a, x, y)) out.push_back(ws.walls[i]);
  return out;
}

bool crossing(const Wall& w1, const Wall& w2) {
  return w1.side_a.intersects(w2.side_a) && w1.side_a.intersects(w2.side_b) &&
         w1.side_b.intersects(w2.side_a) && w1.side_b.intersects(w2.side_b);
}

namespace {

/// Tomita-style exact max clique with greedy colouring bounds, over adjacency
/// rows packed in single words (<= 64 vertices).
class MaxClique64 {
public:
  explicit MaxClique64(const std::vector<std::uint64_t>& adj) : adj_(adj), n_(int(adj.size())) {}

  int solve() {
    std::uint64_t cand = (n_ == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    expand(cand, 0);
    return best_;
  }

private:
  void expand(std::uint64_t cand, int depth) {
    if (!cand) {
      best_ = std::max(best_, depth);
      return;
    }
    // Greedy colouring upper bound and ordering.
    std::vector<int> order;
    std::vector<int> colour;
    std::uint64_t rest = cand;
    int col = 0;
    while (rest) {
      ++col;
      std::uint64_t avail = rest;
      while (avail) {
        int v = std::countr_zero(avail);
        order.push_back(v);
        colour.push_back(col);
        rest &= ~(std::uint64_t{1} << v);
        avail &= ~(std::uint64_t{1} << v);
        avail &= ~adj_[v];
      }
    }
    for (int i = int(order.size()) - 1; i >= 0; --i) {
      if (depth + colour[i] <= best_) return;
      int v = order[i];
      expand(cand & adj_[v] & low_mask(order, i), depth + 1);
      cand &= ~(std::uint64_t{1} << v);
    }
  }

  static std::uint64_t low_mask(const std::vector<int>& order, int i) {
    std::uint64_t m = 0;
    for (int j = 0; j < i; ++j) m |= std::uint64_t{1} << order[j];
    return m;
  }

  const std::vector<std::uint64_t>& adj_;
  int n_;
  int best_ = 0;
};

std::vector<std::uint64_t> crossing_graph(const WallSet& ws, const std::vector<int>& subset) {
  const int k = int(subset.size());
  std::vector<std::uint64_t> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (crossing(ws.walls[subset[i]], ws.walls[subset[j]])) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
  return adj;
}

}  // namespace

int rank(const FiniteMedianAlgebra& a) {
  if (a.size() <= 1) return 0;  // convention for trivial carriers
  const auto& ws = walls(a);
  if (ws.count() > 64) throw Error("wall-bound-exceeded", "exact rank limited to 64 walls");
  std::vector<int> all(ws.count());
  for (int i = 0; i < ws.count(); ++i) all[i] = i;
  auto adj = crossing_graph(ws, all);
  return MaxClique64(adj).solve();
}

WallFingerprint wall_fingerprint(const FiniteMedianAlgebra& a, Element x0) {
  const auto& ws = walls(a);
  const int n = a.size();
  WallFingerprint fp;
  fp.basepoint = x0;
  fp.separating.reserve(n);
  for (int x = 0; x < n; ++x) fp.separating.push_back(ws.side_bits[x0] ^ ws.side_bits[x]);
  fp.injective = true;
  for (int x = 0; x < n && fp.injective; ++x)
    for (int y = x + 1; y < n && fp.injective; ++y)
      if (fp.separating[x] == fp.separating[y]) fp.injective = false;
  return fp;
}

DilworthColouring dilworth_colouring(const FiniteMedianAlgebra& a, Element x, Element y) {
  if (x == y) throw Error("equal-inputs", "dilworth colouring needs distinct endpoints");
  const auto& ws = walls(a);
  auto idx = separating_wall_indices(a, x, y);
  const int k = int(idx.size());

  DilworthColouring out;
  out.oriented.reserve(k);
  for (int i : idx) {
    const auto& w = ws.walls[i];
    OrientedWall ow;
    ow.wall_index = i;
    ow.minus = w.side_of(x);
    ow.plus = w.side_against(x);
    out.oriented.push_back(std::move(ow));
  }

  // Any two separating walls must cross or be nested (minus-side inclusion).
  std::vector<std::vector<bool>> less(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (out.oriented[i].minus.is_subset_of(out.oriented[j].minus)) less[i][j] = true;
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      bool comparable = less[i][j] || less[j][i];
      bool crosses = crossing(ws.walls[idx[i]], ws.walls[idx[j]]);
      if (!comparable && !crosses)
        throw Error("comparability-violation", "separating walls neither nested nor crossing");
    }

  // Minimum chain cover via Hopcroft-Karp-free augmenting paths (k <= 64).
  std::vector<int> match_right(k, -1), match_left(k, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int u, std::vector<bool>& vis) {
    for (int v = 0; v < k; ++v) {
      if (!less[u][v] || vis[v]) continue;
      vis[v] = true;
      if (match_right[v] < 0 || augment(match_right[v], vis)) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < k; ++u) {
    std::vector<bool> vis(k, false);
    augment(u, vis);
  }

  std::vector<bool> is_succ(k, false);
  for (int v = 0; v < k; ++v)
    if (match_right[v] >= 0) is_succ[v] = true;
  for (int u = 0; u < k; ++u) {
    if (is_succ[u]) continue;
    std::vector<int> chain;
    int cur = u;
    while (cur >= 0) {
      chain.push_back(cur);
      cur = match_left[cur];
    }
    out.classes.push_back(std::move(chain));
  }

  // Normalize each class by nesting order and confirm totality.
  for (auto& cls : out.classes) {
    std::sort(cls.begin(), cls.end(),
              [&](int i, int j) { return out.oriented[i].minus.count() < out.oriented[j].minus.count(); });
    for (std::size_t t = 1; t < cls.size(); ++t)
      if (!less[cls[t - 1]][cls[t]])
        throw Error("comparability-violation", "chain class not totally ordered");
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

IntervalChainEmbedding interval_chain_embedding(const FiniteMedianAlgebra& a, Element x, Element y) {
  if (x == y) throw Error("equal-inputs", "interval embedding needs distinct endpoints");
  IntervalChainEmbedding emb;
  emb.colouring = dilworth_colouring(a, x, y);
  emb.members = a.interval_mask(x, y).to_vector();
  const int nu = int(emb.colouring.classes.size());

  emb.coords.reserve(emb.members.size());
  for (Element z : emb.members) {
    std::vector<int> c(nu, 0);
    for (int i = 0; i < nu; ++i)
      for (int wi : emb.colouring.classes[i])
        if (emb.colouring.oriented[wi].plus.test(z)) ++c[i];
    emb.coords.push_back(std::move(c));
  }

  emb.injective = true;
  for (std::size_t i = 0; i < emb.coords.size() && emb.injective; ++i)
    for (std::size_t j = i + 1; j < emb.coords.size() && emb.injective; ++j)
      if (emb.coords[i] == emb.coords[j]) emb.injective = false;

  emb.median_preserving = true;
  const int m = int(emb.members.size());
  std::vector<int> pos(a.size(), -1);
  for (int i = 0; i < m; ++i) pos[emb.members[i]] = i;
  for (int i = 0; i < m && emb.median_preserving; ++i)
    for (int j = i; j < m && emb.median_preserving; ++j)
      for (int l = j; l < m && emb.median_preserving; ++l) {
        int t = pos[a.med(emb.members[i], emb.members[j], emb.members[l])];
        for (int c = 0; c < nu; ++c) {
          int lo = std::min({emb.coords[i][c], emb.coords[j][c], emb.coords[l][c]});
          int hi = std::max({emb.coords[i][c], emb.coords[j][c], emb.coords[l][c]});
          if (emb.coords[i][c] + emb.coords[j][c] + emb.coords[l][c] - lo - hi != emb.coords[t][c]) {
            emb.median_preserving = false;
            break;
          }
        }
      }
  return emb;
}

std::vector<std::vector<int>> wall_metric(const FiniteMedianAlgebra& a) {
  const auto& ws = walls(a);
  const int n = a.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) d[x][y] = d[y][x] = ws.distance(x, y);
  return d;
}

bool lipschitz_median_check(const FiniteMedianAlgebra& a, std::uint64_t samples) {
  const auto& ws = walls(a);
  const int n = a.size();
  auto d = [&](int p, int q) { return ws.distance(p, q); };
  auto check = [&](int x1, int y1, int z1, int x2, int y2, int z2) {
    return d(a.med(x1, y1, z1), a.med(x2, y2, z2)) <= d(x1, x2) + d(y1, y2) + d(z1, z2);
  };
  if (n <= 16) {
    for (int x1 = 0; x1 < n; ++x1)
      for (int y1 = 0; y1 < n; ++y1)
        for (int z1 = 0; z1 < n; ++z1)
          for (int x2 = 0; x2 < n; ++x2)
            for (int y2 = 0; y2 < n; ++y2)
              for (int z2 = 0; z2 < n; ++z2)
                if (!check(x1, y1, z1, x2, y2, z2)) return false;
    return true;
  }
  std::mt19937_64 rng(0x11b5c417u ^ std::uint64_t(n));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::uint64_t t = 0; t < samples; ++t)
    if (!check(pick(rng), pick(rng), pick(rng), pick(rng), pick(rng), pick(rng))) return false;
  return true;
}

}  // namespace medalg
