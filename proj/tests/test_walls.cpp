#include <doctest.h>

#include <algorithm>
#include <queue>

#include "medalg/harness.hpp"
#include "medalg/walls.hpp"

using namespace medalg;

namespace {

// Independent distance oracle: BFS over the adjacency graph.
std::vector<std::vector<int>> bfs_distances(const FiniteMedianAlgebra& a) {
  const int n = a.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : a.adjacency()[u])
        if (d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
    }
  }
  return d;
}

bool same_wall_sets(const std::vector<Wall>& lhs, const std::vector<Wall>& rhs) {
  if (lhs.size() != rhs.size()) return false;
  for (const auto& w : lhs) {
    bool found = false;
    for (const auto& o : rhs)
      if ((w.side_a == o.side_a && w.side_b == o.side_b) ||
          (w.side_a == o.side_b && w.side_b == o.side_a))
        found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("wall enumeration") {
  for (int k = 2; k <= 6; ++k) {
    FiniteMedianAlgebra c = make_chain(k);
    CHECK(walls(c).count() == k - 1);
  }
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  CHECK(walls(cube3).count() == 3);
  for (int n = 2; n <= 6; ++n) {
    FiniteMedianAlgebra st = make_starlet(n);
    CHECK(walls(st).count() == n);
  }

  // Brute-force oracle agreement on small carriers.
  for (const auto& a : {make_hypercube(3), make_starlet(5), make_chain(7),
                        median_graph_from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {4, 5}})})
    CHECK(same_wall_sets(walls(a).walls, brute_force_walls(a)));
}

TEST_CASE("separating walls") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  CHECK(separating_walls(cube3, 5, 5).empty());
  Element x = cube3.index_of_label({0, 0, 0}), y = cube3.index_of_label({1, 1, 0});
  CHECK(separating_walls(cube3, x, y).size() == 2);
  FiniteMedianAlgebra c5 = make_chain(5);
  CHECK(separating_walls(c5, 0, 4).size() == 4);
}

TEST_CASE("crossing") {
  FiniteMedianAlgebra cube2 = make_hypercube(2);
  const auto& w2 = walls(cube2).walls;
  REQUIRE(w2.size() == 2);
  CHECK(crossing(w2[0], w2[1]));
  CHECK_FALSE(crossing(w2[0], w2[0]));

  FiniteMedianAlgebra c5 = make_chain(5);
  const auto& wc = walls(c5).walls;
  for (std::size_t i = 0; i < wc.size(); ++i)
    for (std::size_t j = i + 1; j < wc.size(); ++j) CHECK_FALSE(crossing(wc[i], wc[j]));
}

TEST_CASE("rank") {
  CHECK(rank(make_chain(1)) == 0);
  for (int k = 2; k <= 8; ++k) CHECK(rank(make_chain(k)) == 1);
  CHECK(rank(make_hypercube(3)) == 3);
  CHECK(rank(make_product(make_chain(3), make_chain(3))) == 2);
  CHECK(rank(make_starlet(6)) == 1);

  // Embedding oracle agreement.
  for (const auto& a : {make_hypercube(3), make_hypercube(4), make_starlet(4),
                        make_product(make_chain(3), make_chain(3)), make_chain(6)})
    CHECK(rank(a) == rank_by_cube_embedding(a));

  // Rank adds over products.
  CHECK(rank(make_product(make_hypercube(2), make_chain(4))) == 3);
  CHECK(rank(make_product(make_starlet(3), make_starlet(3))) == 2);
}

TEST_CASE("wall fingerprints") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  Element origin = cube3.index_of_label({0, 0, 0});
  auto fp = wall_fingerprint(cube3, origin);
  CHECK(fp.injective);
  CHECK(fp.separating[origin].empty());
  CHECK(fp.separating[cube3.index_of_label({1, 1, 1})].count() == 3);
}

TEST_CASE("wall metric is the graph metric") {
  for (const auto& a : {make_hypercube(3), make_starlet(5),
                        make_product(make_chain(3), make_chain(4)),
                        median_graph_from_edges(7, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 5}, {5, 6}})}) {
    auto d = wall_metric(a);
    auto bfs = bfs_distances(a);
    const int n = a.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) CHECK(d[x][y] == bfs[x][y]);

    // Interval additivity characterizes betweenness.
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          bool additive = d[x][z] + d[z][y] == d[x][y];
          bool between = a.med(x, y, z) == z;
          CHECK(additive == between);
        }
  }

  // Hamming distance on the cube.
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto d = wall_metric(cube3);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int hamming = 0;
      for (int j = 0; j < 3; ++j)
        if (cube3.labels()[x][j] != cube3.labels()[y][j]) ++hamming;
      CHECK(d[x][y] == hamming);
    }
}

TEST_CASE("median is 1-lipschitz jointly") {
  CHECK(lipschitz_median_check(make_hypercube(3)));           // exhaustive, 8^6 tuples
  CHECK(lipschitz_median_check(make_starlet(12), 20000));     // sampled
}

TEST_CASE("dilworth colouring") {
  FiniteMedianAlgebra c5 = make_chain(5);
  auto chain_col = dilworth_colouring(c5, 0, 4);
  CHECK(chain_col.classes.size() == 1);
  CHECK(chain_col.classes[0].size() == 4);

  FiniteMedianAlgebra cube2 = make_hypercube(2);
  auto sq = dilworth_colouring(cube2, cube2.index_of_label({0, 0}), cube2.index_of_label({1, 1}));
  CHECK(sq.classes.size() == 2);
  for (const auto& cls : sq.classes) CHECK(cls.size() == 1);

  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto cu = dilworth_colouring(cube3, cube3.index_of_label({0, 0, 0}), cube3.index_of_label({1, 1, 1}));
  CHECK(cu.classes.size() == 3);

  CHECK_THROWS_AS(dilworth_colouring(cube3, 3, 3), Error);

  // Oriented minus sides grow along each class.
  FiniteMedianAlgebra grid = make_product(make_chain(3), make_chain(4));
  auto col = dilworth_colouring(grid, 0, grid.size() - 1);
  CHECK(col.classes.size() == 2);
  for (const auto& cls : col.classes)
    for (std::size_t i = 1; i < cls.size(); ++i)
      CHECK(col.oriented[cls[i - 1]].minus.is_subset_of(col.oriented[cls[i]].minus));
}

TEST_CASE("interval chain embedding") {
  FiniteMedianAlgebra c5 = make_chain(5);
  auto emb = interval_chain_embedding(c5, 0, 4);
  CHECK(emb.injective);
  CHECK(emb.median_preserving);
  for (std::size_t i = 0; i < emb.members.size(); ++i) {
    CHECK(emb.coords[i].size() == 1);
    CHECK(emb.coords[i][0] == emb.members[i]);  // identity coordinate
  }

  FiniteMedianAlgebra cube2 = make_hypercube(2);
  auto sq = interval_chain_embedding(cube2, cube2.index_of_label({0, 0}), cube2.index_of_label({1, 1}));
  CHECK(sq.injective);
  CHECK(sq.median_preserving);
  CHECK(sq.colouring.classes.size() == 2);
  for (const auto& c : sq.coords) CHECK(c.size() == 2);
}

TEST_CASE("gate retractions cannot increase the rank") {
  for (const auto& a : {make_hypercube(3), make_product(make_chain(3), make_chain(3)),
                        make_starlet(5)}) {
    int r = rank(a);
    const int n = a.size();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        CHECK(rank(induced_unchecked(a, a.interval_mask(u, v))) <= r);
  }
}

TEST_CASE("orientation order is a partial order on nested families") {
  FiniteMedianAlgebra c6 = make_chain(6);
  auto col = dilworth_colouring(c6, 0, 5);
  REQUIRE(col.classes.size() == 1);
  const auto& cls = col.classes[0];
  // Antisymmetry and transitivity of minus-side inclusion along the class.
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = 0; j < cls.size(); ++j) {
      bool ij = col.oriented[cls[i]].minus.is_subset_of(col.oriented[cls[j]].minus);
      bool ji = col.oriented[cls[j]].minus.is_subset_of(col.oriented[cls[i]].minus);
      if (i != j) CHECK_FALSE((ij && ji));
      for (std::size_t k = 0; k < cls.size(); ++k) {
        bool jk = col.oriented[cls[j]].minus.is_subset_of(col.oriented[cls[k]].minus);
        bool ik = col.oriented[cls[i]].minus.is_subset_of(col.oriented[cls[k]].minus);
        if (ij && jk) CHECK(ik);
      }
    }
}
