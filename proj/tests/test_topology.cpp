#include <doctest.h>

#include "medalg/topology.hpp"
#include "medalg/uniformity.hpp"
#include "medalg/walls.hpp"

using namespace medalg;

TEST_CASE("finite topology from a subbase") {
  FiniteTopology indiscrete(3, {});
  CHECK(indiscrete.indiscrete());
  CHECK_FALSE(indiscrete.discrete());
  CHECK(indiscrete.is_open(SubsetMask(3, true)));
  CHECK_FALSE(indiscrete.is_open(SubsetMask::singleton(3, 0)));

  std::vector<SubsetMask> sb = {SubsetMask::singleton(3, 0).complement(),
                                SubsetMask::singleton(3, 2).complement()};
  FiniteTopology t(3, sb);
  CHECK(t.min_nbhd(1).count() == 1);
  CHECK(t.min_nbhd(0).count() == 2);
}

TEST_CASE("intrinsic topology is discrete on finite algebras") {
  CHECK(tau_m(make_chain(1)).discrete());
  CHECK(tau_m(make_chain(1)).indiscrete());  // both, on a point
  CHECK(tau_m(make_hypercube(3)).discrete());
  CHECK(tau_m(make_chain(5)).discrete());
  CHECK(tau_m(make_starlet(8)).discrete());

  // Minimal neighbourhoods are convex (local convexity), and every branch is
  // open.
  for (const auto& a : {make_hypercube(3), make_starlet(6), make_product(make_chain(3), make_chain(4))}) {
    FiniteTopology t = tau_m(a);
    for (int x = 0; x < a.size(); ++x) CHECK(is_convex(a, t.min_nbhd(x)));
    for (auto [u, v] : chain_structure(a).chain_pairs) {
      CHECK(t.is_open(branch(a, u, v)));
      CHECK(t.is_open(branch(a, v, u)));
    }
  }
}

TEST_CASE("halfspace subbase generates the same topology") {
  for (const auto& a : {make_hypercube(3), make_starlet(6), make_chain(7),
                        make_product(make_chain(3), make_chain(3))})
    CHECK(halfspace_topology(a) == tau_m(a));
}

TEST_CASE("gate-initial topologies") {
  CHECK(gate_initial_topology(make_chain(5), false) == tau_m(make_chain(5)));
  CHECK(gate_initial_topology(make_hypercube(2), false) == tau_m(make_hypercube(2)));
  CHECK(gate_initial_topology(make_hypercube(3), true) == tau_m(make_hypercube(3)));
  CHECK(gate_initial_topology(make_starlet(5), true) == tau_m(make_starlet(5)));
}

TEST_CASE("trees have only chain intervals") {
  // Rank-one: every interval is a chain, so the branch subbase is the full
  // shadow subbase.
  FiniteMedianAlgebra tree = median_graph_from_edges(7, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 5}, {5, 6}});
  CHECK(rank(tree) == 1);
  const int n = tree.size();
  CHECK(int(chain_structure(tree).chain_pairs.size()) == n * (n - 1) / 2);
}

TEST_CASE("minimum isolating branches equals the degree") {
  CHECK(min_isolating_branches(make_chain(3), 1) == 2);
  CHECK(min_isolating_branches(make_chain(3), 0) == 1);
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  for (int x = 0; x < 8; ++x) CHECK(min_isolating_branches(cube3, x) == 3);
  for (int l = 2; l <= 8; ++l) {
    FiniteMedianAlgebra st = make_starlet(l);
    CHECK(min_isolating_branches(st, 0) == l);  // center needs every leaf branch
    CHECK(min_isolating_branches(st, 1) == 1);  // a leaf is cut off by one branch
  }
  CHECK(min_isolating_branches(make_chain(1), 0) == 0);
}

TEST_CASE("geometric branching within metric balls") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto whole = geometric_branching_check(cube3, 0, 4);  // eps > diameter
  CHECK(whole.branches_used == 0);
  CHECK(whole.star.full());

  auto tight = geometric_branching_check(cube3, 0, 1);
  CHECK(tight.branches_used == 3);
  CHECK(tight.star == SubsetMask::singleton(8, 0));

  for (int l = 2; l <= 8; ++l) {
    FiniteMedianAlgebra st = make_starlet(l);
    auto res = geometric_branching_check(st, 0, 1);
    CHECK(res.branches_used == l);  // the hedgehog scaling statistic
    CHECK(res.star == SubsetMask::singleton(st.size(), 0));
  }

  // Intermediate radius: the star must sit inside the ball.
  auto mid = geometric_branching_check(cube3, 0, 2);
  const auto& ws = walls(cube3);
  mid.star.for_each([&](int y) { CHECK(ws.distance(0, y) < 2); });
  CHECK(mid.star.test(0));
  CHECK(mid.branches_used <= 3);

  CHECK_THROWS_AS(geometric_branching_check(cube3, 0, 0), Error);
}
