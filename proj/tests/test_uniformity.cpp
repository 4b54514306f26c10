#include <doctest.h>

#include "medalg/uniformity.hpp"
#include "medalg/walls.hpp"

using namespace medalg;

namespace {

Element at3(const FiniteMedianAlgebra& c, int a, int b, int d) {
  Element e = c.index_of_label({a, b, d});
  REQUIRE(e >= 0);
  return e;
}

SubsetMask mask3(const FiniteMedianAlgebra& c, std::initializer_list<std::array<int, 3>> pts) {
  SubsetMask m(c.size());
  for (const auto& p : pts) m.set(at3(c, p[0], p[1], p[2]));
  return m;
}

}  // namespace

TEST_CASE("shadows and branches reproduce the worked 3-cube sets") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  Element x = at3(cube3, 0, 0, 0), y = at3(cube3, 1, 1, 0), z = at3(cube3, 1, 0, 0);

  CHECK(shadow(cube3, y, y) == SubsetMask(8, true));
  CHECK(shadow(cube3, y, x) == mask3(cube3, {{1, 1, 0}, {1, 1, 1}}));
  CHECK(shadow(cube3, y, z) == mask3(cube3, {{0, 1, 0}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}}));
  CHECK(branch(cube3, y, x) ==
        mask3(cube3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
  CHECK(branch(cube3, y, z) == mask3(cube3, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}}));
  CHECK(branch(cube3, y, x) != branch(cube3, y, z));  // [x,y] is not a chain

  CHECK_THROWS_AS(branch(cube3, y, y), Error);

  FiniteMedianAlgebra c3 = make_chain(3);
  CHECK(branch(c3, 0, 2).to_vector() == std::vector<int>{1, 2});
}

TEST_CASE("subbasic covers") {
  FiniteMedianAlgebra c3 = make_chain(3);
  Cover mid = subbasic_cover(c3, 0, 2);
  REQUIRE(mid.members().size() == 2);
  CHECK(mid.star(1) == SubsetMask(3, true));  // rays overlap at the midpoint
  CHECK_FALSE(mid.is_partition());

  // Adjacent pairs give the wall partition.
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  Cover adj = subbasic_cover(cube3, at3(cube3, 0, 0, 0), at3(cube3, 1, 0, 0));
  CHECK(adj.is_partition());

  CHECK_THROWS_AS(subbasic_cover(cube3, at3(cube3, 0, 0, 0), at3(cube3, 1, 1, 0)), Error);
}

TEST_CASE("chain subbase sizes") {
  // Parallel edges generate the same two-halfspace cover, so dedup leaves one
  // cover per wall on cubes.
  FiniteMedianAlgebra cube2 = make_hypercube(2), cube3 = make_hypercube(3);
  FiniteMedianAlgebra c4 = make_chain(4), c1 = make_chain(1);
  CHECK(chain_subbase(cube2).size() == 2);
  CHECK(chain_subbase(cube3).size() == 3);
  // On a chain every pair gives a distinct two-ray cover.
  CHECK(chain_subbase(c4).size() == 6);
  CHECK(chain_subbase(c1).empty());
}

TEST_CASE("two-ray wedges rebuild star-covers on chains") {
  // On the 4-chain, the middle pair's subbasic cover is the star-cover
  // {{0,1},{2,3}} of the inner two-point chain.
  FiniteMedianAlgebra c4 = make_chain(4);
  Cover mid = subbasic_cover(c4, 1, 2);
  SubsetMask left(4), right(4);
  left.set(0);
  left.set(1);
  right.set(2);
  right.set(3);
  CHECK(mid == Cover(4, {left, right}));
  CHECK(wedge(mid, mid) == mid);

  // Wedging the covers of consecutive pairs produces the windowed star-cover
  // of the full chain.
  Cover w = wedge(wedge(subbasic_cover(c4, 0, 1), subbasic_cover(c4, 1, 2)),
                  subbasic_cover(c4, 2, 3));
  for (int x = 0; x < 4; ++x) {
    SubsetMask window(4);
    for (int y = 0; y < 4; ++y)
      if (std::abs(x - y) <= 1) window.set(y);
    CHECK(w.star(x).is_subset_of(window));
  }
}

TEST_CASE("star refinement exists inside the finite filter") {
  // The finest partition lies in the intrinsic filter of a separated finite
  // algebra and star-refines every subbasic cover.
  for (const auto& a : {make_hypercube(3), make_chain(5), make_starlet(5)}) {
    const auto& sb = chain_subbase(a);
    Cover finest = Cover::singleton_partition(a.size());
    REQUIRE(sb.contains(finest));
    for (const auto& c : sb.covers()) {
      CHECK(star_refines(finest, c));
      CHECK(refines(sb.total_wedge(), c));
    }
  }
}

TEST_CASE("filter membership through the intrinsic subbase") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  const auto& sb = chain_subbase(cube3);
  CHECK(sb.contains(Cover::trivial(8)));
  CHECK(sb.contains(Cover::singleton_partition(8)));

  UniformSubbase empty(8);
  CHECK(empty.contains(Cover::trivial(8)));
  CHECK_FALSE(empty.contains(Cover::singleton_partition(8)));
}

TEST_CASE("separation checks agree and carry witnesses") {
  for (const auto& a : {make_hypercube(3), make_chain(5), make_starlet(6),
                        make_product(make_chain(3), make_chain(3))}) {
    CHECK(is_hausdorff_um(a));
    auto t2 = t2m_check(a);
    auto cs = chain_solvable_check(a);
    CHECK(t2.pass);
    CHECK(cs.pass);
    for (const auto& w : t2.witnesses) {
      Element gx = a.gate(w.u, w.v, w.x), gy = a.gate(w.u, w.v, w.y);
      CHECK(((gx == w.u && gy == w.v) || (gx == w.v && gy == w.u)));
      CHECK(is_chain_interval(a, w.u, w.v));
      CHECK(transform_t2m_witness(a, w).has_value());
    }
    for (const auto& w : cs.witnesses) {
      CHECK(a.interval_mask(w.x, w.y).test(w.u));
      CHECK(a.interval_mask(w.x, w.y).test(w.v));
      CHECK(a.med(w.x, w.u, w.v) == w.u);  // u <=_x v
      CHECK(is_chain_interval(a, w.u, w.v));
    }
  }
  CHECK(is_hausdorff_um(make_chain(1)));
}

TEST_CASE("chain witnesses sit on geodesics of the cube") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto t2 = t2m_check(cube3);
  Element x = at3(cube3, 0, 0, 0), y = at3(cube3, 1, 1, 1);
  for (const auto& w : t2.witnesses) {
    if (w.x != x || w.y != y) continue;
    CHECK(cube3.interval_mask(w.u, w.v).count() == 2);           // adjacent pair
    CHECK(cube3.interval_mask(x, y).test(w.u));                  // on a geodesic
    CHECK(cube3.interval_mask(x, y).test(w.v));
  }
}

TEST_CASE("median uniform continuity") {
  CHECK(median_uniform_continuity_check(make_hypercube(3)).pass);
  CHECK(median_uniform_continuity_check(make_chain(5)).pass);
  CHECK(median_uniform_continuity_check(make_starlet(7)).pass);
}

TEST_CASE("stars of subbasic covers follow the trichotomy") {
  CHECK(subbasic_star_check(make_hypercube(3)));
  CHECK(subbasic_star_check(make_chain(6)));
  CHECK(subbasic_star_check(make_starlet(5)));
}

TEST_CASE("branch equivalence along chains") {
  CHECK(branch_equivalence_check(make_chain(6)));
  CHECK(branch_equivalence_check(make_hypercube(3)));
  CHECK(branch_equivalence_check(make_product(make_chain(3), make_chain(4))));

  // Spelled out on the 3-chain: the endpoint and midpoint cast equal branches.
  FiniteMedianAlgebra c3 = make_chain(3);
  CHECK(branch(c3, 2, 0) == branch(c3, 2, 1));
  CHECK(branch(c3, 0, 2) == branch(c3, 0, 1));
}

TEST_CASE("preimage rays and the initial uniformity") {
  CHECK(preimage_ray_check(make_chain(5)));
  CHECK(preimage_ray_check(make_hypercube(3)));
  CHECK(preimage_ray_check(make_starlet(4)));

  CHECK(initial_uniformity_check(make_chain(5)));
  CHECK(initial_uniformity_check(make_hypercube(3)));
  CHECK(initial_uniformity_check(make_product(make_chain(3), make_chain(3))));

  // Gate pullbacks of two-ray covers are intrinsic covers of the cut pairs.
  FiniteMedianAlgebra c5 = make_chain(5);
  for (auto& cov : gate_pullback_two_ray_covers(c5, 0, 4))
    CHECK(chain_subbase(c5).contains(cov));
}

TEST_CASE("gate composition laws") {
  CHECK(gate_composition_check(make_hypercube(3)));
  CHECK(gate_composition_check(make_chain(5)));
  CHECK(gate_composition_check(make_starlet(4)));
}

TEST_CASE("gate images of chains are chains") {
  CHECK(hom_image_chain_check(make_hypercube(3)));
  CHECK(hom_image_chain_check(make_starlet(5)));
}

TEST_CASE("product uniformity laws") {
  // Chain intervals of the square are exactly its four edges.
  FiniteMedianAlgebra c2 = make_chain(2);
  FiniteMedianAlgebra sq = make_product(c2, c2);
  CHECK(chain_structure(sq).chain_pairs.size() == 4);

  CHECK(product_uniformity_check(c2, c2).pass());
  CHECK(product_uniformity_check(make_chain(3), make_chain(3)).pass());
  CHECK(product_uniformity_check(make_hypercube(2), make_chain(3)).pass());
  CHECK(product_uniformity_check(make_starlet(3), make_chain(1)).pass());  // identity factor
}

TEST_CASE("convex restriction") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  CHECK(convex_restriction_check(cube3, SubsetMask(8, true)));
  CHECK(convex_restriction_check(cube3, cube3.interval_mask(at3(cube3, 0, 0, 0), at3(cube3, 1, 1, 0))));
  CHECK(convex_restriction_check(cube3, walls(cube3).walls[0].side_a));

  SubsetMask not_convex(8);
  not_convex.set(at3(cube3, 0, 0, 0));
  not_convex.set(at3(cube3, 1, 1, 0));
  CHECK_THROWS_AS(convex_restriction_check(cube3, not_convex), Error);
}

TEST_CASE("automorphism equivariance on branches") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  // Identity.
  Automorphism id{{0, 1, 2, 3, 4, 5, 6, 7}};
  CHECK(equivariance_check(cube3, id));

  // Swap of the first two coordinates.
  std::vector<Element> swap(8);
  for (int e = 0; e < 8; ++e) {
    auto l = cube3.labels()[e];
    std::swap(l[0], l[1]);
    swap[e] = cube3.index_of_label(l);
  }
  REQUIRE(is_automorphism(cube3, swap));
  CHECK(equivariance_check(cube3, Automorphism{swap}));

  // Chain reversal swaps the two rays of every cover.
  FiniteMedianAlgebra c5 = make_chain(5);
  Automorphism rev{{4, 3, 2, 1, 0}};
  REQUIRE(is_automorphism(c5, rev.perm));
  CHECK(equivariance_check(c5, rev));
  CHECK(branch(c5, 0, 4) == [&] {
    SubsetMask img(5);
    branch(c5, 4, 0).for_each([&](int e) { img.set(rev(e)); });
    return img;
  }());
}
