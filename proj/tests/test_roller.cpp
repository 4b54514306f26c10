#include <doctest.h>

#include "medalg/io.hpp"
#include "medalg/roller.hpp"

using namespace medalg;

TEST_CASE("roller embedding") {
  FiniteMedianAlgebra cube3 = make_hypercube(3);
  auto emb = roller_embedding(cube3);
  CHECK(emb.injective);
  CHECK(emb.median_preserving);
  // Antipodal corners differ in all three walls.
  Element o = cube3.index_of_label({0, 0, 0}), u = cube3.index_of_label({1, 1, 1});
  CHECK((emb.coordinates[o] ^ emb.coordinates[u]).count() == 3);

  // Chains embed as monotone staircases.
  FiniteMedianAlgebra c5 = make_chain(5);
  auto cemb = roller_embedding(c5);
  for (int x = 0; x + 1 < 5; ++x)
    CHECK((cemb.coordinates[x] ^ cemb.coordinates[x + 1]).count() == 1);

  // Starlet vectors set at most one bit.
  auto semb = roller_embedding(make_starlet(4));
  for (const auto& v : semb.coordinates) CHECK(v.count() <= 1);
}

TEST_CASE("consistent orientations are the vertices") {
  CHECK(consistent_orientations(make_chain(3)).size() == 3);
  CHECK(consistent_orientations(make_hypercube(2)).size() == 4);
  for (const auto& a : {make_hypercube(3), make_starlet(6), make_chain(7),
                        make_product(make_chain(3), make_chain(3))}) {
    auto orients = consistent_orientations(a);
    CHECK(int(orients.size()) == a.size());
    auto emb = roller_embedding(a);
    for (const auto& o : orients) {
      REQUIRE(o.principal >= 0);
      CHECK(emb.coordinates[o.principal] == o.side_b_chosen);
    }
  }
}

TEST_CASE("wall-count bounds are enforced") {
  FiniteMedianAlgebra long_chain = make_chain(42);  // 41 walls
  CHECK_THROWS_AS(consistent_orientations(long_chain), Error);
  FiniteMedianAlgebra longer = make_chain(66);  // 65 walls
  CHECK_THROWS_AS(rank(longer), Error);
}

TEST_CASE("symbolic spec parsing") {
  CHECK(parse_symbolic_spec("zline").factors().size() == 1);
  CHECK(parse_symbolic_spec("zline^2").factors().size() == 2);
  CHECK(parse_symbolic_spec("zline x chain:3").factors().size() == 2);
  CHECK(parse_symbolic_spec("chain:4 x chain:2 x zline").factors().size() == 3);
  CHECK(parse_symbolic_spec("starlet:5").is_starlet());
  CHECK_THROWS_AS(parse_symbolic_spec("moebius"), Error);
  CHECK_THROWS_AS(parse_symbolic_spec("chain:0"), Error);
  CHECK_THROWS_AS(parse_symbolic_spec("zline^9"), Error);
}

TEST_CASE("symbolic compactification queries") {
  auto zline = parse_symbolic_spec("zline");
  CHECK(zline.boundary_description() == "{-inf, +inf} (2 ends)");
  CHECK(zline.is_boundary({ExtCoord::pos_inf()}));
  CHECK_FALSE(zline.is_boundary({ExtCoord::fin(3)}));

  auto z2 = parse_symbolic_spec("zline^2");
  ExtPoint p = {ExtCoord::pos_inf(), ExtCoord::fin(0)};
  ExtPoint q = {ExtCoord::neg_inf(), ExtCoord::fin(0)};
  ExtPoint r = {ExtCoord::fin(5), ExtCoord::fin(7)};
  CHECK(z2.is_boundary(p));
  CHECK(z2.is_boundary(q));
  CHECK_FALSE(z2.is_boundary(r));
  ExtPoint m = z2.med(p, q, r);
  CHECK(m == ExtPoint{ExtCoord::fin(5), ExtCoord::fin(0)});

  auto c3 = parse_symbolic_spec("chain:3");
  CHECK(c3.boundary_description() == "empty (finite chains are complete)");
  CHECK_FALSE(c3.contains({ExtCoord::fin(3)}));
  CHECK_FALSE(c3.contains({ExtCoord::pos_inf()}));
  CHECK(c3.contains({ExtCoord::fin(2)}));
}

TEST_CASE("symbolic medians satisfy the axioms") {
  CHECK(symbolic_axiom_check(parse_symbolic_spec("zline"), 20000));
  CHECK(symbolic_axiom_check(parse_symbolic_spec("zline^2"), 20000));
  CHECK(symbolic_axiom_check(parse_symbolic_spec("zline x chain:3"), 20000));
  // Starlet laws are exhaustive up to 8 leaves.
  for (int l = 1; l <= 8; ++l)
    CHECK(symbolic_axiom_check(SymbolicCompactification::starlet(l)));
}

TEST_CASE("starlet compactification matches the hardcoded laws") {
  auto s = SymbolicCompactification::starlet(5);
  const int omega = 6;
  CHECK(s.starlet_is_boundary(omega));
  CHECK_FALSE(s.starlet_is_boundary(0));
  CHECK(s.starlet_med(1, 2, omega) == 0);  // leaves meet the limit at the center
  CHECK(s.starlet_med(1, omega, omega) == omega);
  CHECK(s.starlet_med(0, 3, omega) == 0);
}

TEST_CASE("truncation consistency") {
  std::vector<SymbolicFactor> zline = {SymbolicFactor{SymbolicFactor::IntegerLine, 0}};
  for (int r = 1; r <= 4; ++r) CHECK(truncation_consistency(zline, r));

  std::vector<SymbolicFactor> z2(2, SymbolicFactor{SymbolicFactor::IntegerLine, 0});
  for (int r = 1; r <= 3; ++r) CHECK(truncation_consistency(z2, r));

  std::vector<SymbolicFactor> mixed = {SymbolicFactor{SymbolicFactor::IntegerLine, 0},
                                       SymbolicFactor{SymbolicFactor::FiniteChain, 3}};
  for (int r = 1; r <= 3; ++r) CHECK(truncation_consistency(mixed, r));
}
