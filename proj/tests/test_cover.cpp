#include <doctest.h>

#include <random>

#include "medalg/cover.hpp"

using namespace medalg;

namespace {

SubsetMask mask_of(int n, std::initializer_list<int> bits) {
  SubsetMask m(n);
  for (int b : bits) m.set(b);
  return m;
}

Cover random_cover(std::mt19937_64& rng, int n) {
  std::vector<SubsetMask> ms;
  SubsetMask uni(n);
  int k = 2 + int(rng() % 3);
  for (int i = 0; i < k; ++i) {
    SubsetMask m(n);
    for (int b = 0; b < n; ++b)
      if (rng() & 1) m.set(b);
    uni |= m;
    ms.push_back(std::move(m));
  }
  ms.push_back(uni.complement() | mask_of(n, {0}));  // patch up to a cover
  return Cover(n, std::move(ms));
}

}  // namespace

TEST_CASE("subset mask basics") {
  SubsetMask m(70);
  m.set(0);
  m.set(69);
  CHECK(m.count() == 2);
  CHECK(m.first() == 0);
  CHECK(m.next(0) == 69);
  CHECK(m.next(69) == -1);
  CHECK(m.complement().count() == 68);
  CHECK(m.is_subset_of(SubsetMask(70, true)));
  CHECK_FALSE(SubsetMask(70, true).is_subset_of(m));
  CHECK_THROWS_AS(m & SubsetMask(3), std::invalid_argument);
}

TEST_CASE("cover canonical form") {
  // Dominated and empty members vanish.
  Cover c(4, {mask_of(4, {0, 1}), mask_of(4, {0}), mask_of(4, {2, 3}), SubsetMask(4)});
  CHECK(c.members().size() == 2);
  CHECK(c.is_partition());

  CHECK_THROWS_AS(Cover(4, {mask_of(4, {0, 1})}), Error);  // not a cover

  Cover overlap(3, {mask_of(3, {0, 1}), mask_of(3, {1, 2})});
  CHECK_FALSE(overlap.is_partition());
  CHECK(overlap.star(1) == SubsetMask(3, true));
  CHECK(overlap.star(0) == mask_of(3, {0, 1}));
}

TEST_CASE("wedge idempotence and refinement") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    int n = 4 + int(rng() % 6);
    Cover c = random_cover(rng, n);
    CHECK(wedge(c, c) == c);
    CHECK(refines(c, Cover::trivial(n)));
    CHECK(refines(Cover::singleton_partition(n), c));

    // Stars distribute over wedges.
    Cover d = random_cover(rng, n);
    Cover w = wedge(c, d);
    for (int x = 0; x < n; ++x) CHECK(w.star(x) == (c.star(x) & d.star(x)));
    CHECK(refines(w, c));
    CHECK(refines(w, d));
  }
}

TEST_CASE("canonicalization preserves cover semantics") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 80; ++t) {
    int n = 3 + int(rng() % 6);
    // Raw member list with deliberate redundancy.
    std::vector<SubsetMask> raw;
    SubsetMask uni(n);
    for (int i = 0; i < 4; ++i) {
      SubsetMask m(n);
      for (int b = 0; b < n; ++b)
        if (rng() & 1) m.set(b);
      uni |= m;
      raw.push_back(m);
      if (rng() & 1) raw.push_back(m & SubsetMask(n, true));  // duplicate
    }
    raw.push_back(uni.complement() | SubsetMask::singleton(n, 0));
    Cover canon(n, raw);

    // Stars agree with the raw-member computation.
    for (int x = 0; x < n; ++x) {
      SubsetMask raw_star(n);
      for (const auto& m : raw)
        if (m.test(x)) raw_star |= m;
      CHECK(canon.star(x) == raw_star);
    }
    // Raw-member refinement tests agree in both roles.
    Cover probe = random_cover(rng, n);
    bool raw_refines_probe = true;
    for (const auto& m : raw) {
      bool inside = false;
      for (const auto& big : probe.members()) inside = inside || m.is_subset_of(big);
      raw_refines_probe = raw_refines_probe && inside;
    }
    CHECK(refines(canon, probe) == raw_refines_probe);
  }
}

TEST_CASE("star refinement on the four-chain") {
  // Two-ray cover at the middle pair: {(-inf,2), (1,inf)} = {{0,1},{2,3}}.
  Cover two_ray(4, {mask_of(4, {0, 1}), mask_of(4, {2, 3})});
  CHECK(two_ray.is_partition());
  CHECK(star_refines(two_ray, Cover::trivial(4)));
  // A partition star-refines itself.
  CHECK(star_refines(two_ray, two_ray));
}

TEST_CASE("uniform subbase filter membership") {
  UniformSubbase sb(4);
  CHECK(sb.total_wedge() == Cover::trivial(4));
  CHECK(sb.contains(Cover::trivial(4)));
  CHECK_FALSE(sb.contains(Cover::singleton_partition(4)));

  sb.add(Cover(4, {mask_of(4, {0, 1}), mask_of(4, {1, 2, 3})}), {{0, 2}});
  sb.add(Cover(4, {mask_of(4, {0, 1, 2}), mask_of(4, {2, 3})}));
  sb.add(Cover(4, {mask_of(4, {0}), mask_of(4, {1, 2, 3})}));
  sb.add(Cover(4, {mask_of(4, {0, 1, 2}), mask_of(4, {3})}));
  CHECK(sb.contains(Cover(4, {mask_of(4, {0, 1}), mask_of(4, {1, 2}), mask_of(4, {2, 3})})));

  // Adding a duplicate cover only accumulates tags.
  auto before = sb.size();
  sb.add(Cover(4, {mask_of(4, {0, 1}), mask_of(4, {1, 2, 3})}), {{1, 3}});
  CHECK(sb.size() == before);
  CHECK(sb.tags()[0].size() == 2);
}
