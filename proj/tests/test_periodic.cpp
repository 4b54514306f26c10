#include <doctest.h>

#include <numeric>
#include <random>

#include "medalg/algebra.hpp"
#include "medalg/periodic.hpp"

using namespace medalg;

namespace {

PeriodicBiSequence random_sequence(std::mt19937_64& rng) {
  int p = 1 + int(rng() % 6);
  std::string bits;
  for (int i = 0; i < p; ++i) bits += char('0' + (rng() & 1));
  return PeriodicBiSequence(bits);
}

}  // namespace

TEST_CASE("minimal period canonicalization") {
  CHECK(PeriodicBiSequence("0101").period() == 2);
  CHECK(PeriodicBiSequence("0101").to_string() == "01");
  CHECK(PeriodicBiSequence("111").to_string() == "1");
  CHECK(PeriodicBiSequence("0110").period() == 4);
  CHECK(PeriodicBiSequence("01") == PeriodicBiSequence("010101"));
  CHECK(PeriodicBiSequence("01") != PeriodicBiSequence("10"));  // shifted, not equal
  CHECK_THROWS_AS(PeriodicBiSequence("012"), Error);
}

TEST_CASE("pointwise median") {
  PeriodicBiSequence x("01"), y("1"), z("0");
  CHECK(periodic_median(x, y, z) == x);  // the fixed regression
  CHECK(periodic_median(x, y, y) == y);
  CHECK(periodic_median(x, x, z) == x);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto a = random_sequence(rng), b = random_sequence(rng), c = random_sequence(rng);
    auto m = periodic_median(a, b, c);
    // Median of three periodic sequences divides the lcm of the periods.
    int l = std::lcm(std::lcm(a.period(), b.period()), c.period());
    CHECK(l % m.period() == 0);
    CHECK(periodic_median(b, a, c) == m);
    CHECK(periodic_median(c, b, a) == m);
    CHECK(periodic_interval_member(a, b, m));
    CHECK(periodic_median(a, b, b) == b);
  }
}

TEST_CASE("interval membership") {
  PeriodicBiSequence x("01"), y("1");
  CHECK(periodic_interval_member(x, y, PeriodicBiSequence("0111")));
  CHECK(periodic_interval_member(x, y, x));
  CHECK(periodic_interval_member(x, y, y));
  // x and y agree at odd positions (both 1), so members must be 1 there.
  CHECK_FALSE(periodic_interval_member(x, y, PeriodicBiSequence("00")));
}

TEST_CASE("square witnesses inside intervals") {
  // One differing residue: the doubled-period square.
  {
    PeriodicBiSequence x("01"), y("11");
    CHECK(y.to_string() == "1");
    auto sq = periodic_square_witness(x, y);
    CHECK(verify_periodic_square(x, y, sq));
    CHECK(sq.corner[0] == x);
    CHECK(sq.corner[3] == y);
    CHECK(sq.corner[1] == PeriodicBiSequence("0111"));
    CHECK(sq.corner[2] == PeriodicBiSequence("1101"));
  }
  // Two differing residues within one window.
  {
    PeriodicBiSequence x("00"), y("11");
    auto sq = periodic_square_witness(x, y);
    CHECK(verify_periodic_square(x, y, sq));
    CHECK(sq.corner[1].period() == 2);
  }
  {
    PeriodicBiSequence x("0011"), y("0111");
    auto sq = periodic_square_witness(x, y);
    CHECK(verify_periodic_square(x, y, sq));
    CHECK(sq.corner[1].period() == 8);  // doubled window
  }
  CHECK_THROWS_AS(periodic_square_witness(PeriodicBiSequence("01"), PeriodicBiSequence("0101")),
                  Error);
}

TEST_CASE("witness squares rule out chain intervals") {
  std::mt19937_64 rng(21);
  int tried = 0;
  while (tried < 100) {
    auto x = random_sequence(rng), y = random_sequence(rng);
    if (x == y) continue;
    ++tried;
    auto sq = periodic_square_witness(x, y);
    REQUIRE(verify_periodic_square(x, y, sq));
    // med(x, z01, z10) reaches neither argument, so <=_x is not total on the
    // interval and [x,y] is not a chain.
    auto m = periodic_median(x, sq.corner[1], sq.corner[2]);
    CHECK(m != sq.corner[1]);
    CHECK(m != sq.corner[2]);
  }
}
