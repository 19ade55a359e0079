#include <doctest.h>

#include <numeric>
#include <vector>

#include "ffdyn/residue.hpp"
#include "ffdyn/rng.hpp"

using namespace ffdyn;

namespace {

// plain simulation with a visited table, independent of Brent's method
std::pair<uint64_t, uint64_t> simulate(MapKind map, uint64_t param, uint64_t ell,
                                       uint64_t x0) {
  std::vector<int64_t> seen(ell, -1);
  uint64_t x = x0 % ell;
  uint64_t step = 0;
  while (seen[x] < 0) {
    seen[x] = static_cast<int64_t>(step);
    switch (map) {
      case MapKind::Mul: x = mulmod(param % ell, x, ell); break;
      case MapKind::Add: x = (x + param) % ell; break;
      case MapKind::Pow: x = powmod(x, param, ell); break;
    }
    ++step;
  }
  uint64_t tail = static_cast<uint64_t>(seen[x]);
  return {tail, step - tail};
}

}  // namespace

TEST_CASE("map kind strings") {
  CHECK(map_kind_from_string("mul") == MapKind::Mul);
  CHECK(map_kind_from_string("add") == MapKind::Add);
  CHECK(map_kind_from_string("pow") == MapKind::Pow);
  CHECK(map_kind_to_string(MapKind::Pow) == "pow");
  CHECK_THROWS_AS(map_kind_from_string("affine"), std::invalid_argument);
}

TEST_CASE("hand-checked orbits") {
  OrbitStats s = orbit(MapKind::Mul, 2, 9, 1);
  CHECK(s.tail == 0);
  CHECK(s.cycle == 6);
  s = orbit(MapKind::Add, 4, 6, 1);
  CHECK(s.tail == 0);
  CHECK(s.cycle == 3);
  // 3 -> 2 -> 4 -> 2 under squaring mod 7
  s = orbit(MapKind::Pow, 2, 7, 3);
  CHECK(s.tail == 1);
  CHECK(s.cycle == 2);
  // multiplication by 2 crushes 8 | 24 after three steps
  s = orbit(MapKind::Mul, 2, 24, 4);
  CHECK(s.tail == 1);
  CHECK(s.cycle == 2);  // 4 -> 8 -> 16 -> 8
  s = orbit(MapKind::Mul, 0, 15, 7);
  CHECK(s.tail == 1);
  CHECK(s.cycle == 1);
  s = orbit(MapKind::Add, 0, 15, 7);
  CHECK(s.tail == 0);
  CHECK(s.cycle == 1);
}

TEST_CASE("brent agrees with plain simulation") {
  uint64_t cases = 0;
  for (uint64_t trial = 0; trial < 600; ++trial) {
    uint64_t ell = 2 + draw_u64(1000, 3 * trial) % 4999;
    MapKind map = static_cast<MapKind>(draw_u64(1000, 3 * trial + 1) % 3);
    uint64_t param = draw_u64(1000, 3 * trial + 2) % 17;
    uint64_t x0 = draw_u64(2000, trial) % ell;
    if (map == MapKind::Pow && param == 0) param = 2;
    OrbitStats got = orbit(map, param, ell, x0);
    auto [tail, cycle] = simulate(map, param, ell, x0);
    CHECK(got.tail == tail);
    CHECK(got.cycle == cycle);
    ++cases;
  }
  CHECK(cases == 600);
}

TEST_CASE("closed forms match observed orbits") {
  for (uint64_t trial = 0; trial < 500; ++trial) {
    uint64_t ell = 2 + draw_u64(7000, 3 * trial) % 4999;
    MapKind map = static_cast<MapKind>(draw_u64(7000, 3 * trial + 1) % 3);
    uint64_t param = draw_u64(7000, 3 * trial + 2) % 13;
    uint64_t x0 = draw_u64(8000, trial) % ell;
    if (map == MapKind::Pow) {
      if (param == 0) param = 2;
      if (std::gcd(x0, ell) != 1) x0 = 1 + (x0 % (ell - 1));
      if (std::gcd(x0, ell) != 1) continue;
    }
    OrbitPrediction pred = predicted_orbit(map, param, ell, x0);
    OrbitStats got = orbit(map, param, ell, x0);
    REQUIRE(pred.cycle.has_value());
    CHECK(*pred.cycle == got.cycle);
    if (map != MapKind::Pow) {
      REQUIRE(pred.tail.has_value());
      CHECK(*pred.tail == got.tail);
    } else {
      CHECK_FALSE(pred.tail.has_value());
    }
  }
}

TEST_CASE("pow prediction rejects shared factors") {
  OrbitPrediction p = predicted_orbit(MapKind::Pow, 2, 10, 4);
  CHECK_FALSE(p.cycle.has_value());
  CHECK_FALSE(p.tail.has_value());
}

TEST_CASE("additive direct averages match the divisor form") {
  CHECK(additive_period_average_direct(6).str() == "7/2");
  CHECK(additive_period_average_direct(4).str() == "11/4");
  CHECK(additive_period_average_direct(1).str() == "1/1");
  CHECK_THROWS_AS(additive_period_average_direct(200000), CapExceeded);
}

TEST_CASE("power map conserves nodes") {
  // tail+cycle structure partitions Z_ell: every node reaches a cycle
  uint64_t ell = 101;  // prime, squaring map
  uint64_t on_cycle = 0;
  for (uint64_t x = 0; x < ell; ++x) {
    OrbitStats s = orbit(MapKind::Pow, 2, ell, x);
    if (s.tail == 0) ++on_cycle;
  }
  // cyclic group of order 100 = 4 * 25: squaring fixes the odd part
  CHECK(on_cycle == 26);  // 25 units of odd order, plus the fixed point 0
}

TEST_CASE("doubling window scan, hand-checked primes") {
  CounterexampleReport r = counterexample_doubling(13);
  CHECK(r.count_J == 3);
  CHECK(r.observed_freq == doctest::Approx(0.25));
  CHECK(r.implication_holds);
  CHECK(r.conjectured_freq == doctest::Approx(3.0 / 16.0));

  r = counterexample_doubling(5);
  CHECK(r.count_J == 1);  // only 2^1 = 2 lies in (5/4, 5/2)
  CHECK(r.observed_freq == doctest::Approx(0.25));
  CHECK(r.implication_holds);

  r = counterexample_doubling(11);
  CHECK(r.count_J == 3);  // 3, 4 and 2^m hitting them
  CHECK(r.observed_freq == doctest::Approx(0.3));
  CHECK(r.implication_holds);
}

TEST_CASE("doubling scan validates its prime") {
  CHECK_THROWS_AS(counterexample_doubling(7), std::invalid_argument);   // 2 has order 3
  CHECK_THROWS_AS(counterexample_doubling(12), std::invalid_argument);  // composite
  CHECK_THROWS_AS(counterexample_doubling(2), std::invalid_argument);
}

TEST_CASE("window frequency approaches one quarter for large primes") {
  // 2 generates the units mod 1019
  CounterexampleReport r = counterexample_doubling(1019);
  CHECK(r.implication_holds);
  CHECK(r.observed_freq == doctest::Approx(0.25).epsilon(0.02));
  CHECK(std::abs(r.observed_freq - r.actual_freq)
        < std::abs(r.observed_freq - r.conjectured_freq));
}
