#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ffdyn/intmath.hpp"

namespace ffdyn {

enum class MapKind { Mul, Add, Pow };

MapKind map_kind_from_string(const std::string& s);
std::string map_kind_to_string(MapKind k);

struct OrbitStats {
  uint64_t ell = 0;
  MapKind map = MapKind::Mul;
  uint64_t param = 0;
  uint64_t start = 0;
  uint64_t tail = 0;   // preperiod length
  uint64_t cycle = 0;  // eventual period, >= 1
};

// Minimal (tail, cycle) of the orbit of x0 under the chosen self-map of
// Z_ell, found by Brent's cycle detection in O(tail + cycle) steps.
OrbitStats orbit(MapKind map, uint64_t param, uint64_t ell, uint64_t x0);

// Closed forms where they exist: mul and add always; pow only for x0
// coprime to ell (cycle only, tail is left unset).
struct OrbitPrediction {
  std::optional<uint64_t> tail;
  std::optional<uint64_t> cycle;
};
OrbitPrediction predicted_orbit(MapKind map, uint64_t param, uint64_t ell, uint64_t x0);

// Mean cycle length of x -> x + a over all a in Z_ell, by direct orbit
// computation. Must agree exactly with the divisor-sum form.
Rational additive_period_average_direct(uint64_t ell);

struct CounterexampleReport {
  uint64_t p = 0;
  uint64_t count_J = 0;  // #{m <= p-1 : 2^m mod p in (p/4, p/2)}
  bool implication_holds = false;
  double observed_freq = 0.0;
  double conjectured_freq = 3.0 / 16.0;
  double actual_freq = 0.25;
};

// Exhaustive scan of m = 1..p-1, requires 2 to generate the units mod p.
// Checks that 2^m in (p/4, p/2) forces 2^{m+1} in (p/2, p), and reports
// how often the window is hit: near 1/4, not the conjectured 3/16.
CounterexampleReport counterexample_doubling(uint64_t p);

}  // namespace ffdyn
