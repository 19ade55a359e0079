#include "ffdyn/residue.hpp"

#include <numeric>
#include <stdexcept>

namespace ffdyn {

MapKind map_kind_from_string(const std::string& s) {
  if (s == "mul") return MapKind::Mul;
  if (s == "add") return MapKind::Add;
  if (s == "pow") return MapKind::Pow;
  throw std::invalid_argument("unknown map kind: " + s);
}

std::string map_kind_to_string(MapKind k) {
  switch (k) {
    case MapKind::Mul:
      return "mul";
    case MapKind::Add:
      return "add";
    case MapKind::Pow:
      return "pow";
  }
  return "?";
}

namespace {

struct Step {
  MapKind map;
  uint64_t param;
  uint64_t ell;
  uint64_t operator()(uint64_t x) const {
    switch (map) {
      case MapKind::Mul:
        return mulmod(param, x, ell);
      case MapKind::Add:
        return (x + param) % ell;
      case MapKind::Pow:
        return powmod(x, param, ell);
    }
    return 0;
  }
};

}  // namespace

OrbitStats orbit(MapKind map, uint64_t param, uint64_t ell, uint64_t x0) {
  if (ell < 1) throw std::invalid_argument("modulus must be at least 1");
  Step f{map, param % ell, ell};
  x0 %= ell;

  // Brent: find the cycle length with a power-of-two probe, then the tail
  uint64_t power = 1, cycle = 1;
  uint64_t tortoise = x0, hare = f(x0);
  while (tortoise != hare) {
    if (power == cycle) {
      tortoise = hare;
      power <<= 1;
      cycle = 0;
    }
    hare = f(hare);
    ++cycle;
  }
  tortoise = x0;
  hare = x0;
  for (uint64_t i = 0; i < cycle; ++i) hare = f(hare);
  uint64_t tail = 0;
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++tail;
  }

  OrbitStats st;
  st.ell = ell;
  st.map = map;
  st.param = param % ell;
  st.start = x0;
  st.tail = tail;
  st.cycle = cycle;
  return st;
}

OrbitPrediction predicted_orbit(MapKind map, uint64_t param, uint64_t ell, uint64_t x0) {
  OrbitPrediction pred;
  if (ell < 1) throw std::invalid_argument("modulus must be at least 1");
  param %= ell;
  x0 %= ell;
  if (ell == 1) {
    pred.tail = 0;
    pred.cycle = 1;
    return pred;
  }
  switch (map) {
    case MapKind::Add: {
      pred.tail = 0;
      pred.cycle = param == 0 ? 1 : ell / std::gcd(param, ell);
      break;
    }
    case MapKind::Mul: {
      if (param == 0) {
        // collapses to 0 in one step
        pred.tail = x0 == 0 ? 0 : 1;
        pred.cycle = 1;
        break;
      }
      // split ell into the part sharing primes with the multiplier and
      // the coprime part; the first is crushed to 0, the second rotates
      uint64_t shared = 1, rest = ell;
      uint64_t g = std::gcd(param, rest);
      while (g > 1) {
        while (rest % g == 0) {
          shared *= g;
          rest /= g;
        }
        g = std::gcd(param, rest);
      }
      uint64_t tail = 0;
      if (shared > 1) {
        // smallest s with param^s * x0 = 0 (mod shared)
        uint64_t v = x0 % shared;
        uint64_t s = 0;
        while (v != 0) {
          v = mulmod(param % shared, v, shared);
          ++s;
        }
        tail = s;
      }
      // x rotates modulo rest / gcd(x0, rest) once the shared part is gone
      uint64_t rest_eff = rest / std::gcd(x0 % rest, rest);
      pred.tail = tail;
      pred.cycle = multiplicative_order(param, rest_eff);
      break;
    }
    case MapKind::Pow: {
      if (param < 1) break;  // no closed form taken
      if (std::gcd(x0, ell) != 1) break;
      // period of m -> e*m on exponents modulo the order of x0, after
      // stripping primes of e from that order
      uint64_t tprime = multiplicative_order(x0, ell);
      for (const auto& [q, ex] : factorize(param)) {
        (void)ex;
        while (tprime % q == 0) tprime /= q;
      }
      pred.cycle = multiplicative_order(param, tprime);
      break;
    }
  }
  return pred;
}

Rational additive_period_average_direct(uint64_t ell) {
  if (ell < 1) throw std::invalid_argument("modulus must be at least 1");
  if (ell > 100000) throw CapExceeded("direct additive average supports moduli up to 10^5");
  uint64_t sum = 0;
  for (uint64_t a = 0; a < ell; ++a) {
    OrbitStats st = orbit(MapKind::Add, a, ell, 0);
    sum += st.cycle;
  }
  return Rational(sum, ell);
}

CounterexampleReport counterexample_doubling(uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (p < 3) throw std::invalid_argument("p must be odd");
  if (multiplicative_order(2, p) != p - 1)
    throw std::invalid_argument("2 is not a primitive root for this modulus");

  CounterexampleReport rep;
  rep.p = p;
  rep.implication_holds = true;
  uint64_t x = 1;
  for (uint64_t m = 1; m <= p - 1; ++m) {
    x = (2 * x) % p;  // x = 2^m mod p
    if (4 * x > p && 2 * x < p) {
      ++rep.count_J;
      uint64_t y = (2 * x) % p;
      if (!(2 * y > p && y < p)) rep.implication_holds = false;
    }
  }
  rep.observed_freq = static_cast<double>(rep.count_J) / static_cast<double>(p - 1);
  return rep;
}

}  // namespace ffdyn
