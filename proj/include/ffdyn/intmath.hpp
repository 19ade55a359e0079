#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffdyn {

// Raised when an enumeration would exceed a configured cap. Maps to a
// usage error at the CLI (exit 2), unlike EffortBudgetExceeded (exit 1).
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when factorization gives up within its deterministic budget.
struct EffortBudgetExceeded : std::runtime_error {
  explicit EffortBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(uint64_t n);

struct FactorEntry {
  uint64_t prime = 0;
  uint32_t exp = 0;
  bool operator==(const FactorEntry&) const = default;
};

// Sorted by prime; every exponent >= 1. Empty map represents 1.
using FactorMap = std::vector<FactorEntry>;

// Trial division below 10^6 followed by Brent's variant of Pollard rho
// with fixed, deterministic parameters. Throws EffortBudgetExceeded if a
// composite cofactor resists splitting within the budget.
FactorMap factorize(uint64_t n);

uint64_t factor_map_value(const FactorMap& fm);
std::vector<uint64_t> divisors(const FactorMap& fm);  // ascending

uint64_t phi_from_factors(const FactorMap& fm);
uint64_t carmichael_from_factors(const FactorMap& fm);

// Least t >= 1 with g^t = 1 (mod ell). Requires gcd(g, ell) = 1; ell >= 1.
// Computed by stripping primes from the Carmichael value, never by iteration.
uint64_t multiplicative_order(uint64_t g, uint64_t ell);

// Exact nonnegative rational, always stored reduced.
struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;
  Rational() = default;
  Rational(uint64_t n, uint64_t d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "num/den"
  bool operator==(const Rational&) const = default;
};

// Enumeration cap honoring the FFDYN_MAX_ENUM environment override.
uint64_t effort_cap(uint64_t fallback);

}  // namespace ffdyn
