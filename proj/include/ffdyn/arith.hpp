#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ffdyn/intmath.hpp"

namespace ffdyn {

// Smallest-prime-factor table. Memory-linear; factors any k <= limit in
// O(log k) divisions.
class SpfSieve {
 public:
  explicit SpfSieve(uint64_t limit);
  uint64_t limit() const { return limit_; }

  FactorMap factor(uint64_t k) const;
  bool is_prime(uint64_t k) const;
  uint64_t phi(uint64_t k) const;
  uint64_t carmichael(uint64_t k) const;
  uint64_t tau(uint64_t k) const;
  uint64_t sigma(uint64_t k) const;

  // Least t with g^t = 1 (mod ell): start from lambda(ell) and strip
  // prime factors q while g^{t/q} stays 1. Requires gcd(g, ell) = 1.
  uint64_t order(uint64_t g, uint64_t ell) const;

 private:
  uint64_t limit_;
  std::vector<uint32_t> spf_;
};

struct ArithRecord {
  uint64_t ell = 0;
  FactorMap factors;
  uint64_t phi = 0;
  uint64_t lambda = 0;
  uint64_t tau = 0;
  uint64_t sigma = 0;
  std::optional<uint64_t> order_g;  // absent when gcd(g, ell) > 1
};

ArithRecord arith_record(const SpfSieve& sieve, uint64_t ell, uint64_t g);
void stream_records(const SpfSieve& sieve, uint64_t L, uint64_t g,
                    const std::function<void(const ArithRecord&)>& fn);

// T_g(L): sum of t_g(ell) over ell <= L coprime to g, divided by L.
double avg_multiplicative_order(const SpfSieve& sieve, uint64_t L, uint64_t g);

// (1/L) * sum of lambda(ell) over ell <= L.
double sum_carmichael(const SpfSieve& sieve, uint64_t L);

// Mean period of x -> x + a over all shifts a: exactly
// (1/ell) * sum over divisors d of ell of d*phi(d).
Rational additive_average_period(const SpfSieve& sieve, uint64_t ell);

// (1/L) * sum of the additive period averages over ell <= L; grows
// linearly with slope 3*zeta(3)/pi^2.
double q_average(const SpfSieve& sieve, uint64_t L);

double q_average_slope();  // 3*zeta(3)/pi^2

// d(k) = sigma(k)/tau(k), exact.
Rational average_divisor(const SpfSieve& sieve, uint64_t k);

// D(K) = (1/K) * sum of d(k) for k <= K.
double divisor_average(const SpfSieve& sieve, uint64_t K);

// Number of primes p <= x such that g generates the units mod p.
// Primes dividing g are excluded (the order is undefined there).
uint64_t primitive_root_prime_count(const SpfSieve& sieve, uint64_t x, uint64_t g);

// One row per checkpoint L, accumulated in a single sieve pass.
struct ArithStatsRow {
  uint64_t L = 0;
  double t_avg = 0.0;        // T_g(L)
  double t_avg_norm = 0.0;   // T_g(L) * log L / L
  double lambda_avg = 0.0;   // (1/L) sum lambda
  double ratio = 0.0;        // T_g(L) / lambda_avg
  double q_avg = 0.0;        // (1/L) sum Q(ell)
  double q_avg_norm = 0.0;   // q_avg / (slope * L)
  double d_avg = 0.0;        // D(L)
  double d_norm_sqrt = 0.0;  // D * sqrt(log L) / L
  double d_norm_arnold = 0.0;  // D * log L / (1.5 L)
};
std::vector<ArithStatsRow> arith_stats(const SpfSieve& sieve,
                                       const std::vector<uint64_t>& checkpoints,
                                       uint64_t g);

}  // namespace ffdyn
