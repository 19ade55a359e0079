#include "ffdyn/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ffdyn/kahan.hpp"

namespace ffdyn {

SpfSieve::SpfSieve(uint64_t limit) : limit_(limit) {
  if (limit < 1) throw std::invalid_argument("sieve limit must be at least 1");
  if (limit > 10000000) throw std::invalid_argument("sieve limit above 10^7");
  spf_.assign(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      for (uint64_t j = i; j <= limit; j += i)
        if (spf_[j] == 0) spf_[j] = static_cast<uint32_t>(i);
    }
  }
}

FactorMap SpfSieve::factor(uint64_t k) const {
  if (k > limit_) throw std::invalid_argument("value above sieve limit");
  FactorMap fm;
  while (k > 1) {
    uint64_t p = spf_[k];
    uint32_t e = 0;
    while (k % p == 0) {
      k /= p;
      ++e;
    }
    fm.push_back({p, e});
  }
  return fm;
}

bool SpfSieve::is_prime(uint64_t k) const {
  if (k > limit_) throw std::invalid_argument("value above sieve limit");
  return k >= 2 && spf_[k] == k;
}

uint64_t SpfSieve::phi(uint64_t k) const { return phi_from_factors(factor(k)); }

uint64_t SpfSieve::carmichael(uint64_t k) const { return carmichael_from_factors(factor(k)); }

uint64_t SpfSieve::tau(uint64_t k) const {
  uint64_t t = 1;
  for (const auto& [p, e] : factor(k)) {
    (void)p;
    t *= e + 1;
  }
  return t;
}

uint64_t SpfSieve::sigma(uint64_t k) const {
  uint64_t s = 1;
  for (const auto& [p, e] : factor(k)) {
    uint64_t term = 1, pk = 1;
    for (uint32_t i = 0; i < e; ++i) {
      pk *= p;
      term += pk;
    }
    s *= term;
  }
  return s;
}

uint64_t SpfSieve::order(uint64_t g, uint64_t ell) const {
  if (ell == 0) throw std::invalid_argument("modulus must be positive");
  if (ell == 1) return 1;
  g %= ell;
  if (std::gcd(g, ell) != 1) throw std::invalid_argument("base not coprime to modulus");
  uint64_t t = carmichael(ell);
  for (const auto& [q, e] : factor(t)) {
    for (uint32_t i = 0; i < e; ++i) {
      if (powmod(g, t / q, ell) == 1)
        t /= q;
      else
        break;
    }
  }
  return t;
}

ArithRecord arith_record(const SpfSieve& sieve, uint64_t ell, uint64_t g) {
  if (ell < 1) throw std::invalid_argument("modulus must be at least 1");
  ArithRecord r;
  r.ell = ell;
  r.factors = sieve.factor(ell);
  r.phi = phi_from_factors(r.factors);
  r.lambda = carmichael_from_factors(r.factors);
  r.tau = sieve.tau(ell);
  r.sigma = sieve.sigma(ell);
  if (std::gcd(g % std::max<uint64_t>(ell, 1), ell) == 1 || ell == 1)
    r.order_g = sieve.order(g, ell);
  return r;
}

void stream_records(const SpfSieve& sieve, uint64_t L, uint64_t g,
                    const std::function<void(const ArithRecord&)>& fn) {
  if (L == 0) throw std::invalid_argument("bound must be at least 1");
  for (uint64_t ell = 1; ell <= L; ++ell) fn(arith_record(sieve, ell, g));
}

double avg_multiplicative_order(const SpfSieve& sieve, uint64_t L, uint64_t g) {
  if (L == 0) throw std::invalid_argument("bound must be at least 1");
  uint64_t sum = 0;
  for (uint64_t ell = 1; ell <= L; ++ell) {
    if (ell > 1 && std::gcd(g, ell) != 1) continue;
    sum += sieve.order(g, ell);
  }
  return static_cast<double>(sum) / static_cast<double>(L);
}

double sum_carmichael(const SpfSieve& sieve, uint64_t L) {
  if (L == 0) throw std::invalid_argument("bound must be at least 1");
  uint64_t sum = 0;
  for (uint64_t ell = 1; ell <= L; ++ell) sum += sieve.carmichael(ell);
  return static_cast<double>(sum) / static_cast<double>(L);
}

Rational additive_average_period(const SpfSieve& sieve, uint64_t ell) {
  if (ell < 1) throw std::invalid_argument("modulus must be at least 1");
  uint64_t sum = 0;
  for (uint64_t d : divisors(sieve.factor(ell))) sum += d * sieve.phi(d);
  return Rational(sum, ell);
}

double q_average(const SpfSieve& sieve, uint64_t L) {
  if (L == 0) throw std::invalid_argument("bound must be at least 1");
  KahanSum acc;
  for (uint64_t ell = 1; ell <= L; ++ell) acc.add(additive_average_period(sieve, ell).value());
  return acc.get() / static_cast<double>(L);
}

double q_average_slope() {
  return 3.0 * std::riemann_zeta(3.0) / (std::numbers::pi * std::numbers::pi);
}

Rational average_divisor(const SpfSieve& sieve, uint64_t k) {
  if (k < 1) throw std::invalid_argument("argument must be at least 1");
  return Rational(sieve.sigma(k), sieve.tau(k));
}

double divisor_average(const SpfSieve& sieve, uint64_t K) {
  if (K < 2) throw std::invalid_argument("bound must be at least 2");
  KahanSum acc;
  for (uint64_t k = 1; k <= K; ++k) acc.add(average_divisor(sieve, k).value());
  return acc.get() / static_cast<double>(K);
}

uint64_t primitive_root_prime_count(const SpfSieve& sieve, uint64_t x, uint64_t g) {
  if (g < 2) throw std::invalid_argument("base must be at least 2");
  uint64_t count = 0;
  for (uint64_t p = 2; p <= x; ++p) {
    if (!sieve.is_prime(p)) continue;
    if (g % p == 0) continue;
    if (sieve.order(g, p) == p - 1) ++count;
  }
  return count;
}

std::vector<ArithStatsRow> arith_stats(const SpfSieve& sieve,
                                       const std::vector<uint64_t>& checkpoints,
                                       uint64_t g) {
  if (checkpoints.empty()) return {};
  std::vector<uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  if (cps.front() == 0) throw std::invalid_argument("checkpoints must be positive");

  uint64_t t_sum = 0, lam_sum = 0;
  KahanSum q_sum, d_sum;
  std::vector<ArithStatsRow> rows;
  size_t next = 0;
  for (uint64_t ell = 1; ell <= cps.back(); ++ell) {
    if (ell == 1 || std::gcd(g, ell) == 1) t_sum += sieve.order(g, ell);
    lam_sum += sieve.carmichael(ell);
    q_sum.add(additive_average_period(sieve, ell).value());
    d_sum.add(average_divisor(sieve, ell).value());
    while (next < cps.size() && cps[next] == ell) {
      ArithStatsRow row;
      double L = static_cast<double>(ell);
      row.L = ell;
      row.t_avg = static_cast<double>(t_sum) / L;
      row.t_avg_norm = row.t_avg * std::log(L) / L;
      row.lambda_avg = static_cast<double>(lam_sum) / L;
      row.ratio = row.lambda_avg > 0 ? row.t_avg / row.lambda_avg : 0.0;
      row.q_avg = q_sum.get() / L;
      row.q_avg_norm = row.q_avg / (q_average_slope() * L);
      row.d_avg = d_sum.get() / L;
      row.d_norm_sqrt = row.d_avg * std::sqrt(std::log(L)) / L;
      row.d_norm_arnold = row.d_avg * std::log(L) / (1.5 * L);
      rows.push_back(row);
      ++next;
    }
  }
  if (next != cps.size()) throw std::invalid_argument("checkpoint beyond sieve range");
  return rows;
}

}  // namespace ffdyn
