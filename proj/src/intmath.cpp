#include "ffdyn/intmath.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ffdyn {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

bool mr_witness(uint64_t n, uint64_t a, uint64_t d, int s) {
  uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases decide primality for every n < 2^64
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (mr_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

uint64_t pollard_brent(uint64_t n, uint64_t& budget) {
  // n composite, odd, no factor below 10^6
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
    const uint64_t m = 128;
    uint64_t r = 1;
    auto f = [n, c](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      for (uint64_t k = 0; k < r && d == 1; k += m) {
        ys = y;
        uint64_t lim = std::min(m, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        if (budget < lim) throw EffortBudgetExceeded("factorization budget exhausted");
        budget -= lim;
      }
      r <<= 1;
    }
    if (d == n) {
      // backtrack one batch in single steps
      d = 1;
      while (d == 1) {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
        if (budget == 0) throw EffortBudgetExceeded("factorization budget exhausted");
        --budget;
      }
    }
    if (d != n) return d;
    // cycle collapsed; retry with the next polynomial shift
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& primes, uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  uint64_t d = pollard_brent(n, budget);
  factor_rec(d, primes, budget);
  factor_rec(n / d, primes, budget);
}

}  // namespace

FactorMap factorize(uint64_t n) {
  FactorMap fm;
  if (n <= 1) return fm;
  auto push = [&fm](uint64_t p, uint32_t e) { fm.push_back({p, e}); };
  for (uint64_t p = 2; p < 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      uint32_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      push(p, e);
    }
  }
  if (n > 1) {
    std::vector<uint64_t> primes;
    uint64_t budget = 200000000;  // rho iterations, generous for 64-bit
    factor_rec(n, primes, budget);
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
      size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      push(primes[i], static_cast<uint32_t>(j - i));
      i = j;
    }
  }
  return fm;
}

uint64_t factor_map_value(const FactorMap& fm) {
  uint64_t v = 1;
  for (const auto& [p, e] : fm)
    for (uint32_t i = 0; i < e; ++i) v *= p;
  return v;
}

std::vector<uint64_t> divisors(const FactorMap& fm) {
  std::vector<uint64_t> ds{1};
  for (const auto& [p, e] : fm) {
    size_t base = ds.size();
    uint64_t pk = 1;
    for (uint32_t i = 0; i < e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

uint64_t phi_from_factors(const FactorMap& fm) {
  uint64_t v = 1;
  for (const auto& [p, e] : fm) {
    v *= p - 1;
    for (uint32_t i = 1; i < e; ++i) v *= p;
  }
  return v;
}

uint64_t carmichael_from_factors(const FactorMap& fm) {
  uint64_t l = 1;
  for (const auto& [p, e] : fm) {
    uint64_t comp;
    if (p == 2 && e >= 3) {
      comp = 1ull << (e - 2);
    } else {
      comp = p - 1;
      for (uint32_t i = 1; i < e; ++i) comp *= p;
    }
    l = std::lcm(l, comp);
  }
  return l;
}

uint64_t multiplicative_order(uint64_t g, uint64_t ell) {
  if (ell == 0) throw std::invalid_argument("modulus must be positive");
  if (ell == 1) return 1;
  g %= ell;
  if (std::gcd(g, ell) != 1) throw std::invalid_argument("base not coprime to modulus");
  uint64_t t = carmichael_from_factors(factorize(ell));
  for (const auto& [q, e] : factorize(t)) {
    for (uint32_t i = 0; i < e; ++i) {
      if (powmod(g, t / q, ell) == 1)
        t /= q;
      else
        break;
    }
  }
  return t;
}

Rational::Rational(uint64_t n, uint64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

uint64_t effort_cap(uint64_t fallback) {
  if (const char* s = std::getenv("FFDYN_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace ffdyn
