#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ffdyn/arith.hpp"

using namespace ffdyn;

namespace {
const SpfSieve& sieve() {
  static SpfSieve s(5000);
  return s;
}

uint64_t brute_order(uint64_t g, uint64_t ell) {
  if (ell == 1) return 1;
  uint64_t x = g % ell, t = 1;
  while (x != 1) {
    x = (x * (g % ell)) % ell;
    ++t;
  }
  return t;
}
}  // namespace

TEST_CASE("sieve factors and classifies") {
  auto fm = sieve().factor(360);
  REQUIRE(fm.size() == 3);
  CHECK(fm[0].prime == 2);
  CHECK(fm[0].exp == 3);
  CHECK(fm[1].prime == 3);
  CHECK(fm[1].exp == 2);
  CHECK(fm[2].prime == 5);
  CHECK(fm[2].exp == 1);
  CHECK(sieve().factor(1).empty());
  CHECK(sieve().is_prime(2));
  CHECK(sieve().is_prime(4999));
  CHECK_FALSE(sieve().is_prime(1));
  CHECK_FALSE(sieve().is_prime(4998));
  CHECK_THROWS_AS(sieve().factor(5001), std::invalid_argument);
  CHECK_THROWS_AS(SpfSieve(0), std::invalid_argument);
}

TEST_CASE("multiplicative functions on small values") {
  CHECK(sieve().phi(1) == 1);
  CHECK(sieve().phi(12) == 4);
  CHECK(sieve().phi(97) == 96);
  CHECK(sieve().carmichael(8) == 2);
  CHECK(sieve().carmichael(16) == 4);
  CHECK(sieve().carmichael(12) == 2);
  CHECK(sieve().carmichael(561) == 80);
  CHECK(sieve().carmichael(2) == 1);
  CHECK(sieve().tau(12) == 6);
  CHECK(sieve().sigma(12) == 28);
  CHECK(sieve().tau(1) == 1);
  CHECK(sieve().sigma(1) == 1);
}

TEST_CASE("order matches brute force") {
  CHECK(sieve().order(2, 9) == 6);
  CHECK(sieve().order(2, 7) == 3);
  CHECK(sieve().order(5, 1) == 1);
  CHECK_THROWS_AS(sieve().order(2, 8), std::invalid_argument);
  for (uint64_t ell = 1; ell <= 300; ++ell)
    for (uint64_t g : {2ull, 3ull, 5ull, 7ull, 10ull}) {
      if (ell > 1 && std::gcd(g, ell) != 1) continue;
      CHECK(sieve().order(g, ell) == brute_order(g, ell));
    }
}

TEST_CASE("lambda is the maximal order") {
  for (uint64_t ell = 2; ell <= 100; ++ell) {
    uint64_t best = 0;
    for (uint64_t g = 1; g < ell; ++g)
      if (std::gcd(g, ell) == 1) best = std::max(best, brute_order(g, ell));
    CHECK(best == sieve().carmichael(ell));
  }
}

TEST_CASE("average order at small bounds") {
  CHECK(avg_multiplicative_order(sieve(), 10, 2) == doctest::Approx(1.6));
  CHECK(avg_multiplicative_order(sieve(), 2, 2) == doctest::Approx(0.5));
  CHECK(avg_multiplicative_order(sieve(), 10, 3) == doctest::Approx(2.0));
  CHECK(avg_multiplicative_order(sieve(), 10, 10) == doctest::Approx(0.9));
  CHECK_THROWS_AS(avg_multiplicative_order(sieve(), 0, 2), std::invalid_argument);
}

TEST_CASE("carmichael running mean") {
  CHECK(sum_carmichael(sieve(), 3) == doctest::Approx(4.0 / 3.0));
  CHECK(sum_carmichael(sieve(), 1) == doctest::Approx(1.0));
}

TEST_CASE("additive period averages, exact") {
  CHECK(additive_average_period(sieve(), 6).str() == "7/2");
  CHECK(additive_average_period(sieve(), 5).str() == "21/5");
  CHECK(additive_average_period(sieve(), 4).str() == "11/4");
  CHECK(additive_average_period(sieve(), 1).str() == "1/1");
}

TEST_CASE("additive period average equals the orbit mean") {
  for (uint64_t ell = 1; ell <= 200; ++ell) {
    uint64_t sum = 0;
    for (uint64_t a = 0; a < ell; ++a) sum += ell / std::gcd(a, ell);
    Rational direct(sum, ell);
    Rational closed = additive_average_period(sieve(), ell);
    CHECK(closed.num == direct.num);
    CHECK(closed.den == direct.den);
  }
}

TEST_CASE("q average small values and slope") {
  CHECK(q_average(sieve(), 2) == doctest::Approx(1.25));
  CHECK(q_average_slope() == doctest::Approx(0.3653814).epsilon(1e-6));
  // growth is essentially linear already at moderate bounds
  double q = q_average(sieve(), 5000);
  CHECK(q / 5000.0 == doctest::Approx(q_average_slope()).epsilon(0.01));
}

TEST_CASE("divisor means") {
  CHECK(average_divisor(sieve(), 6).str() == "3/1");
  CHECK(average_divisor(sieve(), 1).str() == "1/1");
  CHECK(average_divisor(sieve(), 2).str() == "3/2");
  for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 97ull, 4999ull}) {
    Rational d = average_divisor(sieve(), p);
    CHECK(d.num == (p + 1) / 2);
    CHECK(d.den == 1);
  }
  CHECK(divisor_average(sieve(), 6) == doctest::Approx(77.0 / 36.0));
  CHECK_THROWS_AS(divisor_average(sieve(), 1), std::invalid_argument);
}

TEST_CASE("primitive root prime counts") {
  CHECK(primitive_root_prime_count(sieve(), 10, 2) == 2);  // 3 and 5
  CHECK(primitive_root_prime_count(sieve(), 10, 3) == 3);  // 2, 5, 7
  CHECK(primitive_root_prime_count(sieve(), 2, 2) == 0);
  CHECK_THROWS_AS(primitive_root_prime_count(sieve(), 10, 1), std::invalid_argument);
  for (uint64_t g : {2ull, 3ull, 5ull, 10ull}) {
    uint64_t brute = 0;
    for (uint64_t p = 2; p <= 200; ++p) {
      if (!sieve().is_prime(p) || g % p == 0) continue;
      if (brute_order(g, p) == p - 1) ++brute;
    }
    CHECK(primitive_root_prime_count(sieve(), 200, g) == brute);
  }
}

TEST_CASE("record invariants") {
  for (uint64_t ell = 1; ell <= 400; ++ell) {
    ArithRecord r = arith_record(sieve(), ell, 2);
    CHECK(r.phi == sieve().phi(ell));
    CHECK(r.phi % r.lambda == 0);
    CHECK(r.tau == sieve().tau(ell));
    CHECK(r.sigma == sieve().sigma(ell));
    bool coprime = ell == 1 || std::gcd(2ull, ell) == 1;
    CHECK(r.order_g.has_value() == coprime);
    if (r.order_g) CHECK(r.lambda % *r.order_g == 0);
  }
}

TEST_CASE("streaming visits every modulus once") {
  uint64_t seen = 0, last = 0;
  stream_records(sieve(), 50, 3, [&](const ArithRecord& r) {
    ++seen;
    CHECK(r.ell == last + 1);
    last = r.ell;
  });
  CHECK(seen == 50);
}

TEST_CASE("stats rows agree with the single-quantity functions") {
  std::vector<uint64_t> cps{10, 100, 1000};
  auto rows = arith_stats(sieve(), cps, 2);
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    CHECK(row.L == cps[i]);
    double L = static_cast<double>(row.L);
    CHECK(row.t_avg == doctest::Approx(avg_multiplicative_order(sieve(), row.L, 2)).epsilon(1e-12));
    CHECK(row.lambda_avg == doctest::Approx(sum_carmichael(sieve(), row.L)).epsilon(1e-12));
    CHECK(row.q_avg == doctest::Approx(q_average(sieve(), row.L)).epsilon(1e-12));
    CHECK(row.d_avg == doctest::Approx(divisor_average(sieve(), row.L)).epsilon(1e-12));
    CHECK(row.t_avg_norm == doctest::Approx(row.t_avg * std::log(L) / L));
    CHECK(row.ratio == doctest::Approx(row.t_avg / row.lambda_avg));
    CHECK(row.q_avg_norm == doctest::Approx(row.q_avg / (q_average_slope() * L)));
    CHECK(row.d_norm_sqrt == doctest::Approx(row.d_avg * std::sqrt(std::log(L)) / L));
    CHECK(row.d_norm_arnold == doctest::Approx(row.d_avg * std::log(L) / (1.5 * L)));
  }
  CHECK_THROWS_AS(arith_stats(sieve(), {0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(arith_stats(sieve(), {6000}, 2), std::invalid_argument);
  CHECK(arith_stats(sieve(), {}, 2).empty());
}
