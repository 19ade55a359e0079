#include "ffdyn/expsums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ffdyn/kahan.hpp"

namespace ffdyn {

namespace {

std::vector<std::complex<double>> root_table(uint64_t p) {
  std::vector<std::complex<double>> t(p);
  for (uint64_t r = 0; r < p; ++r) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
    t[r] = {std::cos(ang), std::sin(ang)};
  }
  return t;
}

// sum over rows of e_p(c . a_m) for an integer weight vector c
std::complex<double> sum_with_weights(const UnitPointSet& pts,
                                      const std::vector<int64_t>& c,
                                      const std::vector<std::complex<double>>& tab) {
  const int64_t p = static_cast<int64_t>(pts.den);
  KahanComplex acc;
  for (uint64_t i = 0; i < pts.count(); ++i) {
    const uint32_t* row = pts.row(i);
    int64_t s = 0;
    for (uint32_t j = 0; j < pts.dim; ++j) s += c[j] * static_cast<int64_t>(row[j]);
    int64_t r = s % p;
    if (r < 0) r += p;
    acc.add(tab[static_cast<uint64_t>(r)]);
  }
  return acc.get();
}

}  // namespace

double envelope_for(const FieldCtx& ctx, const ExponentSchedule& sched) {
  double p = static_cast<double>(ctx.p);
  double n = static_cast<double>(ctx.n);
  switch (sched.kind) {
    case ScheduleKind::Linear:
      return std::pow(p, n / 2.0) * std::log(p);
    case ScheduleKind::Monomial:
      return std::pow(p, (1.0 - rho(sched.monomial_k).value()) * n);
    default:
      return static_cast<double>(sched.length);
  }
}

ExpSumResult incomplete_sum(const FieldCtx& ctx, const FFElem& gamma,
                            const ExponentSchedule& sched) {
  if (ff_is_zero(gamma)) throw std::invalid_argument("gamma must be nonzero");
  sched.validate();
  // dual expansion gamma = sum_j c_j omega_j, c_j = Tr(gamma * theta^j);
  // then Tr(gamma * theta^E) = sum_j c_j a_{j,E} mod p
  std::vector<int64_t> c(ctx.n);
  FFElem tp = ctx.one();
  for (uint32_t j = 0; j < ctx.n; ++j) {
    c[j] = static_cast<int64_t>(trace(ctx, ff_mul(ctx, gamma, tp)));
    tp = ff_mul(ctx, tp, ctx.theta);
  }
  UnitPointSet pts = generate(ctx, sched);
  auto tab = root_table(ctx.p);

  ExpSumResult res;
  res.value = sum_with_weights(pts, c, tab);
  res.abs = std::abs(res.value);
  res.envelope = envelope_for(ctx, sched);
  res.ratio = res.envelope > 0 ? res.abs / res.envelope : 0.0;
  res.p = ctx.p;
  res.n = ctx.n;
  res.schedule = sched.describe();
  res.length = sched.length;
  res.gamma_code = encode(ctx, gamma);
  return res;
}

ExpSumResult max_over_gamma(const FieldCtx& ctx, const ExponentSchedule& sched,
                            uint64_t cap) {
  sched.validate();
  if (ctx.group_order > cap) throw CapExceeded("gamma enumeration exceeds cap");
  UnitPointSet pts = generate(ctx, sched);
  auto tab = root_table(ctx.p);

  std::vector<int64_t> c(ctx.n, 0);
  std::vector<int64_t> best_c;
  std::complex<double> best_val;
  double best_abs = -1.0;
  for (;;) {
    // odometer over dual coordinates, first coordinate fastest
    uint32_t j = 0;
    while (j < ctx.n) {
      if (++c[j] < static_cast<int64_t>(ctx.p)) break;
      c[j] = 0;
      ++j;
    }
    if (j == ctx.n) break;
    std::complex<double> v = sum_with_weights(pts, c, tab);
    double a = std::abs(v);
    if (a > best_abs) {
      best_abs = a;
      best_val = v;
      best_c = c;
    }
  }

  FFElem gamma = ctx.zero();
  for (uint32_t j = 0; j < ctx.n; ++j) {
    if (!best_c[j]) continue;
    FFElem scaled = ctx.dual_basis[j];
    for (uint32_t t = 0; t < ctx.n; ++t)
      scaled.coeffs[t] = static_cast<uint32_t>(
          (static_cast<uint64_t>(scaled.coeffs[t]) * static_cast<uint64_t>(best_c[j])) % ctx.p);
    gamma = ff_add(ctx, gamma, scaled);
  }

  ExpSumResult res;
  res.value = best_val;
  res.abs = best_abs;
  res.envelope = envelope_for(ctx, sched);
  res.ratio = res.envelope > 0 ? res.abs / res.envelope : 0.0;
  res.p = ctx.p;
  res.n = ctx.n;
  res.schedule = sched.describe();
  res.length = sched.length;
  res.gamma_code = encode(ctx, gamma);
  return res;
}

Rational rho(uint64_t k) {
  if (k < 2) throw std::invalid_argument("monomial saving defined for degree >= 2");
  if (k == 2) return Rational(1, 8);
  uint64_t half_up = (k + 1) / 2;
  return Rational(half_up - 1, 2 * k * half_up + 2);
}

double koksma_szusz_rhs(const UnitPointSet& pts, uint64_t L, uint64_t cap) {
  if (L < 2) throw std::invalid_argument("truncation level must exceed 1");
  if (pts.count() == 0) throw std::invalid_argument("empty point set");
  const uint32_t n = pts.dim;
  double vectors = std::pow(2.0 * static_cast<double>(L) + 1.0, n) - 1.0;
  if (vectors > static_cast<double>(cap))
    throw CapExceeded("frequency vector enumeration exceeds cap");

  auto tab = root_table(pts.den);
  const int64_t lo = -static_cast<int64_t>(L);
  std::vector<int64_t> c(n, lo);
  KahanSum total;
  for (;;) {
    bool zero = true;
    for (int64_t v : c)
      if (v) zero = false;
    if (!zero) {
      double w = 1.0;
      for (int64_t v : c) w /= 1.0 + static_cast<double>(v < 0 ? -v : v);
      total.add(w * std::abs(sum_with_weights(pts, c, tab)));
    }
    uint32_t j = 0;
    while (j < n) {
      if (++c[j] <= static_cast<int64_t>(L)) break;
      c[j] = lo;
      ++j;
    }
    if (j == n) break;
  }
  return 1.0 / static_cast<double>(L) +
         total.get() / static_cast<double>(pts.count());
}

}  // namespace ffdyn
