#include "ffdyn/equidist.hpp"

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ffdyn/rng.hpp"

namespace ffdyn {

namespace {

// a/den <= bound, decided exactly. The fast path is valid because
// bound*den carries absolute error far below 1/2.
bool le_exact(uint32_t a, uint64_t den, double bound) {
  double t = bound * static_cast<double>(den);
  if (static_cast<double>(a) < t - 0.5) return true;
  if (static_cast<double>(a) > t + 0.5) return false;
  return cmp(mpq_class(bound) * static_cast<unsigned long>(den), static_cast<unsigned long>(a)) >= 0;
}

bool ge_exact(uint32_t a, uint64_t den, double bound) {
  double t = bound * static_cast<double>(den);
  if (static_cast<double>(a) > t + 0.5) return true;
  if (static_cast<double>(a) < t - 0.5) return false;
  return cmp(mpq_class(bound) * static_cast<unsigned long>(den), static_cast<unsigned long>(a)) <= 0;
}

double ball_volume(uint32_t n, double r) {
  return std::pow(std::numbers::pi, n / 2.0) * std::pow(r, n) / std::tgamma(n / 2.0 + 1.0);
}

double dist2_double(const double* u, const std::vector<double>& c) {
  double s = 0.0;
  for (size_t i = 0; i < c.size(); ++i) s += (u[i] - c[i]) * (u[i] - c[i]);
  return s;
}

}  // namespace

Region Region::axis_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("box bounds must be nonempty and equally sized");
  Region r;
  r.kind_ = RegionKind::AxisBox;
  r.dim_ = static_cast<uint32_t>(lo.size());
  double vol = 1.0;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] >= 0.0 && hi[i] <= 1.0 && lo[i] <= hi[i]))
      throw std::invalid_argument("box must satisfy 0 <= lo <= hi <= 1");
    vol *= hi[i] - lo[i];
  }
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  r.volume_ = vol;
  return r;
}

Region Region::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw std::invalid_argument("ball center must be nonempty");
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  for (double c : center)
    if (!(c - radius >= 0.0 && c + radius <= 1.0))
      throw std::invalid_argument("ball must lie inside the unit cube");
  Region r;
  r.kind_ = RegionKind::Ball;
  r.dim_ = static_cast<uint32_t>(center.size());
  r.center_ = std::move(center);
  r.radius_ = radius;
  r.volume_ = ball_volume(r.dim_, radius);
  return r;
}

Region Region::mc_clipped_ball(std::vector<double> center, double radius,
                               uint64_t samples, uint64_t seed) {
  if (center.empty()) throw std::invalid_argument("center must be nonempty");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (samples < 1) throw std::invalid_argument("volume estimate needs samples");
  Region r;
  r.kind_ = RegionKind::MC;
  r.dim_ = static_cast<uint32_t>(center.size());
  r.center_ = std::move(center);
  r.radius_ = radius;
  r.mc_samples_ = samples;
  r.mc_seed_ = seed;
  uint64_t hits = 0;
  std::vector<double> u(r.dim_);
  for (uint64_t i = 0; i < samples; ++i) {
    for (uint32_t j = 0; j < r.dim_; ++j) u[j] = draw_unit(seed, i * r.dim_ + j);
    if (dist2_double(u.data(), r.center_) <= radius * radius) ++hits;
  }
  double f = static_cast<double>(hits) / static_cast<double>(samples);
  r.volume_ = f;
  r.volume_stderr_ = std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  return r;
}

Region Region::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "box")
    return axis_box(j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>());
  if (kind == "ball")
    return ball(j.at("center").get<std::vector<double>>(), j.at("radius").get<double>());
  if (kind == "mc")
    return mc_clipped_ball(j.at("center").get<std::vector<double>>(),
                           j.at("radius").get<double>(),
                           j.value("samples", uint64_t{100000}),
                           j.value("seed", uint64_t{1}));
  throw std::invalid_argument("unknown region kind: " + kind);
}

std::string Region::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case RegionKind::AxisBox:
      j["kind"] = "box";
      j["lo"] = lo_;
      j["hi"] = hi_;
      break;
    case RegionKind::Ball:
      j["kind"] = "ball";
      j["center"] = center_;
      j["radius"] = radius_;
      break;
    case RegionKind::MC:
      j["kind"] = "mc";
      j["center"] = center_;
      j["radius"] = radius_;
      j["samples"] = mc_samples_;
      j["seed"] = mc_seed_;
      break;
  }
  return j.dump();
}

bool Region::contains(const uint32_t* nums, uint64_t den) const {
  switch (kind_) {
    case RegionKind::AxisBox:
      for (uint32_t i = 0; i < dim_; ++i)
        if (!ge_exact(nums[i], den, lo_[i]) || !le_exact(nums[i], den, hi_[i])) return false;
      return true;
    case RegionKind::Ball:
    case RegionKind::MC: {
      // fast double path with a wide safety margin, exact fallback
      double s = 0.0;
      for (uint32_t i = 0; i < dim_; ++i) {
        double d = static_cast<double>(nums[i]) / static_cast<double>(den) - center_[i];
        s += d * d;
      }
      double r2 = radius_ * radius_;
      if (s < r2 - 1e-9) return true;
      if (s > r2 + 1e-9) return false;
      mpq_class lhs = 0;
      mpq_class qden(static_cast<unsigned long>(den));
      for (uint32_t i = 0; i < dim_; ++i) {
        mpq_class d = mpq_class(static_cast<unsigned long>(nums[i])) - mpq_class(center_[i]) * qden;
        lhs += d * d;
      }
      mpq_class rhs = mpq_class(radius_) * mpq_class(radius_) * qden * qden;
      return lhs <= rhs;
    }
  }
  return false;
}

bool Region::contains(const double* u) const {
  switch (kind_) {
    case RegionKind::AxisBox:
      for (uint32_t i = 0; i < dim_; ++i)
        if (u[i] < lo_[i] || u[i] > hi_[i]) return false;
      return true;
    case RegionKind::Ball:
    case RegionKind::MC:
      return dist2_double(u, center_) <= radius_ * radius_;
  }
  return false;
}

bool Region::in_plus_shell(const double* u, double eps) const {
  if (contains(u)) return false;
  switch (kind_) {
    case RegionKind::AxisBox: {
      double s = 0.0;
      for (uint32_t i = 0; i < dim_; ++i) {
        double d = std::max({0.0, lo_[i] - u[i], u[i] - hi_[i]});
        s += d * d;
      }
      return std::sqrt(s) < eps;
    }
    case RegionKind::Ball:
      return std::sqrt(dist2_double(u, center_)) - radius_ < eps;
    case RegionKind::MC: {
      // axis probes; approximate by construction
      std::vector<double> q(u, u + dim_);
      for (uint32_t i = 0; i < dim_; ++i) {
        for (double delta : {eps, -eps}) {
          q[i] = u[i] + delta;
          if (q[i] >= 0.0 && q[i] <= 1.0 && contains(q.data())) return true;
        }
        q[i] = u[i];
      }
      return false;
    }
  }
  return false;
}

bool Region::in_minus_shell(const double* u, double eps) const {
  if (!contains(u)) return false;
  switch (kind_) {
    case RegionKind::AxisBox: {
      // faces on the cube boundary do not border the in-cube complement
      double d = std::numeric_limits<double>::infinity();
      for (uint32_t i = 0; i < dim_; ++i) {
        if (lo_[i] > 0.0) d = std::min(d, u[i] - lo_[i]);
        if (hi_[i] < 1.0) d = std::min(d, hi_[i] - u[i]);
      }
      return d < eps;
    }
    case RegionKind::Ball:
      return radius_ - std::sqrt(dist2_double(u, center_)) < eps;
    case RegionKind::MC: {
      std::vector<double> q(u, u + dim_);
      for (uint32_t i = 0; i < dim_; ++i) {
        for (double delta : {eps, -eps}) {
          q[i] = u[i] + delta;
          if (q[i] >= 0.0 && q[i] <= 1.0 && !contains(q.data())) return true;
        }
        q[i] = u[i];
      }
      return false;
    }
  }
  return false;
}

uint64_t count_in_region(const UnitPointSet& pts, const Region& region) {
  if (pts.dim != region.dim()) throw std::invalid_argument("dimension mismatch");
  uint64_t c = 0;
  for (uint64_t i = 0; i < pts.count(); ++i)
    if (region.contains(pts.row(i), pts.den)) ++c;
  return c;
}

Deviation region_deviation(const UnitPointSet& pts, const Region& region) {
  Deviation d;
  d.count = count_in_region(pts, region);
  d.volume = region.volume();
  double m = static_cast<double>(pts.count());
  d.raw = std::abs(static_cast<double>(d.count) - m * d.volume);
  d.normalized = m > 0 ? d.raw / m : 0.0;
  return d;
}

namespace {

DiscrepancyReport discrepancy_exact(const UnitPointSet& pts) {
  const uint32_t n = pts.dim;
  const uint64_t M = pts.count();
  if (n > 2) throw CapExceeded("exact discrepancy supports dimension <= 2");
  if (M > 512) throw CapExceeded("exact discrepancy supports at most 512 points");
  if (M == 0) throw std::invalid_argument("empty point set");
  const double den = static_cast<double>(pts.den);

  // distinct coordinate values per dimension; the sentinel index G
  // stands for an upper face at 1
  std::vector<std::vector<uint32_t>> vals(n);
  for (uint32_t j = 0; j < n; ++j) {
    for (uint64_t i = 0; i < M; ++i) vals[j].push_back(pts.row(i)[j]);
    std::sort(vals[j].begin(), vals[j].end());
    vals[j].erase(std::unique(vals[j].begin(), vals[j].end()), vals[j].end());
  }
  auto rank_of = [](const std::vector<uint32_t>& v, uint32_t x) {
    return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  auto face_value = [&](uint32_t j, size_t idx) {
    return idx < vals[j].size() ? static_cast<double>(vals[j][idx]) / den : 1.0;
  };

  double best = 0.0;
  if (n == 1) {
    const auto& v = vals[0];
    size_t G = v.size();
    std::vector<uint32_t> pref(G + 1, 0);  // pref[a+1] = #points with rank <= a
    for (uint64_t i = 0; i < M; ++i) ++pref[rank_of(v, pts.row(i)[0]) + 1];
    for (size_t a = 0; a < G; ++a) pref[a + 1] += pref[a];
    for (size_t a = 0; a <= G; ++a) {
      double beta = face_value(0, a);
      size_t le = a < G ? a + 1 : G;  // prefix index for x <= beta
      size_t lt = a < G ? a : G;      // prefix index for x < beta
      best = std::max(best, static_cast<double>(pref[le]) / M - beta);
      best = std::max(best, beta - static_cast<double>(pref[lt]) / M);
    }
  } else {
    const auto &v0 = vals[0], &v1 = vals[1];
    size_t G0 = v0.size(), G1 = v1.size();
    std::vector<std::vector<uint32_t>> T(G0 + 1, std::vector<uint32_t>(G1 + 1, 0));
    for (uint64_t i = 0; i < M; ++i)
      ++T[rank_of(v0, pts.row(i)[0]) + 1][rank_of(v1, pts.row(i)[1]) + 1];
    for (size_t a = 1; a <= G0; ++a)
      for (size_t b = 1; b <= G1; ++b)
        T[a][b] += T[a - 1][b] + T[a][b - 1] - T[a - 1][b - 1];
    for (size_t a = 0; a <= G0; ++a) {
      size_t le0 = a < G0 ? a + 1 : G0;
      size_t lt0 = a < G0 ? a : G0;
      double beta0 = face_value(0, a);
      for (size_t b = 0; b <= G1; ++b) {
        size_t le1 = b < G1 ? b + 1 : G1;
        size_t lt1 = b < G1 ? b : G1;
        double vol = beta0 * face_value(1, b);
        best = std::max(best, static_cast<double>(T[le0][le1]) / M - vol);
        best = std::max(best, vol - static_cast<double>(T[lt0][lt1]) / M);
      }
    }
  }

  DiscrepancyReport rep;
  rep.value = best;
  rep.method = "exact";
  rep.error_bound = 0.0;
  rep.points = M;
  rep.dim = n;
  return rep;
}

DiscrepancyReport discrepancy_grid(const UnitPointSet& pts, double resolution) {
  const uint32_t n = pts.dim;
  const uint64_t M = pts.count();
  if (M == 0) throw std::invalid_argument("empty point set");
  if (!(resolution > 0.0 && resolution <= 1.0))
    throw std::invalid_argument("resolution must lie in (0, 1]");
  if (n > 2) throw CapExceeded("grid discrepancy supports dimension <= 2");
  uint64_t cells = std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(1.0 / resolution)));
  double memory = std::pow(static_cast<double>(cells) + 1.0, n);
  if (memory > 4.3e6) throw CapExceeded("grid resolution too fine");
  const double r = 1.0 / static_cast<double>(cells);

  // smallest k with a/den <= k/cells, and with a/den < k/cells
  auto kmin_le = [&](uint32_t a) {
    return (static_cast<uint64_t>(a) * cells + pts.den - 1) / pts.den;
  };
  auto kmin_lt = [&](uint32_t a) { return static_cast<uint64_t>(a) * cells / pts.den + 1; };

  double best = 0.0;
  if (n == 1) {
    std::vector<uint32_t> hle(cells + 2, 0), hlt(cells + 2, 0);
    for (uint64_t i = 0; i < M; ++i) {
      ++hle[std::min(kmin_le(pts.row(i)[0]), cells + 1)];
      ++hlt[std::min(kmin_lt(pts.row(i)[0]), cells + 1)];
    }
    uint64_t cle = 0, clt = 0;
    for (uint64_t k = 0; k <= cells; ++k) {
      cle += hle[k];
      clt += hlt[k];
      double vol = static_cast<double>(k) * r;
      best = std::max(best, static_cast<double>(cle) / M - vol);
      best = std::max(best, vol - static_cast<double>(clt) / M);
    }
  } else {
    size_t w = cells + 2;
    std::vector<uint32_t> hle(w * w, 0), hlt(w * w, 0);
    for (uint64_t i = 0; i < M; ++i) {
      uint64_t a0 = std::min(kmin_le(pts.row(i)[0]), cells + 1);
      uint64_t a1 = std::min(kmin_le(pts.row(i)[1]), cells + 1);
      uint64_t b0 = std::min(kmin_lt(pts.row(i)[0]), cells + 1);
      uint64_t b1 = std::min(kmin_lt(pts.row(i)[1]), cells + 1);
      ++hle[a0 * w + a1];
      ++hlt[b0 * w + b1];
    }
    // prefix sums turn the histograms into box counts
    for (auto* h : {&hle, &hlt})
      for (size_t a = 0; a < w; ++a)
        for (size_t b = 0; b < w; ++b) {
          uint32_t v = (*h)[a * w + b];
          if (a) v += (*h)[(a - 1) * w + b];
          if (b) v += (*h)[a * w + b - 1];
          if (a && b) v -= (*h)[(a - 1) * w + b - 1];
          (*h)[a * w + b] = v;
        }
    for (uint64_t k0 = 0; k0 <= cells; ++k0)
      for (uint64_t k1 = 0; k1 <= cells; ++k1) {
        double vol = static_cast<double>(k0) * r * static_cast<double>(k1) * r;
        best = std::max(best, static_cast<double>(hle[k0 * w + k1]) / M - vol);
        best = std::max(best, vol - static_cast<double>(hlt[k0 * w + k1]) / M);
      }
  }

  DiscrepancyReport rep;
  rep.value = best;
  rep.method = "critical-grid";
  rep.error_bound = static_cast<double>(n) * r;
  rep.points = M;
  rep.dim = n;
  return rep;
}

DiscrepancyReport discrepancy_mc(const UnitPointSet& pts, uint64_t samples, uint64_t seed) {
  const uint32_t n = pts.dim;
  const uint64_t M = pts.count();
  if (M == 0) throw std::invalid_argument("empty point set");
  if (samples < 1) throw std::invalid_argument("mc discrepancy needs samples");
  double best = 0.0;
  std::vector<double> beta(n);
  for (uint64_t s = 0; s < samples; ++s) {
    for (uint32_t j = 0; j < n; ++j) beta[j] = draw_unit(seed, s * n + j);
    uint64_t cnt = 0;
    for (uint64_t i = 0; i < M; ++i) {
      const uint32_t* row = pts.row(i);
      bool in = true;
      for (uint32_t j = 0; j < n; ++j)
        if (static_cast<double>(row[j]) / static_cast<double>(pts.den) > beta[j]) {
          in = false;
          break;
        }
      if (in) ++cnt;
    }
    double vol = 1.0;
    for (uint32_t j = 0; j < n; ++j) vol *= beta[j];
    best = std::max(best, std::abs(static_cast<double>(cnt) / M - vol));
  }
  DiscrepancyReport rep;
  rep.value = best;  // stochastic lower bound on the supremum
  rep.method = "monte-carlo";
  rep.error_bound = 1.0;
  rep.points = M;
  rep.dim = n;
  return rep;
}

}  // namespace

DiscrepancyReport box_discrepancy(const UnitPointSet& pts, DiscrepancyMode mode,
                                  double resolution, uint64_t samples, uint64_t seed) {
  switch (mode) {
    case DiscrepancyMode::Exact:
      return discrepancy_exact(pts);
    case DiscrepancyMode::Grid:
      return discrepancy_grid(pts, resolution);
    case DiscrepancyMode::MonteCarlo:
      return discrepancy_mc(pts, samples, seed);
  }
  throw std::logic_error("unknown discrepancy mode");
}

ShellEstimate shell_volume(const Region& region, double epsilon,
                           uint64_t samples, uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("shell width must be positive");
  if (samples < 1) throw std::invalid_argument("shell estimate needs samples");
  const uint32_t n = region.dim();
  uint64_t plus = 0, minus = 0;
  std::vector<double> u(n);
  for (uint64_t i = 0; i < samples; ++i) {
    for (uint32_t j = 0; j < n; ++j) u[j] = draw_unit(seed, i * n + j);
    if (region.in_plus_shell(u.data(), epsilon))
      ++plus;
    else if (region.in_minus_shell(u.data(), epsilon))
      ++minus;
  }
  ShellEstimate est;
  est.epsilon = epsilon;
  est.samples = samples;
  est.vol_plus = static_cast<double>(plus) / static_cast<double>(samples);
  est.vol_minus = static_cast<double>(minus) / static_cast<double>(samples);
  auto se = [samples](double f) {
    return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  };
  est.std_error = std::max(se(est.vol_plus), se(est.vol_minus));
  return est;
}

double avg_primitive_root_deviation(uint64_t p, uint32_t n,
                                    const std::vector<int64_t>& poly, uint64_t M,
                                    const Region& region, uint64_t cap) {
  FieldCtx ctx = build_field(p, n);
  if (ctx.group_order > cap) throw CapExceeded("generator sweep exceeds cap");
  if (region.dim() != n) throw std::invalid_argument("dimension mismatch");
  ExponentSchedule sched = ExponentSchedule::polynomial(poly, M);
  sched.validate();

  const uint64_t ord = ctx.group_order;
  std::vector<FFElem> tpow(ord, ctx.one());
  for (uint64_t k = 1; k < ord; ++k) tpow[k] = ff_mul(ctx, tpow[k - 1], ctx.theta);
  std::vector<uint64_t> exps(M);
  for (uint64_t m = 1; m <= M; ++m) exps[m - 1] = sched.exponent(m, ord);

  double total = 0.0;
  uint64_t roots = 0;
  for (uint64_t x = 1; x <= ord; ++x) {
    if (std::gcd(x, ord) != 1) continue;
    const FFElem& g = tpow[x % ord];
    CoordinateFrame fr = coordinate_frame(ctx, g);
    uint64_t cnt = 0;
    for (uint64_t i = 0; i < M; ++i) {
      const FFElem& el = tpow[mulmod(x, exps[i], ord)];
      std::vector<uint32_t> coords = frame_coords(ctx, fr, el);
      if (region.contains(coords.data(), p)) ++cnt;
    }
    total += std::abs(static_cast<double>(cnt) - static_cast<double>(M) * region.volume());
    ++roots;
  }
  return total / static_cast<double>(roots);
}

}  // namespace ffdyn
