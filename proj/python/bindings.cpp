#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ffdyn/arith.hpp"
#include "ffdyn/equidist.hpp"
#include "ffdyn/expsums.hpp"
#include "ffdyn/ff.hpp"
#include "ffdyn/points.hpp"
#include "ffdyn/residue.hpp"
#include "ffdyn/version.hpp"

namespace py = pybind11;

namespace {

ffdyn::ExponentSchedule make_schedule(const std::string& kind, uint64_t M,
                                      uint64_t k, uint64_t e,
                                      const std::vector<int64_t>& poly) {
  if (kind == "linear") return ffdyn::ExponentSchedule::linear(M);
  if (kind == "poly") return ffdyn::ExponentSchedule::polynomial(poly, M);
  if (kind == "monomial") return ffdyn::ExponentSchedule::monomial(k, M);
  if (kind == "powering") return ffdyn::ExponentSchedule::powering(e, M);
  throw std::invalid_argument("unknown schedule: " + kind);
}

ffdyn::UnitPointSet points_for(uint64_t p, uint32_t n, const std::string& schedule,
                               uint64_t M, uint64_t k, uint64_t e,
                               const std::vector<int64_t>& poly, uint64_t seed) {
  ffdyn::FieldCtx ctx = ffdyn::build_field(p, n, seed);
  return ffdyn::generate(ctx, make_schedule(schedule, M, k, e, poly));
}

}  // namespace

PYBIND11_MODULE(ffdyn, m) {
  m.doc() = "orbit statistics in finite fields and residue rings";
  m.attr("__version__") = ffdyn::kVersion;

  m.def(
      "field_points",
      [](uint64_t p, uint64_t M, uint32_t n, const std::string& schedule,
         uint64_t k, uint64_t e, const std::vector<int64_t>& poly, uint64_t seed) {
        ffdyn::UnitPointSet pts = points_for(p, n, schedule, M, k, e, poly, seed);
        py::list rows;
        for (uint64_t i = 0; i < pts.count(); ++i) {
          py::list row;
          for (uint32_t c = 0; c < pts.dim; ++c) row.append(pts.row(i)[c]);
          rows.append(row);
        }
        py::dict d;
        d["den"] = pts.den;
        d["dim"] = pts.dim;
        d["points"] = rows;
        return d;
      },
      py::arg("p"), py::arg("M"), py::arg("n") = 1,
      py::arg("schedule") = "linear", py::arg("k") = 0, py::arg("e") = 0,
      py::arg("poly") = std::vector<int64_t>{}, py::arg("seed") = 1,
      "Exact orbit coordinates: numerators over the shared denominator p.");

  m.def(
      "lattice_check",
      [](uint64_t p, uint32_t n, uint64_t cap) {
        ffdyn::FieldCtx ctx = ffdyn::build_field(p, n);
        return ffdyn::full_orbit_lattice_check(ctx, cap);
      },
      py::arg("p"), py::arg("n") = 1, py::arg("cap") = 1000000,
      "True when the full linear orbit is exactly the nonzero (1/p)-lattice.");

  m.def(
      "discrepancy",
      [](uint64_t p, uint64_t M, uint32_t n, const std::string& schedule,
         uint64_t k, uint64_t e, const std::vector<int64_t>& poly,
         const std::string& mode, double resolution, uint64_t samples,
         uint64_t seed) {
        ffdyn::UnitPointSet pts = points_for(p, n, schedule, M, k, e, poly, seed);
        ffdyn::DiscrepancyMode dm;
        if (mode == "exact")
          dm = ffdyn::DiscrepancyMode::Exact;
        else if (mode == "grid")
          dm = ffdyn::DiscrepancyMode::Grid;
        else if (mode == "mc")
          dm = ffdyn::DiscrepancyMode::MonteCarlo;
        else
          throw std::invalid_argument("unknown mode: " + mode);
        ffdyn::DiscrepancyReport rep =
            ffdyn::box_discrepancy(pts, dm, resolution, samples, seed);
        py::dict d;
        d["value"] = rep.value;
        d["method"] = rep.method;
        d["error_bound"] = rep.error_bound;
        d["points"] = rep.points;
        d["dim"] = rep.dim;
        return d;
      },
      py::arg("p"), py::arg("M"), py::arg("n") = 1,
      py::arg("schedule") = "linear", py::arg("k") = 0, py::arg("e") = 0,
      py::arg("poly") = std::vector<int64_t>{}, py::arg("mode") = "exact",
      py::arg("resolution") = 0.05, py::arg("samples") = 10000,
      py::arg("seed") = 1, "Anchored-box discrepancy of an orbit point set.");

  m.def(
      "expsum_max",
      [](uint64_t p, uint64_t M, uint32_t n, const std::string& schedule,
         uint64_t k, uint64_t e, const std::vector<int64_t>& poly, uint64_t cap,
         uint64_t seed) {
        ffdyn::FieldCtx ctx = ffdyn::build_field(p, n, seed);
        ffdyn::ExpSumResult res =
            ffdyn::max_over_gamma(ctx, make_schedule(schedule, M, k, e, poly), cap);
        py::dict d;
        d["abs"] = res.abs;
        d["envelope"] = res.envelope;
        d["ratio"] = res.ratio;
        d["gamma"] = res.gamma_code;
        d["schedule"] = res.schedule;
        return d;
      },
      py::arg("p"), py::arg("M"), py::arg("n") = 1,
      py::arg("schedule") = "linear", py::arg("k") = 0, py::arg("e") = 0,
      py::arg("poly") = std::vector<int64_t>{}, py::arg("cap") = 100000,
      py::arg("seed") = 1,
      "Maximal absolute exponential sum over nonzero characters.");

  m.def(
      "ks_bound",
      [](uint64_t p, uint64_t M, uint64_t L, uint32_t n,
         const std::string& schedule, uint64_t k, uint64_t e,
         const std::vector<int64_t>& poly, uint64_t cap, uint64_t seed) {
        ffdyn::UnitPointSet pts = points_for(p, n, schedule, M, k, e, poly, seed);
        return ffdyn::koksma_szusz_rhs(pts, L, cap);
      },
      py::arg("p"), py::arg("M"), py::arg("L"), py::arg("n") = 1,
      py::arg("schedule") = "linear", py::arg("k") = 0, py::arg("e") = 0,
      py::arg("poly") = std::vector<int64_t>{}, py::arg("cap") = 1000000,
      py::arg("seed") = 1,
      "Truncated exponential-sum upper bound for the star discrepancy.");

  m.def(
      "rho", [](uint64_t k) { return ffdyn::rho(k).str(); }, py::arg("k"),
      "Saving exponent for degree-k monomial schedules, as 'num/den'.");

  m.def(
      "count_in_region",
      [](uint64_t p, uint64_t M, const std::string& region_json, uint32_t n,
         const std::string& schedule, uint64_t k, uint64_t e,
         const std::vector<int64_t>& poly, uint64_t seed) {
        ffdyn::UnitPointSet pts = points_for(p, n, schedule, M, k, e, poly, seed);
        return ffdyn::count_in_region(pts, ffdyn::Region::from_json(region_json));
      },
      py::arg("p"), py::arg("M"), py::arg("region"), py::arg("n") = 1,
      py::arg("schedule") = "linear", py::arg("k") = 0, py::arg("e") = 0,
      py::arg("poly") = std::vector<int64_t>{}, py::arg("seed") = 1,
      "Exact number of orbit points inside the region.");

  m.def(
      "shell_volume",
      [](const std::string& region_json, double epsilon, uint64_t samples,
         uint64_t seed) {
        ffdyn::Region region = ffdyn::Region::from_json(region_json);
        ffdyn::ShellEstimate est = ffdyn::shell_volume(region, epsilon, samples, seed);
        py::dict d;
        d["vol_plus"] = est.vol_plus;
        d["vol_minus"] = est.vol_minus;
        d["std_error"] = est.std_error;
        d["volume"] = region.volume();
        return d;
      },
      py::arg("region"), py::arg("epsilon"), py::arg("samples") = 100000,
      py::arg("seed") = 1, "Monte Carlo volumes of the boundary shells.");

  m.def(
      "avg_prim_deviation",
      [](uint64_t p, const std::vector<int64_t>& poly, uint64_t M,
         const std::string& region_json, uint32_t n, uint64_t cap) {
        return ffdyn::avg_primitive_root_deviation(
            p, n, poly, M, ffdyn::Region::from_json(region_json), cap);
      },
      py::arg("p"), py::arg("poly"), py::arg("M"), py::arg("region"),
      py::arg("n") = 1, py::arg("cap") = 10000,
      "Mean count deviation over all generators of the multiplicative group.");

  m.def(
      "avg_order",
      [](uint64_t g, uint64_t L) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(L, 2));
        return ffdyn::avg_multiplicative_order(sieve, L, g);
      },
      py::arg("g"), py::arg("L"),
      "Average multiplicative order of g over moduli up to L.");

  m.def(
      "sum_lambda",
      [](uint64_t L) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(L, 2));
        return ffdyn::sum_carmichael(sieve, L);
      },
      py::arg("L"), "Mean of the Carmichael function up to L.");

  m.def(
      "q_average",
      [](uint64_t L) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(L, 2));
        return ffdyn::q_average(sieve, L);
      },
      py::arg("L"), "Mean additive orbit period up to L.");

  m.def("q_slope", &ffdyn::q_average_slope,
        "Linear growth constant of the additive period mean.");

  m.def(
      "additive_period",
      [](uint64_t ell) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(ell, 2));
        return ffdyn::additive_average_period(sieve, ell).str();
      },
      py::arg("ell"), "Exact mean period of x -> x + a mod ell, as 'num/den'.");

  m.def(
      "avg_divisor",
      [](uint64_t K) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(K, 2));
        return ffdyn::divisor_average(sieve, K);
      },
      py::arg("K"), "Mean of sigma(k)/tau(k) up to K.");

  m.def(
      "avg_divisor_exact",
      [](uint64_t k) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(k, 2));
        return ffdyn::average_divisor(sieve, k).str();
      },
      py::arg("k"), "sigma(k)/tau(k) as an exact 'num/den' string.");

  m.def(
      "prim_root_count",
      [](uint64_t x, uint64_t g) {
        ffdyn::SpfSieve sieve(std::max<uint64_t>(x, 2));
        return ffdyn::primitive_root_prime_count(sieve, x, g);
      },
      py::arg("x"), py::arg("g"),
      "Primes up to x whose unit group is generated by g.");

  m.def(
      "arith_stats",
      [](const std::vector<uint64_t>& checkpoints, uint64_t g) {
        uint64_t top = 2;
        for (uint64_t c : checkpoints) top = std::max(top, c);
        ffdyn::SpfSieve sieve(top);
        py::list out;
        for (const auto& r : ffdyn::arith_stats(sieve, checkpoints, g)) {
          py::dict d;
          d["L"] = r.L;
          d["T_g"] = r.t_avg;
          d["T_g_norm"] = r.t_avg_norm;
          d["sumLambda"] = r.lambda_avg;
          d["ratio"] = r.ratio;
          d["Qavg"] = r.q_avg;
          d["Qavg_norm"] = r.q_avg_norm;
          d["D"] = r.d_avg;
          d["D_norm_sqrt"] = r.d_norm_sqrt;
          d["D_norm_arnold"] = r.d_norm_arnold;
          out.append(d);
        }
        return out;
      },
      py::arg("checkpoints"), py::arg("g") = 2,
      "One row of averaged statistics per checkpoint.");

  m.def(
      "orbit",
      [](const std::string& map, uint64_t param, uint64_t ell, uint64_t x0) {
        ffdyn::OrbitStats s =
            ffdyn::orbit(ffdyn::map_kind_from_string(map), param, ell, x0);
        return py::make_tuple(s.tail, s.cycle);
      },
      py::arg("map"), py::arg("param"), py::arg("ell"), py::arg("x0"),
      "(tail, cycle) of the orbit of x0 under the chosen residue map.");

  m.def(
      "predicted_orbit",
      [](const std::string& map, uint64_t param, uint64_t ell, uint64_t x0) {
        ffdyn::OrbitPrediction p =
            ffdyn::predicted_orbit(ffdyn::map_kind_from_string(map), param, ell, x0);
        py::object tail = p.tail ? py::cast(*p.tail) : py::none();
        py::object cycle = p.cycle ? py::cast(*p.cycle) : py::none();
        return py::make_tuple(tail, cycle);
      },
      py::arg("map"), py::arg("param"), py::arg("ell"), py::arg("x0"),
      "Closed-form (tail, cycle) where available, None where not.");

  m.def(
      "counterexample",
      [](uint64_t p) {
        ffdyn::CounterexampleReport r = ffdyn::counterexample_doubling(p);
        py::dict d;
        d["p"] = r.p;
        d["count_J"] = r.count_J;
        d["observed_freq"] = r.observed_freq;
        d["conjectured_freq"] = r.conjectured_freq;
        d["actual_freq"] = r.actual_freq;
        d["implication_holds"] = r.implication_holds;
        return d;
      },
      py::arg("p"), "Doubling-window implication scan for a prime modulus.");
}
