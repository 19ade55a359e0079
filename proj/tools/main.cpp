#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffdyn/arith.hpp"
#include "ffdyn/equidist.hpp"
#include "ffdyn/expsums.hpp"
#include "ffdyn/ff.hpp"
#include "ffdyn/points.hpp"
#include "ffdyn/residue.hpp"
#include "ffdyn/version.hpp"

using ordered = nlohmann::ordered_json;

namespace {

// All floating output carries at most 12 significant digits so files
// compare bytewise across platforms.
double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int64_t v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in list: '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size())
      throw std::invalid_argument("bad integer in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<uint64_t> parse_uint_list(const std::string& text) {
  std::vector<uint64_t> out;
  for (int64_t v : parse_int_list(text)) {
    if (v < 0) throw std::invalid_argument("list entries must be nonnegative");
    out.push_back(static_cast<uint64_t>(v));
  }
  return out;
}

ffdyn::ExponentSchedule make_schedule(const std::string& kind, uint64_t M,
                                      uint64_t k, uint64_t e,
                                      const std::string& poly) {
  if (kind == "linear") return ffdyn::ExponentSchedule::linear(M);
  if (kind == "poly") {
    if (poly.empty())
      throw std::invalid_argument("schedule 'poly' needs --poly \"c0,c1,...\"");
    return ffdyn::ExponentSchedule::polynomial(parse_int_list(poly), M);
  }
  if (kind == "monomial") {
    if (k == 0) throw std::invalid_argument("schedule 'monomial' needs --k");
    return ffdyn::ExponentSchedule::monomial(k, M);
  }
  if (kind == "powering") {
    if (e == 0) throw std::invalid_argument("schedule 'powering' needs --e");
    return ffdyn::ExponentSchedule::powering(e, M);
  }
  throw std::invalid_argument("unknown schedule: " + kind);
}

ffdyn::Region region_from_flag(const std::string& arg) {
  std::string text = arg;
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::invalid_argument("--region is empty");
  if (text[first] != '{') {
    std::ifstream f(arg, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read region file: " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return ffdyn::Region::from_json(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad region JSON: ") + e.what());
  }
}

ordered base_payload(const std::string& kind) {
  ordered j;
  j["schema_version"] = ffdyn::kSchemaVersion;
  j["kind"] = kind;
  return j;
}

struct Emitter {
  std::string command;
  CLI::App* sub = nullptr;
  uint64_t seed = 1;
  std::string out;
  std::chrono::system_clock::time_point started;

  void write(const std::string& payload) const {
    if (out.empty()) {
      std::cout << payload;
      if (payload.empty() || payload.back() != '\n') std::cout << '\n';
      return;
    }
    {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + out);
      f << payload;
    }
    ordered m;
    m["schema_version"] = ffdyn::kSchemaVersion;
    m["kind"] = "manifest";
    m["command"] = command;
    ordered params = ordered::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt == sub->get_help_ptr()) continue;
      const auto& lnames = opt->get_lnames();
      if (lnames.empty()) continue;
      std::string val;
      if (opt->count() > 0) {
        const auto& rs = opt->results();
        for (size_t i = 0; i < rs.size(); ++i) val += (i ? "," : "") + rs[i];
      } else {
        val = opt->get_default_str();
        if (val.empty()) continue;
      }
      params[lnames.front()] = val;
    }
    m["params"] = params;
    m["seed"] = seed;
    m["version"] = ffdyn::kVersion;
    m["started_utc"] = iso_utc(started);
    m["finished_utc"] = iso_utc(std::chrono::system_clock::now());
    m["payload_bytes"] = payload.size();
    char sum[32];
    std::snprintf(sum, sizeof sum, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload)));
    m["payload_checksum"] = sum;
    std::ofstream mf(out + ".manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot open manifest file");
    mf << m.dump(2) << '\n';
  }

  void write_json(const ordered& j) const { write(j.dump(2) + "\n"); }
};

void require_json_format(const std::string& format) {
  if (format != "json")
    throw std::invalid_argument("this subcommand only emits json");
}

ordered region_json(const ffdyn::Region& r) {
  return ordered::parse(r.to_json());
}

std::string arith_csv(const ffdyn::SpfSieve& sieve,
                      const std::vector<uint64_t>& checkpoints, uint64_t g) {
  std::string csv =
      "L,T_g,T_g_norm,sumLambda,ratio,Qavg,Qavg_norm,D,D_norm_sqrt,D_norm_arnold\n";
  for (const auto& row : ffdyn::arith_stats(sieve, checkpoints, g)) {
    csv += std::to_string(row.L);
    for (double v : {row.t_avg, row.t_avg_norm, row.lambda_avg, row.ratio,
                     row.q_avg, row.q_avg_norm, row.d_avg, row.d_norm_sqrt,
                     row.d_norm_arnold}) {
      csv += ',';
      csv += fmt12(v);
    }
    csv += '\n';
  }
  return csv;
}

struct Flags {
  uint64_t p = 0;
  uint32_t n = 1;
  uint64_t M = 0, k = 0, e = 0, g = 0, K = 0, x = 0, Lnum = 0;
  std::string Llist, Klist;
  std::string schedule, poly, region, mode, format, out;
  double resolution = 0.05;
  uint64_t seed = 1, samples = 100000;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace ffdyn;
  CLI::App app{"orbit statistics in finite fields and residue rings"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  auto add_io = [&](CLI::App* sub, const std::string& def_format) {
    sub->add_option("--out", f.out, "write payload here plus <out>.manifest.json");
    sub->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val(def_format);
    sub->add_option("--seed", f.seed, "master seed")->default_val("1");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", f.p, "field characteristic (prime)")->required();
    sub->add_option("--n", f.n, "extension degree")->default_val("1");
  };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--M", f.M, "number of iterates")->required();
    sub->add_option("--schedule", f.schedule,
                    "exponent rule: linear|poly|monomial|powering")
        ->required();
    sub->add_option("--k", f.k, "monomial exponent");
    sub->add_option("--e", f.e, "powering base");
    sub->add_option("--poly", f.poly, "polynomial coefficients \"c0,c1,...\"");
  };

  CLI::App* fp = app.add_subcommand("field-points",
                                    "exact orbit coordinates in the unit cube");
  add_field(fp);
  add_schedule(fp);
  add_io(fp, "csv");

  CLI::App* disc = app.add_subcommand("discrepancy",
                                      "anchored-box discrepancy of an orbit");
  add_field(disc);
  add_schedule(disc);
  disc->add_option("--mode", f.mode, "exact|grid|mc")->default_val("exact");
  disc->add_option("--resolution", f.resolution, "grid cell size")->default_val("0.05");
  disc->add_option("--samples", f.samples, "mc sample count")->default_val("10000");
  add_io(disc, "json");

  CLI::App* es = app.add_subcommand("expsum",
                                    "maximal exponential sum over characters");
  add_field(es);
  add_schedule(es);
  add_io(es, "json");

  CLI::App* ks = app.add_subcommand("ks-bound",
                                    "discrepancy upper bound from truncated sums");
  add_field(ks);
  add_schedule(ks);
  ks->add_option("--L", f.Lnum, "truncation level, at least 2")->required();
  add_io(ks, "json");

  CLI::App* sv = app.add_subcommand("shell-volume",
                                    "volume of the boundary shells of a region");
  sv->add_option("--region", f.region, "region JSON or path to a JSON file")->required();
  sv->add_option("--resolution", f.resolution, "shell width epsilon")->required();
  sv->add_option("--samples", f.samples, "sample count")->default_val("100000");
  add_io(sv, "json");

  CLI::App* ao = app.add_subcommand("avg-order",
                                    "average multiplicative order up to a bound");
  ao->add_option("--g", f.g, "base")->required();
  ao->add_option("--L", f.Llist, "bound, or comma list of checkpoints for csv")->required();
  add_io(ao, "json");

  CLI::App* sl = app.add_subcommand("sum-lambda",
                                    "average of the Carmichael function");
  sl->add_option("--L", f.Llist, "bound, or comma list of checkpoints for csv")->required();
  sl->add_option("--g", f.g, "base for the csv order column")->default_val("2");
  add_io(sl, "json");

  CLI::App* qa = app.add_subcommand("q-average",
                                    "mean additive orbit period up to a bound");
  qa->add_option("--L", f.Llist, "bound, or comma list of checkpoints for csv")->required();
  qa->add_option("--g", f.g, "base for the csv order column")->default_val("2");
  add_io(qa, "json");

  CLI::App* ad = app.add_subcommand("avg-divisor",
                                    "mean divisor size up to a bound");
  ad->add_option("--K", f.Klist, "bound, or comma list of checkpoints for csv")->required();
  ad->add_option("--g", f.g, "base for the csv order column")->default_val("2");
  add_io(ad, "json");

  CLI::App* pr = app.add_subcommand("prim-root-count",
                                    "primes below x whose units g generates");
  pr->add_option("--g", f.g, "base")->required();
  pr->add_option("--x", f.x, "upper bound")->required();
  add_io(pr, "json");

  CLI::App* ob = app.add_subcommand("orbit", "tail and cycle of a residue map");
  ob->add_option("--mode", f.mode, "map: mul|add|pow")->required();
  ob->add_option("--L", f.Lnum, "modulus")->required();
  ob->add_option("--x", f.x, "start value")->required();
  ob->add_option("--g", f.g, "parameter for mul/add maps");
  ob->add_option("--e", f.e, "exponent for the pow map");
  add_io(ob, "json");

  CLI::App* cx = app.add_subcommand("counterexample-2b",
                                    "doubling-window implication scan");
  cx->add_option("--p", f.p, "odd prime with 2 generating the units")->required();
  add_io(cx, "json");

  CLI::App* apd = app.add_subcommand("avg-prim-deviation",
                                     "mean orbit-count deviation over generators");
  add_field(apd);
  apd->add_option("--poly", f.poly, "polynomial coefficients \"c0,c1,...\"")->required();
  apd->add_option("--M", f.M, "number of iterates")->required();
  apd->add_option("--region", f.region, "region JSON or path to a JSON file")->required();
  add_io(apd, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  // default_val writes through the shared binding at registration time, so
  // the last subcommand registered wins; restore this subcommand's defaults
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->get_expected_min() == 0 || opt->count() > 0) continue;
    const std::string d = opt->get_default_str();
    if (d.empty()) continue;
    opt->add_result(d);
    opt->run_callback();
  }
  const std::string cmd = sub->get_name();
  Emitter em{cmd, sub, f.seed, f.out, std::chrono::system_clock::now()};

  try {
    if (cmd == "field-points") {
      FieldCtx ctx = build_field(f.p, f.n, f.seed);
      ExponentSchedule sched = make_schedule(f.schedule, f.M, f.k, f.e, f.poly);
      if (f.M > effort_cap(10000000))
        throw CapExceeded("M above enumeration cap; raise FFDYN_MAX_ENUM");
      UnitPointSet pts = generate(ctx, sched);
      if (f.format == "csv") {
        em.write(points_to_csv(pts));
      } else {
        ordered j = base_payload("field-points");
        j["p"] = f.p;
        j["n"] = f.n;
        j["M"] = f.M;
        j["schedule"] = sched.describe();
        j["den"] = pts.den;
        j["dim"] = pts.dim;
        ordered rows = ordered::array();
        for (uint64_t i = 0; i < pts.count(); ++i) {
          ordered row = ordered::array();
          for (uint32_t c = 0; c < pts.dim; ++c) row.push_back(pts.row(i)[c]);
          rows.push_back(row);
        }
        j["points"] = rows;
        em.write_json(j);
      }
    } else if (cmd == "discrepancy") {
      require_json_format(f.format);
      FieldCtx ctx = build_field(f.p, f.n, f.seed);
      ExponentSchedule sched = make_schedule(f.schedule, f.M, f.k, f.e, f.poly);
      UnitPointSet pts = generate(ctx, sched);
      DiscrepancyMode mode;
      if (f.mode == "exact")
        mode = DiscrepancyMode::Exact;
      else if (f.mode == "grid")
        mode = DiscrepancyMode::Grid;
      else if (f.mode == "mc")
        mode = DiscrepancyMode::MonteCarlo;
      else
        throw std::invalid_argument("unknown mode: " + f.mode);
      DiscrepancyReport rep =
          box_discrepancy(pts, mode, f.resolution, f.samples, f.seed);
      ordered j = base_payload("discrepancy");
      j["p"] = f.p;
      j["n"] = f.n;
      j["M"] = f.M;
      j["schedule"] = sched.describe();
      j["mode"] = f.mode;
      j["method"] = rep.method;
      j["value"] = round12(rep.value);
      j["error_bound"] = round12(rep.error_bound);
      j["points"] = rep.points;
      j["dim"] = rep.dim;
      j["resolution"] = round12(f.resolution);
      j["samples"] = f.samples;
      j["seed"] = f.seed;
      em.write_json(j);
    } else if (cmd == "expsum") {
      require_json_format(f.format);
      FieldCtx ctx = build_field(f.p, f.n, f.seed);
      ExponentSchedule sched = make_schedule(f.schedule, f.M, f.k, f.e, f.poly);
      ExpSumResult res = max_over_gamma(ctx, sched, effort_cap(100000));
      ordered j = base_payload("expsum");
      j["p"] = res.p;
      j["n"] = res.n;
      j["schedule"] = res.schedule;
      j["M"] = res.length;
      j["gamma"] = res.gamma_code;
      j["abs"] = round12(res.abs);
      j["envelope"] = round12(res.envelope);
      j["ratio"] = round12(res.ratio);
      em.write_json(j);
    } else if (cmd == "ks-bound") {
      require_json_format(f.format);
      FieldCtx ctx = build_field(f.p, f.n, f.seed);
      ExponentSchedule sched = make_schedule(f.schedule, f.M, f.k, f.e, f.poly);
      UnitPointSet pts = generate(ctx, sched);
      double rhs = koksma_szusz_rhs(pts, f.Lnum, effort_cap(1000000));
      ordered j = base_payload("ks-bound");
      j["p"] = f.p;
      j["n"] = f.n;
      j["M"] = f.M;
      j["schedule"] = sched.describe();
      j["L"] = f.Lnum;
      j["rhs"] = round12(rhs);
      if (pts.dim <= 2 && pts.count() <= 512) {
        double exact = box_discrepancy(pts, DiscrepancyMode::Exact).value;
        j["discrepancy"] = round12(exact);
        j["holds"] = exact <= rhs + 1e-12;
      } else {
        j["discrepancy"] = nullptr;
        j["holds"] = nullptr;
      }
      em.write_json(j);
    } else if (cmd == "shell-volume") {
      require_json_format(f.format);
      Region region = region_from_flag(f.region);
      ShellEstimate est = shell_volume(region, f.resolution, f.samples, f.seed);
      ordered j = base_payload("shell-volume");
      j["region"] = region_json(region);
      j["epsilon"] = round12(est.epsilon);
      j["samples"] = est.samples;
      j["seed"] = f.seed;
      j["vol_plus"] = round12(est.vol_plus);
      j["vol_minus"] = round12(est.vol_minus);
      j["std_error"] = round12(est.std_error);
      j["region_volume"] = round12(region.volume());
      j["region_volume_stderr"] = round12(region.volume_stderr());
      em.write_json(j);
    } else if (cmd == "avg-order" || cmd == "sum-lambda" || cmd == "q-average" ||
               cmd == "avg-divisor") {
      std::vector<uint64_t> cps =
          parse_uint_list(cmd == "avg-divisor" ? f.Klist : f.Llist);
      for (uint64_t c : cps)
        if (c == 0) throw std::invalid_argument("checkpoints must be positive");
      uint64_t top = *std::max_element(cps.begin(), cps.end());
      SpfSieve sieve(std::max<uint64_t>(top, 2));
      if (f.format == "csv") {
        em.write(arith_csv(sieve, cps, f.g));
      } else {
        ordered j = base_payload(cmd);
        if (cmd == "avg-order") {
          j["g"] = f.g;
          j["L"] = top;
          j["T"] = round12(avg_multiplicative_order(sieve, top, f.g));
        } else if (cmd == "sum-lambda") {
          j["L"] = top;
          j["lambda_avg"] = round12(sum_carmichael(sieve, top));
        } else if (cmd == "q-average") {
          double q = q_average(sieve, top);
          j["L"] = top;
          j["Q"] = round12(q);
          j["Q_norm"] = round12(q / (q_average_slope() * static_cast<double>(top)));
          j["slope"] = round12(q_average_slope());
        } else {
          if (top < 2) throw std::invalid_argument("--K must be at least 2");
          double d = divisor_average(sieve, top);
          double lk = std::log(static_cast<double>(top));
          j["K"] = top;
          j["D"] = round12(d);
          j["D_norm_sqrt"] = round12(d * std::sqrt(lk) / static_cast<double>(top));
          j["D_norm_arnold"] = round12(d * lk / (1.5 * static_cast<double>(top)));
        }
        em.write_json(j);
      }
    } else if (cmd == "prim-root-count") {
      require_json_format(f.format);
      SpfSieve sieve(std::max<uint64_t>(f.x, 2));
      uint64_t count = primitive_root_prime_count(sieve, f.x, f.g);
      ordered j = base_payload("prim-root-count");
      j["g"] = f.g;
      j["x"] = f.x;
      j["count"] = count;
      em.write_json(j);
    } else if (cmd == "orbit") {
      require_json_format(f.format);
      MapKind mk = map_kind_from_string(f.mode);
      uint64_t param;
      if (mk == MapKind::Pow) {
        if (sub->count("--e") == 0)
          throw std::invalid_argument("pow map needs --e");
        param = f.e;
      } else {
        if (sub->count("--g") == 0)
          throw std::invalid_argument("mul/add maps need --g");
        param = f.g;
      }
      OrbitStats st = orbit(mk, param, f.Lnum, f.x);
      OrbitPrediction pred = predicted_orbit(mk, param, f.Lnum, f.x);
      ordered j = base_payload("orbit");
      j["map"] = map_kind_to_string(mk);
      j["param"] = param;
      j["ell"] = f.Lnum;
      j["x0"] = f.x;
      j["tail"] = st.tail;
      j["cycle"] = st.cycle;
      if (pred.tail)
        j["predicted_tail"] = *pred.tail;
      else
        j["predicted_tail"] = nullptr;
      if (pred.cycle)
        j["predicted_cycle"] = *pred.cycle;
      else
        j["predicted_cycle"] = nullptr;
      em.write_json(j);
    } else if (cmd == "counterexample-2b") {
      require_json_format(f.format);
      CounterexampleReport r = counterexample_doubling(f.p);
      ordered j = base_payload("counterexample-2b");
      j["p"] = r.p;
      j["count_J"] = r.count_J;
      j["observed_freq"] = round12(r.observed_freq);
      j["conjectured_freq"] = round12(r.conjectured_freq);
      j["actual_freq"] = round12(r.actual_freq);
      j["implication_holds"] = r.implication_holds;
      em.write_json(j);
    } else if (cmd == "avg-prim-deviation") {
      require_json_format(f.format);
      std::vector<int64_t> poly = parse_int_list(f.poly);
      Region region = region_from_flag(f.region);
      double value = avg_primitive_root_deviation(f.p, f.n, poly, f.M, region,
                                                  effort_cap(10000));
      ordered j = base_payload("avg-prim-deviation");
      j["p"] = f.p;
      j["n"] = f.n;
      j["poly"] = poly;
      j["M"] = f.M;
      j["region"] = region_json(region);
      j["value"] = round12(value);
      j["normalized"] = round12(value / static_cast<double>(f.M));
      em.write_json(j);
    }
  } catch (const ffdyn::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computational failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
