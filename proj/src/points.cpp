#include "ffdyn/points.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace ffdyn {

ExponentSchedule ExponentSchedule::linear(uint64_t M) {
  ExponentSchedule s;
  s.kind = ScheduleKind::Linear;
  s.length = M;
  return s;
}

ExponentSchedule ExponentSchedule::polynomial(std::vector<int64_t> coeffs, uint64_t M) {
  ExponentSchedule s;
  s.kind = ScheduleKind::Polynomial;
  s.length = M;
  s.poly = std::move(coeffs);
  return s;
}

ExponentSchedule ExponentSchedule::monomial(uint64_t k, uint64_t M) {
  ExponentSchedule s;
  s.kind = ScheduleKind::Monomial;
  s.length = M;
  s.monomial_k = k;
  return s;
}

ExponentSchedule ExponentSchedule::powering(uint64_t e, uint64_t M) {
  ExponentSchedule s;
  s.kind = ScheduleKind::Powering;
  s.length = M;
  s.power_base = e;
  return s;
}

void ExponentSchedule::validate() const {
  if (length < 1) throw std::invalid_argument("schedule length must be at least 1");
  switch (kind) {
    case ScheduleKind::Linear:
      break;
    case ScheduleKind::Polynomial: {
      bool nonconst = false;
      for (size_t i = 1; i < poly.size(); ++i)
        if (poly[i]) nonconst = true;
      if (!nonconst) throw std::invalid_argument("exponent polynomial must be nonconstant");
      break;
    }
    case ScheduleKind::Monomial:
      if (monomial_k < 1) throw std::invalid_argument("monomial degree must be at least 1");
      break;
    case ScheduleKind::Powering:
      if (power_base < 2) throw std::invalid_argument("powering base must be at least 2");
      break;
  }
}

uint64_t ExponentSchedule::exponent(uint64_t m, uint64_t order) const {
  if (order == 0) throw std::invalid_argument("order must be positive");
  switch (kind) {
    case ScheduleKind::Linear:
      return m % order;
    case ScheduleKind::Polynomial: {
      // Horner, keeping every partial value reduced
      uint64_t mr = m % order;
      uint64_t acc = 0;
      for (size_t i = poly.size(); i-- > 0;) {
        acc = mulmod(acc, mr, order);
        int64_t c = poly[i];
        uint64_t cr = c >= 0 ? static_cast<uint64_t>(c) % order
                             : order - (static_cast<uint64_t>(-(c + 1)) + 1) % order;
        acc = (acc + cr % order) % order;
      }
      return acc;
    }
    case ScheduleKind::Monomial:
      return powmod(m % order, monomial_k, order);
    case ScheduleKind::Powering:
      return powmod(power_base % order, m, order);
  }
  throw std::logic_error("unknown schedule kind");
}

std::string ExponentSchedule::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ScheduleKind::Linear:
      os << "linear";
      break;
    case ScheduleKind::Polynomial: {
      os << "poly[";
      for (size_t i = 0; i < poly.size(); ++i) {
        if (i) os << ",";
        os << poly[i];
      }
      os << "]";
      break;
    }
    case ScheduleKind::Monomial:
      os << "monomial(k=" << monomial_k << ")";
      break;
    case ScheduleKind::Powering:
      os << "powering(e=" << power_base << ")";
      break;
  }
  os << ",M=" << length;
  return os.str();
}

UnitPointSet generate(const FieldCtx& ctx, const ExponentSchedule& sched) {
  sched.validate();
  UnitPointSet pts;
  pts.dim = ctx.n;
  pts.den = ctx.p;
  pts.nums.reserve(sched.length * ctx.n);
  for (uint64_t m = 1; m <= sched.length; ++m) {
    uint64_t e = sched.exponent(m, ctx.group_order);
    FFElem el = ff_pow(ctx, ctx.theta, e);
    std::vector<uint32_t> t = power_coords(ctx, el);
    pts.nums.insert(pts.nums.end(), t.begin(), t.end());
  }
  return pts;
}

bool full_orbit_lattice_check(const FieldCtx& ctx, uint64_t cap) {
  if (ctx.group_order > cap) throw CapExceeded("orbit enumeration exceeds cap");
  UnitPointSet pts = generate(ctx, ExponentSchedule::linear(ctx.group_order));
  std::vector<bool> seen(ctx.group_order + 1, false);
  for (uint64_t i = 0; i < pts.count(); ++i) {
    const uint32_t* r = pts.row(i);
    uint64_t code = 0;
    for (uint32_t j = ctx.n; j-- > 0;) code = code * ctx.p + r[j];
    if (code == 0 || code > ctx.group_order || seen[code]) return false;
    seen[code] = true;
  }
  return true;
}

std::string points_to_csv(const UnitPointSet& pts) {
  std::ostringstream os;
  for (uint32_t j = 0; j < pts.dim; ++j) {
    if (j) os << ",";
    os << "x" << j;
  }
  os << "\n";
  for (uint64_t i = 0; i < pts.count(); ++i) {
    const uint32_t* r = pts.row(i);
    for (uint32_t j = 0; j < pts.dim; ++j) {
      if (j) os << ",";
      os << r[j] << "/" << pts.den;
    }
    os << "\n";
  }
  return os.str();
}

UnitPointSet points_from_csv(const std::string& text) {
  UnitPointSet pts;
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty point table");
  uint32_t dim = 1;
  for (char ch : line)
    if (ch == ',') ++dim;
  pts.dim = dim;
  pts.den = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    uint32_t j = 0;
    while (std::getline(ls, cell, ',')) {
      size_t slash = cell.find('/');
      if (slash == std::string::npos) throw std::invalid_argument("cell is not a fraction: " + cell);
      uint64_t num = std::stoull(cell.substr(0, slash));
      uint64_t den = std::stoull(cell.substr(slash + 1));
      if (pts.den == 0) pts.den = den;
      if (den != pts.den) throw std::invalid_argument("mixed denominators in point table");
      if (num >= den) throw std::invalid_argument("numerator out of range");
      pts.nums.push_back(static_cast<uint32_t>(num));
      ++j;
    }
    if (j != dim) throw std::invalid_argument("ragged point table row");
  }
  if (pts.den == 0) pts.den = 1;
  return pts;
}

std::string points_to_json(const UnitPointSet& pts) {
  nlohmann::json j;
  j["dim"] = pts.dim;
  j["den"] = pts.den;
  nlohmann::json rows = nlohmann::json::array();
  for (uint64_t i = 0; i < pts.count(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (uint32_t k = 0; k < pts.dim; ++k) row.push_back(pts.row(i)[k]);
    rows.push_back(std::move(row));
  }
  j["nums"] = std::move(rows);
  return j.dump();
}

UnitPointSet points_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  UnitPointSet pts;
  pts.dim = j.at("dim").get<uint32_t>();
  pts.den = j.at("den").get<uint64_t>();
  for (const auto& row : j.at("nums")) {
    if (row.size() != pts.dim) throw std::invalid_argument("ragged point table row");
    for (const auto& v : row) {
      uint64_t num = v.get<uint64_t>();
      if (num >= pts.den) throw std::invalid_argument("numerator out of range");
      pts.nums.push_back(static_cast<uint32_t>(num));
    }
  }
  return pts;
}

}  // namespace ffdyn
