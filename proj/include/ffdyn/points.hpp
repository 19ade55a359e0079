#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdyn/ff.hpp"

namespace ffdyn {

enum class ScheduleKind { Linear, Polynomial, Monomial, Powering };

// Exponent rule m -> E(m), evaluated modulo the group order. Polynomial
// coefficients may be negative; reduction lands in [0, order).
struct ExponentSchedule {
  ScheduleKind kind = ScheduleKind::Linear;
  uint64_t length = 0;  // number of iterates M, starting at m = 1
  std::vector<int64_t> poly;
  uint64_t monomial_k = 0;
  uint64_t power_base = 0;

  static ExponentSchedule linear(uint64_t M);
  static ExponentSchedule polynomial(std::vector<int64_t> coeffs, uint64_t M);
  static ExponentSchedule monomial(uint64_t k, uint64_t M);
  static ExponentSchedule powering(uint64_t e, uint64_t M);

  uint64_t exponent(uint64_t m, uint64_t order) const;
  std::string describe() const;
  void validate() const;
};

// Rational points in [0,1)^dim with a shared denominator. Numerators are
// exact; doubles appear only at the measurement layer.
struct UnitPointSet {
  uint32_t dim = 0;
  uint64_t den = 1;
  std::vector<uint32_t> nums;  // row-major, count() x dim

  uint64_t count() const { return dim ? nums.size() / dim : 0; }
  const uint32_t* row(uint64_t i) const { return nums.data() + i * dim; }
  double coord(uint64_t i, uint32_t j) const {
    return static_cast<double>(row(i)[j]) / static_cast<double>(den);
  }
};

// Point m is (1/p) * (a_{0,E(m)}, ..., a_{n-1,E(m)}) for m = 1..M.
UnitPointSet generate(const FieldCtx& ctx, const ExponentSchedule& sched);

// True when the full linear orbit covers every nonzero point of the
// (1/p)-lattice exactly once. Enumerates all p^n - 1 points.
bool full_orbit_lattice_check(const FieldCtx& ctx, uint64_t cap = 1000000);

std::string points_to_csv(const UnitPointSet& pts);
UnitPointSet points_from_csv(const std::string& text);
std::string points_to_json(const UnitPointSet& pts);
UnitPointSet points_from_json(const std::string& text);

}  // namespace ffdyn
