#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "ffdyn/ff.hpp"
#include "ffdyn/points.hpp"

namespace ffdyn {

struct ExpSumResult {
  std::complex<double> value;
  double abs = 0.0;
  double envelope = 0.0;  // analytic reference scale, see envelope_for
  double ratio = 0.0;     // abs / envelope
  uint64_t p = 0;
  uint32_t n = 0;
  std::string schedule;
  uint64_t length = 0;
  uint64_t gamma_code = 0;
};

// S = sum over m = 1..M of exp(2*pi*i * Tr(gamma * theta^{E(m)}) / p),
// accumulated with compensated summation in ascending m. gamma nonzero.
ExpSumResult incomplete_sum(const FieldCtx& ctx, const FFElem& gamma,
                            const ExponentSchedule& sched);

// Maximizes |S| over all nonzero gamma by sweeping the dual coordinates;
// requires p^n - 1 <= cap.
ExpSumResult max_over_gamma(const FieldCtx& ctx, const ExponentSchedule& sched,
                            uint64_t cap = 100000);

// Reference scale: p^{n/2} log p for linear schedules, p^{(1-rho(k)) n}
// for monomial ones, M otherwise.
double envelope_for(const FieldCtx& ctx, const ExponentSchedule& sched);

// Saving exponent for degree-k monomial schedules, exact rational.
Rational rho(uint64_t k);

// 1/L plus the weighted sum over nonzero integer vectors with max-norm
// at most L of the corresponding exponential sums over the point set.
// Requires (2L+1)^dim - 1 <= cap.
double koksma_szusz_rhs(const UnitPointSet& pts, uint64_t L, uint64_t cap = 1000000);

}  // namespace ffdyn
