#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdyn/intmath.hpp"

namespace ffdyn {

// Element of F_{p^n} in the polynomial basis of the field modulus.
// coeffs has length exactly n, constant term first, entries in [0, p).
struct FFElem {
  std::vector<uint32_t> coeffs;
  bool operator==(const FFElem&) const = default;
};

struct FieldCtx {
  uint64_t p = 0;
  uint32_t n = 0;
  std::vector<uint32_t> modulus;   // monic irreducible of degree n, constant first
  FFElem theta;                    // generator of the multiplicative group
  std::vector<FFElem> dual_basis;  // omega_i with Tr(omega_i * theta^j) = [i == j]
  uint64_t group_order = 0;        // p^n - 1
  FactorMap group_factors;
  uint64_t seed = 0;  // recorded for downstream stochastic estimates

  // Tr(x^i) for i < n; the trace is F_p-linear so these determine it.
  std::vector<uint32_t> trace_basis;
  // Row j holds the polynomial coefficients of theta^j. power_inv is the
  // inverse matrix mod p: it converts polynomial coefficients into
  // coordinates in the basis 1, theta, ..., theta^{n-1}.
  std::vector<std::vector<uint32_t>> theta_rows;
  std::vector<std::vector<uint32_t>> power_inv;

  FFElem zero() const { return FFElem{std::vector<uint32_t>(n, 0)}; }
  FFElem one() const {
    FFElem e{std::vector<uint32_t>(n, 0)};
    e.coeffs[0] = 1;
    return e;
  }
};

// Builds the context for F_{p^n}. The modulus is the first irreducible
// monic polynomial in lexicographic coefficient order; theta is the
// element of smallest encoding with full multiplicative order. Both are
// deterministic, so equal (p, n) always yield the same context.
FieldCtx build_field(uint64_t p, uint32_t n, uint64_t seed = 0);

FFElem ff_add(const FieldCtx& ctx, const FFElem& a, const FFElem& b);
FFElem ff_sub(const FieldCtx& ctx, const FFElem& a, const FFElem& b);
FFElem ff_mul(const FieldCtx& ctx, const FFElem& a, const FFElem& b);
FFElem ff_pow(const FieldCtx& ctx, const FFElem& a, uint64_t e);
bool ff_is_zero(const FFElem& a);

// Sum of the n Frobenius images, reduced into Z_p.
uint64_t trace(const FieldCtx& ctx, const FFElem& a);

// a_{j,m} = Tr(omega_j * theta^m): coordinate j of theta^m in the basis
// 1, theta, ..., theta^{n-1}.
uint64_t coordinate(const FieldCtx& ctx, uint32_t j, uint64_t m);

// All n coordinates of an element in the theta-power basis.
std::vector<uint32_t> power_coords(const FieldCtx& ctx, const FFElem& a);

// Integer encoding sum a_i p^i over polynomial coefficients.
uint64_t encode(const FieldCtx& ctx, const FFElem& a);
FFElem decode(const FieldCtx& ctx, uint64_t code);

std::string elem_str(const FieldCtx& ctx, const FFElem& a);

// Coordinates relative to the basis 1, g, ..., g^{n-1} of an alternative
// generator g. Construction fails if the powers of g do not span.
struct CoordinateFrame {
  std::vector<std::vector<uint32_t>> inv;
};
CoordinateFrame coordinate_frame(const FieldCtx& ctx, const FFElem& g);
std::vector<uint32_t> frame_coords(const FieldCtx& ctx, const CoordinateFrame& fr, const FFElem& a);

}  // namespace ffdyn
