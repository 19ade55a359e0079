#include "ffdyn/ff.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffdyn {

namespace {

using Poly = std::vector<uint32_t>;  // constant term first, may carry high zeros

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, uint64_t p) {
  int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return Poly{0};
  std::vector<unsigned __int128> acc(da + db + 1, 0);
  for (int i = 0; i <= da; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j <= db; ++j) acc[i + j] += static_cast<uint64_t>(a[i]) * b[j];
  }
  Poly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
  // reduce by the monic modulus
  int dm = degree(mod);
  for (int i = degree(r); i >= dm; --i) {
    uint64_t c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (int j = 0; j < dm; ++j) {
      uint64_t sub = (static_cast<uint64_t>(mod[j]) * c) % p;
      uint64_t cur = r[i - dm + j];
      r[i - dm + j] = static_cast<uint32_t>((cur + p - sub % p) % p);
    }
  }
  r.resize(dm);
  return r;
}

Poly poly_powmod_exp(const Poly& base, uint64_t e, const Poly& mod, uint64_t p) {
  Poly r{1};
  r.resize(degree(mod), 0);
  r[0] = 1;
  Poly b = base;
  b.resize(degree(mod), 0);
  while (e) {
    if (e & 1) r = poly_mul_mod(r, b, mod, p);
    b = poly_mul_mod(b, b, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  while (degree(b) >= 0) {
    // a mod b with b made monic
    int db = degree(b);
    uint64_t lead_inv = powmod(b[db], p - 2, p);
    for (int i = degree(a); i >= db; --i) {
      uint64_t c = (static_cast<uint64_t>(a[i]) * lead_inv) % p;
      if (!c) continue;
      for (int j = 0; j <= db; ++j) {
        uint64_t sub = (static_cast<uint64_t>(b[j]) * c) % p;
        uint64_t cur = a[i - db + j];
        a[i - db + j] = static_cast<uint32_t>((cur + p - sub) % p);
      }
    }
    std::swap(a, b);
  }
  return a;
}

// gcd(x^{p^i} - x, f) = 1 for all i <= n/2 certifies irreducibility of a
// degree-n polynomial with no root check needed separately.
bool is_irreducible(const Poly& f, uint64_t p) {
  int n = degree(f);
  if (n < 1) return false;
  Poly x{0, 1};
  x.resize(n, 0);
  if (n == 1) return true;
  Poly xp = x;
  for (int i = 1; i <= n / 2; ++i) {
    xp = poly_powmod_exp(xp, p, f, p);
    Poly diff = xp;
    diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
    Poly g = poly_gcd(f, diff, p);
    if (degree(g) != 0) return false;
  }
  return true;
}

// Gauss-Jordan inverse mod p; returns false if singular.
bool invert_mod_p(std::vector<std::vector<uint32_t>> m, uint64_t p,
                  std::vector<std::vector<uint32_t>>& out) {
  size_t n = m.size();
  out.assign(n, std::vector<uint32_t>(n, 0));
  for (size_t i = 0; i < n; ++i) out[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(m[piv], m[col]);
    std::swap(out[piv], out[col]);
    uint64_t inv = powmod(m[col][col], p - 2, p);
    for (size_t j = 0; j < n; ++j) {
      m[col][j] = static_cast<uint32_t>((static_cast<uint64_t>(m[col][j]) * inv) % p);
      out[col][j] = static_cast<uint32_t>((static_cast<uint64_t>(out[col][j]) * inv) % p);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      uint64_t f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] = static_cast<uint32_t>((m[r][j] + p * f - (static_cast<uint64_t>(m[col][j]) * f) % p) % p);
        out[r][j] = static_cast<uint32_t>((out[r][j] + p * f - (static_cast<uint64_t>(out[col][j]) * f) % p) % p);
      }
    }
  }
  return true;
}

}  // namespace

FFElem ff_add(const FieldCtx& ctx, const FFElem& a, const FFElem& b) {
  FFElem r = ctx.zero();
  for (uint32_t i = 0; i < ctx.n; ++i)
    r.coeffs[i] = static_cast<uint32_t>((static_cast<uint64_t>(a.coeffs[i]) + b.coeffs[i]) % ctx.p);
  return r;
}

FFElem ff_sub(const FieldCtx& ctx, const FFElem& a, const FFElem& b) {
  FFElem r = ctx.zero();
  for (uint32_t i = 0; i < ctx.n; ++i)
    r.coeffs[i] = static_cast<uint32_t>((a.coeffs[i] + ctx.p - b.coeffs[i]) % ctx.p);
  return r;
}

FFElem ff_mul(const FieldCtx& ctx, const FFElem& a, const FFElem& b) {
  Poly r = poly_mul_mod(a.coeffs, b.coeffs, ctx.modulus, ctx.p);
  r.resize(ctx.n, 0);
  return FFElem{std::move(r)};
}

FFElem ff_pow(const FieldCtx& ctx, const FFElem& a, uint64_t e) {
  Poly r = poly_powmod_exp(a.coeffs, e, ctx.modulus, ctx.p);
  r.resize(ctx.n, 0);
  return FFElem{std::move(r)};
}

bool ff_is_zero(const FFElem& a) {
  for (uint32_t c : a.coeffs)
    if (c) return false;
  return true;
}

uint64_t trace(const FieldCtx& ctx, const FFElem& a) {
  uint64_t t = 0;
  for (uint32_t i = 0; i < ctx.n; ++i)
    t = (t + static_cast<uint64_t>(a.coeffs[i]) * ctx.trace_basis[i]) % ctx.p;
  return t;
}

uint64_t coordinate(const FieldCtx& ctx, uint32_t j, uint64_t m) {
  if (j >= ctx.n) throw std::invalid_argument("coordinate index out of range");
  FFElem tm = ff_pow(ctx, ctx.theta, ctx.group_order ? m % ctx.group_order : 0);
  return trace(ctx, ff_mul(ctx, ctx.dual_basis[j], tm));
}

std::vector<uint32_t> power_coords(const FieldCtx& ctx, const FFElem& a) {
  std::vector<uint32_t> t(ctx.n, 0);
  for (uint32_t j = 0; j < ctx.n; ++j) {
    uint64_t s = 0;
    for (uint32_t i = 0; i < ctx.n; ++i)
      s = (s + static_cast<uint64_t>(a.coeffs[i]) * ctx.power_inv[i][j]) % ctx.p;
    t[j] = static_cast<uint32_t>(s);
  }
  return t;
}

uint64_t encode(const FieldCtx& ctx, const FFElem& a) {
  uint64_t code = 0;
  for (uint32_t i = ctx.n; i-- > 0;) code = code * ctx.p + a.coeffs[i];
  return code;
}

FFElem decode(const FieldCtx& ctx, uint64_t code) {
  FFElem e = ctx.zero();
  for (uint32_t i = 0; i < ctx.n; ++i) {
    e.coeffs[i] = static_cast<uint32_t>(code % ctx.p);
    code /= ctx.p;
  }
  if (code) throw std::invalid_argument("encoding out of range");
  return e;
}

std::string elem_str(const FieldCtx& ctx, const FFElem& a) {
  std::ostringstream os;
  bool first = true;
  for (uint32_t i = 0; i < ctx.n; ++i) {
    if (!a.coeffs[i]) continue;
    if (!first) os << "+";
    if (i == 0 || a.coeffs[i] != 1) os << a.coeffs[i];
    if (i >= 1) {
      if (a.coeffs[i] != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FieldCtx build_field(uint64_t p, uint32_t n, uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("extension degree must be at least 1");

  FieldCtx ctx;
  ctx.p = p;
  ctx.n = n;
  ctx.seed = seed;

  uint64_t q = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (q > (1ull << 62) / p) throw std::invalid_argument("field size out of range");
    q *= p;
  }
  ctx.group_order = q - 1;
  ctx.group_factors = factorize(ctx.group_order);

  // modulus: first irreducible monic polynomial in lexicographic
  // coefficient order (constant term compared first)
  if (n == 1) {
    ctx.modulus = {0, 1};
  } else {
    std::vector<uint32_t> c(n, 0);
    for (;;) {
      Poly f(c);
      f.push_back(1);
      if (is_irreducible(f, p)) {
        ctx.modulus = f;
        break;
      }
      // odometer, last coefficient fastest
      int i = static_cast<int>(n) - 1;
      while (i >= 0) {
        if (++c[i] < p) break;
        c[i] = 0;
        --i;
      }
      if (i < 0) throw std::logic_error("no irreducible polynomial found");
    }
  }

  // trace of the polynomial basis via explicit Frobenius sums
  ctx.trace_basis.assign(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    FFElem xi = ctx.zero();
    xi.coeffs[i] = 1;
    FFElem frob = xi;
    FFElem acc = xi;
    for (uint32_t k = 1; k < n; ++k) {
      frob = ff_pow(ctx, frob, p);
      acc = ff_add(ctx, acc, frob);
    }
    for (uint32_t j = 1; j < n; ++j)
      if (acc.coeffs[j]) throw std::logic_error("trace image not in the prime field");
    ctx.trace_basis[i] = acc.coeffs[0];
  }

  // theta: smallest encoding with multiplicative order exactly p^n - 1
  for (uint64_t code = 1;; ++code) {
    if (code > ctx.group_order) throw std::logic_error("no generator found");
    FFElem cand = decode(ctx, code);
    bool full = true;
    for (const auto& [f, e] : ctx.group_factors) {
      (void)e;
      if (ff_pow(ctx, cand, ctx.group_order / f) == ctx.one()) {
        full = false;
        break;
      }
    }
    if (full) {
      ctx.theta = cand;
      break;
    }
  }

  // change of basis between polynomial coefficients and theta powers
  ctx.theta_rows.assign(n, std::vector<uint32_t>(n, 0));
  std::vector<FFElem> tpow(2 * n - 1, ctx.one());
  for (uint32_t k = 1; k < 2 * n - 1; ++k) tpow[k] = ff_mul(ctx, tpow[k - 1], ctx.theta);
  for (uint32_t j = 0; j < n; ++j) ctx.theta_rows[j] = tpow[j].coeffs;
  std::vector<std::vector<uint32_t>> pmat(n, std::vector<uint32_t>(n, 0));
  for (uint32_t j = 0; j < n; ++j)
    for (uint32_t i = 0; i < n; ++i) pmat[j][i] = ctx.theta_rows[j][i];
  if (!invert_mod_p(pmat, p, ctx.power_inv)) throw std::logic_error("theta powers do not span");

  // dual basis from the inverse of the Gram matrix T_{ij} = Tr(theta^{i+j})
  std::vector<std::vector<uint32_t>> gram(n, std::vector<uint32_t>(n, 0));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      gram[i][j] = static_cast<uint32_t>(trace(ctx, tpow[i + j]));
  std::vector<std::vector<uint32_t>> ginv;
  if (!invert_mod_p(gram, p, ginv)) throw std::logic_error("trace form degenerate");
  ctx.dual_basis.assign(n, ctx.zero());
  for (uint32_t i = 0; i < n; ++i) {
    FFElem w = ctx.zero();
    for (uint32_t k = 0; k < n; ++k) {
      if (!ginv[i][k]) continue;
      FFElem scaled = tpow[k];
      for (uint32_t t = 0; t < n; ++t)
        scaled.coeffs[t] = static_cast<uint32_t>((static_cast<uint64_t>(scaled.coeffs[t]) * ginv[i][k]) % p);
      w = ff_add(ctx, w, scaled);
    }
    ctx.dual_basis[i] = w;
  }

  // construction self-check: duality must hold exactly
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint64_t t = trace(ctx, ff_mul(ctx, ctx.dual_basis[i], tpow[j]));
      if (t != (i == j ? 1u : 0u)) throw std::logic_error("dual basis check failed");
    }

  return ctx;
}

CoordinateFrame coordinate_frame(const FieldCtx& ctx, const FFElem& g) {
  std::vector<std::vector<uint32_t>> rows(ctx.n, std::vector<uint32_t>(ctx.n, 0));
  FFElem cur = ctx.one();
  for (uint32_t j = 0; j < ctx.n; ++j) {
    rows[j] = cur.coeffs;
    cur = ff_mul(ctx, cur, g);
  }
  CoordinateFrame fr;
  if (!invert_mod_p(rows, ctx.p, fr.inv)) throw std::invalid_argument("powers of element do not span the field");
  return fr;
}

std::vector<uint32_t> frame_coords(const FieldCtx& ctx, const CoordinateFrame& fr, const FFElem& a) {
  std::vector<uint32_t> t(ctx.n, 0);
  for (uint32_t j = 0; j < ctx.n; ++j) {
    uint64_t s = 0;
    for (uint32_t i = 0; i < ctx.n; ++i)
      s = (s + static_cast<uint64_t>(a.coeffs[i]) * fr.inv[i][j]) % ctx.p;
    t[j] = static_cast<uint32_t>(s);
  }
  return t;
}

}  // namespace ffdyn
