#include "syntomo/ops.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace syntomo {

static Rational rat_scale(Rational r, long num, long den) {
  Rational s{r.num * num, r.den * den};
  long a = s.num < 0 ? -s.num : s.num, b = s.den;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    s.num /= a;
    s.den /= a;
  }
  return s;
}

RingSpec frob_target(const RingSpec& s) {
  RingSpec t = s;
  if (s.deco == Deco::UV || s.deco == Deco::ZeroVPlus) t.v = rat_scale(s.v, 1, (long)s.p);
  return t;
}

RingSpec frob_source(const RingSpec& s) {
  RingSpec t = s;
  if (s.deco == Deco::UV || s.deco == Deco::ZeroVPlus) t.v = rat_scale(s.v, (long)s.p, 1);
  return t;
}

RingSpec psi_target(const RingSpec& s) {
  RingSpec t = s;
  if (s.deco == Deco::U || s.deco == Deco::UV) t.u = rat_scale(s.u, (long)s.p, 1);
  if (s.deco == Deco::UV || s.deco == Deco::ZeroVPlus) t.v = rat_scale(s.v, (long)s.p, 1);
  return t;
}

DecoSeries frob_kum(const DecoSeries& f) {
  DecoSeries r = series_zero(frob_target(f.spec), f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [i, ca] : f.c) r.set((long)f.spec.p * i, ca);
  return r;
}

DecoSeries psi_kum(const DecoSeries& f) {
  long p = f.spec.p;
  DecoSeries r = series_zero(psi_target(f.spec), f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [i, ca] : f.c)
    if (i % p == 0) r.set(i / p, ca);
  return r;
}

DecoSeries partial_kum0(const DecoSeries& f) {
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  int prec = f.budget.total();
  for (auto& [i, ca] : f.c)
    r.set(i, padic_mul(padic_from_int(f.spec.p, i, prec), ca));
  return r;
}

DecoSeries c_alpha_kum(const DecoSeries& f, int alpha) {
  long p = f.spec.p;
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [i, ca] : f.c)
    if (((i % p) + p) % p == alpha) r.set(i, ca);
  return r;
}

std::vector<DecoSeries> kum_decompose(const DecoSeries& f) {
  long p = f.spec.p;
  RingSpec xs = frob_source(f.spec);
  std::vector<DecoSeries> out;
  for (long a = 0; a < p; ++a) {
    DecoSeries x = series_zero(xs, f.lo, f.hi, f.budget);
    x.tail_discarded = f.tail_discarded;
    for (auto& [i, ca] : f.c)
      if (((i % p) + p) % p == a) x.set((i - a) / p, ca);
    out.push_back(std::move(x));
  }
  return out;
}

DecoSeries partial_cycl0(const DecoSeries& f) {
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  int prec = f.budget.total();
  uint32_t p = f.spec.p;
  for (long k = f.lo; k <= f.hi; ++k) {
    // ((1+T) f')_k = (k+1) a_{k+1} + k a_k
    ScaledPAdic v = padic_mul(padic_from_int(p, k, prec), f.get(k));
    if (k + 1 <= f.hi)
      v = padic_add(v, padic_mul(padic_from_int(p, k + 1, prec), f.get(k + 1)));
    r.set(k, v);
  }
  // the band-top derivative term falls outside
  if (!f.get(f.hi).is_zero() && f.hi + 1 > f.hi) r.tail_discarded = r.tail_discarded;
  return r;
}

DecoSeries one_plus_t_power(const RingSpec& spec, long lo, long hi, PrecisionBudget b,
                            const ScaledPAdic& a) {
  DecoSeries r = series_zero(spec, lo, hi, b);
  for (long k = 0; k <= hi; ++k) r.set(k, padic_binomial(a, k, b.total()));
  if (hi < 0) throw error("one_plus_t_power: band excludes degree 0");
  return r;
}

// ascending inversion valid when the lowest term has unit mantissa scale;
// descending when the top term does (annulus-style inverse).
static DecoSeries series_invert_descending(const DecoSeries& f) {
  uint32_t p = f.spec.p;
  long m = f.hi;
  while (m >= f.lo && f.get(m).is_zero()) --m;
  if (m < f.lo) throw error("series_invert_descending: zero series");
  long width = f.hi - f.lo;
  std::vector<ScaledPAdic> g((size_t)width + 1, padic_zero(p));
  for (long k = 0; k <= width; ++k)
    if (m - k >= f.lo) g[(size_t)k] = f.get(m - k);
  std::vector<ScaledPAdic> bb((size_t)width + 1, padic_zero(p));
  ScaledPAdic b0 = padic_inv(g[0]);
  bb[0] = b0;
  for (long n = 1; n <= width; ++n) {
    ScaledPAdic s = padic_zero(p);
    for (long j = 1; j <= n; ++j) s = padic_add(s, padic_mul(g[(size_t)j], bb[(size_t)(n - j)]));
    bb[(size_t)n] = padic_neg(padic_mul(b0, s));
  }
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = true;  // descending inverse always truncates below
  for (long n = 0; n <= width; ++n) r.set(-m - n, bb[(size_t)n]);
  return r;
}

DecoSeries substitute_arith(const DecoSeries& f, const DecoSeries& g, const RingSpec& out_spec) {
  uint32_t p = f.spec.p;
  DecoSeries acc = series_zero(out_spec, g.lo, g.hi, f.budget);
  acc.tail_discarded = f.tail_discarded || g.tail_discarded;
  DecoSeries gg = series_cast(g, out_spec);
  // ascending part
  DecoSeries pw = series_one(out_spec, g.lo, g.hi, f.budget);
  for (long k = 0; k <= f.hi; ++k) {
    ScaledPAdic a = f.get(k);
    if (!a.is_exact_zero()) acc = series_add(acc, series_scalar_mul(a, pw));
    if (k < f.hi) pw = series_mul(pw, gg);
  }
  if (f.lo < 0) {
    // choose the inversion edge with a unit leading coefficient
    long asc = gg.lo;
    while (asc <= gg.hi && gg.get(asc).is_zero()) ++asc;
    if (asc > gg.hi) throw error("substitute_arith: zero substitution image");
    DecoSeries gi =
        (gg.get(asc).val == 0) ? series_invert(gg) : series_invert_descending(gg);
    DecoSeries pwn = gi;
    for (long k = -1; k >= f.lo; --k) {
      ScaledPAdic a = f.get(k);
      if (!a.is_exact_zero()) acc = series_add(acc, series_scalar_mul(a, pwn));
      if (k > f.lo) pwn = series_mul(pwn, gi);
    }
  }
  return acc;
}

DecoSeries frob_cycl(const DecoSeries& f) {
  if (f.spec.profile != 'B') throw error("frob_cycl: profile B only");
  uint32_t p = f.spec.p;
  RingSpec ts = frob_target(f.spec);
  // g = (1+T)^p - 1
  DecoSeries g = series_zero(ts, f.lo, f.hi, f.budget);
  int prec = f.budget.total();
  {
    unsigned long long bin = 1;
    for (long k = 1; k <= (long)p; ++k) {
      bin = bin * (unsigned long long)(p - k + 1) / (unsigned long long)k;
      g.set(k, padic_from_int(p, (long long)bin, prec));
    }
  }
  return substitute_arith(f, g, ts);
}

ScaledPAdic gamma0_scalar_c(const RingSpec& spec, int prec) {
  if (spec.profile != 'B') throw error("gamma0_scalar_c: profile B only");
  uint32_t p = spec.p;
  ScaledPAdic pi = padic_from_int(p, 1, prec);
  for (int j = 0; j < spec.i_cyclo; ++j) pi = padic_mul(pi, padic_from_int(p, p, prec));
  return padic_exp(pi, prec);
}

DecoSeries gamma0_cycl(const DecoSeries& f, long s) {
  if (f.spec.profile != 'B') throw error("gamma0_cycl: profile B only");
  uint32_t p = f.spec.p;
  int prec = f.budget.total();
  ScaledPAdic cs;
  if (s == 0) return f;
  {
    ScaledPAdic arg = padic_from_int(p, s, prec);
    for (int j = 0; j < f.spec.i_cyclo; ++j) arg = padic_mul(arg, padic_from_int(p, p, prec));
    cs = padic_exp(arg, prec);
  }
  DecoSeries g = one_plus_t_power(f.spec, f.lo, f.hi, f.budget, cs);
  g.set(0, padic_add(g.get(0), padic_from_int(p, -1, prec)));
  return substitute_arith(f, g, f.spec);
}

// dense linear solve A x = b over Z/p^N with minimal-valuation pivoting
static std::vector<uint64_t> linsolve_mod(std::vector<std::vector<uint64_t>> A,
                                          std::vector<uint64_t> b, uint32_t p, int N) {
  size_t n = A.size();
  uint64_t mod = pow_u64(p, N);
  auto valof = [&](uint64_t x) {
    if (x == 0) return N;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  std::vector<size_t> colperm(n);
  for (size_t i = 0; i < n; ++i) colperm[i] = i;
  std::vector<size_t> pivrow(n);
  for (size_t k = 0; k < n; ++k) {
    int best = N + 1;
    size_t br = k, bc = k;
    for (size_t i = k; i < n; ++i)
      for (size_t j = k; j < n; ++j) {
        int v = valof(A[i][colperm[j]]);
        if (v < best) {
          best = v;
          br = i;
          bc = j;
        }
      }
    if (best > N) {
      for (size_t i = k; i < n; ++i)
        if (b[i] != 0) throw precision_error("linsolve_mod: inconsistent system");
      // remaining block is zero; free variables set to 0
      for (size_t j = k; j < n; ++j) pivrow[j] = SIZE_MAX;
      break;
    }
    std::swap(A[k], A[br]);
    std::swap(b[k], b[br]);
    std::swap(colperm[k], colperm[bc]);
    uint64_t piv = A[k][colperm[k]];
    uint64_t unit = piv / pow_u64(p, best);
    uint64_t uinv = invmod_u64(unit, mod);
    for (size_t j = k; j < n; ++j) A[k][colperm[j]] = mulmod_u64(A[k][colperm[j]], uinv, mod);
    b[k] = mulmod_u64(b[k], uinv, mod);
    uint64_t pk = pow_u64(p, best);
    for (size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      uint64_t a = A[i][colperm[k]];
      if (a == 0) continue;
      if (valof(a) < best) throw error("linsolve_mod: pivot not minimal");
      uint64_t fac = a / pk;
      for (size_t j = k; j < n; ++j) {
        uint64_t sub = mulmod_u64(fac, A[k][colperm[j]], mod);
        A[i][colperm[j]] = (A[i][colperm[j]] + mod - sub) % mod;
      }
      uint64_t sub = mulmod_u64(fac, b[k], mod);
      b[i] = (b[i] + mod - sub) % mod;
    }
    pivrow[k] = k;
  }
  // now A is diagonal p^{v_k} on the permuted columns
  std::vector<uint64_t> x(n, 0);
  for (size_t k = 0; k < n; ++k) {
    if (pivrow[k] == SIZE_MAX) continue;
    uint64_t piv = A[k][colperm[k]];
    if (piv == 0) {
      if (b[k] != 0) throw precision_error("linsolve_mod: inconsistent system");
      continue;
    }
    int v = valof(piv);
    if (v == 0) {
      x[colperm[k]] = b[k];
    } else {
      uint64_t pk = pow_u64(p, v);
      if (b[k] % pk != 0) throw precision_error("linsolve_mod: divisibility failure");
      // solution defined modulo p^{N-v} only
      x[colperm[k]] = b[k] / pk;
    }
  }
  return x;
}

std::vector<DecoSeries> cycl_decompose(const DecoSeries& f, int digits) {
  if (f.spec.profile != 'B') throw error("cycl_decompose: profile B only");
  uint32_t p = f.spec.p;
  RingSpec src = frob_source(f.spec);
  long lo = f.lo, hi = f.hi;
  long n = hi - lo + 1;
  // column index <-> target degree k = p*j + alpha
  auto fdiv = [&](long a, long b) { return floor_ratio(a, b); };
  // V = frob image of the variable and its band powers
  DecoSeries g = series_zero(f.spec, lo, hi, f.budget);
  {
    unsigned long long bin = 1;
    for (long k = 1; k <= (long)p; ++k) {
      bin = bin * (unsigned long long)(p - k + 1) / (unsigned long long)k;
      g.set(k, padic_from_int(p, (long long)bin, f.budget.total()));
    }
  }
  long jmin = fdiv(lo, p), jmax = fdiv(hi, p);
  std::vector<DecoSeries> vpow;  // V^j for j in [jmin, jmax]
  {
    std::vector<DecoSeries> pos, neg;
    DecoSeries one = series_one(f.spec, lo, hi, f.budget);
    pos.push_back(one);
    for (long j = 1; j <= std::max(jmax, 0L); ++j) pos.push_back(series_mul(pos.back(), g));
    if (jmin < 0) {
      DecoSeries gi = series_invert_descending(g);
      neg.push_back(gi);
      for (long j = 2; j <= -jmin; ++j) neg.push_back(series_mul(neg.back(), gi));
    }
    for (long j = jmin; j <= jmax; ++j)
      vpow.push_back(j >= 0 ? pos[(size_t)j] : neg[(size_t)(-j - 1)]);
  }
  DecoSeries opt = one_plus_t_power(f.spec, lo, hi, f.budget, padic_from_int(p, 1, f.budget.total()));
  // assemble the matrix in the floor-scaled bases
  std::vector<std::vector<uint64_t>> A((size_t)n, std::vector<uint64_t>((size_t)n, 0));
  std::vector<long> col_j((size_t)n), col_a((size_t)n), col_scale((size_t)n);
  for (long k = lo; k <= hi; ++k) {
    long a = ((k % p) + p) % p;
    long j = (k - a) / p;
    size_t col = (size_t)(k - lo);
    col_j[col] = j;
    col_a[col] = a;
    col_scale[col] = lb(src, j);
  }
  uint64_t mod = pow_u64(p, digits);
  for (size_t col = 0; col < (size_t)n; ++col) {
    DecoSeries E = vpow[(size_t)(col_j[col] - jmin)];
    for (long rep = 0; rep < col_a[col]; ++rep) E = series_mul(E, opt);
    for (long k = lo; k <= hi; ++k) {
      ScaledPAdic e = E.get(k);
      if (e.is_exact_zero()) continue;
      ScaledPAdic scaled = e;
      scaled.val += (int)col_scale[col];
      A[(size_t)(k - lo)][col] = padic_residue(scaled, lb(f.spec, k), digits) % mod;
    }
  }
  std::vector<uint64_t> b((size_t)n, 0);
  for (long k = lo; k <= hi; ++k) b[(size_t)(k - lo)] = padic_residue(f.get(k), lb(f.spec, k), digits);
  std::vector<uint64_t> x = linsolve_mod(A, b, p, digits);
  std::vector<DecoSeries> out((size_t)p, series_zero(src, fdiv(lo - (long)(p - 1), p), fdiv(hi, p), f.budget));
  for (size_t col = 0; col < (size_t)n; ++col) {
    if (x[col] == 0) continue;
    ScaledPAdic coeff;
    coeff.p = p;
    coeff.prec = digits;
    coeff.val = (int)col_scale[col];
    uint64_t m = x[col];
    while (m % p == 0 && m != 0) {
      m /= p;
      ++coeff.val;
    }
    coeff.mantissa = m;
    coeff.prec = digits;  // conservative
    out[(size_t)col_a[col]].set(col_j[col], coeff);
  }
  for (auto& s : out) s.tail_discarded = f.tail_discarded;
  return out;
}

DecoSeries psi_cycl(const DecoSeries& f, int digits) { return cycl_decompose(f, digits)[0]; }

DecoSeries compute_t(const RingSpec& spec, long lo, long hi, PrecisionBudget b) {
  if (spec.profile != 'B') throw error("compute_t: profile B only");
  uint32_t p = spec.p;
  int prec = std::min(b.total() + (int)(hi > 0 ? (long)(std::log((double)hi) / std::log((double)p)) + 1 : 0),
                      digit_cap(p));
  DecoSeries t = series_zero(spec, lo, hi, b);
  for (long k = 1; k <= hi; ++k) {
    // p^i * (-1)^(k-1) / k
    ScaledPAdic c = padic_from_ratio(p, k % 2 == 1 ? 1 : -1, k, prec);
    for (int j = 0; j < spec.i_cyclo; ++j) c = padic_mul(c, padic_from_int(p, p, prec));
    t.set(k, c);
  }
  t.tail_discarded = true;  // log series always extends past the band
  return t;
}

DecoSeries compute_t_twist(const RingSpec& spec, int r, long lo, long hi, PrecisionBudget b) {
  if (r < 0) throw error("compute_t_twist: negative twist");
  uint32_t p = spec.p;
  long a = r / ((long)p - 1), bb = r % ((long)p - 1);
  DecoSeries t = compute_t(spec, lo, hi, b);
  DecoSeries res = series_one(spec, lo, hi, b);
  if (bb > 0) res = series_mul(res, series_pow(t, bb));
  if (a > 0) {
    DecoSeries tp = series_pow(t, (long)p - 1);
    ScaledPAdic pinv = padic_inv(padic_from_int(p, p, b.total()));
    tp = series_scalar_mul(pinv, tp);
    res = series_mul(res, series_pow(tp, a));
  }
  return res;
}

DecoSeries solve_one_minus_frob(const DecoSeries& y, int m, bool cyclotomic, int digits) {
  if (m < 0) throw error("solve_one_minus_frob: m must be >= 0");
  uint32_t p = y.spec.p;
  int prec = y.budget.total();
  ScaledPAdic pm = padic_pow(padic_from_int(p, p, prec), m);
  DecoSeries acc = y;
  DecoSeries term = y;
  int guard = 4 * digits + 60;
  for (int k = 1; k <= guard; ++k) {
    term = cyclotomic ? frob_cycl(term) : frob_kum(term);
    term = series_scalar_mul(pm, term);
    if (series_is_zero(term, digits)) {
      // verify the residual
      DecoSeries fx = cyclotomic ? frob_cycl(acc) : frob_kum(acc);
      DecoSeries resid = series_sub(series_sub(acc, series_scalar_mul(pm, fx)), y);
      if (!series_is_zero(resid, m == 0 ? digits : std::min(digits, digits - 0)))
        throw precision_error("solve_one_minus_frob: residual check failed");
      return acc;
    }
    acc = series_add(acc, term);
  }
  throw error("solve_one_minus_frob: geometric series did not converge in band");
}

// --- torus layer ---

static TorusSeries torus_map(const TorusSeries& f, const RingSpec& spec,
                             const std::function<std::pair<std::vector<int>, DecoSeries>(
                                 const std::vector<int>&, const DecoSeries&)>& fn) {
  TorusSeries r = torus_zero(f.d, f.gband, spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [k, ca] : f.c) {
    auto [nk, nc] = fn(k, ca);
    if (nc.c.empty()) continue;
    auto it = r.c.find(nk);
    if (it == r.c.end())
      r.set(nk, series_cast(nc, spec));
    else
      r.set(nk, series_add(it->second, series_cast(nc, spec)));
    if (nc.tail_discarded) r.tail_discarded = true;
  }
  return r;
}

TorusSeries frob_kum(const TorusSeries& f) {
  RingSpec ts = frob_target(f.spec);
  return torus_map(f, ts, [&](const std::vector<int>& k, const DecoSeries& ca) {
    std::vector<int> nk(k);
    for (auto& kj : nk) kj *= (int)f.spec.p;
    return std::make_pair(nk, frob_kum(ca));
  });
}

TorusSeries psi_kum(const TorusSeries& f) {
  RingSpec ts = psi_target(f.spec);
  TorusSeries r = torus_zero(f.d, f.gband, ts, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  long p = f.spec.p;
  for (auto& [k, ca] : f.c) {
    bool ok = true;
    std::vector<int> nk(k);
    for (auto& kj : nk) {
      if (kj % (int)p != 0) {
        ok = false;
        break;
      }
      kj /= (int)p;
    }
    if (!ok) continue;
    r.set(nk, series_cast(psi_kum(ca), ts));
  }
  return r;
}

TorusSeries frob_cycl(const TorusSeries& f) {
  RingSpec ts = frob_target(f.spec);
  return torus_map(f, ts, [&](const std::vector<int>& k, const DecoSeries& ca) {
    std::vector<int> nk(k);
    for (auto& kj : nk) kj *= (int)f.spec.p;
    return std::make_pair(nk, frob_cycl(ca));
  });
}

TorusSeries psi_cycl(const TorusSeries& f, int digits) {
  RingSpec ts = psi_target(f.spec);
  TorusSeries r = torus_zero(f.d, f.gband, ts, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  long p = f.spec.p;
  for (auto& [k, ca] : f.c) {
    bool ok = true;
    std::vector<int> nk(k);
    for (auto& kj : nk) {
      if (kj % (int)p != 0) {
        ok = false;
        break;
      }
      kj /= (int)p;
    }
    if (!ok) continue;
    r.set(nk, series_cast(psi_cycl(ca, digits), ts));
  }
  return r;
}

TorusSeries partial_j(const TorusSeries& f, int j, bool cyclotomic) {
  if (j == 0)
    return torus_map(f, f.spec, [&](const std::vector<int>& k, const DecoSeries& ca) {
      return std::make_pair(k, cyclotomic ? partial_cycl0(ca) : partial_kum0(ca));
    });
  return torus_map(f, f.spec, [&](const std::vector<int>& k, const DecoSeries& ca) {
    return std::make_pair(k, series_scalar_mul(padic_from_int(f.spec.p, k[(size_t)(j - 1)],
                                                              f.budget.total()),
                                               ca));
  });
}

TorusSeries gamma_j(const TorusSeries& f, int j, long s) {
  if (f.spec.profile != 'B') throw error("gamma_j: profile B only");
  if (j < 1) throw error("gamma_j: j >= 1 (use gamma0_cycl)");
  uint32_t p = f.spec.p;
  long pi = 1;
  for (int t = 0; t < f.spec.i_cyclo; ++t) pi *= (long)p;
  return torus_map(f, f.spec, [&](const std::vector<int>& k, const DecoSeries& ca) {
    long ex = pi * s * (long)k[(size_t)(j - 1)];
    if (ex == 0) return std::make_pair(k, ca);
    DecoSeries mult = one_plus_t_power(f.spec, f.lo, f.hi, f.budget,
                                       padic_from_int(p, ex >= 0 ? ex : -ex, f.budget.total()));
    if (ex < 0) mult = series_invert(mult);
    return std::make_pair(k, series_mul(ca, mult));
  });
}

TorusSeries gamma0_cycl(const TorusSeries& f, long s) {
  return torus_map(f, f.spec, [&](const std::vector<int>& k, const DecoSeries& ca) {
    return std::make_pair(k, gamma0_cycl(ca, s));
  });
}

TorusSeries nabla_j(const TorusSeries& f, int j) {
  if (f.spec.profile != 'B') throw error("nabla_j: profile B only");
  DecoSeries t = compute_t(f.spec, f.lo, f.hi, f.budget);
  TorusSeries df = partial_j(f, j, true);
  return torus_map(df, f.spec, [&](const std::vector<int>& k, const DecoSeries& ca) {
    return std::make_pair(k, series_mul(ca, t));
  });
}

static TorusSeries operator_series(const std::function<ScaledPAdic(long)>& coeff,
                                   const TorusOp& tau, const TorusSeries& f, int guard,
                                   bool from_k1) {
  int digits = f.budget.n_work;
  TorusSeries acc = torus_zero(f.d, f.gband, f.spec, f.lo, f.hi, f.budget);
  TorusSeries g = f;
  if (from_k1) g = tau(f);
  long k = from_k1 ? 1 : 0;
  for (;; ++k) {
    if (k > guard) throw error("operator series did not converge");
    if (torus_is_zero(g, digits)) break;
    ScaledPAdic a = coeff(k);
    if (!a.is_exact_zero()) {
      TorusSeries term = torus_map(g, f.spec, [&](const std::vector<int>& kk, const DecoSeries& ca) {
        return std::make_pair(kk, series_scalar_mul(a, ca));
      });
      acc = torus_add(acc, term);
    }
    g = tau(g);
  }
  return acc;
}

TorusSeries operator_log(const TorusOp& tau, const TorusSeries& f, int guard) {
  uint32_t p = f.spec.p;
  int prec = f.budget.total();
  return operator_series(
      [&](long k) { return padic_from_ratio(p, k % 2 == 1 ? 1 : -1, k, prec); }, tau, f, guard,
      true);
}

TorusSeries operator_log_over_tau(const TorusOp& tau, const TorusSeries& f, int guard) {
  uint32_t p = f.spec.p;
  int prec = f.budget.total();
  return operator_series([&](long k) { return log_over_x_coeff(p, k, prec); }, tau, f, guard,
                         false);
}

TorusSeries operator_tau_over_log(const TorusOp& tau, const TorusSeries& f, int guard) {
  uint32_t p = f.spec.p;
  int prec = f.budget.total();
  return operator_series([&](long k) { return x_over_log_coeff(p, k, prec); }, tau, f, guard,
                         false);
}

std::vector<ScaledPAdic> implicit_solve(const VecFn& Q,
                                        const std::vector<std::vector<ScaledPAdic>>& H,
                                        const std::vector<ScaledPAdic>& Z0, int digits,
                                        int max_iter) {
  size_t s = Z0.size();
  uint32_t p = Z0[0].p;
  std::vector<ScaledPAdic> x(s, padic_zero(p));
  long last_resval = LONG_MIN;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<ScaledPAdic> arg(s);
    for (size_t i = 0; i < s; ++i) arg[i] = padic_add(Z0[i], x[i]);
    std::vector<ScaledPAdic> r = Q(arg);
    long rv = LONG_MAX;
    for (auto& ri : r)
      if (!ri.is_zero())
        rv = std::min(rv, (long)ri.val);
      else if (!ri.is_exact_zero())
        rv = std::min(rv, (long)ri.val);
    if (rv >= digits || rv == LONG_MAX) return x;
    if (rv <= last_resval)
      throw error("implicit_solve: residual valuation failed to increase (no contraction)");
    last_resval = rv;
    for (size_t i = 0; i < s; ++i) {
      ScaledPAdic corr = padic_zero(p);
      for (size_t j = 0; j < s; ++j) corr = padic_add(corr, padic_mul(H[i][j], r[j]));
      x[i] = padic_sub(x[i], corr);
    }
  }
  throw error("implicit_solve: iteration limit reached");
}

}  // namespace syntomo
