#include "syntomo/ring.hpp"

#include <algorithm>
#include <json.hpp>

namespace syntomo {

std::string deco_name(Deco d) {
  switch (d) {
    case Deco::Plus: return "plus";
    case Deco::Laurent: return "laurent";
    case Deco::PD: return "pd";
    case Deco::U: return "u";
    case Deco::UV: return "uv";
    case Deco::ZeroVPlus: return "zero_v_plus";
  }
  throw error("deco_name: bad enum");
}

Deco deco_from_name(const std::string& s) {
  if (s == "plus") return Deco::Plus;
  if (s == "laurent") return Deco::Laurent;
  if (s == "pd") return Deco::PD;
  if (s == "u") return Deco::U;
  if (s == "uv") return Deco::UV;
  if (s == "zero_v_plus") return Deco::ZeroVPlus;
  throw config_error("unknown decoration: " + s);
}

long floor_ratio(long num, long den) {
  if (den <= 0) throw error("floor_ratio: den <= 0");
  long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

long ceil_ratio(long num, long den) { return -floor_ratio(-num, den); }

bool RingSpec::operator==(const RingSpec& o) const {
  return p == o.p && profile == o.profile && e == o.e && i_cyclo == o.i_cyclo &&
         deco == o.deco && u.num * o.u.den == o.u.num * u.den &&
         v.num * o.v.den == o.v.num * v.den && P == o.P;
}

Rational default_u(uint32_t p) { return Rational{(long)p - 1, (long)p}; }
Rational default_v(uint32_t p) { return Rational{(long)p - 1, 1}; }

RingSpec make_profile_a(uint32_t p, int e, Deco deco, std::optional<Rational> u,
                        std::optional<Rational> v, std::optional<std::vector<long long>> P) {
  if (p < 3 || p % 2 == 0) throw config_error("p must be an odd prime");
  if (e < 1) throw config_error("e must be >= 1");
  RingSpec s;
  s.p = p;
  s.profile = 'A';
  s.e = e;
  s.i_cyclo = 0;
  s.deco = deco;
  s.u = u.value_or(default_u(p));
  s.v = v.value_or(default_v(p));
  if (P) {
    s.P = *P;
    if ((int)s.P.size() != e + 1 || s.P[e] != 1)
      throw config_error("filtration polynomial must be monic of degree e");
    if (s.P[0] % (long long)p != 0 || s.P[0] % ((long long)p * p) == 0 || s.P[0] == 0)
      throw config_error("filtration polynomial must be Eisenstein");
    for (int j = 1; j < e; ++j)
      if (s.P[j] % (long long)p != 0) throw config_error("filtration polynomial must be Eisenstein");
  } else {
    s.P.assign(e + 1, 0);
    s.P[e] = 1;
    s.P[0] = -(long long)p;
  }
  return s;
}

RingSpec make_profile_b(uint32_t p, int i_cyclo, Deco deco, std::optional<Rational> u,
                        std::optional<Rational> v) {
  if (p < 3 || p % 2 == 0) throw config_error("p must be an odd prime");
  if (i_cyclo < 3) throw config_error("cyclotomic level must be >= 3");
  RingSpec s;
  s.p = p;
  s.profile = 'B';
  s.i_cyclo = i_cyclo;
  long long e = (long long)(p - 1);
  for (int j = 0; j < i_cyclo - 1; ++j) e *= p;
  if (e > 100000) throw config_error("cyclotomic level too large");
  s.e = (int)e;
  s.deco = deco;
  s.u = u.value_or(default_u(p));
  s.v = v.value_or(default_v(p));
  // P = sum_{m=0}^{p-1} (1+T)^(m * p^(i-1)), the level-i cyclotomic
  // polynomial in 1+T divided by the level-(i-1) one.
  long long step = 1;
  for (int j = 0; j < i_cyclo - 1; ++j) step *= p;
  s.P.assign(e + 1, 0);
  for (long long m = 0; m < (long long)p; ++m) {
    long long n = m * step;
    // add binomial row (1+T)^n
    unsigned __int128 b = 1;
    for (long long k = 0; k <= n; ++k) {
      if (b > (unsigned __int128)INT64_MAX) throw config_error("cyclotomic level too large");
      s.P[k] += (long long)b;
      b = b * (unsigned __int128)(n - k) / (unsigned __int128)(k + 1);
    }
  }
  return s;
}

long lb(const RingSpec& spec, long i) {
  switch (spec.deco) {
    case Deco::Plus:
    case Deco::Laurent:
      return 0;
    case Deco::PD: {
      if (i < 0) throw error("lb: PD decoration has nonnegative band");
      return -factorial_valuation(spec.p, i / spec.e);
    }
    case Deco::U:
      if (i < 0) throw error("lb: U decoration has nonnegative band");
      return ceil_ratio(-i * spec.u.num, spec.e * spec.u.den);
    case Deco::UV:
      if (i >= 0) return ceil_ratio(-i * spec.u.num, spec.e * spec.u.den);
      return ceil_ratio(-i * spec.v.num, spec.e * spec.v.den);
    case Deco::ZeroVPlus:
      if (i >= 0) return 0;
      return ceil_ratio(-i * spec.v.num, spec.e * spec.v.den);
  }
  throw error("lb: bad decoration");
}

ScaledPAdic DecoSeries::get(long i) const {
  auto it = c.find(i);
  if (it == c.end()) return padic_zero(spec.p);
  return it->second;
}

void DecoSeries::set(long i, const ScaledPAdic& a) {
  if (i < lo || i > hi) {
    if (!a.is_zero()) tail_discarded = true;
    return;
  }
  if (a.is_exact_zero())
    c.erase(i);
  else
    c[i] = a;
}

void DecoSeries::add_to(long i, const ScaledPAdic& a) {
  if (i < lo || i > hi) {
    if (!a.is_zero()) tail_discarded = true;
    return;
  }
  set(i, padic_add(get(i), a));
}

DecoSeries series_zero(const RingSpec& spec, long lo, long hi, PrecisionBudget budget) {
  DecoSeries f;
  f.spec = spec;
  f.lo = lo;
  f.hi = hi;
  f.budget = budget;
  if ((spec.deco == Deco::Plus || spec.deco == Deco::PD || spec.deco == Deco::U) && lo < 0)
    throw config_error("decoration requires a nonnegative band");
  return f;
}

DecoSeries series_monomial(const RingSpec& spec, long lo, long hi, PrecisionBudget budget,
                           long deg, const ScaledPAdic& a) {
  DecoSeries f = series_zero(spec, lo, hi, budget);
  f.set(deg, a);
  return f;
}

DecoSeries series_one(const RingSpec& spec, long lo, long hi, PrecisionBudget budget) {
  return series_monomial(spec, lo, hi, budget, 0, padic_from_int(spec.p, 1, budget.total()));
}

static void require_same_frame(const DecoSeries& a, const DecoSeries& b) {
  if (a.spec.p != b.spec.p) throw error("series op: mixed primes");
}

DecoSeries series_add(const DecoSeries& a, const DecoSeries& b) {
  require_same_frame(a, b);
  DecoSeries r = a;
  r.lo = std::max(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  r.tail_discarded = a.tail_discarded || b.tail_discarded;
  std::map<long, ScaledPAdic> out;
  r.c.clear();
  for (auto& [i, ca] : a.c) r.set(i, ca);
  for (auto& [i, cb] : b.c) r.add_to(i, cb);
  return r;
}

DecoSeries series_neg(const DecoSeries& a) {
  DecoSeries r = a;
  for (auto& [i, ca] : r.c) ca = padic_neg(ca);
  return r;
}

DecoSeries series_sub(const DecoSeries& a, const DecoSeries& b) {
  return series_add(a, series_neg(b));
}

DecoSeries series_scalar_mul(const ScaledPAdic& s, const DecoSeries& a) {
  DecoSeries r = a;
  r.c.clear();
  for (auto& [i, ca] : a.c) r.set(i, padic_mul(s, ca));
  return r;
}

DecoSeries series_mul(const DecoSeries& a, const DecoSeries& b) {
  require_same_frame(a, b);
  uint32_t p = a.spec.p;
  int cap = digit_cap(p);
  DecoSeries r = series_zero(a.spec, std::max(a.lo, b.lo), std::min(a.hi, b.hi), a.budget);
  r.tail_discarded = a.tail_discarded || b.tail_discarded;
  if (a.c.empty() || b.c.empty()) return r;
  long n = r.hi - r.lo + 1;
  if (n <= 0) return r;
  const long NONE = LONG_MAX / 2;
  std::vector<long> minval((size_t)n, NONE), known((size_t)n, NONE);
  // pass 1: valuation floor and knowledge bound per output degree
  for (auto& [i, ca] : a.c)
    for (auto& [j, cb] : b.c) {
      long k = i + j;
      if (k < r.lo || k > r.hi) {
        if (!ca.is_zero() && !cb.is_zero()) r.tail_discarded = true;
        continue;
      }
      size_t s = (size_t)(k - r.lo);
      long kb;
      if (ca.is_zero() || cb.is_zero()) {
        if (ca.is_exact_zero() || cb.is_exact_zero()) continue;
        long za = ca.is_zero() ? ca.val : ca.val;  // bound or valuation
        long zb = cb.is_zero() ? cb.val : cb.val;
        kb = za + zb;
      } else {
        kb = (long)ca.val + cb.val + std::min(ca.prec, cb.prec);
        minval[s] = std::min(minval[s], (long)ca.val + cb.val);
      }
      known[s] = std::min(known[s], kb);
    }
  // pass 2: fixed-point accumulation at the per-degree floor
  std::vector<uint64_t> acc((size_t)n, 0);
  std::vector<uint64_t> mods((size_t)n, 0);
  std::vector<int> widths((size_t)n, 0);
  for (size_t s = 0; s < (size_t)n; ++s) {
    if (minval[s] == NONE) continue;
    long w = std::min(known[s], minval[s] + cap) - minval[s];
    if (w <= 0) continue;
    widths[s] = (int)w;
    mods[s] = pow_u64(p, (int)w);
  }
  for (auto& [i, ca] : a.c) {
    if (ca.is_zero()) continue;
    for (auto& [j, cb] : b.c) {
      if (cb.is_zero()) continue;
      long k = i + j;
      if (k < r.lo || k > r.hi) continue;
      size_t s = (size_t)(k - r.lo);
      if (widths[s] == 0) continue;
      long sh = (long)ca.val + cb.val - minval[s];
      if (sh >= widths[s]) continue;
      uint64_t t = mulmod_u64(ca.mantissa % mods[s], cb.mantissa % mods[s], mods[s]);
      t = mulmod_u64(t, pow_u64(p, (int)sh), mods[s]);
      acc[s] = (acc[s] + t) % mods[s];
    }
  }
  for (size_t s = 0; s < (size_t)n; ++s) {
    long k = r.lo + (long)s;
    if (minval[s] == NONE) {
      if (known[s] != NONE) r.set(k, padic_zero_bounded(p, (int)std::min<long>(known[s], ScaledPAdic::kExactZero)));
      continue;
    }
    if (widths[s] == 0) {
      r.set(k, padic_zero_bounded(p, (int)std::min<long>(known[s], ScaledPAdic::kExactZero)));
      continue;
    }
    // renormalize accumulator
    uint64_t m = acc[s];
    if (m == 0) {
      r.set(k, padic_zero_bounded(p, (int)(minval[s] + widths[s])));
      continue;
    }
    int strip = 0;
    while (m % p == 0) {
      m /= p;
      ++strip;
    }
    ScaledPAdic v;
    v.p = p;
    v.val = (int)(minval[s] + strip);
    v.prec = widths[s] - strip;
    v.mantissa = m % pow_u64(p, v.prec);
    if (v.mantissa == 0)
      r.set(k, padic_zero_bounded(p, (int)(minval[s] + widths[s])));
    else
      r.set(k, v);
  }
  return r;
}

DecoSeries series_pow(const DecoSeries& a, long k) {
  if (k < 0) throw error("series_pow: negative exponent");
  DecoSeries r = series_one(a.spec, a.lo, a.hi, a.budget);
  DecoSeries acc = a;
  long e = k;
  bool first = true;
  while (e > 0) {
    if (e & 1) r = first && e == 1 ? acc : series_mul(r, acc), first = false;
    e >>= 1;
    if (e > 0) acc = series_mul(acc, acc);
  }
  return r;
}

bool series_is_zero(const DecoSeries& a, int digits) {
  for (auto& [i, ca] : a.c) {
    (void)i;
    if (ca.is_zero()) {
      if (!ca.is_exact_zero() && ca.val < digits) return false;
    } else if (ca.val < digits) {
      return false;
    }
  }
  return true;
}

bool series_value_equal(const DecoSeries& a, const DecoSeries& b, int digits) {
  long lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  for (long i = lo; i <= hi; ++i)
    if (!padic_value_equal(a.get(i), b.get(i), digits)) return false;
  return true;
}

std::optional<long> series_min_val(const DecoSeries& a, int digits) {
  std::optional<long> m;
  for (auto& [i, ca] : a.c) {
    (void)i;
    if (ca.is_zero() || ca.val >= digits) continue;
    if (!m || ca.val < *m) m = ca.val;
  }
  return m;
}

Membership membership(const DecoSeries& f) {
  Membership res = Membership::Yes;
  for (auto& [i, ca] : f.c) {
    long floor_i = lb(f.spec, i);
    if (ca.is_zero()) {
      if (!ca.is_exact_zero() && ca.val < floor_i) res = Membership::Unknown;
    } else if (ca.val < floor_i) {
      return Membership::No;
    }
  }
  return res;
}

void check_membership(const DecoSeries& f) {
  switch (membership(f)) {
    case Membership::Yes:
      return;
    case Membership::No:
      throw membership_error("series violates decoration floor");
    case Membership::Unknown:
      throw precision_error("membership undecidable at current precision");
  }
}

DecoSeries series_cast(const DecoSeries& f, const RingSpec& to) {
  if (to.p != f.spec.p) throw error("series_cast: mixed primes");
  DecoSeries r = series_zero(to, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [i, ca] : f.c) r.set(i, ca);
  return r;
}

DecoSeries series_invert(const DecoSeries& f) {
  uint32_t p = f.spec.p;
  long m = f.lo;
  while (m <= f.hi) {
    if (!f.get(m).is_zero()) break;
    ++m;
  }
  if (m > f.hi) throw error("series_invert: zero series");
  long width = f.hi - f.lo;
  std::vector<ScaledPAdic> g((size_t)width + 1, padic_zero(p));
  for (long n = 0; n <= width; ++n)
    if (m + n <= f.hi) g[(size_t)n] = f.get(m + n);
  std::vector<ScaledPAdic> b((size_t)width + 1, padic_zero(p));
  ScaledPAdic b0 = padic_inv(g[0]);
  b[0] = b0;
  for (long n = 1; n <= width; ++n) {
    ScaledPAdic s = padic_zero(p);
    for (long j = 1; j <= n; ++j) s = padic_add(s, padic_mul(g[(size_t)j], b[(size_t)(n - j)]));
    b[(size_t)n] = padic_neg(padic_mul(b0, s));
  }
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (long n = 0; n <= width; ++n) r.set(-m + n, b[(size_t)n]);
  return r;
}

std::vector<ScaledPAdic> filt_poly_power(const RingSpec& spec, int r, int prec) {
  uint32_t p = spec.p;
  std::vector<ScaledPAdic> base;
  for (long long cj : spec.P) base.push_back(padic_from_int(p, cj, prec));
  std::vector<ScaledPAdic> acc{padic_from_int(p, 1, prec)};
  for (int t = 0; t < r; ++t) {
    std::vector<ScaledPAdic> next(acc.size() + base.size() - 1, padic_zero(p));
    for (size_t i = 0; i < acc.size(); ++i)
      for (size_t j = 0; j < base.size(); ++j)
        next[i + j] = padic_add(next[i + j], padic_mul(acc[i], base[j]));
    acc = std::move(next);
  }
  return acc;
}

// quotient-ring product: (a * b) mod Pr, all polynomials of degree < D
// except the raw product; Pr monic of degree D.
static std::vector<ScaledPAdic> poly_mulmod(const std::vector<ScaledPAdic>& a,
                                            const std::vector<ScaledPAdic>& b,
                                            const std::vector<ScaledPAdic>& Pr, uint32_t p) {
  size_t D = Pr.size() - 1;
  std::vector<ScaledPAdic> prod(a.size() + b.size() - 1, padic_zero(p));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = padic_add(prod[i + j], padic_mul(a[i], b[j]));
  }
  for (size_t d = prod.size(); d-- > D;) {
    ScaledPAdic q = prod[d];
    if (q.is_exact_zero()) continue;
    for (size_t j = 0; j < D; ++j)
      prod[d - D + j] = padic_sub(prod[d - D + j], padic_mul(q, Pr[j]));
    prod[d] = padic_zero(p);
  }
  prod.resize(D);
  return prod;
}

DecoSeries reduce_mod_fr(const DecoSeries& f, int r) {
  if (r <= 0) throw error("reduce_mod_fr: r must be positive");
  uint32_t p = f.spec.p;
  int prec = std::min(f.budget.total() + 4, digit_cap(p));
  std::vector<ScaledPAdic> Pr = filt_poly_power(f.spec, r, prec);
  long D = (long)Pr.size() - 1;  // = r * e
  // nonnegative part: long division
  long top = std::max(f.hi, D - 1);
  std::vector<ScaledPAdic> rem((size_t)top + 1, padic_zero(p));
  for (auto& [i, ca] : f.c)
    if (i >= 0) rem[(size_t)i] = ca;
  for (long d = top; d >= D; --d) {
    ScaledPAdic q = rem[(size_t)d];
    if (q.is_exact_zero()) continue;
    for (long j = 0; j < D; ++j)
      rem[(size_t)(d - D + j)] = padic_sub(rem[(size_t)(d - D + j)], padic_mul(q, Pr[(size_t)j]));
    rem[(size_t)d] = padic_zero(p);
  }
  rem.resize((size_t)D);
  // negative part: powers of X^{-1} mod P^r
  if (f.lo < 0) {
    // X * h == 1 mod P^r with h = -P0^{-1} (c1 + c2 X + ... + cD X^{D-1})
    std::vector<ScaledPAdic> xinv((size_t)D, padic_zero(p));
    ScaledPAdic c0inv = padic_neg(padic_inv(Pr[0]));
    for (long j = 1; j <= D; ++j) xinv[(size_t)(j - 1)] = padic_mul(c0inv, Pr[(size_t)j]);
    std::vector<ScaledPAdic> cur = xinv;  // X^{-1} mod P^r
    for (long i = -1; i >= f.lo; --i) {
      ScaledPAdic a = f.get(i);
      if (!a.is_exact_zero())
        for (long j = 0; j < D; ++j) rem[(size_t)j] = padic_add(rem[(size_t)j], padic_mul(a, cur[(size_t)j]));
      if (i > f.lo) cur = poly_mulmod(cur, xinv, Pr, p);
    }
  }
  DecoSeries out = series_zero(f.spec, 0, D - 1, f.budget);
  out.tail_discarded = f.tail_discarded;
  for (long j = 0; j < D; ++j) out.set(j, rem[(size_t)j]);
  return out;
}

bool in_fr(const DecoSeries& f, int r, int digits) {
  return series_is_zero(reduce_mod_fr(f, r), digits);
}

SplitResult split_plus_minus(const DecoSeries& f, int r) {
  if (f.spec.deco != Deco::PD && f.spec.deco != Deco::U)
    throw error("split_plus_minus: needs PD or U decoration");
  long cut = (long)r * f.spec.e;
  SplitResult s{series_zero(f.spec, f.lo, f.hi, f.budget),
                series_zero(f.spec, f.lo, f.hi, f.budget)};
  s.plus.tail_discarded = s.minus.tail_discarded = f.tail_discarded;
  long floor_minus = f.spec.deco == Deco::PD
                         ? -factorial_valuation(f.spec.p, r - 1)
                         : -floor_ratio((long)r * f.spec.u.num, f.spec.u.den);
  for (auto& [i, ca] : f.c) {
    if (i >= cut) {
      s.plus.set(i, ca);
    } else {
      if (!ca.is_zero() && ca.val < floor_minus)
        throw membership_error("split_plus_minus: minus part breaks its valuation floor");
      s.minus.set(i, ca);
    }
  }
  return s;
}

DecoSeries pd_basis_convert(const DecoSeries& f, bool to_pd_basis) {
  if (f.spec.deco != Deco::PD) throw error("pd_basis_convert: needs PD decoration");
  uint32_t p = f.spec.p;
  int prec = f.budget.total();
  DecoSeries r = series_zero(f.spec, f.lo, f.hi, f.budget);
  r.tail_discarded = f.tail_discarded;
  for (auto& [i, ca] : f.c) {
    long q = i / f.spec.e;
    FactorialUnit fu = factorial_unit(p, q, prec);
    ScaledPAdic fac;
    fac.p = p;
    fac.val = (int)fu.val;
    fac.prec = prec;
    fac.mantissa = fu.unit;
    r.set(i, to_pd_basis ? padic_mul(ca, fac) : padic_div(ca, fac));
  }
  return r;
}

static nlohmann::json rational_json(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

static Rational rational_from(const std::string& s) {
  auto pos = s.find('/');
  Rational r;
  r.num = std::stol(s.substr(0, pos));
  r.den = pos == std::string::npos ? 1 : std::stol(s.substr(pos + 1));
  if (r.den <= 0) throw config_error("rational with nonpositive denominator: " + s);
  return r;
}

std::string series_to_json(const DecoSeries& f) {
  nlohmann::json j;
  j["spec"] = {{"p", f.spec.p},
               {"profile", std::string(1, f.spec.profile)},
               {"e", f.spec.e},
               {"i_cyclo", f.spec.i_cyclo},
               {"deco", deco_name(f.spec.deco)},
               {"u", rational_json(f.spec.u)},
               {"v", rational_json(f.spec.v)},
               {"P", f.spec.P}};
  j["band"] = {f.lo, f.hi};
  j["budget"] = {{"n_work", f.budget.n_work}, {"slack", f.budget.slack}};
  j["tail_discarded"] = f.tail_discarded;
  auto coeffs = nlohmann::json::array();
  int prec = f.budget.total();
  for (auto& [i, ca] : f.c) {
    if (ca.is_zero())
      coeffs.push_back({i, std::min<long>(ca.val, ScaledPAdic::kExactZero), 0});
    else
      coeffs.push_back({i, ca.val, ca.mantissa % pow_u64(f.spec.p, std::min(prec, ca.prec))});
  }
  j["coeffs"] = coeffs;
  return j.dump(2);
}

DecoSeries series_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto js = j.at("spec");
  RingSpec spec;
  spec.p = js.at("p").get<uint32_t>();
  spec.profile = js.at("profile").get<std::string>().at(0);
  spec.e = js.at("e").get<int>();
  spec.i_cyclo = js.at("i_cyclo").get<int>();
  spec.deco = deco_from_name(js.at("deco").get<std::string>());
  spec.u = rational_from(js.at("u").get<std::string>());
  spec.v = rational_from(js.at("v").get<std::string>());
  spec.P = js.at("P").get<std::vector<long long>>();
  PrecisionBudget budget;
  budget.n_work = j.at("budget").at("n_work").get<int>();
  budget.slack = j.at("budget").at("slack").get<int>();
  DecoSeries f = series_zero(spec, j.at("band")[0].get<long>(), j.at("band")[1].get<long>(), budget);
  f.tail_discarded = j.value("tail_discarded", false);
  for (auto& row : j.at("coeffs")) {
    long deg = row[0].get<long>();
    long val = row[1].get<long>();
    uint64_t mant = row[2].get<uint64_t>();
    if (mant == 0) {
      f.set(deg, padic_zero_bounded(spec.p, (int)val));
    } else {
      ScaledPAdic a;
      a.p = spec.p;
      a.val = (int)val;
      a.prec = budget.total();
      a.mantissa = mant % pow_u64(spec.p, a.prec);
      f.set(deg, a);
    }
  }
  return f;
}

void TorusSeries::set(const std::vector<int>& k, const DecoSeries& a) {
  if ((int)k.size() != d) throw error("TorusSeries::set: exponent arity");
  for (int kj : k)
    if (kj < -gband || kj > gband) {
      if (!series_is_zero(a, budget.total())) tail_discarded = true;
      return;
    }
  if (a.c.empty())
    c.erase(k);
  else
    c[k] = a;
}

DecoSeries TorusSeries::get(const std::vector<int>& k) const {
  auto it = c.find(k);
  if (it != c.end()) return it->second;
  return series_zero(spec, lo, hi, budget);
}

TorusSeries torus_zero(int d, long gband, const RingSpec& spec, long lo, long hi,
                       PrecisionBudget budget) {
  TorusSeries t;
  t.d = d;
  t.gband = gband;
  t.spec = spec;
  t.lo = lo;
  t.hi = hi;
  t.budget = budget;
  return t;
}

TorusSeries torus_add(const TorusSeries& a, const TorusSeries& b) {
  if (a.d != b.d) throw error("torus_add: arity mismatch");
  TorusSeries r = a;
  r.tail_discarded = a.tail_discarded || b.tail_discarded;
  for (auto& [k, cb] : b.c) {
    auto it = r.c.find(k);
    if (it == r.c.end())
      r.set(k, cb);
    else
      r.set(k, series_add(it->second, cb));
  }
  return r;
}

TorusSeries torus_sub(const TorusSeries& a, const TorusSeries& b) {
  TorusSeries nb = b;
  for (auto& [k, cb] : nb.c) cb = series_neg(cb);
  return torus_add(a, nb);
}

TorusSeries torus_mul(const TorusSeries& a, const TorusSeries& b) {
  if (a.d != b.d) throw error("torus_mul: arity mismatch");
  TorusSeries r = torus_zero(a.d, std::min(a.gband, b.gband), a.spec, std::max(a.lo, b.lo),
                             std::min(a.hi, b.hi), a.budget);
  r.tail_discarded = a.tail_discarded || b.tail_discarded;
  for (auto& [ka, ca] : a.c)
    for (auto& [kb, cb] : b.c) {
      std::vector<int> k(ka.size());
      bool in = true;
      for (size_t j = 0; j < k.size(); ++j) {
        k[j] = ka[j] + kb[j];
        if (k[j] < -r.gband || k[j] > r.gband) in = false;
      }
      DecoSeries prod = series_mul(ca, cb);
      if (!in) {
        if (!series_is_zero(prod, r.budget.total())) r.tail_discarded = true;
        continue;
      }
      auto it = r.c.find(k);
      if (it == r.c.end())
        r.set(k, prod);
      else
        r.set(k, series_add(it->second, prod));
    }
  return r;
}

bool torus_is_zero(const TorusSeries& a, int digits) {
  for (auto& [k, ca] : a.c) {
    (void)k;
    if (!series_is_zero(ca, digits)) return false;
  }
  return true;
}

bool torus_value_equal(const TorusSeries& a, const TorusSeries& b, int digits) {
  return torus_is_zero(torus_sub(a, b), digits);
}

}  // namespace syntomo
