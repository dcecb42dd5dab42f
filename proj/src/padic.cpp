#include "syntomo/padic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace syntomo {

int digit_cap(uint32_t p) {
  if (p < 3 || p % 2 == 0) throw config_error("p must be an odd prime >= 3");
  int k = 0;
  unsigned __int128 acc = 1;
  const unsigned __int128 lim = (unsigned __int128)1 << 62;
  while (acc * p < lim) {
    acc *= p;
    ++k;
  }
  return k;
}

uint64_t pow_u64(uint32_t p, int k) {
  if (k < 0) throw error("pow_u64: negative exponent");
  unsigned __int128 acc = 1;
  const unsigned __int128 lim = (unsigned __int128)1 << 63;
  for (int i = 0; i < k; ++i) {
    acc *= p;
    if (acc >= lim) throw precision_error("pow_u64: overflow, precision too large");
  }
  return (uint64_t)acc;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)(((unsigned __int128)a * b) % m);
}

uint64_t invmod_u64(uint64_t a, uint64_t m) {
  // extended Euclid
  int64_t r0 = (int64_t)m, r1 = (int64_t)(a % m);
  int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw error("invmod_u64: not invertible");
  if (t0 < 0) t0 += (int64_t)m;
  return (uint64_t)t0;
}

ScaledPAdic padic_zero(uint32_t p) {
  ScaledPAdic z;
  z.p = p;
  z.val = ScaledPAdic::kExactZero;
  return z;
}

ScaledPAdic padic_zero_bounded(uint32_t p, int bound) {
  ScaledPAdic z;
  z.p = p;
  z.val = bound;
  return z;
}

static ScaledPAdic normalize(uint32_t p, uint64_t m, int val, int width) {
  // value = p^val * m, known modulo p^(val+width); m may share factors of p.
  if (width <= 0) return padic_zero_bounded(p, val + width);
  uint64_t mod = pow_u64(p, width);
  m %= mod;
  if (m == 0) return padic_zero_bounded(p, val + width);
  int s = 0;
  while (m % p == 0) {
    m /= p;
    ++s;
  }
  ScaledPAdic r;
  r.p = p;
  r.val = val + s;
  r.prec = width - s;
  r.mantissa = m % pow_u64(p, r.prec);
  if (r.mantissa == 0) return padic_zero_bounded(p, val + width);
  return r;
}

ScaledPAdic padic_from_int(uint32_t p, long long v, int prec) {
  if (prec <= 0 || prec > digit_cap(p)) throw precision_error("padic_from_int: bad precision");
  if (v == 0) return padic_zero(p);
  bool neg = v < 0;
  uint64_t m = neg ? (uint64_t)(-(v + 1)) + 1 : (uint64_t)v;
  int val = 0;
  while (m % p == 0) {
    m /= p;
    ++val;
  }
  uint64_t mod = pow_u64(p, prec);
  m %= mod;
  if (neg) m = (mod - m) % mod;
  if (m == 0) return padic_zero_bounded(p, val + prec);
  ScaledPAdic r;
  r.p = p;
  r.val = val;
  r.prec = prec;
  r.mantissa = m;
  return r;
}

ScaledPAdic padic_from_ratio(uint32_t p, long long num, long long den, int prec) {
  if (den == 0) throw error("padic_from_ratio: zero denominator");
  ScaledPAdic n = padic_from_int(p, num, prec);
  ScaledPAdic d = padic_from_int(p, den, prec);
  return padic_div(n, d);
}

ScaledPAdic padic_trunc(const ScaledPAdic& a, int digits) {
  if (a.is_zero()) {
    if (a.is_exact_zero()) return a;
    return padic_zero_bounded(a.p, std::min<int>(a.val, digits + a.val));
  }
  if (digits >= a.prec) return a;
  return normalize(a.p, a.mantissa, a.val, digits);
}

ScaledPAdic padic_add(const ScaledPAdic& a, const ScaledPAdic& b) {
  if (a.p != b.p) throw error("padic_add: mixed primes");
  uint32_t p = a.p;
  if (a.is_zero() && b.is_zero()) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    return padic_zero_bounded(p, std::min(a.val, b.val));
  }
  if (a.is_zero()) {
    // b known mod p^known_b, plus something vanishing mod p^a.val
    if (a.is_exact_zero()) return b;
    int known = std::min<int>(a.val, b.known_to());
    return normalize(p, b.mantissa, b.val, known - b.val);
  }
  if (b.is_zero()) return padic_add(b, a);
  int v = std::min(a.val, b.val);
  int known = std::min(a.known_to(), b.known_to());
  int width = known - v;
  int cap = digit_cap(p);
  if (width > cap) {
    width = cap;
    known = v + cap;
  }
  if (width <= 0) return padic_zero_bounded(p, known);
  uint64_t mod = pow_u64(p, width);
  uint64_t ma = (a.val - v < width) ? mulmod_u64(a.mantissa, pow_u64(p, a.val - v), mod) : 0;
  uint64_t mb = (b.val - v < width) ? mulmod_u64(b.mantissa, pow_u64(p, b.val - v), mod) : 0;
  uint64_t m = (ma + mb) % mod;
  return normalize(p, m, v, width);
}

ScaledPAdic padic_neg(const ScaledPAdic& a) {
  if (a.is_zero()) return a;
  ScaledPAdic r = a;
  uint64_t mod = pow_u64(a.p, a.prec);
  r.mantissa = (mod - a.mantissa) % mod;
  return r;
}

ScaledPAdic padic_sub(const ScaledPAdic& a, const ScaledPAdic& b) { return padic_add(a, padic_neg(b)); }

ScaledPAdic padic_mul(const ScaledPAdic& a, const ScaledPAdic& b) {
  if (a.p != b.p) throw error("padic_mul: mixed primes");
  uint32_t p = a.p;
  if (a.is_zero() || b.is_zero()) {
    if (a.is_exact_zero() || b.is_exact_zero()) return padic_zero(p);
    if (a.is_zero() && b.is_zero()) {
      long bound = (long)a.val + (long)b.val;
      return padic_zero_bounded(p, (int)std::min<long>(bound, ScaledPAdic::kExactZero));
    }
    const ScaledPAdic& z = a.is_zero() ? a : b;
    const ScaledPAdic& n = a.is_zero() ? b : a;
    long bound = (long)z.val + (long)n.val;
    return padic_zero_bounded(p, (int)std::min<long>(bound, ScaledPAdic::kExactZero));
  }
  ScaledPAdic r;
  r.p = p;
  r.val = a.val + b.val;
  r.prec = std::min(a.prec, b.prec);
  uint64_t mod = pow_u64(p, r.prec);
  r.mantissa = mulmod_u64(a.mantissa % mod, b.mantissa % mod, mod);
  if (r.mantissa == 0) throw error("padic_mul: internal");
  return r;
}

ScaledPAdic padic_inv(const ScaledPAdic& a) {
  if (a.is_zero()) throw error("padic_inv: zero (at known precision)");
  ScaledPAdic r;
  r.p = a.p;
  r.val = -a.val;
  r.prec = a.prec;
  r.mantissa = invmod_u64(a.mantissa, pow_u64(a.p, a.prec));
  return r;
}

ScaledPAdic padic_div(const ScaledPAdic& a, const ScaledPAdic& b) { return padic_mul(a, padic_inv(b)); }

ScaledPAdic padic_pow(const ScaledPAdic& a, long k) {
  if (k == 0) return padic_from_int(a.p, 1, a.is_zero() ? 8 : a.prec);
  if (k < 0) return padic_inv(padic_pow(a, -k));
  ScaledPAdic acc = a;
  ScaledPAdic res;
  bool have = false;
  long e = k;
  while (e > 0) {
    if (e & 1) {
      res = have ? padic_mul(res, acc) : acc;
      have = true;
    }
    e >>= 1;
    if (e > 0) acc = padic_mul(acc, acc);
  }
  return res;
}

bool padic_value_equal(const ScaledPAdic& a, const ScaledPAdic& b, int digits) {
  ScaledPAdic d = padic_sub(a, b);
  if (d.is_zero()) return d.val >= digits || d.is_exact_zero();
  return d.val >= digits;
}

uint64_t padic_residue(const ScaledPAdic& a, int scale, int n) {
  if (n <= 0 || n > digit_cap(a.p)) throw precision_error("padic_residue: bad modulus");
  if (a.is_zero()) {
    if (a.is_exact_zero()) return 0;
    if (a.val < scale + n)
      throw precision_error("padic_residue: zero bound " + std::to_string(a.val) +
                            " below required " + std::to_string(scale + n));
    return 0;
  }
  if (a.val < scale)
    throw membership_error("padic_residue: valuation " + std::to_string(a.val) +
                           " below floor " + std::to_string(scale));
  if (a.known_to() < scale + n)
    throw precision_error("padic_residue: known to " + std::to_string(a.known_to()) +
                          ", need " + std::to_string(scale + n));
  int sh = a.val - scale;
  if (sh >= n) return 0;
  uint64_t mod = pow_u64(a.p, n);
  return mulmod_u64(a.mantissa % mod, pow_u64(a.p, sh), mod);
}

long factorial_valuation(uint32_t p, long k) {
  long v = 0;
  long q = k;
  while (q > 0) {
    q /= p;
    v += q;
  }
  return v;
}

FactorialUnit factorial_unit(uint32_t p, long k, int prec) {
  FactorialUnit f;
  uint64_t mod = pow_u64(p, prec);
  for (long j = 2; j <= k; ++j) {
    long m = j;
    while (m % p == 0) {
      m /= p;
      ++f.val;
    }
    f.unit = mulmod_u64(f.unit, (uint64_t)(m % (long)mod), mod);
  }
  return f;
}

ScaledPAdic padic_binomial(const ScaledPAdic& c, long k, int target_prec) {
  if (k < 0) throw error("padic_binomial: negative k");
  uint32_t p = c.p;
  if (k == 0) return padic_from_int(p, 1, target_prec);
  if (!c.is_zero() && c.val < 0) throw error("padic_binomial: c not a p-adic integer");
  int ell = 0;
  {
    long q = k;
    while (q >= (long)p) {
      q /= p;
      ++ell;
    }
  }
  int cap = digit_cap(p);
  int m = std::min(target_prec + ell, cap);
  m = std::min<int>(m, c.known_to());
  if (m - ell <= 0) throw precision_error("padic_binomial: insufficient precision on c");
  // Integer representative of c modulo p^m.
  uint64_t pm = pow_u64(p, m);
  uint64_t C = c.is_zero() ? 0 : padic_residue(c, 0, m);
  // Product of (C - i), i = 0..k-1, tracking p-valuation exactly.
  long totval = 0;
  uint64_t unit = 1;
  uint64_t workmod = pm;
  bool neg = false;
  bool vanished = false;  // some factor ≡ 0 mod p^m: valuation only bounded below
  for (long i = 0; i < k; ++i) {
    long long f = (long long)C - i;
    if (f == 0) {
      vanished = true;
      totval += m;
      continue;
    }
    uint64_t af = f < 0 ? (uint64_t)(-f) : (uint64_t)f;
    if (f < 0) neg = !neg;
    int v = 0;
    while (af % p == 0) {
      af /= p;
      ++v;
    }
    totval += v;
    unit = mulmod_u64(unit, af % workmod, workmod);
  }
  FactorialUnit fk = factorial_unit(p, k, m);
  long val = totval - fk.val;
  int resprec = m - ell;
  if (vanished || val >= resprec) return padic_zero_bounded(p, resprec);
  unit = mulmod_u64(unit, invmod_u64(fk.unit, workmod), workmod);
  if (neg) unit = (workmod - unit) % workmod;
  ScaledPAdic r = normalize(p, unit, 0, m);
  if (r.is_zero()) return padic_zero_bounded(p, resprec);
  if (r.val != 0) {
    // unit part already stripped of p above; normalize only trims width
    val += r.val;
  }
  ScaledPAdic out;
  out.p = p;
  out.val = (int)val;
  out.prec = std::min<int>(r.prec, resprec - (int)val);
  if (out.prec <= 0) return padic_zero_bounded(p, resprec);
  out.mantissa = r.mantissa % pow_u64(p, out.prec);
  if (out.mantissa == 0) return padic_zero_bounded(p, resprec);
  return out;
}

ScaledPAdic padic_exp(const ScaledPAdic& x, int target_prec) {
  uint32_t p = x.p;
  if (x.is_zero()) return padic_from_int(p, 1, target_prec);
  if (x.val < 1) throw error("padic_exp: needs v_p(x) >= 1");
  ScaledPAdic acc = padic_from_int(p, 1, target_prec + 2);
  ScaledPAdic term = acc;
  for (long n = 1;; ++n) {
    term = padic_mul(term, x);
    // divide by n
    term = padic_div(term, padic_from_int(p, n, target_prec + 2));
    if (term.is_zero() || term.val >= target_prec) break;
    acc = padic_add(acc, term);
    if (n > 4 * target_prec + 16) throw error("padic_exp: no convergence");
  }
  return padic_trunc(acc, target_prec);
}

ScaledPAdic log_over_x_coeff(uint32_t p, long k, int prec) {
  long sign = (k % 2 == 0) ? 1 : -1;
  return padic_from_ratio(p, sign, k + 1, prec);
}

ScaledPAdic x_over_log_coeff(uint32_t p, long k, int prec) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, int>, std::vector<ScaledPAdic>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[{p, prec}];
  if (v.empty()) v.push_back(padic_from_int(p, 1, prec));
  while ((long)v.size() <= k) {
    long n = (long)v.size();
    int iprec = std::min(prec + (int)(n / (p - 1)) + 2, digit_cap(p));
    ScaledPAdic s = padic_zero(p);
    for (long j = 1; j <= n; ++j)
      s = padic_add(s, padic_mul(log_over_x_coeff(p, j, iprec), v[n - j]));
    v.push_back(padic_neg(s));
  }
  return v[k];
}

std::string padic_to_string(const ScaledPAdic& a) {
  std::ostringstream os;
  if (a.is_zero()) {
    if (a.is_exact_zero())
      os << "0";
    else
      os << "O(" << a.p << "^" << a.val << ")";
    return os.str();
  }
  os << a.p << "^" << a.val << "*" << a.mantissa << "+O(" << a.p << "^" << a.known_to() << ")";
  return os.str();
}

}  // namespace syntomo
