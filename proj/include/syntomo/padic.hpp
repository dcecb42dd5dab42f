#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace syntomo {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precision_error : error {
  using error::error;
};
struct membership_error : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};

// Working precision for ring elements.  Public results are reported at
// n_work digits; internal computation runs at n_work + slack.
struct PrecisionBudget {
  int n_work = 8;
  int slack = 4;
  int total() const { return n_work + slack; }
};

// A p-adic number p^val * mantissa, with p odd and mantissa a unit,
// known modulo p^(val+prec).  A value with mantissa == 0 is zero, known
// to vanish modulo p^val (val = kExactZero for the canonical zero).
struct ScaledPAdic {
  uint64_t mantissa = 0;
  int32_t val = 0;
  int32_t prec = 0;
  uint32_t p = 3;

  static constexpr int32_t kExactZero = INT32_MAX / 4;

  bool is_zero() const { return mantissa == 0; }
  bool is_exact_zero() const { return mantissa == 0 && val >= kExactZero; }
  // Exponent k such that the value is known modulo p^k.
  int32_t known_to() const { return is_zero() ? val : val + prec; }
};

// Largest exponent k with p^k < 2^62.
int digit_cap(uint32_t p);
uint64_t pow_u64(uint32_t p, int k);
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t invmod_u64(uint64_t a, uint64_t m);

ScaledPAdic padic_zero(uint32_t p);
// Zero known to vanish modulo p^bound.
ScaledPAdic padic_zero_bounded(uint32_t p, int bound);
ScaledPAdic padic_from_int(uint32_t p, long long v, int prec);
ScaledPAdic padic_from_ratio(uint32_t p, long long num, long long den, int prec);

ScaledPAdic padic_add(const ScaledPAdic& a, const ScaledPAdic& b);
ScaledPAdic padic_neg(const ScaledPAdic& a);
ScaledPAdic padic_sub(const ScaledPAdic& a, const ScaledPAdic& b);
ScaledPAdic padic_mul(const ScaledPAdic& a, const ScaledPAdic& b);
ScaledPAdic padic_inv(const ScaledPAdic& a);
ScaledPAdic padic_div(const ScaledPAdic& a, const ScaledPAdic& b);
ScaledPAdic padic_pow(const ScaledPAdic& a, long k);

// Truncate to at most `digits` digits of relative precision.
ScaledPAdic padic_trunc(const ScaledPAdic& a, int digits);

// a == b modulo p^digits (as far as both are known; unknown digits are
// treated as matching only up to the common knowledge bound).
bool padic_value_equal(const ScaledPAdic& a, const ScaledPAdic& b, int digits);

// Residue of a / p^scale modulo p^n.  Requires v_p(a) >= scale and
// knowledge of a modulo p^(scale+n).
uint64_t padic_residue(const ScaledPAdic& a, int scale, int n);

// v_p of k! together with the unit part k!/p^{v} modulo p^prec.
struct FactorialUnit {
  long val = 0;
  uint64_t unit = 1;
};
FactorialUnit factorial_unit(uint32_t p, long k, int prec);
long factorial_valuation(uint32_t p, long k);

// Binomial coefficient binom(c, k) for a p-adic integer c, certified to
// target_prec - floor(log_p k) digits of absolute precision.
ScaledPAdic padic_binomial(const ScaledPAdic& c, long k, int target_prec);

// exp(x) for v_p(x) >= 1 (p odd).
ScaledPAdic padic_exp(const ScaledPAdic& x, int target_prec);

// Coefficient a_k of log(1+X)/X, i.e. (-1)^k/(k+1).
ScaledPAdic log_over_x_coeff(uint32_t p, long k, int prec);
// Coefficient b_k of X/log(1+X), by formal inversion of the above.
ScaledPAdic x_over_log_coeff(uint32_t p, long k, int prec);

std::string padic_to_string(const ScaledPAdic& a);

}  // namespace syntomo
