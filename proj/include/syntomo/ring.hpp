#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syntomo/padic.hpp"

namespace syntomo {

// Decoration of a truncated Laurent coefficient ring: which valuation
// floor lb(i) each degree-i coefficient must respect.
enum class Deco { Plus, Laurent, PD, U, UV, ZeroVPlus };

std::string deco_name(Deco d);
Deco deco_from_name(const std::string& s);

struct Rational {
  long num = 0;
  long den = 1;
};

// ceil(num/den), den > 0
long ceil_ratio(long num, long den);
// floor(num/den), den > 0
long floor_ratio(long num, long den);

// Arithmetic frame: profile A is the one-variable Kummer frame with an
// Eisenstein filtration polynomial P; profile B is the cyclotomic frame
// where the filtration polynomial is the quotient of cyclotomic
// polynomials of level i and i-1.
struct RingSpec {
  uint32_t p = 3;
  char profile = 'A';
  int e = 1;
  int i_cyclo = 0;  // 0 for profile A
  Deco deco = Deco::Plus;
  Rational u{0, 1};  // only meaningful for U, UV
  Rational v{0, 1};  // only meaningful for UV, ZeroVPlus
  std::vector<long long> P;  // filtration polynomial, degree e, monic

  bool operator==(const RingSpec& o) const;
};

RingSpec make_profile_a(uint32_t p, int e, Deco deco,
                        std::optional<Rational> u = std::nullopt,
                        std::optional<Rational> v = std::nullopt,
                        std::optional<std::vector<long long>> P = std::nullopt);
RingSpec make_profile_b(uint32_t p, int i_cyclo, Deco deco,
                        std::optional<Rational> u = std::nullopt,
                        std::optional<Rational> v = std::nullopt);

// Standing interval parameters u = (p-1)/p, v = p-1.
Rational default_u(uint32_t p);
Rational default_v(uint32_t p);

// Valuation floor for the degree-i coefficient.
long lb(const RingSpec& spec, long i);

// Band-truncated decorated Laurent series: sum of a_i X^i for i in
// [lo, hi], coefficients ScaledPAdic.  tail_discarded records that a
// nonzero term outside the band was dropped at some point.
struct DecoSeries {
  RingSpec spec;
  long lo = 0, hi = 0;
  PrecisionBudget budget;
  std::map<long, ScaledPAdic> c;
  bool tail_discarded = false;

  ScaledPAdic get(long i) const;
  void set(long i, const ScaledPAdic& a);  // drops (and flags) out-of-band terms
  void add_to(long i, const ScaledPAdic& a);
};

DecoSeries series_zero(const RingSpec& spec, long lo, long hi, PrecisionBudget budget);
DecoSeries series_monomial(const RingSpec& spec, long lo, long hi, PrecisionBudget budget,
                           long deg, const ScaledPAdic& a);
DecoSeries series_one(const RingSpec& spec, long lo, long hi, PrecisionBudget budget);

DecoSeries series_add(const DecoSeries& a, const DecoSeries& b);
DecoSeries series_neg(const DecoSeries& a);
DecoSeries series_sub(const DecoSeries& a, const DecoSeries& b);
DecoSeries series_scalar_mul(const ScaledPAdic& s, const DecoSeries& a);
DecoSeries series_mul(const DecoSeries& a, const DecoSeries& b);
DecoSeries series_pow(const DecoSeries& a, long k);

// All coefficients vanish modulo p^digits (as far as known).
bool series_is_zero(const DecoSeries& a, int digits);
bool series_value_equal(const DecoSeries& a, const DecoSeries& b, int digits);
// Smallest coefficient valuation (ignoring coefficients that are zero at
// working precision); returns nullopt for the zero series.
std::optional<long> series_min_val(const DecoSeries& a, int digits);

enum class Membership { Yes, No, Unknown };
// Does every coefficient respect the decoration floor lb(spec, i)?
// Unknown when some coefficient is zero at known precision but the
// knowledge bound sits below the floor.
Membership membership(const DecoSeries& f);
// Throws membership_error / precision_error instead of returning No / Unknown.
void check_membership(const DecoSeries& f);

// Reinterpret the coefficients of f under a different decoration (values
// unchanged).  Bands must be representable in the target decoration.
DecoSeries series_cast(const DecoSeries& f, const RingSpec& to);

// Multiplicative inverse of a series whose lowest band coefficient is a
// p-adic unit times a power of p (f = X^m * p^w * unit-series).
DecoSeries series_invert(const DecoSeries& f);

// Filtration polynomial to the r-th power, as exact expansion.
std::vector<ScaledPAdic> filt_poly_power(const RingSpec& spec, int r, int prec);

// Canonical representative of f modulo F^r = (P^r): polynomial long
// division remainder, degree < r*e.  Negative band degrees are folded in
// through the inverse of X modulo P^r.
DecoSeries reduce_mod_fr(const DecoSeries& f, int r);

// f lies in F^r up to p^digits.
bool in_fr(const DecoSeries& f, int r, int digits);

struct SplitResult {
  DecoSeries plus;   // degrees >= r*e
  DecoSeries minus;  // degrees <= r*e - 1
};
// Degree split of an element of F^r (PD and U decorations, nonnegative
// band); asserts the valuation floor of the minus part:
// -v_p((r-1)!) for PD, -floor(r*u) for U.
SplitResult split_plus_minus(const DecoSeries& f, int r);

// Conversion between the plain coefficient representation (a_i X^i) and
// the divided-power monomial representation (b_i X^i / floor(i/e)!).
DecoSeries pd_basis_convert(const DecoSeries& f, bool to_pd_basis);

std::string series_to_json(const DecoSeries& f);
DecoSeries series_from_json(const std::string& text);

// Multivariate layer: Laurent polynomials in the torus variables
// X_1..X_d with DecoSeries coefficients.  Exponent vectors bounded by
// gband in absolute value.
struct TorusSeries {
  int d = 0;
  long gband = 0;
  RingSpec spec;
  long lo = 0, hi = 0;
  PrecisionBudget budget;
  std::map<std::vector<int>, DecoSeries> c;
  bool tail_discarded = false;

  void set(const std::vector<int>& k, const DecoSeries& a);
  DecoSeries get(const std::vector<int>& k) const;
};

TorusSeries torus_zero(int d, long gband, const RingSpec& spec, long lo, long hi,
                       PrecisionBudget budget);
TorusSeries torus_add(const TorusSeries& a, const TorusSeries& b);
TorusSeries torus_sub(const TorusSeries& a, const TorusSeries& b);
TorusSeries torus_mul(const TorusSeries& a, const TorusSeries& b);
bool torus_is_zero(const TorusSeries& a, int digits);
bool torus_value_equal(const TorusSeries& a, const TorusSeries& b, int digits);

}  // namespace syntomo
