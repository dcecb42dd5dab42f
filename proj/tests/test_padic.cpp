#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "syntomo/padic.hpp"

using namespace syntomo;

TEST_CASE("inverse of 2 mod 3^4") {
  // 2 * 41 = 82 = 81 + 1
  ScaledPAdic two = padic_from_int(3, 2, 4);
  ScaledPAdic inv = padic_inv(two);
  CHECK(inv.val == 0);
  CHECK(inv.mantissa == 41);
  ScaledPAdic prod = padic_mul(two, inv);
  CHECK(padic_value_equal(prod, padic_from_int(3, 1, 4), 4));
}

TEST_CASE("from_int normalization and negatives") {
  ScaledPAdic a = padic_from_int(3, 18, 6);  // 2 * 3^2
  CHECK(a.val == 2);
  CHECK(a.mantissa == 2);
  ScaledPAdic b = padic_from_int(3, -1, 4);
  CHECK(b.val == 0);
  CHECK(b.mantissa == 80);  // 3^4 - 1
  ScaledPAdic s = padic_add(a, padic_neg(a));
  CHECK(s.is_zero());
  CHECK(s.val >= 6);
}

TEST_CASE("cancellation tracks knowledge bound") {
  ScaledPAdic a = padic_from_int(3, 1, 4);
  ScaledPAdic b = padic_from_int(3, 1 + 81, 4);  // indistinguishable mod 3^4
  ScaledPAdic d = padic_sub(a, b);
  CHECK(d.is_zero());
  CHECK(d.val == 4);
  CHECK_FALSE(d.is_exact_zero());
}

TEST_CASE("ring axioms on random values") {
  std::mt19937_64 rng(12345);
  auto rnd = [&](uint32_t p) {
    long long v = (long long)(rng() % 200000) - 100000;
    if (v == 0) v = 7;
    return padic_from_int(p, v, 10);
  };
  for (uint32_t p : {3u, 5u, 7u}) {
    for (int t = 0; t < 1000; ++t) {
      ScaledPAdic a = rnd(p), b = rnd(p), c = rnd(p);
      CHECK(padic_value_equal(padic_add(a, b), padic_add(b, a), 10));
      CHECK(padic_value_equal(padic_mul(a, b), padic_mul(b, a), 10));
      CHECK(padic_value_equal(padic_mul(a, padic_add(b, c)),
                              padic_add(padic_mul(a, b), padic_mul(a, c)), 8));
      CHECK(padic_value_equal(padic_mul(padic_mul(a, b), c),
                              padic_mul(a, padic_mul(b, c)), 8));
    }
  }
}

TEST_CASE("inverses round trip") {
  std::mt19937_64 rng(999);
  for (int t = 0; t < 500; ++t) {
    long long v = (long long)(rng() % 1000000) + 1;
    ScaledPAdic a = padic_from_int(5, v, 12);
    ScaledPAdic one = padic_mul(a, padic_inv(a));
    CHECK(padic_value_equal(one, padic_from_int(5, 1, 12), 12));
  }
}

TEST_CASE("ratio encoding") {
  // 1/2 in Z_3: 2 * (3^4+1)/2 = 3^4 + 1 == 1
  ScaledPAdic h = padic_from_ratio(3, 1, 2, 4);
  CHECK(padic_value_equal(padic_mul(h, padic_from_int(3, 2, 4)), padic_from_int(3, 1, 4), 4));
  // 9/6 = 3/2: val 1
  ScaledPAdic q = padic_from_ratio(3, 9, 6, 4);
  CHECK(q.val == 1);
}

TEST_CASE("binomial of integer c matches exact binomial") {
  // binom(1+p, 2) = (1+p)p/2; for p=3: binom(4,2)=6=2*3
  ScaledPAdic c = padic_from_int(3, 4, 8);
  ScaledPAdic b = padic_binomial(c, 2, 8);
  CHECK(padic_value_equal(b, padic_from_int(3, 6, 8), 6));
  // random small integer cases vs exact computation
  std::mt19937_64 rng(777);
  for (int t = 0; t < 200; ++t) {
    long n = (long)(rng() % 40);
    long k = (long)(rng() % 12);
    long long exact = 1;
    for (long j = 0; j < k; ++j) exact = exact * (n - j) / (j + 1);
    ScaledPAdic cb = padic_binomial(padic_from_int(3, n, 14), k, 10);
    CHECK(padic_value_equal(cb, padic_from_int(3, exact, 14), 8));
  }
}

TEST_CASE("binomial Vandermonde identity for p-adic c") {
  // binom(c, k) with c = a + b (integers standing in for p-adic values):
  // sum_j binom(a,j) binom(b,k-j) = binom(a+b,k)
  uint32_t p = 5;
  ScaledPAdic a = padic_from_int(p, 1234567, 12);
  ScaledPAdic b = padic_from_int(p, 7654321, 12);
  ScaledPAdic c = padic_add(a, b);
  for (long k : {1L, 3L, 7L, 12L}) {
    ScaledPAdic lhs = padic_binomial(c, k, 10);
    ScaledPAdic s = padic_zero(p);
    for (long j = 0; j <= k; ++j)
      s = padic_add(s, padic_mul(padic_binomial(a, j, 10), padic_binomial(b, k - j, 10)));
    CHECK(padic_value_equal(lhs, s, 7));
  }
}

TEST_CASE("binomial Pascal recurrence for genuinely p-adic c") {
  // c = 1/2 in Z_3; binom(c,k) + binom(c,k+1) = binom(c+1,k+1)
  ScaledPAdic c = padic_from_ratio(3, 1, 2, 16);
  ScaledPAdic c1 = padic_add(c, padic_from_int(3, 1, 16));
  for (long k = 0; k < 10; ++k) {
    ScaledPAdic lhs = padic_add(padic_binomial(c, k, 12), padic_binomial(c, k + 1, 12));
    ScaledPAdic rhs = padic_binomial(c1, k + 1, 12);
    CHECK(padic_value_equal(lhs, rhs, 8));
  }
  // binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8
  CHECK(padic_value_equal(padic_binomial(c, 2, 12), padic_from_ratio(3, -1, 8, 12), 8));
}

TEST_CASE("exp is a homomorphism and has the right leading terms") {
  uint32_t p = 3;
  ScaledPAdic x = padic_from_int(p, 3, 14);
  ScaledPAdic y = padic_from_int(p, 6, 14);
  ScaledPAdic exy = padic_exp(padic_add(x, y), 10);
  ScaledPAdic prod = padic_mul(padic_exp(x, 12), padic_exp(y, 12));
  CHECK(padic_value_equal(exy, prod, 9));
  // exp(3) = 1 + 3 + 9/2 + 27/6 + ... check low digits against partial sum
  ScaledPAdic ref = padic_from_int(p, 1, 14);
  ScaledPAdic term = padic_from_int(p, 1, 14);
  for (long n = 1; n <= 30; ++n) {
    term = padic_div(padic_mul(term, x), padic_from_int(p, n, 14));
    ref = padic_add(ref, term);
  }
  CHECK(padic_value_equal(padic_exp(x, 10), ref, 9));
}

TEST_CASE("log(1+X)/X inversion: coefficients of X/log(1+X)") {
  // product of the two series must be 1
  uint32_t p = 3;
  int prec = 16;
  for (long n = 1; n <= 30; ++n) {
    ScaledPAdic s = padic_zero(p);
    for (long j = 0; j <= n; ++j)
      s = padic_add(s, padic_mul(log_over_x_coeff(p, j, prec), x_over_log_coeff(p, n - j, prec)));
    CHECK(s.is_zero());
  }
  // b_1 = 1/2
  CHECK(padic_value_equal(x_over_log_coeff(p, 1, prec), padic_from_ratio(p, 1, 2, prec), 10));
  // valuation bound v_p(b_k) >= -k/(p-1)
  for (long k = 1; k <= 50; ++k) {
    ScaledPAdic b = x_over_log_coeff(p, k, prec);
    if (!b.is_zero()) CHECK((long)b.val * (long)(p - 1) >= -k);
  }
}

TEST_CASE("residue extraction honors floors and precision") {
  ScaledPAdic a = padic_from_int(3, 45, 8);  // 3^2 * 5
  CHECK(padic_residue(a, 2, 4) == 5);
  CHECK(padic_residue(a, 0, 4) == 45);
  CHECK_THROWS_AS(padic_residue(a, 3, 4), membership_error);
  ScaledPAdic z = padic_zero_bounded(3, 3);
  CHECK_THROWS_AS(padic_residue(z, 0, 4), precision_error);
  CHECK(padic_residue(z, 0, 3) == 0);
}

TEST_CASE("p=2 and even p rejected") {
  CHECK_THROWS_AS(padic_from_int(2, 1, 4), config_error);
  CHECK_THROWS_AS(padic_from_int(4, 1, 4), config_error);
}
