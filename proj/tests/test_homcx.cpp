#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "syntomo/homcx.hpp"

using namespace syntomo;

namespace {

ModMatrix rnd_matrix(std::mt19937_64& rng, long r, long c, long p, int N) {
  ModMatrix A(r, c, p, N);
  uint64_t m = A.modulus();
  for (auto& x : A.a) x = rng() % m;
  return A;
}

// all vectors of (Z/p^N)^n
std::vector<std::vector<uint64_t>> all_vectors(long n, uint64_t m) {
  std::vector<std::vector<uint64_t>> out;
  std::vector<uint64_t> v((size_t)n, 0);
  while (true) {
    out.push_back(v);
    long i = 0;
    while (i < n && ++v[(size_t)i] == m) v[(size_t)i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::vector<uint64_t> mat_apply(const ModMatrix& A, const std::vector<uint64_t>& x) {
  uint64_t m = A.modulus();
  std::vector<uint64_t> y((size_t)A.rows, 0);
  for (long i = 0; i < A.rows; ++i)
    for (long j = 0; j < A.cols; ++j)
      y[(size_t)i] = (y[(size_t)i] + A.at(i, j) * x[(size_t)j]) % m;
  return y;
}

bool is_zero_vec(const std::vector<uint64_t>& v) {
  for (uint64_t x : v)
    if (x != 0) return false;
  return true;
}

// elementary divisor exponents of ker(d_out)/im(d_in) by exhaustive counting:
// the number of classes killed by p^k determines the multiset
std::vector<int> brute_divisors(const ModMatrix& d_in, const ModMatrix& d_out, long p, int N) {
  uint64_t m = pow_u64((uint64_t)p, (unsigned)N);
  std::set<std::vector<uint64_t>> image;
  for (auto& x : all_vectors(d_in.cols, m)) image.insert(mat_apply(d_in, x));
  std::vector<std::vector<uint64_t>> kernel;
  for (auto& x : all_vectors(d_out.cols, m))
    if (is_zero_vec(mat_apply(d_out, x))) kernel.push_back(x);

  // killed[k] = #{classes h with p^k h = 0} = #{x in ker : p^k x in im} / |im|
  std::vector<size_t> killed((size_t)N + 1, 0);
  for (int k = 0; k <= N; ++k) {
    uint64_t pk = pow_u64((uint64_t)p, (unsigned)k);
    for (auto& x : kernel) {
      std::vector<uint64_t> y = x;
      for (auto& c : y) c = c * pk % m;
      if (image.count(y)) ++killed[(size_t)k];
    }
    killed[(size_t)k] /= image.size();
  }
  // with n_k = #divisors >= k: killed[k] = p^(sum_j min(k, d_j)) and
  // #divisors >= k = log_p(killed[k]/killed[k-1])
  std::vector<int> divisors;
  auto logp = [&](size_t x) {
    int e = 0;
    while (x > 1) {
      x /= (size_t)p;
      ++e;
    }
    return e;
  };
  std::vector<int> count_ge((size_t)N + 1, 0);
  for (int k = 1; k <= N; ++k)
    count_ge[(size_t)k] = logp(killed[(size_t)k]) - logp(killed[(size_t)k - 1]);
  for (int k = 1; k <= N; ++k)
    for (int t = 0; t < count_ge[(size_t)k] - (k < N ? count_ge[(size_t)k + 1] : 0); ++t)
      divisors.push_back(k);
  std::sort(divisors.rbegin(), divisors.rend());
  return divisors;
}

}  // namespace

TEST_CASE("smith normal form invariants") {
  std::mt19937_64 rng(2001);
  for (int t = 0; t < 60; ++t) {
    long r = 1 + (long)(rng() % 5), c = 1 + (long)(rng() % 5);
    long p = t % 2 == 0 ? 3 : 5;
    int N = 4;
    ModMatrix A = rnd_matrix(rng, r, c, p, N);
    SmithResult S = smith(A);
    // U A V is the stated diagonal
    ModMatrix D = mat_mul(mat_mul(S.U, A), S.V);
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < c; ++j) {
        uint64_t want = 0;
        if (i == j && S.e[(size_t)i] < N) want = pow_u64((uint64_t)p, (unsigned)S.e[(size_t)i]);
        CHECK(D.at(i, j) == want);
      }
    CHECK(mat_is_zero(mat_sub(mat_mul(S.U, S.Uinv), mat_identity(r, p, N))));
    CHECK(mat_is_zero(mat_sub(mat_mul(S.Uinv, S.U), mat_identity(r, p, N))));
    CHECK(mat_is_zero(mat_sub(mat_mul(S.V, S.Vinv), mat_identity(c, p, N))));
    CHECK(mat_is_zero(mat_sub(mat_mul(S.Vinv, S.V), mat_identity(c, p, N))));
    for (size_t i = 1; i < S.e.size(); ++i) CHECK(S.e[i - 1] <= S.e[i]);
  }
}

TEST_CASE("kernel basis matches exhaustive kernel") {
  std::mt19937_64 rng(2002);
  for (int t = 0; t < 30; ++t) {
    long r = 1 + (long)(rng() % 3), c = 1 + (long)(rng() % 3);
    ModMatrix A = rnd_matrix(rng, r, c, 3, 2);
    KernelBasis K = kernel_basis(A);
    // every generator is in the kernel with the stated order
    for (long j = 0; j < K.gens.cols; ++j) {
      std::vector<uint64_t> g((size_t)c);
      for (long i = 0; i < c; ++i) g[(size_t)i] = K.gens.at(i, j);
      CHECK(is_zero_vec(mat_apply(A, g)));
      uint64_t ann = pow_u64(3, (unsigned)K.orders[(size_t)j]);
      for (auto& x : g) x = x * ann % 9;
      CHECK(is_zero_vec(g));
    }
    // the span has the right cardinality
    size_t brute = 0;
    for (auto& x : all_vectors(c, 9))
      if (is_zero_vec(mat_apply(A, x))) ++brute;
    size_t span = 1;
    for (int o : K.orders) span *= (size_t)pow_u64(3, (unsigned)o);
    CHECK(span == brute);
  }
}

TEST_CASE("solve_columns round trip and failure") {
  std::mt19937_64 rng(2003);
  for (int t = 0; t < 40; ++t) {
    long r = 1 + (long)(rng() % 4), c = 1 + (long)(rng() % 4), k = 1 + (long)(rng() % 3);
    ModMatrix A = rnd_matrix(rng, r, c, 3, 5);
    ModMatrix X = rnd_matrix(rng, c, k, 3, 5);
    ModMatrix B = mat_mul(A, X);
    ModMatrix Y = solve_columns(A, B);
    CHECK(mat_is_zero(mat_sub(mat_mul(A, Y), B)));
  }
  // 3x = 1 has no solution mod 3^2
  ModMatrix A(1, 1, 3, 2), B(1, 1, 3, 2);
  A.at(0, 0) = 3;
  B.at(0, 0) = 1;
  CHECK_THROWS_AS(solve_columns(A, B), precision_error);
}

TEST_CASE("cohomology divisors match exhaustive enumeration") {
  std::mt19937_64 rng(2004);
  long p = 3;
  int N = 2;
  for (int t = 0; t < 60; ++t) {
    long n0 = (long)(rng() % 3) + 1, n1 = (long)(rng() % 3) + 1, n2 = (long)(rng() % 3) + 1;
    // random d1, then d0 through the kernel of d1 so that d1 d0 = 0
    ModMatrix d1 = rnd_matrix(rng, n2, n1, p, N);
    KernelBasis K = kernel_basis(d1);
    ModMatrix d0 = mat_mul(K.gens, rnd_matrix(rng, K.gens.cols, n0, p, N));
    ChainComplex C{p, N, 0, {n0, n1, n2}, {d0, d1}};
    validate_complex(C);
    for (int q = 0; q <= 2; ++q) {
      CohomologyResult H = cohomology(C, q);
      std::vector<int> want = brute_divisors(C.diff_at(q - 1), C.diff_at(q), p, N);
      CHECK(H.divisors == want);
      // generators are cocycles of the claimed order
      for (long j = 0; j < H.gens.cols; ++j) {
        std::vector<uint64_t> g((size_t)C.dim_at(q));
        for (long i = 0; i < (long)g.size(); ++i) g[(size_t)i] = H.gens.at(i, j);
        CHECK(is_zero_vec(mat_apply(C.diff_at(q), g)));
      }
    }
  }
}

TEST_CASE("fiber of the identity is acyclic") {
  std::mt19937_64 rng(2005);
  long p = 3;
  int N = 3;
  for (int t = 0; t < 20; ++t) {
    long n1 = (long)(rng() % 3) + 1, n2 = (long)(rng() % 3) + 1;
    ModMatrix d1 = rnd_matrix(rng, n2, n1, p, N);
    ChainComplex C{p, N, 0, {n1, n2}, {d1}};
    ChainMap id{0, {mat_identity(n1, p, N), mat_identity(n2, p, N)}};
    ChainComplex F = fiber(C, C, id);
    validate_complex(F);
    for (int q = -1; q <= 2; ++q) CHECK(cohomology(F, q).divisors.empty());
  }
}

TEST_CASE("fiber of the zero map splits") {
  long p = 3;
  int N = 2;
  // C: 0 -> Z/9 --3--> Z/9 -> 0,  D likewise; fiber over zero map gives
  // H^q(F) = H^q(C) ⊕ H^{q-1}(D)
  ModMatrix d(1, 1, p, N);
  d.at(0, 0) = 3;
  ChainComplex C{p, N, 0, {1, 1}, {d}};
  ChainMap zero{0, {ModMatrix(1, 1, p, N), ModMatrix(1, 1, p, N)}};
  ChainComplex F = fiber(C, C, zero);
  validate_complex(F);
  CHECK(cohomology(F, 0).divisors == std::vector<int>{1});
  CHECK(cohomology(F, 1).divisors == std::vector<int>{1, 1});
  CHECK(cohomology(F, 2).divisors == std::vector<int>{1});
}

TEST_CASE("koszul complex in one and two variables") {
  long p = 3;
  int N = 3;
  // one variable: H^0 = ker tau, H^1 = coker tau
  ModMatrix tau(2, 2, p, N);
  tau.at(0, 0) = 3;
  tau.at(1, 1) = 9;
  ChainComplex K1 = koszul_complex({tau}, 2, p, N);
  validate_complex(K1);
  CHECK(cohomology(K1, 0).divisors == std::vector<int>{2, 1});
  CHECK(cohomology(K1, 1).divisors == std::vector<int>{2, 1});

  // two commuting diagonal operators on rank 1: Koszul of (3, 3) mod 27
  ModMatrix a(1, 1, p, N), b(1, 1, p, N);
  a.at(0, 0) = 3;
  b.at(0, 0) = 3;
  ChainComplex K2 = koszul_complex({a, b}, 1, p, N);
  validate_complex(K2);
  CHECK(cohomology(K2, 0).divisors == std::vector<int>{1});
  // middle degree: ker(3, -3)/im(3, 3)^T has every class killed by 3 and
  // order 9, so two cyclic factors
  CHECK(cohomology(K2, 1).divisors == std::vector<int>{1, 1});
  CHECK(cohomology(K2, 2).divisors == std::vector<int>{1});

  // non-commuting pair is rejected
  ModMatrix x(2, 2, p, N), y(2, 2, p, N);
  x.at(0, 1) = 1;
  y.at(1, 0) = 1;
  CHECK_THROWS_AS(koszul_complex({x, y}, 2, p, N), error);
}

TEST_CASE("brutal truncation preserves low cohomology") {
  std::mt19937_64 rng(2006);
  long p = 3;
  int N = 2;
  for (int t = 0; t < 20; ++t) {
    long n0 = (long)(rng() % 3) + 1, n1 = (long)(rng() % 3) + 1, n2 = (long)(rng() % 3) + 1;
    ModMatrix d1 = rnd_matrix(rng, n2, n1, p, N);
    KernelBasis K = kernel_basis(d1);
    ModMatrix d0 = mat_mul(K.gens, rnd_matrix(rng, K.gens.cols, n0, p, N));
    ChainComplex C{p, N, 0, {n0, n1, n2}, {d0, d1}};
    ChainComplex T = truncate_above(C, 1);
    CHECK(cohomology(T, 0).divisors == cohomology(C, 0).divisors);
  }
}

TEST_CASE("quasi-isomorphism certificates") {
  long p = 3;
  int N = 4;
  ModMatrix d(1, 1, p, N);
  d.at(0, 0) = 9;
  ChainComplex C{p, N, 0, {1, 1}, {d}};
  // identity: defect 0 in every degree
  ChainMap id{0, {mat_identity(1, p, N), mat_identity(1, p, N)}};
  for (int q = 0; q <= 1; ++q) {
    QuasiIsoCertificate cert = certify_quasi_iso(C, C, id, q);
    CHECK(cert.defect == 0);
    CHECK(cert.src_divisors == cert.dst_divisors);
  }
  // multiplication by p: kernel and cokernel both killed by p
  ModMatrix mp(1, 1, p, N);
  mp.at(0, 0) = 3;
  ChainMap mulp{0, {mp, mp}};
  validate_chain_map(C, C, mulp);
  for (int q = 0; q <= 1; ++q) {
    QuasiIsoCertificate cert = certify_quasi_iso(C, C, mulp, q);
    CHECK(cert.defect == 1);
  }
}

TEST_CASE("map defect on cyclic presentations") {
  long p = 3;
  int N = 6;
  // identity Z/p^3 -> Z/p^3
  ModMatrix I = mat_identity(1, p, N);
  CHECK(map_defect(I, {3}, {3}) == 0);
  // p: Z/p^3 -> Z/p^3 has kernel and cokernel Z/p
  ModMatrix P(1, 1, p, N);
  P.at(0, 0) = 3;
  CHECK(map_defect(P, {3}, {3}) == 1);
  // projection Z/p^3 -> Z/p: cokernel 0, kernel p^2 Z... killed by p^2
  CHECK(map_defect(I, {3}, {1}) == 2);
  // inclusion-style map Z/p -> Z/p^3 sending 1 to p^2: injective, coker Z/p^2
  ModMatrix J(1, 1, p, N);
  J.at(0, 0) = 9;
  CHECK(map_defect(J, {1}, {3}) == 2);
}
