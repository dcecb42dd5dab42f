#include "syntomo/homcx.hpp"

#include <algorithm>
#include <stdexcept>

namespace syntomo {

namespace {

uint64_t mod_of(long p, int N) { return pow_u64((uint64_t)p, (unsigned)N); }

uint64_t mulm(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t subm(uint64_t a, uint64_t b, uint64_t m) { return (a + m - b) % m; }

void check_compatible(const ModMatrix& A, const ModMatrix& B) {
  if (A.p != B.p || A.N != B.N) throw error("matrix modulus mismatch");
}

}  // namespace

uint64_t ModMatrix::modulus() const { return mod_of(p, N); }

int residue_val(uint64_t x, long p, int N) {
  if (x == 0) return N;
  int v = 0;
  while (x % (uint64_t)p == 0 && v < N) {
    x /= (uint64_t)p;
    ++v;
  }
  return v;
}

ModMatrix mat_identity(long n, long p, int N) {
  ModMatrix I(n, n, p, N);
  for (long i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B) {
  check_compatible(A, B);
  if (A.cols != B.rows) throw error("matrix shape mismatch in mat_mul");
  uint64_t m = A.modulus();
  ModMatrix C(A.rows, B.cols, A.p, A.N);
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.cols; ++k) {
      uint64_t aik = A.at(i, k);
      if (aik == 0) continue;
      for (long j = 0; j < B.cols; ++j)
        C.at(i, j) = (C.at(i, j) + mulm(aik, B.at(k, j), m)) % m;
    }
  return C;
}

ModMatrix mat_sub(const ModMatrix& A, const ModMatrix& B) {
  check_compatible(A, B);
  if (A.rows != B.rows || A.cols != B.cols) throw error("matrix shape mismatch in mat_sub");
  uint64_t m = A.modulus();
  ModMatrix C(A.rows, A.cols, A.p, A.N);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = subm(A.a[i], B.a[i], m);
  return C;
}

bool mat_is_zero(const ModMatrix& A) {
  for (uint64_t x : A.a)
    if (x != 0) return false;
  return true;
}

SmithResult smith(const ModMatrix& A) {
  long p = A.p;
  int N = A.N;
  uint64_t m = A.modulus();
  ModMatrix D = A;
  SmithResult R;
  R.U = mat_identity(A.rows, p, N);
  R.Uinv = mat_identity(A.rows, p, N);
  R.V = mat_identity(A.cols, p, N);
  R.Vinv = mat_identity(A.cols, p, N);

  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < D.cols; ++k) std::swap(D.at(i, k), D.at(j, k));
    for (long k = 0; k < R.U.cols; ++k) std::swap(R.U.at(i, k), R.U.at(j, k));
    for (long k = 0; k < R.Uinv.rows; ++k) std::swap(R.Uinv.at(k, i), R.Uinv.at(k, j));
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    for (long k = 0; k < D.rows; ++k) std::swap(D.at(k, i), D.at(k, j));
    for (long k = 0; k < R.V.rows; ++k) std::swap(R.V.at(k, i), R.V.at(k, j));
    for (long k = 0; k < R.Vinv.cols; ++k) std::swap(R.Vinv.at(i, k), R.Vinv.at(j, k));
  };
  // row_i -= q * row_j
  auto row_axpy = [&](long i, long j, uint64_t q) {
    if (q == 0) return;
    for (long k = 0; k < D.cols; ++k) D.at(i, k) = subm(D.at(i, k), mulm(q, D.at(j, k), m), m);
    for (long k = 0; k < R.U.cols; ++k)
      R.U.at(i, k) = subm(R.U.at(i, k), mulm(q, R.U.at(j, k), m), m);
    for (long k = 0; k < R.Uinv.rows; ++k)
      R.Uinv.at(k, j) = (R.Uinv.at(k, j) + mulm(q, R.Uinv.at(k, i), m)) % m;
  };
  // col_i -= q * col_j
  auto col_axpy = [&](long i, long j, uint64_t q) {
    if (q == 0) return;
    for (long k = 0; k < D.rows; ++k) D.at(k, i) = subm(D.at(k, i), mulm(q, D.at(k, j), m), m);
    for (long k = 0; k < R.V.rows; ++k)
      R.V.at(k, i) = subm(R.V.at(k, i), mulm(q, R.V.at(k, j), m), m);
    for (long k = 0; k < R.Vinv.cols; ++k)
      R.Vinv.at(j, k) = (R.Vinv.at(j, k) + mulm(q, R.Vinv.at(i, k), m)) % m;
  };
  // row_i *= u (u a unit)
  auto row_scale = [&](long i, uint64_t u) {
    if (u == 1) return;
    uint64_t ui = invmod_u64(u, m);
    for (long k = 0; k < D.cols; ++k) D.at(i, k) = mulm(u, D.at(i, k), m);
    for (long k = 0; k < R.U.cols; ++k) R.U.at(i, k) = mulm(u, R.U.at(i, k), m);
    for (long k = 0; k < R.Uinv.rows; ++k) R.Uinv.at(k, i) = mulm(ui, R.Uinv.at(k, i), m);
  };

  long r = std::min(A.rows, A.cols);
  R.e.assign((size_t)r, N);
  for (long k = 0; k < r; ++k) {
    // locate an entry of minimal p-adic valuation in the trailing block
    int best = N;
    long bi = -1, bj = -1;
    for (long i = k; i < D.rows; ++i)
      for (long j = k; j < D.cols; ++j) {
        int v = residue_val(D.at(i, j), p, N);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;  // trailing block vanishes mod p^N
    row_swap(k, bi);
    col_swap(k, bj);
    uint64_t pe = pow_u64((uint64_t)p, (unsigned)best);
    row_scale(k, invmod_u64(D.at(k, k) / pe, m));  // pivot becomes exactly p^best
    for (long i = k + 1; i < D.rows; ++i) row_axpy(i, k, D.at(i, k) / pe);
    for (long j = k + 1; j < D.cols; ++j) col_axpy(j, k, D.at(k, j) / pe);
    R.e[(size_t)k] = best;
  }
  return R;
}

KernelBasis kernel_basis(const ModMatrix& A) {
  SmithResult S = smith(A);
  long p = A.p;
  int N = A.N;
  uint64_t m = A.modulus();
  long r = (long)S.e.size();
  std::vector<long> keep;      // diagonal columns with nonzero kernel share
  std::vector<int> ords;
  for (long j = 0; j < r; ++j)
    if (S.e[(size_t)j] > 0) {
      keep.push_back(j);
      ords.push_back(S.e[(size_t)j]);
    }
  for (long j = r; j < A.cols; ++j) {
    keep.push_back(j);
    ords.push_back(N);
  }
  KernelBasis K;
  K.gens = ModMatrix(A.cols, (long)keep.size(), p, N);
  K.orders = ords;
  for (size_t t = 0; t < keep.size(); ++t) {
    long j = keep[t];
    uint64_t scale = j < r ? pow_u64((uint64_t)p, (unsigned)(N - S.e[(size_t)j])) : 1;
    for (long i = 0; i < A.cols; ++i) K.gens.at(i, (long)t) = mulm(scale, S.V.at(i, j), m);
  }
  return K;
}

ModMatrix solve_columns(const ModMatrix& A, const ModMatrix& B) {
  check_compatible(A, B);
  if (A.rows != B.rows) throw error("matrix shape mismatch in solve_columns");
  SmithResult S = smith(A);
  long p = A.p;
  int N = A.N;
  uint64_t m = A.modulus();
  ModMatrix UB = mat_mul(S.U, B);
  ModMatrix X(A.cols, B.cols, p, N);
  long r = (long)S.e.size();
  for (long c = 0; c < B.cols; ++c) {
    std::vector<uint64_t> y((size_t)A.cols, 0);
    for (long i = 0; i < A.rows; ++i) {
      uint64_t b = UB.at(i, c);
      if (i >= r || S.e[(size_t)i] >= N) {
        if (b != 0) throw precision_error("linear system has no solution mod p^N");
        continue;
      }
      uint64_t pe = pow_u64((uint64_t)p, (unsigned)S.e[(size_t)i]);
      if (b % pe != 0) throw precision_error("linear system has no solution mod p^N");
      y[(size_t)i] = b / pe;
    }
    for (long i = 0; i < A.cols; ++i) {
      uint64_t s = 0;
      for (long j = 0; j < A.cols; ++j) s = (s + mulm(S.V.at(i, j), y[(size_t)j], m)) % m;
      X.at(i, c) = s;
    }
  }
  return X;
}

long ChainComplex::dim_at(int q) const {
  long k = q - q0;
  if (k < 0 || k >= (long)dims.size()) return 0;
  return dims[(size_t)k];
}

ModMatrix ChainComplex::diff_at(int q) const {
  long k = q - q0;
  if (k >= 0 && k + 1 < (long)dims.size()) return d[(size_t)k];
  return ModMatrix(dim_at(q + 1), dim_at(q), p, N);
}

void validate_complex(const ChainComplex& C) {
  for (size_t k = 0; k + 1 < C.d.size(); ++k)
    if (!mat_is_zero(mat_mul(C.d[k + 1], C.d[k]))) throw error("d∘d is nonzero");
}

ModMatrix ChainMap::map_at(int q, const ChainComplex& src, const ChainComplex& dst) const {
  long k = q - q0;
  if (k >= 0 && k < (long)f.size()) return f[(size_t)k];
  return ModMatrix(dst.dim_at(q), src.dim_at(q), src.p, src.N);
}

void validate_chain_map(const ChainComplex& C, const ChainComplex& D, const ChainMap& f) {
  int lo = std::min(C.q0, D.q0);
  int hi = std::max(C.q0 + (int)C.dims.size(), D.q0 + (int)D.dims.size());
  for (int q = lo; q < hi; ++q) {
    ModMatrix lhs = mat_mul(D.diff_at(q), f.map_at(q, C, D));
    ModMatrix rhs = mat_mul(f.map_at(q + 1, C, D), C.diff_at(q));
    if (!mat_is_zero(mat_sub(lhs, rhs))) throw error("chain map does not commute with d");
  }
}

ChainComplex fiber(const ChainComplex& C, const ChainComplex& D, const ChainMap& f) {
  validate_chain_map(C, D, f);
  uint64_t m = mod_of(C.p, C.N);
  ChainComplex F;
  F.p = C.p;
  F.N = C.N;
  F.q0 = std::min(C.q0, D.q0);
  int qtop = std::max(C.q0 + (int)C.dims.size(), D.q0 + (int)D.dims.size() + 1);
  for (int q = F.q0; q < qtop; ++q) F.dims.push_back(C.dim_at(q) + D.dim_at(q - 1));
  for (int q = F.q0; q + 1 < qtop; ++q) {
    long nC = C.dim_at(q), nD = D.dim_at(q - 1);
    long mC = C.dim_at(q + 1), mD = D.dim_at(q);
    ModMatrix dC = C.diff_at(q), dD = D.diff_at(q - 1), fq = f.map_at(q, C, D);
    ModMatrix dF(mC + mD, nC + nD, C.p, C.N);
    for (long i = 0; i < mC; ++i)
      for (long j = 0; j < nC; ++j) dF.at(i, j) = dC.at(i, j);
    for (long i = 0; i < mD; ++i) {
      for (long j = 0; j < nC; ++j) dF.at(mC + i, j) = fq.at(i, j);
      for (long j = 0; j < nD; ++j) dF.at(mC + i, nC + j) = subm(0, dD.at(i, j), m);
    }
    F.d.push_back(dF);
  }
  return F;
}

ChainComplex koszul_complex(const std::vector<ModMatrix>& taus, long n, long p, int N) {
  long d = (long)taus.size();
  for (const ModMatrix& t : taus)
    if (t.rows != n || t.cols != n) throw error("koszul operator has wrong shape");
  for (size_t i = 0; i < taus.size(); ++i)
    for (size_t j = i + 1; j < taus.size(); ++j)
      if (!mat_is_zero(mat_sub(mat_mul(taus[i], taus[j]), mat_mul(taus[j], taus[i]))))
        throw error("koszul operators do not commute");

  // enumerate q-subsets of {0..d-1} in lexicographic order per degree
  std::vector<std::vector<std::vector<int>>> subsets((size_t)d + 1);
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    subsets[cur.size()].push_back(cur);
    for (int j = start; j < (int)d; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);

  uint64_t m = mod_of(p, N);
  ChainComplex K;
  K.p = p;
  K.N = N;
  K.q0 = 0;
  for (long q = 0; q <= d; ++q) K.dims.push_back(n * (long)subsets[(size_t)q].size());
  for (long q = 0; q < d; ++q) {
    const auto& src = subsets[(size_t)q];
    const auto& dst = subsets[(size_t)q + 1];
    ModMatrix dq(K.dims[(size_t)q + 1], K.dims[(size_t)q], p, N);
    for (size_t s = 0; s < src.size(); ++s) {
      for (int j = 0; j < (int)d; ++j) {
        if (std::find(src[s].begin(), src[s].end(), j) != src[s].end()) continue;
        std::vector<int> t = src[s];
        t.insert(std::upper_bound(t.begin(), t.end(), j), j);
        size_t ti = (size_t)(std::find(dst.begin(), dst.end(), t) - dst.begin());
        long before = (long)(std::lower_bound(src[s].begin(), src[s].end(), j) - src[s].begin());
        bool neg = before % 2 != 0;
        for (long r = 0; r < n; ++r)
          for (long c = 0; c < n; ++c) {
            uint64_t v = taus[(size_t)j].at(r, c);
            if (neg) v = subm(0, v, m);
            long R = (long)ti * n + r, Cc = (long)s * n + c;
            dq.at(R, Cc) = (dq.at(R, Cc) + v) % m;
          }
      }
    }
    K.d.push_back(dq);
  }
  return K;
}

ChainComplex truncate_above(const ChainComplex& C, int qmax) {
  ChainComplex T;
  T.p = C.p;
  T.N = C.N;
  T.q0 = C.q0;
  for (int q = C.q0; q <= qmax && q < C.q0 + (int)C.dims.size(); ++q) {
    T.dims.push_back(C.dim_at(q));
    if (q < qmax) T.d.push_back(C.diff_at(q));
  }
  if (!T.dims.empty() && T.d.size() == T.dims.size()) T.d.pop_back();
  return T;
}

CohomologyResult cohomology(const ChainComplex& C, int q) {
  long p = C.p;
  int N = C.N;
  uint64_t m = mod_of(p, N);
  long nq = C.dim_at(q);
  CohomologyResult H;
  H.gens = ModMatrix(nq, 0, p, N);
  if (nq == 0) return H;

  KernelBasis K = kernel_basis(C.diff_at(q));
  long z = K.gens.cols;
  if (z == 0) return H;
  ModMatrix B = C.diff_at(q - 1);
  // image of the incoming differential in kernel coordinates
  ModMatrix X = solve_columns(K.gens, B);
  // relations: image columns plus the additive orders of the kernel gens
  ModMatrix R(z, X.cols + z, p, N);
  for (long i = 0; i < z; ++i) {
    for (long j = 0; j < X.cols; ++j) R.at(i, j) = X.at(i, j);
    R.at(i, X.cols + i) = pow_u64((uint64_t)p, (unsigned)K.orders[(size_t)i]) % m;
  }
  SmithResult S = smith(R);
  // quotient generators are the columns of Uinv, pulled back through K
  ModMatrix G = mat_mul(K.gens, S.Uinv);
  std::vector<std::pair<int, long>> nz;  // (exponent, column of G)
  for (long i = 0; i < z; ++i) {
    int e = i < (long)S.e.size() ? S.e[(size_t)i] : N;
    if (e > 0) nz.push_back({e, i});
  }
  std::sort(nz.rbegin(), nz.rend());
  H.gens = ModMatrix(nq, (long)nz.size(), p, N);
  for (size_t t = 0; t < nz.size(); ++t) {
    H.divisors.push_back(nz[t].first);
    for (long i = 0; i < nq; ++i) H.gens.at(i, (long)t) = G.at(i, nz[t].second);
  }
  return H;
}

ModMatrix induced_cohomology_map(const ChainComplex& C, const ChainComplex& D,
                                 const ChainMap& f, int q, const CohomologyResult& HC,
                                 const CohomologyResult& HD) {
  long p = C.p;
  int N = C.N;
  long zC = HC.gens.cols, zD = HD.gens.cols;
  ModMatrix M(zD, zC, p, N);
  if (zC == 0 || zD == 0) {
    if (zC == 0) return M;
  }
  // map the generator lifts and express them in D's cohomology coordinates:
  // solve [HD.gens | d_{q-1} | orders] * (x, y, z) = f(gen)
  // solve [HD.gens | d_{q-1}] * (x, y) = f(gen): the retained generators
  // together with the coboundaries span every cocycle mod p^N
  ModMatrix FG = mat_mul(f.map_at(q, C, D), HC.gens);
  ModMatrix B = D.diff_at(q - 1);
  long nD = D.dim_at(q);
  ModMatrix A(nD, zD + B.cols, p, N);
  for (long i = 0; i < nD; ++i) {
    for (long j = 0; j < zD; ++j) A.at(i, j) = HD.gens.at(i, j);
    for (long j = 0; j < B.cols; ++j) A.at(i, zD + j) = B.at(i, j);
  }
  ModMatrix X = solve_columns(A, FG);
  for (long i = 0; i < zD; ++i)
    for (long j = 0; j < zC; ++j) M.at(i, j) = X.at(i, j);
  return M;
}

int map_defect(const ModMatrix& M, const std::vector<int>& src, const std::vector<int>& dst) {
  long p = M.p;
  int N = M.N;
  uint64_t m = M.modulus();
  if ((long)src.size() != M.cols || (long)dst.size() != M.rows)
    throw error("divisor count mismatch in map_defect");

  // cokernel: smith of [M | diag(p^dst)]
  ModMatrix R(M.rows, M.cols + M.rows, p, N);
  for (long i = 0; i < M.rows; ++i) {
    for (long j = 0; j < M.cols; ++j) R.at(i, j) = M.at(i, j);
    R.at(i, M.cols + i) = pow_u64((uint64_t)p, (unsigned)dst[(size_t)i]) % m;
  }
  SmithResult S = smith(R);
  int coker = 0;
  for (long i = 0; i < M.rows; ++i) {
    int e = i < (long)S.e.size() ? S.e[(size_t)i] : N;
    coker = std::max(coker, e);
  }

  // kernel: x in ⊕Z/p^src with Mx ≡ 0 mod p^dst[i] per row; scale row i by
  // p^(N - dst[i]) and take kernel generators mod p^N, then measure each
  // generator's order modulo the diagonal source relations
  ModMatrix Ms(M.rows, M.cols, p, N);
  for (long i = 0; i < M.rows; ++i) {
    uint64_t s = pow_u64((uint64_t)p, (unsigned)(N - std::min(N, dst[(size_t)i])));
    for (long j = 0; j < M.cols; ++j) Ms.at(i, j) = mulm(s, M.at(i, j), m);
  }
  KernelBasis K = kernel_basis(Ms);
  int ker = 0;
  for (long c = 0; c < K.gens.cols; ++c) {
    int ord = 0;
    for (long i = 0; i < M.cols; ++i) {
      int v = residue_val(K.gens.at(i, c), p, N);
      ord = std::max(ord, src[(size_t)i] - std::min(src[(size_t)i], v));
    }
    ker = std::max(ker, ord);
  }
  return std::max(coker, ker);
}

QuasiIsoCertificate certify_quasi_iso(const ChainComplex& C, const ChainComplex& D,
                                      const ChainMap& f, int q) {
  CohomologyResult HC = cohomology(C, q);
  CohomologyResult HD = cohomology(D, q);
  ModMatrix M = induced_cohomology_map(C, D, f, q, HC, HD);
  QuasiIsoCertificate cert;
  cert.q = q;
  cert.src_divisors = HC.divisors;
  cert.dst_divisors = HD.divisors;
  cert.defect = map_defect(M, HC.divisors, HD.divisors);
  return cert;
}

}  // namespace syntomo
