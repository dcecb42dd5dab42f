#pragma once

// Finite-length homological algebra over Z/p^N: Smith normal form with
// transform tracking, cochain complexes of free modules, mapping fibers,
// Koszul complexes, elementary divisors of cohomology, and quasi-isomorphism
// defect certificates for maps between complexes.

#include <cstdint>
#include <vector>

#include "syntomo/padic.hpp"

namespace syntomo {

// dense matrix over Z/p^N, entries stored as residues in [0, p^N)
struct ModMatrix {
  long rows = 0;
  long cols = 0;
  long p = 0;
  int N = 0;
  std::vector<uint64_t> a;

  ModMatrix() = default;
  ModMatrix(long r, long c, long p_, int N_)
      : rows(r), cols(c), p(p_), N(N_), a((size_t)(r * c), 0) {}

  uint64_t& at(long i, long j) { return a[(size_t)(i * cols + j)]; }
  uint64_t at(long i, long j) const { return a[(size_t)(i * cols + j)]; }
  uint64_t modulus() const;
};

ModMatrix mat_identity(long n, long p, int N);
ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B);
ModMatrix mat_sub(const ModMatrix& A, const ModMatrix& B);
bool mat_is_zero(const ModMatrix& A);
// p-adic valuation of x as a residue mod p^N (N if x == 0)
int residue_val(uint64_t x, long p, int N);

// U*A*V = D with D diagonal, D(i,i) = p^e[i], e ascending; U, V invertible
// with tracked inverses.  e is clamped to N (e[i] == N means the diagonal
// entry vanishes mod p^N).
struct SmithResult {
  ModMatrix U, Uinv, V, Vinv;
  std::vector<int> e;
};

SmithResult smith(const ModMatrix& A);

// generators of ker(A) acting on column vectors mod p^N, one generator per
// column of `gens`; orders[i] is the exponent k with p^k * gens[:,i] = 0.
struct KernelBasis {
  ModMatrix gens;
  std::vector<int> orders;
};

KernelBasis kernel_basis(const ModMatrix& A);

// solve A*x = b mod p^N for each column b of B; throws precision_error if
// some column is not in the column span
ModMatrix solve_columns(const ModMatrix& A, const ModMatrix& B);

// cochain complex of free Z/p^N-modules concentrated in degrees
// [q0, q0 + dims.size() - 1]; d[k] maps degree q0+k to q0+k+1 and has shape
// dims[k+1] x dims[k]
struct ChainComplex {
  long p = 0;
  int N = 0;
  int q0 = 0;
  std::vector<long> dims;
  std::vector<ModMatrix> d;

  long dim_at(int q) const;
  ModMatrix diff_at(int q) const;  // zero matrix outside the support
};

// throws error if some composite d∘d is nonzero
void validate_complex(const ChainComplex& C);

// degreewise map of complexes f: C -> D (f[k] in matching degrees of C);
// maps outside D's support must be zero and are represented implicitly
struct ChainMap {
  int q0 = 0;  // degree of f[0]
  std::vector<ModMatrix> f;

  ModMatrix map_at(int q, const ChainComplex& src, const ChainComplex& dst) const;
};

void validate_chain_map(const ChainComplex& C, const ChainComplex& D, const ChainMap& f);

// mapping fiber of f: C -> D, with Fib^q = C^q ⊕ D^{q-1} and
// d(x, y) = (d_C x, f(x) - d_D y); H^q(Fib) sits in the long exact sequence
// linking H(C) and H(D)
ChainComplex fiber(const ChainComplex& C, const ChainComplex& D, const ChainMap& f);

// Koszul cochain complex on Z/p^N-module of rank n for pairwise commuting
// operators taus (each n x n); degree q has rank n * C(d, q)
ChainComplex koszul_complex(const std::vector<ModMatrix>& taus, long n, long p, int N);

// brutal truncation to degrees <= qmax (preserves H^q for q < qmax)
ChainComplex truncate_above(const ChainComplex& C, int qmax);

// cohomology at degree q: cyclic decomposition ⊕_i Z/p^divisors[i] with
// lifted generators (columns of gens, in C^q coordinates, generator i of
// additive order p^divisors[i]); divisors descending, zeros omitted
struct CohomologyResult {
  std::vector<int> divisors;
  ModMatrix gens;
};

CohomologyResult cohomology(const ChainComplex& C, int q);

// matrix of the induced map H^q(C) -> H^q(D) in the cyclic-generator
// coordinates of the two CohomologyResult presentations
ModMatrix induced_cohomology_map(const ChainComplex& C, const ChainComplex& D,
                                 const ChainMap& f, int q, const CohomologyResult& HC,
                                 const CohomologyResult& HD);

// smallest c such that p^c kills both the kernel and the cokernel of a map
// ⊕ Z/p^src[i] -> ⊕ Z/p^dst[j] given by M in cyclic coordinates
int map_defect(const ModMatrix& M, const std::vector<int>& src, const std::vector<int>& dst);

struct QuasiIsoCertificate {
  int q = 0;
  std::vector<int> src_divisors;
  std::vector<int> dst_divisors;
  int defect = 0;  // p^defect kills ker and coker of the induced map
};

QuasiIsoCertificate certify_quasi_iso(const ChainComplex& C, const ChainComplex& D,
                                      const ChainMap& f, int q);

}  // namespace syntomo
