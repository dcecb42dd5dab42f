#pragma once

// Assembles the concrete filtered Frobenius complexes from the decorated
// rings and their operators into finite chain complexes over Z/p^n, under a
// certified truncation plan, and produces cohomology tables and
// quasi-isomorphism certificates for the comparison maps between them.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "syntomo/homcx.hpp"
#include "syntomo/ops.hpp"
#include "syntomo/ring.hpp"

namespace syntomo {

struct PipelineConfig {
  RingSpec base;    // profile and ramification data; deco field ignored here
  int d = 0;        // torus rank (only 0 is wired into the named complexes)
  int r = 1;        // filtration twist
  int n = 4;        // coefficients Z/p^n
  long M = 0;       // band radius for the filtered column
  int margin = 6;   // extra degrees above the certified floor
  int slack = 4;    // working-precision slack digits
  unsigned seed = 1;

  void validate() const;  // throws config_error
};

// Band certification: complexes built with filtered-column radius M0 and
// Frobenius-column radius M1 = p*M0 have exactly acyclic degree tails, so
// cohomology of the truncation agrees with the full complex mod p^n in the
// certified degrees.
struct TruncationPlan {
  long floor = 0;  // max(r*e, ceil(r*e/(u*(p-1)))) before margin
  long M0 = 0;     // filtered-column radius
  long M1 = 0;     // Frobenius-column radius (p*M0)
  std::vector<int> certified_degrees;
};

TruncationPlan truncation_plan(const PipelineConfig& cfg);

// scaled monomial basis p^(lb(i)) X^i, i in [lo, hi], of a band-truncated
// decorated ring, with coordinates taken mod p^n
struct ModuleBasis {
  RingSpec spec;
  long lo = 0;
  long hi = 0;
  int n = 0;
  PrecisionBudget budget;

  long dim() const { return hi - lo + 1; }
  DecoSeries elem(long k, long band_lo, long band_hi) const;
  std::vector<uint64_t> coords(const DecoSeries& f) const;
};

using SeriesOp = std::function<DecoSeries(const DecoSeries&)>;

// matrix of a linear operator between two scaled monomial bases; the source
// series are built on the band hull of src and dst so the operator output is
// truncated exactly to the destination band
ModMatrix op_matrix(const ModuleBasis& src, const ModuleBasis& dst, const SeriesOp& op);

// free sub-basis of F^r = P^r-multiples inside a band module, extracted as
// the kernel of the division-remainder map; columns are coordinates in the
// ambient basis and each generator has full additive order p^n
ModMatrix filtration_basis(const ModuleBasis& basis, int r);

enum class ComplexName { Syn, KumPD, KumU, KumUV, KumPsiU, KumPsiUV, CyclUV, HK, DR, Herr };
std::string complex_name(ComplexName name);

ChainComplex build_complex(const PipelineConfig& cfg, ComplexName name);

// Herr-style 3-term (φ, Γ) complex on the punctured-disk integral module:
// D -> D ⊕ D -> D with d0 = (τ0, 1-φ), d1(x,y) = -(1-φ)x + τ0 y and
// τ0 = c^r γ0 - 1; the negative band depth is canonical mod p^n
ChainComplex herr_complex(const PipelineConfig& cfg);

// Koszul complex of the nonzero-eigencomponent of the geometric variable
// (torus rank 1): both operators are monomial-diagonal and the component is
// exactly acyclic
ChainComplex psi_zero_eigencomplex(const PipelineConfig& cfg, long geom_band);

enum class EdgeName { PdToU, PhiToPsi, UToUv, PhiToPsiUv };
std::string edge_name(EdgeName name);

struct EdgeResult {
  std::string name;
  std::vector<QuasiIsoCertificate> certs;  // one per cohomology degree
};

EdgeResult build_edge(const PipelineConfig& cfg, EdgeName edge, int qmax = 2);

struct CohomologyTable {
  std::string name;
  std::vector<int> degrees;
  std::vector<std::vector<int>> divisors;  // per degree, descending
};

CohomologyTable cohomology_table(const ChainComplex& C, int qlo, int qhi,
                                 const std::string& name);

// max absolute difference of padded, descending-sorted divisor exponents
int divisor_distance(const std::vector<int>& a, const std::vector<int>& b);

// certificate (a): brutal truncation at r+1 of the syntomic complex;
// (b) annihilator exponents of H^q(HK) for q <= r-1; (c) the fiber of
// Syn -> HK against the de Rham quotient complex shifted by one
struct DrHkReport {
  std::vector<QuasiIsoCertificate> syn_truncation;  // per degree <= r+1
  std::vector<int> hk_annihilators;                 // per degree 0..r-1
  std::vector<int> dr_fiber_distance;               // per degree of DR
};

DrHkReport dr_hk_report(const PipelineConfig& cfg);

nlohmann::json config_json(const PipelineConfig& cfg);
nlohmann::json table_json(const CohomologyTable& table);
nlohmann::json edge_json(const EdgeResult& edge);

}  // namespace syntomo
