#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syntomo/pipeline.hpp"

using namespace syntomo;

namespace {

PipelineConfig config_a(int r, int n, long M) {
  PipelineConfig cfg;
  cfg.base = make_profile_a(3, 1, Deco::Plus);
  cfg.r = r;
  cfg.n = n;
  cfg.M = M;
  return cfg;
}

PipelineConfig config_b(int r, int n, long M) {
  PipelineConfig cfg;
  cfg.base = make_profile_b(3, 3, Deco::Plus);
  cfg.r = r;
  cfg.n = n;
  cfg.M = M;
  return cfg;
}

}  // namespace

TEST_CASE("truncation plan floors and validation") {
  PipelineConfig cfg = config_a(1, 4, 12);
  TruncationPlan plan = truncation_plan(cfg);
  CHECK(plan.floor == 1);
  CHECK(plan.M0 == 12);
  CHECK(plan.M1 == 36);
  CHECK(plan.certified_degrees == std::vector<int>{0, 1});

  PipelineConfig small = config_a(1, 4, 3);
  CHECK_THROWS_AS(small.validate(), config_error);

  PipelineConfig b = config_b(2, 4, 50);
  // r*e = 36, and 36 / (u*(p-1)) = 36*3/(2*2) = 27
  CHECK(truncation_plan(b).floor == 36);

  // even residue characteristic is rejected at ring construction already
  CHECK_THROWS(make_profile_a(2, 1, Deco::Plus));
}

TEST_CASE("filtration basis has the expected rank and lies in F^r") {
  PipelineConfig cfg = config_a(1, 4, 10);
  PrecisionBudget b{cfg.n + cfg.slack, cfg.slack};
  RingSpec spec = make_profile_a(3, 1, Deco::PD);
  ModuleBasis basis{spec, 0, 10, cfg.n, b};
  for (int r = 0; r <= 2; ++r) {
    ModMatrix S = filtration_basis(basis, r);
    CHECK(S.rows == 11);
    CHECK(S.cols == 11 - r);
    // every generator reduces to zero modulo the filtration ideal
    for (long k = 0; k < S.cols; ++k) {
      DecoSeries f = series_zero(spec, 0, 10, b);
      for (long i = 0; i <= 10; ++i) {
        ScaledPAdic a = padic_from_int(3, (long long)S.at(i, k), b.total());
        a.val += (int)lb(spec, i);
        f = series_add(f, series_monomial(spec, 0, 10, b, i, a));
      }
      if (r > 0) CHECK(in_fr(f, r, cfg.n));
    }
  }
}

namespace {
// truncation junk has small bounded exponent; the full-order classes are the
// structural part of the cohomology
int full_order_count(const std::vector<int>& divisors, int n) {
  int c = 0;
  for (int d : divisors)
    if (d == n) ++c;
  return c;
}
}  // namespace

TEST_CASE("syntomic complex: valid, with band-stable structural cohomology") {
  PipelineConfig cfg = config_a(1, 4, 8);
  ChainComplex C = build_complex(cfg, ComplexName::Syn);
  validate_complex(C);

  PipelineConfig big = config_a(1, 4, 16);
  ChainComplex C2 = build_complex(big, ComplexName::Syn);

  // rank 2 in degree 1 and rank 1 in degree 2, at either band radius
  for (const ChainComplex* X : {&C, &C2}) {
    CHECK(full_order_count(cohomology(*X, 0).divisors, 4) == 0);
    CHECK(full_order_count(cohomology(*X, 1).divisors, 4) == 2);
    CHECK(full_order_count(cohomology(*X, 2).divisors, 4) == 1);
  }
}

TEST_CASE("all Kummer-frame complexes satisfy d∘d = 0 on profile A") {
  PipelineConfig cfg = config_a(1, 3, 8);
  for (ComplexName name : {ComplexName::KumPD, ComplexName::KumU, ComplexName::KumUV,
                           ComplexName::KumPsiU, ComplexName::KumPsiUV, ComplexName::HK}) {
    ChainComplex C = build_complex(cfg, name);
    validate_complex(C);
    CHECK(C.dims.size() == 3);
  }
}

TEST_CASE("cyclotomic and Herr complexes on profile B") {
  PipelineConfig cfg = config_b(1, 2, 33);
  ChainComplex C = build_complex(cfg, ComplexName::CyclUV);
  validate_complex(C);

  ChainComplex H = build_complex(cfg, ComplexName::Herr);  // validates internally
  CHECK(H.dims.size() == 3);
  CHECK(H.dims[1] == H.dims[0] + H.dims[2]);

  PipelineConfig a = config_a(1, 2, 33);
  CHECK_THROWS_AS(build_complex(a, ComplexName::CyclUV), config_error);
  CHECK_THROWS_AS(build_complex(a, ComplexName::Herr), config_error);
}

TEST_CASE("de Rham quotient complex shape") {
  PipelineConfig cfg = config_a(2, 3, 10);
  ChainComplex D = build_complex(cfg, ComplexName::DR);
  CHECK(D.dims == std::vector<long>{2, 1});
  validate_complex(D);
}

TEST_CASE("comparison edges produce certificates; phi-to-psi is exact") {
  PipelineConfig cfg = config_a(1, 3, 8);
  for (EdgeName e : {EdgeName::PdToU, EdgeName::PhiToPsi, EdgeName::UToUv,
                     EdgeName::PhiToPsiUv}) {
    EdgeResult res = build_edge(cfg, e, 1);
    CHECK(res.certs.size() == 2);
    for (const QuasiIsoCertificate& c : res.certs) {
      CHECK(c.defect <= 6 * cfg.r);
      if (e == EdgeName::PhiToPsi || e == EdgeName::PhiToPsiUv) CHECK(c.defect == 0);
    }
  }
}

TEST_CASE("psi-zero eigencomponent Koszul complex is acyclic") {
  PipelineConfig cfg = config_a(1, 3, 8);
  cfg.d = 1;
  ChainComplex K = psi_zero_eigencomplex(cfg, 6);
  validate_complex(K);
  for (int q = 0; q <= 2; ++q) CHECK(cohomology(K, q).divisors.empty());
}

TEST_CASE("divisor distance") {
  CHECK(divisor_distance({}, {}) == 0);
  CHECK(divisor_distance({3, 1}, {1, 3}) == 0);
  CHECK(divisor_distance({3, 1}, {3}) == 1);
  CHECK(divisor_distance({4}, {2, 2}) == 2);
}

TEST_CASE("de Rham / Frobenius-column report on profile A") {
  PipelineConfig cfg = config_a(2, 3, 10);
  DrHkReport rep = dr_hk_report(cfg);
  CHECK(rep.syn_truncation.size() == 3);
  for (const QuasiIsoCertificate& c : rep.syn_truncation) CHECK(c.defect == 0);
  CHECK(rep.hk_annihilators.size() == 2);
  for (int a : rep.hk_annihilators) CHECK(a <= cfg.n);
  CHECK(rep.dr_fiber_distance.size() == 2);
  for (int d : rep.dr_fiber_distance) CHECK(d == 0);
}

TEST_CASE("json serialization round-trips the key fields") {
  PipelineConfig cfg = config_a(1, 3, 8);
  nlohmann::json j = config_json(cfg);
  CHECK(j["p"] == 3);
  CHECK(j["profile"] == "A");
  CHECK(j["n"] == 3);

  ChainComplex C = build_complex(cfg, ComplexName::Syn);
  CohomologyTable t = cohomology_table(C, 0, 2, "syn");
  nlohmann::json jt = table_json(t);
  CHECK(jt["name"] == "syn");
  CHECK(jt["degrees"].size() == 3);

  EdgeResult e = build_edge(cfg, EdgeName::PhiToPsi, 1);
  nlohmann::json je = edge_json(e);
  CHECK(je["name"] == "phi_to_psi");
  CHECK(je["certificates"].size() == 2);
}
