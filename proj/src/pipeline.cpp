#include "syntomo/pipeline.hpp"

#include <algorithm>

namespace syntomo {

namespace {

ScaledPAdic p_power(uint32_t p, int k, int prec) {
  ScaledPAdic a = padic_from_int(p, 1, prec);
  a.val = k;
  return a;
}

// negative band depth for the filtered column: deep enough that a slot just
// below the band has valuation floor at least n above the floor of the same
// slot in the Frobenius-target decoration, so every band-bottom escape is
// invisible mod p^n in the target coordinates:
// m*(v - v/p)/e >= n  <=>  m >= n*e*p / (v*(p-1))
long negative_depth(const RingSpec& spec, int n) {
  if (spec.deco == Deco::UV || spec.deco == Deco::ZeroVPlus)
    return ceil_ratio((long)n * spec.e * spec.p * spec.v.den,
                      spec.v.num * ((long)spec.p - 1));
  return 0;  // Plus, PD, U: power-series side only
}

PrecisionBudget work_budget(const PipelineConfig& cfg) {
  return PrecisionBudget{cfg.n + cfg.slack, cfg.slack};
}

// disambiguate from the TorusSeries overloads
SeriesOp frob_kum_op() {
  return [](const DecoSeries& f) { return frob_kum(f); };
}
SeriesOp psi_kum_op() {
  return [](const DecoSeries& f) { return psi_kum(f); };
}
SeriesOp frob_cycl_op() {
  return [](const DecoSeries& f) { return frob_cycl(f); };
}

}  // namespace

void PipelineConfig::validate() const {
  if (base.p < 3 || base.p % 2 == 0) throw config_error("p must be an odd prime");
  if (base.profile == 'B' && base.i_cyclo < 3)
    throw config_error("profile B requires i_cyclo >= 3");
  if (d < 0 || d > 1) throw config_error("torus rank d must be 0 or 1");
  if (r < 0) throw config_error("twist r must be nonnegative");
  if (n < 1) throw config_error("coefficient exponent n must be positive");
  if (n + 2 * slack > digit_cap(base.p))
    throw config_error("n plus slack exceeds the 64-bit digit cap");
  TruncationPlan plan = truncation_plan(*this);
  if (M < plan.floor + margin) throw config_error("band radius M is below the certified floor");
}

TruncationPlan truncation_plan(const PipelineConfig& cfg) {
  long p = (long)cfg.base.p;
  long re = (long)cfg.r * cfg.base.e;
  Rational u = default_u(cfg.base.p);
  // the tail of p^r - p^j phi is invertible once the decoration floor
  // outgrows r*e and r*e/(u*(p-1))
  long floor1 = re;
  long floor2 = ceil_ratio(re * u.den, u.num * (p - 1));
  TruncationPlan plan;
  plan.floor = std::max(floor1, floor2);
  plan.M0 = cfg.M;
  plan.M1 = p * cfg.M;
  plan.certified_degrees = {0, 1};
  return plan;
}

DecoSeries ModuleBasis::elem(long k, long band_lo, long band_hi) const {
  DecoSeries f = series_zero(spec, band_lo, band_hi, budget);
  long deg = lo + k;
  ScaledPAdic a = padic_from_int(spec.p, 1, budget.total());
  a.val = (int)lb(spec, deg);
  f.set(deg, a);
  return f;
}

std::vector<uint64_t> ModuleBasis::coords(const DecoSeries& f) const {
  std::vector<uint64_t> out((size_t)dim(), 0);
  for (long i = lo; i <= hi; ++i)
    out[(size_t)(i - lo)] = padic_residue(f.get(i), lb(spec, i), n);
  return out;
}

ModMatrix op_matrix(const ModuleBasis& src, const ModuleBasis& dst, const SeriesOp& op) {
  long blo = std::min(src.lo, dst.lo), bhi = std::max(src.hi, dst.hi);
  bool neg_ok = src.spec.deco == Deco::Laurent || src.spec.deco == Deco::UV ||
                src.spec.deco == Deco::ZeroVPlus;
  if (!neg_ok) blo = std::max(blo, 0L);
  // top headroom: substitution operators on a degree -m monomial form m-fold
  // band-truncated products of series reaching down to degree -1, losing one
  // exact top coefficient per factor (plus one for the inversion), so the
  // top |blo| + 1 coefficients of the plain band would be wrong
  if (blo < 0) bhi += -blo + 2;
  ModMatrix A(dst.dim(), src.dim(), (long)src.spec.p, src.n);
  for (long k = 0; k < src.dim(); ++k) {
    DecoSeries y = op(src.elem(k, blo, bhi));
    std::vector<uint64_t> col = dst.coords(y);
    for (long i = 0; i < dst.dim(); ++i) A.at(i, k) = col[(size_t)i];
  }
  return A;
}

ModMatrix filtration_basis(const ModuleBasis& basis, int r) {
  long p = (long)basis.spec.p;
  if (r <= 0) return mat_identity(basis.dim(), p, basis.n);
  long re = (long)r * basis.spec.e;
  ModMatrix R(re, basis.dim(), p, basis.n);
  for (long k = 0; k < basis.dim(); ++k) {
    DecoSeries rem = reduce_mod_fr(basis.elem(k, basis.lo, basis.hi), r);
    for (long i = 0; i < re; ++i)
      R.at(i, k) = padic_residue(rem.get(i), lb(basis.spec, i), basis.n);
  }
  KernelBasis K = kernel_basis(R);
  std::vector<long> keep;
  for (size_t j = 0; j < K.orders.size(); ++j)
    if (K.orders[j] == basis.n) keep.push_back((long)j);
  if ((long)keep.size() != basis.dim() - re)
    throw error("filtration basis extraction failure");
  ModMatrix S(basis.dim(), (long)keep.size(), p, basis.n);
  for (size_t t = 0; t < keep.size(); ++t)
    for (long i = 0; i < basis.dim(); ++i) S.at(i, (long)t) = K.gens.at(i, keep[t]);
  return S;
}

std::string complex_name(ComplexName name) {
  switch (name) {
    case ComplexName::Syn: return "Syn";
    case ComplexName::KumPD: return "Kum_PD";
    case ComplexName::KumU: return "Kum_U";
    case ComplexName::KumUV: return "Kum_UV";
    case ComplexName::KumPsiU: return "KumPsi_U";
    case ComplexName::KumPsiUV: return "KumPsi_UV";
    case ComplexName::CyclUV: return "Cycl_UV";
    case ComplexName::HK: return "HK";
    case ComplexName::DR: return "DR";
    case ComplexName::Herr: return "Herr";
  }
  return "?";
}

namespace {

struct KumParts {
  ModuleBasis b1;      // filtered column ring
  ModuleBasis b2;      // Frobenius column ring
  ModMatrix SF_r;      // F^r sub-basis in b1 coordinates
  ModMatrix SF_r1;     // F^(r-1) sub-basis
  ChainComplex total;  // the assembled 3-term complex
};

RingSpec column_spec(const PipelineConfig& cfg, Deco deco) {
  if (cfg.base.profile == 'A')
    return make_profile_a(cfg.base.p, cfg.base.e, deco, default_u(cfg.base.p),
                          default_v(cfg.base.p), cfg.base.P.empty()
                                                     ? std::optional<std::vector<long long>>{}
                                                     : std::optional<std::vector<long long>>{cfg.base.P});
  return make_profile_b(cfg.base.p, cfg.base.i_cyclo, deco, default_u(cfg.base.p),
                        default_v(cfg.base.p));
}

// generic filtered Frobenius fiber complex
// [ F^r S -> F^(r-1) S ]  --(p^r psi - p^q  |  p^r - p^q phi)-->  [ S' -> S' ]
KumParts build_kum_parts(const PipelineConfig& cfg, Deco deco, bool use_psi, bool cyclotomic) {
  cfg.validate();
  if (cyclotomic && cfg.base.profile != 'B')
    throw config_error("cyclotomic complexes require profile B");
  TruncationPlan plan = truncation_plan(cfg);
  PrecisionBudget b = work_budget(cfg);
  uint32_t p = cfg.base.p;
  int n = cfg.n, r = cfg.r;

  RingSpec spec1 = column_spec(cfg, deco);
  // psi halves band degrees, so its target column sits at radius M0; frob
  // multiplies them, so its target column needs radius M1 = p*M0
  RingSpec spec2 = use_psi ? psi_target(frob_target(spec1)) : frob_target(spec1);
  long M2 = use_psi ? plan.M0 : plan.M1;

  // frob deepens negative degrees by a factor p while psi shallows them by
  // exactly p with unchanged scaled valuation, so the Frobenius column must
  // sit at exactly p times the filtered-column depth for the phi-to-psi
  // comparison to respect the truncation
  long d1 = negative_depth(spec1, n);
  long d2 = use_psi ? d1 : (long)p * d1;

  KumParts parts;
  parts.b1 = ModuleBasis{spec1, -d1, plan.M0, n, b};
  parts.b2 = ModuleBasis{spec2, -d2, M2, n, b};
  parts.SF_r = filtration_basis(parts.b1, r);
  parts.SF_r1 = filtration_basis(parts.b1, r - 1);

  SeriesOp partial = cyclotomic ? SeriesOp(partial_cycl0) : SeriesOp(partial_kum0);
  SeriesOp frob = cyclotomic ? frob_cycl_op() : frob_kum_op();

  // filtered column: F^r --partial--> F^(r-1), in the extracted sub-bases
  ModMatrix dF_full = mat_mul(op_matrix(parts.b1, parts.b1, partial), parts.SF_r);
  ModMatrix dF = solve_columns(parts.SF_r1, dF_full);
  ChainComplex C{(long)p, n, 0, {parts.SF_r.cols, parts.SF_r1.cols}, {dF}};

  // Frobenius column with its differential (partial, sped up by p for psi)
  SeriesOp d2op = use_psi ? SeriesOp([=](const DecoSeries& f) {
    return series_scalar_mul(p_power(p, 1, f.budget.total()), partial(f));
  })
                          : partial;
  ModMatrix ddR = op_matrix(parts.b2, parts.b2, d2op);
  ChainComplex D{(long)p, n, 0, {parts.b2.dim(), parts.b2.dim()}, {ddR}};

  // comparison map p^r - p^q phi (or p^r psi - p^q) on column degree q
  auto gq = [&](int q) {
    SeriesOp op = [&, q](const DecoSeries& f) {
      DecoSeries lead =
          use_psi ? series_cast(series_scalar_mul(p_power(p, r, f.budget.total()), psi_kum(f)),
                                spec2)
                  : series_scalar_mul(p_power(p, r, f.budget.total()), series_cast(f, spec2));
      DecoSeries sub = use_psi
                           ? series_scalar_mul(p_power(p, q, f.budget.total()),
                                               series_cast(f, spec2))
                           : series_scalar_mul(p_power(p, q, f.budget.total()), frob(f));
      return series_sub(lead, series_cast(sub, spec2));
    };
    return op_matrix(parts.b1, parts.b2, op);
  };
  ModMatrix g0 = mat_mul(gq(0), parts.SF_r);
  ModMatrix g1 = mat_mul(gq(1), parts.SF_r1);
  ChainMap f{0, {g0, g1}};
  parts.total = fiber(C, D, f);
  return parts;
}

SeriesOp tau0_op(const RingSpec& spec, int r, int prec) {
  ScaledPAdic c = gamma0_scalar_c(spec, prec);
  ScaledPAdic cr = padic_pow(c, r);
  return [spec, cr](const DecoSeries& f) {
    DecoSeries g = series_scalar_mul(cr, gamma0_cycl(f, 1));
    return series_sub(g, series_cast(f, g.spec));
  };
}

ChainComplex build_hk(const PipelineConfig& cfg) {
  cfg.validate();
  TruncationPlan plan = truncation_plan(cfg);
  PrecisionBudget b = work_budget(cfg);
  uint32_t p = cfg.base.p;
  int n = cfg.n, r = cfg.r;
  RingSpec spec1 = column_spec(cfg, Deco::PD);
  RingSpec spec2 = frob_target(spec1);
  ModuleBasis b1{spec1, 0, plan.M0, n, b};
  ModuleBasis b2{spec2, 0, plan.M1, n, b};
  ModMatrix dF = op_matrix(b1, b1, SeriesOp(partial_kum0));
  ChainComplex C{(long)p, n, 0, {b1.dim(), b1.dim()}, {dF}};
  ModMatrix ddR = op_matrix(b2, b2, SeriesOp(partial_kum0));
  ChainComplex D{(long)p, n, 0, {b2.dim(), b2.dim()}, {ddR}};
  auto gq = [&](int q) {
    SeriesOp op = [&, q](const DecoSeries& f) {
      DecoSeries lead = series_scalar_mul(p_power(p, r, f.budget.total()), series_cast(f, spec2));
      DecoSeries sub = series_scalar_mul(p_power(p, q, f.budget.total()), frob_kum(f));
      return series_sub(lead, series_cast(sub, spec2));
    };
    return op_matrix(b1, b2, op);
  };
  ChainMap f{0, {gq(0), gq(1)}};
  return fiber(C, D, f);
}

ChainComplex build_dr(const PipelineConfig& cfg) {
  cfg.validate();
  PrecisionBudget b = work_budget(cfg);
  uint32_t p = cfg.base.p;
  int n = cfg.n, r = cfg.r;
  long e = cfg.base.e;
  RingSpec spec = column_spec(cfg, Deco::PD);
  ChainComplex C;
  C.p = (long)p;
  C.N = n;
  C.q0 = 0;
  for (int q = 0; q < r; ++q) C.dims.push_back((r - q) * e);
  for (int q = 0; q + 1 < r; ++q) {
    long src = (r - q) * e, dst = (r - q - 1) * e;
    ModMatrix d((long)dst, (long)src, (long)p, n);
    ModuleBasis bq{spec, 0, src - 1, n, b};
    for (long k = 0; k < src; ++k) {
      DecoSeries x = bq.elem(k, 0, src + e);
      DecoSeries rem = reduce_mod_fr(partial_kum0(x), r - q - 1);
      for (long i = 0; i < dst; ++i) d.at(i, k) = padic_residue(rem.get(i), lb(spec, i), n);
    }
    C.d.push_back(d);
  }
  return C;
}

}  // namespace

ChainComplex herr_complex(const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.base.profile != 'B') throw config_error("the Herr complex requires profile B");
  PrecisionBudget b = work_budget(cfg);
  uint32_t p = cfg.base.p;
  int n = cfg.n;
  // plain Laurent coordinates mod p^n: the principal-part tail of phi gains
  // one digit of valuation per (p-1) depth steps, so a target depth of
  // p*L0 + (p-1)*n makes every out-of-band discard exactly zero mod p^n
  RingSpec spec = column_spec(cfg, Deco::Laurent);
  long M = cfg.M;
  long L0 = 2L * n;
  long L2 = (long)p * L0 + ((long)p - 1) * n;
  ModuleBasis D0{spec, -L0, M, n, b};
  ModuleBasis D2{spec, -L2, M, n, b};

  SeriesOp tau0 = tau0_op(spec, cfg.r, b.total());
  SeriesOp one_minus_phi = [&spec](const DecoSeries& f) {
    DecoSeries phi = frob_cycl(f);
    return series_sub(series_cast(f, phi.spec), phi);
  };

  ModMatrix t00 = op_matrix(D0, D0, tau0);
  ModMatrix t22 = op_matrix(D2, D2, tau0);
  ModMatrix f0 = op_matrix(D0, D2, one_minus_phi);

  ChainComplex C{(long)p, n, 0, {D0.dim(), D0.dim()}, {t00}};
  ChainComplex D{(long)p, n, 0, {D2.dim(), D2.dim()}, {t22}};
  ChainMap f{0, {f0, f0}};
  ChainComplex H = fiber(C, D, f);
  validate_complex(H);
  return H;
}

ChainComplex psi_zero_eigencomplex(const PipelineConfig& cfg, long geom_band) {
  cfg.validate();
  uint32_t p = cfg.base.p;
  int n = cfg.n;
  // monomial-diagonal de Rham operators on the nonzero Frobenius
  // eigencomponents of the geometric variable: arithmetic degree i acts by
  // i, geometric degree m (p coprime) by m
  std::vector<std::pair<long, long>> pairs;
  for (long i = 0; i <= cfg.M; ++i)
    for (long m = -geom_band; m <= geom_band; ++m)
      if (m % (long)p != 0) pairs.push_back({i, m});
  long dim = (long)pairs.size();
  ModMatrix T0(dim, dim, (long)p, n), T1(dim, dim, (long)p, n);
  uint64_t mod = T0.modulus();
  for (long k = 0; k < dim; ++k) {
    long long i = pairs[(size_t)k].first, m = pairs[(size_t)k].second;
    T0.at(k, k) = (uint64_t)(((i % (long long)mod) + (long long)mod) % (long long)mod);
    T1.at(k, k) = (uint64_t)(((m % (long long)mod) + (long long)mod) % (long long)mod);
  }
  return koszul_complex({T0, T1}, dim, (long)p, n);
}

ChainComplex build_complex(const PipelineConfig& cfg, ComplexName name) {
  switch (name) {
    case ComplexName::Syn:
    case ComplexName::KumPD:
      return build_kum_parts(cfg, Deco::PD, false, false).total;
    case ComplexName::KumU:
      return build_kum_parts(cfg, Deco::U, false, false).total;
    case ComplexName::KumUV:
      return build_kum_parts(cfg, Deco::UV, false, false).total;
    case ComplexName::KumPsiU:
      return build_kum_parts(cfg, Deco::U, true, false).total;
    case ComplexName::KumPsiUV:
      return build_kum_parts(cfg, Deco::UV, true, false).total;
    case ComplexName::CyclUV:
      return build_kum_parts(cfg, Deco::UV, false, true).total;
    case ComplexName::HK:
      return build_hk(cfg);
    case ComplexName::DR:
      return build_dr(cfg);
    case ComplexName::Herr:
      return herr_complex(cfg);
  }
  throw error("unknown complex name");
}

std::string edge_name(EdgeName name) {
  switch (name) {
    case EdgeName::PdToU: return "pd_to_u";
    case EdgeName::PhiToPsi: return "phi_to_psi";
    case EdgeName::UToUv: return "u_to_uv";
    case EdgeName::PhiToPsiUv: return "phi_to_psi_uv";
  }
  return "?";
}

namespace {

SeriesOp identity_op() {
  return [](const DecoSeries& f) { return f; };
}

// inclusion of one filtered fiber complex into another along compatible
// bases: change of coordinates on the F-parts, re-expansion on the
// Frobenius columns
ChainMap inclusion_map(const KumParts& src, const KumParts& dst, const SeriesOp& col2_op) {
  ModMatrix inc1 = op_matrix(src.b1, dst.b1, identity_op());
  ModMatrix f0 = solve_columns(dst.SF_r, mat_mul(inc1, src.SF_r));
  ModMatrix f1F = solve_columns(dst.SF_r1, mat_mul(inc1, src.SF_r1));
  ModMatrix f1C = op_matrix(src.b2, dst.b2, col2_op);
  long a = f1F.rows, bb = f1F.cols, c = f1C.rows, dd = f1C.cols;
  ModMatrix f1(a + c, bb + dd, f1F.p, f1F.N);
  for (long i = 0; i < a; ++i)
    for (long j = 0; j < bb; ++j) f1.at(i, j) = f1F.at(i, j);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < dd; ++j) f1.at(a + i, bb + j) = f1C.at(i, j);
  ModMatrix f2 = f1C;
  return ChainMap{0, {f0, f1, f2}};
}

}  // namespace

EdgeResult build_edge(const PipelineConfig& cfg, EdgeName edge, int qmax) {
  EdgeResult result;
  result.name = edge_name(edge);
  KumParts src, dst;
  SeriesOp col2 = identity_op();
  switch (edge) {
    case EdgeName::PdToU:
      src = build_kum_parts(cfg, Deco::PD, false, false);
      dst = build_kum_parts(cfg, Deco::U, false, false);
      break;
    case EdgeName::PhiToPsi:
      src = build_kum_parts(cfg, Deco::U, false, false);
      dst = build_kum_parts(cfg, Deco::U, true, false);
      col2 = psi_kum_op();
      break;
    case EdgeName::UToUv:
      src = build_kum_parts(cfg, Deco::U, true, false);
      dst = build_kum_parts(cfg, Deco::UV, true, false);
      break;
    case EdgeName::PhiToPsiUv:
      src = build_kum_parts(cfg, Deco::UV, false, false);
      dst = build_kum_parts(cfg, Deco::UV, true, false);
      col2 = psi_kum_op();
      break;
  }
  ChainMap f = inclusion_map(src, dst, col2);
  validate_chain_map(src.total, dst.total, f);
  for (int q = 0; q <= qmax; ++q)
    result.certs.push_back(certify_quasi_iso(src.total, dst.total, f, q));
  return result;
}

CohomologyTable cohomology_table(const ChainComplex& C, int qlo, int qhi,
                                 const std::string& name) {
  CohomologyTable table;
  table.name = name;
  for (int q = qlo; q <= qhi; ++q) {
    table.degrees.push_back(q);
    table.divisors.push_back(cohomology(C, q).divisors);
  }
  return table;
}

int divisor_distance(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> x = a, y = b;
  size_t len = std::max(x.size(), y.size());
  x.resize(len, 0);
  y.resize(len, 0);
  std::sort(x.rbegin(), x.rend());
  std::sort(y.rbegin(), y.rend());
  int dist = 0;
  for (size_t i = 0; i < len; ++i) dist = std::max(dist, std::abs(x[i] - y[i]));
  return dist;
}

DrHkReport dr_hk_report(const PipelineConfig& cfg) {
  DrHkReport report;
  KumParts syn = build_kum_parts(cfg, Deco::PD, false, false);
  ChainComplex hk = build_hk(cfg);
  ChainComplex dr = build_dr(cfg);

  // (a) brutal truncation at r+1 compared against the full complex
  ChainComplex trunc = truncate_above(syn.total, cfg.r + 1);
  int top = std::min(cfg.r + 1, (int)syn.total.dims.size() - 1);
  for (int q = 0; q <= top; ++q) {
    ChainMap id{0, {}};
    for (int t = 0; t <= top; ++t)
      id.f.push_back(mat_identity(trunc.dim_at(t), trunc.p, trunc.N));
    QuasiIsoCertificate cert = certify_quasi_iso(trunc, syn.total, id, q);
    report.syn_truncation.push_back(cert);
  }

  // (b) annihilator exponents of H^q(HK), q <= r-1
  for (int q = 0; q < cfg.r; ++q) {
    CohomologyResult H = cohomology(hk, q);
    report.hk_annihilators.push_back(H.divisors.empty() ? 0 : H.divisors.front());
  }

  // (c) fiber of Syn -> HK against the de Rham quotient shifted by one
  ModMatrix q0 = syn.SF_r;
  long a = syn.SF_r1.rows, b1c = syn.SF_r1.cols;
  long c = syn.b2.dim();
  ModMatrix q1(a + c, b1c + c, q0.p, q0.N);
  for (long i = 0; i < a; ++i)
    for (long j = 0; j < b1c; ++j) q1.at(i, j) = syn.SF_r1.at(i, j);
  for (long i = 0; i < c; ++i) q1.at(a + i, b1c + i) = 1;
  ModMatrix q2 = mat_identity(c, q0.p, q0.N);
  ChainMap incl{0, {q0, q1, q2}};
  validate_chain_map(syn.total, hk, incl);
  ChainComplex fib = fiber(syn.total, hk, incl);
  for (int q = 0; q < cfg.r; ++q) {
    std::vector<int> lhs = cohomology(fib, q + 1).divisors;
    std::vector<int> rhs = cohomology(dr, q).divisors;
    report.dr_fiber_distance.push_back(divisor_distance(lhs, rhs));
  }
  return report;
}

nlohmann::json config_json(const PipelineConfig& cfg) {
  nlohmann::json j;
  j["p"] = cfg.base.p;
  j["profile"] = std::string(1, cfg.base.profile);
  j["e"] = cfg.base.e;
  j["i_cyclo"] = cfg.base.i_cyclo;
  j["d"] = cfg.d;
  j["r"] = cfg.r;
  j["n"] = cfg.n;
  j["M"] = cfg.M;
  j["margin"] = cfg.margin;
  j["slack"] = cfg.slack;
  j["seed"] = cfg.seed;
  return j;
}

nlohmann::json table_json(const CohomologyTable& table) {
  nlohmann::json j;
  j["name"] = table.name;
  j["degrees"] = table.degrees;
  j["divisors"] = table.divisors;
  return j;
}

nlohmann::json edge_json(const EdgeResult& edge) {
  nlohmann::json j;
  j["name"] = edge.name;
  nlohmann::json certs = nlohmann::json::array();
  for (const QuasiIsoCertificate& c : edge.certs) {
    certs.push_back({{"degree", c.q},
                     {"src_divisors", c.src_divisors},
                     {"dst_divisors", c.dst_divisors},
                     {"defect", c.defect}});
  }
  j["certificates"] = certs;
  return j;
}

}  // namespace syntomo
