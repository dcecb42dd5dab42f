#pragma once

#include <functional>

#include "syntomo/ring.hpp"

namespace syntomo {

// Decoration transitions along the semilinear operators.
RingSpec frob_target(const RingSpec& s);   // UV(u,v) -> UV(u,v/p)
RingSpec psi_target(const RingSpec& s);    // U(u) -> U(pu), UV(u,v) -> UV(pu,pv)
RingSpec frob_source(const RingSpec& s);   // inverse of frob_target

// --- Kummer-frame operators (variable to the p-th power) ---
DecoSeries frob_kum(const DecoSeries& f);
DecoSeries psi_kum(const DecoSeries& f);
DecoSeries partial_kum0(const DecoSeries& f);  // X d/dX
// Eigencomponent: keep degrees congruent to alpha mod p.
DecoSeries c_alpha_kum(const DecoSeries& f, int alpha);
// f = sum_alpha frob(x_alpha) X^alpha; returns x_0..x_{p-1}.
std::vector<DecoSeries> kum_decompose(const DecoSeries& f);

// --- cyclotomic-frame operators (T -> (1+T)^p - 1) ---
DecoSeries frob_cycl(const DecoSeries& f);
DecoSeries partial_cycl0(const DecoSeries& f);  // (1+T) d/dT
// (1+T)^a as a series, a any p-adic integer.
DecoSeries one_plus_t_power(const RingSpec& spec, long lo, long hi, PrecisionBudget b,
                            const ScaledPAdic& a);
// Substitute the arithmetic variable by g: f(X) -> f(g).
DecoSeries substitute_arith(const DecoSeries& f, const DecoSeries& g, const RingSpec& out_spec);
// gamma_0^s, the arithmetic Gamma-generator: T -> (1+T)^(c^s) - 1 with
// c = exp(p^i).
DecoSeries gamma0_cycl(const DecoSeries& f, long s);
ScaledPAdic gamma0_scalar_c(const RingSpec& spec, int prec);  // c = exp(p^i)
// f = sum_alpha frob_cycl(x_alpha) (1+T)^alpha, solved modulo p^digits.
std::vector<DecoSeries> cycl_decompose(const DecoSeries& f, int digits);
DecoSeries psi_cycl(const DecoSeries& f, int digits);

// t = p^i log(1+T) and its twisted powers t^{b(r)} (t^{p-1}/p)^{a(r)},
// r = (p-1) a(r) + b(r), 0 <= b(r) < p-1.
DecoSeries compute_t(const RingSpec& spec, long lo, long hi, PrecisionBudget b);
DecoSeries compute_t_twist(const RingSpec& spec, int r, long lo, long hi, PrecisionBudget b);

// x with (1 - p^m frob) x = y, by the geometric series; verifies the
// residual and throws if the series fails to converge in the band.
DecoSeries solve_one_minus_frob(const DecoSeries& y, int m, bool cyclotomic, int digits);

// --- torus layer ---
TorusSeries frob_kum(const TorusSeries& f);
TorusSeries psi_kum(const TorusSeries& f);
TorusSeries frob_cycl(const TorusSeries& f);
TorusSeries psi_cycl(const TorusSeries& f, int digits);
// j = 0 acts on the arithmetic variable, j >= 1 on the torus variables.
TorusSeries partial_j(const TorusSeries& f, int j, bool cyclotomic);
// gamma_j^s for j >= 1: X_j -> (1+T)^(p^i s) X_j.  gamma_0 acts through
// the arithmetic variable.
TorusSeries gamma_j(const TorusSeries& f, int j, long s);
TorusSeries gamma0_cycl(const TorusSeries& f, long s);
// nabla_j = t * partial_j (profile B)
TorusSeries nabla_j(const TorusSeries& f, int j);

using TorusOp = std::function<TorusSeries(const TorusSeries&)>;
// log(1 + tau) applied to f, with a divergence guard.
TorusSeries operator_log(const TorusOp& tau, const TorusSeries& f, int guard = 300);
// sum_k a_k tau^k with a_k the coefficients of log(1+X)/X  (i.e. nabla/tau).
TorusSeries operator_log_over_tau(const TorusOp& tau, const TorusSeries& f, int guard = 300);
// sum_k b_k tau^k with b_k the coefficients of X/log(1+X)  (i.e. tau/nabla).
TorusSeries operator_tau_over_log(const TorusOp& tau, const TorusSeries& f, int guard = 300);

// --- implicit function solver ---
// Find x near 0 with Q(Z0 + x) = 0, by the preconditioned contraction
// x <- x - H Q(Z0 + x); the residual valuation must strictly increase.
using VecFn = std::function<std::vector<ScaledPAdic>(const std::vector<ScaledPAdic>&)>;
std::vector<ScaledPAdic> implicit_solve(const VecFn& Q,
                                        const std::vector<std::vector<ScaledPAdic>>& H,
                                        const std::vector<ScaledPAdic>& Z0, int digits,
                                        int max_iter = 200);

}  // namespace syntomo
