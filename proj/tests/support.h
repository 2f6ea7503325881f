#ifndef XIBASIN_TESTS_SUPPORT_H
#define XIBASIN_TESTS_SUPPORT_H

// Checks shared by the unit tests and the acceptance binary.

#include "xibasin/dynamics.h"
#include "xibasin/rng.h"

#include <cmath>
#include <string>
#include <vector>

namespace xibasin::testing {

inline FunctionHandle quadratic(const PrecisionContext& ctx)
{
    return poly_handle(PolynomialSpec::from_roots({BigComplex(1, 0, ctx), BigComplex(-1, 0, ctx)}), ctx);
}

inline FunctionHandle degree8(const PrecisionContext& ctx)
{
    return poly_handle(PolynomialSpec::from_roots(first_eight_xi_zeros(ctx)), ctx);
}

/// xi straight from its definition s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s). Unlike xi(), it never
/// reflects s into the right half-plane, so comparing xi(s) with xi(1-s) exercises the functional equation.
inline BigComplex xi_by_definition(const BigComplex& s, const PrecisionContext& ctx)
{
    const BigComplex half = s / 2L;
    const BigComplex pi_pow = exp(-(half * log(Real::pi(ctx.bits()))));
    return s * (s - 1L) / 2L * pi_pow * gamma(half, ctx) * zeta(s, ctx);
}

/// Violations of the per-step optimizer invariants along one trajectory. Empty means clean.
inline std::vector<std::string> trajectory_violations(const Trajectory& t, const BNQNParams& p)
{
    std::vector<std::string> out;
    for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
        const IterationRecord& r = t.records[k];
        if (r.delta_index < 0)
            continue;
        const std::string at = "step " + std::to_string(k) + ": ";
        if (r.descent.sign() <= 0)
            out.push_back(at + "descent not positive");
        if (!(t.records[k + 1].F < r.F))
            out.push_back(at + "F did not decrease");
        if (r.minsp_shifted < r.kappa_threshold)
            out.push_back(at + "minsp below kappa threshold");
        // The capped step equals 1/theta up to rounding, so both caps get a relative slack.
        const Real slack = Real::pow10(-20, r.step_norm.precision()) + 1L;
        if (p.theta.sign() > 0 && r.step_norm > slack / p.theta)
            out.push_back(at + "step exceeds 1/theta");
        Real cap = r.newton_norm;
        if (p.theta.sign() > 0)
            cap = min(cap, 1L / p.theta);
        if (r.step_norm > r.gamma * cap * slack)
            out.push_back(at + "step exceeds gamma * min(|w|, 1/theta)");
    }
    return out;
}

/// F = |g|^2 / 2 at (x, y).
inline Real objective_at(const FunctionHandle& h, const Real& x, const Real& y)
{
    return abs2(h.value(BigComplex(x, y))) / 2L;
}

/// Largest relative deviation between the closed-form gradient/Hessian (from `coarse`) and central
/// differences of F computed with `fine`, a handle for the same target at about twice the digits.
inline double hessian_fd_error(const FunctionHandle& coarse, const FunctionHandle& fine, const BigComplex& z)
{
    const GradHess gh = grad_hess_F(coarse, z);
    const PrecisionContext& fc = fine.context();
    const mpfr_prec_t bits = fc.bits();
    const Real h = Real::pow10(-(coarse.context().digits() / 2 + 2), bits);
    const Real x = z.re().with_precision(bits), y = z.im().with_precision(bits);
    const Real f0 = objective_at(fine, x, y);
    const Real fxp = objective_at(fine, x + h, y), fxm = objective_at(fine, x - h, y);
    const Real fyp = objective_at(fine, x, y + h), fym = objective_at(fine, x, y - h);
    const Real fpp = objective_at(fine, x + h, y + h), fpm = objective_at(fine, x + h, y - h);
    const Real fmp = objective_at(fine, x - h, y + h), fmm = objective_at(fine, x - h, y - h);
    const Real gx = (fxp - fxm) / (2L * h), gy = (fyp - fym) / (2L * h);
    const Real hxx = (fxp - 2L * f0 + fxm) / (h * h);
    const Real hyy = (fyp - 2L * f0 + fym) / (h * h);
    const Real hxy = (fpp - fpm - fmp + fmm) / (4L * h * h);
    Real scale = max(max(abs(gh.hess.a), abs(gh.hess.d)), max(abs(gh.hess.b), norm(gh.grad)));
    if (scale.is_zero())
        scale = Real(1L, bits);
    const Real err = max(max(max(abs(gx - gh.grad.x), abs(gy - gh.grad.y)), max(abs(hxx - gh.hess.a), abs(hyy - gh.hess.d))),
                         abs(hxy - gh.hess.b));
    return (err / scale).to_double();
}

/// Ratios |e_{k+1}| / (10 |e_k|^1.8) over the tail inside 1e-3 of `root`, floored at the working precision.
/// Returns the worst ratio; values <= 1 satisfy the quadratic-tail bound.
inline double worst_tail_ratio(const Trajectory& t, const BigComplex& root, int digits)
{
    double worst = 0.0;
    const double floor = std::pow(10.0, -digits + 2);
    for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
        const double ek = abs(t.records[k].z - root).to_double();
        if (ek >= 1e-3 || ek == 0.0)
            continue;
        const double next = abs(t.records[k + 1].z - root).to_double();
        const double bound = std::max(10.0 * std::pow(ek, 1.8), floor);
        worst = std::max(worst, next / bound);
    }
    return worst;
}

} // namespace xibasin::testing

#endif
