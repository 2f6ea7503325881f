#include "xibasin/dynamics.h"

#include "xibasin/rng.h"

#include <cmath>
#include <numbers>
#include <ostream>
#include <utility>

namespace xibasin {

// ---------------------------------------------------------------------------
// Parameters

std::vector<Real> draw_deltas(std::uint64_t seed, const PrecisionContext& ctx)
{
    // Quantized to 1e-6 so the values echo exactly as short decimals in resolved configs.
    SeededRng rng(derive_seed(seed, 0xDE17A));
    auto draw = [&rng] { return static_cast<long>(std::floor(rng.uniform(-2.0, 2.0) * 1e6)); };
    for (;;) {
        const long d[3] = {draw(), draw(), draw()};
        if (std::labs(d[0] - d[1]) >= 100000 && std::labs(d[0] - d[2]) >= 100000 && std::labs(d[1] - d[2]) >= 100000)
            return {Real(d[0], ctx) / 1000000L, Real(d[1], ctx) / 1000000L, Real(d[2], ctx) / 1000000L};
    }
}

BNQNParams BNQNParams::defaults(const PrecisionContext& ctx, std::uint64_t seed)
{
    BNQNParams p;
    p.deltas = draw_deltas(seed, ctx);
    p.theta = Real(1L, ctx);
    p.tau = Real(1L, ctx);
    p.gamma0 = Real(1L, ctx);
    p.armijo_c = Real(1L, ctx) / 3L;
    p.max_iter = 30;
    p.grad_tol = Real::pow10(-(ctx.digits() / 2), ctx.bits());
    p.max_halvings = 200;
    p.seed = seed;
    p.root_tol = Real::parse("1e-6", ctx);
    p.divergence_factor = Real(10L, ctx);
    return p;
}

Real BNQNParams::kappa() const
{
    Real best = Real::infinity(deltas.empty() ? 64 : deltas.front().precision());
    for (std::size_t i = 0; i < deltas.size(); ++i)
        for (std::size_t j = i + 1; j < deltas.size(); ++j)
            best = min(best, abs(deltas[i] - deltas[j]));
    return best / 2L;
}

void BNQNParams::validate() const
{
    if (deltas.size() < 3)
        throw Error("BNQN needs at least 3 deltas");
    if (!(kappa() > 0.0))
        throw Error("BNQN deltas must be pairwise distinct");
    if (theta < 0.0)
        throw Error("theta must be >= 0");
    if (!(tau > 0.0))
        throw Error("tau must be > 0");
    if (!(gamma0 > 0.0) || gamma0 > 1.0)
        throw Error("gamma0 must lie in (0, 1]");
    if (max_iter < 0 || max_halvings < 0)
        throw Error("iteration limits must be non-negative");
    if (!(root_tol > 0.0))
        throw Error("root_tol must be > 0");
}

// ---------------------------------------------------------------------------
// F = |g|^2 / 2

GradHess grad_hess_from_jet(const Jet& jet)
{
    const BigComplex gbar = conj(jet.value);
    const BigComplex g1 = gbar * jet.d1;  // conj(g) g'
    const BigComplex g2 = gbar * jet.d2;  // conj(g) g''
    const Real d1sq = abs2(jet.d1);
    GradHess out;
    out.grad = {g1.re(), -g1.im()};
    out.hess = {d1sq + g2.re(), -g2.im(), d1sq - g2.re()};
    return out;
}

GradHess grad_hess_F(const FunctionHandle& h, const BigComplex& z)
{
    return grad_hess_from_jet(h.eval(z));
}

namespace {

Real objective(const FunctionHandle& h, const BigComplex& z)
{
    const BigComplex g = h.value(z);
    if (g.is_infinite() || !g.re().is_finite() || !g.im().is_finite())
        return Real::infinity(h.context().bits());
    return abs2(g) / 2L;
}

Real objective_from_jet(const Jet& jet)
{
    return abs2(jet.value) / 2L;
}

struct Direction
{
    int delta_index = -1;
    Vec2 w_hat;
    Real w_norm;
    Real descent;
    Real minsp_shifted;
    Real threshold;
};

Direction bnqn_direction(const GradHess& gh, const BNQNParams& p)
{
    const Real gn = norm(gh.grad);
    const Real gt = pow(gn, p.tau);
    Direction dir;
    dir.threshold = p.kappa() * gt;
    for (std::size_t j = 0; j < p.deltas.size(); ++j) {
        const Sym2 a = gh.hess.shifted(p.deltas[j] * gt);
        Eigen2 eig = eig2_sym(a);
        Real ms = minsp(eig);
        if (ms < dir.threshold)
            continue;
        dir.delta_index = static_cast<int>(j);
        dir.minsp_shifted = std::move(ms);
        // v = A^-1 grad = sum (e_i . grad / lambda_i) e_i; w flips the components along negative
        // eigenvalues, which amounts to dividing by |lambda_i|.
        const Real c1 = dot(eig.e1, gh.grad) / abs(eig.lambda1);
        const Real c2 = dot(eig.e2, gh.grad) / abs(eig.lambda2);
        const Vec2 w{eig.e1.x * c1 + eig.e2.x * c2, eig.e1.y * c1 + eig.e2.y * c2};
        dir.w_norm = norm(w);
        const Real scale = max(Real(1L, gn.precision()), p.theta * dir.w_norm);
        dir.w_hat = {w.x / scale, w.y / scale};
        dir.descent = dot(dir.w_hat, gh.grad);
        return dir;
    }
    throw Error("delta exhaustion");
}

BigComplex displaced(const BigComplex& z, const Vec2& dir, const Real& gamma)
{
    return {z.re() - gamma * dir.x, z.im() - gamma * dir.y};
}

struct LineSearchResult
{
    BigComplex next;
    Real gamma;
    int halvings = 0;
};

LineSearchResult armijo_backtrack(const FunctionHandle& h, const BigComplex& z, const Real& f0,
                                  const Direction& dir, const BNQNParams& p)
{
    Real gamma = p.gamma0;
    int halvings = 0;
    for (;;) {
        BigComplex trial = displaced(z, dir.w_hat, gamma);
        const Real ft = objective(h, trial);
        if (!(ft - f0 > -(gamma * dir.descent * p.armijo_c)))
            return {std::move(trial), std::move(gamma), halvings};
        gamma /= 2L;
        if (++halvings > p.max_halvings)
            throw Error("line-search stall");
    }
}

bool near_root(const Jet& jet, const Real& root_tol)
{
    if (jet.value.is_zero())
        return true;
    if (jet.d1.is_zero())
        return false;
    return abs(jet.value) <= root_tol * abs(jet.d1);
}

IterationRecord start_record(const BigComplex& z, const Jet& jet)
{
    IterationRecord rec;
    rec.z = z;
    rec.F = objective_from_jet(jet);
    rec.grad_norm = abs(jet.value) * abs(jet.d1);
    rec.gamma = Real(z.precision());
    return rec;
}

} // namespace

StepResult bnqn_step(const FunctionHandle& h, const BigComplex& z_in, const BNQNParams& p)
{
    const BigComplex z = z_in.with_precision(h.context().bits());
    const Jet jet = h.eval(z);
    const GradHess gh = grad_hess_from_jet(jet);
    IterationRecord rec = start_record(z, jet);
    rec.grad_norm = norm(gh.grad);
    if (rec.grad_norm.is_zero())
        throw Error("stationary point");
    const Direction dir = bnqn_direction(gh, p);
    auto ls = armijo_backtrack(h, z, rec.F, dir, p);
    rec.delta_index = dir.delta_index;
    rec.gamma = ls.gamma;
    rec.halvings = ls.halvings;
    rec.descent = dir.descent;
    rec.minsp_shifted = dir.minsp_shifted;
    rec.kappa_threshold = dir.threshold;
    rec.newton_norm = dir.w_norm;
    rec.step_norm = abs(ls.next - z);
    return {std::move(ls.next), std::move(rec)};
}

Trajectory bnqn_run(const FunctionHandle& h, const BigComplex& z0, const BNQNParams& p)
{
    p.validate();
    Trajectory t;
    BigComplex z = z0.with_precision(h.context().bits());
    const Real radius = p.divergence_factor * (abs(z) + 1L);
    for (int k = 0;; ++k) {
        const Jet jet = h.eval(z);
        const GradHess gh = grad_hess_from_jet(jet);
        IterationRecord rec = start_record(z, jet);
        rec.grad_norm = norm(gh.grad);

        auto finish = [&](Outcome outcome) {
            t.records.push_back(std::move(rec));
            t.outcome = outcome;
            t.terminal = z;
        };
        if (abs(z) > radius) {
            finish(Outcome::Diverged);
            break;
        }
        if (rec.grad_norm.is_zero()) {
            finish(near_root(jet, p.root_tol) ? Outcome::ConvergedRoot : Outcome::ConvergedCritical);
            break;
        }
        if (k >= p.max_iter) {
            finish(near_root(jet, p.root_tol) ? Outcome::ConvergedRoot : Outcome::MaxIter);
            break;
        }
        const Direction dir = bnqn_direction(gh, p);
        rec.newton_norm = dir.w_norm;
        if (dir.w_norm <= p.grad_tol) {
            finish(near_root(jet, p.root_tol) ? Outcome::ConvergedRoot : Outcome::ConvergedCritical);
            break;
        }
        auto ls = armijo_backtrack(h, z, rec.F, dir, p);
        rec.delta_index = dir.delta_index;
        rec.gamma = ls.gamma;
        rec.halvings = ls.halvings;
        rec.descent = dir.descent;
        rec.minsp_shifted = dir.minsp_shifted;
        rec.kappa_threshold = dir.threshold;
        rec.step_norm = abs(ls.next - z);
        t.records.push_back(std::move(rec));
        z = std::move(ls.next);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Comparator iterations

namespace {

BigComplex newton_quotient(const Jet& jet)
{
    if (jet.d1.is_zero())
        throw Error("critical point");
    return jet.value / jet.d1;
}

using StepFn = std::function<BigComplex(const BigComplex& z, const Jet& jet, int k, Real& gamma)>;

Trajectory iterate(const FunctionHandle& h, const BigComplex& z0, const IterationLimits& lim, const StepFn& step)
{
    Trajectory t;
    BigComplex z = z0.with_precision(h.context().bits());
    const Real radius = lim.divergence_factor * (abs(z) + 1L);
    bool settled = false;
    for (int k = 0;; ++k) {
        const Jet jet = h.eval(z);
        IterationRecord rec = start_record(z, jet);
        auto finish = [&](Outcome outcome) {
            t.records.push_back(std::move(rec));
            t.outcome = outcome;
            t.terminal = z;
        };
        if (abs(z) > radius) {
            finish(Outcome::Diverged);
            break;
        }
        if (jet.value.is_zero()) {
            finish(Outcome::ConvergedRoot);
            break;
        }
        if (settled) {
            finish(near_root(jet, lim.root_tol) ? Outcome::ConvergedRoot : Outcome::ConvergedCritical);
            break;
        }
        if (k >= lim.max_iter) {
            finish(near_root(jet, lim.root_tol) ? Outcome::ConvergedRoot : Outcome::MaxIter);
            break;
        }
        BigComplex next;
        try {
            next = step(z, jet, k, rec.gamma);
        } catch (const Error&) {
            finish(Outcome::Unresolved);
            break;
        }
        rec.step_norm = abs(next - z);
        settled = rec.step_norm <= lim.step_tol;
        t.records.push_back(std::move(rec));
        z = std::move(next);
    }
    return t;
}

} // namespace

BigComplex newton_step(const FunctionHandle& h, const BigComplex& z)
{
    return z - newton_quotient(h.eval(z));
}

BigComplex relaxed_newton_step(const FunctionHandle& h, const BigComplex& z, const BigComplex& alpha)
{
    return z - alpha * newton_quotient(h.eval(z));
}

BigComplex nu_step(const FunctionHandle& h, const BigComplex& z)
{
    const Jet jet = h.eval(z);
    const BigComplex den = z * jet.d1;
    if (den.is_zero())
        throw Error("nu map undefined: z g'(z) = 0");
    return z - jet.value / den;
}

IterationLimits IterationLimits::from(const BNQNParams& p)
{
    return {p.max_iter, p.grad_tol, p.root_tol, p.divergence_factor};
}

Trajectory newton_run(const FunctionHandle& h, const BigComplex& z0, const IterationLimits& lim)
{
    return iterate(h, z0, lim, [](const BigComplex& z, const Jet& jet, int, Real& gamma) {
        gamma = Real(1L, z.precision());
        return z - newton_quotient(jet);
    });
}

Trajectory relaxed_run(const FunctionHandle& h, const BigComplex& z0, const BigComplex& alpha,
                       const IterationLimits& lim)
{
    return random_relaxed_run(h, z0, [alpha](int) { return alpha; }, lim);
}

Trajectory random_relaxed_run(const FunctionHandle& h, const BigComplex& z0, const AlphaSource& alpha,
                              const IterationLimits& lim)
{
    return iterate(h, z0, lim, [&alpha](const BigComplex& z, const Jet& jet, int k, Real& gamma) {
        const BigComplex a = alpha(k).with_precision(z.precision());
        gamma = abs(a);
        return z - a * newton_quotient(jet);
    });
}

Trajectory random_relaxed_run(const FunctionHandle& h, const BigComplex& z0, std::uint64_t seed,
                              const IterationLimits& lim)
{
    auto rng = std::make_shared<SeededRng>(seed);
    const PrecisionContext& ctx = h.context();
    AlphaSource alpha = [rng, ctx](int) {
        // Uniform on the disk |alpha - 1| <= 1/2.
        const double r = 0.5 * std::sqrt(rng->uniform());
        const double phase = 2.0 * std::numbers::pi * rng->uniform();
        return BigComplex(1.0 + r * std::cos(phase), r * std::sin(phase), ctx);
    };
    return random_relaxed_run(h, z0, alpha, lim);
}

Trajectory nu_run(const FunctionHandle& h, const BigComplex& z0, const IterationLimits& lim)
{
    return iterate(h, z0, lim, [](const BigComplex& z, const Jet& jet, int, Real& gamma) {
        gamma = Real(1L, z.precision());
        const BigComplex den = z * jet.d1;
        if (den.is_zero())
            throw Error("nu map undefined: z g'(z) = 0");
        return z - jet.value / den;
    });
}

// ---------------------------------------------------------------------------
// Classification and output

std::string to_string(Outcome outcome)
{
    switch (outcome) {
    case Outcome::ConvergedRoot:
        return "converged_root";
    case Outcome::ConvergedCritical:
        return "converged_critical";
    case Outcome::Diverged:
        return "diverged";
    case Outcome::MaxIter:
        return "max_iter";
    case Outcome::Unresolved:
        return "unresolved";
    }
    return "unknown";
}

std::string Label::to_string() const
{
    switch (kind_) {
    case Kind::Root:
        return std::to_string(index_);
    case Kind::CriticalPoint:
        return "critical";
    case Kind::Divergent:
        return "divergent";
    case Kind::Unmatched:
        return "unmatched";
    }
    return "unmatched";
}

Label Label::parse(const std::string& text)
{
    if (text == "critical")
        return critical();
    if (text == "divergent")
        return divergent();
    if (text == "unmatched")
        return unmatched();
    std::size_t used = 0;
    const int index = std::stoi(text, &used);
    if (used != text.size() || index < 0)
        throw Error("bad label '" + text + "'");
    return root(index);
}

Label classify_limit(const Trajectory& t, const std::vector<BigComplex>& roots, const Real& tol)
{
    if (!(tol > 0.0))
        throw Error("classification tolerance must be positive");
    if (t.outcome == Outcome::Diverged)
        return Label::divergent();
    if (t.outcome == Outcome::ConvergedCritical)
        return Label::critical();
    if (t.outcome == Outcome::Unresolved)
        return Label::unmatched();
    int found = -1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (abs(t.terminal - roots[i]) <= tol) {
            if (found >= 0)
                throw Error("ambiguous match");
            found = static_cast<int>(i);
        }
    }
    return found >= 0 ? Label::root(found) : Label::unmatched();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t, int digits)
{
    out << "iter,x,y,F,grad_norm,delta_index,gamma,halvings\n";
    for (std::size_t k = 0; k < t.records.size(); ++k) {
        const auto& r = t.records[k];
        out << k << ',' << r.z.re().to_string(digits) << ',' << r.z.im().to_string(digits) << ','
            << r.F.to_string(digits) << ',' << r.grad_norm.to_string(digits) << ',' << r.delta_index << ','
            << r.gamma.to_string(digits) << ',' << r.halvings << '\n';
    }
}

} // namespace xibasin
