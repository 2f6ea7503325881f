// The de Bruijn-Newman heat-flow family H_t and its kernel Phi.

#include "xibasin/functions.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace xibasin {

namespace {

struct GaussLegendreRule
{
    std::vector<Real> nodes;   // on [-1, 1]
    std::vector<Real> weights;
};

// Legendre P_n and P_{n-1} at x by the three-term recurrence.
std::pair<Real, Real> legendre_pair(int n, const Real& x)
{
    Real p0(1L, x.precision());
    Real p1 = x;
    for (int k = 2; k <= n; ++k) {
        Real p2 = (x * p1 * static_cast<long>(2 * k - 1) - p0 * static_cast<long>(k - 1)) / static_cast<long>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return {std::move(p1), std::move(p0)};
}

GaussLegendreRule compute_rule(int n, mpfr_prec_t bits)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const Real tol = Real(1L, bits) / pow(Real(2L, bits), static_cast<long>(bits - 8));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), bits);
        Real dp(bits);
        for (int iter = 0; iter < 200; ++iter) {
            auto [pn, pm] = legendre_pair(n, x);
            dp = (x * pn - pm) * static_cast<long>(n) / (x * x - 1L);
            const Real dx = pn / dp;
            x -= dx;
            if (abs(dx) < tol)
                break;
        }
        auto [pn, pm] = legendre_pair(n, x);
        dp = (x * pn - pm) * static_cast<long>(n) / (x * x - 1L);
        const Real w = Real(2L, bits) / ((1L - x * x) * dp * dp);
        rule.nodes[i] = x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = -x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre(int n, mpfr_prec_t bits)
{
    static std::mutex mutex;
    static std::map<std::pair<int, mpfr_prec_t>, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, bits);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, compute_rule(n, bits)).first;
    return it->second;
}

/// Per node u_i on [0, U]: weight_i * Phi(u_i) * e^{t u_i^2}. Independent of z, so built once per level.
struct KernelLevel
{
    std::vector<Real> u;
    std::vector<Real> weighted_kernel;
};

class HeatFlowTable
{
  public:
    HeatFlowTable(const HeatFlowSpec& spec, const PrecisionContext& ctx)
      : spec_(spec)
      , ctx_(ctx)
      , t_(Real::parse(spec.t, ctx))
      , cutoff_(spec.upper_cutoff > 0 ? Real(spec.upper_cutoff, ctx)
                                       : Real(heat_flow_cutoff(ctx), ctx))
    {
    }

    const KernelLevel& level(int n)
    {
        std::lock_guard lock(mutex_);
        auto it = levels_.find(n);
        if (it != levels_.end())
            return it->second;
        const mpfr_prec_t bits = ctx_.bits();
        const auto& rule = gauss_legendre(n, bits);
        KernelLevel lvl;
        const Real half = cutoff_ / 2L;
        for (int i = 0; i < n; ++i) {
            Real u = half * (rule.nodes[i] + 1L);
            const int terms = spec_.series_terms > 0 ? spec_.series_terms : phi_terms_needed(u.to_double(), ctx_);
            Real k = rule.weights[i] * half * phi(u, terms, ctx_) * exp(t_ * u * u);
            lvl.u.push_back(std::move(u));
            lvl.weighted_kernel.push_back(std::move(k));
        }
        return levels_.emplace(n, std::move(lvl)).first->second;
    }

    const PrecisionContext& context() const { return ctx_; }
    int initial_nodes() const { return spec_.quadrature_nodes; }

  private:
    HeatFlowSpec spec_;
    PrecisionContext ctx_;
    Real t_;
    Real cutoff_;
    std::mutex mutex_;
    std::map<int, KernelLevel> levels_;
};

Jet integrate(const KernelLevel& lvl, const BigComplex& z)
{
    const mpfr_prec_t bits = z.precision();
    BigComplex g(bits);
    BigComplex d1(bits);
    BigComplex d2(bits);
    for (std::size_t i = 0; i < lvl.u.size(); ++i) {
        const Real& u = lvl.u[i];
        const BigComplex zu = z * u;
        const BigComplex c = cos(zu);
        const BigComplex s = sin(zu);
        const Real& k = lvl.weighted_kernel[i];
        g += c * k;
        d1 -= s * (k * u);
        d2 -= c * (k * u * u);
    }
    return {std::move(g), std::move(d1), std::move(d2)};
}

Real jet_distance(const Jet& a, const Jet& b)
{
    return max(max(abs(a.value - b.value), abs(a.d1 - b.d1)), abs(a.d2 - b.d2));
}

} // namespace

Real phi(const Real& u, int terms, const PrecisionContext& ctx)
{
    if (u.sign() < 0)
        throw Error("phi: u must be non-negative");
    if (terms < 1)
        throw Error("phi: need at least one term");
    const mpfr_prec_t bits = ctx.bits();
    const Real uu = u.with_precision(bits);
    const Real pi = Real::pi(bits);
    const Real e4 = exp(uu * 4L);
    const Real e5 = exp(uu * 5L);
    const Real e9 = exp(uu * 9L);
    // exp(-pi n^2 e^{4u}) = q^{n^2}, stepped as q^{(n+1)^2} = q^{n^2} q^{2n+1}.
    const Real q = exp(-(pi * e4));
    const Real q2 = q * q;
    Real qn = q;             // q^{n^2}
    Real step = q * q2;      // q^{2n+1} for n = 1
    Real sum(bits);
    for (long n = 1; n <= terms; ++n) {
        const Real n2(n * n, bits);
        sum += (pi * pi * n2 * n2 * e9 * 2L - pi * n2 * e5 * 3L) * qn;
        qn *= step;
        step *= q2;
    }
    return sum;
}

int phi_terms_needed(double u, const PrecisionContext& ctx)
{
    const double target = (ctx.digits() + ctx.guard_digits()) * std::log(10.0) + 5.0;
    const double e4 = std::exp(4.0 * u);
    for (int n = 1; n < 100000; ++n) {
        const double m = n + 1.0;
        const double log_next = std::log(2.0 * std::numbers::pi * std::numbers::pi) + 4.0 * std::log(m) + 9.0 * u
                                - std::numbers::pi * m * m * e4;
        if (log_next < -target)
            return n;
    }
    return 100000;
}

double heat_flow_cutoff(const PrecisionContext& ctx)
{
    const double rhs = (ctx.digits() + ctx.guard_digits()) * std::log(10.0) + 10.0;
    return 0.25 * std::log(rhs / std::numbers::pi);
}

FunctionHandle ht_handle(const HeatFlowSpec& spec, const PrecisionContext& ctx)
{
    if (Real::parse(spec.t, ctx) > 0.5)
        throw Error("heat-flow time t must not exceed 1/2");
    if (spec.quadrature_nodes < 2)
        throw Error("heat-flow quadrature needs at least 2 nodes");
    if (spec.series_terms < 0 || spec.upper_cutoff < 0)
        throw Error("heat-flow series terms and cutoff must be non-negative");
    auto table = std::make_shared<HeatFlowTable>(spec, ctx);
    auto jet = [table](const BigComplex& z) {
        const PrecisionContext& c = table->context();
        const Real tol = Real::pow10(-(c.digits() / 2), c.bits());
        int n = table->initial_nodes();
        Jet previous = integrate(table->level(n), z);
        for (int round = 0; round < 7; ++round) {
            n *= 2;
            Jet next = integrate(table->level(n), z);
            if (jet_distance(previous, next) <= tol)
                return next;
            previous = std::move(next);
        }
        throw Error("quadrature failure");
    };
    return FunctionHandle("ht", ctx, jet, {});
}

} // namespace xibasin
