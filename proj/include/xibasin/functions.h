#ifndef XIBASIN_FUNCTIONS_H
#define XIBASIN_FUNCTIONS_H

#include "xibasin/numerics.h"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace xibasin {

/// Value and first two derivatives of g at a point.
struct Jet
{
    BigComplex value;
    BigComplex d1;
    BigComplex d2;
};

/// Evaluator bundle for one meromorphic target g.
///
/// Handles are immutable and cheap to copy; evaluation is reentrant. The
/// argument is rounded to the handle's precision before evaluation.
class FunctionHandle
{
  public:
    using JetFn = std::function<Jet(const BigComplex&)>;
    using ValueFn = std::function<BigComplex(const BigComplex&)>;
    using PoleFn = std::function<bool(const BigComplex&)>;

    FunctionHandle(std::string name, PrecisionContext ctx, JetFn jet, ValueFn value, PoleFn is_pole = {});

    const std::string& name() const { return name_; }
    const PrecisionContext& context() const { return ctx_; }

    Jet eval(const BigComplex& z) const;
    /// g(z) alone; cheaper than eval() for targets whose derivatives are costly.
    BigComplex value(const BigComplex& z) const;
    bool is_pole(const BigComplex& z) const;

  private:
    std::string name_;
    PrecisionContext ctx_;
    JetFn jet_;
    ValueFn value_;
    PoleFn is_pole_;
};

struct PolynomialSpec
{
    /// Monic-times-leading product form when non-empty.
    std::vector<BigComplex> roots;
    /// Ascending coefficients c0 + c1 z + ... when roots is empty.
    std::vector<BigComplex> coefficients;

    static PolynomialSpec from_roots(std::vector<BigComplex> roots);
    static PolynomialSpec from_coefficients(std::vector<BigComplex> coefficients);
};

/// Polynomial target. Root-form specs are evaluated by the product rule, coefficient
/// specs by Horner's scheme carrying first and second derivatives.
FunctionHandle poly_handle(const PolynomialSpec& spec, const PrecisionContext& ctx);

/// g = sin z.
FunctionHandle sin_handle(const PrecisionContext& ctx);

/// Riemann zeta by Euler-Maclaurin summation; the reflection formula is used for Re s < 0.
/// Throws Error("simple pole") at s = 1.
BigComplex zeta(const BigComplex& s, const PrecisionContext& ctx);

/// (s - 1) * zeta(s), analytic everywhere including s = 1 where it equals 1.
BigComplex zeta_times_s_minus_one(const BigComplex& s, const PrecisionContext& ctx);

/// Gamma by the Stirling series after upward argument shift; reflection for Re s < 1/2.
/// Throws Error("gamma pole") at non-positive integers.
BigComplex gamma(const BigComplex& s, const PrecisionContext& ctx);

/// Riemann xi, xi(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s).
BigComplex xi(const BigComplex& s, const PrecisionContext& ctx);

/// Handle for xi. Derivatives are central differences taken at 1.5x the working
/// digits with step 10^(-digits/3).
FunctionHandle xi_handle(const PrecisionContext& ctx);

/// The first eight nontrivial zeros to 11 decimals, ordered +14.13, -14.13, +21.02, -21.02, ...
std::vector<BigComplex> first_eight_xi_zeros(const PrecisionContext& ctx);

/// Partial sum of the de Bruijn-Newman kernel
/// Phi(u) = sum_n (2 pi^2 n^4 e^{9u} - 3 pi n^2 e^{5u}) exp(-pi n^2 e^{4u}) over n = 1..terms.
Real phi(const Real& u, int terms, const PrecisionContext& ctx);

/// Number of Phi terms whose omitted tail is below 10^-(digits + guard).
int phi_terms_needed(double u, const PrecisionContext& ctx);

struct HeatFlowSpec
{
    /// Heat-flow time; must not exceed 1/2.
    std::string t = "0";
    /// Phi series length; 0 selects it per node from the tail bound.
    int series_terms = 0;
    /// Integration cutoff U; 0 solves pi e^{4U} >= digits ln 10 + 10.
    double upper_cutoff = 0.0;
    /// Initial Gauss-Legendre node count, doubled until successive results agree.
    int quadrature_nodes = 32;
};

double heat_flow_cutoff(const PrecisionContext& ctx);

/// H_t(z) = int_0^U Phi(u) e^{t u^2} cos(z u) du with derivatives from the differentiated integrand.
/// Throws Error("quadrature failure") if node doubling does not settle to 10^(-digits/2).
FunctionHandle ht_handle(const HeatFlowSpec& spec, const PrecisionContext& ctx);

} // namespace xibasin

#endif
