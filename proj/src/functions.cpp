#include "xibasin/functions.h"

#include <utility>

namespace xibasin {

FunctionHandle::FunctionHandle(std::string name, PrecisionContext ctx, JetFn jet, ValueFn value, PoleFn is_pole)
  : name_(std::move(name))
  , ctx_(ctx)
  , jet_(std::move(jet))
  , value_(std::move(value))
  , is_pole_(std::move(is_pole))
{
    if (!value_ && jet_)
        value_ = [jet = jet_](const BigComplex& z) { return jet(z).value; };
}

Jet FunctionHandle::eval(const BigComplex& z) const
{
    if (is_pole(z))
        throw Error("pole evaluation");
    return jet_(z.with_precision(ctx_.bits()));
}

BigComplex FunctionHandle::value(const BigComplex& z) const
{
    if (is_pole(z))
        return BigComplex::infinity(ctx_.bits());
    return value_(z.with_precision(ctx_.bits()));
}

bool FunctionHandle::is_pole(const BigComplex& z) const
{
    return is_pole_ ? is_pole_(z) : false;
}

PolynomialSpec PolynomialSpec::from_roots(std::vector<BigComplex> roots)
{
    PolynomialSpec spec;
    spec.roots = std::move(roots);
    return spec;
}

PolynomialSpec PolynomialSpec::from_coefficients(std::vector<BigComplex> coefficients)
{
    PolynomialSpec spec;
    spec.coefficients = std::move(coefficients);
    return spec;
}

FunctionHandle poly_handle(const PolynomialSpec& spec, const PrecisionContext& ctx)
{
    const mpfr_prec_t bits = ctx.bits();
    if (!spec.roots.empty()) {
        std::vector<BigComplex> roots;
        for (const auto& r : spec.roots)
            roots.push_back(r.with_precision(bits));
        auto jet = [roots, bits](const BigComplex& z) {
            BigComplex p(Real(1L, bits), Real(bits));
            BigComplex p1(bits);
            BigComplex p2(bits);
            for (const auto& r : roots) {
                const BigComplex f = z - r;
                p2 = p2 * f + p1 * 2L;
                p1 = p1 * f + p;
                p = p * f;
            }
            return Jet{std::move(p), std::move(p1), std::move(p2)};
        };
        auto value = [roots, bits](const BigComplex& z) {
            BigComplex p(Real(1L, bits), Real(bits));
            for (const auto& r : roots)
                p *= z - r;
            return p;
        };
        return FunctionHandle("poly", ctx, jet, value);
    }

    if (spec.coefficients.size() < 2)
        throw Error("polynomial needs degree >= 1 (empty root and coefficient lists)");
    if (spec.coefficients.back().is_zero())
        throw Error("polynomial leading coefficient is zero");
    std::vector<BigComplex> coeffs;
    for (const auto& c : spec.coefficients)
        coeffs.push_back(c.with_precision(bits));
    auto jet = [coeffs, bits](const BigComplex& z) {
        BigComplex p = coeffs.back();
        BigComplex p1(bits);
        BigComplex p2(bits);
        for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
            p2 = p2 * z + p1 * 2L;
            p1 = p1 * z + p;
            p = p * z + coeffs[k];
        }
        return Jet{std::move(p), std::move(p1), std::move(p2)};
    };
    return FunctionHandle("poly", ctx, jet, {});
}

FunctionHandle sin_handle(const PrecisionContext& ctx)
{
    auto jet = [](const BigComplex& z) {
        BigComplex s = sin(z);
        BigComplex c = cos(z);
        BigComplex d2 = -s;
        return Jet{std::move(s), std::move(c), std::move(d2)};
    };
    auto value = [](const BigComplex& z) { return sin(z); };
    return FunctionHandle("sin", ctx, jet, value);
}

std::vector<BigComplex> first_eight_xi_zeros(const PrecisionContext& ctx)
{
    const char* ordinates[] = {"14.13472514173", "21.02203963877", "25.01085758014", "30.42487612585"};
    std::vector<BigComplex> out;
    const Real half = Real::parse("0.5", ctx);
    for (const char* t : ordinates) {
        const Real y = Real::parse(t, ctx);
        out.emplace_back(half, y);
        out.emplace_back(half, -y);
    }
    return out;
}

} // namespace xibasin
