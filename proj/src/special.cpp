// Zeta, Gamma and xi at arbitrary precision.

#include "bernoulli.h"
#include "xibasin/functions.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace xibasin {

namespace {

int bits_to_digits(mpfr_prec_t bits)
{
    return static_cast<int>(static_cast<double>(bits) / 3.3219280948873623);
}

// Extra bits covering magnitude growth of intermediate quantities at large |s|.
mpfr_prec_t size_guard(const BigComplex& s)
{
    const double m = std::abs(s.re().to_double()) + std::abs(s.im().to_double()) + 2.0;
    return static_cast<mpfr_prec_t>(2.0 * std::log2(m)) + 16;
}

bool is_nonpositive_integer(const BigComplex& s)
{
    return s.im().is_zero() && s.re() <= 0.0 && floor(s.re()) == s.re();
}

std::vector<int> smallest_prime_factors(long n)
{
    std::vector<int> spf(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[i] != 0)
            continue;
        for (long j = i; j <= n; j += i)
            if (spf[j] == 0)
                spf[j] = static_cast<int>(i);
    }
    return spf;
}

/// zeta(s) = partial + boundary / (s - 1), with boundary = N^(1-s).
struct EulerMaclaurin
{
    BigComplex partial;
    BigComplex boundary;
};

EulerMaclaurin euler_maclaurin(const BigComplex& s_in, mpfr_prec_t bits)
{
    const BigComplex s = s_in.with_precision(bits);
    const int digits = bits_to_digits(bits);
    const Real eps = Real::pow10(-digits, bits);
    const double t = std::abs(s.im().to_double());
    long n_terms = std::max<long>({digits, static_cast<long>(std::ceil(0.7 * t)), 10});

    for (int attempt = 0; attempt < 8; ++attempt, n_terms *= 2) {
        const long N = n_terms;
        const auto spf = smallest_prime_factors(N);
        // n^{-s} by complete multiplicativity; only primes need a transcendental evaluation.
        std::vector<BigComplex> pw(static_cast<std::size_t>(N) + 1);
        pw[1] = BigComplex(Real(1L, bits), Real(bits));
        for (long n = 2; n <= N; ++n) {
            const int p = spf[n];
            if (p == n) {
                Real ln(bits);
                mpfr_log_ui(ln.get(), static_cast<unsigned long>(n), MPFR_RNDN);
                pw[n] = exp(-(s * ln));
            } else {
                pw[n] = pw[p] * pw[n / p];
            }
        }
        BigComplex sum(bits);
        for (long n = 1; n < N; ++n)
            sum += pw[n];
        sum += pw[N] / 2L;

        const Real n_real(N, bits);
        const Real n_sq = n_real * n_real;
        BigComplex rising = s * pw[N] / n_real; // s (s+1) ... (s+2k-2) N^{-s-2k+1} for k = 1
        Real previous = Real::infinity(bits);
        bool converged = false;
        for (int k = 1; k < 4 * digits + 100; ++k) {
            const BigComplex term = rising * detail::bernoulli_over_factorial(k, bits);
            sum += term;
            const Real size = abs(term);
            const Real scale = max(Real(1L, bits), abs(sum));
            if (size < eps * scale) {
                converged = true;
                break;
            }
            if (k > 2 && size > previous)
                break; // asymptotic series turned; retry with a larger N
            previous = size;
            rising = rising * ((s + static_cast<long>(2 * k - 1)) * (s + static_cast<long>(2 * k))) / n_sq;
        }
        if (converged)
            return {std::move(sum), pw[N] * n_real};
    }
    throw Error("zeta: Euler-Maclaurin tail did not converge");
}

BigComplex log_gamma_stirling(const BigComplex& w, mpfr_prec_t bits)
{
    const int digits = bits_to_digits(bits);
    const Real eps = Real::pow10(-digits, bits);
    const Real two_pi = Real::pi(bits) * 2L;
    BigComplex out = (w - Real::parse("0.5", bits)) * log(w) - w + log(two_pi) / 2L;
    const BigComplex inv = BigComplex(Real(1L, bits), Real(bits)) / w;
    const BigComplex inv_sq = inv * inv;
    BigComplex wpow = inv;
    Real previous = Real::infinity(bits);
    for (int k = 1; k < 4 * digits + 100; ++k) {
        Real coeff = detail::bernoulli_even(k, bits) / static_cast<long>(2 * k * (2 * k - 1));
        const BigComplex term = wpow * coeff;
        out += term;
        const Real size = abs(term);
        if (size < eps)
            return out;
        if (k > 2 && size > previous)
            throw Error("gamma: Stirling series diverged before reaching tolerance");
        previous = size;
        wpow *= inv_sq;
    }
    throw Error("gamma: Stirling series did not converge");
}

BigComplex gamma_at_bits(const BigComplex& s_in, mpfr_prec_t bits)
{
    const BigComplex s = s_in.with_precision(bits);
    if (is_nonpositive_integer(s))
        throw Error("gamma pole");
    const Real pi = Real::pi(bits);
    if (s.re() < 0.5) {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        const BigComplex reflected = gamma_at_bits(1L - s, bits);
        return BigComplex(pi) / (sin(s * pi) * reflected);
    }
    const Real radius(static_cast<long>(bits_to_digits(bits)), bits);
    long shift = 0;
    if (abs(s) < radius)
        shift = std::max(0L, static_cast<long>(std::ceil((radius - s.re()).to_double())));
    BigComplex product(Real(1L, bits), Real(bits));
    for (long j = 0; j < shift; ++j)
        product *= s + j;
    return exp(log_gamma_stirling(s + shift, bits)) / product;
}

} // namespace

BigComplex zeta_times_s_minus_one(const BigComplex& s, const PrecisionContext& ctx)
{
    const mpfr_prec_t bits = ctx.bits() + size_guard(s);
    const BigComplex sw = s.with_precision(bits);
    auto em = euler_maclaurin(sw, bits);
    return ((sw - 1L) * em.partial + em.boundary).with_precision(ctx.bits());
}

BigComplex zeta(const BigComplex& s, const PrecisionContext& ctx)
{
    if (s.im().is_zero() && s.re() == 1.0)
        throw Error("simple pole");
    const mpfr_prec_t bits = ctx.bits() + size_guard(s);
    const BigComplex sw = s.with_precision(bits);
    if (sw.re() < 0.0) {
        // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
        const Real pi = Real::pi(bits);
        const BigComplex one_minus = 1L - sw;
        const BigComplex two_pow = exp(sw * log(Real(2L, bits)));
        const BigComplex pi_pow = exp((sw - 1L) * log(pi));
        const BigComplex sine = sin(sw * pi / 2L);
        const PrecisionContext inner(std::max(15, bits_to_digits(bits)), 0);
        const BigComplex out = two_pow * pi_pow * sine * gamma_at_bits(one_minus, bits) * zeta(one_minus, inner);
        return out.with_precision(ctx.bits());
    }
    auto em = euler_maclaurin(sw, bits);
    return (em.partial + em.boundary / (sw - 1L)).with_precision(ctx.bits());
}

BigComplex gamma(const BigComplex& s, const PrecisionContext& ctx)
{
    return gamma_at_bits(s, ctx.bits() + size_guard(s)).with_precision(ctx.bits());
}

BigComplex xi(const BigComplex& s, const PrecisionContext& ctx)
{
    const mpfr_prec_t bits = ctx.bits() + size_guard(s);
    BigComplex w = s.with_precision(bits);
    // xi(s) = xi(1 - s); evaluate on the right half where the summation is best conditioned.
    if (w.re() < 0.5)
        w = 1L - w;
    const BigComplex half_w = w / 2L;
    const Real log_pi = log(Real::pi(bits));
    const BigComplex pi_pow = exp(-(half_w * log_pi));
    const BigComplex g = gamma_at_bits(half_w, bits);
    auto em = euler_maclaurin(w, bits);
    const BigComplex z1 = (w - 1L) * em.partial + em.boundary; // (s-1) zeta(s), finite at s = 1
    return (half_w * pi_pow * g * z1).with_precision(ctx.bits());
}

FunctionHandle xi_handle(const PrecisionContext& ctx)
{
    const PrecisionContext fine = ctx.scaled(1.5).with_guard(ctx.guard_digits());
    const mpfr_prec_t bits = ctx.bits();
    const Real h = Real::pow10(-(ctx.digits() / 3), fine.bits());
    auto jet = [fine, bits, h](const BigComplex& z) {
        const BigComplex zf = z.with_precision(fine.bits());
        const BigComplex g0 = xi(zf, fine);
        const BigComplex gp = xi(zf + h, fine);
        const BigComplex gm = xi(zf - h, fine);
        BigComplex d1 = (gp - gm) / (h * 2L);
        BigComplex d2 = (gp - g0 * 2L + gm) / (h * h);
        return Jet{g0.with_precision(bits), d1.with_precision(bits), d2.with_precision(bits)};
    };
    auto value = [ctx](const BigComplex& z) { return xi(z, ctx); };
    return FunctionHandle("xi", ctx, jet, value);
}

} // namespace xibasin
