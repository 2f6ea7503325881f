#include "xibasin/numerics.h"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

namespace xibasin {

namespace {

mpfr_prec_t max_prec(const Real& a, const Real& b)
{
    return std::max(a.precision(), b.precision());
}

std::string trim(std::string_view text)
{
    std::size_t lo = 0;
    std::size_t hi = text.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo])))
        ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1])))
        --hi;
    return std::string(text.substr(lo, hi - lo));
}

} // namespace

// ---------------------------------------------------------------------------
// PrecisionContext

PrecisionContext::PrecisionContext(int digits, int guard_digits)
  : digits_(digits)
  , guard_digits_(guard_digits)
{
    if (digits < 15)
        throw Error("precision context requires at least 15 digits, got " + std::to_string(digits));
    if (guard_digits < 0)
        throw Error("guard digits must be non-negative");
}

mpfr_prec_t digits_to_bits(int digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 1;
}

mpfr_prec_t PrecisionContext::bits() const
{
    return digits_to_bits(digits_ + guard_digits_);
}

PrecisionContext PrecisionContext::scaled(double factor) const
{
    return PrecisionContext(static_cast<int>(std::ceil(digits_ * factor)), guard_digits_);
}

PrecisionContext PrecisionContext::with_guard(int guard_digits) const
{
    return PrecisionContext(digits_, guard_digits);
}

// ---------------------------------------------------------------------------
// Real

Real::Real()
{
    mpfr_init2(v_, 64);
    mpfr_set_zero(v_, 1);
}

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, mpfr_prec_t bits)
{
    const std::string s = trim(text);
    if (s.empty())
        throw Error("cannot parse empty string as a real number");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        Real num = parse(std::string_view(s).substr(0, slash), bits + 32);
        Real den = parse(std::string_view(s).substr(slash + 1), bits + 32);
        if (den.is_zero())
            throw Error("zero denominator in '" + s + "'");
        return (num / den).with_precision(bits);
    }
    Real r(bits);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == s.c_str() || end != s.c_str() + s.size())
        throw Error("cannot parse '" + s + "' as a real number");
    if (!r.is_finite())
        throw Error("non-finite value '" + s + "'");
    return r;
}

Real Real::infinity(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_set_inf(r.v_, 1);
    return r;
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::pow10(long exponent, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(std::labs(exponent)), MPFR_RNDN);
    if (exponent < 0)
        mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
}

Real::Real(const Real& other)
{
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    v_[0] = other.v_[0];
    other.v_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other)
{
    if (this == &other)
        return *this;
    if (v_[0]._mpfr_d == nullptr)
        mpfr_init2(v_, other.precision());
    else
        mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    std::swap(v_[0], other.v_[0]);
    return *this;
}

Real::~Real()
{
    if (v_[0]._mpfr_d != nullptr)
        mpfr_clear(v_);
}

Real Real::with_precision(mpfr_prec_t bits) const
{
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string Real::to_fixed(int decimals) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", std::max(decimals, 0), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

long Real::exponent() const
{
    if (!is_finite() || is_zero())
        return LONG_MIN / 4;
    return mpfr_get_exp(v_);
}

namespace {

void raise_to(Real& x, mpfr_prec_t bits)
{
    if (x.precision() < bits)
        mpfr_prec_round(x.get(), bits, MPFR_RNDN);
}

} // namespace

Real& Real::operator+=(const Real& rhs)
{
    raise_to(*this, rhs.precision());
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs)
{
    raise_to(*this, rhs.precision());
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs)
{
    raise_to(*this, rhs.precision());
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs)
{
    raise_to(*this, rhs.precision());
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long rhs)
{
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long rhs)
{
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& x)
{
    Real r(x.precision());
    mpfr_neg(r.v_, x.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b)
{
    Real r(max_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r(max_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r(max_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    Real r(max_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b)
{
    Real r(a.precision());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long b)
{
    Real r(a.precision());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(long a, const Real& b)
{
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, long b)
{
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b)
{
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(long a, const Real& b)
{
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, double b)
{
    Real r(a.precision());
    mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, double b)
{
    Real r(a.precision());
    mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b)
{
    if (mpfr_unordered_p(a.v_, b.v_))
        return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b)
{
    if (mpfr_nan_p(a.v_) || std::isnan(b))
        return std::partial_ordering::unordered;
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define XIBASIN_UNARY(name, fn)                                                                     \
    Real name(const Real& x)                                                                        \
    {                                                                                               \
        Real r(x.precision());                                                                      \
        fn(r.get(), x.get(), MPFR_RNDN);                                                            \
        return r;                                                                                   \
    }

XIBASIN_UNARY(abs, mpfr_abs)
XIBASIN_UNARY(sqrt, mpfr_sqrt)
XIBASIN_UNARY(exp, mpfr_exp)
XIBASIN_UNARY(log, mpfr_log)
XIBASIN_UNARY(log10, mpfr_log10)
XIBASIN_UNARY(sin, mpfr_sin)
XIBASIN_UNARY(cos, mpfr_cos)
XIBASIN_UNARY(sinh, mpfr_sinh)
XIBASIN_UNARY(cosh, mpfr_cosh)

#undef XIBASIN_UNARY

Real floor(const Real& x)
{
    Real r(x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

std::pair<Real, Real> sin_cos(const Real& x)
{
    Real s(x.precision());
    Real c(x.precision());
    mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
    return {std::move(s), std::move(c)};
}

Real atan2(const Real& y, const Real& x)
{
    Real r(max_prec(y, x));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& exponent)
{
    Real r(max_prec(base, exponent));
    mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, long exponent)
{
    Real r(base.precision());
    mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y)
{
    Real r(max_prec(x, y));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real min(const Real& a, const Real& b)
{
    return b < a ? b : a;
}

Real max(const Real& a, const Real& b)
{
    return a < b ? b : a;
}

// ---------------------------------------------------------------------------
// BigComplex

BigComplex::BigComplex(Real re, Real im)
  : re_(std::move(re))
  , im_(std::move(im))
{
}

BigComplex::BigComplex(Real re)
  : re_(std::move(re))
  , im_(re_.precision())
{
}

BigComplex::BigComplex(double re, double im, const PrecisionContext& ctx)
  : re_(re, ctx)
  , im_(im, ctx)
{
}

BigComplex BigComplex::infinity(mpfr_prec_t bits)
{
    BigComplex z(Real::infinity(bits), Real(bits));
    z.infinite_ = true;
    return z;
}

BigComplex BigComplex::parse(std::string_view text, mpfr_prec_t bits)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw Error("cannot parse empty string as a complex number");
    if (s.front() == '(' && s.back() == ')')
        s = s.substr(1, s.size() - 2);
    const auto comma = s.find(',');
    if (comma != std::string::npos)
        return {Real::parse(s.substr(0, comma), bits), Real::parse(s.substr(comma + 1), bits)};
    if (s.back() != 'i')
        return BigComplex(Real::parse(s, bits));
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [&](std::string t) {
        if (t.empty() || t == "+")
            return Real(1L, bits);
        if (t == "-")
            return Real(-1L, bits);
        return Real::parse(t, bits);
    };
    if (split == std::string::npos)
        return {Real(bits), imag_part(s)};
    return {Real::parse(s.substr(0, split), bits), imag_part(s.substr(split))};
}

mpfr_prec_t BigComplex::precision() const
{
    return std::max(re_.precision(), im_.precision());
}

BigComplex BigComplex::with_precision(mpfr_prec_t bits) const
{
    BigComplex z(re_.with_precision(bits), im_.with_precision(bits));
    z.infinite_ = infinite_;
    return z;
}

std::string BigComplex::to_string(int digits) const
{
    if (infinite_)
        return "inf";
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs)
{
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs)
{
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs)
{
    *this = *this * rhs;
    return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs)
{
    *this = *this / rhs;
    return *this;
}

BigComplex& BigComplex::operator*=(const Real& rhs)
{
    re_ *= rhs;
    im_ *= rhs;
    return *this;
}

BigComplex& BigComplex::operator/=(const Real& rhs)
{
    re_ /= rhs;
    im_ /= rhs;
    return *this;
}

BigComplex operator-(const BigComplex& z)
{
    return {-z.re_, -z.im_};
}

BigComplex operator+(const BigComplex& a, const BigComplex& b)
{
    return {a.re_ + b.re_, a.im_ + b.im_};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b)
{
    return {a.re_ - b.re_, a.im_ - b.im_};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b)
{
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    const Real den = b.re_ * b.re_ + b.im_ * b.im_;
    if (den.is_zero())
        throw Error("complex division by zero");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
}

BigComplex operator*(const BigComplex& a, const Real& b)
{
    return {a.re_ * b, a.im_ * b};
}

BigComplex operator/(const BigComplex& a, const Real& b)
{
    return {a.re_ / b, a.im_ / b};
}

BigComplex operator+(const BigComplex& a, const Real& b)
{
    return {a.re_ + b, a.im_};
}

BigComplex operator-(const BigComplex& a, const Real& b)
{
    return {a.re_ - b, a.im_};
}

BigComplex operator-(const Real& a, const BigComplex& b)
{
    return {a - b.re_, -b.im_};
}

BigComplex operator*(const BigComplex& a, long b)
{
    return {a.re_ * b, a.im_ * b};
}

BigComplex operator/(const BigComplex& a, long b)
{
    return {a.re_ / b, a.im_ / b};
}

BigComplex operator+(const BigComplex& a, long b)
{
    return {a.re_ + b, a.im_};
}

BigComplex operator-(const BigComplex& a, long b)
{
    return {a.re_ - b, a.im_};
}

BigComplex operator-(long a, const BigComplex& b)
{
    return {a - b.re_, -b.im_};
}

bool operator==(const BigComplex& a, const BigComplex& b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.re_ == b.re_ && a.im_ == b.im_;
}

Real abs2(const BigComplex& z)
{
    if (z.is_infinite() || !z.re().is_finite() || !z.im().is_finite())
        throw Error("nonfinite operand");
    return z.re() * z.re() + z.im() * z.im();
}

Real abs(const BigComplex& z)
{
    if (z.is_infinite())
        throw Error("nonfinite operand");
    return hypot(z.re(), z.im());
}

Real arg(const BigComplex& z)
{
    return atan2(z.im(), z.re());
}

BigComplex conj(const BigComplex& z)
{
    return {z.re(), -z.im()};
}

BigComplex mul_i(const BigComplex& z)
{
    return {-z.im(), z.re()};
}

BigComplex exp(const BigComplex& z)
{
    const Real m = exp(z.re());
    auto [s, c] = sin_cos(z.im());
    return {m * c, m * s};
}

BigComplex log(const BigComplex& z)
{
    if (z.is_zero())
        throw Error("logarithm of zero");
    return {log(abs(z)), arg(z)};
}

BigComplex sin(const BigComplex& z)
{
    auto [s, c] = sin_cos(z.re());
    return {s * cosh(z.im()), c * sinh(z.im())};
}

BigComplex cos(const BigComplex& z)
{
    auto [s, c] = sin_cos(z.re());
    return {c * cosh(z.im()), -(s * sinh(z.im()))};
}

BigComplex pow(const BigComplex& base, const BigComplex& exponent)
{
    if (base.is_zero()) {
        if (exponent.re().sign() > 0)
            return BigComplex(base.precision());
        throw Error("zero raised to a non-positive power");
    }
    return exp(exponent * log(base));
}

BigComplex sqrt(const BigComplex& z)
{
    if (z.is_zero())
        return z;
    const Real r = abs(z);
    Real re = sqrt((r + z.re()) / 2L);
    Real im = sqrt((r - z.re()) / 2L);
    if (z.im().sign() < 0)
        im = -im;
    return {std::move(re), std::move(im)};
}

// ---------------------------------------------------------------------------
// 2x2 symmetric linear algebra

Real dot(const Vec2& a, const Vec2& b)
{
    return a.x * b.x + a.y * b.y;
}

Real norm(const Vec2& v)
{
    return hypot(v.x, v.y);
}

Eigen2 eig2_sym(const Sym2& h)
{
    const mpfr_prec_t bits = std::max({h.a.precision(), h.b.precision(), h.d.precision()});
    const Real one(1L, bits);
    const Real zero(bits);
    if (h.b.is_zero()) {
        if (h.a >= h.d)
            return {h.a, h.d, {one, zero}, {zero, one}};
        return {h.d, h.a, {zero, one}, {one, zero}};
    }
    const Real half_trace = (h.a + h.d) / 2L;
    const Real diff = h.a - h.d;
    const Real radius = sqrt(diff * diff + h.b * h.b * 4L) / 2L;
    Real lambda1 = half_trace + radius;
    Real lambda2 = half_trace - radius;

    // Two candidate null vectors of (H - lambda1 I); the longer is the better conditioned.
    Vec2 u{h.b, lambda1 - h.a};
    Vec2 v{lambda1 - h.d, h.b};
    Vec2 e = norm(u) >= norm(v) ? u : v;
    const Real len = norm(e);
    e.x /= len;
    e.y /= len;
    if (e.x.sign() < 0 || (e.x.is_zero() && e.y.sign() < 0)) {
        e.x = -e.x;
        e.y = -e.y;
    }
    Vec2 f{e.y, -e.x};
    return {std::move(lambda1), std::move(lambda2), std::move(e), std::move(f)};
}

Real minsp(const Eigen2& e)
{
    return min(abs(e.lambda1), abs(e.lambda2));
}

Real minsp(const Sym2& h)
{
    return minsp(eig2_sym(h));
}

} // namespace xibasin
