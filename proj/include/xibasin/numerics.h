#ifndef XIBASIN_NUMERICS_H
#define XIBASIN_NUMERICS_H

#include <mpfr.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace xibasin {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Working precision for a computation, in significant decimal digits.
///
/// Contexts are plain immutable values. Every routine that creates numbers
/// takes one explicitly; nothing reads a process-wide default.
class PrecisionContext
{
  public:
    explicit PrecisionContext(int digits = 50, int guard_digits = 10);

    int digits() const { return digits_; }
    int guard_digits() const { return guard_digits_; }

    /// Binary precision covering digits + guard_digits.
    mpfr_prec_t bits() const;

    /// Same guard, digits scaled by `factor` (rounded up).
    PrecisionContext scaled(double factor) const;
    PrecisionContext with_guard(int guard_digits) const;

    bool operator==(const PrecisionContext&) const = default;

  private:
    int digits_;
    int guard_digits_;
};

mpfr_prec_t digits_to_bits(int digits);

/// Arbitrary-precision real backed by MPFR.
///
/// Each value carries its own precision. Arithmetic between two values
/// produces a result at the larger of the two precisions.
class Real
{
  public:
    Real();
    explicit Real(mpfr_prec_t bits);
    Real(long value, mpfr_prec_t bits);
    Real(int value, mpfr_prec_t bits) : Real(static_cast<long>(value), bits) {}
    Real(double value, mpfr_prec_t bits);
    Real(long value, const PrecisionContext& ctx) : Real(value, ctx.bits()) {}
    Real(int value, const PrecisionContext& ctx) : Real(static_cast<long>(value), ctx.bits()) {}
    Real(double value, const PrecisionContext& ctx) : Real(value, ctx.bits()) {}

    /// Parses decimal text ("14.13472514173", "1e-6") or a fraction "p/q".
    static Real parse(std::string_view text, mpfr_prec_t bits);
    static Real parse(std::string_view text, const PrecisionContext& ctx) { return parse(text, ctx.bits()); }
    static Real infinity(mpfr_prec_t bits);
    static Real pi(mpfr_prec_t bits);
    /// 10^exponent.
    static Real pow10(long exponent, mpfr_prec_t bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    /// Copy rounded (or extended) to `bits`.
    Real with_precision(mpfr_prec_t bits) const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    /// Scientific text with `digits` significant digits; exact round trip at the same precision.
    std::string to_string(int digits) const;
    /// Fixed-point text with `decimals` digits after the point.
    std::string to_fixed(int decimals) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent (value = m * 2^exp with 0.5 <= |m| < 1); zero maps to a very small value.
    long exponent() const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);

    friend Real operator-(const Real& x);
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator-(long a, const Real& b);
    friend Real operator*(const Real& a, long b);
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b);
    friend Real operator/(long a, const Real& b);
    friend Real operator+(const Real& a, double b);
    friend Real operator*(const Real& a, double b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, double b);

  private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
/// sin and cos of x computed together.
std::pair<Real, Real> sin_cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real hypot(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

/// Complex number with arbitrary-precision parts.
///
/// A point-at-infinity sentinel exists for pole results; arithmetic on it
/// is not defined and the checked operations below reject it.
class BigComplex
{
  public:
    BigComplex() = default;
    explicit BigComplex(mpfr_prec_t bits) : re_(bits), im_(bits) {}
    BigComplex(Real re, Real im);
    explicit BigComplex(Real re);
    BigComplex(double re, double im, const PrecisionContext& ctx);

    /// Accepts "a+bi", "a-bi", "bi", "a", "(a,b)" and "a,b".
    static BigComplex parse(std::string_view text, mpfr_prec_t bits);
    static BigComplex parse(std::string_view text, const PrecisionContext& ctx) { return parse(text, ctx.bits()); }
    static BigComplex infinity(mpfr_prec_t bits);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && re_.is_zero() && im_.is_zero(); }
    mpfr_prec_t precision() const;
    BigComplex with_precision(mpfr_prec_t bits) const;
    std::string to_string(int digits) const;

    BigComplex& operator+=(const BigComplex& rhs);
    BigComplex& operator-=(const BigComplex& rhs);
    BigComplex& operator*=(const BigComplex& rhs);
    BigComplex& operator/=(const BigComplex& rhs);
    BigComplex& operator*=(const Real& rhs);
    BigComplex& operator/=(const Real& rhs);

    friend BigComplex operator-(const BigComplex& z);
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const Real& b);
    friend BigComplex operator*(const Real& a, const BigComplex& b) { return b * a; }
    friend BigComplex operator/(const BigComplex& a, const Real& b);
    friend BigComplex operator+(const BigComplex& a, const Real& b);
    friend BigComplex operator-(const BigComplex& a, const Real& b);
    friend BigComplex operator-(const Real& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, long b);
    friend BigComplex operator/(const BigComplex& a, long b);
    friend BigComplex operator+(const BigComplex& a, long b);
    friend BigComplex operator-(const BigComplex& a, long b);
    friend BigComplex operator-(long a, const BigComplex& b);

    friend bool operator==(const BigComplex& a, const BigComplex& b);

  private:
    Real re_;
    Real im_;
    bool infinite_ = false;
};

/// Squared modulus re^2 + im^2. Throws Error("nonfinite operand") on the infinity sentinel.
Real abs2(const BigComplex& z);
Real abs(const BigComplex& z);
Real arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal branch.
BigComplex log(const BigComplex& z);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
/// Principal branch of base^exponent.
BigComplex pow(const BigComplex& base, const BigComplex& exponent);
BigComplex sqrt(const BigComplex& z);
/// i * z.
BigComplex mul_i(const BigComplex& z);

struct Vec2
{
    Real x;
    Real y;
};

Real dot(const Vec2& a, const Vec2& b);
Real norm(const Vec2& v);

/// Symmetric 2x2 matrix [[a, b], [b, d]].
struct Sym2
{
    Real a;
    Real b;
    Real d;

    Sym2 shifted(const Real& diagonal) const { return {a + diagonal, b, d + diagonal}; }
    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, b * v.x + d * v.y}; }
    Real trace() const { return a + d; }
    Real det() const { return a * d - b * b; }
};

struct Eigen2
{
    Real lambda1; ///< larger eigenvalue
    Real lambda2;
    Vec2 e1;
    Vec2 e2;
};

/// Closed-form eigendecomposition of a symmetric 2x2 matrix, lambda1 >= lambda2.
/// Diagonal input returns axis vectors; a multiple of the identity returns the standard basis.
Eigen2 eig2_sym(const Sym2& h);

/// Smallest eigenvalue modulus, min(|lambda1|, |lambda2|).
Real minsp(const Sym2& h);
Real minsp(const Eigen2& e);

} // namespace xibasin

#endif
