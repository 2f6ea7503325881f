#ifndef XIBASIN_DYNAMICS_H
#define XIBASIN_DYNAMICS_H

#include "xibasin/functions.h"
#include "xibasin/numerics.h"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace xibasin {

/// Parameters of Backtracking New Q-Newton (BNQN).
struct BNQNParams
{
    std::vector<Real> deltas;
    Real theta;
    Real tau;
    Real gamma0;
    /// Armijo constant; the algorithm fixes it at 1/3.
    Real armijo_c;
    int max_iter = 30;
    /// Stationarity tolerance on the Newton displacement |A^-1 grad F|.
    Real grad_tol;
    int max_halvings = 200;
    std::uint64_t seed = 1;
    /// Newton-distance |g/g'| below which a terminal point counts as a root.
    Real root_tol;
    /// Runs stop as divergent once |z| > divergence_factor * (1 + |z0|).
    Real divergence_factor;

    /// Defaults: three seeded deltas in [-2, 2] with pairwise gaps >= 0.1, tau = theta = gamma0 = 1,
    /// grad_tol = 10^(-digits/2), max_iter 30, max_halvings 200, root_tol 1e-6.
    static BNQNParams defaults(const PrecisionContext& ctx, std::uint64_t seed);

    /// Half the smallest pairwise gap between deltas.
    Real kappa() const;
    /// Throws Error on violated parameter constraints.
    void validate() const;
};

/// Three distinct deltas uniform in [-2, 2] with pairwise gaps >= 0.1.
std::vector<Real> draw_deltas(std::uint64_t seed, const PrecisionContext& ctx);

struct GradHess
{
    Vec2 grad;
    Sym2 hess;
};

/// Gradient and Hessian of F = |g|^2 / 2 from the jet of g (Cauchy-Riemann form).
GradHess grad_hess_from_jet(const Jet& jet);
/// Throws Error("pole evaluation") at a pole.
GradHess grad_hess_F(const FunctionHandle& h, const BigComplex& z);

struct IterationRecord
{
    BigComplex z;
    Real F;
    Real grad_norm;
    /// Accepted delta index; -1 when no step was taken from this point.
    int delta_index = -1;
    Real gamma;
    int halvings = 0;

    // Step diagnostics, kept for invariant checks.
    Real descent;          ///< <w_hat, grad F>
    Real minsp_shifted;    ///< minsp(A) of the accepted shifted Hessian
    Real kappa_threshold;  ///< kappa * |grad F|^tau
    Real step_norm;        ///< |z_{k+1} - z_k|
    Real newton_norm;      ///< |w| = |A^-1 grad F|
};

enum class Outcome
{
    ConvergedRoot,
    ConvergedCritical,
    Diverged,
    MaxIter,
    Unresolved,
};

std::string to_string(Outcome outcome);

struct Trajectory
{
    std::vector<IterationRecord> records;
    Outcome outcome = Outcome::MaxIter;
    BigComplex terminal;

    /// Steps taken (records minus the terminal record).
    int iterations() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
};

/// CSV with columns iter,x,y,F,grad_norm,delta_index,gamma,halvings.
void write_trajectory_csv(std::ostream& out, const Trajectory& t, int digits);

struct StepResult
{
    BigComplex next;
    IterationRecord record;
};

/// One BNQN iteration. Precondition: grad F(z) != 0 (Error("stationary point") otherwise).
/// Errors: "delta exhaustion", "line-search stall", "pole evaluation".
StepResult bnqn_step(const FunctionHandle& h, const BigComplex& z, const BNQNParams& p);

/// Iterates BNQN until the Newton displacement drops below grad_tol, |z| leaves the
/// divergence radius, or max_iter steps are taken.
Trajectory bnqn_run(const FunctionHandle& h, const BigComplex& z0, const BNQNParams& p);

/// z - g/g'. Throws Error("critical point") when g'(z) = 0.
BigComplex newton_step(const FunctionHandle& h, const BigComplex& z);
/// z - alpha g/g'.
BigComplex relaxed_newton_step(const FunctionHandle& h, const BigComplex& z, const BigComplex& alpha);
/// The nu map nu_g(z) = z - g/(z g'). Throws when z g'(z) = 0.
BigComplex nu_step(const FunctionHandle& h, const BigComplex& z);

/// Stopping rules shared by the comparator iterations.
struct IterationLimits
{
    int max_iter = 30;
    Real step_tol;
    Real root_tol;
    Real divergence_factor;

    static IterationLimits from(const BNQNParams& p);
};

using AlphaSource = std::function<BigComplex(int step)>;

Trajectory newton_run(const FunctionHandle& h, const BigComplex& z0, const IterationLimits& lim);
Trajectory relaxed_run(const FunctionHandle& h, const BigComplex& z0, const BigComplex& alpha,
                       const IterationLimits& lim);
/// Relaxed Newton with alpha_n uniform on the disk |alpha - 1| <= 1/2, drawn from `seed`.
Trajectory random_relaxed_run(const FunctionHandle& h, const BigComplex& z0, std::uint64_t seed,
                              const IterationLimits& lim);
Trajectory random_relaxed_run(const FunctionHandle& h, const BigComplex& z0, const AlphaSource& alpha,
                              const IterationLimits& lim);
Trajectory nu_run(const FunctionHandle& h, const BigComplex& z0, const IterationLimits& lim);

/// Classification of a trajectory's limit against a list of known roots.
class Label
{
  public:
    enum class Kind
    {
        Root,
        CriticalPoint,
        Divergent,
        Unmatched,
    };

    static Label root(int index) { return Label(Kind::Root, index); }
    static Label critical() { return Label(Kind::CriticalPoint, -1); }
    static Label divergent() { return Label(Kind::Divergent, -1); }
    static Label unmatched() { return Label(Kind::Unmatched, -1); }
    /// Inverse of to_string().
    static Label parse(const std::string& text);

    Kind kind() const { return kind_; }
    int index() const { return index_; }
    bool is_root() const { return kind_ == Kind::Root; }
    std::string to_string() const;

    bool operator==(const Label&) const = default;

  private:
    Label(Kind kind, int index) : kind_(kind), index_(index) {}
    Kind kind_;
    int index_;
};

/// Root index within `tol` of the terminal point; CriticalPoint / Divergent by outcome; else Unmatched.
/// Throws Error("ambiguous match") if two roots lie within tol.
Label classify_limit(const Trajectory& t, const std::vector<BigComplex>& roots, const Real& tol);

} // namespace xibasin

#endif
