#ifndef XIBASIN_VERIFY_H
#define XIBASIN_VERIFY_H

#include "xibasin/dynamics.h"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xibasin {

/// Re xi(1/2 + it). Throws Error("precision breach") if |Im xi(1/2 + it)| > 10^(-digits/2).
Real xi_critical(const Real& t, const PrecisionContext& ctx);

struct SignScan
{
    Real t_lo;
    Real t_hi;
    Real step;
    /// Intervals [t_a, t_b] over which xi(1/2 + it) changes sign.
    std::vector<std::pair<Real, Real>> brackets;
};

/// Samples xi on the critical line at t_lo + k step (and t_hi) and brackets each sign change.
/// An exact zero sample counts as positive.
SignScan sign_scan(const Real& t_lo, const Real& t_hi, const Real& step, const PrecisionContext& ctx);

/// Bisects a sign-change bracket down to the given width and returns the final bracket.
std::pair<Real, Real> refine_bracket(const std::pair<Real, Real>& bracket, const Real& width,
                                     const PrecisionContext& ctx);

/// True iff xi changes sign on [Im z - radius, Im z + radius] of the critical line (scan step radius / 4).
bool verify_root_near(const BigComplex& z, const Real& radius, const PrecisionContext& ctx);

struct Rect
{
    Real x_lo;
    Real x_hi;
    Real y_lo;
    Real y_hi;
};

struct ZeroCount
{
    int count = 0;
    /// Distance of the winding number from the nearest integer.
    double residual = 0.0;
    /// Boundary evaluations spent.
    int evaluations = 0;
};

/// Winding number of g around the counter-clockwise boundary of r. Each edge is subdivided
/// until consecutive argument increments stay below pi/2. Throws Error("boundary proximity") if
/// a boundary sample falls below 10^(-digits/2) times the largest boundary modulus, if the
/// Newton-distance estimate |g / g'| along the boundary drops below 1e-6, or if the subdivision
/// depth is exhausted.
ZeroCount count_zeros_rect(const FunctionHandle& h, const Rect& r);

/// Seed scan along the y-axis with refinement between disagreeing neighbours.
struct SeedScanOptions
{
    /// Window [height, height + window] in Im.
    Real height;
    Real window;
    /// Seeds are spaced 1/divisions apart.
    int divisions = 30;
    /// Sub-intervals inserted between adjacent seeds that reach different roots.
    int refinement = 10;
    /// How far below and above the window the scan may be extended, in window units.
    int max_extension = 2;
    /// Window for the zero counter in Re.
    Real x_lo;
    Real x_hi;
};

struct SeedRun
{
    Real y0;
    BigComplex terminal;
    Outcome outcome = Outcome::MaxIter;
    int iterations = 0;
    /// Index into SeedScanReport::roots, -1 when the run did not reach a root.
    int root = -1;
    bool refined = false;
};

struct SeedScanReport
{
    std::vector<SeedRun> runs;
    /// Distinct roots reached, sorted by ordinate.
    std::vector<BigComplex> roots;
    std::vector<bool> verified;
    std::vector<bool> in_window;
    int found_in_window = 0;
    int counted = 0;
    double count_residual = 0.0;
    bool complete() const { return found_in_window == counted; }
};

/// Runs BNQN from (0, height + j/divisions), refines between seeds with different limits, and
/// extends the scan past the window while fewer roots are found than the argument principle
/// counts in [x_lo, x_hi] x [height, height + window]. Every root found is checked with
/// verify_root_near at radius 10^-6.
SeedScanReport seed_scan(const FunctionHandle& h, const BNQNParams& p, const SeedScanOptions& opts);

void write_seed_scan_csv(std::ostream& out, const SeedScanReport& report, int digits);

} // namespace xibasin

#endif
