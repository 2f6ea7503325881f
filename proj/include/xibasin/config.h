#ifndef XIBASIN_CONFIG_H
#define XIBASIN_CONFIG_H

#include "xibasin/atlas.h"
#include "xibasin/dynamics.h"
#include "xibasin/functions.h"
#include "xibasin/verify.h"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xibasin {

/// Raised for malformed or unknown configuration entries; maps to exit code 2.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs, parsed from key=value lines.
///
/// Real-valued parameters are kept as their decimal text so the resolved echo reparses to
/// bit-identical values at the run's precision.
struct RunConfig
{
    std::string experiment;

    // target
    std::string function = "poly";  // poly | sin | xi | ht
    std::string roots = "xi8";      // classification targets and poly roots; "xi8", "auto" or "a+bi; c+di; ..."
    std::string coefficients;       // ascending, "; "-separated; overrides roots for poly construction
    std::string ht_t = "0";
    int ht_series_terms = 0;
    double ht_upper_cutoff = 0.0;
    int ht_quadrature_nodes = 32;

    // precision
    int dps = 0;  // 0: 50 for poly/sin/ht, 100 for xi
    int guard_digits = 10;

    // iteration
    std::string method = "bnqn";
    std::string methods;  // basins: comma list, defaults to method
    std::string alpha = "1";
    std::string deltas;  // comma list; empty: drawn from seed
    std::string theta = "1";
    std::string tau = "1";
    std::string gamma0 = "1";
    int max_iter = 30;
    std::string grad_tol;  // empty: 10^(-dps/2)
    int max_halvings = 200;
    std::string root_tol = "1e-6";
    std::string divergence_factor = "10";
    std::uint64_t seed = 1;

    // solve
    std::string z0;  // "; "-separated start points
    std::string seeds_height;
    int seeds_count = 0;
    int seeds_divisions = 30;

    // basins / voronoi
    GridSpec grid{-1.0, 2.0, -35.0, 35.0, 100, 100, 0.1};
    bool voronoi = false;
    std::string sites;  // voronoi sites; empty: roots
    unsigned threads = 0;

    // verify
    std::string window_x_lo = "-1";
    std::string window_x_hi = "2";
    std::string window_y_lo = "1";
    std::string window_y_hi = "31";
    std::string scan_step = "0.05";

    // seed scan (experiments)
    std::string scan_height = "100";
    std::string scan_window = "1";
    int scan_divisions = 30;
    int scan_refinement = 10;
    int scan_max_extension = 2;

    std::string out = "out";
    int output_digits = 30;

    /// Parses key=value text on top of the current values. Blank lines and '#' comments are ignored.
    void apply(const std::string& text);
    void set(const std::string& key, const std::string& value);
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    /// Fills defaults that depend on other keys (dps, deltas, grad_tol) so the echo is complete.
    void resolve();
    /// Every key with its value, one per line, in a fixed order.
    std::string echo() const;

    PrecisionContext context() const;
    FunctionHandle handle() const;
    /// Roots used for classification (and as poly roots unless coefficients are given).
    std::vector<BigComplex> root_list() const;
    std::vector<BigComplex> site_list() const;
    BNQNParams params() const;
    std::vector<Method> method_list() const;
    /// Sweep settings for one method: params(), alpha, seed and threads.
    SweepOptions sweep_options(Method m) const;
    std::vector<BigComplex> start_points() const;
    SeedScanOptions seed_scan_options() const;
    Rect window() const;
};

} // namespace xibasin

#endif
