#ifndef XIBASIN_ATLAS_H
#define XIBASIN_ATLAS_H

#include "xibasin/dynamics.h"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace xibasin {

/// Rectangular sampling window. Cell (ix, iy) is centered at
/// x_min + (2 ix + 1)(x_max - x_min) / (2 nx), likewise for y; iy = 0 is the bottom row.
struct GridSpec
{
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    int nx = 1;
    int ny = 1;
    /// Rendering hint only; never touches dynamics coordinates.
    double y_render_scale = 1.0;

    void validate() const;
    std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
    BigComplex center(int ix, int iy, const PrecisionContext& ctx) const;
    bool operator==(const GridSpec&) const = default;
};

struct BasinGrid
{
    GridSpec spec;
    std::vector<Label> labels;
    std::vector<int> iters;
    std::vector<BigComplex> terminals;

    explicit BasinGrid(const GridSpec& g);
    const Label& label(int ix, int iy) const { return labels[spec.index(ix, iy)]; }
    /// Number of cells carrying each root label, indexed by root.
    std::vector<std::size_t> root_counts(std::size_t roots) const;
};

enum class Method
{
    BNQN,
    Newton,
    Relaxed,
    RandomRelaxed,
    Nu,
};

std::string to_string(Method m);
/// Accepts bnqn, newton, relaxed, random-relaxed, nu.
Method parse_method(const std::string& text);

struct SweepOptions
{
    Method method = Method::BNQN;
    BNQNParams params;
    /// Fixed relaxation factor for Method::Relaxed.
    BigComplex alpha;
    /// Global seed; random-relaxed cells use derive_seed(seed, cell index).
    std::uint64_t seed = 1;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One trajectory of the chosen iterator; `run_seed` drives random relaxation.
Trajectory run_iteration(const FunctionHandle& h, const BigComplex& z0, const SweepOptions& opts,
                         std::uint64_t run_seed);

/// Runs the iterator from every cell center and labels the cell by classify_limit with
/// tolerance params.root_tol. Per-cell errors become Unmatched.
BasinGrid sweep(const FunctionHandle& h, const GridSpec& grid, const SweepOptions& opts,
                const std::vector<BigComplex>& roots);

/// Nearest-site raster; exact distance ties are Unmatched.
BasinGrid voronoi_raster(const std::vector<BigComplex>& sites, const GridSpec& grid, const PrecisionContext& ctx);

/// Ordinates of the cell boundaries for sites sharing one vertical line: midpoints of
/// consecutive sorted ordinates.
std::vector<Real> collinear_midlines(const std::vector<BigComplex>& sites);

using LabelMap = std::function<Label(const Label&)>;

struct AgreementOptions
{
    /// Applied to labels of the first grid before comparison; identity when empty.
    LabelMap map;
    /// Skip cells with a differently labelled 8-neighbour in either grid.
    bool exclude_boundary = false;
};

/// Fraction of compared cells with equal labels. Cells that either grid marks Unmatched are
/// not compared. Throws on grid-spec mismatch or when no cell is comparable.
double agreement(const BasinGrid& a, const BasinGrid& b, const AgreementOptions& opts = {});

using Rgb = std::array<std::uint8_t, 3>;

struct Palette
{
    std::vector<Rgb> colors;
    Rgb background{0, 0, 0};

    /// green, yellow, blue, red, pink, cyan, orange, purple.
    static Palette standard();
    Rgb color(const Label& label) const;
};

/// Binary P6 image, one pixel per cell, first row at y_max.
std::string render_ppm(const BasinGrid& g, const Palette& p);

/// CSV with columns ix,iy,x,y,label,iters,term_x,term_y.
void write_grid_csv(std::ostream& out, const BasinGrid& g, const PrecisionContext& ctx, int digits);

} // namespace xibasin

#endif
