#include "xibasin/atlas.h"

#include "xibasin/rng.h"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

namespace xibasin {

void GridSpec::validate() const
{
    if (nx < 1 || ny < 1)
        throw Error("grid needs nx >= 1 and ny >= 1");
    if (!(x_min < x_max) || !(y_min < y_max))
        throw Error("grid bounds must satisfy min < max");
    if (!(y_render_scale > 0.0))
        throw Error("y_render_scale must be positive");
}

BigComplex GridSpec::center(int ix, int iy, const PrecisionContext& ctx) const
{
    const Real x0(x_min, ctx), x1(x_max, ctx), y0(y_min, ctx), y1(y_max, ctx);
    Real x = x0 + (x1 - x0) * static_cast<long>(2 * ix + 1) / static_cast<long>(2 * nx);
    Real y = y0 + (y1 - y0) * static_cast<long>(2 * iy + 1) / static_cast<long>(2 * ny);
    return {std::move(x), std::move(y)};
}

BasinGrid::BasinGrid(const GridSpec& g)
  : spec(g)
  , labels(g.cells(), Label::unmatched())
  , iters(g.cells(), 0)
  , terminals(g.cells())
{
}

std::vector<std::size_t> BasinGrid::root_counts(std::size_t roots) const
{
    std::vector<std::size_t> counts(roots, 0);
    for (const auto& l : labels)
        if (l.is_root() && static_cast<std::size_t>(l.index()) < roots)
            ++counts[l.index()];
    return counts;
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::BNQN:
        return "bnqn";
    case Method::Newton:
        return "newton";
    case Method::Relaxed:
        return "relaxed";
    case Method::RandomRelaxed:
        return "random-relaxed";
    case Method::Nu:
        return "nu";
    }
    return "bnqn";
}

Method parse_method(const std::string& text)
{
    for (Method m : {Method::BNQN, Method::Newton, Method::Relaxed, Method::RandomRelaxed, Method::Nu})
        if (to_string(m) == text)
            return m;
    throw Error("unknown method '" + text + "'");
}

Trajectory run_iteration(const FunctionHandle& h, const BigComplex& z0, const SweepOptions& opts,
                         std::uint64_t run_seed)
{
    const IterationLimits lim = IterationLimits::from(opts.params);
    switch (opts.method) {
    case Method::BNQN:
        return bnqn_run(h, z0, opts.params);
    case Method::Newton:
        return newton_run(h, z0, lim);
    case Method::Relaxed:
        return relaxed_run(h, z0, opts.alpha, lim);
    case Method::RandomRelaxed:
        return random_relaxed_run(h, z0, run_seed, lim);
    case Method::Nu:
        return nu_run(h, z0, lim);
    }
    throw Error("unknown method");
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            fn(i);
    };
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace

BasinGrid sweep(const FunctionHandle& h, const GridSpec& grid, const SweepOptions& opts,
                const std::vector<BigComplex>& roots)
{
    grid.validate();
    opts.params.validate();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (abs(roots[i] - roots[j]) <= opts.params.root_tol * 2L)
                throw Error("roots closer than 2 * root_tol");

    const PrecisionContext& ctx = h.context();
    BasinGrid out(grid);
    parallel_for(grid.cells(), opts.threads, [&](std::size_t cell) {
        const int ix = static_cast<int>(cell % grid.nx);
        const int iy = static_cast<int>(cell / grid.nx);
        const BigComplex z0 = grid.center(ix, iy, ctx);
        try {
            const Trajectory t = run_iteration(h, z0, opts, derive_seed(opts.seed, cell));
            out.labels[cell] = classify_limit(t, roots, opts.params.root_tol);
            out.iters[cell] = t.iterations();
            out.terminals[cell] = t.terminal;
        } catch (const Error&) {
            out.labels[cell] = Label::unmatched();
            out.terminals[cell] = z0;
        }
    });
    return out;
}

BasinGrid voronoi_raster(const std::vector<BigComplex>& sites, const GridSpec& grid, const PrecisionContext& ctx)
{
    grid.validate();
    if (sites.empty())
        throw Error("voronoi raster needs at least one site");
    BasinGrid out(grid);
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t cell = grid.index(ix, iy);
            const BigComplex z = grid.center(ix, iy, ctx);
            int best = -1;
            bool tie = false;
            Real best_d = Real::infinity(ctx.bits());
            for (std::size_t s = 0; s < sites.size(); ++s) {
                Real d = abs2(z - sites[s].with_precision(ctx.bits()));
                if (d < best_d) {
                    best_d = std::move(d);
                    best = static_cast<int>(s);
                    tie = false;
                } else if (d == best_d) {
                    tie = true;
                }
            }
            out.labels[cell] = tie ? Label::unmatched() : Label::root(best);
            out.terminals[cell] = tie ? z : sites[best];
        }
    }
    return out;
}

std::vector<Real> collinear_midlines(const std::vector<BigComplex>& sites)
{
    std::vector<Real> ys;
    for (const auto& s : sites)
        ys.push_back(s.im());
    std::sort(ys.begin(), ys.end(), [](const Real& a, const Real& b) { return a < b; });
    std::vector<Real> mids;
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (ys[i] != ys[i - 1])
            mids.push_back((ys[i - 1] + ys[i]) / 2L);
    return mids;
}

namespace {

bool on_boundary(const BasinGrid& g, int ix, int iy)
{
    const Label& self = g.label(ix, iy);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const int jx = ix + dx, jy = iy + dy;
            if ((dx == 0 && dy == 0) || jx < 0 || jy < 0 || jx >= g.spec.nx || jy >= g.spec.ny)
                continue;
            if (!(g.label(jx, jy) == self))
                return true;
        }
    }
    return false;
}

} // namespace

double agreement(const BasinGrid& a, const BasinGrid& b, const AgreementOptions& opts)
{
    if (!(a.spec == b.spec))
        throw Error("grid spec mismatch");
    std::size_t compared = 0, matched = 0;
    for (int iy = 0; iy < a.spec.ny; ++iy) {
        for (int ix = 0; ix < a.spec.nx; ++ix) {
            const Label la = opts.map ? opts.map(a.label(ix, iy)) : a.label(ix, iy);
            const Label& lb = b.label(ix, iy);
            if (la.kind() == Label::Kind::Unmatched || lb.kind() == Label::Kind::Unmatched)
                continue;
            if (opts.exclude_boundary && (on_boundary(a, ix, iy) || on_boundary(b, ix, iy)))
                continue;
            ++compared;
            if (la == lb)
                ++matched;
        }
    }
    if (compared == 0)
        throw Error("no comparable cells");
    return static_cast<double>(matched) / static_cast<double>(compared);
}

Palette Palette::standard()
{
    Palette p;
    p.colors = {Rgb{0, 255, 0},   Rgb{255, 255, 0}, Rgb{0, 0, 255},   Rgb{255, 0, 0},
                Rgb{255, 192, 203}, Rgb{0, 255, 255}, Rgb{255, 165, 0}, Rgb{128, 0, 128}};
    return p;
}

Rgb Palette::color(const Label& label) const
{
    if (!label.is_root() || label.index() >= static_cast<int>(colors.size()))
        return background;
    return colors[label.index()];
}

std::string render_ppm(const BasinGrid& g, const Palette& p)
{
    std::string out = "P6\n" + std::to_string(g.spec.nx) + " " + std::to_string(g.spec.ny) + "\n255\n";
    out.reserve(out.size() + 3 * g.spec.cells());
    for (int iy = g.spec.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < g.spec.nx; ++ix) {
            const Rgb c = p.color(g.label(ix, iy));
            out.append(reinterpret_cast<const char*>(c.data()), 3);
        }
    }
    return out;
}

void write_grid_csv(std::ostream& out, const BasinGrid& g, const PrecisionContext& ctx, int digits)
{
    out << "ix,iy,x,y,label,iters,term_x,term_y\n";
    for (int iy = 0; iy < g.spec.ny; ++iy) {
        for (int ix = 0; ix < g.spec.nx; ++ix) {
            const std::size_t cell = g.spec.index(ix, iy);
            const BigComplex c = g.spec.center(ix, iy, ctx);
            out << ix << ',' << iy << ',' << c.re().to_string(digits) << ',' << c.im().to_string(digits) << ','
                << g.labels[cell].to_string() << ',' << g.iters[cell] << ',' << g.terminals[cell].re().to_string(digits)
                << ',' << g.terminals[cell].im().to_string(digits) << '\n';
        }
    }
}

} // namespace xibasin
