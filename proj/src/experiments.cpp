// Named experiment presets.

#include "xibasin/commands.h"

#include <iomanip>
#include <sstream>

namespace xibasin {

namespace {

constexpr const char* kFigureWindow = "grid.x_min = -1\n"
                                      "grid.x_max = 2\n"
                                      "grid.y_min = -35\n"
                                      "grid.y_max = 35\n"
                                      "grid.nx = 250\n"
                                      "grid.ny = 250\n"
                                      "grid.y_render_scale = 0.1\n"
                                      "methods = newton, random-relaxed, bnqn\n";

std::string seed_scan_preset(const std::string& name, const std::string& height)
{
    return "experiment = " + name + "\nfunction = xi\ndps = 100\nmax_iter = 30\nscan.height = " + height +
           "\nscan.window = 1\nscan.divisions = 30\nscan.refinement = 10\nwindow.x_lo = -1\nwindow.x_hi = 2\nout = out/" +
           name + "\n";
}

bool is_seed_scan(const std::string& name)
{
    return name == "exp2" || name == "exp3" || name == "exp2-lite" || name == "exp3-lite" || name == "exp4";
}

OutputSet seed_scan_outputs(const RunConfig& cfg)
{
    const FunctionHandle h = cfg.handle();
    const SeedScanReport rep = seed_scan(h, cfg.params(), cfg.seed_scan_options());
    const int digits = cfg.output_digits;
    OutputSet out;
    std::ostringstream csv;
    write_seed_scan_csv(csv, rep, digits);
    out.files["seeds.csv"] = csv.str();

    int refined_hits = 0;
    for (const auto& r : rep.runs)
        if (r.refined && r.root >= 0)
            ++refined_hits;
    std::ostringstream report;
    report << "experiment: " << cfg.experiment << "\nwindow: [" << cfg.window_x_lo << ", " << cfg.window_x_hi << "] x ["
           << cfg.scan_height << ", " << cfg.scan_height << " + " << cfg.scan_window << "]\n"
           << "seed runs: " << rep.runs.size() << " (refined seeds reaching a root: " << refined_hits << ")\n"
           << "argument-principle count in window: " << rep.counted << "\n"
           << "distinct roots found in window: " << rep.found_in_window << "\n"
           << "complete: " << (rep.complete() ? "yes" : "NO") << "\n"
           << "roots reached (ordinate order):\n";
    bool all_verified = true;
    for (std::size_t i = 0; i < rep.roots.size(); ++i) {
        report << "  " << rep.roots[i].to_string(digits) << (rep.in_window[i] ? "  [in window]" : "")
               << (rep.verified[i] ? "  verified" : "  NOT verified") << "\n";
        all_verified = all_verified && rep.verified[i];
    }
    report << "all roots verified within 1e-6: " << (all_verified ? "yes" : "NO") << "\n";
    int max_iters = 0;
    for (const auto& r : rep.runs)
        max_iters = std::max(max_iters, r.iterations);
    report << "max iterations over seeds: " << max_iters << "\n";
    out.files["report.txt"] = report.str();
    return out;
}

} // namespace

std::vector<std::string> experiment_names()
{
    return {"fig1", "exp1", "exp2", "exp3", "exp2-lite", "exp3-lite", "exp4"};
}

std::string experiment_preset(const std::string& name)
{
    if (name == "fig1")
        return std::string("experiment = fig1\nfunction = poly\nroots = xi8\ndps = 50\nvoronoi = true\n"
                           "methods = newton, random-relaxed, bnqn\nout = out/fig1\n") +
               kFigureWindow;
    if (name == "exp1")
        return std::string("experiment = exp1\nfunction = xi\nroots = xi8\ndps = 100\nvoronoi = false\nout = out/exp1\n") +
               kFigureWindow;
    if (name == "exp2")
        return seed_scan_preset(name, "1000000000");
    if (name == "exp3")
        return seed_scan_preset(name, "10000000000");
    if (name == "exp2-lite")
        return seed_scan_preset(name, "100");
    if (name == "exp3-lite")
        return seed_scan_preset(name, "1000");
    if (name == "exp4")
        return seed_scan_preset(name, "500");
    throw ConfigError("unknown experiment '" + name + "'");
}

bool experiment_gated(const RunConfig& cfg)
{
    if (cfg.experiment == "exp2" || cfg.experiment == "exp3")
        return true;
    // Euler-Maclaurin cost grows linearly with height; beyond 1e4 a seed scan takes hours.
    if (is_seed_scan(cfg.experiment))
        return Real::parse(cfg.scan_height, 64) > 1e4;
    return false;
}

OutputSet experiment_outputs(const RunConfig& cfg)
{
    if (cfg.experiment == "fig1" || cfg.experiment == "exp1")
        return basins_outputs(cfg);
    if (is_seed_scan(cfg.experiment))
        return seed_scan_outputs(cfg);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

} // namespace xibasin
