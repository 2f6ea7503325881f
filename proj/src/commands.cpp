#include "xibasin/commands.h"

#include "xibasin/rng.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace xibasin {

void OutputSet::merge(const OutputSet& other, const std::string& prefix)
{
    for (const auto& [name, content] : other.files)
        files[prefix + name] = content;
    exit_code = std::max(exit_code, other.exit_code);
}

void write_outputs(const OutputSet& outputs, const std::string& dir)
{
    namespace fs = std::filesystem;
    for (const auto& [name, content] : outputs.files) {
        const fs::path path = fs::path(dir) / name;
        fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error("cannot write '" + path.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("write failed for '" + path.string() + "'");
    }
}

namespace {

std::string padded(std::size_t k)
{
    std::ostringstream s;
    s << std::setw(3) << std::setfill('0') << k;
    return s.str();
}

/// Index of an existing entry within tol of z, appending z when there is none.
int dedupe(std::vector<BigComplex>& found, const BigComplex& z, const Real& tol)
{
    for (std::size_t i = 0; i < found.size(); ++i)
        if (abs(found[i] - z) <= tol)
            return static_cast<int>(i);
    found.push_back(z);
    return static_cast<int>(found.size()) - 1;
}

} // namespace

OutputSet solve_outputs(const RunConfig& cfg)
{
    const PrecisionContext ctx = cfg.context();
    const FunctionHandle h = cfg.handle();
    const auto starts = cfg.start_points();
    if (starts.empty())
        throw ConfigError("solve needs solve.z0 or solve.seeds_height");
    const Method method = parse_method(cfg.method);
    const SweepOptions opts = cfg.sweep_options(method);
    const auto roots = cfg.root_list();
    const int digits = cfg.output_digits;
    const bool check_line = cfg.function == "xi";

    OutputSet out;
    std::ostringstream summary;
    summary << "index,x0,y0,term_x,term_y,outcome,iterations,label,verified\n";
    std::vector<BigComplex> distinct;
    std::vector<bool> distinct_verified;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const BigComplex& z0 = starts[k];
        summary << k << ',' << z0.re().to_string(digits) << ',' << z0.im().to_string(digits) << ',';
        try {
            const Trajectory t = run_iteration(h, z0, opts, derive_seed(cfg.seed, k));
            std::ostringstream csv;
            write_trajectory_csv(csv, t, digits);
            out.files["trajectory_" + padded(k) + ".csv"] = csv.str();
            std::string label;
            try {
                label = classify_limit(t, roots, opts.params.root_tol).to_string();
            } catch (const Error&) {
                label = "ambiguous";
            }
            std::string verified = "n/a";
            if (t.outcome == Outcome::ConvergedRoot) {
                const int id = dedupe(distinct, t.terminal, opts.params.root_tol);
                if (check_line) {
                    const bool ok = verify_root_near(t.terminal, opts.params.root_tol, ctx);
                    if (static_cast<std::size_t>(id) == distinct_verified.size())
                        distinct_verified.push_back(ok);
                    verified = ok ? "true" : "false";
                }
            }
            summary << t.terminal.re().to_string(digits) << ',' << t.terminal.im().to_string(digits) << ','
                    << to_string(t.outcome) << ',' << t.iterations() << ',' << label << ',' << verified << '\n';
        } catch (const Error& e) {
            summary << ",,error,0,unmatched,n/a\n";
            out.exit_code = kExitRunFailure;
            out.files["error_" + padded(k) + ".txt"] = std::string(e.what()) + "\n";
        }
    }
    out.files["summary.csv"] = summary.str();

    std::ostringstream report;
    report << "command: solve\nfunction: " << cfg.function << "\nmethod: " << cfg.method << "\nstarts: " << starts.size()
           << "\ndistinct roots: " << distinct.size() << "\n";
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        report << "  " << distinct[i].to_string(digits);
        if (check_line)
            report << (distinct_verified[i] ? "  verified" : "  NOT verified");
        report << "\n";
    }
    out.files["report.txt"] = report.str();
    return out;
}

namespace {

std::string counts_line(const BasinGrid& g, std::size_t roots)
{
    std::ostringstream s;
    std::size_t other = g.spec.cells();
    for (auto c : g.root_counts(roots)) {
        s << ' ' << c;
        other -= c;
    }
    s << " | non-root " << other;
    return s.str();
}

std::string agreement_text(const BasinGrid& a, const BasinGrid& b, bool exclude_boundary)
{
    try {
        std::ostringstream s;
        s << std::fixed << std::setprecision(4) << agreement(a, b, {{}, exclude_boundary});
        return s.str();
    } catch (const Error&) {
        return "n/a";
    }
}

} // namespace

OutputSet basins_outputs(const RunConfig& cfg)
{
    try {
        cfg.grid.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid grid: ") + e.what());
    }
    const PrecisionContext ctx = cfg.context();
    const FunctionHandle h = cfg.handle();
    const auto roots = cfg.root_list();
    const auto sites = cfg.site_list();
    const Palette palette = Palette::standard();
    const int digits = cfg.output_digits;

    OutputSet out;
    std::ostringstream report;
    report << "command: basins\nfunction: " << cfg.function << "\ngrid: " << cfg.grid.nx << "x" << cfg.grid.ny << " on ["
           << cfg.grid.x_min << ", " << cfg.grid.x_max << "] x [" << cfg.grid.y_min << ", " << cfg.grid.y_max
           << "], y_render_scale " << cfg.grid.y_render_scale << "\nroots: " << roots.size() << "\n";

    std::optional<BasinGrid> vor;
    if (!sites.empty()) {
        vor = voronoi_raster(sites, cfg.grid, ctx);
        if (cfg.voronoi) {
            out.files["voronoi.ppm"] = render_ppm(*vor, palette);
            std::ostringstream csv;
            write_grid_csv(csv, *vor, ctx, digits);
            out.files["voronoi.csv"] = csv.str();
        }
    }
    const auto methods = cfg.method_list();
    for (Method m : methods) {
        const BasinGrid g = sweep(h, cfg.grid, cfg.sweep_options(m), roots);
        const std::string name = to_string(m);
        out.files["basins_" + name + ".ppm"] = render_ppm(g, palette);
        std::ostringstream csv;
        write_grid_csv(csv, g, ctx, digits);
        out.files["basins_" + name + ".csv"] = csv.str();
        long total_iters = 0;
        for (int it : g.iters)
            total_iters += it;
        report << name << ": counts" << counts_line(g, roots.size()) << "; mean iterations "
               << std::fixed << std::setprecision(2) << static_cast<double>(total_iters) / g.spec.cells() << "\n";
        report.unsetf(std::ios::fixed);
        if (vor && sites.size() == roots.size()) {
            report << name << ": voronoi agreement " << agreement_text(g, *vor, true) << " (excluding boundary cells), "
                   << agreement_text(g, *vor, false) << " (all comparable cells)\n";
        }
    }
    if (std::find(methods.begin(), methods.end(), Method::RandomRelaxed) != methods.end())
        report << "random-relaxed alpha: uniform on |alpha - 1| <= 1/2, per-cell seeds derived from seed " << cfg.seed
               << "\n";
    out.files["report.txt"] = report.str();
    return out;
}

OutputSet voronoi_outputs(const RunConfig& cfg)
{
    try {
        cfg.grid.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid grid: ") + e.what());
    }
    const PrecisionContext ctx = cfg.context();
    const auto sites = cfg.site_list();
    if (sites.empty())
        throw ConfigError("voronoi needs at least one site");
    const BasinGrid g = voronoi_raster(sites, cfg.grid, ctx);
    OutputSet out;
    out.files["voronoi.ppm"] = render_ppm(g, Palette::standard());
    std::ostringstream csv;
    write_grid_csv(csv, g, ctx, cfg.output_digits);
    out.files["voronoi.csv"] = csv.str();

    std::ostringstream report;
    report << "command: voronoi\nsites: " << sites.size() << "\ncounts" << counts_line(g, sites.size()) << "\n";
    bool collinear = true;
    for (const auto& s : sites)
        collinear = collinear && s.re() == sites.front().re();
    if (collinear) {
        report << "collinear sites; analytic boundaries at y =";
        for (const auto& y : collinear_midlines(sites))
            report << ' ' << y.to_string(15);
        report << "\n";
    }
    out.files["report.txt"] = report.str();
    return out;
}

OutputSet verify_outputs(const RunConfig& cfg)
{
    const PrecisionContext ctx = cfg.context();
    const FunctionHandle h = cfg.handle();
    const Rect rect = cfg.window();
    const int digits = cfg.output_digits;
    OutputSet out;
    std::ostringstream report;
    report << "command: verify\nfunction: " << cfg.function << "\nrectangle: [" << cfg.window_x_lo << ", "
           << cfg.window_x_hi << "] x [" << cfg.window_y_lo << ", " << cfg.window_y_hi << "]\n";

    const ZeroCount count = count_zeros_rect(h, rect);
    report << "argument-principle count: " << count.count << " (residual " << std::scientific << std::setprecision(2)
           << count.residual << ", " << count.evaluations << " boundary evaluations)\n";
    report.unsetf(std::ios::scientific);

    if (cfg.function == "xi") {
        const SignScan scan = sign_scan(rect.y_lo, rect.y_hi, Real::parse(cfg.scan_step, ctx), ctx);
        std::ostringstream csv;
        csv << "t_a,t_b\n";
        const Real width = Real::parse("1e-8", ctx);
        for (const auto& b : scan.brackets) {
            const auto r = refine_bracket(b, width, ctx);
            csv << r.first.to_string(digits) << ',' << r.second.to_string(digits) << '\n';
        }
        out.files["brackets.csv"] = csv.str();
        report << "critical-line sign changes (step " << cfg.scan_step << "): " << scan.brackets.size() << "\n";
        const bool symmetric = (rect.x_lo + rect.x_hi) == Real(1L, ctx);
        if (symmetric)
            report << "counter/scan consistency: " << (static_cast<int>(scan.brackets.size()) == count.count ? "yes" : "NO")
                   << "\n";
    }
    out.files["report.txt"] = report.str();
    return out;
}

int run_command(const CommandRequest& request, std::ostream& log, std::ostream& err)
{
    try {
        RunConfig cfg;
        if (request.command == "experiment") {
            std::string name = request.experiment;
            if (name.empty())
                name = RunConfig::parse(request.config_text).experiment;
            if (name.empty())
                throw ConfigError("experiment needs a preset name (key 'experiment')");
            cfg = RunConfig::parse(experiment_preset(name) + "\n" + request.config_text);
            cfg.experiment = name;
        } else if (request.command == "solve" || request.command == "basins" || request.command == "voronoi" ||
                   request.command == "verify") {
            cfg = RunConfig::parse(request.config_text);
        } else {
            throw ConfigError("unknown command '" + request.command + "'");
        }
        if (request.seed)
            cfg.seed = *request.seed;
        if (request.out)
            cfg.out = *request.out;
        cfg.resolve();

        if (request.command == "experiment" && experiment_gated(cfg) && !request.allow_long) {
            err << "gated: long-running (experiment '" << cfg.experiment << "' needs --allow-long)\n";
            return kExitGated;
        }

        OutputSet out;
        if (request.command == "solve")
            out = solve_outputs(cfg);
        else if (request.command == "basins")
            out = basins_outputs(cfg);
        else if (request.command == "voronoi")
            out = voronoi_outputs(cfg);
        else if (request.command == "verify")
            out = verify_outputs(cfg);
        else
            out = experiment_outputs(cfg);
        out.files["config.resolved"] = cfg.echo();
        write_outputs(out, cfg.out);
        log << request.command << ": wrote " << out.files.size() << " files to " << cfg.out << "\n";
        if (auto it = out.files.find("report.txt"); it != out.files.end())
            log << it->second;
        return out.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRunFailure;
    }
}

} // namespace xibasin
