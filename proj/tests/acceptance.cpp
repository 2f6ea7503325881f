// Acceptance checks, one PASS/FAIL line per criterion. Optional arguments select criteria by number.

#include "support.h"

#include "xibasin/atlas.h"
#include "xibasin/commands.h"
#include "xibasin/config.h"
#include "xibasin/verify.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace xibasin;
namespace fs = std::filesystem;

namespace {

struct Verdict
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            note("failed: " + what);
        }
    }
    void note(const std::string& s)
    {
        if (!detail.empty())
            detail += "; ";
        detail += s;
    }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const char* const kRootOrdinates[] = {"14.13472514173", "21.02203963877", "25.01085758014", "30.42487612585"};

Verdict root_reproduction()
{
    Verdict v;
    const PrecisionContext ctx(100);
    const FunctionHandle h = xi_handle(ctx);
    const BNQNParams p = BNQNParams::defaults(ctx, 1);
    const char* seeds[] = {"14", "21", "25", "30.4"};
    for (int i = 0; i < 4; ++i) {
        const BigComplex z0(Real(0L, ctx), Real::parse(seeds[i], ctx));
        const Trajectory t = bnqn_run(h, z0, p);
        const BigComplex root(Real::parse("0.5", ctx), Real::parse(kRootOrdinates[i], ctx));
        const double dist = abs(t.terminal - root).to_double();
        v.note(std::string("(0,") + seeds[i] + ") -> " + std::to_string(t.iterations()) + " it, dist " + fmt("%.1e", dist));
        v.require(t.outcome == Outcome::ConvergedRoot, std::string("outcome from (0,") + seeds[i] + ")");
        v.require(t.iterations() <= 40, std::string("iteration budget from (0,") + seeds[i] + ")");
        v.require(dist <= 1e-6, std::string("distance from (0,") + seeds[i] + ")");
    }
    return v;
}

Verdict completeness()
{
    Verdict v;
    // [100,101] and [1000,1001] hold no zeros, so T=111 (two zeros) is added to exercise a nonzero count.
    for (const char* height : {"100", "1000", "111"}) {
        RunConfig cfg = RunConfig::parse(experiment_preset("exp2-lite") + "scan.height = " + height + "\n");
        cfg.resolve();
        const SeedScanReport rep = seed_scan(cfg.handle(), cfg.params(), cfg.seed_scan_options());
        bool all_verified = true;
        for (bool ok : rep.verified)
            all_verified = all_verified && ok;
        v.note(std::string("T=") + height + ": counted " + std::to_string(rep.counted) + ", found " +
               std::to_string(rep.found_in_window) + ", roots reached " + std::to_string(rep.roots.size()) +
               (all_verified ? " all verified" : " NOT all verified"));
        v.require(rep.complete(), std::string("found == counted at T=") + height);
        v.require(rep.count_residual < 0.1, std::string("count residual at T=") + height);
        v.require(!rep.roots.empty(), std::string("some root reached at T=") + height);
        v.require(all_verified, std::string("verification at T=") + height);
    }
    return v;
}

Verdict zero_counting()
{
    Verdict v;
    const PrecisionContext ctx(50);
    const FunctionHandle h = xi_handle(ctx);
    auto rect = [&](const char* lo, const char* hi) {
        return Rect{Real(-1L, ctx), Real(2L, ctx), Real::parse(lo, ctx), Real::parse(hi, ctx)};
    };
    const ZeroCount four = count_zeros_rect(h, rect("1", "31"));
    const ZeroCount none = count_zeros_rect(h, rect("1", "13"));
    v.note("counts " + std::to_string(four.count) + " and " + std::to_string(none.count));
    v.require(four.count == 4 && four.residual < 0.1, "count on [1,31]");
    v.require(none.count == 0 && none.residual < 0.1, "count on [1,13]");
    const SignScan s = sign_scan(Real(14L, ctx), Real(31L, ctx), Real::parse("0.05", ctx), ctx);
    v.note(std::to_string(s.brackets.size()) + " brackets");
    v.require(s.brackets.size() == 4, "four brackets on [14,31]");
    double worst = 0.0;
    for (std::size_t i = 0; i < s.brackets.size() && i < 4; ++i) {
        const auto b = refine_bracket(s.brackets[i], Real::parse("1e-8", ctx), ctx);
        const Real mid = (b.first + b.second) / 2L;
        worst = std::max(worst, abs(mid - Real::parse(kRootOrdinates[i], ctx)).to_double());
    }
    v.note("worst ordinate error " + fmt("%.1e", worst));
    v.require(worst <= 1e-4, "ordinates within 1e-4");
    return v;
}

Verdict heat_flow_identity()
{
    Verdict v;
    const PrecisionContext ctx(50);
    const FunctionHandle h = ht_handle(HeatFlowSpec{}, ctx);
    const Real tol = Real::pow10(-25, ctx.bits());
    const BigComplex zs[] = {BigComplex(0, 0, ctx), BigComplex(1, 0, ctx), BigComplex(10, 0, ctx),
                             BigComplex::parse("28+0.2i", ctx)};
    Real worst(0L, ctx);
    for (const auto& z : zs) {
        const BigComplex s = BigComplex(Real::parse("0.5", ctx)) + mul_i(z) / 2L;
        worst = max(worst, abs(h.value(z) * 8L - xi(s, ctx)));
    }
    v.note("worst |8 H_0(z) - xi(1/2 + iz/2)| = " + worst.to_string(3));
    v.require(worst <= tol, "identity within 1e-25");
    return v;
}

Verdict symmetry_and_reality()
{
    Verdict v;
    const PrecisionContext ctx(50);
    const Real tol = Real::pow10(-40, ctx.bits());
    SeededRng rng(12345);
    Real sym(0L, ctx), im(0L, ctx);
    for (int i = 0; i < 100; ++i) {
        const BigComplex s(rng.uniform(0, 1), rng.uniform(-100, 100), ctx);
        sym = max(sym, abs(testing::xi_by_definition(s, ctx) - testing::xi_by_definition(1L - s, ctx)));
    }
    for (int i = 0; i < 100; ++i) {
        const BigComplex s(0.5, rng.uniform(0, 100), ctx);
        im = max(im, abs(testing::xi_by_definition(s, ctx).im()));
    }
    v.note("max |xi(s) - xi(1-s)| = " + sym.to_string(3) + ", max |Im xi(1/2+it)| = " + im.to_string(3));
    v.require(sym <= tol, "symmetry within 1e-40");
    v.require(im <= tol, "reality within 1e-40");
    return v;
}

Verdict optimizer_invariants()
{
    Verdict v;
    const PrecisionContext ctx(30), fine(60);
    const std::vector<std::pair<FunctionHandle, FunctionHandle>> targets = {
        {testing::quadratic(ctx), testing::quadratic(fine)},
        {testing::degree8(ctx), testing::degree8(fine)},
        {sin_handle(ctx), sin_handle(fine)},
        {xi_handle(ctx), xi_handle(fine)},
    };
    SeededRng rng(606);
    int steps = 0, trajectories = 0;
    for (const auto& [h, f] : targets) {
        for (int i = 0; i < 10; ++i) {
            const BNQNParams p = BNQNParams::defaults(ctx, rng.next());
            const BigComplex z0(rng.uniform(-1, 2), rng.uniform(-32, 32), ctx);
            const Trajectory t = bnqn_run(h, z0, p);
            ++trajectories;
            steps += t.iterations();
            const auto bad = testing::trajectory_violations(t, p);
            if (!bad.empty())
                v.require(false, h.name() + " " + bad.front());
        }
    }
    v.note(std::to_string(trajectories) + " trajectories, " + std::to_string(steps) + " steps");
    const double limit = std::pow(10.0, -ctx.digits() / 3.0);
    double worst = 0.0;
    for (const auto& [h, f] : targets) {
        for (int i = 0; i < 50; ++i) {
            const BigComplex z(rng.uniform(-1, 2), rng.uniform(-32, 32), ctx);
            worst = std::max(worst, testing::hessian_fd_error(h, f, z));
        }
    }
    v.note("worst finite-difference error " + fmt("%.1e", worst) + " over 200 points");
    v.require(worst <= limit, "Hessian vs finite differences");
    return v;
}

Verdict saddle_and_tail()
{
    Verdict v;
    const PrecisionContext ctx(50);
    const FunctionHandle h = testing::quadratic(ctx);
    const std::vector<BigComplex> roots = {BigComplex(1, 0, ctx), BigComplex(-1, 0, ctx)};
    SeededRng rng(7);
    int to_roots = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const BNQNParams p = BNQNParams::defaults(ctx, derive_seed(7, i));
        const BigComplex z0(rng.uniform(-2, 2), rng.uniform(-2, 2), ctx);
        const Trajectory t = bnqn_run(h, z0, p);
        const Label l = classify_limit(t, roots, p.root_tol);
        if (!l.is_root())
            continue;
        ++to_roots;
        worst = std::max(worst, testing::worst_tail_ratio(t, roots[l.index()], ctx.digits()));
    }
    v.note(std::to_string(to_roots) + "/100 to +-1, worst tail ratio " + fmt("%.2g", worst));
    v.require(to_roots == 100, "all starts reach a root");
    v.require(worst <= 1.0, "quadratic tail");
    return v;
}

Verdict voronoi_similarity()
{
    Verdict v;
    RunConfig cfg = RunConfig::parse(experiment_preset("fig1") + "grid.nx = 100\ngrid.ny = 100\n");
    cfg.resolve();
    const FunctionHandle h = cfg.handle();
    const auto roots = cfg.root_list();
    const BasinGrid vor = voronoi_raster(roots, cfg.grid, cfg.context());
    for (Method m : {Method::BNQN, Method::Newton, Method::RandomRelaxed}) {
        const BasinGrid g = sweep(h, cfg.grid, cfg.sweep_options(m), roots);
        int nonempty = 0;
        for (std::size_t c : g.root_counts(roots.size()))
            nonempty += c > 0 ? 1 : 0;
        const double inner = agreement(g, vor, {{}, true});
        const double all = agreement(g, vor, {{}, false});
        v.note(to_string(m) + ": " + std::to_string(nonempty) + "/8 basins, agreement " + fmt("%.4f", inner) +
               " (all cells " + fmt("%.4f", all) + ")");
        v.require(nonempty == 8, to_string(m) + " basins");
        if (m == Method::BNQN)
            v.require(inner >= 0.60, "BNQN agreement >= 0.60");
    }
    return v;
}

std::map<std::string, std::string> read_tree(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file())
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        files[fs::relative(e.path(), root).string()] = buf.str();
    }
    return files;
}

Verdict determinism()
{
    Verdict v;
    struct Run
    {
        std::string command;
        std::string preset;
        std::string text;
    };
    const std::vector<Run> runs = {
        {"experiment", "fig1", "grid.nx = 50\ngrid.ny = 50\n"},
        {"experiment", "exp1", "dps = 30\ngrid.nx = 12\ngrid.ny = 12\n"},
        {"experiment", "exp2-lite", ""},
        {"solve", "", "function = xi\ndps = 30\nsolve.z0 = 0+14i\nsolve.seeds_height = 20\nsolve.seeds_count = 6\n"},
        {"verify", "", "function = xi\ndps = 30\n"},
        {"voronoi", "", "grid.nx = 40\ngrid.ny = 40\n"},
    };
    const fs::path dir = fs::current_path() / "acceptance_rerun";
    std::size_t files = 0;
    for (const Run& r : runs) {
        const std::string label = r.preset.empty() ? r.command : r.preset;
        std::map<std::string, std::string> snapshot[2];
        for (int pass = 0; pass < 2; ++pass) {
            fs::remove_all(dir);
            CommandRequest req;
            req.command = r.command;
            req.experiment = r.preset;
            req.config_text = r.text;
            req.seed = 11;
            req.out = dir.string();
            std::ostringstream log, err;
            const int code = run_command(req, log, err);
            v.require(code == kExitOk, label + " exit code " + std::to_string(code) + " " + err.str());
            snapshot[pass] = read_tree(dir);
        }
        files += snapshot[0].size();
        v.require(!snapshot[0].empty(), label + " produced files");
        v.require(snapshot[0] == snapshot[1], label + " outputs differ between runs");
    }
    fs::remove_all(dir);
    v.note(std::to_string(runs.size()) + " commands, " + std::to_string(files) + " files byte-identical");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"root reproduction from (0,14), (0,21), (0,25), (0,30.4)", root_reproduction},
        {"seed-scan completeness at T=100 and T=1000 (plus T=111)", completeness},
        {"zero counting and critical-line sign scan", zero_counting},
        {"heat-flow identity 8 H_0(z) = xi(1/2 + iz/2)", heat_flow_identity},
        {"xi symmetry and reality", symmetry_and_reality},
        {"optimizer invariants and Hessian finite differences", optimizer_invariants},
        {"saddle avoidance and quadratic tail", saddle_and_tail},
        {"Voronoi similarity on the degree-8 window", voronoi_similarity},
        {"determinism of reruns", determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(n))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d: %s - %s [%s] (%.1fs)\n", n, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
