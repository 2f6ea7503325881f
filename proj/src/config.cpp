#include "xibasin/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace xibasin {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value)
{
    throw ConfigError("invalid value for key '" + key + "': '" + value + "'");
}

long parse_long(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used == value.size())
            return v;
    } catch (const std::exception&) {
    }
    bad_value(key, value);
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size() && std::isfinite(v))
            return v;
    } catch (const std::exception&) {
    }
    bad_value(key, value);
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_real(const std::string& key, const std::string& value)
{
    try {
        Real::parse(value, 64);
    } catch (const Error&) {
        bad_value(key, value);
    }
}

/// Empty means "use the default".
void check_optional_real(const std::string& key, const std::string& value)
{
    if (!value.empty())
        check_real(key, value);
}

void check_complex_list(const std::string& key, const std::string& value)
{
    try {
        for (const auto& item : split(value, ';'))
            BigComplex::parse(item, 64);
    } catch (const Error&) {
        bad_value(key, value);
    }
}

struct Key
{
    std::string name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <class T>
Key int_key(std::string name, T RunConfig::*field, long lo)
{
    return {name,
            [name, field, lo](RunConfig& c, const std::string& v) {
                const long x = parse_long(name, v);
                if (x < lo)
                    bad_value(name, v);
                c.*field = static_cast<T>(x);
            },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Key text_key(std::string name, std::string RunConfig::*field, std::function<void(const std::string&, const std::string&)> check = {})
{
    return {name,
            [name, field, check](RunConfig& c, const std::string& v) {
                if (check)
                    check(name, v);
                c.*field = v;
            },
            [field](const RunConfig& c) { return c.*field; }};
}

Key real_key(std::string name, std::string RunConfig::*field)
{
    return text_key(std::move(name), field, check_real);
}

Key grid_double(std::string name, double GridSpec::*field)
{
    return {name, [name, field](RunConfig& c, const std::string& v) { c.grid.*field = parse_double(name, v); },
            [field](const RunConfig& c) { return format_double(c.grid.*field); }};
}

Key grid_int(std::string name, int GridSpec::*field)
{
    return {name,
            [name, field](RunConfig& c, const std::string& v) {
                const long x = parse_long(name, v);
                if (x < 1 || x > 100000)
                    bad_value(name, v);
                c.grid.*field = static_cast<int>(x);
            },
            [field](const RunConfig& c) { return std::to_string(c.grid.*field); }};
}

void check_choice(const std::string& key, const std::string& value, std::initializer_list<const char*> options)
{
    for (const char* o : options)
        if (value == o)
            return;
    bad_value(key, value);
}

const std::vector<Key>& keys()
{
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back(text_key("experiment", &RunConfig::experiment));
        k.push_back(text_key("function", &RunConfig::function, [](const std::string& key, const std::string& v) {
            check_choice(key, v, {"poly", "sin", "xi", "ht"});
        }));
        k.push_back(text_key("roots", &RunConfig::roots, [](const std::string& key, const std::string& v) {
            if (v != "xi8" && v != "auto")
                check_complex_list(key, v);
        }));
        k.push_back(text_key("coefficients", &RunConfig::coefficients, check_complex_list));
        k.push_back(real_key("ht.t", &RunConfig::ht_t));
        k.push_back(int_key("ht.series_terms", &RunConfig::ht_series_terms, 0));
        k.push_back({"ht.upper_cutoff",
                     [](RunConfig& c, const std::string& v) {
                         c.ht_upper_cutoff = parse_double("ht.upper_cutoff", v);
                         if (c.ht_upper_cutoff < 0)
                             bad_value("ht.upper_cutoff", v);
                     },
                     [](const RunConfig& c) { return format_double(c.ht_upper_cutoff); }});
        k.push_back(int_key("ht.quadrature_nodes", &RunConfig::ht_quadrature_nodes, 2));
        k.push_back(int_key("dps", &RunConfig::dps, 0));
        k.push_back(int_key("guard_digits", &RunConfig::guard_digits, 0));
        k.push_back(text_key("method", &RunConfig::method, [](const std::string& key, const std::string& v) {
            try {
                parse_method(v);
            } catch (const Error&) {
                bad_value(key, v);
            }
        }));
        k.push_back(text_key("methods", &RunConfig::methods, [](const std::string& key, const std::string& v) {
            try {
                for (const auto& m : split(v, ','))
                    parse_method(m);
            } catch (const Error&) {
                bad_value(key, v);
            }
        }));
        k.push_back(text_key("alpha", &RunConfig::alpha, check_complex_list));
        k.push_back(text_key("deltas", &RunConfig::deltas, [](const std::string& key, const std::string& v) {
            for (const auto& d : split(v, ','))
                check_real(key, d);
        }));
        k.push_back(real_key("theta", &RunConfig::theta));
        k.push_back(real_key("tau", &RunConfig::tau));
        k.push_back(real_key("gamma0", &RunConfig::gamma0));
        k.push_back(int_key("max_iter", &RunConfig::max_iter, 0));
        k.push_back(text_key("grad_tol", &RunConfig::grad_tol, check_optional_real));
        k.push_back(int_key("max_halvings", &RunConfig::max_halvings, 0));
        k.push_back(real_key("root_tol", &RunConfig::root_tol));
        k.push_back(real_key("divergence_factor", &RunConfig::divergence_factor));
        k.push_back({"seed",
                     [](RunConfig& c, const std::string& v) {
                         try {
                             std::size_t used = 0;
                             c.seed = std::stoull(v, &used);
                             if (used != v.size() || v.front() == '-')
                                 bad_value("seed", v);
                         } catch (const std::logic_error&) {
                             bad_value("seed", v);
                         }
                     },
                     [](const RunConfig& c) { return std::to_string(c.seed); }});
        k.push_back(text_key("solve.z0", &RunConfig::z0, check_complex_list));
        k.push_back(text_key("solve.seeds_height", &RunConfig::seeds_height, check_optional_real));
        k.push_back(int_key("solve.seeds_count", &RunConfig::seeds_count, 0));
        k.push_back(int_key("solve.seeds_divisions", &RunConfig::seeds_divisions, 1));
        k.push_back(grid_double("grid.x_min", &GridSpec::x_min));
        k.push_back(grid_double("grid.x_max", &GridSpec::x_max));
        k.push_back(grid_double("grid.y_min", &GridSpec::y_min));
        k.push_back(grid_double("grid.y_max", &GridSpec::y_max));
        k.push_back(grid_int("grid.nx", &GridSpec::nx));
        k.push_back(grid_int("grid.ny", &GridSpec::ny));
        k.push_back(grid_double("grid.y_render_scale", &GridSpec::y_render_scale));
        k.push_back({"voronoi",
                     [](RunConfig& c, const std::string& v) {
                         if (v == "true" || v == "1")
                             c.voronoi = true;
                         else if (v == "false" || v == "0")
                             c.voronoi = false;
                         else
                             bad_value("voronoi", v);
                     },
                     [](const RunConfig& c) { return std::string(c.voronoi ? "true" : "false"); }});
        k.push_back(text_key("sites", &RunConfig::sites, check_complex_list));
        k.push_back(int_key("threads", &RunConfig::threads, 0));
        k.push_back(real_key("window.x_lo", &RunConfig::window_x_lo));
        k.push_back(real_key("window.x_hi", &RunConfig::window_x_hi));
        k.push_back(real_key("window.y_lo", &RunConfig::window_y_lo));
        k.push_back(real_key("window.y_hi", &RunConfig::window_y_hi));
        k.push_back(real_key("scan.step", &RunConfig::scan_step));
        k.push_back(real_key("scan.height", &RunConfig::scan_height));
        k.push_back(real_key("scan.window", &RunConfig::scan_window));
        k.push_back(int_key("scan.divisions", &RunConfig::scan_divisions, 1));
        k.push_back(int_key("scan.refinement", &RunConfig::scan_refinement, 2));
        k.push_back(int_key("scan.max_extension", &RunConfig::scan_max_extension, 0));
        k.push_back(text_key("out", &RunConfig::out));
        k.push_back(int_key("output_digits", &RunConfig::output_digits, 1));
        return k;
    }();
    return table;
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value)
{
    for (const auto& k : keys()) {
        if (k.name == key) {
            k.set(*this, value);
            return;
        }
    }
    throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::apply(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        set(key, trim(line.substr(eq + 1)));
    }
}

RunConfig RunConfig::parse(const std::string& text)
{
    RunConfig c;
    c.apply(text);
    return c;
}

RunConfig RunConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void RunConfig::resolve()
{
    if (dps == 0)
        dps = function == "xi" ? 100 : 50;
    if (dps < 15)
        throw ConfigError("invalid value for key 'dps': must be >= 15");
    if (grad_tol.empty())
        grad_tol = "1e-" + std::to_string(dps / 2);
    if (deltas.empty()) {
        std::string text;
        for (const auto& d : draw_deltas(seed, context())) {
            if (!text.empty())
                text += ", ";
            text += d.to_fixed(6);
        }
        deltas = text;
    }
    if (methods.empty())
        methods = method;
    try {
        grid.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid grid: ") + e.what());
    }
}

std::string RunConfig::echo() const
{
    std::string out;
    for (const auto& k : keys())
        out += k.name + " = " + k.get(*this) + "\n";
    return out;
}

PrecisionContext RunConfig::context() const
{
    return PrecisionContext(dps == 0 ? (function == "xi" ? 100 : 50) : dps, guard_digits);
}

std::vector<BigComplex> RunConfig::root_list() const
{
    const PrecisionContext ctx = context();
    if (roots == "xi8")
        return first_eight_xi_zeros(ctx);
    if (roots == "auto") {
        if (function != "sin")
            throw ConfigError("invalid value for key 'roots': 'auto' is only defined for function = sin");
        std::vector<BigComplex> out;
        const long lo = static_cast<long>(std::floor(grid.x_min / std::numbers::pi)) - 1;
        const long hi = static_cast<long>(std::ceil(grid.x_max / std::numbers::pi)) + 1;
        for (long k = lo; k <= hi; ++k)
            out.emplace_back(Real::pi(ctx.bits()) * k, Real(ctx.bits()));
        return out;
    }
    std::vector<BigComplex> out;
    for (const auto& item : split(roots, ';'))
        out.push_back(BigComplex::parse(item, ctx));
    return out;
}

std::vector<BigComplex> RunConfig::site_list() const
{
    if (sites.empty())
        return root_list();
    std::vector<BigComplex> out;
    for (const auto& item : split(sites, ';'))
        out.push_back(BigComplex::parse(item, context()));
    return out;
}

FunctionHandle RunConfig::handle() const
{
    const PrecisionContext ctx = context();
    if (function == "poly") {
        if (!coefficients.empty()) {
            std::vector<BigComplex> c;
            for (const auto& item : split(coefficients, ';'))
                c.push_back(BigComplex::parse(item, ctx));
            return poly_handle(PolynomialSpec::from_coefficients(std::move(c)), ctx);
        }
        return poly_handle(PolynomialSpec::from_roots(root_list()), ctx);
    }
    if (function == "sin")
        return sin_handle(ctx);
    if (function == "xi")
        return xi_handle(ctx);
    HeatFlowSpec spec;
    spec.t = ht_t;
    spec.series_terms = ht_series_terms;
    spec.upper_cutoff = ht_upper_cutoff;
    spec.quadrature_nodes = ht_quadrature_nodes;
    return ht_handle(spec, ctx);
}

BNQNParams RunConfig::params() const
{
    const PrecisionContext ctx = context();
    BNQNParams p = BNQNParams::defaults(ctx, seed);
    if (!deltas.empty()) {
        p.deltas.clear();
        for (const auto& d : split(deltas, ','))
            p.deltas.push_back(Real::parse(d, ctx));
    }
    p.theta = Real::parse(theta, ctx);
    p.tau = Real::parse(tau, ctx);
    p.gamma0 = Real::parse(gamma0, ctx);
    p.max_iter = max_iter;
    if (!grad_tol.empty())
        p.grad_tol = Real::parse(grad_tol, ctx);
    p.max_halvings = max_halvings;
    p.root_tol = Real::parse(root_tol, ctx);
    p.divergence_factor = Real::parse(divergence_factor, ctx);
    try {
        p.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid BNQN parameters: ") + e.what());
    }
    return p;
}

std::vector<Method> RunConfig::method_list() const
{
    std::vector<Method> out;
    for (const auto& m : split(methods.empty() ? method : methods, ','))
        out.push_back(parse_method(m));
    return out;
}

SweepOptions RunConfig::sweep_options(Method m) const
{
    SweepOptions o;
    o.method = m;
    o.params = params();
    o.alpha = BigComplex::parse(alpha, context());
    o.seed = seed;
    o.threads = threads;
    return o;
}

std::vector<BigComplex> RunConfig::start_points() const
{
    const PrecisionContext ctx = context();
    std::vector<BigComplex> out;
    for (const auto& item : split(z0, ';'))
        out.push_back(BigComplex::parse(item, ctx));
    if (!seeds_height.empty()) {
        const Real h = Real::parse(seeds_height, ctx);
        for (int j = 0; j <= seeds_count; ++j)
            out.emplace_back(Real(ctx.bits()), h + Real(static_cast<long>(j), ctx) / static_cast<long>(seeds_divisions));
    }
    return out;
}

SeedScanOptions RunConfig::seed_scan_options() const
{
    const PrecisionContext ctx = context();
    return {Real::parse(scan_height, ctx), Real::parse(scan_window, ctx), scan_divisions, scan_refinement,
            scan_max_extension, Real::parse(window_x_lo, ctx), Real::parse(window_x_hi, ctx)};
}

Rect RunConfig::window() const
{
    const PrecisionContext ctx = context();
    return {Real::parse(window_x_lo, ctx), Real::parse(window_x_hi, ctx), Real::parse(window_y_lo, ctx),
            Real::parse(window_y_hi, ctx)};
}

} // namespace xibasin
