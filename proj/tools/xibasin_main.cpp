#include "xibasin/commands.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv)
{
    CLI::App app{"Basins of attraction and root finding for the Riemann xi function"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool allow_long = false;
    std::string experiment;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value configuration file")->required();
        sub->add_option("--seed", seed, "global RNG seed");
        sub->add_option("--out", out, "output directory");
        sub->add_flag("--allow-long", allow_long, "permit long-running presets");
    };
    for (const char* name : {"solve", "basins", "voronoi", "verify"})
        add_common(app.add_subcommand(name));
    auto* exp = app.add_subcommand("experiment", "run a named preset: fig1, exp1, exp2, exp3, exp2-lite, exp3-lite, exp4");
    add_common(exp);
    exp->add_option("name", experiment, "preset name (overrides the experiment key)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : xibasin::kExitConfigError;
    }

    xibasin::CommandRequest request;
    request.command = app.get_subcommands().front()->get_name();
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "config error: cannot read config file '" << config_path << "'\n";
        return xibasin::kExitConfigError;
    }
    std::stringstream text;
    text << in.rdbuf();
    request.config_text = text.str();
    request.experiment = experiment;
    request.seed = seed;
    request.out = out;
    request.allow_long = allow_long;
    return xibasin::run_command(request, std::cout, std::cerr);
}
