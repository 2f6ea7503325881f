#ifndef XIBASIN_COMMANDS_H
#define XIBASIN_COMMANDS_H

#include "xibasin/config.h"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xibasin {

enum ExitCode : int
{
    kExitOk = 0,
    kExitRunFailure = 1,
    kExitConfigError = 2,
    kExitGated = 3,
};

/// Files produced by a command, keyed by path relative to the output directory. Commands
/// compute everything first; a single writer stores the set afterwards.
struct OutputSet
{
    std::map<std::string, std::string> files;
    int exit_code = kExitOk;

    void merge(const OutputSet& other, const std::string& prefix);
};

/// Writes every file below `dir`, creating directories as needed.
void write_outputs(const OutputSet& outputs, const std::string& dir);

// Command bodies. The config must already be resolved.
OutputSet solve_outputs(const RunConfig& cfg);
OutputSet basins_outputs(const RunConfig& cfg);
OutputSet voronoi_outputs(const RunConfig& cfg);
OutputSet verify_outputs(const RunConfig& cfg);

/// Names of the experiment presets.
std::vector<std::string> experiment_names();
/// Key=value text of a preset; throws ConfigError for unknown names.
std::string experiment_preset(const std::string& name);
/// True when the preset (after overrides) needs --allow-long.
bool experiment_gated(const RunConfig& cfg);
OutputSet experiment_outputs(const RunConfig& cfg);

struct CommandRequest
{
    std::string command;
    /// Raw config text; for experiments it is layered over the preset.
    std::string config_text;
    /// Preset name given on the command line; overrides the experiment key.
    std::string experiment;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool allow_long = false;
};

/// Parses, resolves, runs and writes. Diagnostics go to `err`, a short summary to `log`.
int run_command(const CommandRequest& request, std::ostream& log, std::ostream& err);

} // namespace xibasin

#endif
