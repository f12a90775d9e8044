#pragma once

#include "homalg/cli/chart.hpp"
#include "homalg/cli/spec_file.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace homalg::cli {

enum ExitCode : int { exit_ok = 0, exit_math_failure = 1, exit_usage = 2 };

struct Invocation
{
    std::string command;
    std::vector<std::string> args;  // key=value pairs; the input path for `chart`
    std::optional<std::filesystem::path> spec_path;
    std::filesystem::path out_dir = "homalg-out";
    std::optional<DegreeWindow> window;
    Axes axes = Axes::Adams;
    unsigned jobs = 1;
};

const std::vector<std::string>& command_names();

// "t_min,t_max,s_max,stage_max".
DegreeWindow parse_window_flag(const std::string& text);

// Runs one command, writing artifacts under out_dir and a human-readable
// report to `log`. Mathematical failures also write out_dir/witness.json.
int run(const Invocation& inv, std::ostream& log);

}  // namespace homalg::cli
