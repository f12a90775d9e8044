#include "homalg/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

const std::map<std::string, std::string> descriptions{
    {"check-regular", "check that the [ideal] sequence is regular within the window"},
    {"tor", "Tor(R/I, R/I) against the exterior closed form; s=<k> compares Tor(R/I, R/I^k)"},
    {"tower", "build and verify the resolution K^(s-1) of R/I^s (s=<k>)"},
    {"exactness", "exactness of the boundary sequence of graded pieces (s=<k>, default 2..stage_max)"},
    {"cotor", "cobar cohomology of the exterior Hopf algebroid on R/I (or [example])"},
    {"e2", "Kunneth and Adams E_2 tables with collapse audit (example=A|B|C p= n= j_max=)"},
    {"complete", "I-adic completion tower (shifts=d1,d2,... for a free module)"},
    {"chart", "render a rank CSV as SVG"},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graded homological algebra over regular quotients"};
    app.require_subcommand(1);

    std::string spec, out = "homalg-out", window, axes = "adams";
    unsigned jobs = 1;
    app.add_option("--spec", spec, "spec file");
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--window", window, "t_min,t_max,s_max,stage_max (overrides [window])");
    app.add_option("--axes", axes, "chart axes")->check(CLI::IsMember({"adams", "cartesian"}))->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for independent bidegrees")->check(CLI::Range(1u, 256u));

    std::map<std::string, std::vector<std::string>> args;
    for (const auto& name : homalg::cli::command_names()) {
        auto* sub = app.add_subcommand(name, descriptions.at(name));
        sub->fallthrough();
        sub->add_option("args", args[name], name == "chart" ? "input CSV" : "key=value arguments");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : homalg::cli::exit_usage;
    }

    homalg::cli::Invocation inv;
    inv.command = app.get_subcommands().front()->get_name();
    inv.args = args[inv.command];
    if (!spec.empty())
        inv.spec_path = spec;
    inv.out_dir = out;
    inv.jobs = jobs;
    try {
        if (!window.empty())
            inv.window = homalg::cli::parse_window_flag(window);
        inv.axes = homalg::cli::parse_axes(axes);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return homalg::cli::exit_usage;
    }
    return homalg::cli::run(inv, std::cout);
}
