// Command-line front end: constructs scale-invariant solutions of the
// homentropic Euler equations (Noh stagnation shock, expanding Tait bubble),
// integrates the reduced similarity ODEs, and runs finite-volume
// convergence checks. All numeric I/O uses g/cm^3, Mbar, cm, us.

#include <string>

#include <CLI11.hpp>

#include "isoeuler/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scale-invariant solutions of the homentropic inviscid Euler equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")
            ->required();
        sub->add_option("--out", out_dir, "output directory (default '.')");
        sub->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    add_common(app.add_subcommand(
        "noh", "sweep the stagnation-shock state over inflow velocities"));
    add_common(app.add_subcommand(
        "bubble", "emit the shock-free expanding-bubble profiles"));
    add_common(app.add_subcommand(
        "similarity", "integrate the reduced similarity ODEs"));
    add_common(app.add_subcommand(
        "verify", "finite-volume convergence checks against the exact solutions"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad flags/subcommands are config errors
    }

    isoeuler::OutputOptions opts;
    opts.out_dir = out_dir;
    opts.format = format == "json" ? isoeuler::OutputFormat::Json
                                   : isoeuler::OutputFormat::Csv;
    return isoeuler::run_command(app.get_subcommands().front()->get_name(),
                                 config_path, opts);
}
