#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stefan_front/io.hpp"

namespace io = stefan_front::io;

int main(int argc, char** argv) {
    CLI::App app{"Free-boundary reaction-diffusion runs, semi-waves and thresholds"};
    std::string command;
    std::string config;
    std::string out;
    unsigned jobs = 0;
    app.add_option("command", command, "simulate | semiwave | threshold | sweep")
        ->required()
        ->check(CLI::IsMember({"simulate", "semiwave", "threshold", "sweep"}));
    app.add_option("--config", config, "JSON job file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out, "output directory (overrides out_dir)");
    app.add_option("--jobs", jobs, "sweep workers, 0 = one per core");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? io::exit_code::ok : io::exit_code::config_error;
    }

    io::JobConfig job;
    try {
        job = io::parse_config(config, io::command_from_string(command));
    } catch (const stefan_front::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return io::exit_code::config_error;
    }
    if (!out.empty()) job.out_dir = out;
    return io::execute(job, jobs);
}
