#pragma once

// Job configuration (strict JSON), artifact writers and job execution for the
// command line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stefan_front/classifier.hpp"
#include "stefan_front/semiwave.hpp"
#include "stefan_front/solver.hpp"

namespace stefan_front::io {

enum class Command { Simulate, Semiwave, Threshold, Sweep };

std::string to_string(Command command);
Command command_from_string(const std::string& name);  // ParseError if unknown

struct NonlinearitySpec {
    std::string name = "logistic";  // logistic | cubic_bistable | combustion | custom
    std::optional<double> theta;
    std::vector<double> coefficients;  // custom: sum_k c_k u^k
};

Nonlinearity build_nonlinearity(const NonlinearitySpec& spec);

struct SweepAxes {
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<double> h0;
};

struct JobConfig {
    Command command = Command::Simulate;
    NonlinearitySpec f;
    SolverConfig solver;  // solver.nl is built from f
    ClassifierOptions classifier;
    ThresholdOptions threshold;
    SweepAxes sweep;
    std::string out_dir = "out";
    bool emit_plot_data = false;
    /// simulate/sweep: stop a run at the first certificate.
    bool stop_on_certificate = true;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// ParseError naming the key path and its line in the file. `requested`
/// fills in a missing "command" and must match one that is present.
JobConfig parse_config(const std::filesystem::path& path, std::optional<Command> requested = {});
JobConfig parse_config_text(const std::string& text, const std::string& source = "<config>",
                            std::optional<Command> requested = {});

/// Full echo of a config with every default filled in.
nlohmann::ordered_json to_json(const JobConfig& job);

bool operator==(const JobConfig& a, const JobConfig& b);

/// One job per point of mu x sigma x h0 (an empty axis keeps the base value).
std::vector<JobConfig> enumerate_sweep(const JobConfig& job);

// Writers. Data files carry no timestamps; run metadata goes to report.json.

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& value);
void write_fronts_csv(const std::filesystem::path& path, const Run& run);
void write_snapshots_csv(const std::filesystem::path& path, const Run& run);
void write_front_speed_csv(const std::filesystem::path& path, const Run& run);
void write_profile_csv(const std::filesystem::path& path, const std::vector<ProfilePoint>& profile,
                       const std::string& x_name, const std::string& v_name);

nlohmann::ordered_json report_json(const Run& run, double runtime_s);
nlohmann::ordered_json verdict_json(const Verdict& verdict, const std::optional<SpeedEstimate>& speed = {});
nlohmann::ordered_json threshold_json(const ThresholdResult& result);
nlohmann::ordered_json semiwave_json(const SemiWaveResult& result);

/// Outcome of one simulate job, also used for the sweep summary rows.
struct SimulateSummary {
    Verdict verdict;
    std::optional<SpeedEstimate> speed;
    Termination termination = Termination::TMax;
    double max_u = 0.0;
    double width = 0.0;
};

SimulateSummary run_simulate(const JobConfig& job, const std::filesystem::path& dir);
SemiWaveResult run_semiwave(const JobConfig& job, const std::filesystem::path& dir);
ThresholdResult run_threshold(const JobConfig& job, const std::filesystem::path& dir);
/// Returns the number of sweep points whose run blew up.
std::size_t run_sweep(const JobConfig& job, const std::filesystem::path& dir, unsigned workers);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int numerical_failure = 2;
}  // namespace exit_code

/// Runs the job into `job.out_dir`; maps errors to exit codes and prints
/// them to stderr. workers = 0 means one per hardware thread.
int execute(const JobConfig& job, unsigned workers = 0);

}  // namespace stefan_front::io
