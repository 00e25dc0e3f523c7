#pragma once

// Experiment driver behind the hwp command-line tool.

#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "hwp/arith.hpp"
#include "hwp/cyclo.hpp"

namespace hwp {

enum class Command { ThetaDemo, Lift, IdentityCheck, RemarkCheck, AnalyticCheck, LemmaCheck, Characters };
enum class Format { Json, Csv };

const char* command_name(Command c);

struct ExperimentConfig {
    Command command = Command::ThetaDemo;
    unsigned k = 1;
    u64 d = 1;
    u64 l = 1;
    unsigned i = 1;
    size_t nmax = 2000;
    u64 psi_modulus = 1;
    std::optional<size_t> psi_index;  // default: first primitive character, else principal
    bool weight3half = false;
    std::string input_path;
    std::string output_path;
    Format format = Format::Json;
    bool exact = false;
    // lemma-check
    double C = 1.0;
    double lambda = 0.0;
    std::optional<size_t> n1;  // default: number of coefficients
    double scan_width = 3.0;
    double t_max = 10.0;
    double grid_step = 0.1;
};

// Exit codes of run()
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitPeriodicity = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitUsage = 4;

struct RunResult {
    int exit_code = kExitPass;
    nlohmann::json report;
};

/// Runs one subcommand. The report follows
///   {"command", "params", "checks": [{"name", "pass", "detail"}], "pass"}
/// and is written to output_path when format is json. With format csv the
/// primary coefficient array is written there instead.
RunResult run(const ExperimentConfig& config);

/// Smallest p with values[n] = values[n + p] for every valid n, provided the
/// sample holds at least 3 full periods. nullopt means inconclusive.
/// Requires at least 16 values.
std::optional<size_t> detect_period(std::span<const CycloNumber> values);

}  // namespace hwp
