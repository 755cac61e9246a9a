#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthlab/growth/profile.hpp"

namespace growthlab::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_invariant = 2,
    exit_nonconvergence = 3,
};

/// Closed set of verdicts for a profiled map.
enum class Verdict { not_divisorially_hyperbolic, map_not_subexponential, not_certified };
std::string to_string(Verdict v);

struct RunConfig {
    std::string command;  // profile, classify, lie
    std::string model = "torus";
    int n = 3;
    double t_min = 0.5;
    double t_max = 12.0;
    int t_steps = 48;
    /// Unset: Gauss–Legendre for m = 2, Monte Carlo for m >= 3.
    std::optional<growth::QuadMethod> method;
    growth::QuadratureSpec quad;
    double r0 = 1.0;
    std::string structure;
    std::vector<std::string> checks;
    std::string out_csv;
    std::string out_json;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct ProfileReport {
    growth::GrowthProfile profile;
    growth::ConditionI condition_i;
    growth::ConditionII condition_ii;
    growth::FiniteOrder finite_order;
    std::optional<growth::HoelderReport> hoelder;
    std::vector<growth::InvariantViolation> violations;
    growth::ConvergenceReport convergence;
    Verdict verdict = Verdict::not_certified;
    std::vector<std::string> notes;
    int exit_code = exit_ok;
};

Verdict verdict_from(const growth::ConditionI& c1, const growth::ConditionII& c2);

/// Builds the profile and all analyses for a profile/classify config.
ProfileReport run_profile(const RunConfig& config, std::ostream& log);

void write_csv(const growth::GrowthProfile& p, std::ostream& out);
nlohmann::json report_json(const RunConfig& config, const ProfileReport& report);

/// Runs the requested Lie checks; returns the report and sets exit_code.
nlohmann::json run_lie(const RunConfig& config, std::ostream& log, int& exit_code);

/// Full command line entry point; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace growthlab::cli
