#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcm/quadform.hpp"

namespace dcm {

/// Bad flag combinations, malformed polynomials, non-inert discriminants:
/// everything the binary maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Where a run's discriminants come from.  Exactly one source per run.
enum class DiscSource { ExplicitList, DegreeRange, ConstantFamily };

struct ExperimentConfig {
    int q = 3;
    DiscSource source = DiscSource::ExplicitList;
    std::vector<Poly> discs;           // ExplicitList
    int deg_lo = 0, deg_hi = 0;        // DegreeRange, inclusive
    Fq::Elem family_unit = 0;          // ConstantFamily: the constant D_K
    int fdeg_lo = 0, fdeg_hi = 0;      // ConstantFamily: monic conductor degrees
    int theta_points = 32;             // grid size for t / theta sweeps
    int truncation = 60;               // N for truncated series
    int nodes = 512;                   // spectral quadrature nodes
    std::uint64_t seed = 1;            // mandatory at the flag level
    double budget = 1e8;               // cap on q^(deg D) enumeration work
    int jobs = 1;                      // worker threads over discriminants
    std::string out;                   // artifact base path; empty = stdout
};

/// Range text "lo-hi" or a single "d"; throws ConfigError on junk.
std::pair<int, int> parse_range(const std::string& text);

/// Family text "constant:<unit>:<fdeg-range>"; fills family_unit and the
/// fdeg bounds, validating that the unit is a non-square of F_q.
void parse_family(const std::string& text, ExperimentConfig& cfg);

/// Wraps Poly::parse with config-grade errors and a field check against q.
Poly parse_poly_arg(const std::string& text, int q);

/// Validates the config and expands the discriminant source into concrete
/// inert discriminants in canonical polynomial order.  Discriminants whose
/// q^(deg D) enumeration estimate exceeds the budget land in skipped.
struct ResolvedDiscs {
    std::vector<Discriminant> run;
    std::vector<Poly> skipped;
};
ResolvedDiscs resolve_discriminants(const ExperimentConfig& cfg);

/// One vertex of one discriminant's class histogram.  target is mu(v_n)
/// for moving D_K and, for the constant-field family, 2 mu(v_n) on the
/// parity class n = deg f (mod 2) and 0 off it.
struct DistributionRow {
    int q = 0;
    std::string D;
    int degD = 0;
    std::size_t h = 0;
    int n = 0;
    std::size_t count = 0;
    double freq = 0.0;
    double target = 0.0;
    double abs_err = 0.0;
};

/// Histogram rows for vertices 0 .. deg D / 2; counts sum to h(D) and
/// frequencies to 1.
std::vector<DistributionRow> distribution_rows(const ClassSet& cs);

/// Per-discriminant and per-degree error aggregates with the fitted
/// log-log slope of median error against |D|.
struct DistributionSummary {
    struct PerDisc {
        std::string D;
        int degD = 0;
        std::size_t h = 0;
        double max_err = 0.0;
        double freq0 = 0.0;  // frequency at the ramified vertex v_0
    };
    struct PerDegree {
        int degD = 0;
        std::size_t discs = 0;
        double median_max_err = 0.0;
    };
    std::vector<PerDisc> per_disc;
    std::vector<PerDegree> per_degree;
    std::optional<double> slope;  // needs at least two degrees
};
DistributionSummary summarize_distribution(const std::vector<std::vector<DistributionRow>>& rows);

/// Payloads of one command run; main() routes them to --out files or
/// stdout.  exit_code follows the binary's contract: 0 pass, 1 failed
/// verification, 2 unusable config (the latter surfaces as ConfigError
/// before a result exists).
struct CommandResult {
    int exit_code = 0;
    std::string csv;
    std::string json;
};

CommandResult cmd_distribution(const ExperimentConfig& cfg);
CommandResult cmd_verify(const std::string& suites, const ExperimentConfig& cfg);
CommandResult cmd_lgrowth(const ExperimentConfig& cfg);
CommandResult cmd_classset(const ExperimentConfig& cfg);
CommandResult cmd_lpoly(const ExperimentConfig& cfg);

/// The config echo embedded in every JSON report.
std::string config_json(const ExperimentConfig& cfg);

}  // namespace dcm
