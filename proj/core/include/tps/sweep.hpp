#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tps/scoring.hpp"

namespace tps {

enum class Algorithm { two_phase, hdrf, dbh };

std::string to_string(Algorithm a);
// Accepts "2ps", "hdrf", "dbh". Throws ConfigError otherwise.
Algorithm parse_algorithm(const std::string& name);

// Synthetic power-law sweep: every (exponent, seed) graph is generated once
// and partitioned by every listed algorithm.
struct ExperimentSpec {
    std::vector<double> exponents;
    std::uint64_t n_vertices = 100000;
    std::uint32_t k = 128;
    std::vector<std::uint64_t> seeds;
    std::vector<Algorithm> algorithms;
    double alpha = 1.05;
    HdrfParams hdrf;
    std::filesystem::path scratch_dir;  // empty: scratch_directory()

    void validate() const;
};

struct SweepRow {
    double exponent = 0.0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::two_phase;
    bool ok = false;
    std::string error;

    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    double rf = 0.0;
    std::optional<double> modularity;
    std::optional<double> prepartitioned_ratio;
    double alpha_observed = 0.0;
    bool alpha_violated = false;
    double seconds = 0.0;
};

// Seed-averaged values for one (exponent, algorithm) cell. Failed rows are
// excluded from the means.
struct SweepSummary {
    double exponent = 0.0;
    Algorithm algorithm = Algorithm::two_phase;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double rf = 0.0;
    std::optional<double> modularity;
    std::optional<double> prepartitioned_ratio;
    double alpha_observed = 0.0;
};

// A failing cell is recorded with ok = false and the sweep continues.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows);

// Tab-separated, one header line, one row per cell.
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_summary(std::ostream& out, const std::vector<SweepSummary>& summary);

}  // namespace tps
