#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tps/degrees.hpp"
#include "tps/edge_stream.hpp"
#include "tps/scoring.hpp"
#include "tps/types.hpp"

namespace tps {

// Cardinalities of the auxiliary structures a partitioner allocates. None of
// them may depend on |E|.
struct StateCounters {
    std::uint64_t degree_entries = 0;
    std::uint64_t v2c_entries = 0;
    std::uint64_t cluster_volume_entries = 0;
    std::uint64_t c2p_entries = 0;
    std::uint64_t partition_volume_entries = 0;
    std::uint64_t replication_cells = 0;
    std::uint64_t load_entries = 0;

    std::uint64_t total() const
    {
        return degree_entries + v2c_entries + cluster_volume_entries + c2p_entries + partition_volume_entries +
               replication_cells + load_entries;
    }
    friend bool operator==(const StateCounters&, const StateCounters&) = default;
};

struct PhaseTime {
    std::string name;
    double seconds = 0.0;
};

struct RunReport {
    std::string algorithm;
    std::uint32_t k = 0;
    double alpha = 0.0;
    double lambda = 0.0;

    eid_t edges = 0;
    std::uint64_t vertices = 0;
    std::uint64_t covered_vertices = 0;

    double rf = 1.0;
    bool rf_degenerate = false;  // no covered vertex: rf reported as 1.0

    eid_t capacity = 0;  // ceil(alpha |E| / k)
    double alpha_observed = 1.0;
    bool alpha_violated = false;  // some partition exceeded capacity
    std::vector<eid_t> partition_sizes;

    std::optional<double> modularity;
    bool modularity_degenerate = false;
    std::optional<double> prepartitioned_ratio;
    eid_t prepartitioned_edges = 0;
    eid_t redirected_edges = 0;
    std::uint64_t clusters = 0;

    bool true_degree_scoring = false;  // HDRF theta uses true, not partial, degrees
    std::uint64_t stream_passes = 0;
    std::vector<PhaseTime> phase_times;
    StateCounters peak_state;

    double total_seconds() const;

    std::string to_json() const;
    void write_json(const std::filesystem::path& path) const;
    // One "key: value" line per field.
    std::string to_text() const;
};

struct ReplicationSummary {
    double rf = 1.0;
    bool degenerate = false;
    std::uint64_t replicas = 0;  // sum over p of |V(p)|
    std::uint64_t covered = 0;   // vertices with at least one incident edge
};

// (sum over p of |V(p)|) / |{v : deg(v) > 0}|.
ReplicationSummary replication_factor(const ReplicationMatrix& matrix);

// Recomputes RF by replaying the stream against an assignment (one partition
// id per edge), without going through ReplicationMatrix.
ReplicationSummary replication_factor(const EdgeStream& stream, std::span<const part_t> assignment,
                                      std::uint32_t k);

// max load / (|E| / k); 1.0 for an empty graph.
double observed_imbalance(std::span<const eid_t> sizes, eid_t edges);

struct ModularityResult {
    double q = 0.0;
    bool degenerate = false;  // |E| == 0
};

// Q = sum_c (intra_c / |E| - (vol_c / 2|E|)^2), one pass over the stream.
// Self-loops count as intra-cluster edges and add 2 to vol_c.
ModularityResult modularity(const EdgeStream& stream, std::span<const cid_t> v2c, const DegreeTable& degrees);

// Same formula from precomputed totals.
ModularityResult modularity_from_totals(eid_t intra_edges, std::span<const volume_t> cluster_volumes,
                                        eid_t edges);

// Exhaustive minimum RF over every balanced assignment (capacity
// ceil(alpha |E| / k)). Refuses instances with more than 10 edges or k > 3.
double brute_force_min_rf(std::span<const Edge> edges, std::uint32_t k, double alpha);

// Builds a report for an existing assignment file (the `metrics` subcommand),
// streaming the edge list and the assignment side by side. Modularity is
// included when v2c is given.
RunReport evaluate_assignment(const EdgeStream& stream, const std::filesystem::path& assignment,
                              std::uint32_t k, double alpha,
                              std::optional<std::span<const cid_t>> v2c = std::nullopt);

}  // namespace tps
