#pragma once

#include <cstdint>
#include <vector>

#include "tps/assignment.hpp"
#include "tps/clustering.hpp"
#include "tps/degrees.hpp"
#include "tps/edge_stream.hpp"
#include "tps/metrics.hpp"
#include "tps/scoring.hpp"
#include "tps/types.hpp"

namespace tps {

// Cluster -> partition map. c2p is sized |V| like the other per-cluster
// arrays; empty clusters map to kNoPartition.
struct ClusterPlacement {
    std::vector<part_t> c2p;
    std::vector<volume_t> vol_p;

    part_t partition_of(cid_t c) const { return c2p[c]; }
};

// Sorted list scheduling: non-empty clusters by descending volume (lower id
// first on ties), each onto the partition with the least accumulated volume
// (lower id first on ties).
ClusterPlacement map_clusters_to_partitions(const ClusteringState& clustering, std::uint32_t k);

// Both endpoints in the same cluster, or in clusters placed on the same
// partition. The pre-partitioning pass assigns exactly these edges and the
// remaining-edge pass skips exactly these edges.
inline bool is_prepartitionable(const Edge& e, const ClusteringState& clustering,
                                const ClusterPlacement& placement)
{
    const cid_t c1 = clustering.v2c[e.first];
    const cid_t c2 = clustering.v2c[e.second];
    return c1 == c2 || placement.c2p[c1] == placement.c2p[c2];
}

struct PartitionState {
    ReplicationMatrix matrix;
    PartitionLoads loads;

    PartitionState() = default;
    PartitionState(std::size_t vertices, std::uint32_t k, eid_t capacity)
        : matrix(vertices, k), loads(k, capacity)
    {
    }
};

struct PrepartitionStats {
    eid_t assigned = 0;     // edges consumed by the pass
    eid_t redirected = 0;   // of those, moved off a full target partition
    eid_t intra_cluster = 0;
};

// Pass over the stream assigning every pre-partitionable edge to the partition
// of its first endpoint's cluster. If that partition is full the edge goes to
// the best HDRF-scoring partition that still has room.
PrepartitionStats prepartition_edges(const EdgeStream& stream, const ClusteringState& clustering,
                                     const ClusterPlacement& placement, PartitionState& state,
                                     const DegreeTable& degrees, const HdrfParams& params, AssignmentSink& sink);

// Pass over the stream assigning every other edge by HDRF score over the
// partitions below capacity. Returns the number of edges assigned.
eid_t partition_remaining_edges(const EdgeStream& stream, const ClusteringState& clustering,
                                const ClusterPlacement& placement, PartitionState& state,
                                const DegreeTable& degrees, const HdrfParams& params, AssignmentSink& sink);

struct TwoPhaseConfig {
    std::uint32_t k = 0;
    double alpha = 1.05;
    HdrfParams hdrf;

    // Throws ConfigError unless k >= 2, alpha >= 1, lambda >= 0.
    void validate() const;
};

struct TwoPhaseResult {
    RunReport report;
    DegreeTable degrees;
    ClusteringState clustering;
    ClusterPlacement placement;
    PartitionState state;
};

// Degree pass, two clustering passes, cluster mapping, pre-partitioning pass
// and remaining-edge pass: five passes over the stream in total.
TwoPhaseResult run_2ps(const EdgeStream& stream, const TwoPhaseConfig& config, AssignmentSink& sink);

}  // namespace tps
