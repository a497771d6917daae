#include "tps/partitioning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace tps {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

ClusterPlacement map_clusters_to_partitions(const ClusteringState& clustering, std::uint32_t k)
{
    if (k == 0) {
        throw ConfigError("k must be positive");
    }
    ClusterPlacement placement;
    placement.c2p.assign(clustering.vol.size(), kNoPartition);
    placement.vol_p.assign(k, 0);

    std::vector<cid_t> order;
    for (cid_t c = 0; c < clustering.next_id; ++c) {
        if (clustering.vol[c] > 0) {
            order.push_back(c);
        }
    }
    std::sort(order.begin(), order.end(), [&](cid_t a, cid_t b) {
        if (clustering.vol[a] != clustering.vol[b]) {
            return clustering.vol[a] > clustering.vol[b];
        }
        return a < b;
    });

    // min-heap on (load, partition id)
    using Slot = std::pair<volume_t, part_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> least_loaded;
    for (part_t p = 0; p < k; ++p) {
        least_loaded.emplace(0, p);
    }
    for (cid_t c : order) {
        auto [load, p] = least_loaded.top();
        least_loaded.pop();
        placement.c2p[c] = p;
        placement.vol_p[p] = load + clustering.vol[c];
        least_loaded.emplace(placement.vol_p[p], p);
    }
    return placement;
}

PrepartitionStats prepartition_edges(const EdgeStream& stream, const ClusteringState& clustering,
                                     const ClusterPlacement& placement, PartitionState& state,
                                     const DegreeTable& degrees, const HdrfParams& params, AssignmentSink& sink)
{
    PrepartitionStats stats;
    sink.begin_pass();
    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Edge& e = batch[i];
            if (!is_prepartitionable(e, clustering, placement)) {
                continue;
            }
            const cid_t c1 = clustering.v2c[e.first];
            stats.intra_cluster += (c1 == clustering.v2c[e.second]) ? 1 : 0;
            part_t target = placement.c2p[c1];
            if (state.loads.full(target)) {
                target = hdrf_assign(e, state.matrix, state.loads, degrees, params);
                ++stats.redirected;
            } else {
                commit_edge(e, target, state.matrix, state.loads);
            }
            ++stats.assigned;
            sink.record(base + i, target);
        }
    });
    sink.end_pass();
    return stats;
}

eid_t partition_remaining_edges(const EdgeStream& stream, const ClusteringState& clustering,
                                const ClusterPlacement& placement, PartitionState& state,
                                const DegreeTable& degrees, const HdrfParams& params, AssignmentSink& sink)
{
    eid_t assigned = 0;
    sink.begin_pass();
    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Edge& e = batch[i];
            if (is_prepartitionable(e, clustering, placement)) {
                continue;
            }
            const part_t target = hdrf_assign(e, state.matrix, state.loads, degrees, params);
            ++assigned;
            sink.record(base + i, target);
        }
    });
    sink.end_pass();
    return assigned;
}

void TwoPhaseConfig::validate() const
{
    if (k < 2) {
        throw ConfigError("k must be >= 2, got " + std::to_string(k));
    }
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
        throw ConfigError("alpha must be >= 1, got " + std::to_string(alpha));
    }
    if (!(hdrf.lambda >= 0.0) || !std::isfinite(hdrf.lambda)) {
        throw ConfigError("lambda must be >= 0, got " + std::to_string(hdrf.lambda));
    }
}

TwoPhaseResult run_2ps(const EdgeStream& stream, const TwoPhaseConfig& config, AssignmentSink& sink)
{
    config.validate();
    const std::uint64_t passes_before = stream.passes();
    TwoPhaseResult result;
    RunReport& r = result.report;
    r.algorithm = "2ps";
    r.k = config.k;
    r.alpha = config.alpha;
    r.lambda = config.hdrf.lambda;
    r.true_degree_scoring = true;

    auto t = Clock::now();
    result.degrees = compute_degrees(stream);
    r.phase_times.push_back({"degrees", seconds_since(t)});
    const std::uint64_t vertex_count = result.degrees.size();
    const eid_t edges = stream.edge_count();

    t = Clock::now();
    result.clustering = streaming_clustering(stream, result.degrees, config.k);
    r.phase_times.push_back({"clustering", seconds_since(t)});

    t = Clock::now();
    result.placement = map_clusters_to_partitions(result.clustering, config.k);
    r.phase_times.push_back({"mapping", seconds_since(t)});

    const eid_t capacity = balance_capacity(config.alpha, edges, config.k);
    result.state = PartitionState(vertex_count, config.k, capacity);

    t = Clock::now();
    const PrepartitionStats pre = prepartition_edges(stream, result.clustering, result.placement, result.state,
                                                     result.degrees, config.hdrf, sink);
    r.phase_times.push_back({"prepartition", seconds_since(t)});

    t = Clock::now();
    const eid_t remaining = partition_remaining_edges(stream, result.clustering, result.placement, result.state,
                                                      result.degrees, config.hdrf, sink);
    r.phase_times.push_back({"remaining", seconds_since(t)});

    if (pre.assigned + remaining != edges) {
        throw Error("internal: assigned " + std::to_string(pre.assigned + remaining) + " of " +
                    std::to_string(edges) + " edges");
    }

    const ReplicationSummary rf = replication_factor(result.state.matrix);
    r.edges = edges;
    r.vertices = vertex_count;
    r.covered_vertices = rf.covered;
    r.rf = rf.rf;
    r.rf_degenerate = rf.degenerate;
    r.capacity = capacity;
    r.partition_sizes = result.state.loads.sizes;
    r.alpha_observed = observed_imbalance(r.partition_sizes, edges);
    r.alpha_violated = result.state.loads.max_size() > capacity;

    const ModularityResult q =
        modularity_from_totals(pre.intra_cluster,
                               std::span<const volume_t>(result.clustering.vol.data(), result.clustering.next_id),
                               edges);
    r.modularity = q.q;
    r.modularity_degenerate = q.degenerate;
    r.prepartitioned_edges = pre.assigned;
    r.redirected_edges = pre.redirected;
    r.prepartitioned_ratio = edges == 0 ? 0.0 : static_cast<double>(pre.assigned) / static_cast<double>(edges);
    r.clusters = result.clustering.non_empty_clusters();
    r.stream_passes = stream.passes() - passes_before;

    r.peak_state.degree_entries = result.degrees.size();
    r.peak_state.v2c_entries = result.clustering.v2c.size();
    r.peak_state.cluster_volume_entries = result.clustering.vol.size();
    r.peak_state.c2p_entries = result.placement.c2p.size();
    r.peak_state.partition_volume_entries = result.placement.vol_p.size();
    r.peak_state.replication_cells = result.state.matrix.cell_count();
    r.peak_state.load_entries = result.state.loads.sizes.size();
    return result;
}

}  // namespace tps
