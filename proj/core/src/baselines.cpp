#include "tps/baselines.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "tps/degrees.hpp"

namespace tps {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_common(std::uint32_t k, double alpha)
{
    if (k < 1) {
        throw ConfigError("k must be >= 1");
    }
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
        throw ConfigError("alpha must be >= 1, got " + std::to_string(alpha));
    }
}

void fill_balance(RunReport& r, const std::vector<eid_t>& sizes)
{
    r.capacity = balance_capacity(r.alpha, r.edges, r.k);
    r.partition_sizes = sizes;
    r.alpha_observed = observed_imbalance(sizes, r.edges);
    r.alpha_violated = false;
    for (eid_t s : sizes) {
        r.alpha_violated = r.alpha_violated || s > r.capacity;
    }
}

}  // namespace

RunReport run_hdrf(const EdgeStream& stream, std::uint32_t k, double alpha, const HdrfParams& params,
                   AssignmentSink& sink)
{
    check_common(k, alpha);
    const std::uint64_t passes_before = stream.passes();
    RunReport r;
    r.algorithm = "hdrf";
    r.k = k;
    r.alpha = alpha;
    r.lambda = params.lambda;
    r.true_degree_scoring = true;

    auto t = Clock::now();
    const DegreeTable degrees = compute_degrees(stream);
    r.phase_times.push_back({"degrees", seconds_since(t)});

    ReplicationMatrix matrix(degrees.size(), k);
    PartitionLoads loads(k, kUnboundedCapacity);

    t = Clock::now();
    sink.begin_pass();
    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            sink.record(base + i, hdrf_assign(batch[i], matrix, loads, degrees, params));
        }
    });
    sink.end_pass();
    r.phase_times.push_back({"partition", seconds_since(t)});

    const ReplicationSummary rf = replication_factor(matrix);
    r.edges = stream.edge_count();
    r.vertices = degrees.size();
    r.covered_vertices = rf.covered;
    r.rf = rf.rf;
    r.rf_degenerate = rf.degenerate;
    fill_balance(r, loads.sizes);
    r.stream_passes = stream.passes() - passes_before;
    r.peak_state.degree_entries = degrees.size();
    r.peak_state.replication_cells = matrix.cell_count();
    r.peak_state.load_entries = loads.sizes.size();
    return r;
}

RunReport run_dbh(const EdgeStream& stream, std::uint32_t k, double alpha, AssignmentSink& sink)
{
    check_common(k, alpha);
    const std::uint64_t passes_before = stream.passes();
    RunReport r;
    r.algorithm = "dbh";
    r.k = k;
    r.alpha = alpha;

    auto t = Clock::now();
    const DegreeTable degrees = compute_degrees(stream);
    r.phase_times.push_back({"degrees", seconds_since(t)});

    // The matrix is only used for reporting RF; DBH itself keeps no state.
    ReplicationMatrix matrix(degrees.size(), k);
    PartitionLoads loads(k, kUnboundedCapacity);

    t = Clock::now();
    sink.begin_pass();
    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const part_t p = dbh_assign(batch[i], degrees, k);
            commit_edge(batch[i], p, matrix, loads);
            sink.record(base + i, p);
        }
    });
    sink.end_pass();
    r.phase_times.push_back({"partition", seconds_since(t)});

    const ReplicationSummary rf = replication_factor(matrix);
    r.edges = stream.edge_count();
    r.vertices = degrees.size();
    r.covered_vertices = rf.covered;
    r.rf = rf.rf;
    r.rf_degenerate = rf.degenerate;
    fill_balance(r, loads.sizes);
    r.stream_passes = stream.passes() - passes_before;
    r.peak_state.degree_entries = degrees.size();
    r.peak_state.load_entries = loads.sizes.size();
    return r;
}

}  // namespace tps
