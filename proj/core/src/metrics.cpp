#include "tps/metrics.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tps/assignment.hpp"

namespace tps {

namespace {

struct CoverReplay {
    ReplicationSummary summary;
    std::vector<eid_t> sizes;
};

// Replays the stream against a per-edge partition source and rebuilds the
// cover sets as one byte array per partition.
CoverReplay replay_cover(const EdgeStream& stream, std::uint32_t k, std::uint64_t vertex_count,
                         const std::function<std::size_t(std::span<part_t>)>& next_partitions)
{
    CoverReplay out;
    out.sizes.assign(k, 0);
    std::vector<std::vector<unsigned char>> cover(k, std::vector<unsigned char>(vertex_count, 0));
    std::vector<part_t> parts;

    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        parts.resize(batch.size());
        if (next_partitions(parts) != batch.size()) {
            throw FormatError("assignment shorter than the edge stream");
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const part_t p = parts[i];
            if (p >= k) {
                throw Error("edge " + std::to_string(base + i) + " assigned to partition " + std::to_string(p) +
                            " but k = " + std::to_string(k));
            }
            const Edge& e = batch[i];
            if (e.first >= vertex_count || e.second >= vertex_count) {
                throw IdRangeError("edge " + std::to_string(base + i) + " exceeds vertex count " +
                                   std::to_string(vertex_count));
            }
            cover[p][e.first] = 1;
            cover[p][e.second] = 1;
            ++out.sizes[p];
        }
    });

    std::vector<unsigned char> any(vertex_count, 0);
    for (const auto& c : cover) {
        for (std::uint64_t v = 0; v < vertex_count; ++v) {
            out.summary.replicas += c[v];
            any[v] |= c[v];
        }
    }
    out.summary.covered = static_cast<std::uint64_t>(std::count(any.begin(), any.end(), 1));
    if (out.summary.covered == 0) {
        out.summary.degenerate = true;
        out.summary.rf = 1.0;
    } else {
        out.summary.rf = static_cast<double>(out.summary.replicas) / static_cast<double>(out.summary.covered);
    }
    return out;
}

std::uint64_t infer_vertex_count(const EdgeStream& stream)
{
    if (stream.vertex_count_known()) {
        return stream.vertex_count();
    }
    stream.for_each_batch([](eid_t, std::span<const Edge>) {});
    return stream.vertex_count();
}

}  // namespace

double RunReport::total_seconds() const
{
    double total = 0.0;
    for (const auto& p : phase_times) {
        total += p.seconds;
    }
    return total;
}

std::string RunReport::to_json() const
{
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm;
    j["k"] = k;
    j["alpha"] = alpha;
    j["lambda"] = lambda;
    j["edges"] = edges;
    j["vertices"] = vertices;
    j["covered_vertices"] = covered_vertices;
    j["rf"] = rf;
    j["rf_degenerate"] = rf_degenerate;
    j["capacity"] = capacity;
    j["alpha_observed"] = alpha_observed;
    j["alpha_violated"] = alpha_violated;
    j["partition_sizes"] = partition_sizes;
    if (modularity) {
        j["modularity"] = *modularity;
        j["modularity_degenerate"] = modularity_degenerate;
    } else {
        j["modularity"] = nullptr;
    }
    if (prepartitioned_ratio) {
        j["prepartitioned_ratio"] = *prepartitioned_ratio;
        j["prepartitioned_edges"] = prepartitioned_edges;
        j["redirected_edges"] = redirected_edges;
        j["clusters"] = clusters;
    } else {
        j["prepartitioned_ratio"] = nullptr;
    }
    j["true_degree_scoring"] = true_degree_scoring;
    j["stream_passes"] = stream_passes;
    nlohmann::ordered_json times = nlohmann::ordered_json::object();
    for (const auto& p : phase_times) {
        times[p.name] = p.seconds;
    }
    times["total"] = total_seconds();
    j["phase_seconds"] = times;
    j["peak_state"] = {
        {"degree_entries", peak_state.degree_entries},
        {"v2c_entries", peak_state.v2c_entries},
        {"cluster_volume_entries", peak_state.cluster_volume_entries},
        {"c2p_entries", peak_state.c2p_entries},
        {"partition_volume_entries", peak_state.partition_volume_entries},
        {"replication_cells", peak_state.replication_cells},
        {"load_entries", peak_state.load_entries},
        {"total", peak_state.total()},
    };
    return j.dump(2);
}

void RunReport::write_json(const std::filesystem::path& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot create report " + path.string());
    }
    out << to_json() << '\n';
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::string RunReport::to_text() const
{
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << "algorithm: " << algorithm << '\n';
    os << "k: " << k << '\n';
    os << "edges: " << edges << '\n';
    os << "vertices: " << vertices << '\n';
    os << "rf: " << rf << (rf_degenerate ? " (degenerate: no covered vertices)" : "") << '\n';
    os << "alpha_observed: " << alpha_observed << '\n';
    os << "capacity: " << capacity << '\n';
    os << "alpha_violated: " << (alpha_violated ? "true" : "false") << '\n';
    if (modularity) {
        os << "modularity: " << *modularity << (modularity_degenerate ? " (degenerate: no edges)" : "") << '\n';
    }
    if (prepartitioned_ratio) {
        os << "prepartitioned_ratio: " << *prepartitioned_ratio << '\n';
    }
    for (const auto& p : phase_times) {
        os << "time_" << p.name << "_s: " << p.seconds << '\n';
    }
    if (peak_state.total() > 0) {
        os << "peak_state_total: " << peak_state.total() << '\n';
    }
    return os.str();
}

ReplicationSummary replication_factor(const ReplicationMatrix& matrix)
{
    ReplicationSummary s;
    s.replicas = matrix.total_replicas();
    s.covered = matrix.covered_vertices();
    if (s.covered == 0) {
        s.degenerate = true;
        s.rf = 1.0;
    } else {
        s.rf = static_cast<double>(s.replicas) / static_cast<double>(s.covered);
    }
    return s;
}

ReplicationSummary replication_factor(const EdgeStream& stream, std::span<const part_t> assignment,
                                      std::uint32_t k)
{
    if (assignment.size() != stream.edge_count()) {
        throw FormatError("assignment has " + std::to_string(assignment.size()) + " entries for " +
                          std::to_string(stream.edge_count()) + " edges");
    }
    std::size_t pos = 0;
    return replay_cover(stream, k, infer_vertex_count(stream), [&](std::span<part_t> out) {
               const std::size_t n = std::min(out.size(), assignment.size() - pos);
               std::copy_n(assignment.begin() + static_cast<std::ptrdiff_t>(pos), n, out.begin());
               pos += n;
               return n;
           })
        .summary;
}

double observed_imbalance(std::span<const eid_t> sizes, eid_t edges)
{
    if (edges == 0 || sizes.empty()) {
        return 1.0;
    }
    const eid_t max_load = *std::max_element(sizes.begin(), sizes.end());
    return static_cast<double>(max_load) / (static_cast<double>(edges) / static_cast<double>(sizes.size()));
}

ModularityResult modularity_from_totals(eid_t intra_edges, std::span<const volume_t> cluster_volumes, eid_t edges)
{
    if (edges == 0) {
        return {0.0, true};
    }
    const double m = static_cast<double>(edges);
    double expected = 0.0;
    for (volume_t vol : cluster_volumes) {
        const double share = static_cast<double>(vol) / (2.0 * m);
        expected += share * share;
    }
    return {static_cast<double>(intra_edges) / m - expected, false};
}

ModularityResult modularity(const EdgeStream& stream, std::span<const cid_t> v2c, const DegreeTable& degrees)
{
    if (stream.edge_count() == 0) {
        return {0.0, true};
    }
    cid_t max_cluster = 0;
    for (cid_t c : v2c) {
        if (c != kUnassignedCluster) {
            max_cluster = std::max(max_cluster, c);
        }
    }
    std::vector<volume_t> vol(static_cast<std::size_t>(max_cluster) + 1, 0);
    for (std::size_t v = 0; v < v2c.size() && v < degrees.size(); ++v) {
        if (v2c[v] != kUnassignedCluster) {
            vol[v2c[v]] += degrees[static_cast<vid_t>(v)];
        }
    }

    eid_t intra = 0;
    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Edge& e = batch[i];
            if (e.first >= v2c.size() || e.second >= v2c.size()) {
                throw IdRangeError("edge " + std::to_string(base + i) + " has a vertex outside the cluster map");
            }
            const cid_t c1 = v2c[e.first];
            if (c1 == kUnassignedCluster || v2c[e.second] == kUnassignedCluster) {
                throw Error("edge " + std::to_string(base + i) + " touches an unclustered vertex");
            }
            intra += (c1 == v2c[e.second]) ? 1 : 0;
        }
    });
    return modularity_from_totals(intra, vol, stream.edge_count());
}

double brute_force_min_rf(std::span<const Edge> edges, std::uint32_t k, double alpha)
{
    if (edges.size() > 10 || k > 3 || k == 0) {
        throw ConfigError("brute_force_min_rf refuses instances with |E| > 10 or k outside [1, 3]");
    }
    if (edges.empty()) {
        return 1.0;
    }
    // Compact vertex ids to 0..n-1.
    std::unordered_map<vid_t, std::size_t> index;
    std::vector<std::pair<std::size_t, std::size_t>> local;
    for (const Edge& e : edges) {
        const std::size_t a = index.try_emplace(e.first, index.size()).first->second;
        const std::size_t b = index.try_emplace(e.second, index.size()).first->second;
        local.emplace_back(a, b);
    }
    const std::size_t n = index.size();
    const eid_t cap = balance_capacity(alpha, edges.size(), k);

    std::vector<part_t> choice(edges.size(), 0);
    std::vector<eid_t> load(k, 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (i == local.size()) {
            std::vector<unsigned> mask(n, 0);
            for (std::size_t j = 0; j < local.size(); ++j) {
                mask[local[j].first] |= 1u << choice[j];
                mask[local[j].second] |= 1u << choice[j];
            }
            std::uint64_t replicas = 0;
            for (unsigned m : mask) {
                replicas += static_cast<std::uint64_t>(std::popcount(m));
            }
            best = std::min(best, replicas);
            return;
        }
        for (part_t p = 0; p < k; ++p) {
            if (load[p] >= cap) {
                continue;
            }
            ++load[p];
            choice[i] = p;
            dfs(i + 1);
            --load[p];
        }
    };
    dfs(0);
    if (best == std::numeric_limits<std::uint64_t>::max()) {
        throw CapacityError("no assignment satisfies the balance constraint");
    }
    return static_cast<double>(best) / static_cast<double>(n);
}

RunReport evaluate_assignment(const EdgeStream& stream, const std::filesystem::path& assignment, std::uint32_t k,
                              double alpha, std::optional<std::span<const cid_t>> v2c)
{
    if (k == 0) {
        throw ConfigError("k must be positive");
    }
    AssignmentReader reader(assignment);
    if (reader.count() != stream.edge_count()) {
        throw FormatError("assignment has " + std::to_string(reader.count()) + " entries for " +
                          std::to_string(stream.edge_count()) + " edges");
    }
    const DegreeTable degrees = compute_degrees(stream);
    const std::uint64_t vertex_count = degrees.size();

    const CoverReplay replay =
        replay_cover(stream, k, vertex_count, [&](std::span<part_t> out) { return reader.read(out); });

    RunReport r;
    r.algorithm = "evaluate";
    r.k = k;
    r.alpha = alpha;
    r.edges = stream.edge_count();
    r.vertices = vertex_count;
    r.covered_vertices = replay.summary.covered;
    r.rf = replay.summary.rf;
    r.rf_degenerate = replay.summary.degenerate;
    r.partition_sizes = replay.sizes;
    r.capacity = balance_capacity(alpha, r.edges, k);
    r.alpha_observed = observed_imbalance(r.partition_sizes, r.edges);
    r.alpha_violated = std::any_of(r.partition_sizes.begin(), r.partition_sizes.end(),
                                   [&](eid_t s) { return s > r.capacity; });
    if (v2c) {
        const ModularityResult q = modularity(stream, *v2c, degrees);
        r.modularity = q.q;
        r.modularity_degenerate = q.degenerate;
    }
    return r;
}

}  // namespace tps
