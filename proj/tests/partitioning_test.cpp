#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "tps/generator.hpp"
#include "tps/partitioning.hpp"

namespace tps {
namespace {

// Clustering with the given cluster volumes and no vertices; enough for the mapping step.
ClusteringState volumes_only(const std::vector<volume_t>& vols)
{
    ClusteringState st = ClusteringState::empty(vols.size());
    st.vol = vols;
    st.next_id = static_cast<cid_t>(vols.size());
    return st;
}

// Every vertex in its own cluster c = v, placed as given.
struct HandBuilt {
    ClusteringState clustering;
    ClusterPlacement placement;
};

HandBuilt hand_built(const std::vector<cid_t>& v2c, const std::vector<part_t>& c2p, std::uint32_t k)
{
    HandBuilt h;
    h.clustering = ClusteringState::empty(v2c.size());
    h.clustering.v2c = v2c;
    h.clustering.next_id = static_cast<cid_t>(v2c.size());
    h.placement.c2p = c2p;
    h.placement.c2p.resize(v2c.size(), kNoPartition);
    h.placement.vol_p.assign(k, 0);
    return h;
}

TEST(ClusterMapping, GrahamOnFourClusters)
{
    const ClusterPlacement p = map_clusters_to_partitions(volumes_only({5, 4, 3, 2}), 2);
    EXPECT_EQ(p.vol_p, (std::vector<volume_t>{7, 7}));
    EXPECT_EQ(p.c2p[0], 0u);
    EXPECT_EQ(p.c2p[3], 0u);
    EXPECT_EQ(p.c2p[1], 1u);
    EXPECT_EQ(p.c2p[2], 1u);
}

TEST(ClusterMapping, SingleClusterManyPartitions)
{
    const ClusterPlacement p = map_clusters_to_partitions(volumes_only({9}), 4);
    EXPECT_EQ(p.c2p[0], 0u);
    EXPECT_EQ(p.vol_p, (std::vector<volume_t>{9, 0, 0, 0}));
}

TEST(ClusterMapping, EqualVolumesRoundRobin)
{
    const ClusterPlacement p = map_clusters_to_partitions(volumes_only({3, 3, 3, 3}), 2);
    EXPECT_EQ(p.c2p[0], 0u);
    EXPECT_EQ(p.c2p[1], 1u);
    EXPECT_EQ(p.c2p[2], 0u);
    EXPECT_EQ(p.c2p[3], 1u);
}

TEST(ClusterMapping, EmptyClustersUnplaced)
{
    const ClusterPlacement p = map_clusters_to_partitions(volumes_only({0, 4, 0}), 2);
    EXPECT_EQ(p.c2p[0], kNoPartition);
    EXPECT_EQ(p.c2p[1], 0u);
    EXPECT_EQ(p.c2p[2], kNoPartition);
}

TEST(ClusterMapping, WithinFourThirdsOfOptimum)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 3);
        std::vector<volume_t> vols(n);
        for (auto& v : vols) {
            v = 1 + rng() % 40;
        }
        const ClusterPlacement p = map_clusters_to_partitions(volumes_only(vols), k);
        const volume_t makespan = *std::max_element(p.vol_p.begin(), p.vol_p.end());
        const std::uint64_t opt = oracle::optimal_makespan(vols, k);
        EXPECT_LE(3 * makespan, 4 * opt) << "trial " << trial;
        EXPECT_EQ(std::accumulate(p.vol_p.begin(), p.vol_p.end(), volume_t{0}),
                  std::accumulate(vols.begin(), vols.end(), volume_t{0}));
    }
}

TEST(Prepartition, Predicate)
{
    const HandBuilt h = hand_built({0, 0, 1, 2}, {0, 0, 1}, 2);
    EXPECT_TRUE(is_prepartitionable({0, 1}, h.clustering, h.placement));  // same cluster
    EXPECT_TRUE(is_prepartitionable({1, 2}, h.clustering, h.placement));  // clusters share p0
    EXPECT_FALSE(is_prepartitionable({0, 3}, h.clustering, h.placement));
}

TEST(Prepartition, OverflowIsRedirected)
{
    // One cluster on p0, three intra-cluster edges, capacity ceil(1.0 * 3 / 2) = 2.
    const HandBuilt h = hand_built({0, 0, 0}, {0}, 2);
    const EdgeStream s = EdgeStream::from_edges({{0, 1}, {1, 2}, {0, 2}});
    const DegreeTable d = compute_degrees(s);
    PartitionState state(3, 2, balance_capacity(1.0, 3, 2));
    MemorySink sink;
    const PrepartitionStats stats = prepartition_edges(s, h.clustering, h.placement, state, d, HdrfParams{}, sink);
    EXPECT_EQ(stats.assigned, 3u);
    EXPECT_EQ(stats.redirected, 1u);
    EXPECT_EQ(stats.intra_cluster, 3u);
    EXPECT_EQ(sink.merged(3), (std::vector<part_t>{0, 0, 1}));
    EXPECT_EQ(state.loads.sizes, (std::vector<eid_t>{2, 1}));
}

TEST(Prepartition, RemainingPassSkipsPrepartitioned)
{
    const HandBuilt h = hand_built({0, 1, 2, 3}, {0, 0, 1, 1}, 2);
    // (0,1) and (2,3) share a partition; (1,2) crosses.
    const EdgeStream s = EdgeStream::from_edges({{0, 1}, {1, 2}, {2, 3}});
    const DegreeTable d = compute_degrees(s);
    PartitionState state(4, 2, kUnboundedCapacity);
    MemorySink sink;
    const auto stats = prepartition_edges(s, h.clustering, h.placement, state, d, HdrfParams{}, sink);
    const eid_t rest = partition_remaining_edges(s, h.clustering, h.placement, state, d, HdrfParams{}, sink);
    EXPECT_EQ(stats.assigned, 2u);
    EXPECT_EQ(stats.intra_cluster, 0u);
    EXPECT_EQ(rest, 1u);
    ASSERT_EQ(sink.passes().size(), 2u);
    ASSERT_EQ(sink.passes()[1].size(), 1u);
    EXPECT_EQ(sink.passes()[1][0].edge_index, 1u);
}

TEST(TwoPhase, AllPrepartitionedLeavesNothing)
{
    const EdgeStream s = EdgeStream::from_edges(test::two_triangles());
    MemorySink sink;
    const TwoPhaseResult r = run_2ps(s, {2, 1.05, {}}, sink);
    EXPECT_EQ(r.report.prepartitioned_edges, 6u);
    ASSERT_EQ(sink.passes().size(), 2u);
    EXPECT_TRUE(sink.passes()[1].empty());
    EXPECT_DOUBLE_EQ(r.report.rf, 1.0);
    EXPECT_NEAR(*r.report.modularity, 0.5, 1e-12);
}

TEST(TwoPhase, CapacityOnHundredEdges)
{
    const auto edges = generate_power_law_edges({80, 2.2, 3});
    std::vector<Edge> hundred(edges.begin(), edges.end());
    hundred.resize(100, Edge{0, 1});
    NullSink sink;
    const TwoPhaseResult r = run_2ps(EdgeStream::from_edges(hundred), {2, 1.05, {}}, sink);
    EXPECT_EQ(r.report.capacity, 53u);
    EXPECT_LE(*std::max_element(r.report.partition_sizes.begin(), r.report.partition_sizes.end()), 53u);
    EXPECT_FALSE(r.report.alpha_violated);
}

TEST(TwoPhase, DisjointCliquesAreNotCut)
{
    for (vid_t size : {2u, 3u, 5u}) {
        for (std::uint32_t k : {2u, 4u}) {
            std::vector<Edge> edges;
            for (std::uint32_t c = 0; c < k; ++c) {
                const auto part = test::clique(c * size, size);
                edges.insert(edges.end(), part.begin(), part.end());
            }
            NullSink sink;
            const TwoPhaseResult r = run_2ps(EdgeStream::from_edges(edges), {k, 1.05, {}}, sink);
            EXPECT_DOUBLE_EQ(r.report.rf, 1.0) << "size " << size << " k " << k;
        }
    }
}

TEST(TwoPhase, EmptyGraph)
{
    NullSink sink;
    const TwoPhaseResult r = run_2ps(EdgeStream::from_edges({}), {4, 1.05, {}}, sink);
    EXPECT_DOUBLE_EQ(r.report.rf, 1.0);
    EXPECT_TRUE(r.report.rf_degenerate);
    EXPECT_TRUE(r.report.modularity_degenerate);
    EXPECT_EQ(r.report.edges, 0u);
}

TEST(TwoPhase, RejectsBadConfig)
{
    NullSink sink;
    const EdgeStream s = EdgeStream::from_edges({{0, 1}});
    EXPECT_THROW(run_2ps(s, {1, 1.05, {}}, sink), ConfigError);
    EXPECT_THROW(run_2ps(s, {2, 0.9, {}}, sink), ConfigError);
    EXPECT_THROW(run_2ps(s, {2, 1.05, {-1.0, 1.0}}, sink), ConfigError);
}

class CheckingSink final : public AssignmentSink {
  public:
    CheckingSink(std::uint32_t k, eid_t capacity) : sizes_(k, 0), capacity_(capacity) {}
    void record(eid_t, part_t p) override
    {
        ASSERT_LT(p, sizes_.size());
        ++sizes_[p];
        ASSERT_LE(sizes_[p], capacity_);
    }

  private:
    std::vector<eid_t> sizes_;
    eid_t capacity_;
};

TEST(TwoPhase, PartitionProperties)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng() % 15);
        const double alpha = 1.0 + static_cast<double>(rng() % 4) * 0.05;
        const auto edges = trial % 2 ? test::random_edges(200, 100 + rng() % 900, rng())
                                     : generate_power_law_edges({400, 2.0 + static_cast<double>(rng() % 20) / 10.0,
                                                                 rng()});
        const EdgeStream s = EdgeStream::from_edges(edges);
        MemorySink sink;
        const TwoPhaseResult r = run_2ps(s, {k, alpha, {}}, sink);

        // Completeness and uniqueness.
        const auto merged = sink.merged(edges.size());
        ASSERT_EQ(std::count(merged.begin(), merged.end(), kNoPartition), 0);

        // Hard cap.
        EXPECT_LE(*std::max_element(r.report.partition_sizes.begin(), r.report.partition_sizes.end()),
                  r.report.capacity);

        // The two passes partition the stream by the predicate.
        ASSERT_EQ(sink.passes().size(), 2u);
        for (const auto& rec : sink.passes()[0]) {
            EXPECT_TRUE(is_prepartitionable(edges[rec.edge_index], r.clustering, r.placement));
        }
        for (const auto& rec : sink.passes()[1]) {
            EXPECT_FALSE(is_prepartitionable(edges[rec.edge_index], r.clustering, r.placement));
        }

        // Every vertex cover matches a recount from the assignment.
        ReplicationMatrix recount(r.degrees.size(), k);
        for (eid_t i = 0; i < edges.size(); ++i) {
            recount.set(edges[i].first, merged[i]);
            recount.set(edges[i].second, merged[i]);
        }
        EXPECT_EQ(recount.total_replicas(), r.state.matrix.total_replicas());
        EXPECT_EQ(r.report.stream_passes, 5u);
    }
}

TEST(TwoPhase, CheckingSinkSeesCapAfterEveryRecord)
{
    const auto edges = generate_power_law_edges({3000, 2.1, 8});
    const eid_t cap = balance_capacity(1.0, edges.size(), 8);
    CheckingSink sink(8, cap);
    run_2ps(EdgeStream::from_edges(edges), {8, 1.0, {}}, sink);
}

TEST(TwoPhase, Deterministic)
{
    const auto edges = generate_power_law_edges({5000, 2.4, 12});
    MemorySink a, b;
    run_2ps(EdgeStream::from_edges(edges), {16, 1.05, {}}, a);
    run_2ps(EdgeStream::from_edges(edges), {16, 1.05, {}}, b);
    EXPECT_EQ(a.merged(edges.size()), b.merged(edges.size()));
}

TEST(TwoPhase, ReportsFivePassesAndStateCounters)
{
    const auto edges = generate_power_law_edges({1000, 2.5, 1});
    NullSink sink;
    const EdgeStream s = EdgeStream::from_edges(edges, 1000);
    const TwoPhaseResult r = run_2ps(s, {4, 1.05, {}}, sink);
    EXPECT_EQ(r.report.stream_passes, 5u);
    EXPECT_EQ(r.report.peak_state.degree_entries, 1000u);
    EXPECT_EQ(r.report.peak_state.replication_cells, 4000u);
    EXPECT_EQ(r.report.peak_state.load_entries, 4u);
    EXPECT_EQ(r.report.phase_times.size(), 5u);
}

}  // namespace
}  // namespace tps
