#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <optional>
#include <vector>

#include "tps/degrees.hpp"
#include "tps/edge_stream.hpp"
#include "tps/types.hpp"

namespace tps {

// Streaming clustering state. Cluster volumes are sums of true degrees, so the
// cap bounds the number of intra-cluster edges a cluster can hold.
//
// vol is sized |V| up front (at most one fresh cluster per vertex). Clusters
// emptied by migration keep their id with volume 0.
struct ClusteringState {
    std::vector<cid_t> v2c;
    std::vector<volume_t> vol;
    double max_vol = 0.0;
    cid_t next_id = 0;

    static ClusteringState empty(std::size_t vertex_count);

    std::size_t vertex_count() const { return v2c.size(); }
    cid_t cluster_of(vid_t v) const { return v2c[v]; }
    std::size_t non_empty_clusters() const;
};

// A vertex moving from a smaller cluster into a larger one.
struct Migration {
    vid_t vertex;
    cid_t from;
    cid_t to;
    volume_t from_volume_before;
    volume_t to_volume_before;
};

// Processes one edge: endpoints seen for the first time get fresh singleton
// clusters, then the endpoint in the lighter cluster joins the heavier one if
// both are under the cap and the result stays under it. On equal volumes
// e.first is the one that moves. Edges inside one cluster are left alone.
std::optional<Migration> process_edge(ClusteringState& state, const Edge& e, const DegreeTable& degrees);

// One streaming pass with the current state.max_vol.
void clustering_pass(ClusteringState& state, const EdgeStream& stream, const DegreeTable& degrees);

// Two passes: the first capped at |E|/k, the second at 2|E|/k, with v2c and
// vol carried over between them.
ClusteringState streaming_clustering(const EdgeStream& stream, const DegreeTable& degrees, std::uint32_t k);

// Cluster map file: one little-endian u32 cluster id per vertex, 0xffffffff
// for vertices that never appeared in the stream.
void write_cluster_map(const std::filesystem::path& path, std::span<const cid_t> v2c);
std::vector<cid_t> read_cluster_map(const std::filesystem::path& path);

// Initial volume cap for the first pass, (2|E|/k) * 0.5.
inline double initial_volume_cap(eid_t edges, std::uint32_t k)
{
    return 2.0 * static_cast<double>(edges) / static_cast<double>(k) * 0.5;
}

}  // namespace tps
