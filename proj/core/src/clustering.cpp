#include "tps/clustering.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

namespace tps {

ClusteringState ClusteringState::empty(std::size_t vertex_count)
{
    ClusteringState s;
    s.v2c.assign(vertex_count, kUnassignedCluster);
    s.vol.assign(vertex_count, 0);
    return s;
}

std::size_t ClusteringState::non_empty_clusters() const
{
    return static_cast<std::size_t>(
        std::count_if(vol.begin(), vol.begin() + next_id, [](volume_t x) { return x > 0; }));
}

std::optional<Migration> process_edge(ClusteringState& state, const Edge& e, const DegreeTable& degrees)
{
    for (vid_t v : {e.first, e.second}) {
        if (state.v2c[v] == kUnassignedCluster) {
            state.v2c[v] = state.next_id;
            state.vol[state.next_id] += degrees[v];
            ++state.next_id;
        }
    }

    const cid_t c1 = state.v2c[e.first];
    const cid_t c2 = state.v2c[e.second];
    if (c1 == c2) {
        return std::nullopt;
    }
    const double cap = state.max_vol;
    if (static_cast<double>(state.vol[c1]) > cap || static_cast<double>(state.vol[c2]) > cap) {
        return std::nullopt;
    }

    const bool first_is_small = state.vol[c1] <= state.vol[c2];
    const vid_t small = first_is_small ? e.first : e.second;
    const cid_t from = first_is_small ? c1 : c2;
    const cid_t to = first_is_small ? c2 : c1;
    const degree_t d = degrees[small];

    if (static_cast<double>(state.vol[to] + d) > cap) {
        return std::nullopt;
    }
    Migration m{small, from, to, state.vol[from], state.vol[to]};
    state.v2c[small] = to;
    state.vol[to] += d;
    state.vol[from] -= d;
    return m;
}

void clustering_pass(ClusteringState& state, const EdgeStream& stream, const DegreeTable& degrees)
{
    stream.for_each_batch([&](eid_t, std::span<const Edge> batch) {
        for (const Edge& e : batch) {
            process_edge(state, e, degrees);
        }
    });
}

ClusteringState streaming_clustering(const EdgeStream& stream, const DegreeTable& degrees, std::uint32_t k)
{
    if (k < 2) {
        throw ConfigError("clustering needs k >= 2, got " + std::to_string(k));
    }
    ClusteringState state = ClusteringState::empty(degrees.size());
    state.max_vol = initial_volume_cap(stream.edge_count(), k);
    clustering_pass(state, stream, degrees);
    state.max_vol *= 2;
    clustering_pass(state, stream, degrees);
    return state;
}

void write_cluster_map(const std::filesystem::path& path, std::span<const cid_t> v2c)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot create " + path.string());
    }
    std::vector<char> bytes(v2c.size() * 4);
    for (std::size_t i = 0; i < v2c.size(); ++i) {
        for (std::size_t b = 0; b < 4; ++b) {
            bytes[4 * i + b] = static_cast<char>((v2c[i] >> (8 * b)) & 0xff);
        }
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::vector<cid_t> read_cluster_map(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cluster map not found: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 4 != 0) {
        throw FormatError(path.string() + ": size is not a multiple of 4 bytes");
    }
    std::vector<cid_t> v2c(bytes.size() / 4);
    for (std::size_t i = 0; i < v2c.size(); ++i) {
        v2c[i] = static_cast<cid_t>(bytes[4 * i]) | static_cast<cid_t>(bytes[4 * i + 1]) << 8 |
                 static_cast<cid_t>(bytes[4 * i + 2]) << 16 | static_cast<cid_t>(bytes[4 * i + 3]) << 24;
    }
    return v2c;
}

}  // namespace tps
