#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tps/degrees.hpp"
#include "tps/types.hpp"

namespace tps {

// |V| x k bit matrix; bit (v, p) is set iff v is in the vertex cover set V(p).
class ReplicationMatrix {
  public:
    ReplicationMatrix() = default;
    ReplicationMatrix(std::size_t vertices, std::uint32_t k);

    bool test(vid_t v, part_t p) const
    {
        return (bits_[row(v) + p / 64] >> (p % 64)) & 1u;
    }
    void set(vid_t v, part_t p) { bits_[row(v) + p / 64] |= std::uint64_t{1} << (p % 64); }

    std::uint32_t row_weight(vid_t v) const;

    // sum over p of |V(p)|
    std::uint64_t total_replicas() const;
    // vertices with at least one bit set
    std::uint64_t covered_vertices() const;

    std::size_t vertices() const { return vertices_; }
    std::uint32_t k() const { return k_; }
    // Logical cell count |V| * k (independent of word padding).
    std::uint64_t cell_count() const { return static_cast<std::uint64_t>(vertices_) * k_; }

  private:
    std::size_t row(vid_t v) const { return static_cast<std::size_t>(v) * words_per_row_; }

    std::size_t vertices_ = 0;
    std::uint32_t k_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline constexpr eid_t kUnboundedCapacity = std::numeric_limits<eid_t>::max();

struct PartitionLoads {
    std::vector<eid_t> sizes;
    eid_t capacity = kUnboundedCapacity;

    PartitionLoads() = default;
    PartitionLoads(std::uint32_t k, eid_t cap) : sizes(k, 0), capacity(cap) {}

    std::uint32_t k() const { return static_cast<std::uint32_t>(sizes.size()); }
    bool full(part_t p) const { return sizes[p] >= capacity; }
    eid_t max_size() const;
    eid_t min_size() const;
    eid_t total() const;
};

// ceil(alpha * |E| / k): the hard per-partition edge cap. The quotient is
// nudged down by a relative 1e-12 before the ceiling so that decimal alphas such
// as 1.1 do not round up an exact integer quotient.
eid_t balance_capacity(double alpha, eid_t edges, std::uint32_t k);

struct HdrfParams {
    double lambda = 1.1;
    double epsilon = 1.0;
};

struct LoadExtremes {
    eid_t min = 0;
    eid_t max = 0;
};

LoadExtremes load_extremes(const PartitionLoads& loads);

// HDRF score C_REP + C_BAL of placing e on p:
//   theta(u) = d(u) / (d(u) + d(v))
//   g(u, p)  = 1 + (1 - theta(u)) if u in V(p), else 0
//   C_REP    = g(u, p) + g(v, p)
//   C_BAL    = lambda * (maxsize - |p|) / (epsilon + maxsize - minsize)
// Degrees are the true degrees from the degree pass.
double hdrf_score(const Edge& e, part_t p, const ReplicationMatrix& matrix, const PartitionLoads& loads,
                  const DegreeTable& degrees, const HdrfParams& params);

// Same, with the load extremes precomputed once per edge.
double hdrf_score(const Edge& e, part_t p, const ReplicationMatrix& matrix, const PartitionLoads& loads,
                  const DegreeTable& degrees, const HdrfParams& params, const LoadExtremes& extremes);

// Places e on the highest-scoring partition among those below loads.capacity
// (ties go to the lowest id), sets both endpoint bits and bumps the load.
// Throws CapacityError if every partition is full.
part_t hdrf_assign(const Edge& e, ReplicationMatrix& matrix, PartitionLoads& loads, const DegreeTable& degrees,
                   const HdrfParams& params);

// Same, restricted to an explicit candidate set (capacity is not consulted).
part_t hdrf_assign(const Edge& e, std::span<const part_t> candidates, ReplicationMatrix& matrix,
                   PartitionLoads& loads, const DegreeTable& degrees, const HdrfParams& params);

// Records e on p without scoring.
inline void commit_edge(const Edge& e, part_t p, ReplicationMatrix& matrix, PartitionLoads& loads)
{
    matrix.set(e.first, p);
    matrix.set(e.second, p);
    ++loads.sizes[p];
}

// splitmix64 finalizer (constants 0xbf58476d1ce4e5b9, 0x94d049bb133111eb).
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Degree-based hashing: hash the lower-degree endpoint (smaller id on ties).
part_t dbh_assign(const Edge& e, const DegreeTable& degrees, std::uint32_t k);

}  // namespace tps
