#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tps/edge_stream.hpp"
#include "tps/types.hpp"

namespace tps {

// True vertex degrees. Every edge adds one to each endpoint, so a self-loop
// adds two to its single endpoint and sum(d) == 2|E| always holds.
class DegreeTable {
  public:
    DegreeTable() = default;
    explicit DegreeTable(std::vector<degree_t> d) : d_(std::move(d)) {}

    degree_t operator[](vid_t v) const { return d_[v]; }
    std::size_t size() const { return d_.size(); }
    std::span<const degree_t> values() const { return d_; }

    degree_t total() const;
    std::size_t covered_vertices() const;  // vertices with d > 0

  private:
    std::vector<degree_t> d_;
};

// One full pass over the stream. Throws IdRangeError if a declared vertex count
// is exceeded.
DegreeTable compute_degrees(const EdgeStream& stream);

}  // namespace tps
