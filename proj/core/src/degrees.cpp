#include "tps/degrees.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tps {

degree_t DegreeTable::total() const
{
    return std::accumulate(d_.begin(), d_.end(), degree_t{0});
}

std::size_t DegreeTable::covered_vertices() const
{
    return static_cast<std::size_t>(std::count_if(d_.begin(), d_.end(), [](degree_t x) { return x > 0; }));
}

DegreeTable compute_degrees(const EdgeStream& stream)
{
    const auto declared = stream.declared_vertex_count();
    std::vector<degree_t> d;
    if (declared) {
        d.assign(*declared, 0);
    } else if (stream.vertex_count_known()) {
        d.assign(stream.vertex_count(), 0);
    }

    stream.for_each_batch([&](eid_t base, std::span<const Edge> batch) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Edge& e = batch[i];
            const vid_t hi = std::max(e.first, e.second);
            if (hi >= d.size()) {
                if (declared) {
                    throw IdRangeError("edge " + std::to_string(base + i) + " has vertex id " +
                                       std::to_string(hi) + " >= declared vertex count " +
                                       std::to_string(*declared));
                }
                d.resize(static_cast<std::size_t>(hi) + 1, 0);
            }
            ++d[e.first];
            ++d[e.second];
        }
    });
    return DegreeTable(std::move(d));
}

}  // namespace tps
