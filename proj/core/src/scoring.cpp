#include "tps/scoring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace tps {

ReplicationMatrix::ReplicationMatrix(std::size_t vertices, std::uint32_t k)
    : vertices_(vertices), k_(k), words_per_row_((k + 63) / 64), bits_(vertices * words_per_row_, 0)
{
}

std::uint32_t ReplicationMatrix::row_weight(vid_t v) const
{
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < words_per_row_; ++i) {
        w += static_cast<std::uint32_t>(std::popcount(bits_[row(v) + i]));
    }
    return w;
}

std::uint64_t ReplicationMatrix::total_replicas() const
{
    std::uint64_t total = 0;
    for (std::uint64_t word : bits_) {
        total += static_cast<std::uint64_t>(std::popcount(word));
    }
    return total;
}

std::uint64_t ReplicationMatrix::covered_vertices() const
{
    std::uint64_t covered = 0;
    for (std::size_t v = 0; v < vertices_; ++v) {
        const auto begin = bits_.begin() + static_cast<std::ptrdiff_t>(v * words_per_row_);
        if (std::any_of(begin, begin + static_cast<std::ptrdiff_t>(words_per_row_),
                        [](std::uint64_t w) { return w != 0; })) {
            ++covered;
        }
    }
    return covered;
}

eid_t PartitionLoads::max_size() const
{
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

eid_t PartitionLoads::min_size() const
{
    return sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
}

eid_t PartitionLoads::total() const
{
    return std::accumulate(sizes.begin(), sizes.end(), eid_t{0});
}

eid_t balance_capacity(double alpha, eid_t edges, std::uint32_t k)
{
    if (k == 0) {
        throw ConfigError("k must be positive");
    }
    const double quotient = alpha * static_cast<double>(edges) / static_cast<double>(k);
    return static_cast<eid_t>(std::ceil(quotient * (1.0 - 1e-12)));
}

LoadExtremes load_extremes(const PartitionLoads& loads)
{
    LoadExtremes x{kUnboundedCapacity, 0};
    for (eid_t s : loads.sizes) {
        x.min = std::min(x.min, s);
        x.max = std::max(x.max, s);
    }
    if (loads.sizes.empty()) {
        x.min = 0;
    }
    return x;
}

double hdrf_score(const Edge& e, part_t p, const ReplicationMatrix& matrix, const PartitionLoads& loads,
                  const DegreeTable& degrees, const HdrfParams& params, const LoadExtremes& extremes)
{
    const double du = static_cast<double>(degrees[e.first]);
    const double dv = static_cast<double>(degrees[e.second]);
    const double sum = du + dv;
    const double theta_u = sum > 0 ? du / sum : 0.5;
    const double theta_v = sum > 0 ? dv / sum : 0.5;

    double rep = 0.0;
    if (matrix.test(e.first, p)) {
        rep += 1.0 + (1.0 - theta_u);
    }
    if (matrix.test(e.second, p)) {
        rep += 1.0 + (1.0 - theta_v);
    }
    const double bal = params.lambda * static_cast<double>(extremes.max - loads.sizes[p]) /
                       (params.epsilon + static_cast<double>(extremes.max - extremes.min));
    return rep + bal;
}

double hdrf_score(const Edge& e, part_t p, const ReplicationMatrix& matrix, const PartitionLoads& loads,
                  const DegreeTable& degrees, const HdrfParams& params)
{
    return hdrf_score(e, p, matrix, loads, degrees, params, load_extremes(loads));
}

part_t hdrf_assign(const Edge& e, ReplicationMatrix& matrix, PartitionLoads& loads, const DegreeTable& degrees,
                   const HdrfParams& params)
{
    // Same arithmetic as hdrf_score, with the per-edge terms hoisted and the
    // replication bits used as 0/1 factors so that the loop does not branch on them.
    const LoadExtremes extremes = load_extremes(loads);
    const double du = static_cast<double>(degrees[e.first]);
    const double dv = static_cast<double>(degrees[e.second]);
    const double sum = du + dv;
    const double g_u = 1.0 + (1.0 - (sum > 0 ? du / sum : 0.5));
    const double g_v = 1.0 + (1.0 - (sum > 0 ? dv / sum : 0.5));
    const double denominator = params.epsilon + static_cast<double>(extremes.max - extremes.min);

    double best = -std::numeric_limits<double>::infinity();
    part_t target = kNoPartition;
    for (part_t p = 0; p < loads.k(); ++p) {
        if (loads.full(p)) {
            continue;
        }
        const double rep = static_cast<double>(matrix.test(e.first, p)) * g_u +
                           static_cast<double>(matrix.test(e.second, p)) * g_v;
        const double score =
            rep + params.lambda * static_cast<double>(extremes.max - loads.sizes[p]) / denominator;
        const bool better = score > best;
        target = better ? p : target;
        best = better ? score : best;
    }
    if (target == kNoPartition) {
        throw CapacityError("all " + std::to_string(loads.k()) + " partitions are at capacity " +
                            std::to_string(loads.capacity));
    }
    commit_edge(e, target, matrix, loads);
    return target;
}

part_t hdrf_assign(const Edge& e, std::span<const part_t> candidates, ReplicationMatrix& matrix,
                   PartitionLoads& loads, const DegreeTable& degrees, const HdrfParams& params)
{
    if (candidates.empty()) {
        throw CapacityError("no candidate partition for edge");
    }
    const LoadExtremes extremes = load_extremes(loads);
    double best = -std::numeric_limits<double>::infinity();
    part_t target = kNoPartition;
    for (part_t p : candidates) {
        const double score = hdrf_score(e, p, matrix, loads, degrees, params, extremes);
        if (score > best || (score == best && p < target)) {
            best = score;
            target = p;
        }
    }
    commit_edge(e, target, matrix, loads);
    return target;
}

part_t dbh_assign(const Edge& e, const DegreeTable& degrees, std::uint32_t k)
{
    const degree_t du = degrees[e.first];
    const degree_t dv = degrees[e.second];
    vid_t low = e.first;
    if (dv < du || (dv == du && e.second < e.first)) {
        low = e.second;
    }
    return static_cast<part_t>(mix64(low) % k);
}

}  // namespace tps
