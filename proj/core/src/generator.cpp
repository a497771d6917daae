#include "tps/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace tps {

namespace {

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

void GeneratorConfig::validate() const
{
    if (!(power_law_exponent > 1.0) || !std::isfinite(power_law_exponent)) {
        throw ConfigError("power-law exponent must be a finite value > 1, got " +
                          std::to_string(power_law_exponent));
    }
    if (n_vertices < 2) {
        throw ConfigError("generator needs at least 2 vertices");
    }
    if (n_vertices > (std::uint64_t{1} << 32)) {
        throw ConfigError("vertex ids are 32-bit; n_vertices must be <= 2^32");
    }
}

std::vector<Edge> generate_power_law_edges(const GeneratorConfig& cfg)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.rng_seed);

    // cdf[i] = sum_{d=1}^{i+1} d^-exponent
    const std::uint64_t max_degree = cfg.n_vertices - 1;
    std::vector<double> cdf(max_degree);
    double acc = 0.0;
    for (std::uint64_t d = 1; d <= max_degree; ++d) {
        acc += std::pow(static_cast<double>(d), -cfg.power_law_exponent);
        cdf[d - 1] = acc;
    }

    std::vector<vid_t> stubs;
    for (std::uint64_t v = 0; v < cfg.n_vertices; ++v) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        const std::uint64_t degree = static_cast<std::uint64_t>(it - cdf.begin()) + 1;
        stubs.insert(stubs.end(), degree, static_cast<vid_t>(v));
    }
    if (stubs.size() % 2 != 0) {
        stubs.push_back(static_cast<vid_t>(uniform_below(rng, cfg.n_vertices)));
    }

    for (std::size_t i = stubs.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(stubs[i - 1], stubs[j]);
    }

    std::vector<Edge> edges(stubs.size() / 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = Edge{stubs[2 * i], stubs[2 * i + 1]};
    }
    return edges;
}

EdgeStream generate_power_law(const GeneratorConfig& cfg, const std::filesystem::path& path)
{
    const std::vector<Edge> edges = generate_power_law_edges(cfg);
    write_edge_list(path, edges);
    return EdgeStream::open(path, cfg.n_vertices);
}

}  // namespace tps
