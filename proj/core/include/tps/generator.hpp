#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tps/edge_stream.hpp"
#include "tps/types.hpp"

namespace tps {

struct GeneratorConfig {
    std::uint64_t n_vertices = 0;
    double power_law_exponent = 0.0;
    std::uint64_t rng_seed = 0;

    // Throws ConfigError unless exponent > 1 and 2 <= n_vertices <= 2^32.
    void validate() const;
};

// Random power-law graph. Each vertex draws its degree independently from
// P(d) ~ d^-exponent on [1, n-1]; degree stubs are then shuffled and paired
// consecutively (configuration model). Self-loops and repeated pairs are kept as
// separate edges. An odd stub total gets one extra stub on a random vertex, so
// |E| = ceil(sum(d) / 2).
//
// Output depends only on the config: mt19937_64 plus hand-rolled uniform draws,
// no implementation-defined std:: distributions.
std::vector<Edge> generate_power_law_edges(const GeneratorConfig& cfg);

// Generates and writes the graph to `path`, returning a stream over it with the
// vertex count declared as n_vertices.
EdgeStream generate_power_law(const GeneratorConfig& cfg, const std::filesystem::path& path);

}  // namespace tps
