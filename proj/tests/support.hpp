#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "tps/edge_stream.hpp"
#include "tps/types.hpp"

namespace tps::test {

// Scratch directory removed on destruction.
class TempDir {
  public:
    TempDir()
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("tps-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline std::vector<unsigned char> read_bytes(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& p, const std::vector<unsigned char>& bytes)
{
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// FNV-1a over one full pass.
inline std::uint64_t hash_pass(const EdgeStream& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint32_t x) {
        for (int i = 0; i < 4; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    s.for_each([&](eid_t, const Edge& e) {
        mix(e.first);
        mix(e.second);
    });
    return h;
}

inline std::vector<Edge> path_graph(vid_t edges)
{
    std::vector<Edge> out;
    for (vid_t i = 0; i < edges; ++i) {
        out.push_back({i, i + 1});
    }
    return out;
}

inline std::vector<Edge> star_graph(vid_t leaves)
{
    std::vector<Edge> out;
    for (vid_t i = 1; i <= leaves; ++i) {
        out.push_back({0, i});
    }
    return out;
}

// Complete graph on [base, base + size), lexicographic edge order.
inline std::vector<Edge> clique(vid_t base, vid_t size)
{
    std::vector<Edge> out;
    for (vid_t a = 0; a < size; ++a) {
        for (vid_t b = a + 1; b < size; ++b) {
            out.push_back({base + a, base + b});
        }
    }
    return out;
}

inline std::vector<Edge> two_triangles()
{
    return {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
}

// Uniform random endpoints over [0, n), self-loops allowed.
inline std::vector<Edge> random_edges(std::uint64_t n, std::uint64_t m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<vid_t> pick(0, static_cast<vid_t>(n - 1));
    std::vector<Edge> out(m);
    for (auto& e : out) {
        e = {pick(rng), pick(rng)};
    }
    return out;
}

}  // namespace tps::test
