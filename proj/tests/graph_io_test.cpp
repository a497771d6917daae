#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "tps/degrees.hpp"
#include "tps/edge_stream.hpp"
#include "tps/generator.hpp"

namespace tps {
namespace {

using test::TempDir;

TEST(EdgeStream, OpensSixteenByteFile)
{
    TempDir dir;
    // [0,1, 1,2] as little-endian u32
    test::write_bytes(dir / "g.bin", {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0});
    const EdgeStream s = EdgeStream::open(dir / "g.bin");
    EXPECT_EQ(s.edge_count(), 2u);
    EXPECT_FALSE(s.vertex_count_known());

    std::vector<Edge> seen;
    s.for_each([&](eid_t i, const Edge& e) {
        EXPECT_EQ(i, seen.size());
        seen.push_back(e);
    });
    EXPECT_EQ(seen, (std::vector<Edge>{{0, 1}, {1, 2}}));
    EXPECT_EQ(s.vertex_count(), 3u);
}

TEST(EdgeStream, EmptyFile)
{
    TempDir dir;
    test::write_bytes(dir / "empty.bin", {});
    const EdgeStream s = EdgeStream::open(dir / "empty.bin");
    EXPECT_EQ(s.edge_count(), 0u);
    s.for_each([](eid_t, const Edge&) { FAIL(); });
    EXPECT_EQ(s.vertex_count(), 0u);
}

TEST(EdgeStream, TruncatedRecordIsFormatError)
{
    TempDir dir;
    test::write_bytes(dir / "bad.bin", std::vector<unsigned char>(12, 0));
    EXPECT_THROW(EdgeStream::open(dir / "bad.bin"), FormatError);
}

TEST(EdgeStream, MissingFile)
{
    TempDir dir;
    EXPECT_THROW(EdgeStream::open(dir / "nope.bin"), IoError);
}

TEST(EdgeStream, LittleEndianLayout)
{
    TempDir dir;
    write_edge_list(dir / "g.bin", std::vector<Edge>{{0x01020304u, 0xa0b0c0d0u}});
    EXPECT_EQ(test::read_bytes(dir / "g.bin"),
              (std::vector<unsigned char>{0x04, 0x03, 0x02, 0x01, 0xd0, 0xc0, 0xb0, 0xa0}));
}

TEST(EdgeStream, RestreamingIsDeterministic)
{
    TempDir dir;
    // Spans several read batches.
    const auto edges = test::random_edges(5000, 3 * EdgeStream::Reader::kBatchEdges + 17, 7);
    write_edge_list(dir / "g.bin", edges);
    const EdgeStream s = EdgeStream::open(dir / "g.bin");
    const std::uint64_t first = test::hash_pass(s);
    const std::uint64_t second = test::hash_pass(s);
    EXPECT_EQ(first, second);
    EXPECT_EQ(first, test::hash_pass(EdgeStream::from_edges(edges)));
    EXPECT_EQ(s.passes(), 2u);
}

TEST(EdgeStream, IndependentReaders)
{
    const auto edges = test::random_edges(100, 5000, 3);
    const EdgeStream s = EdgeStream::from_edges(edges);
    auto a = s.reader();
    auto b = s.reader();
    const auto batch_a = a.next();
    const auto batch_b = b.next();
    ASSERT_FALSE(batch_a.empty());
    EXPECT_EQ(batch_a[0], batch_b[0]);
}

TEST(Degrees, PathOfTwoEdges)
{
    const auto d = compute_degrees(EdgeStream::from_edges({{0, 1}, {1, 2}}));
    EXPECT_EQ(std::vector<degree_t>(d.values().begin(), d.values().end()), (std::vector<degree_t>{1, 2, 1}));
}

TEST(Degrees, SelfLoopCountsTwice)
{
    const auto d = compute_degrees(EdgeStream::from_edges({{0, 0}}));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0], 2u);
}

TEST(Degrees, HandshakeOnPath)
{
    const auto d = compute_degrees(EdgeStream::from_edges(test::path_graph(10)));
    EXPECT_EQ(d.total(), 20u);
}

TEST(Degrees, HandshakeProperty)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto edges = test::random_edges(1 + seed * 3, seed * 11, seed);
        const auto d = compute_degrees(EdgeStream::from_edges(edges));
        EXPECT_EQ(d.total(), 2 * edges.size()) << "seed " << seed;
    }
}

TEST(Degrees, DeclaredCountIsEnforced)
{
    EXPECT_THROW(compute_degrees(EdgeStream::from_edges({{0, 5}}, 3)), IdRangeError);
    const auto d = compute_degrees(EdgeStream::from_edges({{0, 1}}, 10));
    EXPECT_EQ(d.size(), 10u);
    EXPECT_EQ(d.covered_vertices(), 2u);
}

TEST(Generator, RejectsBadConfig)
{
    EXPECT_THROW(generate_power_law_edges({100, 1.0, 1}), ConfigError);
    EXPECT_THROW(generate_power_law_edges({100, 0.5, 1}), ConfigError);
    EXPECT_THROW(generate_power_law_edges({1, 2.0, 1}), ConfigError);
}

TEST(Generator, TwoVertices)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (double exponent : {1.5, 2.0, 4.0}) {
            const auto edges = generate_power_law_edges({2, exponent, seed});
            const auto d = compute_degrees(EdgeStream::from_edges(edges, 2));
            EXPECT_GE(d[0], 1u);
            EXPECT_GE(d[1], 1u);
            // Degrees are sampled on [1, n-1] = {1}, so sum(d) = 2 and |E| = 1.
            EXPECT_EQ(edges.size(), (d.total() + 1) / 2);
            EXPECT_EQ(edges.size(), 1u);
        }
    }
}

TEST(Generator, EdgeCountIsCeilHalfStubs)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto edges = generate_power_law_edges({500, 2.2, seed});
        const auto d = compute_degrees(EdgeStream::from_edges(edges, 500));
        EXPECT_EQ(d.total(), 2 * edges.size());
        for (vid_t v = 0; v < 500; ++v) {
            ASSERT_GE(d[v], 1u);
        }
    }
}

TEST(Generator, DeterministicBytes)
{
    TempDir dir;
    const GeneratorConfig cfg{20000, 2.5, 99};
    generate_power_law(cfg, dir / "a.bin");
    generate_power_law(cfg, dir / "b.bin");
    EXPECT_EQ(test::read_bytes(dir / "a.bin"), test::read_bytes(dir / "b.bin"));

    generate_power_law(GeneratorConfig{20000, 2.5, 100}, dir / "c.bin");
    EXPECT_NE(test::read_bytes(dir / "a.bin"), test::read_bytes(dir / "c.bin"));
}

TEST(Generator, TailSlopeMatchesExponent)
{
    const auto edges = generate_power_law_edges({100000, 4.0, 42});
    const auto d = compute_degrees(EdgeStream::from_edges(edges, 100000));

    // Logarithmic bins [2, 2*sqrt2), [2*sqrt2, 4), ...; the fit is over bin
    // density so that the sparse single-count tail does not flatten the slope.
    std::vector<double> edges_of_bins;
    for (double b = 2.0; b < 1e6; b *= std::sqrt(2.0)) {
        edges_of_bins.push_back(std::floor(b));
    }
    std::vector<double> counts(edges_of_bins.size() - 1, 0.0);
    for (degree_t x : d.values()) {
        for (std::size_t i = 0; i + 1 < edges_of_bins.size(); ++i) {
            if (static_cast<double>(x) >= edges_of_bins[i] && static_cast<double>(x) < edges_of_bins[i + 1]) {
                counts[i] += 1.0;
                break;
            }
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double width = edges_of_bins[i + 1] - edges_of_bins[i];
        if (counts[i] == 0.0 || width == 0.0) {
            continue;
        }
        const double x = std::log(std::sqrt(edges_of_bins[i] * edges_of_bins[i + 1]));
        const double y = std::log(counts[i] / width);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(slope, -4.0, 0.3);
}

}  // namespace
}  // namespace tps
