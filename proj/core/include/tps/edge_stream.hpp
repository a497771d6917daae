#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tps/types.hpp"

namespace tps {

// Binary edge list: 8 bytes per edge, two little-endian unsigned 32-bit ids,
// no header.
inline constexpr std::size_t kEdgeRecordBytes = 8;

// A restreamable sequence of edges backed either by a binary edge-list file or
// by an in-memory edge vector. Copies share the same source and pass counters.
//
// Each pass opens an independent cursor, so concurrent readers are fine. The
// vertex count is either declared up front or inferred as (max id + 1) once the
// first full pass has completed.
class EdgeStream {
  public:
    class Reader;

    static EdgeStream open(const std::filesystem::path& path,
                           std::optional<std::uint64_t> declared_vertices = std::nullopt);

    static EdgeStream from_edges(std::vector<Edge> edges,
                                 std::optional<std::uint64_t> declared_vertices = std::nullopt);

    eid_t edge_count() const { return shared_->edge_count; }

    bool vertex_count_known() const;

    // Throws tps::Error if the count was not declared and no full pass has
    // completed yet.
    std::uint64_t vertex_count() const;

    std::optional<std::uint64_t> declared_vertex_count() const { return shared_->declared_vertices; }

    // Number of full passes completed over this stream (shared by all copies).
    std::uint64_t passes() const { return shared_->passes.load(std::memory_order_relaxed); }

    const std::filesystem::path& path() const { return shared_->path; }
    bool in_memory() const { return shared_->memory != nullptr; }

    Reader reader() const;

    // f(eid_t first_index, std::span<const Edge> batch) for consecutive batches.
    template <class F>
    void for_each_batch(F&& f) const;

    // f(eid_t index, const Edge& e) for every edge, in stream order.
    template <class F>
    void for_each(F&& f) const
    {
        for_each_batch([&](eid_t base, std::span<const Edge> batch) {
            for (std::size_t i = 0; i < batch.size(); ++i) {
                f(base + i, batch[i]);
            }
        });
    }

  private:
    struct Shared {
        std::filesystem::path path;
        std::shared_ptr<const std::vector<Edge>> memory;
        eid_t edge_count = 0;
        std::optional<std::uint64_t> declared_vertices;
        std::atomic<std::uint64_t> inferred_vertices{kUnknown};
        std::atomic<std::uint64_t> passes{0};
    };
    static constexpr std::uint64_t kUnknown = ~std::uint64_t{0};

    explicit EdgeStream(std::shared_ptr<Shared> shared) : shared_(std::move(shared)) {}

    void finish_pass(std::uint64_t max_id_plus_one) const;

    std::shared_ptr<Shared> shared_;
};

// Sequential cursor over one pass of an EdgeStream.
class EdgeStream::Reader {
  public:
    static constexpr std::size_t kBatchEdges = 64 * 1024 / sizeof(Edge);

    Reader(Reader&&) noexcept = default;
    Reader& operator=(Reader&&) noexcept = default;

    // Returns the next batch; an empty span marks the end of the pass. The
    // returned span is valid until the next call.
    std::span<const Edge> next();

    eid_t position() const { return position_; }

  private:
    friend class EdgeStream;
    explicit Reader(const EdgeStream& stream);

    struct FileCloser {
        void operator()(std::FILE* f) const { std::fclose(f); }
    };

    EdgeStream stream_;
    std::unique_ptr<std::FILE, FileCloser> file_;
    std::vector<Edge> buffer_;
    eid_t position_ = 0;
    std::uint64_t max_id_plus_one_ = 0;
    bool done_ = false;
};

template <class F>
void EdgeStream::for_each_batch(F&& f) const
{
    Reader r = reader();
    for (;;) {
        eid_t base = r.position();
        std::span<const Edge> batch = r.next();
        if (batch.empty()) {
            break;
        }
        f(base, batch);
    }
}

// Writes edges as a binary edge list (little-endian, 8 bytes per edge).
void write_edge_list(const std::filesystem::path& path, std::span<const Edge> edges);

}  // namespace tps
