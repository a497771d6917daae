#include "tps/edge_stream.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cstring>
#include <string>
#include <system_error>

namespace tps {

namespace {

void to_host_order(std::span<Edge> edges)
{
    if constexpr (std::endian::native == std::endian::big) {
        for (Edge& e : edges) {
            e.first = __builtin_bswap32(e.first);
            e.second = __builtin_bswap32(e.second);
        }
    }
}

std::string errno_message(const std::filesystem::path& path)
{
    return path.string() + ": " + std::generic_category().message(errno);
}

}  // namespace

EdgeStream EdgeStream::open(const std::filesystem::path& path,
                            std::optional<std::uint64_t> declared_vertices)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("edge list not found: " + path.string());
    }
    const std::uintmax_t bytes = std::filesystem::file_size(path, ec);
    if (ec) {
        throw IoError("cannot stat " + path.string() + ": " + ec.message());
    }
    if (bytes % kEdgeRecordBytes != 0) {
        throw FormatError(path.string() + ": size " + std::to_string(bytes) +
                          " is not a multiple of 8 bytes (truncated edge record)");
    }
    auto shared = std::make_shared<Shared>();
    shared->path = path;
    shared->edge_count = bytes / kEdgeRecordBytes;
    shared->declared_vertices = declared_vertices;
    return EdgeStream(std::move(shared));
}

EdgeStream EdgeStream::from_edges(std::vector<Edge> edges,
                                  std::optional<std::uint64_t> declared_vertices)
{
    auto shared = std::make_shared<Shared>();
    shared->edge_count = edges.size();
    shared->memory = std::make_shared<const std::vector<Edge>>(std::move(edges));
    shared->declared_vertices = declared_vertices;
    return EdgeStream(std::move(shared));
}

bool EdgeStream::vertex_count_known() const
{
    return shared_->declared_vertices.has_value() ||
           shared_->inferred_vertices.load(std::memory_order_acquire) != kUnknown;
}

std::uint64_t EdgeStream::vertex_count() const
{
    if (shared_->declared_vertices) {
        return *shared_->declared_vertices;
    }
    const std::uint64_t inferred = shared_->inferred_vertices.load(std::memory_order_acquire);
    if (inferred == kUnknown) {
        throw Error("vertex count not known before the first full pass");
    }
    return inferred;
}

void EdgeStream::finish_pass(std::uint64_t max_id_plus_one) const
{
    std::uint64_t expected = kUnknown;
    shared_->inferred_vertices.compare_exchange_strong(expected, max_id_plus_one,
                                                       std::memory_order_acq_rel);
    shared_->passes.fetch_add(1, std::memory_order_relaxed);
}

EdgeStream::Reader EdgeStream::reader() const
{
    return Reader(*this);
}

EdgeStream::Reader::Reader(const EdgeStream& stream) : stream_(stream)
{
    if (!stream_.in_memory()) {
        file_.reset(std::fopen(stream_.path().c_str(), "rb"));
        if (!file_) {
            throw IoError("cannot open " + errno_message(stream_.path()));
        }
        buffer_.resize(kBatchEdges);
    }
}

std::span<const Edge> EdgeStream::Reader::next()
{
    if (done_) {
        return {};
    }
    const eid_t total = stream_.edge_count();
    std::span<const Edge> batch;

    if (stream_.in_memory()) {
        const auto& edges = *stream_.shared_->memory;
        const std::size_t n = static_cast<std::size_t>(std::min<eid_t>(kBatchEdges, total - position_));
        batch = std::span<const Edge>(edges.data() + position_, n);
    } else {
        const std::size_t want = static_cast<std::size_t>(std::min<eid_t>(kBatchEdges, total - position_));
        std::size_t got = 0;
        if (want > 0) {
            got = std::fread(buffer_.data(), 1, want * sizeof(Edge), file_.get());
            if (got != want * sizeof(Edge)) {
                if (std::ferror(file_.get())) {
                    throw IoError("read failed: " + errno_message(stream_.path()));
                }
                throw FormatError(stream_.path().string() + ": file shrank while streaming");
            }
        }
        to_host_order(std::span<Edge>(buffer_.data(), want));
        batch = std::span<const Edge>(buffer_.data(), want);
    }

    if (batch.empty()) {
        done_ = true;
        file_.reset();
        stream_.finish_pass(max_id_plus_one_);
        return {};
    }
    for (const Edge& e : batch) {
        const std::uint64_t hi = std::max(e.first, e.second);
        max_id_plus_one_ = std::max(max_id_plus_one_, hi + 1);
    }
    position_ += batch.size();
    return batch;
}

void write_edge_list(const std::filesystem::path& path, std::span<const Edge> edges)
{
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> out(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!out) {
        throw IoError("cannot create " + errno_message(path));
    }
    constexpr std::size_t kChunk = 8192;
    std::vector<Edge> chunk;
    chunk.reserve(kChunk);
    for (std::size_t i = 0; i < edges.size(); i += kChunk) {
        const std::size_t n = std::min(kChunk, edges.size() - i);
        chunk.assign(edges.begin() + i, edges.begin() + i + n);
        to_host_order(chunk);  // byte swap is an involution
        if (std::fwrite(chunk.data(), sizeof(Edge), n, out.get()) != n) {
            throw IoError("write failed: " + errno_message(path));
        }
    }
    if (std::fflush(out.get()) != 0) {
        throw IoError("write failed: " + errno_message(path));
    }
}

}  // namespace tps
