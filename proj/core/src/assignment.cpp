#include "tps/assignment.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <system_error>

namespace tps {

namespace {

constexpr std::size_t kRunRecordBytes = 12;
constexpr std::size_t kBufferRecords = 1 << 14;

template <class T>
void store_le(unsigned char* dst, T value)
{
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        dst[i] = static_cast<unsigned char>(value >> (8 * i));
    }
}

template <class T>
T load_le(const unsigned char* src)
{
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(src[i]) << (8 * i);
    }
    return value;
}

std::string errno_message(const std::filesystem::path& path)
{
    return path.string() + ": " + std::generic_category().message(errno);
}

std::filesystem::path unique_run_path(const std::filesystem::path& dir)
{
    static std::atomic<std::uint64_t> counter{0};
    static const std::uint64_t token = std::random_device{}();
    return dir / ("tps-run-" + std::to_string(::getpid()) + "-" + std::to_string(token) + "-" +
                  std::to_string(counter.fetch_add(1)) + ".bin");
}

// Sequential reader over one run file.
class RunCursor {
  public:
    explicit RunCursor(const std::filesystem::path& path) : path_(path), file_(std::fopen(path.c_str(), "rb"))
    {
        if (!file_) {
            throw IoError("cannot open run file " + errno_message(path));
        }
        buffer_.resize(kBufferRecords * kRunRecordBytes);
        advance();
    }
    ~RunCursor() { std::fclose(file_); }
    RunCursor(const RunCursor&) = delete;
    RunCursor& operator=(const RunCursor&) = delete;

    bool valid() const { return valid_; }
    eid_t index() const { return index_; }
    part_t partition() const { return partition_; }

    void advance()
    {
        if (pos_ == filled_) {
            const std::size_t bytes = std::fread(buffer_.data(), 1, buffer_.size(), file_);
            if (bytes % kRunRecordBytes != 0) {
                throw FormatError("run file " + path_.string() + " has a truncated record");
            }
            filled_ = bytes;
            pos_ = 0;
            if (bytes == 0) {
                valid_ = false;
                return;
            }
        }
        index_ = load_le<std::uint64_t>(buffer_.data() + pos_);
        partition_ = load_le<std::uint32_t>(buffer_.data() + pos_ + 8);
        pos_ += kRunRecordBytes;
        valid_ = true;
    }

  private:
    std::filesystem::path path_;
    std::FILE* file_;
    std::vector<unsigned char> buffer_;
    std::size_t filled_ = 0;
    std::size_t pos_ = 0;
    bool valid_ = false;
    eid_t index_ = 0;
    part_t partition_ = 0;
};

}  // namespace

void MemorySink::record(eid_t edge_index, part_t partition)
{
    if (passes_.empty()) {
        passes_.emplace_back();
    }
    passes_.back().push_back({edge_index, partition});
}

std::vector<part_t> MemorySink::merged(eid_t edge_count) const
{
    std::vector<part_t> out(edge_count, kNoPartition);
    for (const auto& pass : passes_) {
        for (const Record& r : pass) {
            if (r.edge_index >= edge_count) {
                throw Error("record for edge " + std::to_string(r.edge_index) + " beyond stream end");
            }
            if (out[r.edge_index] != kNoPartition) {
                throw Error("edge " + std::to_string(r.edge_index) + " assigned twice");
            }
            out[r.edge_index] = r.partition;
        }
    }
    return out;
}

std::filesystem::path scratch_directory()
{
    if (const char* env = std::getenv("TPS_TMPDIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::temp_directory_path();
}

AssignmentFileWriter::AssignmentFileWriter(std::filesystem::path scratch_dir)
    : scratch_dir_(scratch_dir.empty() ? scratch_directory() : std::move(scratch_dir))
{
    buffer_.reserve(kBufferRecords * kRunRecordBytes);
}

AssignmentFileWriter::~AssignmentFileWriter()
{
    current_.reset();
    std::error_code ec;
    for (const auto& run : runs_) {
        std::filesystem::remove(run, ec);
    }
}

void AssignmentFileWriter::begin_pass()
{
    if (current_) {
        end_pass();
    }
    std::filesystem::path path = unique_run_path(scratch_dir_);
    current_.reset(std::fopen(path.c_str(), "wb"));
    if (!current_) {
        throw IoError("cannot create run file " + errno_message(path));
    }
    runs_.push_back(std::move(path));
}

void AssignmentFileWriter::record(eid_t edge_index, part_t partition)
{
    if (!current_) {
        begin_pass();
    }
    const std::size_t at = buffer_.size();
    buffer_.resize(at + kRunRecordBytes);
    store_le<std::uint64_t>(buffer_.data() + at, edge_index);
    store_le<std::uint32_t>(buffer_.data() + at + 8, partition);
    if (buffer_.size() >= kBufferRecords * kRunRecordBytes) {
        flush_buffer();
    }
}

void AssignmentFileWriter::flush_buffer()
{
    if (buffer_.empty()) {
        return;
    }
    if (std::fwrite(buffer_.data(), 1, buffer_.size(), current_.get()) != buffer_.size()) {
        throw IoError("write failed: " + errno_message(runs_.back()));
    }
    buffer_.clear();
}

void AssignmentFileWriter::end_pass()
{
    if (!current_) {
        return;
    }
    flush_buffer();
    if (std::fflush(current_.get()) != 0) {
        throw IoError("write failed: " + errno_message(runs_.back()));
    }
    current_.reset();
}

void AssignmentFileWriter::finish(const std::filesystem::path& out, eid_t edge_count)
{
    end_pass();

    std::vector<std::unique_ptr<RunCursor>> cursors;
    for (const auto& run : runs_) {
        cursors.push_back(std::make_unique<RunCursor>(run));
    }

    std::unique_ptr<std::FILE, FileCloser> dst(std::fopen(out.c_str(), "wb"));
    if (!dst) {
        throw IoError("cannot create " + errno_message(out));
    }
    std::vector<unsigned char> outbuf;
    outbuf.reserve(kBufferRecords * 4);
    auto flush = [&] {
        if (std::fwrite(outbuf.data(), 1, outbuf.size(), dst.get()) != outbuf.size()) {
            throw IoError("write failed: " + errno_message(out));
        }
        outbuf.clear();
    };

    // Every run is sorted by index, so the merge only ever looks at run heads.
    for (eid_t i = 0; i < edge_count; ++i) {
        RunCursor* head = nullptr;
        for (auto& c : cursors) {
            if (c->valid() && (head == nullptr || c->index() < head->index())) {
                head = c.get();
            }
        }
        if (head == nullptr || head->index() != i) {
            throw Error("assignment runs are missing edge " + std::to_string(i));
        }
        const part_t p = head->partition();
        head->advance();
        for (auto& c : cursors) {
            if (c->valid() && c->index() == i) {
                throw Error("edge " + std::to_string(i) + " assigned more than once");
            }
        }
        const std::size_t at = outbuf.size();
        outbuf.resize(at + 4);
        store_le<std::uint32_t>(outbuf.data() + at, p);
        if (outbuf.size() >= kBufferRecords * 4) {
            flush();
        }
    }
    for (auto& c : cursors) {
        if (c->valid()) {
            throw Error("assignment record for edge " + std::to_string(c->index()) + " beyond stream end");
        }
    }
    flush();
    if (std::fflush(dst.get()) != 0) {
        throw IoError("write failed: " + errno_message(out));
    }
}

AssignmentReader::AssignmentReader(const std::filesystem::path& path) : path_(path)
{
    std::error_code ec;
    const std::uintmax_t bytes = std::filesystem::file_size(path, ec);
    if (ec) {
        throw IoError("assignment file not found: " + path.string());
    }
    if (bytes % 4 != 0) {
        throw FormatError(path.string() + ": size is not a multiple of 4 bytes");
    }
    count_ = bytes / 4;
    file_.reset(std::fopen(path.c_str(), "rb"));
    if (!file_) {
        throw IoError("cannot open " + errno_message(path));
    }
}

std::size_t AssignmentReader::read(std::span<part_t> out)
{
    const std::size_t got = std::fread(out.data(), sizeof(part_t), out.size(), file_.get());
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < got; ++i) {
            out[i] = __builtin_bswap32(out[i]);
        }
    }
    return got;
}

void write_assignment(const std::filesystem::path& path, std::span<const part_t> assignment)
{
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> out(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!out) {
        throw IoError("cannot create " + errno_message(path));
    }
    std::vector<unsigned char> bytes(assignment.size() * 4);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        store_le<std::uint32_t>(bytes.data() + 4 * i, assignment[i]);
    }
    if (std::fwrite(bytes.data(), 1, bytes.size(), out.get()) != bytes.size()) {
        throw IoError("write failed: " + errno_message(path));
    }
}

std::vector<part_t> read_assignment(const std::filesystem::path& path)
{
    AssignmentReader reader(path);
    std::vector<part_t> out(reader.count());
    if (reader.read(out) != out.size()) {
        throw IoError("short read on " + path.string());
    }
    return out;
}

}  // namespace tps
