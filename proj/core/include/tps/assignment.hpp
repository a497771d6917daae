#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "tps/types.hpp"

namespace tps {

// Ordered consumer of (edge index, partition) records. Partitioners emit one
// record per edge; within a pass records arrive in stream order.
class AssignmentSink {
  public:
    virtual ~AssignmentSink() = default;

    virtual void begin_pass() {}
    virtual void record(eid_t edge_index, part_t partition) = 0;
    virtual void end_pass() {}
};

// Discards records.
class NullSink final : public AssignmentSink {
  public:
    void record(eid_t, part_t) override {}
};

// Keeps every record in memory, per pass. Only meant for tests and small graphs.
class MemorySink final : public AssignmentSink {
  public:
    struct Record {
        eid_t edge_index;
        part_t partition;
    };

    void begin_pass() override { passes_.emplace_back(); }
    void record(eid_t edge_index, part_t partition) override;

    const std::vector<std::vector<Record>>& passes() const { return passes_; }

    // Per-edge partition ids in stream order; kNoPartition for edges never
    // assigned. Throws Error if an edge was assigned twice.
    std::vector<part_t> merged(eid_t edge_count) const;

  private:
    std::vector<std::vector<Record>> passes_;
};

// Writes each pass to its own run file (12-byte records: u64 index, u32
// partition, little-endian) in a scratch directory, then merges the runs by
// edge index into the final assignment file. Memory use is a few I/O buffers,
// independent of |E|.
class AssignmentFileWriter final : public AssignmentSink {
  public:
    // Scratch files go to `scratch_dir`, or to scratch_directory() if empty.
    explicit AssignmentFileWriter(std::filesystem::path scratch_dir = {});
    ~AssignmentFileWriter() override;

    AssignmentFileWriter(const AssignmentFileWriter&) = delete;
    AssignmentFileWriter& operator=(const AssignmentFileWriter&) = delete;

    void begin_pass() override;
    void record(eid_t edge_index, part_t partition) override;
    void end_pass() override;

    // Merges all runs into `out` (one little-endian u32 per edge). Requires
    // exactly one record for each index in [0, edge_count).
    void finish(const std::filesystem::path& out, eid_t edge_count);

    std::size_t run_count() const { return runs_.size(); }

  private:
    struct FileCloser {
        void operator()(std::FILE* f) const { std::fclose(f); }
    };

    void flush_buffer();

    std::filesystem::path scratch_dir_;
    std::vector<std::filesystem::path> runs_;
    std::unique_ptr<std::FILE, FileCloser> current_;
    std::vector<unsigned char> buffer_;
};

// TPS_TMPDIR if set, otherwise the system temp directory.
std::filesystem::path scratch_directory();

// Reads an assignment file (one little-endian u32 per edge).
class AssignmentReader {
  public:
    explicit AssignmentReader(const std::filesystem::path& path);

    eid_t count() const { return count_; }
    // Fills `out` with up to out.size() ids; returns how many were read.
    std::size_t read(std::span<part_t> out);

  private:
    struct FileCloser {
        void operator()(std::FILE* f) const { std::fclose(f); }
    };
    std::filesystem::path path_;
    std::unique_ptr<std::FILE, FileCloser> file_;
    eid_t count_ = 0;
};

void write_assignment(const std::filesystem::path& path, std::span<const part_t> assignment);
std::vector<part_t> read_assignment(const std::filesystem::path& path);

}  // namespace tps
