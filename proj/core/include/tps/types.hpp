#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tps {

using vid_t = std::uint32_t;   // vertex id, as stored on disk
using part_t = std::uint32_t;  // partition id
using cid_t = std::uint32_t;   // cluster id
using eid_t = std::uint64_t;   // edge index within the stream
using degree_t = std::uint64_t;
using volume_t = std::uint64_t;

inline constexpr cid_t kUnassignedCluster = std::numeric_limits<cid_t>::max();
inline constexpr part_t kNoPartition = std::numeric_limits<part_t>::max();

struct Edge {
    vid_t first = 0;
    vid_t second = 0;

    bool is_self_loop() const { return first == second; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

static_assert(sizeof(Edge) == 8, "on-disk edge record is two 32-bit ids");

// Error hierarchy. Every error the library raises derives from tps::Error so
// front ends can surface the message verbatim.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class FormatError : public Error {
  public:
    using Error::Error;
};

class IdRangeError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class CapacityError : public Error {
  public:
    using Error::Error;
};

}  // namespace tps
