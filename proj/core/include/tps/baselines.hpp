#pragma once

#include <cstdint>

#include "tps/assignment.hpp"
#include "tps/edge_stream.hpp"
#include "tps/metrics.hpp"
#include "tps/scoring.hpp"

namespace tps {

// Single-pass HDRF over all k partitions after a degree pass. No hard cap:
// balance comes only from C_BAL, and the report flags partitions above
// ceil(alpha |E| / k).
RunReport run_hdrf(const EdgeStream& stream, std::uint32_t k, double alpha, const HdrfParams& params,
                   AssignmentSink& sink);

// Stateless degree-based hashing after a degree pass.
RunReport run_dbh(const EdgeStream& stream, std::uint32_t k, double alpha, AssignmentSink& sink);

}  // namespace tps
