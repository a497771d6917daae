#pragma once

#include "tps/assignment.hpp"
#include "tps/baselines.hpp"
#include "tps/clustering.hpp"
#include "tps/degrees.hpp"
#include "tps/edge_stream.hpp"
#include "tps/generator.hpp"
#include "tps/metrics.hpp"
#include "tps/partitioning.hpp"
#include "tps/scoring.hpp"
#include "tps/sweep.hpp"
#include "tps/types.hpp"
