#pragma once

// Convenience umbrella: pulls in the codec, the overlay, both query
// algorithms, the simulation harness and the scenario/report formats.

#include "skipgraph/bitstring.hpp"
#include "skipgraph/overlay.hpp"
#include "skipgraph/query.hpp"
#include "skipgraph/scenario_io.hpp"
#include "skipgraph/simharness.hpp"
#include "skipgraph/zorder.hpp"
