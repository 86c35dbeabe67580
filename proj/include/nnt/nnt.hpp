#pragma once

// Umbrella header.

#include "nnt/decomposition.hpp"
#include "nnt/error.hpp"
#include "nnt/graph.hpp"
#include "nnt/hypergraph.hpp"
#include "nnt/oracle.hpp"
#include "nnt/phase_group.hpp"
#include "nnt/report.hpp"
#include "nnt/smith.hpp"
#include "nnt/spectral.hpp"
#include "nnt/tensor.hpp"
