#pragma once

// Umbrella header for the sponge library: non-transitive join/meet structures
// on Hilbert-space models with exact and numerical solvers, axiom checkers,
// brute-force oracles, and sponge-based morphological filtering.

#include "core.hpp"
#include "epigraph.hpp"
#include "errors.hpp"
#include "groups.hpp"
#include "hyperbolic.hpp"
#include "inner_product.hpp"
#include "io.hpp"
#include "morphology.hpp"
#include "point.hpp"
#include "report.hpp"
#include "solvers.hpp"
#include "spec.hpp"
