#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sponge {

/// A point lies outside the family's domain (e.g. hyperbolic h <= 0).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A join was requested for a set that is not right-bounded.
struct join_unavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pair meet was requested for a pair without a left bound.
struct no_left_bound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Blockwise join/meet failed because one component has no extremum.
struct component_unbounded : std::runtime_error {
    std::size_t block;
    explicit component_unbounded(std::size_t blk)
        : std::runtime_error("component " + std::to_string(blk) + " is unbounded"),
          block(blk) {}
};

/// descent_join was given no usable seeds.
struct no_seeds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Oracle grid contains no bound although the family guarantees one.
struct grid_too_coarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap before reaching tolerance.
struct non_convergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sign of an optimum is within the numerical guard band, so boundedness
/// cannot be decided.
struct boundary_ambiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sponge
