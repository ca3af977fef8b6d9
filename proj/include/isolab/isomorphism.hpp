#pragma once

#include <cstddef>
#include <optional>

#include "isolab/graph.hpp"
#include "isolab/wl.hpp"

namespace isolab {

struct IsoOptions {
    /// Ignore features entirely and compare topology only.
    bool structure_only = false;
    /// Features are compared on this quantization grid.
    double eps = kDefaultQuantEps;
    /// Larger inputs are rejected with ResourceError.
    std::size_t max_nodes = 256;
};

struct IsoVerdict {
    bool isomorphic = false;
    /// When isomorphic: apply_permutation(g, *witness) reproduces h.
    std::optional<Permutation> witness;
};

/// Exact isomorphism test by individualization and joint color refinement.
///
/// Both graphs are refined together so color ids are comparable; any class
/// whose size differs between the two graphs prunes the branch. Branching
/// picks the smallest non-singleton class, individualizes its lowest-index
/// node in g and tries each same-colored node of h in ascending index. The
/// search is exhaustive, so a negative verdict is a proof of non-isomorphism.
///
/// Throws ContractError when feature widths differ (unless structure_only).
IsoVerdict are_isomorphic(const Graph& g, const Graph& h, const IsoOptions& options = {});

}  // namespace isolab
