#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isolab/graph.hpp"
#include "isolab/hash.hpp"

namespace isolab {

inline constexpr double kDefaultQuantEps = 1e-6;

/// Features rounded to an integer grid: round(x / eps), half away from zero.
struct QuantizedFeatures {
    std::size_t rows = 0;
    std::size_t width = 0;
    double eps = kDefaultQuantEps;
    std::vector<std::int64_t> values;  // row-major

    std::span<const std::int64_t> row(std::size_t v) const {
        return std::span<const std::int64_t>(values).subspan(v * width, width);
    }
    friend bool operator==(const QuantizedFeatures&, const QuantizedFeatures&) = default;
};

/// Throws ContractError for eps <= 0 or values whose grid index overflows int64.
QuantizedFeatures quantize_features(const Graph& g, double eps = kDefaultQuantEps);

/// Per-node hash of the quantized feature row; the 1-WL round-0 color.
std::vector<ColorKey> feature_colors(const Graph& g, double eps = kDefaultQuantEps);

struct WLSignature {
    unsigned k = 1;              // 1 for color refinement, 2 or 3 for oblivious k-WL
    double eps = kDefaultQuantEps;
    std::size_t rounds = 0;      // refinement rounds until the partition stopped changing
    std::size_t classes = 0;     // number of distinct final colors
    std::vector<ColorKey> histogram;  // sorted final colors, one per node / tuple
    ColorKey digest;
};

/// 1-WL: h_v <- hash(h_v, sorted multiset of neighbor colors) until the node
/// partition is stable.
WLSignature wl1_signature(const Graph& g, double eps = kDefaultQuantEps);

struct WLkOptions {
    double eps = kDefaultQuantEps;
    /// Maximum tuple-neighbor visits per round (n^k * k * n).
    std::uint64_t budget = 20'000'000;
};

/// Oblivious k-WL over ordered k-tuples (k in {2, 3}). The round-0 color of a
/// tuple is its atomic type: equality pattern, adjacency pattern and the
/// feature colors of its entries. Throws ResourceError over budget and
/// ContractError for n = 0 or unsupported k.
WLSignature wlk_signature(const Graph& g, unsigned k, const WLkOptions& options = {});

/// True iff the two signatures' digests differ. Throws ContractError when the
/// signatures come from different variants or quantization grids.
bool distinguishes(const WLSignature& a, const WLSignature& b);

}  // namespace isolab
