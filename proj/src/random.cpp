#include "isolab/random.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace isolab {

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the low sliver that would bias the modulo.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t x = next();
        if (x >= threshold) return x % bound;
    }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
    std::vector<NodeId> mapping(n);
    std::iota(mapping.begin(), mapping.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(mapping[i - 1], mapping[j]);
    }
    return Permutation(std::move(mapping));
}

}  // namespace isolab
