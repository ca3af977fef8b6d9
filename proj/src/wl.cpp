#include "isolab/wl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

// Domain tags keep node colors, tuple colors and digests in separate hash spaces.
constexpr std::uint64_t kFeatureTag = 0x6665617475726531ULL;
constexpr std::uint64_t kRefineTag = 0x776c317265666e65ULL;
constexpr std::uint64_t kAtomicTag = 0x776c6b61746f6d69ULL;
constexpr std::uint64_t kTupleRefineTag = 0x776c6b7265666e65ULL;
constexpr std::uint64_t kDigestTag = 0x776c646967657374ULL;

std::size_t count_classes(std::vector<ColorKey> colors) {
    std::sort(colors.begin(), colors.end());
    return static_cast<std::size_t>(std::unique(colors.begin(), colors.end()) - colors.begin());
}

WLSignature finish_signature(unsigned k, double eps, std::size_t rounds,
                             std::vector<ColorKey> colors) {
    WLSignature sig;
    sig.k = k;
    sig.eps = eps;
    sig.rounds = rounds;
    sig.classes = count_classes(colors);
    std::sort(colors.begin(), colors.end());
    sig.digest = Hasher(kDigestTag).add(std::uint64_t{k}).add(colors).finish();
    sig.histogram = std::move(colors);
    return sig;
}

}  // namespace

QuantizedFeatures quantize_features(const Graph& g, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ContractError("quantization eps must be positive");
    QuantizedFeatures q;
    q.rows = g.node_count();
    q.width = g.feature_width();
    q.eps = eps;
    q.values.reserve(g.features().size());
    for (double x : g.features()) {
        if (!std::isfinite(x)) throw ContractError("non-finite feature value");
        const double scaled = x / eps;
        if (std::fabs(scaled) >= 9.0e18) {
            throw ContractError("feature value " + std::to_string(x) + " overflows the quantization grid");
        }
        q.values.push_back(static_cast<std::int64_t>(std::llround(scaled)));
    }
    return q;
}

std::vector<ColorKey> feature_colors(const Graph& g, double eps) {
    const auto q = quantize_features(g, eps);
    std::vector<ColorKey> colors(q.rows);
    for (std::size_t v = 0; v < q.rows; ++v) {
        Hasher h(kFeatureTag);
        h.add(std::uint64_t{q.width});
        for (auto x : q.row(v)) h.add_signed(x);
        colors[v] = h.finish();
    }
    return colors;
}

WLSignature wl1_signature(const Graph& g, double eps) {
    const std::size_t n = g.node_count();
    auto colors = feature_colors(g, eps);
    std::size_t classes = count_classes(colors);
    std::size_t rounds = 0;

    std::vector<ColorKey> next(n);
    std::vector<ColorKey> scratch;
    while (n > 0) {
        for (NodeId v = 0; v < n; ++v) {
            scratch.clear();
            for (NodeId u : g.neighbors(v)) scratch.push_back(colors[u]);
            std::sort(scratch.begin(), scratch.end());
            next[v] = Hasher(kRefineTag).add(colors[v]).add(scratch).finish();
        }
        ++rounds;
        colors.swap(next);
        const std::size_t refined = count_classes(colors);
        if (refined == classes) break;
        classes = refined;
    }
    return finish_signature(1, eps, rounds, std::move(colors));
}

WLSignature wlk_signature(const Graph& g, unsigned k, const WLkOptions& options) {
    if (k < 2 || k > 3) throw ContractError("k-WL supports k = 2 or 3, got " + std::to_string(k));
    const std::size_t n = g.node_count();
    if (n == 0) throw ContractError("k-WL requires at least one node");

    // n^k tuples, each visiting k * n i-neighbors per round.
    const long double work = std::pow(static_cast<long double>(n), k + 1) * k;
    if (work > static_cast<long double>(options.budget)) {
        throw ResourceError(std::to_string(k) + "-WL on " + std::to_string(n) + " nodes requires " +
                            std::to_string(static_cast<unsigned long long>(work)) +
                            " operations per round, budget is " + std::to_string(options.budget));
    }

    std::size_t tuples = 1;
    for (unsigned i = 0; i < k; ++i) tuples *= n;
    // stride[i] = n^(k-1-i): position 0 is the most significant digit.
    std::vector<std::size_t> stride(k, 1);
    for (unsigned i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * n;

    const auto node_colors = feature_colors(g, options.eps);
    std::vector<ColorKey> colors(tuples);
    std::vector<NodeId> entry(k);
    for (std::size_t t = 0; t < tuples; ++t) {
        for (unsigned i = 0; i < k; ++i) entry[i] = static_cast<NodeId>((t / stride[i]) % n);
        Hasher h(kAtomicTag);
        h.add(std::uint64_t{k});
        std::uint64_t equal = 0;
        std::uint64_t adjacent = 0;
        unsigned bit = 0;
        for (unsigned a = 0; a < k; ++a) {
            for (unsigned b = a + 1; b < k; ++b, ++bit) {
                if (entry[a] == entry[b]) equal |= std::uint64_t{1} << bit;
                if (g.has_edge(entry[a], entry[b])) adjacent |= std::uint64_t{1} << bit;
            }
        }
        h.add(equal).add(adjacent);
        for (unsigned i = 0; i < k; ++i) h.add(node_colors[entry[i]]);
        colors[t] = h.finish();
    }

    std::size_t classes = count_classes(colors);
    std::size_t rounds = 0;
    std::vector<ColorKey> next(tuples);
    std::vector<ColorKey> scratch(n);
    while (true) {
        for (std::size_t t = 0; t < tuples; ++t) {
            Hasher h(kTupleRefineTag);
            h.add(colors[t]);
            for (unsigned i = 0; i < k; ++i) {
                const std::size_t digit = (t / stride[i]) % n;
                const std::size_t base = t - digit * stride[i];
                for (std::size_t u = 0; u < n; ++u) scratch[u] = colors[base + u * stride[i]];
                std::sort(scratch.begin(), scratch.end());
                h.add(scratch);
            }
            next[t] = h.finish();
        }
        ++rounds;
        colors.swap(next);
        const std::size_t refined = count_classes(colors);
        if (refined == classes) break;
        classes = refined;
    }
    return finish_signature(k, options.eps, rounds, std::move(colors));
}

bool distinguishes(const WLSignature& a, const WLSignature& b) {
    if (a.k != b.k) {
        throw ContractError("cannot compare " + std::to_string(a.k) + "-WL with " +
                            std::to_string(b.k) + "-WL signatures");
    }
    if (a.eps != b.eps) throw ContractError("signatures use different quantization eps");
    return a.digest != b.digest;
}

}  // namespace isolab
