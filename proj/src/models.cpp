#include "isolab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isolab/errors.hpp"
#include "isolab/random.hpp"

namespace isolab {

namespace {

constexpr std::uint64_t kEmbeddingTag = 0x656d6265646b6579ULL;
constexpr std::size_t kPnaAggregators = 5;  // mean, sum, max, min, std
constexpr std::size_t kPnaScalers = 3;      // identity, amplification, attenuation

Dense make_dense(std::size_t in, std::size_t out, Rng& rng) {
    Dense layer;
    layer.in = in;
    layer.out = out;
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    layer.weight.resize(in * out);
    for (double& w : layer.weight) w = rng.uniform(-bound, bound);
    layer.bias.resize(out);
    for (double& b : layer.bias) b = rng.uniform(-bound, bound);
    return layer;
}

Mlp make_mlp(std::size_t in, std::size_t hidden, std::size_t out, Rng& rng) {
    Mlp mlp;
    mlp.first = make_dense(in, hidden, rng);
    mlp.second = make_dense(hidden, out, rng);
    return mlp;
}

void apply_dense(const Dense& layer, std::span<const double> x, std::span<double> y) {
    for (std::size_t o = 0; o < layer.out; ++o) {
        double acc = layer.bias[o];
        const double* w = layer.weight.data() + o * layer.in;
        for (std::size_t i = 0; i < layer.in; ++i) acc += w[i] * x[i];
        y[o] = std::tanh(acc);
    }
}

std::vector<double> apply_mlp(const Mlp& mlp, std::span<const double> x) {
    std::vector<double> hidden(mlp.first.out);
    std::vector<double> out(mlp.second.out);
    apply_dense(mlp.first, x, hidden);
    apply_dense(mlp.second, hidden, out);
    return out;
}

// Row-wise MLP over an n x in matrix.
std::vector<double> apply_rows(const Mlp& mlp, const std::vector<double>& x, std::size_t n) {
    const std::size_t in = mlp.first.in;
    const std::size_t out = mlp.second.out;
    std::vector<double> y(n * out);
    for (std::size_t v = 0; v < n; ++v) {
        auto row = apply_mlp(mlp, std::span<const double>(x).subspan(v * in, in));
        std::copy(row.begin(), row.end(), y.begin() + static_cast<std::ptrdiff_t>(v * out));
    }
    return y;
}

std::vector<double> gin_layer(const Mlp& mlp, double eps, const Graph& g,
                              const std::vector<double>& h, std::size_t dim) {
    const std::size_t n = g.node_count();
    std::vector<double> combined(n * dim);
    std::vector<double> neighbor_sum(dim);
    for (NodeId v = 0; v < n; ++v) {
        std::fill(neighbor_sum.begin(), neighbor_sum.end(), 0.0);
        for (NodeId u : g.neighbors(v)) {
            for (std::size_t c = 0; c < dim; ++c) neighbor_sum[c] += h[u * dim + c];
        }
        for (std::size_t c = 0; c < dim; ++c) {
            combined[v * dim + c] = (1.0 + eps) * h[v * dim + c] + neighbor_sum[c];
        }
    }
    return apply_rows(mlp, combined, n);
}

std::vector<double> pna_layer(const Mlp& mlp, const Graph& g, const std::vector<double>& h,
                              std::size_t dim, double delta) {
    const std::size_t n = g.node_count();
    const std::size_t block = kPnaAggregators * dim;
    const std::size_t width = dim + kPnaScalers * block;
    std::vector<double> combined(n * width, 0.0);
    std::vector<double> agg(block);
    for (NodeId v = 0; v < n; ++v) {
        double* row = combined.data() + v * width;
        std::copy_n(h.begin() + static_cast<std::ptrdiff_t>(v * dim), dim, row);
        const auto nbrs = g.neighbors(v);
        if (nbrs.empty()) continue;  // zero aggregates

        const double deg = static_cast<double>(nbrs.size());
        for (std::size_t c = 0; c < dim; ++c) {
            double sum = 0.0;
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (NodeId u : nbrs) {
                const double x = h[u * dim + c];
                sum += x;
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            const double mean = sum / deg;
            double var = 0.0;
            for (NodeId u : nbrs) {
                const double dx = h[u * dim + c] - mean;
                var += dx * dx;
            }
            agg[c] = mean;
            agg[dim + c] = sum;
            agg[2 * dim + c] = hi;
            agg[3 * dim + c] = lo;
            agg[4 * dim + c] = std::sqrt(var / deg);
        }
        const double log_deg = std::log1p(deg);
        const double scalers[kPnaScalers] = {1.0, log_deg / delta, delta / log_deg};
        for (std::size_t s = 0; s < kPnaScalers; ++s) {
            for (std::size_t c = 0; c < block; ++c) row[dim + s * block + c] = agg[c] * scalers[s];
        }
    }
    return apply_rows(mlp, combined, n);
}

void check_input(const ModelParams& model, const Graph& g) {
    if (g.node_count() == 0) throw ContractError("forward pass requires at least one node");
    if (g.feature_width() != model.input_dim) {
        throw ContractError("model expects " + std::to_string(model.input_dim) +
                            " input features, graph has " + std::to_string(g.feature_width()));
    }
}

}  // namespace

std::string_view arch_token(Arch arch) {
    switch (arch) {
        case Arch::gin: return "gin";
        case Arch::pna: return "pna";
        case Arch::ds: return "ds";
    }
    return "?";
}

ModelParams init_model(Arch arch, std::size_t input_dim, std::uint64_t seed) {
    if (input_dim == 0) throw ContractError("model input_dim must be >= 1");
    ModelParams m;
    m.arch = arch;
    m.input_dim = input_dim;
    m.seed = seed;
    Rng rng(seed);
    const std::size_t hid = m.hidden_dim;
    switch (arch) {
        case Arch::gin:
            for (std::size_t l = 0; l < m.layers; ++l) {
                m.epsilon.push_back(rng.uniform(0.0, 0.1));
                m.mlps.push_back(make_mlp(l == 0 ? input_dim : hid, hid, hid, rng));
            }
            break;
        case Arch::pna:
            for (std::size_t l = 0; l < m.layers; ++l) {
                const std::size_t in = l == 0 ? input_dim : hid;
                m.mlps.push_back(make_mlp(in + kPnaScalers * kPnaAggregators * in, hid, hid, rng));
            }
            break;
        case Arch::ds:
            m.mlps.push_back(make_mlp(input_dim, hid, hid, rng));
            m.mlps.push_back(make_mlp(hid, hid, m.output_dim, rng));
            break;
    }
    return m;
}

std::vector<double> node_states(const ModelParams& model, const Graph& g) {
    check_input(model, g);
    const std::size_t n = g.node_count();
    std::vector<double> h(g.features().begin(), g.features().end());
    std::size_t dim = model.input_dim;

    switch (model.arch) {
        case Arch::gin:
            for (std::size_t l = 0; l < model.layers; ++l) {
                h = gin_layer(model.mlps[l], model.epsilon[l], g, h, dim);
                dim = model.hidden_dim;
            }
            break;
        case Arch::pna: {
            double delta = 0.0;
            for (NodeId v = 0; v < n; ++v) delta += std::log1p(static_cast<double>(g.degree(v)));
            delta /= static_cast<double>(n);
            for (std::size_t l = 0; l < model.layers; ++l) {
                h = pna_layer(model.mlps[l], g, h, dim, delta);
                dim = model.hidden_dim;
            }
            break;
        }
        case Arch::ds:
            h = apply_rows(model.mlps[0], h, n);
            break;
    }
    return h;
}

Embedding forward(const ModelParams& model, const Graph& g) {
    const auto h = node_states(model, g);
    const std::size_t dim = model.hidden_dim;
    std::vector<double> pooled(dim, 0.0);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        for (std::size_t c = 0; c < dim; ++c) pooled[c] += h[v * dim + c];
    }
    if (model.arch == Arch::ds) return apply_mlp(model.mlps[1], pooled);
    return pooled;
}

ColorKey embedding_key(std::span<const double> embedding, double eps) {
    if (!(eps > 0.0)) throw ContractError("embedding key eps must be positive");
    Hasher h(kEmbeddingTag);
    h.add(std::uint64_t{embedding.size()});
    for (double x : embedding) {
        if (!std::isfinite(x)) throw ContractError("non-finite embedding coordinate");
        h.add_signed(static_cast<std::int64_t>(std::llround(x / eps)));
    }
    return h.finish();
}

}  // namespace isolab
