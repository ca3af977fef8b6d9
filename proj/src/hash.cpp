#include "isolab/hash.hpp"

#include <bit>

namespace isolab {

namespace {

constexpr std::uint64_t kC1 = 0x87c37b91114253d5ULL;
constexpr std::uint64_t kC2 = 0x4cf5ad432745937fULL;

constexpr std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

}  // namespace

std::string ColorKey::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        out[15 - i] = digits[(hi >> (4 * i)) & 0xF];
        out[31 - i] = digits[(lo >> (4 * i)) & 0xF];
    }
    return out;
}

Hasher::Hasher(std::uint64_t domain)
    : h1_(fmix64(domain ^ 0x9e3779b97f4a7c15ULL)), h2_(fmix64(domain + 0x632be59bd9b4e019ULL)) {}

Hasher& Hasher::add(std::uint64_t word) {
    std::uint64_t k1 = word * kC1;
    k1 = std::rotl(k1, 31);
    k1 *= kC2;
    h1_ ^= k1;
    h1_ = std::rotl(h1_, 27);
    h1_ += h2_;
    h1_ = h1_ * 5 + 0x52dce729;

    std::uint64_t k2 = word * kC2;
    k2 = std::rotl(k2, 33);
    k2 *= kC1;
    h2_ ^= k2;
    h2_ = std::rotl(h2_, 31);
    h2_ += h1_;
    h2_ = h2_ * 5 + 0x38495ab5;

    ++length_;
    return *this;
}

Hasher& Hasher::add(std::span<const ColorKey> keys) {
    add(static_cast<std::uint64_t>(keys.size()));
    for (const auto& k : keys) add(k);
    return *this;
}

ColorKey Hasher::finish() const {
    std::uint64_t h1 = h1_ ^ length_;
    std::uint64_t h2 = h2_ ^ length_;
    h1 += h2;
    h2 += h1;
    h1 = fmix64(h1);
    h2 = fmix64(h2);
    h1 += h2;
    h2 += h1;
    return {h1, h2};
}

}  // namespace isolab
