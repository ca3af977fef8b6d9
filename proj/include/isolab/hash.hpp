#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace isolab {

/// 128-bit color / digest value.
struct ColorKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend auto operator<=>(const ColorKey&, const ColorKey&) = default;

    /// 32 lowercase hex characters, high word first.
    std::string hex() const;
};

/// Streaming 128-bit hash over 64-bit words (MurmurHash3 x64 mixing with
/// fixed constants). Output depends only on the word sequence and the domain
/// tag, never on addresses or process state.
class Hasher {
public:
    explicit Hasher(std::uint64_t domain);

    Hasher& add(std::uint64_t word);
    Hasher& add_signed(std::int64_t word) { return add(static_cast<std::uint64_t>(word)); }
    Hasher& add(const ColorKey& key) { return add(key.hi).add(key.lo); }
    Hasher& add(std::span<const ColorKey> keys);

    ColorKey finish() const;

private:
    std::uint64_t h1_;
    std::uint64_t h2_;
    std::uint64_t length_ = 0;
};

struct ColorKeyHash {
    std::size_t operator()(const ColorKey& k) const noexcept {
        return static_cast<std::size_t>(k.lo ^ (k.hi * 0x9e3779b97f4a7c15ULL));
    }
};

}  // namespace isolab
