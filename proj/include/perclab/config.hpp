#pragma once

#include "perclab/lattice.hpp"
#include "perclab/rng.hpp"

#include <cstring>
#include <string>
#include <vector>

namespace perc {

// Bit-per-cell static percolation state over a region. The cell <-> bit map
// is the region's canonical row-major order. Treat as immutable once filled;
// mutating helpers exist for construction and for the thinning map, which
// copy-and-edit.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(RegionPtr region)
        : region_(std::move(region)), bits_((static_cast<size_t>(region_->size()) + 63) / 64, 0) {}

    const RegionIndex& region() const { return *region_; }
    RegionPtr region_ptr() const { return region_; }
    int size() const { return region_->size(); }

    bool open(int i) const { return (bits_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = 1ULL << (i & 63);
        if (v) bits_[static_cast<size_t>(i) >> 6] |= m;
        else bits_[static_cast<size_t>(i) >> 6] &= ~m;
    }
    void flip(int i) { bits_[static_cast<size_t>(i) >> 6] ^= 1ULL << (i & 63); }

    void fill(bool v) {
        std::fill(bits_.begin(), bits_.end(), v ? ~0ULL : 0ULL);
        if (v) trim();
    }

    int count_open() const {
        int n = 0;
        for (uint64_t w : bits_) n += __builtin_popcountll(w);
        return n;
    }

    // key of the restriction to the given cell indices (low bit = first index)
    uint64_t window_key(const std::vector<int32_t>& idx) const {
        uint64_t k = 0;
        for (size_t j = 0; j < idx.size(); ++j)
            if (open(idx[j])) k |= 1ULL << j;
        return k;
    }

    const std::vector<uint64_t>& words() const { return bits_; }
    std::vector<uint64_t>& words() { return bits_; }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.region_->kind() == b.region_->kind() && a.region_->cells() == b.region_->cells() &&
               a.bits_ == b.bits_;
    }

private:
    void trim() {
        int rem = size() & 63;
        if (rem && !bits_.empty()) bits_.back() &= (1ULL << rem) - 1;
    }
    RegionPtr region_;
    std::vector<uint64_t> bits_;
};

// i.i.d. Bernoulli(p) cells; p = 1/2 consumes one word per 64 cells.
Configuration sample(const RegionPtr& region, double p, Rng& rng);

// Binary form: "PCFG" magic, lattice kind, region descriptor, then the
// row-major bit stream. Base64 wraps the same bytes for text manifests.
std::vector<uint8_t> serialize(const Configuration& cfg);
Configuration deserialize(const std::vector<uint8_t>& bytes);

std::string to_base64(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> from_base64(const std::string& text);

} // namespace perc
