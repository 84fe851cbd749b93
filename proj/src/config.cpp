#include "perclab/config.hpp"

namespace perc {

Configuration sample(const RegionPtr& region, double p, Rng& rng) {
    Configuration cfg(region);
    auto& w = cfg.words();
    const int n = region->size();
    if (p == 0.5) {
        for (auto& word : w) word = rng.next_u64();
        int rem = n & 63;
        if (rem && !w.empty()) w.back() &= (1ULL << rem) - 1;
    } else {
        for (int i = 0; i < n; ++i) cfg.set(i, rng.bernoulli(p));
    }
    return cfg;
}

namespace {

void put_i32(std::vector<uint8_t>& out, int32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<uint8_t>((static_cast<uint32_t>(v) >> (8 * k)) & 0xff));
}

int32_t get_i32(const std::vector<uint8_t>& in, size_t& pos) {
    if (pos + 4 > in.size()) throw PercError("truncated configuration blob");
    uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<uint32_t>(in[pos++]) << (8 * k);
    return static_cast<int32_t>(v);
}

} // namespace

std::vector<uint8_t> serialize(const Configuration& cfg) {
    const RegionIndex& r = cfg.region();
    std::vector<uint8_t> out = {'P', 'C', 'F', 'G'};
    out.push_back(static_cast<uint8_t>(r.kind()));
    out.push_back(static_cast<uint8_t>(r.spec().kind));
    put_i32(out, r.spec().r1);
    put_i32(out, r.spec().r2);
    if (r.spec().kind == RegionKind::Explicit) {
        put_i32(out, static_cast<int32_t>(r.spec().cells.size()));
        for (const auto& c : r.spec().cells) {
            put_i32(out, c.u);
            put_i32(out, c.v);
        }
    }
    put_i32(out, r.size()); // bit count, length prefix for the stream
    for (int i = 0; i < r.size(); i += 8) {
        uint8_t b = 0;
        for (int k = 0; k < 8 && i + k < r.size(); ++k)
            if (cfg.open(i + k)) b |= static_cast<uint8_t>(1u << k);
        out.push_back(b);
    }
    return out;
}

Configuration deserialize(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 6 || bytes[0] != 'P' || bytes[1] != 'C' || bytes[2] != 'F' || bytes[3] != 'G')
        throw PercError("bad configuration magic");
    size_t pos = 4;
    auto kind = static_cast<LatticeKind>(bytes[pos++]);
    auto rkind = static_cast<RegionKind>(bytes[pos++]);
    RegionSpec spec;
    spec.kind = rkind;
    spec.r1 = get_i32(bytes, pos);
    spec.r2 = get_i32(bytes, pos);
    if (rkind == RegionKind::Explicit) {
        int32_t n = get_i32(bytes, pos);
        spec.cells.reserve(static_cast<size_t>(n));
        for (int32_t i = 0; i < n; ++i) {
            int32_t u = get_i32(bytes, pos);
            int32_t v = get_i32(bytes, pos);
            spec.cells.push_back({u, v});
        }
    }
    auto region = make_region(kind, spec);
    int32_t nbits = get_i32(bytes, pos);
    if (nbits != region->size()) throw PercError("bit count does not match region");
    Configuration cfg(region);
    for (int i = 0; i < nbits; ++i) {
        size_t byte = pos + static_cast<size_t>(i / 8);
        if (byte >= bytes.size()) throw PercError("truncated bit stream");
        cfg.set(i, (bytes[byte] >> (i & 7)) & 1);
    }
    return cfg;
}

namespace {
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string to_base64(const std::vector<uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (size_t i = 0; i < bytes.size(); i += 3) {
        uint32_t v = static_cast<uint32_t>(bytes[i]) << 16;
        int n = 1;
        if (i + 1 < bytes.size()) { v |= static_cast<uint32_t>(bytes[i + 1]) << 8; n = 2; }
        if (i + 2 < bytes.size()) { v |= bytes[i + 2]; n = 3; }
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out.push_back(n >= 2 ? kB64[(v >> 6) & 63] : '=');
        out.push_back(n >= 3 ? kB64[v & 63] : '=');
    }
    return out;
}

std::vector<uint8_t> from_base64(const std::string& text) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::vector<uint8_t> out;
    uint32_t buf = 0;
    int nbits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        int v = val(c);
        if (v < 0) throw PercError("bad base64 character");
        buf = (buf << 6) | static_cast<uint32_t>(v);
        nbits += 6;
        if (nbits >= 8) {
            nbits -= 8;
            out.push_back(static_cast<uint8_t>((buf >> nbits) & 0xff));
        }
    }
    return out;
}

} // namespace perc
