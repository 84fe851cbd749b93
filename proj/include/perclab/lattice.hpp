#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace perc {

struct PercError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotACircuit : PercError {
    using PercError::PercError;
};

enum class LatticeKind : uint8_t { HexSite = 0, Z2Bond = 1 };

// One percolating unit. For HexSite, (u,v) are axial coordinates of the
// hexagon: the cell centre sits at u*e1 + v*(e1/2 + sqrt(3)/2*e2), so the
// v = 0 row is exactly the bi-infinite path of hexagons meeting the x-axis.
// For Z2Bond, (u,v) are doubled midpoint coordinates: the bond between
// vertices (x,y) and (x+1,y) is (2x+1, 2y); between (x,y) and (x,y+1) it is
// (2x, 2y+1). u+v is always odd, which canonicalizes the endpoint order.
struct Cell {
    int32_t u = 0;
    int32_t v = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct CellHash {
    size_t operator()(const Cell& c) const {
        uint64_t k = (static_cast<uint64_t>(static_cast<uint32_t>(c.u)) << 32) |
                     static_cast<uint32_t>(c.v);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<size_t>(k);
    }
};

inline Cell origin_cell(LatticeKind kind) {
    return kind == LatticeKind::HexSite ? Cell{0, 0} : Cell{1, 0};
}

// Fixed deterministic neighbour order (6 for both lattices).
std::array<Cell, 6> neighbors(LatticeKind kind, const Cell& c);

// Graph distance between hex cells, closed form on axial coordinates.
inline int hex_distance(const Cell& a, const Cell& b) {
    int dq = a.u - b.u, dr = a.v - b.v;
    int s = std::abs(dq) + std::abs(dr) + std::abs(dq + dr);
    return s / 2;
}

bool is_x_axis_cell(LatticeKind kind, const Cell& c);

enum class RegionKind : uint8_t { Ball = 0, Annulus = 1, Explicit = 2 };

struct RegionSpec {
    RegionKind kind = RegionKind::Ball;
    int r1 = 0; // annulus inner radius (ball: unused)
    int r2 = 0; // ball radius / annulus outer radius
    std::vector<Cell> cells; // explicit only

    static RegionSpec ball(int R) {
        if (R < 0) throw PercError("ball radius must be >= 0");
        return {RegionKind::Ball, 0, R, {}};
    }
    static RegionSpec annulus(int R1, int R2) {
        if (!(0 <= R1 && R1 < R2)) throw PercError("annulus requires 0 <= R1 < R2");
        return {RegionKind::Annulus, R1, R2, {}};
    }
    static RegionSpec explicit_cells(std::vector<Cell> cs) {
        return {RegionKind::Explicit, 0, 0, std::move(cs)};
    }
};

// Materialized region: canonical row-major cell order (v, then u), constant
// time membership, distances from the origin cell, and a flat adjacency table
// restricted to the region. Immutable after construction; share freely.
class RegionIndex {
public:
    RegionIndex(LatticeKind kind, const RegionSpec& spec);

    LatticeKind kind() const { return kind_; }
    const RegionSpec& spec() const { return spec_; }
    int size() const { return static_cast<int>(cells_.size()); }
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(int i) const { return cells_[static_cast<size_t>(i)]; }

    int index_of(const Cell& c) const {
        auto it = index_.find(c);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const Cell& c) const { return index_.contains(c); }

    // graph distance from the distinguished origin cell (which need not be in
    // the region itself, e.g. for annuli)
    int dist(int i) const { return dist_[static_cast<size_t>(i)]; }

    // neighbour indices within the region; -1 marks a neighbour outside it
    const int32_t* nbr(int i) const { return &adj_[static_cast<size_t>(i) * 6]; }

    // indices of cells at graph distance exactly d from the origin
    const std::vector<int32_t>& sphere(int d) const;

    int origin_index() const { return origin_index_; } // -1 if outside region
    int max_dist() const { return max_dist_; }

private:
    LatticeKind kind_;
    RegionSpec spec_;
    std::vector<Cell> cells_;
    std::unordered_map<Cell, int32_t, CellHash> index_;
    std::vector<int32_t> dist_;
    std::vector<int32_t> adj_;
    std::vector<std::vector<int32_t>> spheres_;
    int origin_index_ = -1;
    int max_dist_ = 0;
};

using RegionPtr = std::shared_ptr<const RegionIndex>;

RegionPtr make_region(LatticeKind kind, const RegionSpec& spec);
RegionPtr make_ball(LatticeKind kind, int R);

// Cells outside A at graph distance exactly 1 from A.
std::vector<Cell> outer_boundary(LatticeKind kind, const std::vector<Cell>& a);

// Self-avoiding closed path of cells whose complement splits in exactly two
// components; Int is the finite one.
struct Circuit {
    std::vector<Cell> path;
    std::unordered_set<Cell, CellHash> interior;

    bool in_interior(const Cell& c) const { return interior.contains(c); }
    bool on_path(const Cell& c) const {
        for (const auto& p : path)
            if (p == c) return true;
        return false;
    }
};

// Throws NotACircuit on self-intersection, adjacency breaks, a lattice vertex
// with all three adjacent hexagons on the path, or wrong complement topology.
Circuit validate_circuit(LatticeKind kind, const std::vector<Cell>& path);

// The full ring {d(0,c) = R} on the hex lattice, ordered as a circuit.
std::vector<Cell> hex_ring(int R);

} // namespace perc
