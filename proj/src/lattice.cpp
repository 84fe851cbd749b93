#include "perclab/lattice.hpp"

#include <algorithm>
#include <deque>

namespace perc {

namespace {

// counter-clockwise starting from +u
constexpr std::array<Cell, 6> kHexOffsets = {
    Cell{1, 0}, Cell{0, 1}, Cell{-1, 1}, Cell{-1, 0}, Cell{0, -1}, Cell{1, -1}};

bool is_bond(const Cell& c) { return ((c.u + c.v) & 1) != 0; }

} // namespace

std::array<Cell, 6> neighbors(LatticeKind kind, const Cell& c) {
    if (kind == LatticeKind::HexSite) {
        std::array<Cell, 6> out;
        for (int i = 0; i < 6; ++i) out[static_cast<size_t>(i)] = {c.u + kHexOffsets[static_cast<size_t>(i)].u, c.v + kHexOffsets[static_cast<size_t>(i)].v};
        return out;
    }
    if (!is_bond(c)) throw PercError("not a valid z2 bond cell");
    // endpoints in doubled coordinates
    Cell e1, e2;
    if ((c.u & 1) != 0) { // horizontal bond
        e1 = {c.u - 1, c.v};
        e2 = {c.u + 1, c.v};
    } else { // vertical bond
        e1 = {c.u, c.v - 1};
        e2 = {c.u, c.v + 1};
    }
    auto incident = [&](const Cell& v, const Cell& skip, std::array<Cell, 6>& out, int& n) {
        const std::array<Cell, 4> b = {Cell{v.u + 1, v.v}, Cell{v.u - 1, v.v},
                                       Cell{v.u, v.v + 1}, Cell{v.u, v.v - 1}};
        for (const auto& x : b)
            if (!(x == skip)) out[static_cast<size_t>(n++)] = x;
    };
    std::array<Cell, 6> out;
    int n = 0;
    incident(e1, c, out, n);
    incident(e2, c, out, n);
    return out;
}

bool is_x_axis_cell(LatticeKind kind, const Cell& c) {
    if (kind == LatticeKind::HexSite) return c.v == 0;
    return c.v == 0 && (c.u & 1) != 0;
}

namespace {

// distances from the origin cell for a batch of cells (BFS for bonds)
std::vector<int32_t> bond_distances(const std::vector<Cell>& cells) {
    std::unordered_map<Cell, int32_t, CellHash> dist;
    int32_t bound = 0;
    for (const auto& c : cells) bound = std::max(bound, std::abs(c.u) + std::abs(c.v));
    Cell o = origin_cell(LatticeKind::Z2Bond);
    std::deque<Cell> q{o};
    dist[o] = 0;
    while (!q.empty()) {
        Cell c = q.front();
        q.pop_front();
        int32_t d = dist[c];
        if (d >= bound + 2) continue;
        for (const auto& n : neighbors(LatticeKind::Z2Bond, c)) {
            if (dist.emplace(n, d + 1).second) q.push_back(n);
        }
    }
    std::vector<int32_t> out;
    out.reserve(cells.size());
    for (const auto& c : cells) {
        auto it = dist.find(c);
        out.push_back(it == dist.end() ? -1 : it->second);
    }
    return out;
}

std::vector<Cell> enumerate_shell(LatticeKind kind, int rmin_excl, int rmax) {
    std::vector<Cell> out;
    if (kind == LatticeKind::HexSite) {
        for (int v = -rmax; v <= rmax; ++v)
            for (int u = -rmax; u <= rmax; ++u) {
                Cell c{u, v};
                int d = hex_distance(c, {0, 0});
                if (d <= rmax && d > rmin_excl) out.push_back(c);
            }
        return out;
    }
    // bonds: BFS from the origin bond
    Cell o = origin_cell(kind);
    std::unordered_map<Cell, int32_t, CellHash> dist;
    std::deque<Cell> q{o};
    dist[o] = 0;
    while (!q.empty()) {
        Cell c = q.front();
        q.pop_front();
        int32_t d = dist[c];
        if (d > rmin_excl && d <= rmax) out.push_back(c);
        else if (d == 0 && rmin_excl < 0) out.push_back(c);
        if (d >= rmax) continue;
        for (const auto& n : neighbors(kind, c))
            if (dist.emplace(n, d + 1).second) q.push_back(n);
    }
    return out;
}

} // namespace

RegionIndex::RegionIndex(LatticeKind kind, const RegionSpec& spec) : kind_(kind), spec_(spec) {
    switch (spec.kind) {
    case RegionKind::Ball:
        cells_ = enumerate_shell(kind, -1, spec.r2);
        break;
    case RegionKind::Annulus:
        cells_ = enumerate_shell(kind, spec.r1, spec.r2);
        break;
    case RegionKind::Explicit:
        cells_ = spec.cells;
        break;
    }
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
        return a.v != b.v ? a.v < b.v : a.u < b.u;
    });
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());

    index_.reserve(cells_.size() * 2);
    for (int i = 0; i < size(); ++i) index_[cells_[static_cast<size_t>(i)]] = i;

    if (kind == LatticeKind::HexSite) {
        dist_.reserve(cells_.size());
        for (const auto& c : cells_) dist_.push_back(hex_distance(c, {0, 0}));
    } else {
        dist_ = bond_distances(cells_);
    }

    adj_.assign(cells_.size() * 6, -1);
    for (int i = 0; i < size(); ++i) {
        auto ns = neighbors(kind, cells_[static_cast<size_t>(i)]);
        for (int k = 0; k < 6; ++k) adj_[static_cast<size_t>(i) * 6 + static_cast<size_t>(k)] = index_of(ns[static_cast<size_t>(k)]);
    }

    for (int32_t d : dist_) max_dist_ = std::max(max_dist_, d);
    spheres_.assign(static_cast<size_t>(max_dist_) + 1, {});
    for (int i = 0; i < size(); ++i) {
        int32_t d = dist_[static_cast<size_t>(i)];
        if (d >= 0) spheres_[static_cast<size_t>(d)].push_back(i);
    }
    origin_index_ = index_of(origin_cell(kind));
}

const std::vector<int32_t>& RegionIndex::sphere(int d) const {
    static const std::vector<int32_t> empty;
    if (d < 0 || d > max_dist_) return empty;
    return spheres_[static_cast<size_t>(d)];
}

RegionPtr make_region(LatticeKind kind, const RegionSpec& spec) {
    return std::make_shared<RegionIndex>(kind, spec);
}

RegionPtr make_ball(LatticeKind kind, int R) { return make_region(kind, RegionSpec::ball(R)); }

std::vector<Cell> outer_boundary(LatticeKind kind, const std::vector<Cell>& a) {
    std::unordered_set<Cell, CellHash> in(a.begin(), a.end());
    std::unordered_set<Cell, CellHash> seen;
    std::vector<Cell> out;
    for (const auto& c : a)
        for (const auto& n : neighbors(kind, c))
            if (!in.contains(n) && seen.insert(n).second) out.push_back(n);
    std::sort(out.begin(), out.end(), [](const Cell& x, const Cell& y) {
        return x.v != y.v ? x.v < y.v : x.u < y.u;
    });
    return out;
}

Circuit validate_circuit(LatticeKind kind, const std::vector<Cell>& path) {
    if (kind != LatticeKind::Z2Bond && kind != LatticeKind::HexSite)
        throw PercError("unknown lattice");
    if (kind == LatticeKind::Z2Bond)
        throw NotACircuit("circuits are defined on the hex lattice");
    if (path.size() < 6) throw NotACircuit("too short");

    std::unordered_set<Cell, CellHash> cells(path.begin(), path.end());
    if (cells.size() != path.size()) throw NotACircuit("self-intersecting");

    const size_t n = path.size();
    for (size_t i = 0; i < n; ++i) {
        if (hex_distance(path[i], path[(i + 1) % n]) != 1)
            throw NotACircuit("consecutive cells not adjacent");
    }

    // No lattice vertex may have all three adjacent hexagons on the path;
    // equivalently, no mutually adjacent cell triple lies in the path.
    for (const auto& c : path) {
        for (int k = 0; k < 6; ++k) {
            Cell a{c.u + kHexOffsets[static_cast<size_t>(k)].u, c.v + kHexOffsets[static_cast<size_t>(k)].v};
            const auto& o2 = kHexOffsets[static_cast<size_t>((k + 1) % 6)];
            Cell b{c.u + o2.u, c.v + o2.v};
            if (cells.contains(a) && cells.contains(b)) throw NotACircuit("vertex with three path hexagons");
        }
    }

    // Complement must have exactly two components; find them inside a ball
    // that safely contains the path.
    int D = 0;
    for (const auto& c : path) D = std::max(D, hex_distance(c, {0, 0}));
    D += 2;
    auto ball = make_ball(LatticeKind::HexSite, D);
    std::vector<uint8_t> blocked(static_cast<size_t>(ball->size()), 0), visited(static_cast<size_t>(ball->size()), 0);
    for (const auto& c : path) blocked[static_cast<size_t>(ball->index_of(c))] = 1;

    auto flood = [&](int start) {
        std::vector<int32_t> comp{start};
        visited[static_cast<size_t>(start)] = 1;
        for (size_t h = 0; h < comp.size(); ++h) {
            const int32_t* nb = ball->nbr(comp[h]);
            for (int k = 0; k < 6; ++k) {
                int32_t j = nb[k];
                if (j >= 0 && !visited[static_cast<size_t>(j)] && !blocked[static_cast<size_t>(j)]) {
                    visited[static_cast<size_t>(j)] = 1;
                    comp.push_back(j);
                }
            }
        }
        return comp;
    };

    // all sphere(D) cells belong to the unbounded component
    int far = ball->sphere(D).front();
    flood(far);

    std::vector<int32_t> interior;
    bool found = false;
    for (int i = 0; i < ball->size(); ++i) {
        if (blocked[static_cast<size_t>(i)] || visited[static_cast<size_t>(i)]) continue;
        if (found) throw NotACircuit("complement has more than two components");
        auto comp = flood(i);
        interior = std::move(comp);
        found = true;
    }
    if (!found) throw NotACircuit("complement has no bounded component");

    Circuit out;
    out.path = path;
    for (int32_t i : interior) out.interior.insert(ball->cell(i));
    return out;
}

std::vector<Cell> hex_ring(int R) {
    if (R == 0) return {Cell{0, 0}};
    std::vector<Cell> out;
    out.reserve(static_cast<size_t>(6 * R));
    const std::array<Cell, 6> corner_steps = {Cell{-1, 1}, Cell{-1, 0}, Cell{0, -1},
                                              Cell{1, -1}, Cell{1, 0}, Cell{0, 1}};
    Cell c{R, 0};
    for (const auto& s : corner_steps)
        for (int k = 0; k < R; ++k) {
            out.push_back(c);
            c = {c.u + s.u, c.v + s.v};
        }
    return out;
}

} // namespace perc
