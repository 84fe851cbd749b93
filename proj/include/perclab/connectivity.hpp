#pragma once

#include "perclab/config.hpp"

#include <span>
#include <vector>

namespace perc {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<size_t>(n)), rank_(static_cast<size_t>(n), 0) {
        for (int i = 0; i < n; ++i) parent_[static_cast<size_t>(i)] = i;
    }
    int find(int i) {
        while (parent_[static_cast<size_t>(i)] != i) {
            parent_[static_cast<size_t>(i)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(i)])];
            i = parent_[static_cast<size_t>(i)];
        }
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[static_cast<size_t>(a)] < rank_[static_cast<size_t>(b)]) std::swap(a, b);
        parent_[static_cast<size_t>(b)] = a;
        if (rank_[static_cast<size_t>(a)] == rank_[static_cast<size_t>(b)]) ++rank_[static_cast<size_t>(a)];
    }
    bool same(int a, int b) { return find(a) == find(b); }

private:
    std::vector<int32_t> parent_;
    std::vector<int8_t> rank_;
};

// A two-set connection event bound to a region: "some open path joins a
// source cell to a target cell inside the region".
struct ConnEvent {
    RegionPtr region;
    std::vector<int32_t> sources;
    std::vector<int32_t> targets;
    std::vector<uint8_t> is_source;
    std::vector<uint8_t> is_target;
};

ConnEvent make_event(RegionPtr region, std::vector<int32_t> sources, std::vector<int32_t> targets);

// {0} -> sphere(R) inside the region (which must contain B_R).
ConnEvent radial_event(RegionPtr region, int R);

// sphere(r1+1) -> sphere(r2) on an annulus region A_{r1,r2}.
ConnEvent crossing_event(RegionPtr annulus);

// Union-find over open cells; the contract for connected().
bool connected_uf(const Configuration& cfg, std::span<const int32_t> a, std::span<const int32_t> b);

// BFS fast path, identical answers (tested against the DFS oracle).
bool occurs(const ConnEvent& ev, const Configuration& cfg);

// occurs() with one cell's state overridden.
bool occurs_with(const ConnEvent& ev, const Configuration& cfg, int cell, bool state);

bool zero_to_R(const Configuration& cfg, int R);

// Exact pivotal set for the event, sorted by cell index. Articulation-based
// for a holding event, component-merge based for a failing one; must agree
// with flip-and-retest everywhere.
std::vector<int32_t> pivotal_set(const ConnEvent& ev, const Configuration& cfg);

// Flip-and-retest of a single cell.
bool cell_pivotal(const ConnEvent& ev, const Configuration& cfg, int cell);

// Cluster of the origin cell maintained across single-cell flips. Rebuilds
// only when a cluster cell closes; openings extend incrementally.
class ClusterTracker {
public:
    ClusterTracker(RegionPtr region, int target_R);

    void reset(const Configuration& cfg);
    void apply_flip(int cell, bool new_state);

    bool connected() const { return target_count_ > 0; }
    bool origin_open() const;
    int radius() const { return radius_; } // 0 when the cluster is empty
    int cluster_size() const { return static_cast<int>(members_.size()); }
    bool in_cluster(int cell) const { return in_c_[static_cast<size_t>(cell)] != 0; }
    bool open(int cell) const { return open_[static_cast<size_t>(cell)] != 0; }
    int target_R() const { return target_r_; }
    const RegionIndex& region() const { return *region_; }

    Configuration snapshot() const;

private:
    void rebuild();
    void grow_from(int cell);

    RegionPtr region_;
    int target_r_;
    std::vector<uint8_t> open_, in_c_;
    std::vector<int32_t> members_;
    std::vector<int32_t> queue_;
    int radius_ = 0;
    int target_count_ = 0;
};

} // namespace perc
