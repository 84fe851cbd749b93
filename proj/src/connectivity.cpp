#include "perclab/connectivity.hpp"

#include <algorithm>

namespace perc {

ConnEvent make_event(RegionPtr region, std::vector<int32_t> sources, std::vector<int32_t> targets) {
    ConnEvent ev;
    ev.is_source.assign(static_cast<size_t>(region->size()), 0);
    ev.is_target.assign(static_cast<size_t>(region->size()), 0);
    for (int32_t i : sources) ev.is_source[static_cast<size_t>(i)] = 1;
    for (int32_t i : targets) ev.is_target[static_cast<size_t>(i)] = 1;
    ev.region = std::move(region);
    ev.sources = std::move(sources);
    ev.targets = std::move(targets);
    return ev;
}

ConnEvent radial_event(RegionPtr region, int R) {
    if (region->origin_index() < 0) throw PercError("region does not contain the origin");
    std::vector<int32_t> src{region->origin_index()};
    std::vector<int32_t> tgt = region->sphere(R);
    if (tgt.empty() && R > 0) throw PercError("region does not reach radius R");
    return make_event(std::move(region), std::move(src), std::move(tgt));
}

ConnEvent crossing_event(RegionPtr annulus) {
    if (annulus->spec().kind != RegionKind::Annulus) throw PercError("crossing_event wants an annulus");
    int r1 = annulus->spec().r1, r2 = annulus->spec().r2;
    std::vector<int32_t> src = annulus->sphere(r1 + 1);
    std::vector<int32_t> tgt = annulus->sphere(r2);
    return make_event(std::move(annulus), std::move(src), std::move(tgt));
}

bool connected_uf(const Configuration& cfg, std::span<const int32_t> a, std::span<const int32_t> b) {
    const RegionIndex& r = cfg.region();
    UnionFind uf(r.size());
    for (int i = 0; i < r.size(); ++i) {
        if (!cfg.open(i)) continue;
        const int32_t* nb = r.nbr(i);
        for (int k = 0; k < 6; ++k)
            if (nb[k] >= 0 && nb[k] < i && cfg.open(nb[k])) uf.unite(i, nb[k]);
    }
    for (int32_t x : a) {
        if (!cfg.open(x)) continue;
        int rx = uf.find(x);
        for (int32_t y : b)
            if (cfg.open(y) && uf.find(y) == rx) return true;
    }
    return false;
}

namespace {

thread_local std::vector<int32_t> t_queue;
thread_local std::vector<uint8_t> t_seen;

bool bfs_reach(const ConnEvent& ev, const Configuration& cfg, int override_cell, int override_state) {
    const RegionIndex& r = *ev.region;
    if (r.size() != cfg.size()) throw PercError("event and configuration regions differ");
    auto open_at = [&](int i) {
        if (i == override_cell) return override_state != 0;
        return cfg.open(i);
    };
    auto& seen = t_seen;
    auto& q = t_queue;
    seen.assign(static_cast<size_t>(r.size()), 0);
    q.clear();
    for (int32_t s : ev.sources) {
        if (!open_at(s)) continue;
        if (ev.is_target[static_cast<size_t>(s)]) return true;
        seen[static_cast<size_t>(s)] = 1;
        q.push_back(s);
    }
    for (size_t h = 0; h < q.size(); ++h) {
        const int32_t* nb = r.nbr(q[h]);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j < 0 || seen[static_cast<size_t>(j)] || !open_at(j)) continue;
            if (ev.is_target[static_cast<size_t>(j)]) return true;
            seen[static_cast<size_t>(j)] = 1;
            q.push_back(j);
        }
    }
    return false;
}

} // namespace

bool occurs(const ConnEvent& ev, const Configuration& cfg) { return bfs_reach(ev, cfg, -1, 0); }

bool occurs_with(const ConnEvent& ev, const Configuration& cfg, int cell, bool state) {
    return bfs_reach(ev, cfg, cell, state ? 1 : 0);
}

bool zero_to_R(const Configuration& cfg, int R) {
    const RegionIndex& r = cfg.region();
    if (r.origin_index() < 0) throw PercError("configuration region lacks the origin");
    if (R == 0) return cfg.open(r.origin_index());
    auto& seen = t_seen;
    auto& q = t_queue;
    seen.assign(static_cast<size_t>(r.size()), 0);
    q.clear();
    int o = r.origin_index();
    if (!cfg.open(o)) return false;
    seen[static_cast<size_t>(o)] = 1;
    q.push_back(o);
    for (size_t h = 0; h < q.size(); ++h) {
        int32_t c = q[h];
        if (r.dist(c) == R) return true;
        if (r.dist(c) > R) continue; // stay inside B_R
        const int32_t* nb = r.nbr(c);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j < 0 || seen[static_cast<size_t>(j)] || !cfg.open(j) || r.dist(j) > R) continue;
            seen[static_cast<size_t>(j)] = 1;
            q.push_back(j);
        }
    }
    return false;
}

bool cell_pivotal(const ConnEvent& ev, const Configuration& cfg, int cell) {
    return occurs_with(ev, cfg, cell, true) != occurs_with(ev, cfg, cell, false);
}

namespace {

// Vertices (other than s, t) separating s from t, via one rooted DFS with
// low-links; graph is adjacency lists, s is the root.
std::vector<int32_t> st_cut_vertices(const std::vector<std::vector<int32_t>>& adj, int s, int t) {
    const int n = static_cast<int>(adj.size());
    std::vector<int32_t> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0), parent(static_cast<size_t>(n), -1);
    std::vector<int32_t> tin(static_cast<size_t>(n), 0), tout(static_cast<size_t>(n), 0);
    std::vector<size_t> it(static_cast<size_t>(n), 0);
    std::vector<int32_t> stack;
    int timer = 0;

    stack.push_back(s);
    disc[static_cast<size_t>(s)] = low[static_cast<size_t>(s)] = timer++;
    tin[static_cast<size_t>(s)] = disc[static_cast<size_t>(s)];
    while (!stack.empty()) {
        int v = stack.back();
        if (it[static_cast<size_t>(v)] < adj[static_cast<size_t>(v)].size()) {
            int u = adj[static_cast<size_t>(v)][it[static_cast<size_t>(v)]++];
            if (disc[static_cast<size_t>(u)] < 0) {
                parent[static_cast<size_t>(u)] = v;
                disc[static_cast<size_t>(u)] = low[static_cast<size_t>(u)] = timer++;
                tin[static_cast<size_t>(u)] = disc[static_cast<size_t>(u)];
                stack.push_back(u);
            } else if (u != parent[static_cast<size_t>(v)]) {
                low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], disc[static_cast<size_t>(u)]);
            }
        } else {
            stack.pop_back();
            tout[static_cast<size_t>(v)] = timer;
            if (parent[static_cast<size_t>(v)] >= 0) {
                int p = parent[static_cast<size_t>(v)];
                low[static_cast<size_t>(p)] = std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
            }
        }
    }

    std::vector<int32_t> cuts;
    if (disc[static_cast<size_t>(t)] < 0) return cuts; // t unreachable; callers guard against this
    for (int v = 0; v < n; ++v) {
        if (v == s || v == t || disc[static_cast<size_t>(v)] < 0) continue;
        // v separates t from the root iff some child subtree contains t and
        // has no back-edge above v
        for (int32_t u : adj[static_cast<size_t>(v)]) {
            if (parent[static_cast<size_t>(u)] != v) continue;
            if (low[static_cast<size_t>(u)] >= disc[static_cast<size_t>(v)] && tin[static_cast<size_t>(u)] <= tin[static_cast<size_t>(t)] &&
                tin[static_cast<size_t>(t)] < tout[static_cast<size_t>(u)]) {
                cuts.push_back(v);
                break;
            }
        }
    }
    return cuts;
}

} // namespace

std::vector<int32_t> pivotal_set(const ConnEvent& ev, const Configuration& cfg) {
    const RegionIndex& r = *ev.region;
    const int n = r.size();
    thread_local std::vector<int32_t> comp;
    thread_local std::vector<int32_t> q;
    comp.assign(static_cast<size_t>(n), -1);

    // label open components, note which have open sources / targets
    std::vector<uint8_t> comp_src, comp_tgt;
    int ncomp = 0;
    for (int i = 0; i < n; ++i) {
        if (!cfg.open(i) || comp[static_cast<size_t>(i)] >= 0) continue;
        int id = ncomp++;
        comp_src.push_back(0);
        comp_tgt.push_back(0);
        q.clear();
        q.push_back(i);
        comp[static_cast<size_t>(i)] = id;
        for (size_t h = 0; h < q.size(); ++h) {
            int c = q[h];
            if (ev.is_source[static_cast<size_t>(c)]) comp_src[static_cast<size_t>(id)] = 1;
            if (ev.is_target[static_cast<size_t>(c)]) comp_tgt[static_cast<size_t>(id)] = 1;
            const int32_t* nb = r.nbr(c);
            for (int k = 0; k < 6; ++k) {
                int32_t j = nb[k];
                if (j >= 0 && cfg.open(j) && comp[static_cast<size_t>(j)] < 0) {
                    comp[static_cast<size_t>(j)] = id;
                    q.push_back(j);
                }
            }
        }
    }

    int connecting = -1, nconnecting = 0;
    for (int id = 0; id < ncomp; ++id)
        if (comp_src[static_cast<size_t>(id)] && comp_tgt[static_cast<size_t>(id)]) {
            connecting = id;
            ++nconnecting;
        }

    std::vector<int32_t> piv;
    if (nconnecting >= 2) return piv; // no single flip can sever both

    if (nconnecting == 1) {
        // articulation analysis on the connecting component plus virtual s,t
        std::vector<int32_t> cells;
        std::vector<int32_t> local(static_cast<size_t>(n), -1);
        for (int i = 0; i < n; ++i)
            if (cfg.open(i) && comp[static_cast<size_t>(i)] == connecting) {
                local[static_cast<size_t>(i)] = static_cast<int32_t>(cells.size());
                cells.push_back(i);
            }
        const int m = static_cast<int>(cells.size());
        std::vector<std::vector<int32_t>> adj(static_cast<size_t>(m) + 2);
        const int s = m, t = m + 1;
        for (int li = 0; li < m; ++li) {
            int i = cells[static_cast<size_t>(li)];
            const int32_t* nb = r.nbr(i);
            for (int k = 0; k < 6; ++k) {
                int32_t j = nb[k];
                if (j >= 0 && local[static_cast<size_t>(j)] >= 0) adj[static_cast<size_t>(li)].push_back(local[static_cast<size_t>(j)]);
            }
            if (ev.is_source[static_cast<size_t>(i)]) {
                adj[static_cast<size_t>(li)].push_back(s);
                adj[static_cast<size_t>(s)].push_back(li);
            }
            if (ev.is_target[static_cast<size_t>(i)]) {
                adj[static_cast<size_t>(li)].push_back(t);
                adj[static_cast<size_t>(t)].push_back(li);
            }
        }
        auto cuts = st_cut_vertices(adj, s, t);
        piv.reserve(cuts.size());
        for (int32_t lv : cuts) piv.push_back(cells[static_cast<size_t>(lv)]);
        // a cell that is both source and target of a surviving path never
        // appears; s,t excluded by construction
        std::sort(piv.begin(), piv.end());
        return piv;
    }

    // event fails: the candidates are closed cells whose opening joins a
    // source-side component to a target-side one
    for (int i = 0; i < n; ++i) {
        if (cfg.open(i)) continue;
        bool src = ev.is_source[static_cast<size_t>(i)] != 0, tgt = ev.is_target[static_cast<size_t>(i)] != 0;
        const int32_t* nb = r.nbr(i);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j < 0 || !cfg.open(j)) continue;
            int id = comp[static_cast<size_t>(j)];
            src = src || comp_src[static_cast<size_t>(id)];
            tgt = tgt || comp_tgt[static_cast<size_t>(id)];
        }
        if (src && tgt) piv.push_back(i);
    }
    return piv;
}

ClusterTracker::ClusterTracker(RegionPtr region, int target_R)
    : region_(std::move(region)), target_r_(target_R) {
    open_.assign(static_cast<size_t>(region_->size()), 0);
    in_c_.assign(static_cast<size_t>(region_->size()), 0);
}

bool ClusterTracker::origin_open() const {
    int o = region_->origin_index();
    return o >= 0 && open_[static_cast<size_t>(o)] != 0;
}

void ClusterTracker::reset(const Configuration& cfg) {
    for (int i = 0; i < region_->size(); ++i) open_[static_cast<size_t>(i)] = cfg.open(i) ? 1 : 0;
    rebuild();
}

void ClusterTracker::rebuild() {
    for (int32_t m : members_) in_c_[static_cast<size_t>(m)] = 0;
    members_.clear();
    radius_ = 0;
    target_count_ = 0;
    int o = region_->origin_index();
    if (o < 0 || !open_[static_cast<size_t>(o)]) return;
    in_c_[static_cast<size_t>(o)] = 1;
    members_.push_back(o);
    grow_from(o);
}

void ClusterTracker::grow_from(int cell) {
    // cell must already be marked and in members_
    queue_.clear();
    queue_.push_back(cell);
    const RegionIndex& r = *region_;
    for (size_t h = 0; h < queue_.size(); ++h) {
        int c = queue_[h];
        int d = r.dist(c);
        radius_ = std::max(radius_, d);
        if (d == target_r_) ++target_count_;
        const int32_t* nb = r.nbr(c);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j >= 0 && open_[static_cast<size_t>(j)] && !in_c_[static_cast<size_t>(j)]) {
                in_c_[static_cast<size_t>(j)] = 1;
                members_.push_back(j);
                queue_.push_back(j);
            }
        }
    }
}

void ClusterTracker::apply_flip(int cell, bool new_state) {
    bool old = open_[static_cast<size_t>(cell)] != 0;
    if (old == new_state) return;
    open_[static_cast<size_t>(cell)] = new_state ? 1 : 0;
    if (new_state) {
        if (cell == region_->origin_index()) {
            rebuild();
            return;
        }
        if (in_c_[static_cast<size_t>(cell)]) return; // impossible, but harmless
        bool touches = false;
        const int32_t* nb = region_->nbr(cell);
        for (int k = 0; k < 6 && !touches; ++k)
            touches = nb[k] >= 0 && in_c_[static_cast<size_t>(nb[k])];
        if (!touches) return;
        in_c_[static_cast<size_t>(cell)] = 1;
        members_.push_back(cell);
        grow_from(cell);
    } else {
        if (in_c_[static_cast<size_t>(cell)]) rebuild();
    }
}

Configuration ClusterTracker::snapshot() const {
    Configuration cfg(region_);
    for (int i = 0; i < region_->size(); ++i)
        if (open_[static_cast<size_t>(i)]) cfg.set(i, true);
    return cfg;
}

} // namespace perc
