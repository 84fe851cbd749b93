#include "perclab/oracle.hpp"

#include <algorithm>

namespace perc::oracle {

bool reach_dfs(const ConnEvent& ev, const Configuration& cfg) {
    const RegionIndex& r = *ev.region;
    std::vector<uint8_t> seen(static_cast<size_t>(r.size()), 0);
    std::vector<int32_t> stack;
    for (int32_t s : ev.sources) {
        if (!cfg.open(s) || seen[static_cast<size_t>(s)]) continue;
        seen[static_cast<size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            if (ev.is_target[static_cast<size_t>(c)]) return true;
            const int32_t* nb = r.nbr(c);
            for (int k = 0; k < 6; ++k) {
                int32_t j = nb[k];
                if (j >= 0 && cfg.open(j) && !seen[static_cast<size_t>(j)]) {
                    seen[static_cast<size_t>(j)] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    return false;
}

std::vector<int32_t> pivotals_naive(const ConnEvent& ev, const Configuration& cfg) {
    Configuration work = cfg;
    bool base = reach_dfs(ev, work);
    std::vector<int32_t> piv;
    for (int i = 0; i < cfg.size(); ++i) {
        work.flip(i);
        if (reach_dfs(ev, work) != base) piv.push_back(i);
        work.flip(i);
    }
    return piv;
}

double exact_theta(int R) {
    if (R > 2) throw PercError("exact_theta limited to R <= 2");
    auto region = make_ball(LatticeKind::HexSite, R);
    uint64_t count = 0;
    for_each_config(region, [&](const Configuration& cfg, uint64_t) {
        if (zero_to_R(cfg, R)) ++count;
    });
    return static_cast<double>(count) / static_cast<double>(1ULL << region->size());
}

std::vector<int32_t> window_indices(const RegionIndex& region, int radius) {
    std::vector<int32_t> idx;
    for (int i = 0; i < region.size(); ++i)
        if (region.dist(i) <= radius) idx.push_back(i);
    // region cells are already row-major sorted, so idx inherits that order
    return idx;
}

std::vector<double> iic_window_law(int r) {
    if (r > 2) throw PercError("iic_window_law limited to r <= 2");
    auto region = make_ball(LatticeKind::HexSite, r);
    auto win = window_indices(*region, 1);
    std::vector<double> law(static_cast<size_t>(1) << win.size(), 0.0);
    double total = 0;
    for_each_config(region, [&](const Configuration& cfg, uint64_t) {
        if (!zero_to_R(cfg, r)) return;
        law[cfg.window_key(win)] += 1.0;
        total += 1.0;
    });
    for (auto& x : law) x /= total;
    return law;
}

std::vector<double> iic_prime_window_law(int r) {
    if (r > 2) throw PercError("iic_prime_window_law limited to r <= 2");
    auto region = make_ball(LatticeKind::HexSite, r);
    auto ev = radial_event(region, r);
    auto win = window_indices(*region, 1);
    std::vector<double> law(static_cast<size_t>(1) << win.size(), 0.0);
    double total = 0;
    for_each_config(region, [&](const Configuration& cfg, uint64_t) {
        if (!zero_to_R(cfg, r)) return;
        double w = static_cast<double>(pivotals_naive(ev, cfg).size());
        law[cfg.window_key(win)] += w;
        total += w;
    });
    for (auto& x : law) x /= total;
    return law;
}

MTable exact_m_table_12() {
    auto region = make_ball(LatticeKind::HexSite, 2);
    auto win = window_indices(*region, 1);
    MTable t;
    t.cond_prob.assign(128, 0.0);
    std::vector<double> totals(128, 0.0);
    double hits = 0;
    for_each_config(region, [&](const Configuration& cfg, uint64_t) {
        uint64_t key = cfg.window_key(win);
        totals[key] += 1.0;
        if (zero_to_R(cfg, 2)) {
            t.cond_prob[key] += 1.0;
            hits += 1.0;
        }
    });
    t.p_event = hits / static_cast<double>(1ULL << region->size());
    t.m.assign(128, 0.0);
    for (size_t k = 0; k < 128; ++k) {
        t.cond_prob[k] /= totals[k];
        t.m[k] = t.cond_prob[k] / t.p_event;
    }
    return t;
}

namespace {

struct CircuitCandidate {
    std::vector<int32_t> path;      // region indices, sorted
    std::vector<Cell> interior;     // sorted row-major
};

bool cell_less(const Cell& a, const Cell& b) {
    return a.v != b.v ? a.v < b.v : a.u < b.u;
}

} // namespace

std::vector<std::vector<int32_t>> open_circuits_enclosing(const Configuration& cfg, int r) {
    const RegionIndex& region = cfg.region();
    if (region.kind() != LatticeKind::HexSite) throw PercError("hex only");
    const int n = region.size();

    // circuit cells must avoid B_r
    std::vector<uint8_t> usable(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) usable[static_cast<size_t>(i)] = cfg.open(i) && region.dist(i) > r;

    auto ball_r = make_ball(LatticeKind::HexSite, r);

    std::vector<std::vector<int32_t>> found;
    std::vector<int32_t> path;
    std::vector<uint8_t> on_path(static_cast<size_t>(n), 0);

    auto try_close = [&](int start) {
        if (path.size() < 6) return;
        if (path[1] > path.back()) return; // one orientation per cycle
        std::vector<Cell> cells;
        cells.reserve(path.size());
        for (int32_t i : path) cells.push_back(region.cell(i));
        try {
            Circuit c = validate_circuit(LatticeKind::HexSite, cells);
            for (const auto& bc : ball_r->cells())
                if (!c.interior.contains(bc)) return;
            std::vector<int32_t> sorted = path;
            std::sort(sorted.begin(), sorted.end());
            found.push_back(std::move(sorted));
        } catch (const NotACircuit&) {
        }
        (void)start;
    };

    // depth-first SAW extension; the start cell is the minimum of its cycle
    std::function<void(int, int)> extend = [&](int start, int cur) {
        const int32_t* nb = region.nbr(cur);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j < 0) continue;
            if (j == start && path.size() >= 6) try_close(start);
            if (j <= start || !usable[static_cast<size_t>(j)] || on_path[static_cast<size_t>(j)]) continue;
            on_path[static_cast<size_t>(j)] = 1;
            path.push_back(j);
            extend(start, j);
            path.pop_back();
            on_path[static_cast<size_t>(j)] = 0;
        }
    };

    for (int s = 0; s < n; ++s) {
        if (!usable[static_cast<size_t>(s)]) continue;
        path.assign(1, s);
        on_path[static_cast<size_t>(s)] = 1;
        extend(s, s);
        on_path[static_cast<size_t>(s)] = 0;
    }

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::optional<std::vector<int32_t>> innermost_circuit_brute(const Configuration& cfg, int r) {
    const RegionIndex& region = cfg.region();
    auto paths = open_circuits_enclosing(cfg, r);
    if (paths.empty()) return std::nullopt;

    std::vector<CircuitCandidate> cands;
    for (auto& p : paths) {
        std::vector<Cell> cells;
        for (int32_t i : p) cells.push_back(region.cell(i));
        // re-derive an ordered path for validation: brute re-use of the saved
        // sorted set; interior comes from a fresh flood fill
        // (validate_circuit needs order, so recompute it by tracing)
        // Simplest: recompute interior by blocking the set and flooding.
        int D = 0;
        for (const auto& c : cells) D = std::max(D, hex_distance(c, {0, 0}));
        auto ball = make_ball(LatticeKind::HexSite, D + 2);
        std::vector<uint8_t> blocked(static_cast<size_t>(ball->size()), 0), vis(static_cast<size_t>(ball->size()), 0);
        for (const auto& c : cells) blocked[static_cast<size_t>(ball->index_of(c))] = 1;
        std::vector<int32_t> q{ball->sphere(D + 2).front()};
        vis[static_cast<size_t>(q[0])] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            const int32_t* nb = ball->nbr(q[h]);
            for (int k = 0; k < 6; ++k) {
                int32_t j = nb[k];
                if (j >= 0 && !vis[static_cast<size_t>(j)] && !blocked[static_cast<size_t>(j)]) {
                    vis[static_cast<size_t>(j)] = 1;
                    q.push_back(j);
                }
            }
        }
        CircuitCandidate cand;
        cand.path = p;
        for (int i = 0; i < ball->size(); ++i)
            if (!vis[static_cast<size_t>(i)] && !blocked[static_cast<size_t>(i)]) cand.interior.push_back(ball->cell(i));
        std::sort(cand.interior.begin(), cand.interior.end(), cell_less);
        cands.push_back(std::move(cand));
    }

    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
        if (cands[i].interior.size() < cands[best].interior.size()) best = i;
    for (size_t i = 0; i < cands.size(); ++i) {
        if (i == best) continue;
        if (!std::includes(cands[i].interior.begin(), cands[i].interior.end(),
                           cands[best].interior.begin(), cands[best].interior.end(), cell_less))
            throw PercError("no least open circuit; minimality assumption violated");
    }
    return cands[best].path;
}

} // namespace perc::oracle
