#include "perclab/static_perc.hpp"

#include "perclab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace perc {

namespace {

constexpr std::array<Cell, 6> kHexOffsets = {
    Cell{1, 0}, Cell{0, 1}, Cell{-1, 1}, Cell{-1, 0}, Cell{0, -1}, Cell{1, -1}};

int dir_index(const Cell& from, const Cell& to) {
    for (int k = 0; k < 6; ++k)
        if (to.u - from.u == kHexOffsets[static_cast<size_t>(k)].u && to.v - from.v == kHexOffsets[static_cast<size_t>(k)].v) return k;
    return -1;
}

} // namespace

ArmEstimate arm_probability(LatticeKind kind, ArmKind arm, int r, int R, double p,
                            int64_t trials, uint64_t seed) {
    if (trials <= 0) throw InsufficientTrials("arm_probability needs trials >= 1");
    if (r > R) throw PercError("arm radii must satisfy r <= R");

    ArmEstimate out{arm, r, R, p, trials, 0.0, 0.0};
    if (arm == ArmKind::OneArm && r == R) {
        out.estimate = 1.0; // empty crossing
        out.se = 0.0;
        return out;
    }

    RegionPtr region;
    ConnEvent ev;
    if (arm == ArmKind::OneArm) {
        region = make_region(kind, RegionSpec::annulus(r, R));
        ev = crossing_event(region);
    } else {
        region = make_region(kind, RegionSpec::ball(R));
        ev = make_event(region, region->sphere(r + 1), region->sphere(R));
    }
    const int center = region->origin_index();
    if (arm == ArmKind::AlternatingFourArm && center < 0) throw PercError("four-arm needs the origin");

    std::vector<uint8_t> hits(static_cast<size_t>(trials), 0);
    run_trials(trials, [&](int64_t t) {
        Rng rng(seed, hash_str("arm"), static_cast<uint64_t>(t));
        Configuration cfg = sample(region, p, rng);
        bool hit;
        if (arm == ArmKind::OneArm) {
            hit = occurs(ev, cfg);
        } else {
            hit = occurs_with(ev, cfg, center, true) != occurs_with(ev, cfg, center, false);
        }
        hits[static_cast<size_t>(t)] = hit ? 1 : 0;
    });
    int64_t n = 0;
    for (uint8_t h : hits) n += h;
    out.estimate = static_cast<double>(n) / static_cast<double>(trials);
    out.se = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

std::vector<int32_t> pivotals(const Configuration& cfg, int R) {
    ConnEvent ev = radial_event(cfg.region_ptr(), R);
    return pivotal_set(ev, cfg);
}

std::optional<Circuit> innermost_circuit(const Configuration& cfg, int r) {
    const RegionIndex& region = cfg.region();
    if (region.kind() != LatticeKind::HexSite) throw PercError("circuits live on the hex lattice");
    const int n = region.size();

    // blob: B_r plus every closed cell reachable from it through closed cells
    std::vector<uint8_t> in_blob(static_cast<size_t>(n), 0);
    std::vector<int32_t> q;
    for (int i = 0; i < n; ++i)
        if (region.dist(i) <= r) {
            in_blob[static_cast<size_t>(i)] = 1;
            q.push_back(i);
        }
    if (q.empty()) throw PercError("region does not contain B_r");
    bool escapes = false;
    for (size_t h = 0; h < q.size() && !escapes; ++h) {
        const int32_t* nb = region.nbr(q[h]);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j < 0) {
                escapes = true; // blob reached the edge of the sampled region
                break;
            }
            if (!in_blob[static_cast<size_t>(j)] && !cfg.open(j)) {
                in_blob[static_cast<size_t>(j)] = 1;
                q.push_back(j);
            }
        }
    }
    if (escapes) return std::nullopt;

    // outer contour trace: start above the row-major maximal blob cell
    int wstar = q[0];
    for (int32_t c : q) {
        const Cell& a = region.cell(c);
        const Cell& b = region.cell(wstar);
        if (a.v > b.v || (a.v == b.v && a.u > b.u)) wstar = c;
    }
    int start_dir = 1; // towards (0, 1)
    std::vector<Cell> trace;
    int wcur = wstar, dir = start_dir;
    size_t guard = static_cast<size_t>(n) * 8 + 64;
    do {
        int32_t outside = region.nbr(wcur)[dir];
        if (outside < 0) return std::nullopt; // frontier touches region edge
        if (trace.empty() || !(trace.back() == region.cell(outside))) trace.push_back(region.cell(outside));
        int ndir = (dir + 1) % 6;
        int32_t m = region.nbr(wcur)[ndir];
        if (m >= 0 && in_blob[static_cast<size_t>(m)]) {
            int j = dir_index(region.cell(m), region.cell(outside));
            wcur = m;
            dir = j;
        } else {
            dir = ndir;
        }
        if (--guard == 0) throw PercError("contour trace failed to close");
    } while (!(wcur == wstar && dir == start_dir));
    if (!trace.empty() && trace.front() == trace.back()) trace.pop_back();

    // loop-erase the contour, anchored at the cell above wstar (always on the
    // taut cycle: two free cells sit above it)
    std::vector<Cell> cyc;
    {
        std::unordered_map<Cell, size_t, CellHash> pos;
        for (const Cell& c : trace) {
            auto it = pos.find(c);
            if (it != pos.end()) {
                while (cyc.size() > it->second + 1) {
                    pos.erase(cyc.back());
                    cyc.pop_back();
                }
            } else {
                pos[c] = cyc.size();
                cyc.push_back(c);
            }
        }
    }
    if (cyc.size() < 6) return std::nullopt;

    try {
        Circuit circ = validate_circuit(LatticeKind::HexSite, cyc);
        for (int32_t i : region.sphere(r))
            if (!circ.interior.contains(region.cell(i))) return std::nullopt;
        return circ;
    } catch (const NotACircuit&) {
        return std::nullopt;
    }
}

FineParams make_fine_params(int r, double epsilon, int R, double alpha4_hat, double eta) {
    FineParams p;
    p.r = r;
    p.epsilon = epsilon;
    p.R = R;
    p.eta = eta;
    if (r < 2 || (r % 2) != 0) throw PreconditionUnmet("r must be even and >= 2");
    if (!((1.0 + 2.0 * epsilon) * (1.0 - eta) < 1.0))
        throw PreconditionUnmet("(1+2eps)(1-eta) must be < 1");
    double s_real = std::pow(static_cast<double>(r), 1.0 + 2.0 * epsilon);
    if (static_cast<double>(R) < s_real) throw PreconditionUnmet("R must be >= r^{1+2eps}");
    p.s = static_cast<int>(std::lround(s_real));
    p.containment_radius = static_cast<int>(std::ceil(s_real));
    p.alpha4_hat = alpha4_hat;
    p.piv_bound = std::pow(static_cast<double>(r), 2.0 * (1.0 + 2.0 * epsilon)) * alpha4_hat;
    if (!(p.piv_bound < static_cast<double>(r) / 2.0))
        throw PreconditionUnmet("pivotal bound r^{2(1+2eps)} alpha4 must be < r/2");
    return p;
}

FineInfo fine_info(const Configuration& cfg, const FineParams& params) {
    FineInfo info;
    info.connected = zero_to_R(cfg, params.R);
    if (!info.connected) return info;
    info.gamma = innermost_circuit(cfg, params.r);
    if (!info.gamma) return info;
    int maxd = 0;
    for (const Cell& c : info.gamma->path) maxd = std::max(maxd, hex_distance(c, {0, 0}));
    info.contained = maxd <= params.containment_radius;
    if (!info.contained) return info;
    info.piv = pivotals(cfg, params.R);
    const RegionIndex& region = cfg.region();
    for (int32_t i : info.piv)
        if (info.gamma->in_interior(region.cell(i))) ++info.piv_in_interior;
    info.fine = static_cast<double>(info.piv_in_interior) <= params.piv_bound;
    return info;
}

bool is_fine(const Configuration& cfg, const FineParams& params) {
    return fine_info(cfg, params).fine;
}

namespace {

// distance-to-Gamma field over the interior (0 on Gamma itself)
std::vector<int32_t> gamma_distance(const RegionIndex& region, const Circuit& gamma) {
    std::vector<int32_t> d(static_cast<size_t>(region.size()), -1);
    std::vector<int32_t> q;
    for (const Cell& c : gamma.path) {
        int i = region.index_of(c);
        if (i < 0) throw PercError("circuit leaves the region");
        d[static_cast<size_t>(i)] = 0;
        q.push_back(i);
    }
    for (size_t h = 0; h < q.size(); ++h) {
        const int32_t* nb = region.nbr(q[h]);
        for (int k = 0; k < 6; ++k) {
            int32_t j = nb[k];
            if (j >= 0 && d[static_cast<size_t>(j)] < 0 && gamma.in_interior(region.cell(j))) {
                d[static_cast<size_t>(j)] = d[static_cast<size_t>(q[h])] + 1;
                q.push_back(j);
            }
        }
    }
    return d;
}

} // namespace

std::vector<int32_t> slim_open_set(const RegionIndex& region, int r, const Circuit& gamma, int a) {
    if (r < 2 || (r % 2) != 0) throw PercError("slim requires even r >= 2");
    if (a < 0 || a > r / 2) throw InvalidA("slim a must lie in [0, r/2]");
    for (int i : region.sphere(r))
        if (!gamma.in_interior(region.cell(i))) throw PercError("B_r must lie inside the circuit");

    const int half = r / 2;
    std::vector<int32_t> open;
    auto add = [&](const Cell& c) {
        int i = region.index_of(c);
        if (i < 0) throw PercError("slim cell outside region");
        open.push_back(i);
    };

    // x-axis spokes of B_{r/2}
    for (int qx = -half; qx <= half; ++qx) add({qx, 0});
    if (a == 0) {
        std::sort(open.begin(), open.end());
        return open;
    }

    auto dist_gamma = gamma_distance(region, gamma);
    auto level = [&](const Cell& c) {
        int i = region.index_of(c);
        return i < 0 ? -1 : dist_gamma[static_cast<size_t>(i)];
    };

    // ring hub around the spokes
    for (const Cell& c : hex_ring(half + 1)) add(c);

    int l_ring = level({half + 1, 0});
    if (l_ring < 0) throw SlimConstructionFailed("ring outside the interior");

    bool tight = l_ring <= a; // no room for a separate landing layer

    if (!tight) {
        // ladder out along rows v = 0 and v = -1 while the level stays above a
        int qstar = half + 1;
        while (level({qstar, 0}) > a) {
            add({qstar, 0});
            ++qstar;
            if (qstar > region.max_dist()) throw SlimConstructionFailed("ladder ran off the region");
        }
        if (level({qstar, 0}) != a) throw SlimConstructionFailed("level gap along the axis");
        for (int qx = half + 1; qx <= qstar; ++qx) {
            Cell c{qx, -1};
            if (level(c) > a) add(c);
            else break;
        }
        // descending single-file chain: levels a .. 2, then the landing layer
        Cell cur{qstar, 0};
        add(cur);
        for (int lev = a - 1; lev >= 2; --lev) {
            Cell next{0, 0};
            bool found = false;
            for (const auto& off : kHexOffsets) {
                Cell cand{cur.u + off.u, cur.v + off.v};
                if (level(cand) == lev && (!found || (cand.v < next.v || (cand.v == next.v && cand.u < next.u)))) {
                    next = cand;
                    found = true;
                }
            }
            if (!found) throw SlimConstructionFailed("chain descent blocked");
            add(next);
            cur = next;
        }
        // fully open layer next to Gamma: every fragment keeps contact
        for (int i = 0; i < region.size(); ++i)
            if (dist_gamma[static_cast<size_t>(i)] == 1) open.push_back(i);
    } else {
        // tight geometry: chain descends from the ring straight to Gamma
        Cell cur{half + 1, 0};
        int lev_cur = l_ring;
        for (int lev = lev_cur - 1; lev >= 1; --lev) {
            Cell next{0, 0};
            bool found = false;
            for (const auto& off : kHexOffsets) {
                Cell cand{cur.u + off.u, cur.v + off.v};
                if (level(cand) == lev && (!found || (cand.v < next.v || (cand.v == next.v && cand.u < next.u)))) {
                    next = cand;
                    found = true;
                }
            }
            if (!found) throw SlimConstructionFailed("tight chain descent blocked");
            add(next);
            cur = next;
        }
    }

    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    return open;
}

namespace {

int count_interior_pivots(const RegionIndex& region, const Circuit& gamma,
                          const std::vector<int32_t>& open_set, RegionPtr region_ptr) {
    Configuration probe(region_ptr);
    for (int32_t i : open_set) probe.set(i, true);
    std::vector<int32_t> targets;
    for (const Cell& c : gamma.path) {
        int i = region.index_of(c);
        probe.set(i, true);
        targets.push_back(i);
    }
    ConnEvent ev = make_event(region_ptr, {region.origin_index()}, std::move(targets));
    auto piv = pivotal_set(ev, probe);
    int count = 0;
    for (int32_t i : piv)
        if (gamma.in_interior(region.cell(i))) ++count;
    return count;
}

} // namespace

Configuration slim_config(RegionPtr region, int r, const Circuit& gamma, int a) {
    auto open_set = slim_open_set(*region, r, gamma, a);
    int got = count_interior_pivots(*region, gamma, open_set, region);
    if (got != a) throw SlimConstructionFailed("slim construction realized the wrong pivotal count");
    Configuration cfg(region);
    for (int32_t i : open_set) cfg.set(i, true);
    for (const Cell& c : gamma.path) cfg.set(region->index_of(c), true);
    return cfg;
}

Configuration thin(const Configuration& cfg, const FineParams& params) {
    FineInfo info = fine_info(cfg, params);
    if (!info.fine) return cfg;
    const RegionIndex& region = cfg.region();
    int a = info.piv_in_interior;
    auto open_set = slim_open_set(region, params.r, *info.gamma, a);
    int got = count_interior_pivots(region, *info.gamma, open_set, cfg.region_ptr());
    if (got != a) throw SlimConstructionFailed("slim construction realized the wrong pivotal count");

    Configuration out = cfg;
    for (int i = 0; i < region.size(); ++i)
        if (info.gamma->in_interior(region.cell(i))) out.set(i, false);
    for (int32_t i : open_set) out.set(i, true);
    return out;
}

Configuration iic_r_sample(const RegionPtr& ball_r, Rng& rng) {
    int R = ball_r->spec().r2;
    for (;;) {
        Configuration cfg = sample(ball_r, 0.5, rng);
        if (zero_to_R(cfg, R)) return cfg;
    }
}

Configuration iic_prime_sample(const RegionPtr& ball_R, Rng& rng, std::vector<int32_t>* piv_out) {
    int R = ball_R->spec().r2;
    ConnEvent ev = radial_event(ball_R, R);
    const double denom = static_cast<double>(ball_R->size());
    for (;;) {
        Configuration cfg = iic_r_sample(ball_R, rng);
        auto piv = pivotal_set(ev, cfg);
        if (rng.next_real() * denom < static_cast<double>(piv.size())) {
            if (piv_out) *piv_out = std::move(piv);
            return cfg;
        }
    }
}

} // namespace perc
