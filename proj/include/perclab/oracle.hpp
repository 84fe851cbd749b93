#pragma once

// Independent brute-force oracles. Everything here recomputes from the
// definitions (explicit-stack DFS, flip-and-retest, exhaustive enumeration)
// and must stay decoupled from the optimized paths it certifies.

#include "perclab/connectivity.hpp"

#include <map>
#include <optional>
#include <vector>

namespace perc::oracle {

// reachability by explicit-stack DFS
bool reach_dfs(const ConnEvent& ev, const Configuration& cfg);

// pivotal set by flipping every cell and retesting with reach_dfs
std::vector<int32_t> pivotals_naive(const ConnEvent& ev, const Configuration& cfg);

// all 2^n assignments of a small region (n <= 30), row-major bit k = cell k
template <typename Fn>
void for_each_config(const RegionPtr& region, Fn&& fn) {
    const int n = region->size();
    if (n > 30) throw PercError("region too large to enumerate");
    Configuration cfg(region);
    const uint64_t total = 1ULL << n;
    for (uint64_t mask = 0; mask < total; ++mask) {
        cfg.words()[0] = mask;
        fn(cfg, mask);
    }
}

// P(0 <-> R) at p = 1/2 by enumeration of B_R (hex, R <= 2)
double exact_theta(int R);

// exact law of the B_1 window under P(. | 0 <-> r) on B_r (hex, r <= 2);
// index = window key over B_1 cell indices in the B_r region
std::vector<double> iic_window_law(int r);

// same, size-biased by |Piv_{0<->r}|
std::vector<double> iic_prime_window_law(int r);

// indices of the B_1 cells inside a B_r region, in B_1 row-major order
std::vector<int32_t> window_indices(const RegionIndex& region, int radius);

// M table at (r,R) = (1,2): M[key] = P(0<->2 | B_1 window = key) / P(0<->2)
struct MTable {
    std::vector<double> cond_prob; // 128 entries
    double p_event = 0.0;
    std::vector<double> m;         // cond_prob / p_event
};
MTable exact_m_table_12();

// all open circuits of the configuration enclosing B_r, as cell-index sets;
// intended for small regions and near-critical configurations
std::vector<std::vector<int32_t>> open_circuits_enclosing(const Configuration& cfg, int r);

// the unique minimal one, or nullopt (asserts uniqueness of the minimum)
std::optional<std::vector<int32_t>> innermost_circuit_brute(const Configuration& cfg, int r);

} // namespace perc::oracle
