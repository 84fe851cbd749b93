#pragma once

#include "perclab/connectivity.hpp"
#include "perclab/oracle.hpp"

#include <optional>
#include <string_view>

namespace perc {

struct PreconditionUnmet : PercError {
    using PercError::PercError;
};
struct InsufficientTrials : PercError {
    using PercError::PercError;
};
struct InvalidA : PercError {
    using PercError::PercError;
};
struct SlimConstructionFailed : PercError {
    using PercError::PercError;
};

enum class ArmKind { OneArm, AlternatingFourArm };

struct ArmEstimate {
    ArmKind kind;
    int r = 1;
    int R = 2;
    double p = 0.5;
    int64_t trials = 0;
    double estimate = 0.0;
    double se = 0.0;
};

// One-arm: open crossing of the annulus A_{r,R} from sphere(r+1) to
// sphere(R), paths confined to the annulus (so that quasi-multiplicativity
// across disjoint annuli is an exact inequality). Four-arm: the origin cell
// is pivotal for the sphere(r+1) <-> sphere(R) connection inside B_R, the
// pivotality <-> four-alternating-arms equivalence.
ArmEstimate arm_probability(LatticeKind kind, ArmKind arm, int r, int R, double p,
                            int64_t trials, uint64_t seed);

// Exact Piv_{0<->R} of the configuration (region must contain B_R).
std::vector<int32_t> pivotals(const Configuration& cfg, int R);

// Innermost open circuit enclosing B_r, if any: grow the closed-connected
// blob from inside B_r (B_r transparent), contour-trace its open frontier,
// loop-erase the trace. Certified against circuit enumeration at tiny r.
std::optional<Circuit> innermost_circuit(const Configuration& cfg, int r);

struct FineParams {
    int r = 8;
    double epsilon = 0.1;
    int R = 32;
    double eta = 0.25;       // hex four-arm exponent bracket
    int s = 0;               // arm radius round(r^{1+2eps})
    double alpha4_hat = 0.0; // estimate of alpha_4(1, s)
    int containment_radius = 0;
    double piv_bound = 0.0;  // r^{2(1+2eps)} * alpha4_hat
};

// Throws PreconditionUnmet unless r is even, (1+2eps)(1-eta) < 1,
// R >= r^{1+2eps} and the pivotal bound is below r/2.
FineParams make_fine_params(int r, double epsilon, int R, double alpha4_hat, double eta = 0.25);

struct FineInfo {
    bool fine = false;
    std::optional<Circuit> gamma;      // present whenever it exists
    std::vector<int32_t> piv;          // Piv_{0<->R}, full set
    int piv_in_interior = 0;           // |Piv ∩ Int(Gamma_r)|
    bool connected = false;
    bool contained = false;
};

FineInfo fine_info(const Configuration& cfg, const FineParams& params);
bool is_fine(const Configuration& cfg, const FineParams& params);

// Open set of the (r, Gamma, a)-slim configuration as region indices:
// x-axis spokes of B_{r/2}, the sphere(r/2+1) ring, a two-row ladder along
// the positive x-axis, a single-file descending chain of a-1 cells, and
// (away from the tight case) the fully open layer next to Gamma. Verified
// to realize |Piv ∩ Int| = a before returning.
std::vector<int32_t> slim_open_set(const RegionIndex& region, int r, const Circuit& gamma, int a);

// Standalone slim configuration: Gamma open, Int(Gamma) set to the slim
// pattern, all other cells closed.
Configuration slim_config(RegionPtr region, int r, const Circuit& gamma, int a);

// Identity off Fine; on Fine replaces Int(Gamma_r) by the slim pattern with
// a = |Piv_{0<->R} ∩ Int(Gamma_r)| and keeps B_R \ Int(Gamma_r) unchanged.
Configuration thin(const Configuration& cfg, const FineParams& params);

// Critical sampling conditioned on 0 <-> r (rejection).
Configuration iic_r_sample(const RegionPtr& ball_r, Rng& rng);

// IIC_R size-biased by |Piv_{0<->R}| (rejection with bound |B_R|).
Configuration iic_prime_sample(const RegionPtr& ball_R, Rng& rng, std::vector<int32_t>* piv_out = nullptr);

} // namespace perc
