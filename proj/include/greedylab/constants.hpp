#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/parallel.hpp"
#include "greedylab/space.hpp"
#include "greedylab/types.hpp"

namespace greedylab {

// Enumeration work guard shared by the constant computations.
inline constexpr uint64_t kEnumerationGuard = 100'000'000;

// Cap on ascent evaluations x per-evaluation cost inside operator_constant;
// past it the random-restart phase is dropped (deterministic candidates and
// caller witnesses still run) and the estimate says so in its citations.
inline constexpr double kAscentWorkGuard = 2e9;

// Everything needed to recompute a certified lower bound.
struct ConstantWitness {
    std::optional<CoeffVector> x;
    std::optional<IndexSet> A;
    std::optional<IndexSet> B;
    std::optional<SignPattern> eps;
    std::optional<SignPattern> eta;
    std::string description;
};

struct ConstantEstimate {
    ConstantKind kind = ConstantKind::k;
    int N = 0;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    ConstantWitness witness;
    std::vector<std::string> citations;

    bool exact() const {
        return std::isfinite(upper) && upper - lower <= 1e-9 * std::max(1.0, upper);
    }
};

// Search budget for the supremum-over-x constants. The defaults implement:
// (a) exhaustive sign vectors {-1,0,+1}^dim for dim <= sign_dim_cap, layered
//     with the per-coordinate magnitude grid {1/2, 1, 2} for
//     dim <= magnitude_dim_cap,
// (b) caller-supplied witness vectors,
// (c) coordinate ascent on a 41-point grid over [-2, 2], 5 sweeps,
//     ascent_restarts seeded restarts.
struct SearchBudget {
    uint64_t seed = 1;
    int sign_dim_cap = 10;
    int magnitude_dim_cap = 5;
    int ascent_restarts = 20;
    int ascent_sweeps = 5;
    int ascent_grid = 41;
    uint64_t nu_samples = 20000;  // random (A,B,eps,eta,x) draws for nu
    double scale = 1.0;           // multiplies restart/sample counts

    int restarts() const { return std::max(1, int(ascent_restarts * scale)); }
    uint64_t samples() const { return std::max<uint64_t>(1, uint64_t(nu_samples * scale)); }
};

// Exact enumeration of the democracy-type constants:
//   mu    sup ||1_A|| / ||1_B||            over |A| = |B| <= N
//   mu_d  the same over disjoint pairs
//   tmu   sup ||1_{eps A}|| / ||1_{eta B}||, signs free
//   tmu_d the same over disjoint pairs
//   gamma sup ||1_{eps B}|| / ||1_{eps A}|| over B inside A, shared signs
// Real spaces: the result is the exact supremum (lower == upper). Complex
// spaces: signs run over the space's roots-of-unity grid, which certifies
// the lower bound only. Guard: kEnumerationGuard on the work estimate.
ConstantEstimate democracy_constant(const Space& space, int N, ConstantKind kind,
                                    ExecPolicy policy = ExecPolicy::Parallel);

// Witness vectors fed into operator-constant searches (strategy (b)).
struct OperatorWitness {
    CoeffVector x;
    std::string description;
};

// Certified bounds for the operator-type constants k, k_c, g, g_c, g_hat,
// g_tilde. Lower bounds come from evaluating every admissible set / greedy
// set / nested greedy pair on a strategy-generated x family. The empty set
// is admissible both as a projection set and as a greedy set (thresholding
// above the largest modulus), so k_c and g_c are never below 1. Upper bounds
// come from registered values and the unconditionality chain
//   k <= K* N,   k_c <= 1 + k,   g <= k,   g_c <= k_c,
//   g_hat = min(g, g_c),   g_tilde <= min(2 g_hat, g g_c, k).
ConstantEstimate operator_constant(const Space& space, int N, ConstantKind kind,
                                   const SearchBudget& budget = {},
                                   const std::vector<OperatorWitness>& witnesses = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);

// nu witness: a full configuration (A, B, eps, eta, x) with
// |A| = |B| <= N, pairwise disjoint supports, |x|_inf <= 1.
struct NuWitness {
    IndexSet A, B;
    SignPattern eps, eta;
    CoeffVector x;
    std::string description;
};

// The A-property constant nu_N: sup ||1_{eps A} + x|| / ||1_{eta B} + x||.
// Lower bound: disjoint-pair enumeration with x = 0, overlap transfer from
// the democracy pairs, caller witnesses, seeded vertex sampling and (small
// dimensions) exhaustive {-1,0,1} x-grids. Upper bound: registered value or
// nu <= g_c.upper + g.upper * tmu_d.
ConstantEstimate a_property_constant(const Space& space, int N,
                                     const SearchBudget& budget = {},
                                     const std::vector<NuWitness>& witnesses = {},
                                     ExecPolicy policy = ExecPolicy::Parallel);

// Closed-form upper bound usable at any order (registered value when
// present, otherwise the generic chain above; democracy kinds fall back to
// kappa2^2 * N, gamma additionally to g_hat's upper).
double generic_upper_bound(const Space& space, ConstantKind kind, int N);

class ConstantTable {
  public:
    const ConstantEstimate& at(ConstantKind kind, int N) const;
    bool has(ConstantKind kind, int N) const;
    void put(ConstantEstimate e);
    // Upper bound for any order: table entry when present, generic otherwise.
    double upper(const Space& space, ConstantKind kind, int N) const;
    double lower_or(ConstantKind kind, int N, double fallback) const;
    const std::map<std::pair<int, int>, ConstantEstimate>& entries() const { return m_; }

  private:
    std::map<std::pair<int, int>, ConstantEstimate> m_;  // (kind, N)
};

// All twelve constants for N = 1..N_max, lowers accumulated monotonically
// in N. Skips the democracy enumeration (guard) kinds gracefully by leaving
// lower = 0 with a note when the guard trips and `allow_skips` is set.
ConstantTable compute_all_constants(const Space& space, int N_max,
                                    const SearchBudget& budget = {},
                                    const std::vector<OperatorWitness>& op_witnesses = {},
                                    const std::vector<NuWitness>& nu_witnesses = {},
                                    ExecPolicy policy = ExecPolicy::Parallel,
                                    bool allow_skips = false);

}  // namespace greedylab
