#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greedylab/constants.hpp"
#include "greedylab/space.hpp"
#include "greedylab/types.hpp"

namespace greedylab {

inline constexpr uint64_t kSupportScanGuard = 10'000'000;

// Cap on supports x descent iterations x norm_work for the subgradient
// fallback inside sigma; past it the scan throws RangeError and callers fall
// back to whatever feasible approximant they hold.
inline constexpr double kSigmaWorkGuard = 2e9;

struct ApproxResult {
    double value = 0.0;
    IndexSet support;          // minimizing support
    CoeffVector minimizer;     // best approximant found
    bool exact = false;
};

// Projection error sigma~_N(x) = min over |A| <= N of ||x - P_A x||,
// exhaustive over supports (lexicographic tie-break). Also reports the
// |A| = N restriction.
struct SigmaTildeResult {
    ApproxResult best;       // over |A| <= N
    ApproxResult exactly_N;  // over |A| = N
};
SigmaTildeResult sigma_tilde(const Space& space, const CoeffVector& x, int N,
                             ExecPolicy policy = ExecPolicy::Parallel);

// Best N-term approximation error sigma_N(x) = min over |A| <= N, supp z
// inside A of ||x - z||. Exhaustive over supports with an exact polyhedral
// inner solve when the space offers one (exact = true), otherwise projected
// subgradient (exact = false). witness_z, when given, only certifies the
// upper bound ||x - z|| (and sigma returns min with the solver result).
ApproxResult sigma(const Space& space, const CoeffVector& x, int N,
                   const std::optional<CoeffVector>& witness_z = std::nullopt,
                   ExecPolicy policy = ExecPolicy::Parallel);

enum class CertificateStatus { Holds, Violated, Equality };

// One verified inequality lhs <= rhs (or equality) with provenance.
struct BoundCertificate {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    CertificateStatus status = CertificateStatus::Holds;
    std::string detail;   // human-readable derivation
    double slack() const { return rhs - lhs; }
};

// A Lebesgue-type witness: ratio ||x - P_Gamma x|| / denominator where
// Gamma is a greedy set of exactly N elements and the denominator is
// ||x - z|| for a feasible z (sigma flavor) or the exact sigma~_N(x).
// A smaller greedy set would overstate the ratio: removing fewer than N
// coordinates leaves a larger numerator than any order-N greedy operator.
struct LebesgueWitness {
    CoeffVector x;
    IndexSet gamma;                     // verified greedy
    std::optional<CoeffVector> z;       // feasible N-term approximant
    std::string description;
};

struct LebesgueLower {
    double L = 1.0;        // vs sigma_N
    double L_tilde = 1.0;  // vs sigma~_N
    std::string L_witness;
    std::string L_tilde_witness;
};

// Evaluates the witness list plus the standard lower-bound constructions
// derived from the constant table's witnesses: the k_c, g_c, mu, tmu/(2 kappa)
// and nu style vectors. Guarantees L >= L_tilde by feeding every sigma~
// minimizer back as a feasible z.
LebesgueLower lebesgue_lower(const Space& space, int N, const ConstantTable& table,
                             const std::vector<LebesgueWitness>& witnesses = {},
                             ExecPolicy policy = ExecPolicy::Parallel);

struct LebesgueUpper {
    double L = std::numeric_limits<double>::infinity();
    double L_tilde = std::numeric_limits<double>::infinity();
    std::vector<BoundCertificate> certificates;
    bool exact_by_suppression = false;  // k_c == 1 route fired: L = L~ = nu
};

// Upper bounds assembled from the additive, multiplicative and linear-in-N
// theorems; every emitted certificate records its formula and inputs.
LebesgueUpper theorem_upper_bounds(const Space& space, int N, const ConstantTable& table);

struct LebesgueSandwich {
    int N = 0;
    LebesgueLower lower;
    LebesgueUpper upper;
    bool consistent() const {
        return lower.L <= upper.L + 1e-9 * std::max(1.0, upper.L) &&
               lower.L_tilde <= upper.L_tilde + 1e-9 * std::max(1.0, upper.L_tilde);
    }
};

LebesgueSandwich lebesgue_sandwich(const Space& space, int N, const ConstantTable& table,
                                   const std::vector<LebesgueWitness>& witnesses = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);

// Randomized verification of the pointwise lemmas on seeded samples:
//   abel      min_Lambda |x_n| ||1_{eps Lambda}|| <= g~_N ||x||
//   abel1     alpha ||1_{eps Lambda}|| <= 2 min(g, g_c) ||x||
//   truncation            ||T_alpha x|| <= g_c_{|Lambda_alpha|} ||x||
//   truncation complement ||x - T_alpha x|| <= g_{|Lambda_alpha|} ||x||
//   truncation of (I-P_A) ||T_alpha (I-P_A) x|| <= k_c_{|A u Lambda|} ||x||
//                   and   <= g_c_{|Lambda'|} k_c_{|A|} ||x||
//   convexity (nu)        ||x + z|| <= nu_N ||x + alpha 1_{eta B}||
//   squeeze (tmu)         ||z|| <= tmu_N max|z_n| ||1_{eta B}||
//   nested sets           ||1_{eps B}|| <= 2 kappa gamma_N ||1_{eta A}||
//   democracy transfer    tmu_N <= 4 kappa^2 gamma_N mu_N
// plus the estimate-level chains (Remark-style orderings, eq. k <= K* N,
// the Lebesgue ordering and the trivial chain L~ <= L <= k_c L~).
struct LemmaSuiteResult {
    uint64_t samples = 0;
    uint64_t checks = 0;
    std::vector<BoundCertificate> violations;  // empty on success
    std::vector<BoundCertificate> chain_certificates;
};

LemmaSuiteResult lemma_suite(const Space& space, int N_max, const ConstantTable& table,
                             uint64_t samples, uint64_t seed, double tolerance = 1e-9,
                             const std::optional<LebesgueSandwich>& sandwich = std::nullopt);

}  // namespace greedylab
