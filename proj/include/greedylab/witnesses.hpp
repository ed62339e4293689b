#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/constants.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/types.hpp"

namespace greedylab {

// A reproducible extremal construction: the vectors and sets, plus the
// quantities it is expected to achieve. `expected` maps a quantity label to
// the value that re-evaluating the construction must reproduce exactly
// (within 1e-9); tests freeze these.
struct WitnessSpec {
    std::string name;
    CoeffVector x;
    std::map<std::string, IndexSet> sets;
    std::map<std::string, SignPattern> signs;
    std::optional<CoeffVector> feasible_z;
    std::map<std::string, double> expected;
    std::string notes;
};

// ---- summing basis ----------------------------------------------------
// greedy_pair(N): a = (-1, 2, -2, ..., 2, -2), Gamma the +2 positions and
//   Gamma' likewise; ||a|| = 1, ||P_Gamma a|| = 2N, ||a - P_{Gamma'} a|| = 1 + 2N.
// nu(N): x = (1/2,0,1/2; ...; 1/2), B the middle coordinates, A fresh ones;
//   ||x - 1_B|| = 1/2, ||x + 1_A|| = 1/2 + 2N.
// lebesgue(N): x with buffered unit plateau and alternating tail; Gamma the
//   tail negatives, z = 2 * (plateau middles); ||x - P_Gamma x|| = 3N + 1/2,
//   ||x - z|| = 1/2. Uses the wide layout when 5N + 1 <= dim and otherwise a
//   compressed layout needing 4N + 2 coordinates.
std::vector<WitnessSpec> summing_witnesses(const Space& space, int N);

// ---- direct sums -------------------------------------------------------
// democracy/nu/lebesgue witnesses for l1 (+) c0, l1 (+) lq, lp (+) c0.
std::vector<WitnessSpec> direct_sum_witnesses(const Space& space, const BlockSpec& left,
                                              const BlockSpec& right, int N);

// ---- trigonometric system ----------------------------------------------
// dirichlet(n): coefficients 1 on |k| <= n.
CoeffVector trig_dirichlet(const TrigSpace& space, int n);
// fejer(n): 1 - |k|/(n+1) on |k| <= n.
CoeffVector trig_fejer(const TrigSpace& space, int n);
// de la Vallee Poussin V_N = 2 K_{2N+1} - K_N; ||V_N||_1 <= 3.
CoeffVector trig_vallee_poussin(const TrigSpace& space, int N);
// Rudin-Shapiro signs of length 2^k (P/Q recursion).
std::vector<int> rudin_shapiro_signs(int k);

// lacunary_nu(N): a nu witness (A, eps, B = [-N..N], x = V_N - 1_B) whose
// numerator set A avoids supp x and B. Uses the power-of-two lacunary set
// {2^j : j0 <= j <= j0 + 2N}, 2^{j0} >= 4N, when it fits below n_max, and
// otherwise signed blocks just above 2N+1 with Rudin-Shapiro signs (the
// same sup-norm behavior at reachable frequencies). RangeError when even
// that does not fit.
WitnessSpec trig_lacunary_nu(const TrigSpace& space, int N);

std::vector<WitnessSpec> trig_witnesses(const TrigSpace& space, int N);

// ---- mixed dyadic (triple norm) ----------------------------------------
// The 2n-level interleaved construction: levels k_{2j+1} = j,
// k_{2j+2} = n + j; x = sum (-1)^{j+1} 2^{-k_j} 1_{D_{k_j}};
// P = 2^n - 1 picks the coarse blocks. Expected: triple(x) = (2n)^{1/q},
// triple(G_P x) = n, ratio n / (2n)^{1/q}.
struct MixedDyadicConstruction {
    std::shared_ptr<const MixedDyadicSpace> space;
    CoeffVector x;
    IndexSet gamma;  // the unique greedy set of order P
    int P = 0;
    WitnessSpec spec;
};
MixedDyadicConstruction mixed_dyadic_construction(double q, int n);

// Bridges witness specs into the constant searches for a space.
std::vector<OperatorWitness> operator_witnesses_for(const Space& space, int N);
std::vector<NuWitness> nu_witnesses_for(const Space& space, int N);
std::vector<LebesgueWitness> lebesgue_witnesses_for(const Space& space, int N);

}  // namespace greedylab
