#pragma once

#include <optional>
#include <vector>

#include "greedylab/space.hpp"
#include "greedylab/types.hpp"

namespace greedylab {

struct InnerSolveResult {
    double value = 0.0;
    CoeffVector minimizer;
    bool exact = false;
};

// Exact min over z supported in A of max_{f in F} f(x - z) for a symmetric
// functional family F (a polyhedral norm). Solved as the dual linear program
//   max sum lambda_f f(x)  s.t.  lambda >= 0, sum lambda = 1,
//                                sum lambda_f f(e_j) = 0 for j in A,
// by a dense simplex with Bland's rule; the primal minimizer is recovered
// from the active functionals.
InnerSolveResult polyhedral_inner_solve(const PolyhedralFamily& family, const CoeffVector& x,
                                        const IndexSet& A);

// Projected subgradient descent fallback for general norms: step 1/sqrt(t),
// `iters` iterations, restarts from 0, P_A x and seeded random points.
InnerSolveResult subgradient_inner_solve(const Space& space, const CoeffVector& x,
                                         const IndexSet& A, int iters = 2000, int restarts = 10,
                                         uint64_t seed = 1, double tol = 1e-7);

// Dispatches on space.polyhedral().
InnerSolveResult inner_solve(const Space& space, const CoeffVector& x, const IndexSet& A);

}  // namespace greedylab
