#pragma once

#include <utility>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab {

// Hard cap on the number of greedy sets an enumeration may produce.
inline constexpr uint64_t kGreedyFamilyGuard = 1'000'000;

// All greedy sets of order N for x: every Gamma with |Gamma| = N and
// min over Gamma of |x_n| >= max outside Gamma of |x_n|. Complete under
// ties: Gamma = forced coordinates plus any completion from the tie class.
// Requires 1 <= N <= dim. Fails with SizeError past kGreedyFamilyGuard.
GreedyFamily greedy_sets(const CoeffVector& x, int N);

// True when Gamma is one of the greedy sets of order |Gamma| for x.
bool is_greedy_set(const CoeffVector& x, const IndexSet& gamma);

// Coordinate projection P_A: keeps coordinates in A, zeroes the rest.
CoeffVector project(const CoeffVector& x, const IndexSet& A);

// Complement projection (I - P_A).
CoeffVector project_complement(const CoeffVector& x, const IndexSet& A);

struct TruncationResult {
    CoeffVector value;
    IndexSet lambda;  // {n : |x_n| > alpha}
};

// Truncation T_alpha: coordinates with modulus above alpha are replaced by
// alpha * sign(x_n), the rest pass through. alpha >= 0.
TruncationResult truncate(const CoeffVector& x, double alpha);

// 1_{eps A}: the signed indicator in a given ambient dimension. The pattern
// must cover A (incomplete pattern -> DomainError). Without an explicit
// field the vector's field follows the pattern; pass the ambient space's
// field when the result is combined with vectors of that space, since
// mixed-field arithmetic is an error. A non-real pattern in a real field
// throws FieldError.
CoeffVector indicator(FieldTag field, int dim, const IndexSet& A, const SignPattern& eps);
CoeffVector indicator(FieldTag field, int dim, const IndexSet& A);
CoeffVector indicator(int dim, const IndexSet& A, const SignPattern& eps);
CoeffVector indicator(int dim, const IndexSet& A);  // eps identically +1

struct HullTerm {
    double weight = 0.0;
    SignPattern signs;  // unimodular on A
};

// Writes z (supported inside A, |z|_inf <= 1) as a convex combination of
// signed indicators 1_{eps A}: z = sum weight_j * 1_{eps_j A}. Inductive
// halving over the coordinates of A, so at most 2^|A| terms; zero-weight
// terms are dropped. Guard: |A| <= 20. Violations of the domain
// (|z|_inf > 1 or support outside A) -> DomainError.
std::vector<HullTerm> hull_decompose(const CoeffVector& z, const IndexSet& A);

// Convenience: sum weight_j * 1_{eps_j A}, for checking decompositions.
CoeffVector hull_recombine(int dim, const IndexSet& A, const std::vector<HullTerm>& terms);

}  // namespace greedylab
