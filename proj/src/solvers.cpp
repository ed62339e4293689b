#include "greedylab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kVerifyTol = 1e-8;

double family_eval(const std::vector<double>& row, const CoeffVector& x) {
    double v = 0.0;
    for (int i = 1; i <= x.dim(); ++i)
        v += row[static_cast<size_t>(i) - 1] * x.at(i).real();
    return v;
}

double family_norm(const PolyhedralFamily& family, const CoeffVector& x) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& row : family.functionals) best = std::max(best, family_eval(row, x));
    return best;
}

// Dense tableau simplex, maximization in canonical form with Bland's rule.
// Columns 0..n-1 are the lambda variables, n..n+m-1 the artificials whose
// transformed columns carry B^{-1}; the objective row over those columns
// yields the simplex multipliers, which are exactly the primal (t, z).
class Simplex {
  public:
    Simplex(std::vector<std::vector<double>> rows, std::vector<double> rhs, int n_real)
        : n_(n_real), m_(static_cast<int>(rows.size())), rows_(std::move(rows)),
          rhs_(std::move(rhs)) {
        for (auto& row : rows_) row.resize(static_cast<size_t>(n_ + m_), 0.0);
        basis_.resize(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            rows_[static_cast<size_t>(i)][static_cast<size_t>(n_ + i)] = 1.0;
            basis_[static_cast<size_t>(i)] = n_ + i;
        }
    }

    // maximize c over the current feasible region; artificials can never
    // enter. Returns the optimal objective value.
    double maximize(const std::vector<double>& c) {
        cost_ = c;
        cost_.resize(static_cast<size_t>(n_ + m_), 0.0);
        rebuild_objective();
        while (true) {
            int enter = -1;
            for (int j = 0; j < n_; ++j) {  // Bland: smallest improving index
                if (obj_[static_cast<size_t>(j)] < -kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                double a = rows_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
                if (a <= kPivotTol) continue;
                double ratio = rhs_[static_cast<size_t>(i)] / a;
                if (leave < 0 || ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0)
                throw PrecisionError("inner solve: unbounded dual program");
            pivot(leave, enter);
        }
        return objective_value();
    }

    double objective_value() const {
        double v = 0.0;
        for (int i = 0; i < m_; ++i)
            v += cost_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] *
                 rhs_[static_cast<size_t>(i)];
        return v;
    }

    // simplex multiplier of row i (objective row entry over artificial i)
    double multiplier(int i) const {
        return obj_[static_cast<size_t>(n_ + i)] + cost_[static_cast<size_t>(n_ + i)];
    }

    double phase_one() {
        std::vector<double> c(static_cast<size_t>(n_ + m_), 0.0);
        for (int i = 0; i < m_; ++i) c[static_cast<size_t>(n_ + i)] = -1.0;
        // the artificials start basic, so let them leave but not re-enter
        cost_ = c;
        rebuild_objective();
        while (true) {
            int enter = -1;
            for (int j = 0; j < n_; ++j) {
                if (obj_[static_cast<size_t>(j)] < -kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                double a = rows_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
                if (a <= kPivotTol) continue;
                double ratio = rhs_[static_cast<size_t>(i)] / a;
                if (leave < 0 || ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw PrecisionError("inner solve: unbounded phase one");
            pivot(leave, enter);
        }
        return objective_value();
    }

    const std::vector<int>& basis() const { return basis_; }
    double basic_value(int i) const { return rhs_[static_cast<size_t>(i)]; }

  private:
    void rebuild_objective() {
        obj_.assign(static_cast<size_t>(n_ + m_), 0.0);
        for (int j = 0; j < n_ + m_; ++j) {
            double v = -cost_[static_cast<size_t>(j)];
            for (int i = 0; i < m_; ++i)
                v += cost_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] *
                     rows_[static_cast<size_t>(i)][static_cast<size_t>(j)];
            obj_[static_cast<size_t>(j)] = v;
        }
    }

    void pivot(int leave, int enter) {
        auto lr = static_cast<size_t>(leave);
        double p = rows_[lr][static_cast<size_t>(enter)];
        for (auto& v : rows_[lr]) v /= p;
        rhs_[lr] /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == leave) continue;
            auto ir = static_cast<size_t>(i);
            double f = rows_[ir][static_cast<size_t>(enter)];
            if (f == 0.0) continue;
            for (size_t j = 0; j < rows_[ir].size(); ++j) rows_[ir][j] -= f * rows_[lr][j];
            rhs_[ir] -= f * rhs_[lr];
        }
        double f = obj_[static_cast<size_t>(enter)];
        if (f != 0.0)
            for (size_t j = 0; j < obj_.size(); ++j) obj_[j] -= f * rows_[lr][j];
        basis_[lr] = enter;
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<double>> rows_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
    std::vector<double> cost_;
    std::vector<double> obj_;
};

}  // namespace

InnerSolveResult polyhedral_inner_solve(const PolyhedralFamily& family, const CoeffVector& x,
                                        const IndexSet& A) {
    if (family.functionals.empty()) throw DomainError("empty functional family");
    int dim = x.dim();
    for (const auto& row : family.functionals)
        if (static_cast<int>(row.size()) != dim)
            throw DomainError("functional length does not match the vector dimension");
    if (x.field() != FieldTag::Real) throw FieldError("polyhedral solve needs a real vector");

    InnerSolveResult result;
    result.minimizer = CoeffVector(FieldTag::Real, dim);
    if (A.empty()) {
        result.value = family_norm(family, x);
        result.exact = true;
        return result;
    }

    int n = static_cast<int>(family.functionals.size());
    int m = 1 + A.size();
    std::vector<std::vector<double>> rows(static_cast<size_t>(m),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    std::vector<double> rhs(static_cast<size_t>(m), 0.0);
    rhs[0] = 1.0;
    for (int j = 0; j < n; ++j) rows[0][static_cast<size_t>(j)] = 1.0;
    const auto& labels = A.labels();
    for (int i = 0; i < A.size(); ++i)
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(i) + 1][static_cast<size_t>(j)] =
                family.functionals[static_cast<size_t>(j)][static_cast<size_t>(labels[static_cast<size_t>(i)]) - 1];

    Simplex lp(std::move(rows), std::move(rhs), n);
    double feas = lp.phase_one();
    if (feas < -1e-7)
        throw PrecisionError("inner solve: dual program infeasible (family not symmetric?)");

    std::vector<double> c(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        c[static_cast<size_t>(j)] = family_eval(family.functionals[static_cast<size_t>(j)], x);
    double value = lp.maximize(c);

    // primal recovery from the multipliers: row 0 carries t, row 1+i carries
    // the coefficient of coordinate labels[i]
    CoeffVector z(FieldTag::Real, dim);
    for (int i = 0; i < A.size(); ++i)
        z.set(labels[static_cast<size_t>(i)], lp.multiplier(i + 1));
    CoeffVector residual = x - z;
    double achieved = family_norm(family, residual);

    result.minimizer = z;
    if (std::abs(achieved - value) <= kVerifyTol * std::max(1.0, std::abs(value))) {
        result.value = value;
        result.exact = true;
    } else {
        // keep soundness: report what the recovered point actually achieves
        result.value = achieved;
        result.exact = false;
    }
    return result;
}

InnerSolveResult subgradient_inner_solve(const Space& space, const CoeffVector& x,
                                         const IndexSet& A, int iters, int restarts,
                                         uint64_t seed, double tol) {
    if (x.dim() != space.dim()) throw DomainError("vector dimension does not match the space");
    bool complex_field = space.field() == FieldTag::Complex;
    const auto& labels = A.labels();

    auto objective = [&](const CoeffVector& z) { return space.norm(x - z); };

    InnerSolveResult result;
    result.minimizer = space.zero();
    result.value = objective(result.minimizer);
    result.exact = false;
    if (A.empty()) return result;

    double scale = std::max(x.linf(), 1e-6);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    for (int r = 0; r < restarts; ++r) {
        CoeffVector z = space.zero();
        if (r == 1) {
            for (int l : labels) z.set(l, x.at(l));
        } else if (r > 1) {
            for (int l : labels)
                z.set(l, complex_field ? Complex(scale * unif(rng), scale * unif(rng))
                                       : Complex(scale * unif(rng)));
        }
        double current = objective(z);
        if (current < result.value) {
            result.value = current;
            result.minimizer = z;
        }
        double stale_best = current;
        int stale = 0;
        for (int t = 1; t <= iters; ++t) {
            // numerical subgradient on the A coordinates
            double h = objective(z);
            double eps = 1e-6 * std::max(1.0, h);
            CoeffVector grad = space.zero();
            for (int l : labels) {
                CoeffVector zp = z, zm = z;
                zp.set(l, z.at(l) + Complex(eps));
                zm.set(l, z.at(l) - Complex(eps));
                double gre = (objective(zp) - objective(zm)) / (2 * eps);
                double gim = 0.0;
                if (complex_field) {
                    zp = z; zm = z;
                    zp.set(l, z.at(l) + Complex(0.0, eps));
                    zm.set(l, z.at(l) - Complex(0.0, eps));
                    gim = (objective(zp) - objective(zm)) / (2 * eps);
                }
                grad.set(l, Complex(gre, gim));
            }
            double gnorm = 0.0;
            for (int l : labels) gnorm += std::norm(grad.at(l));
            gnorm = std::sqrt(gnorm);
            if (gnorm < 1e-14) break;
            double step = scale / (gnorm * std::sqrt(static_cast<double>(t)));
            for (int l : labels) z.set(l, z.at(l) - step * grad.at(l));
            double v = objective(z);
            if (v < result.value) {
                result.value = v;
                result.minimizer = z;
            }
            if (v < stale_best - tol) {
                stale_best = v;
                stale = 0;
            } else if (++stale >= 200) {
                break;
            }
        }
    }
    return result;
}

InnerSolveResult inner_solve(const Space& space, const CoeffVector& x, const IndexSet& A) {
    if (auto family = space.polyhedral())
        return polyhedral_inner_solve(*family, x, A);
    return subgradient_inner_solve(space, x, A);
}

}  // namespace greedylab
