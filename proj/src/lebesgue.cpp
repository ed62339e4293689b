#include "greedylab/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "greedylab/combinatorics.hpp"
#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/solvers.hpp"

namespace greedylab {

namespace {

constexpr double kDenominatorFloor = 1e-14;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Complex unit_sign(Complex v) {
    double m = std::abs(v);
    return m > 0.0 ? v / m : Complex(1.0);
}

// lexicographic unranking of a size-k combination of positions 0..m-1
std::vector<int> unrank_combination(int m, int k, uint64_t rank) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    int c = 0;
    for (int r = k; r > 0; --r) {
        while (true) {
            uint64_t block = binomial(m - c - 1, r - 1);
            if (rank < block) break;
            rank -= block;
            ++c;
        }
        out.push_back(c);
        ++c;
    }
    return out;
}

IndexSet labels_at(const std::vector<int>& base, const std::vector<int>& positions) {
    std::vector<int> labels;
    labels.reserve(positions.size());
    for (int p : positions) labels.push_back(base[static_cast<size_t>(p)]);
    return IndexSet(labels);
}

std::vector<int> all_labels(int dim) {
    std::vector<int> v(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] = i + 1;
    return v;
}

// smallest labels outside `used`, at most `want` of them
std::vector<int> fresh_labels(int dim, const std::vector<int>& used, int want) {
    std::vector<char> mask(static_cast<size_t>(dim) + 1, 0);
    for (int u : used) mask[static_cast<size_t>(u)] = 1;
    std::vector<int> out;
    for (int i = 1; i <= dim && static_cast<int>(out.size()) < want; ++i)
        if (!mask[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

std::vector<int> merge_labels(std::initializer_list<const std::vector<int>*> lists) {
    std::vector<int> out;
    for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

SigmaTildeResult sigma_tilde(const Space& space, const CoeffVector& x, int N, ExecPolicy policy) {
    if (x.dim() != space.dim()) throw DomainError("vector dimension does not match the space");
    if (N < 0) throw DomainError("negative order");
    int d = space.dim();
    int N_eff = std::min(N, d);
    std::vector<int> supp = x.support();
    int m = static_cast<int>(supp.size());
    int s_hi = std::min(N_eff, m);
    if (subset_count_up_to(m, s_hi) > kSupportScanGuard)
        throw RangeError("projection-error scan would visit more than " +
                         std::to_string(kSupportScanGuard) + " supports");

    double norm_x = space.norm(x);
    struct SizeBest {
        double value = 0.0;
        IndexSet A;
    };
    std::vector<SizeBest> by_size(static_cast<size_t>(s_hi) + 1);
    by_size[0] = {norm_x, IndexSet{}};
    for (int s = 1; s <= s_hi; ++s) {
        auto count = static_cast<int64_t>(binomial(m, s));
        auto r = reduce_max(
            count,
            [&](int64_t i) {
                IndexSet A = labels_at(supp, unrank_combination(m, s, static_cast<uint64_t>(i)));
                return -space.norm(project_complement(x, A));
            },
            policy);
        IndexSet A = labels_at(supp, unrank_combination(m, s, static_cast<uint64_t>(r.index)));
        by_size[static_cast<size_t>(s)] = {-r.value, A};
    }

    SigmaTildeResult result;
    result.best.value = by_size[0].value;
    result.best.support = by_size[0].A;
    result.best.exact = true;
    for (int s = 1; s <= s_hi; ++s) {
        if (by_size[static_cast<size_t>(s)].value < result.best.value) {
            result.best.value = by_size[static_cast<size_t>(s)].value;
            result.best.support = by_size[static_cast<size_t>(s)].A;
        }
    }
    result.best.minimizer = project(x, result.best.support);

    int s_lo = std::max(0, N_eff - (d - m));
    result.exactly_N.exact = true;
    bool first = true;
    for (int s = s_lo; s <= s_hi; ++s) {
        const auto& sb = by_size[static_cast<size_t>(s)];
        if (first || sb.value < result.exactly_N.value) {
            result.exactly_N.value = sb.value;
            result.exactly_N.support = sb.A;
            first = false;
        }
    }
    std::vector<int> padded = result.exactly_N.support.labels();
    auto pad = fresh_labels(d, padded, N_eff - static_cast<int>(padded.size()));
    padded.insert(padded.end(), pad.begin(), pad.end());
    result.exactly_N.support = IndexSet(padded);
    result.exactly_N.minimizer = project(x, result.exactly_N.support);
    return result;
}

ApproxResult sigma(const Space& space, const CoeffVector& x, int N,
                   const std::optional<CoeffVector>& witness_z, ExecPolicy policy) {
    if (x.dim() != space.dim()) throw DomainError("vector dimension does not match the space");
    if (N < 0) throw DomainError("negative order");
    if (witness_z) {
        if (witness_z->dim() != space.dim())
            throw DomainError("witness dimension does not match the space");
        if (static_cast<int>(witness_z->support().size()) > N)
            throw DomainError("witness support exceeds the approximation order");
    }
    int d = space.dim();
    int N_eff = std::min(N, d);

    ApproxResult result;
    if (N_eff == d) {
        result.value = 0.0;
        result.support = IndexSet(all_labels(d));
        result.minimizer = x;
        result.exact = true;
    } else if (N_eff == 0) {
        result.value = space.norm(x);
        result.minimizer = space.zero();
        result.exact = true;
    } else {
        uint64_t count = binomial(d, N_eff);
        if (count > kSupportScanGuard)
            throw RangeError("approximation scan would visit more than " +
                             std::to_string(kSupportScanGuard) + " supports");
        auto family = space.polyhedral();
        if (!family) {
            double evals = 1.0 + 4.0 * N_eff * (space.field() == FieldTag::Complex ? 2.0 : 1.0);
            double est = static_cast<double>(count) * 2000.0 * evals * space.norm_work();
            if (est > kSigmaWorkGuard)
                throw RangeError("approximation descent would need about " +
                                 std::to_string(static_cast<uint64_t>(est)) +
                                 " operations; the guard is " +
                                 std::to_string(static_cast<uint64_t>(kSigmaWorkGuard)));
        }
        auto labels = all_labels(d);
        auto solve_at = [&](int64_t i) {
            IndexSet A = labels_at(labels, unrank_combination(d, N_eff, static_cast<uint64_t>(i)));
            if (family) return polyhedral_inner_solve(*family, x, A);
            uint64_t seed = 0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(i) + 1) + 12345;
            return subgradient_inner_solve(space, x, A, 500, 4, seed);
        };
        auto r = reduce_max(
            static_cast<int64_t>(count), [&](int64_t i) { return -solve_at(i).value; }, policy);
        auto winner = solve_at(r.index);
        result.value = winner.value;
        result.support =
            labels_at(labels, unrank_combination(d, N_eff, static_cast<uint64_t>(r.index)));
        result.minimizer = winner.minimizer;
        result.exact = family.has_value() && winner.exact;
    }

    if (witness_z) {
        double wv = space.norm(x - *witness_z);
        if (wv < result.value) {
            result.value = wv;
            result.support = IndexSet(witness_z->support());
            result.minimizer = *witness_z;
        }
    }
    return result;
}

namespace {

// Lower-bound feeds built from the constant table's extremal witnesses. Each
// feed produces a vector, a verified greedy set and a feasible approximant;
// the ratio machinery below does the rest, so a feed only needs to be sound,
// not sharp.

void push_feed(std::vector<LebesgueWitness>& out, const CoeffVector& x, const IndexSet& gamma,
               std::optional<CoeffVector> z, int N, std::string description) {
    if (gamma.size() != N) return;
    if (!is_greedy_set(x, gamma)) return;
    if (z && static_cast<int>(z->support().size()) > N) return;
    out.push_back({x, gamma, std::move(z), std::move(description)});
}

// witness (x, A) for || (I - P_A) x || / ||x||: inflate x on A so A becomes
// greedy, pad to order N with fresh coordinates at the inflated level; the
// inflated part is itself a feasible approximant, leaving ||x|| downstairs.
void feed_from_projection(std::vector<LebesgueWitness>& out, const Space& space, int N,
                          const ConstantTable& table) {
    if (!table.has(ConstantKind::k_c, N)) return;
    const auto& w = table.at(ConstantKind::k_c, N).witness;
    if (!w.x || !w.A || w.A->empty() || w.A->size() > N) return;
    const CoeffVector& x = *w.x;
    if (x.dim() != space.dim() || x.is_zero()) return;
    double beta = 2.0 * x.linf();
    CoeffVector y = x;
    CoeffVector z = space.zero();
    for (int n : w.A->labels()) {
        Complex bump = beta * unit_sign(x.at(n));
        y.set(n, x.at(n) + bump);
        z.set(n, bump);
    }
    auto x_supp = x.support();
    auto used = merge_labels({&x_supp, &w.A->labels()});
    auto C = fresh_labels(space.dim(), used, N - w.A->size());
    for (int c : C) {
        y.set(c, beta);
        z.set(c, beta);
    }
    push_feed(out, y, w.A->set_union(IndexSet(C)), z, N,
              "inflated projection witness (" + w.description + ")");
}

// witness (x, G) for || (I - P_G) x || / ||x||: pad the greedy set to order N
// with zero coordinates of x raised to the smallest kept modulus.
void feed_from_greedy_complement(std::vector<LebesgueWitness>& out, const Space& space, int N,
                                 const ConstantTable& table) {
    if (!table.has(ConstantKind::g_c, N)) return;
    const auto& w = table.at(ConstantKind::g_c, N).witness;
    if (!w.x || !w.A || w.A->empty() || w.A->size() > N) return;
    const CoeffVector& x = *w.x;
    if (x.dim() != space.dim() || x.is_zero()) return;
    double alpha = std::numeric_limits<double>::infinity();
    for (int n : w.A->labels()) alpha = std::min(alpha, x.modulus(n));
    std::vector<int> zeros;
    for (int i = 1; i <= space.dim(); ++i)
        if (x.modulus(i) == 0.0 && !w.A->contains(i)) zeros.push_back(i);
    zeros.resize(static_cast<size_t>(std::min<int>(static_cast<int>(zeros.size()),
                                                   N - w.A->size())));
    CoeffVector y = x;
    CoeffVector z = space.zero();
    for (int c : zeros) {
        y.set(c, alpha);
        z.set(c, alpha);
    }
    push_feed(out, y, w.A->set_union(IndexSet(zeros)), z, N,
              "padded greedy-complement witness (" + w.description + ")");
}

// democracy pair (numerator set Anum, denominator set Aden): the all-ones
// vector over both sets plus fresh padding; greedily remove Aden \ Anum and
// the padding, leaving 1_{Anum} upstairs and 1_{Aden} reachable downstairs.
void feed_from_pair(std::vector<LebesgueWitness>& out, const Space& space, int N,
                    const ConstantTable& table, ConstantKind kind) {
    if (!table.has(kind, N)) return;
    const auto& w = table.at(kind, N).witness;
    if (!w.A || !w.B || w.A->empty() || w.A->size() != w.B->size() || w.A->size() > N) return;
    const IndexSet& num_set = *w.A;
    const IndexSet& den_set = *w.B;
    IndexSet den_only = den_set.set_difference(num_set);
    auto used = merge_labels({&num_set.labels(), &den_set.labels()});
    auto C = fresh_labels(space.dim(), used, N - den_only.size());
    std::vector<int> support = used;
    support.insert(support.end(), C.begin(), C.end());
    CoeffVector x = indicator(space.field(), space.dim(), IndexSet(support));
    CoeffVector z = indicator(space.field(), space.dim(),
                              num_set.set_difference(den_set).set_union(IndexSet(C)));
    push_feed(out, x, den_only.set_union(IndexSet(C)), z, N,
              "equal-coefficient feed from the " + to_string(kind) + " extremal pair");
}

// signed democracy pair: same idea, but the numerator set is split into the
// two classes that agree / disagree with the denominator signs, each class
// handled on its own (real coefficients only).
void feed_from_signed_pair(std::vector<LebesgueWitness>& out, const Space& space, int N,
                           const ConstantTable& table, ConstantKind kind) {
    if (space.field() != FieldTag::Real) return;
    if (!table.has(kind, N)) return;
    const auto& w = table.at(kind, N).witness;
    if (!w.A || !w.B || !w.eps || !w.eta) return;
    if (w.A->empty() || w.A->size() != w.B->size() || w.A->size() > N) return;
    const IndexSet& num_set = *w.A;   // carries eps
    const IndexSet& den_set = *w.B;   // carries eta
    std::vector<int> cls_pos, cls_neg;
    for (int n : num_set.labels()) {
        double s = w.eps->at(n).real();
        if (den_set.contains(n)) s *= w.eta->at(n).real();
        (s > 0 ? cls_pos : cls_neg).push_back(n);
    }
    for (const auto& cls : {cls_pos, cls_neg}) {
        if (cls.empty()) continue;
        IndexSet Bs(cls);
        IndexSet outside = Bs.set_difference(den_set);
        IndexSet removed = den_set.set_difference(Bs);
        auto used = merge_labels({&num_set.labels(), &den_set.labels()});
        auto C = fresh_labels(space.dim(), used, N - removed.size());
        CoeffVector y(FieldTag::Real, space.dim());
        for (int n : outside.labels()) y.set(n, 1.0);
        for (int n : den_set.labels()) y.set(n, w.eta->at(n));
        for (int c : C) y.set(c, 1.0);
        CoeffVector z(FieldTag::Real, space.dim());
        for (int n : outside.labels()) z.set(n, 1.0);
        for (int c : C) z.set(c, 1.0);
        push_feed(out, y, removed.set_union(IndexSet(C)), z, N,
                  "sign-class feed from the " + to_string(kind) + " extremal pair");
    }
}

// full convexity-style witness (A, B, eps, eta, x): all three pieces live on
// the same vector; removing B and the padding leaves the numerator side.
void feed_from_convexity(std::vector<LebesgueWitness>& out, const Space& space, int N,
                         const ConstantTable& table) {
    if (!table.has(ConstantKind::nu, N)) return;
    const auto& w = table.at(ConstantKind::nu, N).witness;
    if (!w.A || !w.B || !w.eps || !w.eta || !w.x) return;
    if (w.A->empty() || w.A->size() != w.B->size() || w.A->size() > N) return;
    if (w.x->dim() != space.dim()) return;
    auto x_supp = w.x->support();
    auto used = merge_labels({&w.A->labels(), &w.B->labels(), &x_supp});
    auto C = fresh_labels(space.dim(), used, N - w.A->size());
    CoeffVector y = *w.x;
    CoeffVector z = space.zero();
    for (int n : w.A->labels()) {
        y.set(n, w.eps->at(n));
        z.set(n, w.eps->at(n));
    }
    for (int n : w.B->labels()) y.set(n, w.eta->at(n));
    for (int c : C) {
        y.set(c, 1.0);
        z.set(c, 1.0);
    }
    push_feed(out, y, w.B->set_union(IndexSet(C)), z, N,
              "signed-indicator convexity feed (" + w.description + ")");
}

}  // namespace

LebesgueLower lebesgue_lower(const Space& space, int N, const ConstantTable& table,
                             const std::vector<LebesgueWitness>& witnesses, ExecPolicy policy) {
    if (N < 1) throw DomainError("order must be positive");
    std::vector<LebesgueWitness> pool;
    for (const auto& w : witnesses) {
        if (w.x.dim() != space.dim())
            throw DomainError("witness dimension does not match the space");
        if (w.gamma.size() != N)
            throw DomainError("witness greedy set must have exactly N elements");
        if (!is_greedy_set(w.x, w.gamma))
            throw DomainError("witness set is not a greedy set for its vector");
        if (w.z) {
            if (w.z->dim() != space.dim())
                throw DomainError("witness approximant dimension does not match the space");
            if (static_cast<int>(w.z->support().size()) > N)
                throw DomainError("witness approximant support exceeds the order");
        }
        pool.push_back(w);
    }
    feed_from_projection(pool, space, N, table);
    feed_from_greedy_complement(pool, space, N, table);
    feed_from_pair(pool, space, N, table, ConstantKind::mu);
    feed_from_pair(pool, space, N, table, ConstantKind::mu_d);
    feed_from_signed_pair(pool, space, N, table, ConstantKind::tmu);
    feed_from_signed_pair(pool, space, N, table, ConstantKind::tmu_d);
    feed_from_convexity(pool, space, N, table);

    LebesgueLower result;
    for (const auto& w : pool) {
        double num = space.norm(project_complement(w.x, w.gamma));
        double den_tilde = -1.0;
        try {
            den_tilde = sigma_tilde(space, w.x, N, policy).best.value;
        } catch (const RangeError&) {
        }
        double den_L = den_tilde;
        try {
            auto s = sigma(space, w.x, N, w.z, policy);
            den_L = den_L < 0.0 ? s.value : std::min(den_L, s.value);
        } catch (const RangeError&) {
            if (w.z) {
                double wv = space.norm(w.x - *w.z);
                den_L = den_L < 0.0 ? wv : std::min(den_L, wv);
            }
        }
        if (den_tilde > kDenominatorFloor) {
            double ratio = num / den_tilde;
            if (ratio > result.L_tilde) {
                result.L_tilde = ratio;
                result.L_tilde_witness = w.description + ", ratio " + fmt(ratio);
            }
        }
        if (den_L > kDenominatorFloor) {
            double ratio = num / den_L;
            if (ratio > result.L) {
                result.L = ratio;
                result.L_witness = w.description + ", ratio " + fmt(ratio);
            }
        }
    }
    if (result.L < result.L_tilde) {
        result.L = result.L_tilde;
        result.L_witness = result.L_tilde_witness + " (projection minimizer reused)";
    }
    return result;
}

namespace {

struct UpperCandidate {
    std::string name;
    double value = 0.0;
    std::string detail;
};

void add_candidate(std::vector<UpperCandidate>& v, std::string name, double value,
                   std::string detail) {
    v.push_back({std::move(name), value, std::move(detail)});
}

double finish_side(std::vector<BoundCertificate>& certs, std::vector<UpperCandidate>& cands) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) best = std::min(best, c.value);
    bool marked = false;
    for (auto& c : cands) {
        BoundCertificate cert;
        cert.name = c.name;
        cert.lhs = best;
        cert.rhs = c.value;
        cert.detail = c.detail;
        bool binding = !marked && c.value <= best * (1 + 1e-12);
        if (binding) {
            cert.status = CertificateStatus::Equality;
            cert.detail += "; binding";
            marked = true;
        }
        certs.push_back(std::move(cert));
    }
    return best;
}

}  // namespace

LebesgueUpper theorem_upper_bounds(const Space& space, int N, const ConstantTable& table) {
    if (N < 1) throw DomainError("order must be positive");
    const auto& meta = space.meta();
    double kappa = space.field() == FieldTag::Real ? 1.0 : 2.0;
    double kc2 = table.upper(space, ConstantKind::k_c, 2 * N);
    double kc = table.upper(space, ConstantKind::k_c, N);
    double gc = table.upper(space, ConstantKind::g_c, N);
    double gt = table.upper(space, ConstantKind::g_tilde, N);
    double ghat = table.upper(space, ConstantKind::g_hat, N);
    double gam = table.upper(space, ConstantKind::gamma, N);
    double mu = table.upper(space, ConstantKind::mu, N);
    double tmu = table.upper(space, ConstantKind::tmu, N);
    double nu = table.upper(space, ConstantKind::nu, N);
    double cor = 8.0 * kappa * kappa * ghat * mu;

    std::vector<UpperCandidate> Lc, Tc;
    add_candidate(Lc, "L <= 1 + 3 K N", 1.0 + 3.0 * meta.K * N,
                  "K = " + fmt(meta.K) + ", N = " + std::to_string(N));
    add_candidate(Lc, "L <= k_c(2N) nu(N)", kc2 * nu,
                  "k_c(2N) = " + fmt(kc2) + ", nu(N) = " + fmt(nu));
    add_candidate(Lc, "L <= k_c(N) g_c(N) nu(N)", kc * gc * nu,
                  "k_c(N) = " + fmt(kc) + ", g_c(N) = " + fmt(gc) + ", nu(N) = " + fmt(nu));
    add_candidate(Lc, "L <= k_c(2N) + g~(N) tmu(N)", kc2 + gt * tmu,
                  "k_c(2N) = " + fmt(kc2) + ", g~(N) = " + fmt(gt) + ", tmu(N) = " + fmt(tmu));
    add_candidate(Lc, "L <= k_c(N) g_c(N) + g~(N) tmu(N)", kc * gc + gt * tmu,
                  "k_c(N) g_c(N) = " + fmt(kc * gc) + ", g~(N) tmu(N) = " + fmt(gt * tmu));
    add_candidate(Lc, "L <= k_c(2N) + 8 kappa^2 ghat(N)^2 mu(N)", kc2 + cor * ghat,
                  "ghat(N) = " + fmt(ghat) + ", mu(N) = " + fmt(mu) + ", kappa = " + fmt(kappa));
    add_candidate(Lc, "L <= k_c(2N) + 8 kappa^2 gamma(N) ghat(N) mu(N)", kc2 + cor * gam,
                  "gamma(N) = " + fmt(gam) + ", ghat(N) = " + fmt(ghat) +
                      ", mu(N) = " + fmt(mu));

    add_candidate(Tc, "L~ <= 1 + 2 K N", 1.0 + 2.0 * meta.K * N,
                  "K = " + fmt(meta.K) + ", N = " + std::to_string(N));
    add_candidate(Tc, "L~ <= g_c(N) nu(N)", gc * nu,
                  "g_c(N) = " + fmt(gc) + ", nu(N) = " + fmt(nu));
    add_candidate(Tc, "L~ <= g_c(N) + g~(N) tmu(N)", gc + gt * tmu,
                  "g_c(N) = " + fmt(gc) + ", g~(N) tmu(N) = " + fmt(gt * tmu));
    add_candidate(Tc, "L~ <= g_c(N) + 8 kappa^2 ghat(N)^2 mu(N)", gc + cor * ghat,
                  "ghat(N) = " + fmt(ghat) + ", mu(N) = " + fmt(mu));
    add_candidate(Tc, "L~ <= g_c(N) + 8 kappa^2 gamma(N) ghat(N) mu(N)", gc + cor * gam,
                  "gamma(N) = " + fmt(gam) + ", ghat(N) = " + fmt(ghat) +
                      ", mu(N) = " + fmt(mu));

    LebesgueUpper result;
    bool suppression = kc <= 1.0 + 1e-9;
    if (suppression) {
        add_candidate(Lc, "L = nu(N) under k_c(N) = 1", nu, "k_c(N) = " + fmt(kc));
        add_candidate(Tc, "L~ = nu(N) under k_c(N) = 1", nu, "k_c(N) = " + fmt(kc));
    }

    double L_direct = std::numeric_limits<double>::infinity();
    for (const auto& c : Lc) L_direct = std::min(L_direct, c.value);
    add_candidate(Tc, "L~ <= L", L_direct, "best direct bound on L = " + fmt(L_direct));
    double T_best = std::numeric_limits<double>::infinity();
    for (const auto& c : Tc) T_best = std::min(T_best, c.value);
    add_candidate(Lc, "L <= k_c(N) L~", kc * T_best,
                  "k_c(N) = " + fmt(kc) + ", best bound on L~ = " + fmt(T_best));

    result.L = finish_side(result.certificates, Lc);
    result.L_tilde = finish_side(result.certificates, Tc);
    if (suppression) {
        result.exact_by_suppression = true;
        BoundCertificate eq;
        eq.name = "L = L~ = nu(N)";
        eq.lhs = nu;
        eq.rhs = nu;
        eq.status = CertificateStatus::Equality;
        eq.detail = "suppression of a greedy set never increases the norm (k_c(N) = " + fmt(kc) +
                    "), so both Lebesgue-type constants collapse to nu(N) = " + fmt(nu);
        result.certificates.push_back(std::move(eq));
    }
    return result;
}

LebesgueSandwich lebesgue_sandwich(const Space& space, int N, const ConstantTable& table,
                                   const std::vector<LebesgueWitness>& witnesses,
                                   ExecPolicy policy) {
    LebesgueSandwich s;
    s.N = N;
    s.lower = lebesgue_lower(space, N, table, witnesses, policy);
    s.upper = theorem_upper_bounds(space, N, table);
    return s;
}

namespace {

struct CheckContext {
    const Space& space;
    const ConstantTable& table;
    double tolerance;
    LemmaSuiteResult& result;

    void record(const std::string& name, double lhs, double rhs, const std::string& detail) {
        ++result.checks;
        if (lhs > rhs + tolerance * std::max(1.0, std::abs(rhs))) {
            BoundCertificate c;
            c.name = name;
            c.lhs = lhs;
            c.rhs = rhs;
            c.status = CertificateStatus::Violated;
            c.detail = detail;
            result.violations.push_back(std::move(c));
        }
    }
};

Complex random_sign(std::mt19937_64& rng, bool real_field) {
    if (real_field) return (rng() & 1) ? Complex(1.0) : Complex(-1.0);
    double angle = 2.0 * M_PI * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return Complex(std::cos(angle), std::sin(angle));
}

SignPattern random_pattern(std::mt19937_64& rng, const IndexSet& on, bool real_field) {
    SignPattern p;
    for (int n : on.labels()) p.set(n, random_sign(rng, real_field));
    return p;
}

SignPattern argument_pattern(const CoeffVector& x, const IndexSet& on) {
    SignPattern p;
    for (int n : on.labels()) p.set(n, unit_sign(x.at(n)));
    return p;
}

CoeffVector sample_vector(std::mt19937_64& rng, const Space& space, int mode, int N) {
    int d = space.dim();
    bool real_field = space.field() == FieldTag::Real;
    CoeffVector x(space.field(), d);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    if (mode == 0) {
        for (int i = 1; i <= d; ++i)
            x.set(i, real_field ? Complex(u(rng)) : Complex(u(rng), u(rng)));
    } else if (mode == 1) {
        // quarter-integer grid, deliberately rich in modulus ties
        for (int i = 1; i <= d; ++i) {
            double m = 0.25 * static_cast<double>(rng() % 5);
            x.set(i, m * random_sign(rng, real_field));
        }
    } else {
        int s = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(d, 3 * N)));
        std::vector<int> labels = all_labels(d);
        std::shuffle(labels.begin(), labels.end(), rng);
        for (int j = 0; j < s; ++j) {
            double m = (rng() & 1) ? 1.0 : 0.5;
            x.set(labels[static_cast<size_t>(j)], m * random_sign(rng, real_field));
        }
    }
    if (x.is_zero()) x.set(1, 1.0);
    return x;
}

IndexSet random_subset(std::mt19937_64& rng, int dim, int size) {
    std::vector<int> labels = all_labels(dim);
    std::shuffle(labels.begin(), labels.end(), rng);
    labels.resize(static_cast<size_t>(size));
    return IndexSet(labels);
}

IndexSet lex_greedy_set(const CoeffVector& x, int N) {
    std::vector<int> labels = all_labels(x.dim());
    std::stable_sort(labels.begin(), labels.end(),
                     [&](int a, int b) { return x.modulus(a) > x.modulus(b); });
    labels.resize(static_cast<size_t>(N));
    return IndexSet(labels);
}

}  // namespace

LemmaSuiteResult lemma_suite(const Space& space, int N_max, const ConstantTable& table,
                             uint64_t samples, uint64_t seed, double tolerance,
                             const std::optional<LebesgueSandwich>& sandwich) {
    if (N_max < 1) throw DomainError("order must be positive");
    int d = space.dim();
    bool real_field = space.field() == FieldTag::Real;
    double kappa = real_field ? 1.0 : 2.0;
    LemmaSuiteResult result;
    result.samples = samples;
    CheckContext ctx{space, table, tolerance, result};
    std::mt19937_64 rng(seed);

    auto up = [&](ConstantKind kind, int n) { return table.upper(space, kind, n); };

    for (uint64_t i = 0; i < samples; ++i) {
        int N = 1 + static_cast<int>(i % static_cast<uint64_t>(std::min(N_max, d)));
        CoeffVector x = sample_vector(rng, space, static_cast<int>(i % 3), N);
        double norm_x = space.norm(x);
        std::string tag = "sample " + std::to_string(i) + ", order " + std::to_string(N);

        std::vector<IndexSet> greedy;
        try {
            auto fam = greedy_sets(x, N);
            size_t take = std::min<size_t>(fam.sets.size(), 50);
            greedy.assign(fam.sets.begin(), fam.sets.begin() + static_cast<ptrdiff_t>(take));
        } catch (const SizeError&) {
            greedy.push_back(lex_greedy_set(x, N));
        }
        double gt_up = up(ConstantKind::g_tilde, N);
        double pair_up = 2.0 * std::min(up(ConstantKind::g, N), up(ConstantKind::g_c, N));
        for (const auto& G : greedy) {
            double alpha = std::numeric_limits<double>::infinity();
            for (int n : G.labels()) alpha = std::min(alpha, x.modulus(n));
            double ind = space.norm(indicator(space.field(), d, G, argument_pattern(x, G)));
            ctx.record("abel: min coefficient times signed indicator", alpha * ind,
                       gt_up * norm_x, tag);
            ctx.record("abel variant: factor two through kept or dropped part", alpha * ind,
                       pair_up * norm_x, tag);
        }

        std::vector<double> mods;
        for (int n = 1; n <= d; ++n)
            if (x.modulus(n) > 0.0) mods.push_back(x.modulus(n));
        std::sort(mods.begin(), mods.end(), std::greater<>());
        mods.erase(std::unique(mods.begin(), mods.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   mods.end());
        for (int j : {1, (N + 1) / 2, N}) {
            if (j < 1 || j >= static_cast<int>(mods.size())) continue;
            double alpha = 0.5 * (mods[static_cast<size_t>(j) - 1] + mods[static_cast<size_t>(j)]);
            auto t = truncate(x, alpha);
            int r = t.lambda.size();
            if (r < 1) continue;
            ctx.record("truncation bounded by the greedy complement constant",
                       space.norm(t.value), up(ConstantKind::g_c, r) * norm_x,
                       tag + ", alpha = " + fmt(alpha));
            ctx.record("truncation complement bounded by the greedy constant",
                       space.norm(x - t.value), up(ConstantKind::g, r) * norm_x,
                       tag + ", alpha = " + fmt(alpha));
        }

        if (d >= 2) {
            IndexSet A = random_subset(rng, d, 1 + static_cast<int>(rng() % static_cast<uint64_t>(
                                                       std::min(N_max, d - 1))));
            CoeffVector y = project_complement(x, A);
            if (!y.is_zero()) {
                double alpha = 0.5 * y.linf();
                auto t = truncate(y, alpha);
                int r = t.lambda.size();
                if (r >= 1) {
                    ctx.record("truncated tail bounded through the union order",
                               space.norm(t.value),
                               up(ConstantKind::k_c, A.size() + r) * norm_x, tag);
                    ctx.record("truncated tail bounded through the product form",
                               space.norm(t.value),
                               up(ConstantKind::g_c, r) * up(ConstantKind::k_c, A.size()) * norm_x,
                               tag);
                }
            }
        }

        if (d >= 2) {
            int s = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(N_max, d / 2)));
            if (2 * s <= d) {
                std::vector<int> labels = all_labels(d);
                std::shuffle(labels.begin(), labels.end(), rng);
                IndexSet B(std::vector<int>(labels.begin(), labels.begin() + s));
                int zs = 1 + static_cast<int>(rng() % static_cast<uint64_t>(s));
                IndexSet Zs(std::vector<int>(labels.begin() + s, labels.begin() + s + zs));
                int left = d - s - zs;
                int xs = left > 0 ? static_cast<int>(rng() % static_cast<uint64_t>(left + 1)) : 0;
                CoeffVector x0(space.field(), d);
                std::uniform_real_distribution<double> u(-1.0, 1.0);
                for (int j = 0; j < xs; ++j) {
                    int n = labels[static_cast<size_t>(s + zs + j)];
                    x0.set(n, real_field ? Complex(u(rng)) : 0.7 * Complex(u(rng), u(rng)));
                }
                double alpha = x0.linf() * (1.0 + 0.5 * std::uniform_real_distribution<double>(
                                                            0.0, 1.0)(rng)) +
                               0.1;
                CoeffVector z(space.field(), d);
                for (int n : Zs.labels()) {
                    Complex v = real_field ? Complex(u(rng)) : Complex(u(rng), u(rng));
                    z.set(n, alpha * v / std::max(1.0, std::abs(v)));
                }
                CoeffVector comb = x0 + alpha * indicator(space.field(), d, B, random_pattern(rng, B, real_field));
                ctx.record("convexity: any admissible piece against the signed block",
                           space.norm(x0 + z), up(ConstantKind::nu, s) * space.norm(comb), tag);
            }
        }

        {
            int s = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(N_max, d)));
            IndexSet B = random_subset(rng, d, s);
            int zs = 1 + static_cast<int>(rng() % static_cast<uint64_t>(s));
            IndexSet Zs = random_subset(rng, d, zs);
            CoeffVector z(space.field(), d);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (int n : Zs.labels()) z.set(n, real_field ? Complex(u(rng)) : Complex(u(rng), u(rng)));
            if (!z.is_zero()) {
                double ind = space.norm(indicator(space.field(), d, B, random_pattern(rng, B, real_field)));
                ctx.record("squeeze: sparse vector against any same-size signed block",
                           space.norm(z), up(ConstantKind::tmu, s) * z.linf() * ind, tag);
            }
        }

        {
            int a = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(N_max, d)));
            IndexSet A = random_subset(rng, d, a);
            auto a_labels = A.labels();
            std::vector<int> b_labels;
            for (int n : a_labels)
                if (rng() & 1) b_labels.push_back(n);
            if (b_labels.empty()) b_labels.push_back(a_labels[0]);
            IndexSet B(b_labels);
            double lhs = space.norm(indicator(space.field(), d, B, random_pattern(rng, B, real_field)));
            double rhs = space.norm(indicator(space.field(), d, A, random_pattern(rng, A, real_field)));
            ctx.record("nested signed indicators through the subset ratio", lhs,
                       2.0 * kappa * up(ConstantKind::gamma, a) * rhs, tag);
        }
    }

    auto chain = [&](const std::string& name, double lhs, double rhs, const std::string& detail) {
        ++result.checks;
        BoundCertificate c;
        c.name = name;
        c.lhs = lhs;
        c.rhs = rhs;
        c.detail = detail;
        if (lhs > rhs + tolerance * std::max(1.0, std::abs(rhs)))
            c.status = CertificateStatus::Violated;
        else if (std::abs(lhs - rhs) <= tolerance * std::max(1.0, std::abs(rhs)))
            c.status = CertificateStatus::Equality;
        if (c.status == CertificateStatus::Violated) result.violations.push_back(c);
        result.chain_certificates.push_back(std::move(c));
    };

    for (int n = 1; n <= N_max; ++n) {
        std::string at = "order " + std::to_string(n);
        auto low = [&](ConstantKind kind) { return table.lower_or(kind, n, 0.0); };
        chain("g <= g~", low(ConstantKind::g), up(ConstantKind::g_tilde, n), at);
        chain("g~ <= 2 ghat", low(ConstantKind::g_tilde), 2.0 * up(ConstantKind::g_hat, n), at);
        chain("g~ <= g g_c", low(ConstantKind::g_tilde),
              up(ConstantKind::g, n) * up(ConstantKind::g_c, n), at);
        chain("g~ <= k", low(ConstantKind::g_tilde), up(ConstantKind::k, n), at);
        chain("max(tmu_d, mu) <= nu", std::max(low(ConstantKind::tmu_d), low(ConstantKind::mu)),
              up(ConstantKind::nu, n), at);
        chain("nu <= g_c + g tmu_d", low(ConstantKind::nu),
              up(ConstantKind::g_c, n) + up(ConstantKind::g, n) * up(ConstantKind::tmu_d, n), at);
        chain("gamma <= ghat", low(ConstantKind::gamma), up(ConstantKind::g_hat, n), at);
        chain("g_c <= k_c", low(ConstantKind::g_c), up(ConstantKind::k_c, n), at);
        chain("k_c <= 1 + K* N", low(ConstantKind::k_c), 1.0 + space.meta().Kstar * n, at);
        chain("k <= K* N", low(ConstantKind::k), space.meta().Kstar * n, at);
        if (table.has(ConstantKind::tmu, n) && table.has(ConstantKind::gamma, n) &&
            table.has(ConstantKind::mu, n) && table.at(ConstantKind::tmu, n).exact() &&
            table.at(ConstantKind::gamma, n).exact() && table.at(ConstantKind::mu, n).exact()) {
            chain("tmu <= 4 kappa^2 gamma mu", table.at(ConstantKind::tmu, n).upper,
                  4.0 * kappa * kappa * table.at(ConstantKind::gamma, n).upper *
                      table.at(ConstantKind::mu, n).upper,
                  at + ", all three enumerated exactly");
        }
    }

    if (sandwich) {
        int n = sandwich->N;
        std::string at = "order " + std::to_string(n);
        auto low = [&](ConstantKind kind) { return table.lower_or(kind, n, 0.0); };
        chain("k_c <= L", low(ConstantKind::k_c), sandwich->upper.L, at);
        chain("L~ <= L", sandwich->lower.L_tilde, sandwich->upper.L, at);
        chain("g_c <= L~", low(ConstantKind::g_c), sandwich->upper.L_tilde, at);
        chain("nu <= L~", low(ConstantKind::nu), sandwich->upper.L_tilde, at);
        chain("mu <= L~", low(ConstantKind::mu), sandwich->upper.L_tilde, at);
        if (real_field)
            chain("tmu / (2 kappa) <= L~", low(ConstantKind::tmu) / (2.0 * kappa),
                  sandwich->upper.L_tilde, at);
        chain("L <= k_c L~", sandwich->lower.L,
              up(ConstantKind::k_c, n) * sandwich->upper.L_tilde, at);
    }
    return result;
}

}  // namespace greedylab
