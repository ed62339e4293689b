#include "greedylab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>

#include "greedylab/combinatorics.hpp"
#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double upper_slack(double upper) { return 1e-12 * std::max(1.0, std::abs(upper)); }

bool meets_upper(double lower, double upper) {
    return std::isfinite(upper) && lower >= upper - upper_slack(upper);
}

int sign_root_count(const Space& space) {
    return space.field() == FieldTag::Real ? 2 : space.sign_discretization();
}

std::vector<Complex> sign_alphabet(const Space& space) {
    if (space.field() == FieldTag::Real) return {Complex(1.0), Complex(-1.0)};
    int m = space.sign_discretization();
    std::vector<Complex> v(static_cast<size_t>(m));
    for (int t = 0; t < m; ++t) {
        double a = 2.0 * M_PI * t / m;
        v[static_cast<size_t>(t)] = Complex(std::cos(a), std::sin(a));
    }
    return v;
}

double pow_double(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Tuple t in base m over slots 1..s-1; slot 0 is pinned to +1 because every
// sign pattern is a global phase away from one of this form and norms do not
// see global phases.
void decode_signs(uint64_t t, int m, const std::vector<Complex>& alphabet,
                  std::vector<Complex>& out) {
    if (out.empty()) return;
    out[0] = Complex(1.0);
    for (size_t j = 1; j < out.size(); ++j) {
        out[j] = alphabet[static_cast<size_t>(t % static_cast<uint64_t>(m))];
        t /= static_cast<uint64_t>(m);
    }
}

CoeffVector signed_indicator(const Space& space, const std::vector<int>& labels,
                             const std::vector<Complex>* signs) {
    CoeffVector v = space.zero();
    for (size_t i = 0; i < labels.size(); ++i)
        v.set(labels[i], signs ? (*signs)[i] : Complex(1.0));
    return v;
}

SignPattern pattern_from(const std::vector<int>& labels, const std::vector<Complex>& signs) {
    SignPattern p;
    for (size_t i = 0; i < labels.size(); ++i) p.set(labels[i], signs[i]);
    return p;
}

// ---------------------------------------------------------------------------
// upper-bound chains

struct UpperBound {
    double value = kInf;
    std::vector<std::string> sources;
};

void consider_upper(UpperBound& ub, double v, const std::string& why) {
    if (!std::isfinite(v)) return;
    double tol = 1e-12 * std::max(1.0, std::abs(v));
    if (v < ub.value - tol) {
        ub.value = v;
        ub.sources = {why};
    } else if (std::abs(v - ub.value) <= tol) {
        ub.sources.push_back(why);
    }
}

UpperBound upper_with_sources(const Space& space, ConstantKind kind, int N) {
    UpperBound ub;
    if (auto reg = space.registered_constant(kind, N))
        consider_upper(ub, reg->value, "registered: " + reg->citation);
    double kap2 = space.meta().kappa2;
    switch (kind) {
        case ConstantKind::k:
            consider_upper(ub, space.meta().Kstar * N, "coordinatewise bound: k <= K* N");
            break;
        case ConstantKind::k_c:
            consider_upper(ub, 1.0 + generic_upper_bound(space, ConstantKind::k, N),
                           "chain: k_c <= 1 + k");
            break;
        case ConstantKind::g:
            consider_upper(ub, generic_upper_bound(space, ConstantKind::k, N), "chain: g <= k");
            break;
        case ConstantKind::g_c:
            consider_upper(ub, generic_upper_bound(space, ConstantKind::k_c, N),
                           "chain: g_c <= k_c");
            break;
        case ConstantKind::g_hat:
            consider_upper(ub, generic_upper_bound(space, ConstantKind::g, N),
                           "chain: g_hat <= g");
            consider_upper(ub, generic_upper_bound(space, ConstantKind::g_c, N),
                           "chain: g_hat <= g_c");
            break;
        case ConstantKind::g_tilde: {
            double gh = generic_upper_bound(space, ConstantKind::g_hat, N);
            double gu = generic_upper_bound(space, ConstantKind::g, N);
            double gc = generic_upper_bound(space, ConstantKind::g_c, N);
            double ku = generic_upper_bound(space, ConstantKind::k, N);
            consider_upper(ub, 2.0 * gh, "chain: g_tilde <= 2 g_hat");
            consider_upper(ub, gu * gc, "chain: g_tilde <= g g_c");
            consider_upper(ub, ku, "chain: g_tilde <= k");
            break;
        }
        case ConstantKind::mu:
        case ConstantKind::mu_d:
        case ConstantKind::tmu:
        case ConstantKind::tmu_d:
            consider_upper(ub, kap2 * kap2 * N,
                           "norm bounds on signed indicators: kappa2^2 N");
            break;
        case ConstantKind::gamma:
            consider_upper(ub, kap2 * kap2 * N,
                           "norm bounds on signed indicators: kappa2^2 N");
            consider_upper(ub, generic_upper_bound(space, ConstantKind::g_hat, N),
                           "chain: gamma <= g_hat");
            break;
        case ConstantKind::nu: {
            double gc = generic_upper_bound(space, ConstantKind::g_c, N);
            double gu = generic_upper_bound(space, ConstantKind::g, N);
            double td = generic_upper_bound(space, ConstantKind::tmu_d, N);
            consider_upper(ub, gc + gu * td, "chain: nu <= g_c + g tmu_d");
            break;
        }
    }
    return ub;
}

// ---------------------------------------------------------------------------
// democracy enumeration

struct SizeTable {
    std::vector<std::vector<int>> sets;
    std::vector<uint64_t> masks;  // valid only when have_masks
    bool have_masks = false;
    std::vector<double> plain;
    std::vector<double> hi, lo;
    std::vector<std::vector<Complex>> hi_sign, lo_sign;
};

SizeTable build_size_table(const Space& space, int s, bool with_signs, ExecPolicy policy) {
    SizeTable table;
    for_each_combination(space.dim(), s, [&](const std::vector<int>& labels) {
        table.sets.push_back(labels);
    });
    size_t n = table.sets.size();
    table.have_masks = space.dim() <= 64;
    if (table.have_masks) {
        table.masks.resize(n);
        for (size_t i = 0; i < n; ++i) {
            uint64_t m = 0;
            for (int l : table.sets[i]) m |= uint64_t{1} << (l - 1);
            table.masks[i] = m;
        }
    }
    table.plain.resize(n);
    parallel_for(static_cast<int64_t>(n), [&](int64_t i) {
        table.plain[static_cast<size_t>(i)] =
            space.norm(signed_indicator(space, table.sets[static_cast<size_t>(i)], nullptr));
    }, policy);
    if (with_signs) {
        table.hi.assign(n, -kInf);
        table.lo.assign(n, kInf);
        table.hi_sign.resize(n);
        table.lo_sign.resize(n);
        int m = sign_root_count(space);
        auto alphabet = sign_alphabet(space);
        uint64_t tuples = 1;
        for (int j = 1; j < s; ++j) tuples *= static_cast<uint64_t>(m);
        parallel_for(static_cast<int64_t>(n), [&](int64_t i) {
            auto idx = static_cast<size_t>(i);
            std::vector<Complex> signs(static_cast<size_t>(s));
            for (uint64_t t = 0; t < tuples; ++t) {
                decode_signs(t, m, alphabet, signs);
                double v = space.norm(signed_indicator(space, table.sets[idx], &signs));
                if (v > table.hi[idx]) {
                    table.hi[idx] = v;
                    table.hi_sign[idx] = signs;
                }
                if (v < table.lo[idx]) {
                    table.lo[idx] = v;
                    table.lo_sign[idx] = signs;
                }
            }
        }, policy);
    }
    return table;
}

bool sets_disjoint(const SizeTable& table, size_t i, size_t j) {
    if (table.have_masks) return (table.masks[i] & table.masks[j]) == 0;
    const auto& a = table.sets[i];
    const auto& b = table.sets[j];
    size_t p = 0, q = 0;
    while (p < a.size() && q < b.size()) {
        if (a[p] == b[q]) return false;
        if (a[p] < b[q]) ++p; else ++q;
    }
    return true;
}

double democracy_work_estimate(const Space& space, int N, ConstantKind kind) {
    int d = space.dim();
    bool needs_signs = kind == ConstantKind::tmu || kind == ConstantKind::tmu_d ||
                       kind == ConstantKind::gamma;
    bool disjoint = kind == ConstantKind::mu_d || kind == ConstantKind::tmu_d;
    int m = sign_root_count(space);
    int s_max = std::min(N, disjoint ? d / 2 : d);
    double est = 0.0;
    for (int s = 1; s <= s_max; ++s) {
        double c = static_cast<double>(binomial(d, s));
        double signs = needs_signs ? pow_double(m, s - 1) : 1.0;
        est += c * signs;
        if (disjoint) est += c * c;
        if (kind == ConstantKind::gamma) est += c * signs * pow_double(2.0, s);
    }
    return est * space.norm_work();
}

}  // namespace

ConstantEstimate democracy_constant(const Space& space, int N, ConstantKind kind,
                                    ExecPolicy policy) {
    if (kind != ConstantKind::mu && kind != ConstantKind::mu_d && kind != ConstantKind::tmu &&
        kind != ConstantKind::tmu_d && kind != ConstantKind::gamma)
        throw DomainError("democracy_constant handles mu, mu_d, tmu, tmu_d, gamma only");
    if (N < 1) throw DomainError("order must be at least 1");
    int d = space.dim();
    bool real = space.field() == FieldTag::Real;
    bool needs_signs = kind == ConstantKind::tmu || kind == ConstantKind::tmu_d ||
                       kind == ConstantKind::gamma;
    bool disjoint = kind == ConstantKind::mu_d || kind == ConstantKind::tmu_d;
    double est = democracy_work_estimate(space, N, kind);
    if (est > static_cast<double>(kEnumerationGuard))
        throw RangeError(to_string(kind) + " enumeration at order " + std::to_string(N) +
                         " needs about " + std::to_string(static_cast<uint64_t>(est)) +
                         " operations; the guard is " + std::to_string(kEnumerationGuard));

    int s_max = std::min(N, disjoint ? d / 2 : d);
    double best = -kInf;
    ConstantWitness witness;
    int m = sign_root_count(space);
    auto alphabet = sign_alphabet(space);

    for (int s = 1; s <= s_max; ++s) {
        SizeTable table = build_size_table(space, s, needs_signs, policy);
        size_t n = table.sets.size();
        if (n == 0) continue;
        if (kind == ConstantKind::mu || kind == ConstantKind::tmu) {
            const std::vector<double>& num = kind == ConstantKind::mu ? table.plain : table.hi;
            const std::vector<double>& den = kind == ConstantKind::mu ? table.plain : table.lo;
            size_t arg_hi = 0, arg_lo = 0;
            for (size_t i = 1; i < n; ++i) {
                if (num[i] > num[arg_hi]) arg_hi = i;
                if (den[i] < den[arg_lo]) arg_lo = i;
            }
            if (den[arg_lo] > 0.0 && num[arg_hi] / den[arg_lo] > best) {
                best = num[arg_hi] / den[arg_lo];
                witness = ConstantWitness{};
                witness.A = IndexSet(table.sets[arg_hi]);
                witness.B = IndexSet(table.sets[arg_lo]);
                if (kind == ConstantKind::tmu) {
                    witness.eps = pattern_from(table.sets[arg_hi], table.hi_sign[arg_hi]);
                    witness.eta = pattern_from(table.sets[arg_lo], table.lo_sign[arg_lo]);
                }
                witness.description = "size " + std::to_string(s) +
                                      " indicator ratio from exhaustive enumeration";
            }
        } else if (kind == ConstantKind::mu_d || kind == ConstantKind::tmu_d) {
            const std::vector<double>& num = kind == ConstantKind::mu_d ? table.plain : table.hi;
            const std::vector<double>& den = kind == ConstantKind::mu_d ? table.plain : table.lo;
            int64_t count = static_cast<int64_t>(n) * static_cast<int64_t>(n);
            ReduceResult r = reduce_max(count, [&](int64_t idx) {
                auto i = static_cast<size_t>(idx / static_cast<int64_t>(n));
                auto j = static_cast<size_t>(idx % static_cast<int64_t>(n));
                if (i == j || !sets_disjoint(table, i, j)) return -kInf;
                if (!(den[j] > 0.0)) return -kInf;
                return num[i] / den[j];
            }, policy);
            if (r.found && r.value > best) {
                best = r.value;
                auto i = static_cast<size_t>(r.index / static_cast<int64_t>(n));
                auto j = static_cast<size_t>(r.index % static_cast<int64_t>(n));
                witness = ConstantWitness{};
                witness.A = IndexSet(table.sets[i]);
                witness.B = IndexSet(table.sets[j]);
                if (kind == ConstantKind::tmu_d) {
                    witness.eps = pattern_from(table.sets[i], table.hi_sign[i]);
                    witness.eta = pattern_from(table.sets[j], table.lo_sign[j]);
                }
                witness.description = "disjoint size " + std::to_string(s) +
                                      " indicator pair from exhaustive enumeration";
            }
        } else {  // gamma
            uint64_t tuples = 1;
            for (int j = 1; j < s; ++j) tuples *= static_cast<uint64_t>(m);
            int64_t count = static_cast<int64_t>(n) * static_cast<int64_t>(tuples);
            auto subset_best = [&](size_t set_idx, const std::vector<Complex>& signs,
                                   std::vector<int>* arg_b) {
                const auto& labels = table.sets[set_idx];
                double den = space.norm(signed_indicator(space, labels, &signs));
                if (!(den > 0.0)) return -kInf;
                double local = -kInf;
                std::vector<int> positions(labels.size());
                for (size_t j = 0; j < labels.size(); ++j) positions[j] = static_cast<int>(j);
                for_each_subset(positions, [&](const std::vector<int>& pos) {
                    if (pos.empty()) return;
                    std::vector<int> sub;
                    std::vector<Complex> sub_signs;
                    for (int pj : pos) {
                        sub.push_back(labels[static_cast<size_t>(pj)]);
                        sub_signs.push_back(signs[static_cast<size_t>(pj)]);
                    }
                    double v = space.norm(signed_indicator(space, sub, &sub_signs)) / den;
                    if (v > local) {
                        local = v;
                        if (arg_b) *arg_b = sub;
                    }
                });
                return local;
            };
            ReduceResult r = reduce_max(count, [&](int64_t idx) {
                auto set_idx = static_cast<size_t>(idx / static_cast<int64_t>(tuples));
                auto t = static_cast<uint64_t>(idx % static_cast<int64_t>(tuples));
                std::vector<Complex> signs(static_cast<size_t>(s));
                decode_signs(t, m, alphabet, signs);
                return subset_best(set_idx, signs, nullptr);
            }, policy);
            if (r.found && r.value > best) {
                best = r.value;
                auto set_idx = static_cast<size_t>(r.index / static_cast<int64_t>(tuples));
                auto t = static_cast<uint64_t>(r.index % static_cast<int64_t>(tuples));
                std::vector<Complex> signs(static_cast<size_t>(s));
                decode_signs(t, m, alphabet, signs);
                std::vector<int> arg_b;
                subset_best(set_idx, signs, &arg_b);
                witness = ConstantWitness{};
                witness.A = IndexSet(table.sets[set_idx]);
                witness.B = IndexSet(arg_b);
                witness.eps = pattern_from(table.sets[set_idx], signs);
                witness.description = "numerator over the subset, denominator over the full set, shared signs";
            }
        }
    }

    ConstantEstimate e;
    e.kind = kind;
    e.N = N;
    if (best > -kInf) {
        e.lower = best;
        e.witness = witness;
        if (real) {
            e.upper = best;
            e.citations.push_back("exhaustive enumeration over sets of size <= " +
                                  std::to_string(s_max));
        } else {
            UpperBound ub = upper_with_sources(space, kind, N);
            e.upper = ub.value;
            e.citations.push_back("sign grid on " + std::to_string(m) +
                                  "th roots of unity (lower bound only)");
            for (auto& sc : ub.sources) e.citations.push_back(sc);
        }
    } else {
        UpperBound ub = upper_with_sources(space, kind, N);
        e.lower = 0.0;
        e.upper = ub.value;
        e.citations.push_back("no admissible configuration at this dimension");
        for (auto& sc : ub.sources) e.citations.push_back(sc);
    }
    return e;
}

// ---------------------------------------------------------------------------
// operator constants

namespace {

// Ratio objective for one candidate x. `cheap` replaces the nested greedy
// difference scan of g_tilde by the plain greedy objective (a valid lower
// bound since the empty smaller set is admissible).
double operator_objective(const Space& space, int N, ConstantKind kind, const CoeffVector& x,
                          bool cheap, IndexSet* arg_out, std::string* note_out) {
    double nx = 0.0;
    try {
        nx = space.norm(x);
    } catch (const std::exception&) {
        return -kInf;
    }
    if (!(nx > 0.0)) return -kInf;
    int d = space.dim();
    int n_eff = std::min(N, d);
    double best = -kInf;
    auto track = [&](double v, const IndexSet& A, const char* note) {
        if (v > best) {
            best = v;
            if (arg_out) *arg_out = A;
            if (note_out) *note_out = note;
        }
    };
    if (kind == ConstantKind::k || kind == ConstantKind::k_c) {
        if (kind == ConstantKind::k_c) track(1.0, IndexSet{}, "empty set");
        std::vector<int> base(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) base[static_cast<size_t>(i)] = i + 1;
        for_each_subset_up_to(base, n_eff, [&](const std::vector<int>& labels) {
            CoeffVector y;
            if (kind == ConstantKind::k) {
                y = space.zero();
                for (int l : labels) y.set(l, x.at(l));
            } else {
                y = x;
                for (int l : labels) y.set(l, Complex(0.0));
            }
            track(space.norm(y) / nx, IndexSet(labels),
                  kind == ConstantKind::k ? "projection onto A" : "complement of A");
        });
        return best;
    }
    try {
        if (kind == ConstantKind::g_c) track(1.0, IndexSet{}, "empty greedy set");
        for (int ord = 1; ord <= n_eff; ++ord) {
            GreedyFamily family = greedy_sets(x, ord);
            for (const IndexSet& G : family.sets) {
                if (kind == ConstantKind::g ||
                    (kind == ConstantKind::g_tilde && cheap)) {
                    track(space.norm(project(x, G)) / nx, G, "greedy sum");
                } else if (kind == ConstantKind::g_c) {
                    track(space.norm(project_complement(x, G)) / nx, G, "greedy remainder");
                } else {  // g_tilde, full scan
                    for_each_subset(G.labels(), [&](const std::vector<int>& dlbl) {
                        if (dlbl.empty()) return;
                        IndexSet D(dlbl);
                        IndexSet rest = G.set_difference(D);
                        if (!rest.empty() && !is_greedy_set(x, rest)) return;
                        track(space.norm(project(x, D)) / nx, D,
                              "difference of nested greedy sums");
                    });
                }
            }
        }
    } catch (const SizeError&) {
        // tie families past the guard: keep whatever was scored so far
    }
    return best;
}

struct CandidateBest {
    double value = 0.0;
    bool found = false;
    CoeffVector x;
    IndexSet A;
    std::string note;
    std::string how;
};

void consider_candidate(const Space& space, int N, ConstantKind kind, const CoeffVector& x,
                        const std::string& how, CandidateBest& best) {
    double v = operator_objective(space, N, kind, x, false, nullptr, nullptr);
    if (v > best.value || (!best.found && v > -kInf)) {
        IndexSet arg;
        std::string note;
        double confirm = operator_objective(space, N, kind, x, false, &arg, &note);
        best.value = confirm;
        best.found = true;
        best.x = x;
        best.A = arg;
        best.note = note;
        best.how = how;
    }
}

CoeffVector decode_grid_vector(const Space& space, uint64_t idx,
                               const std::vector<double>& values) {
    CoeffVector x = space.zero();
    auto m = static_cast<uint64_t>(values.size());
    for (int i = 1; i <= space.dim(); ++i) {
        x.set(i, values[static_cast<size_t>(idx % m)]);
        idx /= m;
    }
    return x;
}

CoeffVector snap_vector(const CoeffVector& x, double step) {
    CoeffVector y = x;
    for (int i = 1; i <= x.dim(); ++i) {
        Complex v = x.at(i);
        y.set(i, Complex(std::round(v.real() / step) * step,
                         std::round(v.imag() / step) * step));
    }
    return y;
}

uint64_t mix_seed(uint64_t seed, ConstantKind kind, int N, int salt) {
    uint64_t h = seed * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<uint64_t>(static_cast<int>(kind)) * 0xBF58476D1CE4E5B9ull;
    h ^= static_cast<uint64_t>(N) * 0x94D049BB133111EBull;
    h ^= static_cast<uint64_t>(salt) * 0xD6E8FEB86659FD93ull;
    return h;
}

}  // namespace

ConstantEstimate operator_constant(const Space& space, int N, ConstantKind kind,
                                   const SearchBudget& budget,
                                   const std::vector<OperatorWitness>& witnesses,
                                   ExecPolicy policy) {
    bool op_kind = kind == ConstantKind::k || kind == ConstantKind::k_c ||
                   kind == ConstantKind::g || kind == ConstantKind::g_c ||
                   kind == ConstantKind::g_hat || kind == ConstantKind::g_tilde;
    if (!op_kind) throw DomainError("operator_constant handles k, k_c, g, g_c, g_hat, g_tilde only");
    if (N < 1) throw DomainError("order must be at least 1");
    int d = space.dim();

    if (kind == ConstantKind::g_hat) {
        ConstantEstimate eg = operator_constant(space, N, ConstantKind::g, budget, witnesses, policy);
        ConstantEstimate ec = operator_constant(space, N, ConstantKind::g_c, budget, witnesses, policy);
        ConstantEstimate e;
        e.kind = kind;
        e.N = N;
        e.lower = std::min(eg.lower, ec.lower);
        UpperBound ub = upper_with_sources(space, kind, N);
        e.upper = std::min({ub.value, eg.upper, ec.upper});
        e.witness = eg.lower <= ec.lower ? eg.witness : ec.witness;
        e.witness.description = "smaller of the kept and dropped greedy bounds; " +
                                e.witness.description;
        e.citations = ub.sources;
        e.citations.push_back("lower: min of the g and g_c searches");
        return e;
    }

    if (kind == ConstantKind::k || kind == ConstantKind::k_c) {
        double enum_cost = static_cast<double>(subset_count_up_to(d, std::min(N, d))) *
                           space.norm_work();
        if (enum_cost > static_cast<double>(kEnumerationGuard))
            throw RangeError(to_string(kind) + " set enumeration at order " + std::to_string(N) +
                             " needs about " + std::to_string(static_cast<uint64_t>(enum_cost)) +
                             " operations per candidate; the guard is " +
                             std::to_string(kEnumerationGuard));
    }

    UpperBound ub = upper_with_sources(space, kind, N);
    CandidateBest best;

    // basis vectors
    for (int i = 1; i <= d && !meets_upper(best.value, ub.value); ++i) {
        CoeffVector e_i = space.zero();
        e_i.set(i, Complex(1.0));
        consider_candidate(space, N, kind, e_i, "basis vector", best);
    }
    // caller witnesses
    for (const auto& w : witnesses) {
        if (meets_upper(best.value, ub.value)) break;
        if (w.x.dim() != d) throw DomainError("operator witness has dimension " +
                                              std::to_string(w.x.dim()) + ", space has " +
                                              std::to_string(d));
        consider_candidate(space, N, kind, w.x, "witness: " + w.description, best);
    }
    // exhaustive value grids at small dimension
    if (!meets_upper(best.value, ub.value) && d <= budget.sign_dim_cap) {
        std::vector<double> values = d <= budget.magnitude_dim_cap
            ? std::vector<double>{0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0}
            : std::vector<double>{0.0, 1.0, -1.0};
        uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= static_cast<uint64_t>(values.size());
        ReduceResult r = reduce_max(static_cast<int64_t>(total), [&](int64_t idx) {
            if (idx == 0) return -kInf;  // the zero vector
            CoeffVector x = decode_grid_vector(space, static_cast<uint64_t>(idx), values);
            return operator_objective(space, N, kind, x, false, nullptr, nullptr);
        }, policy);
        if (r.found && r.value > best.value) {
            CoeffVector x = decode_grid_vector(space, static_cast<uint64_t>(r.index), values);
            consider_candidate(space, N, kind, x, "exhaustive value grid", best);
        }
    }
    // coordinate ascent, dropped when a single objective evaluation is too
    // dear for the planned number of probes
    bool complex_field = space.field() == FieldTag::Complex;
    int grid = std::max(3, budget.ascent_grid);
    double objective_cost =
        space.norm_work() * (kind == ConstantKind::k || kind == ConstantKind::k_c
                                 ? static_cast<double>(subset_count_up_to(d, std::min(N, d)))
                                 : static_cast<double>(std::min(N, d) + 1));
    double ascent_evals = static_cast<double>(budget.restarts()) *
                          (1.0 + static_cast<double>(budget.ascent_sweeps) * d *
                                     (complex_field ? 2.0 : 1.0) * grid);
    bool ascent_skipped = ascent_evals * objective_cost > kAscentWorkGuard;
    if (!ascent_skipped && !meets_upper(best.value, ub.value)) {
        for (int r = 0; r < budget.restarts() && !meets_upper(best.value, ub.value); ++r) {
            std::mt19937_64 rng(mix_seed(budget.seed, kind, N, r));
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            CoeffVector x = space.zero();
            for (int i = 1; i <= d; ++i)
                x.set(i, complex_field ? Complex(unif(rng), unif(rng)) : Complex(unif(rng)));
            double local = operator_objective(space, N, kind, x, true, nullptr, nullptr);
            for (int sweep = 0; sweep < budget.ascent_sweeps; ++sweep) {
                for (int i = 1; i <= d; ++i) {
                    for (int axis = 0; axis < (complex_field ? 2 : 1); ++axis) {
                        Complex keep = x.at(i);
                        Complex trial_best = keep;
                        for (int gidx = 0; gidx < grid; ++gidx) {
                            double v = -2.0 + 4.0 * gidx / (grid - 1);
                            Complex c = axis == 0 ? Complex(v, keep.imag())
                                                  : Complex(keep.real(), v);
                            x.set(i, c);
                            double val = operator_objective(space, N, kind, x, true, nullptr, nullptr);
                            if (val > local) {
                                local = val;
                                trial_best = c;
                            }
                        }
                        x.set(i, trial_best);
                    }
                }
            }
            consider_candidate(space, N, kind, x, "coordinate ascent", best);
            consider_candidate(space, N, kind, snap_vector(x, 0.25), "coordinate ascent, snapped", best);
            consider_candidate(space, N, kind, snap_vector(x, 0.5), "coordinate ascent, snapped", best);
        }
    }

    ConstantEstimate e;
    e.kind = kind;
    e.N = N;
    e.lower = best.found ? best.value : 0.0;
    e.upper = ub.value;
    if (best.found) {
        e.witness.x = best.x;
        e.witness.A = best.A;
        e.witness.description = best.how + "; " + best.note;
    }
    e.citations = ub.sources;
    if (best.found) e.citations.push_back("lower: " + best.how);
    if (ascent_skipped) e.citations.push_back("ascent skipped by the work guard");
    return e;
}

// ---------------------------------------------------------------------------
// the A-property constant nu

namespace {

struct NuConfig {
    std::vector<int> A, B;
    std::vector<Complex> eps, eta;
    CoeffVector x;
};

double nu_ratio(const Space& space, const NuConfig& c) {
    CoeffVector num = c.x;
    for (size_t i = 0; i < c.A.size(); ++i) num.set(c.A[i], num.at(c.A[i]) + c.eps[i]);
    CoeffVector den = c.x;
    for (size_t i = 0; i < c.B.size(); ++i) den.set(c.B[i], den.at(c.B[i]) + c.eta[i]);
    double dn = space.norm(den);
    if (!(dn > 0.0)) return -kInf;
    return space.norm(num) / dn;
}

void validate_nu_witness(const Space& space, const NuWitness& w, int N) {
    if (w.A.size() != w.B.size() || w.A.empty())
        throw DomainError("nu witness needs |A| = |B| >= 1");
    if (w.A.size() > N) throw DomainError("nu witness sets exceed the order");
    if (!w.A.disjoint_from(w.B)) throw DomainError("nu witness sets must be disjoint");
    if (!w.eps.covers(w.A) || !w.eta.covers(w.B))
        throw DomainError("nu witness sign patterns must cover their sets");
    if (w.x.dim() != space.dim()) throw DomainError("nu witness x has the wrong dimension");
    if (w.x.linf() > 1.0 + 1e-9) throw DomainError("nu witness x must satisfy |x|_inf <= 1");
    for (int l : w.x.support())
        if (w.A.contains(l) || w.B.contains(l))
            throw DomainError("nu witness x must be supported off A and B");
}

NuConfig config_from_witness(const Space& space, const NuWitness& w) {
    NuConfig c;
    c.A = w.A.labels();
    c.B = w.B.labels();
    for (int l : c.A) c.eps.push_back(w.eps.at(l));
    for (int l : c.B) c.eta.push_back(w.eta.at(l));
    c.x = w.x;
    (void)space;
    return c;
}

}  // namespace

ConstantEstimate a_property_constant(const Space& space, int N, const SearchBudget& budget,
                                     const std::vector<NuWitness>& witnesses,
                                     ExecPolicy policy) {
    if (N < 1) throw DomainError("order must be at least 1");
    int d = space.dim();
    UpperBound ub = upper_with_sources(space, ConstantKind::nu, N);

    double best = -kInf;
    NuConfig best_cfg;
    std::string best_how;
    auto track = [&](const NuConfig& cfg, double v, const std::string& how) {
        if (v > best) {
            best = v;
            best_cfg = cfg;
            best_how = how;
        }
    };
    std::vector<std::string> notes;

    // caller witnesses
    for (const auto& w : witnesses) {
        validate_nu_witness(space, w, N);
        NuConfig cfg = config_from_witness(space, w);
        track(cfg, nu_ratio(space, cfg), "witness: " + w.description);
    }

    int s_cap = std::min(N, d / 2);
    // disjoint signed pairs with x = 0
    if (!meets_upper(best, ub.value)) {
        int m = sign_root_count(space);
        for (int s = 1; s <= s_cap; ++s) {
            double c = static_cast<double>(binomial(d, s));
            double est = (c * pow_double(m, s - 1) + c * c) * space.norm_work();
            if (est > static_cast<double>(kEnumerationGuard)) {
                notes.push_back("x = 0 pair scan skipped from size " + std::to_string(s) +
                                " by the work guard");
                break;
            }
            SizeTable table = build_size_table(space, s, true, policy);
            size_t n = table.sets.size();
            if (n == 0) continue;
            int64_t count = static_cast<int64_t>(n) * static_cast<int64_t>(n);
            ReduceResult r = reduce_max(count, [&](int64_t idx) {
                auto i = static_cast<size_t>(idx / static_cast<int64_t>(n));
                auto j = static_cast<size_t>(idx % static_cast<int64_t>(n));
                if (i == j || !sets_disjoint(table, i, j)) return -kInf;
                if (!(table.lo[j] > 0.0)) return -kInf;
                return table.hi[i] / table.lo[j];
            }, policy);
            if (r.found) {
                auto i = static_cast<size_t>(r.index / static_cast<int64_t>(n));
                auto j = static_cast<size_t>(r.index % static_cast<int64_t>(n));
                NuConfig cfg;
                cfg.A = table.sets[i];
                cfg.B = table.sets[j];
                cfg.eps = table.hi_sign[i];
                cfg.eta = table.lo_sign[j];
                cfg.x = space.zero();
                track(cfg, r.value, "disjoint signed pair, x = 0");
            }
        }
    }

    // small extras x = v 1_C near the best pairs
    if (!meets_upper(best, ub.value)) {
        for (int s = 1; s <= s_cap && d - 2 * s >= 1; ++s) {
            double c = static_cast<double>(binomial(d, s));
            double extras = (static_cast<double>(d) * d + 1.0) * 3.0;
            if (c * c * extras > 5e6 ||
                c * pow_double(sign_root_count(space), s - 1) * space.norm_work() >
                    static_cast<double>(kEnumerationGuard)) {
                notes.push_back("short indicator x scan skipped from size " + std::to_string(s));
                break;
            }
            SizeTable table = build_size_table(space, s, true, policy);
            size_t n = table.sets.size();
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j) {
                    if (i == j || !sets_disjoint(table, i, j)) continue;
                    NuConfig cfg;
                    cfg.A = table.sets[i];
                    cfg.B = table.sets[j];
                    cfg.eps = table.hi_sign[i];
                    cfg.eta = table.lo_sign[j];
                    std::vector<int> rest;
                    for (int l = 1; l <= d; ++l)
                        if (std::find(cfg.A.begin(), cfg.A.end(), l) == cfg.A.end() &&
                            std::find(cfg.B.begin(), cfg.B.end(), l) == cfg.B.end())
                            rest.push_back(l);
                    for (double v : {1.0, -1.0, 0.5}) {
                        for (size_t a = 0; a < rest.size(); ++a) {
                            cfg.x = space.zero();
                            cfg.x.set(rest[a], v);
                            track(cfg, nu_ratio(space, cfg), "single-coordinate x scan");
                            for (size_t b = a + 1; b < rest.size(); ++b) {
                                CoeffVector x2 = cfg.x;
                                x2.set(rest[b], v);
                                NuConfig cfg2 = cfg;
                                cfg2.x = x2;
                                track(cfg2, nu_ratio(space, cfg2), "two-coordinate x scan");
                            }
                        }
                    }
                }
            }
        }
    }

    // seeded sampling
    if (!meets_upper(best, ub.value) && s_cap >= 1) {
        std::mt19937_64 rng(mix_seed(budget.seed, ConstantKind::nu, N, 7717));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto alphabet = sign_alphabet(space);
        bool complex_field = space.field() == FieldTag::Complex;
        uint64_t samples = budget.samples();
        std::vector<int> perm(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) perm[static_cast<size_t>(i)] = i + 1;
        for (uint64_t it = 0; it < samples; ++it) {
            int s = 1 + static_cast<int>(rng() % static_cast<uint64_t>(s_cap));
            for (int i = 0; i < 2 * s; ++i) {
                auto j = static_cast<size_t>(i) +
                         static_cast<size_t>(rng() % static_cast<uint64_t>(d - i));
                std::swap(perm[static_cast<size_t>(i)], perm[j]);
            }
            NuConfig cfg;
            cfg.A.assign(perm.begin(), perm.begin() + s);
            cfg.B.assign(perm.begin() + s, perm.begin() + 2 * s);
            std::sort(cfg.A.begin(), cfg.A.end());
            std::sort(cfg.B.begin(), cfg.B.end());
            for (int i = 0; i < s; ++i) {
                cfg.eps.push_back(alphabet[static_cast<size_t>(rng() % alphabet.size())]);
                cfg.eta.push_back(alphabet[static_cast<size_t>(rng() % alphabet.size())]);
            }
            cfg.x = space.zero();
            bool grid_values = rng() % 3 == 0;
            for (size_t i = static_cast<size_t>(2 * s); i < perm.size(); ++i) {
                if (rng() % 2 == 0) continue;
                int l = perm[i];
                if (grid_values) {
                    static const double kVals[] = {1.0, -1.0, 0.5, -0.5};
                    cfg.x.set(l, kVals[rng() % 4]);
                } else if (complex_field) {
                    double u = unif(rng);
                    double th = 2.0 * M_PI * unif(rng);
                    cfg.x.set(l, Complex(u * std::cos(th), u * std::sin(th)));
                } else {
                    cfg.x.set(l, 2.0 * unif(rng) - 1.0);
                }
            }
            track(cfg, nu_ratio(space, cfg), "seeded sampling");
            NuConfig swapped;
            swapped.A = cfg.B;
            swapped.B = cfg.A;
            swapped.eps = cfg.eta;
            swapped.eta = cfg.eps;
            swapped.x = cfg.x;
            track(swapped, nu_ratio(space, swapped), "seeded sampling");
            if (meets_upper(best, ub.value)) break;
        }
    }

    ConstantEstimate e;
    e.kind = ConstantKind::nu;
    e.N = N;
    e.upper = ub.value;
    e.citations = ub.sources;
    for (auto& n0 : notes) e.citations.push_back(n0);
    if (best > -kInf) {
        e.lower = best;
        e.witness.A = IndexSet(best_cfg.A);
        e.witness.B = IndexSet(best_cfg.B);
        e.witness.eps = pattern_from(best_cfg.A, best_cfg.eps);
        e.witness.eta = pattern_from(best_cfg.B, best_cfg.eta);
        e.witness.x = best_cfg.x;
        e.witness.description = best_how;
        e.citations.push_back("lower: " + best_how);
    } else {
        e.lower = 0.0;
        e.citations.push_back("no admissible configuration at this dimension");
    }
    return e;
}

double generic_upper_bound(const Space& space, ConstantKind kind, int N) {
    return upper_with_sources(space, kind, N).value;
}

// ---------------------------------------------------------------------------
// table and the full sweep

const ConstantEstimate& ConstantTable::at(ConstantKind kind, int N) const {
    auto it = m_.find({static_cast<int>(kind), N});
    if (it == m_.end())
        throw DomainError("no computed estimate for " + to_string(kind) + " at order " +
                          std::to_string(N));
    return it->second;
}

bool ConstantTable::has(ConstantKind kind, int N) const {
    return m_.count({static_cast<int>(kind), N}) > 0;
}

void ConstantTable::put(ConstantEstimate e) {
    m_[{static_cast<int>(e.kind), e.N}] = std::move(e);
}

double ConstantTable::upper(const Space& space, ConstantKind kind, int N) const {
    auto it = m_.find({static_cast<int>(kind), N});
    if (it != m_.end() && std::isfinite(it->second.upper)) return it->second.upper;
    return generic_upper_bound(space, kind, N);
}

double ConstantTable::lower_or(ConstantKind kind, int N, double fallback) const {
    auto it = m_.find({static_cast<int>(kind), N});
    return it == m_.end() ? fallback : it->second.lower;
}

namespace {

// Democracy witnesses restated as nu configurations: strip the overlap from
// both sets and park it in x, which keeps both norms unchanged.
void add_transfer_witnesses(const Space& space, const ConstantTable& table, int N,
                            std::vector<NuWitness>& out) {
    for (ConstantKind kind : {ConstantKind::mu, ConstantKind::mu_d, ConstantKind::tmu,
                              ConstantKind::tmu_d}) {
        if (!table.has(kind, N)) continue;
        const ConstantWitness& w = table.at(kind, N).witness;
        if (!w.A || !w.B) continue;
        bool signed_kind = kind == ConstantKind::tmu || kind == ConstantKind::tmu_d;
        IndexSet overlap = w.A->set_intersection(*w.B);
        IndexSet A = w.A->set_difference(overlap);
        IndexSet B = w.B->set_difference(overlap);
        if (A.empty() || B.empty()) continue;
        NuWitness nw;
        nw.A = A;
        nw.B = B;
        nw.x = space.zero();
        bool ok = true;
        for (int l : overlap.labels()) {
            Complex va = signed_kind ? w.eps->at(l) : Complex(1.0);
            Complex vb = signed_kind ? w.eta->at(l) : Complex(1.0);
            if (std::abs(va - vb) > 1e-12) {
                ok = false;
                break;
            }
            nw.x.set(l, va);
        }
        if (!ok) continue;
        for (int l : A.labels()) nw.eps.set(l, signed_kind ? w.eps->at(l) : Complex(1.0));
        for (int l : B.labels()) nw.eta.set(l, signed_kind ? w.eta->at(l) : Complex(1.0));
        nw.description = "transfer from the " + to_string(kind) + " extremal pair";
        out.push_back(std::move(nw));
    }
}

ConstantEstimate skipped_estimate(const Space& space, ConstantKind kind, int N,
                                  const std::string& reason) {
    ConstantEstimate e;
    e.kind = kind;
    e.N = N;
    e.lower = 0.0;
    UpperBound ub = upper_with_sources(space, kind, N);
    e.upper = ub.value;
    e.citations.push_back("search skipped: " + reason);
    for (auto& sc : ub.sources) e.citations.push_back(sc);
    return e;
}

}  // namespace

ConstantTable compute_all_constants(const Space& space, int N_max, const SearchBudget& budget,
                                    const std::vector<OperatorWitness>& op_witnesses,
                                    const std::vector<NuWitness>& nu_witnesses,
                                    ExecPolicy policy, bool allow_skips) {
    if (N_max < 1) throw DomainError("N_max must be at least 1");
    ConstantTable table;
    for (int N = 1; N <= N_max; ++N) {
        for (ConstantKind kind : {ConstantKind::mu, ConstantKind::mu_d, ConstantKind::tmu,
                                  ConstantKind::tmu_d, ConstantKind::gamma}) {
            ConstantEstimate e;
            try {
                e = democracy_constant(space, N, kind, policy);
            } catch (const RangeError& err) {
                if (!allow_skips) throw;
                e = skipped_estimate(space, kind, N, err.what());
            }
            table.put(std::move(e));
        }
        for (ConstantKind kind : {ConstantKind::k, ConstantKind::k_c, ConstantKind::g,
                                  ConstantKind::g_c, ConstantKind::g_hat,
                                  ConstantKind::g_tilde}) {
            ConstantEstimate e;
            try {
                e = operator_constant(space, N, kind, budget, op_witnesses, policy);
            } catch (const RangeError& err) {
                if (!allow_skips) throw;
                e = skipped_estimate(space, kind, N, err.what());
            }
            table.put(std::move(e));
        }
        {
            std::vector<NuWitness> pool = nu_witnesses;
            add_transfer_witnesses(space, table, N, pool);
            std::vector<NuWitness> usable;
            for (auto& w : pool)
                if (w.A.size() <= N && w.x.dim() == space.dim()) usable.push_back(w);
            table.put(a_property_constant(space, N, budget, usable, policy));
        }
        if (N > 1) {
            for (ConstantKind kind : all_constant_kinds()) {
                if (!table.has(kind, N) || !table.has(kind, N - 1)) continue;
                const ConstantEstimate& prev = table.at(kind, N - 1);
                ConstantEstimate cur = table.at(kind, N);
                if (prev.lower > cur.lower) {
                    cur.lower = prev.lower;
                    cur.witness = prev.witness;
                    cur.citations.push_back("lower carried from order " + std::to_string(N - 1));
                    table.put(std::move(cur));
                }
            }
        }
    }
    return table;
}

}  // namespace greedylab
