// Acceptance gate: one criterion per invocation, `greedylab_acceptance <1..9>`.
// Prints one PASS/FAIL line per sub-check and a final CRITERION line; exits
// nonzero when any sub-check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "greedylab/combinatorics.hpp"
#include "greedylab/constants.hpp"
#include "greedylab/core.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/report.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/witnesses.hpp"

using namespace greedylab;

namespace {

struct Gate {
    int failures = 0;
    void check(bool ok, const std::string& what) {
        std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

bool near(double got, double want, double tol = 1e-9) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_exact(Gate& g, const ConstantTable& table, ConstantKind kind, int N, double want,
                 const std::string& where) {
    const ConstantEstimate& e = table.at(kind, N);
    std::ostringstream msg;
    msg << where << " " << to_string(kind) << "(" << N << ") = " << fmt(want) << " exactly (got ["
        << fmt(e.lower) << ", " << fmt(e.upper) << "])";
    g.check(e.exact() && near(e.lower, want) && near(e.upper, want), msg.str());
}

void check_sandwich(Gate& g, const Space& space, int N, const ConstantTable& table, double L_want,
                    double Lt_want) {
    LebesgueSandwich s = lebesgue_sandwich(space, N, table, lebesgue_witnesses_for(space, N));
    std::ostringstream msg;
    msg << space.name() << " order " << N << ": L closes at " << fmt(L_want) << " and L~ at "
        << fmt(Lt_want) << " (got L [" << fmt(s.lower.L) << ", " << fmt(s.upper.L) << "], L~ ["
        << fmt(s.lower.L_tilde) << ", " << fmt(s.upper.L_tilde) << "])";
    g.check(s.consistent() && near(s.lower.L, L_want) && near(s.upper.L, L_want) &&
                near(s.lower.L_tilde, Lt_want) && near(s.upper.L_tilde, Lt_want),
            msg.str());
}

std::vector<NuWitness> nu_up_to(const Space& space, int N_max) {
    std::vector<NuWitness> out;
    for (int n = 1; n <= N_max; ++n)
        for (auto& w : nu_witnesses_for(space, n)) out.push_back(std::move(w));
    return out;
}

std::vector<OperatorWitness> ops_up_to(const Space& space, int N_max) {
    std::vector<OperatorWitness> out;
    for (int n = 1; n <= N_max; ++n)
        for (auto& w : operator_witnesses_for(space, n)) out.push_back(std::move(w));
    return out;
}

// ---- criterion 1: summing basis closed-form table --------------------------
void criterion1(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto space = make_summing(14);
    SearchBudget budget;
    ConstantTable table =
        compute_all_constants(*space, 3, budget, ops_up_to(*space, 3), nu_up_to(*space, 3));
    for (int N = 1; N <= 3; ++N) {
        check_exact(g, table, ConstantKind::mu, N, 1.0, space->name());
        check_exact(g, table, ConstantKind::tmu, N, double(N), space->name());
        check_exact(g, table, ConstantKind::g, N, 2.0 * N, space->name());
        check_exact(g, table, ConstantKind::k, N, 2.0 * N, space->name());
        check_exact(g, table, ConstantKind::g_c, N, 1.0 + 2.0 * N, space->name());
        check_exact(g, table, ConstantKind::k_c, N, 1.0 + 2.0 * N, space->name());
        check_exact(g, table, ConstantKind::nu, N, 1.0 + 4.0 * N, space->name());
        check_sandwich(g, *space, N, table, 1.0 + 6.0 * N, 1.0 + 4.0 * N);
    }
    double dt = seconds_since(t0);
    g.check(dt < 60.0, "finished in " + fmt(dt) + " s (limit 60)");
}

// ---- criterion 2: l1 (+) c0 additive closure --------------------------------
void criterion2(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto space = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
    SearchBudget budget;
    ConstantTable table = compute_all_constants(*space, 3, budget, {}, nu_up_to(*space, 3));
    const ConstantKind op_kinds[] = {ConstantKind::k,     ConstantKind::k_c, ConstantKind::g,
                                     ConstantKind::g_c,   ConstantKind::g_hat,
                                     ConstantKind::g_tilde};
    for (int N = 1; N <= 3; ++N) {
        for (ConstantKind kind : op_kinds) check_exact(g, table, kind, N, 1.0, space->name());
        check_exact(g, table, ConstantKind::mu, N, double(N), space->name());
        check_exact(g, table, ConstantKind::tmu, N, double(N), space->name());
        check_exact(g, table, ConstantKind::nu, N, N + 1.0, space->name());
        check_sandwich(g, *space, N, table, N + 1.0, N + 1.0);
    }
    double dt = seconds_since(t0);
    g.check(dt < 30.0, "finished in " + fmt(dt) + " s (limit 30)");
}

// ---- criterion 3: l1 (+) l2 square-root democracy ---------------------------
void criterion3(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto space = make_direct_sum({1.0, false, 4}, {2.0, false, 4});
    SearchBudget budget;
    ConstantTable table = compute_all_constants(*space, 3, budget, {}, nu_up_to(*space, 3));
    for (int N = 1; N <= 3; ++N) {
        double root = std::sqrt(double(N));
        check_exact(g, table, ConstantKind::mu, N, root, space->name());
        check_exact(g, table, ConstantKind::tmu, N, root, space->name());
        check_exact(g, table, ConstantKind::nu, N, std::sqrt(N + 1.0), space->name());
        check_sandwich(g, *space, N, table, std::sqrt(N + 1.0), std::sqrt(N + 1.0));
    }
    auto l2c0 = make_direct_sum({2.0, false, 4}, {2.0, true, 4});
    ConstantTable t2 = compute_all_constants(*l2c0, 3, budget, {}, nu_up_to(*l2c0, 3));
    for (int N = 1; N <= 3; ++N)
        check_exact(g, t2, ConstantKind::nu, N, 1.0 + std::sqrt(double(N)), l2c0->name());
    double dt = seconds_since(t0);
    g.check(dt < 60.0, "finished in " + fmt(dt) + " s (limit 60)");
}

// ---- criterion 4: suppression-unconditional exactness trigger ---------------
void criterion4(Gate& g) {
    std::vector<SpacePtr> shipped = {
        make_summing(9),
        make_direct_sum({1.0, false, 4}, {2.0, true, 4}),
        make_direct_sum({1.0, false, 4}, {2.0, false, 4}),
        make_direct_sum({2.0, false, 4}, {2.0, true, 4}),
        make_direct_sum({1.0, false, 4}, {1.0, false, 4}),
        make_lp({1.0, false, 6}),
        make_lp({2.0, false, 6}),
        make_lp({2.0, true, 6}),
    };
    SearchBudget budget;
    budget.scale = 0.5;
    for (const auto& space : shipped) {
        ConstantTable table =
            compute_all_constants(*space, 2, budget, {}, nu_up_to(*space, 2));
        for (int N = 1; N <= 2; ++N) {
            if (table.at(ConstantKind::k_c, N).upper > 1.0 + 1e-9) {
                std::printf("PASS: %s order %d skipped (complement projections exceed 1)\n",
                            space->name().c_str(), N);
                continue;
            }
            LebesgueSandwich s = lebesgue_sandwich(*space, N, table, {});
            bool has_equality = false;
            for (const auto& c : s.upper.certificates)
                if (c.name == "L = L~ = nu(N)" && c.status == CertificateStatus::Equality)
                    has_equality = true;
            ConstantEstimate nu_indep =
                a_property_constant(*space, N, budget, nu_up_to(*space, N));
            std::ostringstream msg;
            msg << space->name() << " order " << N
                << ": exactness certificate matches the independent convexity constant "
                << fmt(nu_indep.upper) << " (got L [" << fmt(s.lower.L) << ", " << fmt(s.upper.L)
                << "], L~ upper " << fmt(s.upper.L_tilde) << ")";
            g.check(s.upper.exact_by_suppression && has_equality && nu_indep.exact() &&
                        near(s.upper.L, nu_indep.upper) && near(s.upper.L_tilde, nu_indep.upper) &&
                        near(s.lower.L, nu_indep.upper) && near(s.lower.L_tilde, nu_indep.upper),
                    msg.str());
        }
    }
}

// ---- criterion 5: randomized inequality suites ------------------------------
void criterion5(Gate& g) {
    struct Item {
        SpacePtr space;
        double tol;
        uint64_t seed;
    };
    std::vector<Item> items;
    items.push_back({make_summing(9), 1e-9, 501});
    items.push_back({make_direct_sum({1.0, false, 4}, {2.0, true, 4}), 1e-9, 502});
    items.push_back({make_direct_sum({1.0, false, 4}, {2.0, false, 4}), 1e-9, 503});
    items.push_back({make_trig(1.0, 12, 400), 1e-6, 504});
    items.push_back({make_mixed_dyadic(2.0, {0, 2, 1, 3}), 1e-9, 505});
    for (const auto& item : items) {
        auto t0 = std::chrono::steady_clock::now();
        SearchBudget budget;
        budget.seed = item.seed;
        budget.scale = 0.25;
        ConstantTable table = compute_all_constants(*item.space, 2, budget,
                                                    ops_up_to(*item.space, 2),
                                                    nu_up_to(*item.space, 2),
                                                    ExecPolicy::Parallel, true);
        LebesgueSandwich sandwich = lebesgue_sandwich(*item.space, 2, table, {});
        LemmaSuiteResult res =
            lemma_suite(*item.space, 2, table, 10000, item.seed, item.tol, sandwich);
        int chain_bad = 0;
        for (const auto& c : res.chain_certificates)
            if (c.status == CertificateStatus::Violated) ++chain_bad;
        std::ostringstream msg;
        msg << item.space->name() << ": " << res.checks << " checks over " << res.samples
            << " samples, " << res.violations.size() << " violations, " << chain_bad
            << " broken chain links, " << fmt(seconds_since(t0)) << " s";
        for (size_t i = 0; i < res.violations.size() && i < 3; ++i)
            msg << " | " << res.violations[i].name << ": " << res.violations[i].detail;
        g.check(res.samples == 10000 && res.checks > res.samples && res.violations.empty() &&
                    chain_bad == 0,
                msg.str());
    }
}

// ---- criterion 6: best-approximation oracle vs dense grid -------------------
double grid_sigma(const Space& space, const CoeffVector& x, int N) {
    int n_eff = std::min(N, space.dim());
    double R = 4.0 * space.norm(x) + 1.0;
    double best_all = std::numeric_limits<double>::infinity();
    for_each_combination(space.dim(), n_eff, [&](const std::vector<int>& labels) {
        size_t m = labels.size();
        std::vector<double> center(m, 0.0), best_pt(m, 0.0);
        double h = R / 8.0;
        double best = std::numeric_limits<double>::infinity();
        for (int round = 0; round < 10; ++round) {
            std::vector<int> t(m, -8);
            while (true) {
                CoeffVector y = x;
                for (size_t j = 0; j < m; ++j)
                    y.set(labels[j], x.at(labels[j]) - Complex(center[j] + h * t[j]));
                double v = space.norm(y);
                if (v < best) {
                    best = v;
                    for (size_t j = 0; j < m; ++j) best_pt[j] = center[j] + h * t[j];
                }
                size_t j = 0;
                while (j < m && ++t[j] > 8) t[j++] = -8;
                if (j == m) break;
            }
            center = best_pt;
            h /= 4.0;
        }
        best_all = std::min(best_all, best);
    });
    return best_all;
}

void criterion6(Gate& g) {
    std::vector<SpacePtr> spaces = {
        make_lp({1.0, false, 5}),
        make_summing(5),
        make_lp({2.0, true, 5}),
        make_direct_sum({1.0, false, 3}, {2.0, true, 2}),
    };
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (const auto& space : spaces) {
        double worst = 0.0;
        bool all_exact = true, ordered = true;
        for (int i = 0; i < 25; ++i) {
            CoeffVector x(FieldTag::Real, space->dim());
            for (int j = 1; j <= space->dim(); ++j) x.set(j, coeff(rng));
            int N = 1 + i % 3;
            ApproxResult oracle = sigma(*space, x, N);
            double grid = grid_sigma(*space, x, N);
            all_exact = all_exact && oracle.exact;
            ordered = ordered && grid >= oracle.value - 1e-9;
            worst = std::max(worst, std::abs(grid - oracle.value));
        }
        std::ostringstream msg;
        msg << space->name() << ": 25 vectors, max |grid - oracle| = " << fmt(worst)
            << (all_exact ? "" : " (inner solve fell back to descent)")
            << (ordered ? "" : " (grid undercut the oracle)");
        g.check(all_exact && ordered && worst <= 1e-4, msg.str());
    }
}

// ---- criterion 7: interleaved dyadic construction ---------------------------
void criterion7(Gate& g) {
    std::vector<double> nu_emp;
    for (int n = 2; n <= 4; ++n) {
        auto c = mixed_dyadic_construction(2.0, n);
        double norm_x = c.space->norm(c.x);
        double part = c.space->norm(project(c.x, c.gamma));
        g.check(near(norm_x, std::sqrt(2.0 * n)),
                "n=" + std::to_string(n) + ": alternating-level vector norm = sqrt(2n) (got " +
                    fmt(norm_x) + ")");
        g.check(near(part, double(n)), "n=" + std::to_string(n) +
                                           ": greedy-part norm = n (got " + fmt(part) + ")");
        double ratio = part / norm_x;
        g.check(ratio + 1e-9 >= std::sqrt(double(n)),
                "n=" + std::to_string(n) + ": derived greedy-operator lower bound " + fmt(ratio) +
                    " reaches sqrt(n) = " + fmt(std::sqrt(double(n))));

        std::mt19937_64 rng(7000 + n);
        std::uniform_int_distribution<int> size_pick(1, std::min(8, c.space->dim()));
        std::vector<int> all(c.space->dim());
        for (int i = 0; i < c.space->dim(); ++i) all[size_t(i)] = i + 1;
        double worst_over = 0.0, c_obs = 1.0;
        for (int s = 0; s < 200; ++s) {
            int sz = size_pick(rng);
            std::shuffle(all.begin(), all.end(), rng);
            IndexSet A(std::vector<int>(all.begin(), all.begin() + sz));
            SignPattern eps;
            for (int l : A.labels())
                eps.set(l, rng() % 2 == 0 ? 1.0 : -1.0);
            double nrm = c.space->norm(indicator(c.space->dim(), A, eps));
            worst_over = std::max(worst_over, nrm / sz);
            c_obs = std::max(c_obs, sz / nrm);
        }
        g.check(worst_over <= 1.0 + 1e-9,
                "n=" + std::to_string(n) + ": signed indicator norm stays below the set size "
                                           "(worst ratio " +
                    fmt(worst_over) + ")");

        SearchBudget bud;
        bud.seed = 777;
        bud.scale = 0.25;
        double emp = a_property_constant(*c.space, 2, bud, {}).lower;
        nu_emp.push_back(emp);
        g.check(emp <= 3.0 * c_obs + 1e-9,
                "n=" + std::to_string(n) + ": sampled convexity constant " + fmt(emp) +
                    " stays below 3x the observed indicator defect " + fmt(c_obs));
    }
    g.check(nu_emp.back() <= nu_emp.front() + 0.25,
            "sampled convexity constant shows no growth in n (" + fmt(nu_emp.front()) + " -> " +
                fmt(nu_emp.back()) + ")");
}

// ---- criterion 8: trigonometric kernels at p = 1 ----------------------------
void criterion8(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto space = make_trig(1.0, 127, 4096);
    for (int N : {4, 8, 16}) {
        double v = space->norm(trig_vallee_poussin(*space, N));
        g.check(v <= 3.0 + 1e-6,
                "smoothing kernel norm at N=" + std::to_string(N) + " stays below 3 (got " +
                    fmt(v) + ")");
    }
    for (int n : {8, 16, 32, 64}) {
        double ratio = space->norm(trig_dirichlet(*space, n)) / std::log(double(n));
        g.check(ratio >= 0.3 && ratio <= 0.6,
                "spike kernel norm over log n lies in [0.3, 0.6] at n=" + std::to_string(n) +
                    " (got " + fmt(ratio) + ")");
    }
    std::vector<double> xs, ys;
    for (int N : {4, 8, 16, 32}) {
        double r = trig_lacunary_nu(*space, N).expected.at("ratio");
        xs.push_back(std::log(double(N)));
        ys.push_back(std::log(r));
        std::printf("PASS: lacunary ratio at N=%d is %s\n", N, fmt(r).c_str());
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(ys.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = num / den;
    g.check(std::abs(slope - 0.5) <= 0.15,
            "lacunary ratio log-log slope is 0.5 +/- 0.15 (got " + fmt(slope) + ")");
    double dt = seconds_since(t0);
    g.check(dt < 180.0, "finished in " + fmt(dt) + " s (limit 180)");
}

// ---- criterion 9: byte-identical reports ------------------------------------
void criterion9(Gate& g) {
    auto run = [] {
        auto space = make_direct_sum({1.0, false, 4}, {2.0, false, 4});
        SearchBudget budget;
        budget.seed = 42;
        budget.scale = 0.25;
        ConstantTable table = compute_all_constants(*space, 2, budget, {}, nu_up_to(*space, 2));
        Report r;
        r.space_name = space->name();
        r.dim = space->dim();
        r.field = space->field();
        r.seed = budget.seed;
        for (const auto& [key, est] : table.entries()) r.constants.push_back(est);
        r.sandwiches.push_back(lebesgue_sandwich(*space, 2, table, {}));
        return r.to_json().dump(2);
    };
    std::string a = run();
    std::string b = run();
    g.check(!a.empty() && a == b,
            "two identical seeded computations serialize to byte-identical reports (" +
                std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <criterion 1..9>\n", argv[0]);
        return 2;
    }
    int which = std::atoi(argv[1]);
    Gate g;
    switch (which) {
        case 1: criterion1(g); break;
        case 2: criterion2(g); break;
        case 3: criterion3(g); break;
        case 4: criterion4(g); break;
        case 5: criterion5(g); break;
        case 6: criterion6(g); break;
        case 7: criterion7(g); break;
        case 8: criterion8(g); break;
        case 9: criterion9(g); break;
        default:
            std::fprintf(stderr, "usage: %s <criterion 1..9>\n", argv[0]);
            return 2;
    }
    std::printf("CRITERION %d %s\n", which, g.failures == 0 ? "PASS" : "FAIL");
    return g.failures == 0 ? 0 : 1;
}
