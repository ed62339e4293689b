#include <doctest.h>

#include <cmath>
#include <random>

#include "greedylab/constants.hpp"
#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/solvers.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/witnesses.hpp"

using namespace greedylab;

TEST_CASE("projection error scans find the right support") {
    auto l1c0 = make_direct_sum({1.0, false, 3}, {2.0, true, 1});
    CoeffVector x = CoeffVector::real({1, 1, 1, 0});
    SigmaTildeResult r = sigma_tilde(*l1c0, x, 1);
    CHECK(r.best.value == doctest::Approx(2.0));
    CHECK(r.best.support.size() == 1);
    CHECK(r.best.support.contains(1));

    // dropping everything or nothing
    auto l1 = make_lp({1.0, false, 4});
    CoeffVector y = CoeffVector::real({3, 2, 1, 0.5});
    CHECK(sigma_tilde(*l1, y, 4).best.value == 0.0);
    CHECK(sigma_tilde(*l1, y, 0).best.value == doctest::Approx(6.5));
    CHECK(sigma_tilde(*l1, y, 1).best.value == doctest::Approx(3.5));
    CHECK(sigma_tilde(*l1, y, 1).exactly_N.support.contains(1));
}

TEST_CASE("dropping coordinates can raise a non-unconditional norm") {
    auto summing = make_summing(3);
    CoeffVector x = CoeffVector::real({1, -1, 1});
    CHECK(summing->norm(x) == doctest::Approx(1.0));
    CHECK(summing->norm(project_complement(x, IndexSet({2}))) == doctest::Approx(2.0));
    // dropping {2} doubles the norm, so the scan cannot assume monotonicity
    SigmaTildeResult r = sigma_tilde(*summing, x, 2);
    CHECK(r.best.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sigma_tilde(*summing, x, 3).best.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("best approximation is exact on polytopal unit balls") {
    auto l1 = make_lp({1.0, false, 3});
    CoeffVector x = CoeffVector::real({3, 2, 1});
    ApproxResult r = sigma(*l1, x, 1);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.exact);
    CHECK(r.support.contains(1));

    // a vector already supported on N coordinates costs nothing
    CoeffVector sparse = CoeffVector::real({0, 5, 0});
    CHECK(sigma(*l1, sparse, 1).value == doctest::Approx(0.0));
    CHECK(sigma(*l1, x, 3).value == 0.0);
    CHECK(sigma(*l1, x, 0).value == doctest::Approx(6.0));
}

TEST_CASE("witness approximants certify upper bounds only after validation") {
    auto l1 = make_lp({1.0, false, 3});
    CoeffVector x = CoeffVector::real({3, 2, 1});
    CoeffVector z(FieldTag::Real, 3);
    z.set(1, 3.0);
    z.set(2, 2.0);
    CHECK_THROWS_AS(sigma(*l1, x, 1, z), DomainError);  // support bigger than N
    CoeffVector bad(FieldTag::Real, 2);
    CHECK_THROWS_AS(sigma(*l1, x, 1, bad), DomainError);
    CoeffVector ok(FieldTag::Real, 3);
    ok.set(1, 2.9);
    ApproxResult r = sigma(*l1, x, 1, ok);
    CHECK(r.value == doctest::Approx(3.0));  // solver beats the witness
}

TEST_CASE("exact inner solves agree with a dense grid on small cases") {
    auto spaces = {make_lp({1.0, false, 4}), make_summing(4),
                   make_lp({2.0, true, 4})};
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-1.5, 1.5);
    for (const auto& space : spaces) {
        for (int t = 0; t < 8; ++t) {
            CoeffVector x(FieldTag::Real, 4);
            for (int i = 1; i <= 4; ++i) x.set(i, unif(rng));
            IndexSet A({1 + t % 4, 1 + (t + 2) % 4});
            if (A.size() < 2) continue;
            InnerSolveResult exact = inner_solve(*space, x, A);
            CHECK(exact.exact);
            double grid = std::numeric_limits<double>::infinity();
            double w = 2.0 * x.linf();
            int steps = 60;
            auto labels = A.labels();
            for (int i = 0; i <= steps; ++i) {
                for (int j = 0; j <= steps; ++j) {
                    CoeffVector z(FieldTag::Real, 4);
                    z.set(labels[0], -w + 2 * w * i / steps);
                    z.set(labels[1], -w + 2 * w * j / steps);
                    grid = std::min(grid, space->norm(x - z));
                }
            }
            CHECK(exact.value <= grid + 1e-9);
            CHECK(grid <= exact.value + 0.15);  // coarse grid overshoots a little
        }
    }
}

TEST_CASE("feed-based lower bounds close the l1+c0 sandwich") {
    auto space = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
    SearchBudget budget;
    ConstantTable table = compute_all_constants(*space, 3, budget, {},
                                                nu_witnesses_for(*space, 3));
    for (int N = 1; N <= 3; ++N) {
        LebesgueSandwich s = lebesgue_sandwich(*space, N, table);
        CHECK(s.consistent());
        CHECK(s.lower.L == doctest::Approx(N + 1.0));
        CHECK(s.upper.L == doctest::Approx(N + 1.0));
        CHECK(s.lower.L_tilde == doctest::Approx(N + 1.0));
        CHECK(s.upper.L_tilde == doctest::Approx(N + 1.0));
        CHECK(s.upper.exact_by_suppression);
        bool has_equality = false;
        for (const auto& c : s.upper.certificates)
            if (c.status == CertificateStatus::Equality) has_equality = true;
        CHECK(has_equality);
    }
}

TEST_CASE("lower bounds never cross the trivial ordering") {
    auto summing = make_summing(9);
    SearchBudget budget;
    ConstantTable table = compute_all_constants(*summing, 2, budget,
                                                operator_witnesses_for(*summing, 2),
                                                nu_witnesses_for(*summing, 2));
    for (int N = 1; N <= 2; ++N) {
        LebesgueSandwich s = lebesgue_sandwich(*summing, N, table,
                                               lebesgue_witnesses_for(*summing, N));
        CHECK(s.lower.L_tilde <= s.lower.L + 1e-12);
        CHECK(s.consistent());
        CHECK(s.upper.L == doctest::Approx(1.0 + 6.0 * N));  // linear-in-N bound is tight
        CHECK(s.upper.L_tilde == doctest::Approx(1.0 + 4.0 * N));
    }
}

TEST_CASE("pointwise inequality suite passes on mixed families") {
    SearchBudget budget;
    budget.scale = 0.2;
    {
        auto space = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
        ConstantTable table = compute_all_constants(*space, 2, budget, {},
                                                    nu_witnesses_for(*space, 2));
        auto sandwich = lebesgue_sandwich(*space, 2, table);
        LemmaSuiteResult suite = lemma_suite(*space, 2, table, 600, 5, 1e-9, sandwich);
        CHECK(suite.violations.empty());
        CHECK(suite.checks > 1000);
        bool chain_seen = false;
        for (const auto& c : suite.chain_certificates)
            if (c.status != CertificateStatus::Violated) chain_seen = true;
        CHECK(chain_seen);
    }
    {
        auto space = make_summing(7);
        ConstantTable table = compute_all_constants(*space, 2, budget,
                                                    operator_witnesses_for(*space, 2),
                                                    nu_witnesses_for(*space, 2));
        LemmaSuiteResult suite = lemma_suite(*space, 2, table, 600, 6);
        CHECK(suite.violations.empty());
    }
    {
        auto space = make_trig(1.0, 4, 144);
        ConstantTable table = compute_all_constants(*space, 2, budget, {}, {},
                                                    ExecPolicy::Parallel, true);
        LemmaSuiteResult suite = lemma_suite(*space, 2, table, 150, 7, 1e-6);
        CHECK(suite.violations.empty());
    }
}

TEST_CASE("guards reject oversized scans instead of stalling") {
    auto big = make_lp({1.0, false, 64});
    CoeffVector x(FieldTag::Real, 64);
    for (int i = 1; i <= 64; ++i) x.set(i, 1.0 / i);
    CHECK_THROWS_AS(sigma_tilde(*big, x, 20), RangeError);
    CHECK_THROWS_AS(sigma(*big, x, 20), RangeError);
    CHECK_THROWS_AS(lebesgue_lower(*big, 0, ConstantTable{}), DomainError);
}
