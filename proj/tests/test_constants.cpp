#include <doctest.h>

#include <cmath>

#include "greedylab/constants.hpp"
#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/witnesses.hpp"

using namespace greedylab;

TEST_CASE("signed democracy constants reach their closed forms") {
    auto summing = make_summing(9);
    ConstantEstimate tmu = democracy_constant(*summing, 3, ConstantKind::tmu);
    CHECK(tmu.lower == doctest::Approx(3.0));
    CHECK(tmu.exact());
    ConstantEstimate mu = democracy_constant(*summing, 3, ConstantKind::mu);
    CHECK(mu.lower == doctest::Approx(1.0));
    CHECK(mu.exact());
    ConstantEstimate gamma = democracy_constant(*summing, 1, ConstantKind::gamma);
    CHECK(gamma.lower == doctest::Approx(1.0));
    CHECK(gamma.exact());

    auto l1c0 = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
    ConstantEstimate m3 = democracy_constant(*l1c0, 3, ConstantKind::mu);
    CHECK(m3.lower == doctest::Approx(3.0));
    CHECK(m3.exact());

    auto l1l2 = make_direct_sum({1.0, false, 4}, {2.0, false, 4});
    ConstantEstimate t4 = democracy_constant(*l1l2, 4, ConstantKind::tmu);
    CHECK(t4.lower == doctest::Approx(2.0));
    CHECK(t4.exact());
}

TEST_CASE("democracy witnesses replay to their stored value") {
    auto summing = make_summing(8);
    ConstantEstimate tmu = democracy_constant(*summing, 2, ConstantKind::tmu);
    REQUIRE(tmu.witness.A.has_value());
    REQUIRE(tmu.witness.B.has_value());
    REQUIRE(tmu.witness.eps.has_value());
    REQUIRE(tmu.witness.eta.has_value());
    double num = summing->norm(indicator(8, *tmu.witness.A, *tmu.witness.eps));
    double den = summing->norm(indicator(8, *tmu.witness.B, *tmu.witness.eta));
    CHECK(num / den == doctest::Approx(tmu.lower).epsilon(1e-12));
}

TEST_CASE("serial and parallel scans agree bitwise") {
    auto space = make_direct_sum({1.0, false, 5}, {2.0, true, 5});
    for (ConstantKind kind : {ConstantKind::mu, ConstantKind::tmu, ConstantKind::gamma}) {
        ConstantEstimate s = democracy_constant(*space, 2, kind, ExecPolicy::Serial);
        ConstantEstimate p = democracy_constant(*space, 2, kind, ExecPolicy::Parallel);
        CHECK(s.lower == p.lower);
        CHECK(s.upper == p.upper);
    }
    SearchBudget budget;
    budget.scale = 0.2;
    ConstantEstimate s = operator_constant(*space, 2, ConstantKind::g, budget, {},
                                           ExecPolicy::Serial);
    ConstantEstimate p = operator_constant(*space, 2, ConstantKind::g, budget, {},
                                           ExecPolicy::Parallel);
    CHECK(s.lower == p.lower);
}

TEST_CASE("operator constants on the prefix-sum space") {
    auto summing = make_summing(9);
    SearchBudget budget;
    std::vector<OperatorWitness> wits = operator_witnesses_for(*summing, 2);
    for (auto [kind, want] : {std::pair{ConstantKind::k, 4.0},
                              std::pair{ConstantKind::g, 4.0},
                              std::pair{ConstantKind::k_c, 5.0},
                              std::pair{ConstantKind::g_c, 5.0},
                              std::pair{ConstantKind::g_tilde, 4.0}}) {
        ConstantEstimate e = operator_constant(*summing, 2, kind, budget, wits);
        CHECK(e.lower == doctest::Approx(want));
        CHECK(e.exact());
    }
}

TEST_CASE("unconditional spaces have trivial operator constants") {
    auto l1l2 = make_direct_sum({1.0, false, 4}, {2.0, false, 4});
    SearchBudget budget;
    budget.scale = 0.25;
    for (ConstantKind kind : {ConstantKind::k, ConstantKind::k_c, ConstantKind::g,
                              ConstantKind::g_c, ConstantKind::g_hat, ConstantKind::g_tilde}) {
        ConstantEstimate e = operator_constant(*l1l2, 2, kind, budget);
        CHECK(e.lower == doctest::Approx(1.0));
        CHECK(e.upper == doctest::Approx(1.0));
    }
}

TEST_CASE("convexity constant meets its registered values") {
    auto l1c0 = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
    SearchBudget budget;
    for (int N = 1; N <= 3; ++N) {
        ConstantEstimate nu = a_property_constant(*l1c0, N, budget,
                                                  nu_witnesses_for(*l1c0, N));
        CHECK(nu.lower == doctest::Approx(N + 1.0));
        CHECK(nu.exact());
    }
    auto l2c0 = make_direct_sum({2.0, false, 4}, {2.0, true, 4});
    ConstantEstimate nu = a_property_constant(*l2c0, 2, budget,
                                              nu_witnesses_for(*l2c0, 2));
    CHECK(nu.lower == doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK(nu.exact());
}

TEST_CASE("full table is monotone in the order and internally consistent") {
    auto summing = make_summing(9);
    SearchBudget budget;
    std::vector<OperatorWitness> op_w;
    std::vector<NuWitness> nu_w;
    for (int n = 1; n <= 2; ++n) {
        for (auto& w : operator_witnesses_for(*summing, n)) op_w.push_back(w);
        for (auto& w : nu_witnesses_for(*summing, n)) nu_w.push_back(w);
    }
    ConstantTable table = compute_all_constants(*summing, 2, budget, op_w, nu_w);
    for (ConstantKind kind : all_constant_kinds()) {
        REQUIRE(table.has(kind, 1));
        REQUIRE(table.has(kind, 2));
        const auto& a = table.at(kind, 1);
        const auto& b = table.at(kind, 2);
        CHECK(a.lower <= a.upper + 1e-9);
        CHECK(b.lower <= b.upper + 1e-9);
        CHECK(a.lower <= b.lower + 1e-9);  // constants grow with the order
    }
    // chain orderings at N = 2
    auto up = [&](ConstantKind k) { return table.at(k, 2).upper; };
    CHECK(up(ConstantKind::g) <= up(ConstantKind::k) + 1e-9);
    CHECK(up(ConstantKind::g_c) <= up(ConstantKind::k_c) + 1e-9);
    CHECK(up(ConstantKind::g_hat) <= up(ConstantKind::g) + 1e-9);
    CHECK(up(ConstantKind::mu) <= up(ConstantKind::tmu) + 1e-9);
    CHECK(up(ConstantKind::mu_d) <= up(ConstantKind::nu) + 1e-9);
}

TEST_CASE("generic upper bounds cover unregistered orders") {
    auto james = make_james(2.0, 8);
    for (int N : {1, 2, 3}) {
        double k_up = generic_upper_bound(*james, ConstantKind::k, N);
        CHECK(k_up <= james->meta().Kstar * N + 1e-12);
        CHECK(generic_upper_bound(*james, ConstantKind::g, N) <= k_up + 1e-12);
        CHECK(generic_upper_bound(*james, ConstantKind::k_c, N) <= 1.0 + k_up + 1e-12);
    }
    CHECK_THROWS_AS(democracy_constant(*james, 0, ConstantKind::mu), DomainError);
}
