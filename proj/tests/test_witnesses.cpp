#include <doctest.h>

#include <cmath>
#include <complex>

#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/witnesses.hpp"

using namespace greedylab;

namespace {

double replay(const Space& space, const WitnessSpec& w, const std::string& set_key,
              const std::string& sign_key) {
    CoeffVector v = w.x;
    const IndexSet& S = w.sets.at(set_key);
    const SignPattern& sg = w.signs.at(sign_key);
    for (int i : S.labels()) v.set(i, v.at(i) + sg.at(i));
    return space.norm(v);
}

}  // namespace

TEST_CASE("prefix-sum space witnesses replay their stored norms") {
    auto space = make_summing(14);
    for (int N = 1; N <= 3; ++N) {
        auto specs = summing_witnesses(*space, N);
        REQUIRE(specs.size() == 3);
        for (const auto& w : specs) {
            if (w.name == "alternating two-block vector") {
                CHECK(space->norm(w.x) == doctest::Approx(w.expected.at("norm")));
                CHECK(space->norm(project(w.x, w.sets.at("Gamma"))) ==
                      doctest::Approx(w.expected.at("projection_norm")));
                CHECK(space->norm(project_complement(w.x, w.sets.at("GammaPrime"))) ==
                      doctest::Approx(w.expected.at("complement_norm")));
                CHECK(is_greedy_set(w.x, w.sets.at("Gamma")));
                CHECK(w.expected.at("projection_norm") == doctest::Approx(2.0 * N));
            } else if (w.name == "cancelling comb configuration") {
                CHECK(replay(*space, w, "A", "eps") ==
                      doctest::Approx(w.expected.at("numerator_norm")));
                CHECK(replay(*space, w, "B", "eta") ==
                      doctest::Approx(w.expected.at("denominator_norm")));
                CHECK(w.expected.at("ratio") == doctest::Approx(1.0 + 4.0 * N));
                CHECK(w.sets.at("A").disjoint_from(w.sets.at("B")));
                for (int l : w.x.support()) {
                    CHECK_FALSE(w.sets.at("A").contains(l));
                    CHECK_FALSE(w.sets.at("B").contains(l));
                }
                CHECK(w.x.linf() <= 1.0);
            } else {
                REQUIRE(w.feasible_z.has_value());
                CHECK(space->norm(project_complement(w.x, w.sets.at("Gamma"))) ==
                      doctest::Approx(w.expected.at("complement_norm")));
                CHECK(space->norm(w.x - *w.feasible_z) ==
                      doctest::Approx(w.expected.at("approximant_error")));
                CHECK(w.expected.at("ratio") == doctest::Approx(6.0 * N + 1.0));
                CHECK(is_greedy_set(w.x, w.sets.at("Gamma")));
                CHECK(int(w.feasible_z->support().size()) <= N);
            }
        }
    }
    // tight dimensions drop the configurations that no longer fit
    auto small = make_summing(9);
    CHECK(summing_witnesses(*small, 2).size() == 2);
    CHECK(summing_witnesses(*small, 4).size() == 1);
    CHECK(summing_witnesses(*small, 5).empty());
}

TEST_CASE("block-sum witnesses replay on every family orientation") {
    struct Case {
        BlockSpec l, r;
        double dem3, nu3;
    };
    const double s3 = std::sqrt(3.0);
    Case cases[] = {
        {{1.0, false, 4}, {2.0, true, 4}, 3.0, 4.0},
        {{2.0, true, 4}, {1.0, false, 4}, 3.0, 4.0},
        {{1.0, false, 4}, {2.0, false, 4}, s3, 2.0},
        {{2.0, false, 4}, {2.0, true, 4}, 1.0 + std::sqrt(2.0), 1.0 + s3},
    };
    for (const auto& cs : cases) {
        auto space = make_direct_sum(cs.l, cs.r);
        auto specs = direct_sum_witnesses(*space, cs.l, cs.r, 3);
        REQUIRE(specs.size() == 2);
        for (const auto& w : specs) {
            if (w.name == "democracy extremal pair") {
                double num = space->norm(indicator(8, w.sets.at("num_set")));
                double den = space->norm(indicator(8, w.sets.at("den_set")));
                CHECK(num == doctest::Approx(w.expected.at("numerator_norm")));
                CHECK(den == doctest::Approx(w.expected.at("denominator_norm")));
                CHECK(num / den == doctest::Approx(cs.dem3));
            } else {
                CHECK(replay(*space, w, "A", "eps") ==
                      doctest::Approx(w.expected.at("numerator_norm")));
                CHECK(replay(*space, w, "B", "eta") ==
                      doctest::Approx(w.expected.at("denominator_norm")));
                CHECK(w.expected.at("ratio") == doctest::Approx(cs.nu3));
            }
        }
    }
    BlockSpec l1{1.0, false, 4};
    auto twin = make_direct_sum(l1, l1);
    CHECK(direct_sum_witnesses(*twin, l1, l1, 2).empty());
}

TEST_CASE("kernel vectors have the classical coefficient profiles") {
    auto space = make_trig(1.0, 20, 656);
    CoeffVector D = trig_dirichlet(*space, 3);
    for (int k = -20; k <= 20; ++k) {
        Complex c = D.at(space->coord_of_frequency(k));
        CHECK(c == Complex(std::abs(k) <= 3 ? 1.0 : 0.0));
    }
    CoeffVector F = trig_fejer(*space, 3);
    CHECK(std::abs(F.at(space->coord_of_frequency(2))) == doctest::Approx(0.5));
    CHECK(space->norm(F) == doctest::Approx(1.0).epsilon(1e-9));  // nonnegative kernel

    for (int N : {2, 4, 6, 9}) {
        CoeffVector V = trig_vallee_poussin(*space, N);
        CHECK(space->norm(V) <= 3.0 + 1e-9);
        for (int k = -N; k <= N; ++k)
            CHECK(std::abs(V.at(space->coord_of_frequency(k))) == doctest::Approx(1.0));
        CHECK(std::abs(V.at(space->coord_of_frequency(2 * N + 1))) ==
              doctest::Approx(1.0 / (N + 1)));
    }
    CHECK_THROWS_AS(trig_dirichlet(*space, 21), RangeError);
    CHECK_THROWS_AS(trig_vallee_poussin(*space, 10), RangeError);
}

TEST_CASE("flat-spectrum signs keep both recursion halves flat") {
    for (int k : {0, 1, 2, 3, 5}) {
        auto P = rudin_shapiro_signs(k);
        REQUIRE(int(P.size()) == (1 << k));
        for (int s : P) CHECK(std::abs(s) == 1);
        // rebuild the companion sequence and check the parallelogram law
        // |P(z)|^2 + |Q(z)|^2 = 2^(k+1) on the unit circle
        std::vector<int> p = {1}, q = {1};
        for (int step = 0; step < k; ++step) {
            std::vector<int> np = p, nq = p;
            np.insert(np.end(), q.begin(), q.end());
            for (int s : q) nq.push_back(-s);
            p = std::move(np);
            q = std::move(nq);
        }
        CHECK(p == P);
        for (int t = 0; t < 32; ++t) {
            double theta = 2.0 * M_PI * t / 32.0;
            Complex zp = 0.0, zq = 0.0;
            for (size_t j = 0; j < p.size(); ++j) {
                Complex e = std::polar(1.0, theta * double(j));
                zp += double(p[j]) * e;
                zq += double(q[j]) * e;
            }
            CHECK(std::norm(zp) + std::norm(zq) ==
                  doctest::Approx(std::pow(2.0, k + 1)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(rudin_shapiro_signs(30), RangeError);
}

TEST_CASE("lacunary configurations are valid convexity witnesses") {
    auto space = make_trig(1.0, 127, 4096);
    for (int N : {2, 8, 32}) {
        WitnessSpec w = trig_lacunary_nu(*space, N);
        CHECK(w.sets.at("A").size() == 2 * N + 1);
        CHECK(w.sets.at("B").size() == 2 * N + 1);
        CHECK(w.sets.at("A").disjoint_from(w.sets.at("B")));
        for (int l : w.x.support()) {
            CHECK_FALSE(w.sets.at("A").contains(l));
            CHECK_FALSE(w.sets.at("B").contains(l));
        }
        CHECK(w.x.linf() <= 1.0 + 1e-12);
        CHECK(replay(*space, w, "A", "eps") ==
              doctest::Approx(w.expected.at("numerator_norm")).epsilon(1e-6));
        CHECK(replay(*space, w, "B", "eta") ==
              doctest::Approx(w.expected.at("denominator_norm")).epsilon(1e-6));
        CHECK(w.expected.at("ratio") > 1.0);
    }
    CHECK_THROWS_AS(trig_lacunary_nu(*space, 60), RangeError);

    // a wide window selects the power-of-two frequencies
    auto wide = make_trig(1.0, 128, 4128);
    WitnessSpec w = trig_lacunary_nu(*wide, 2);
    CHECK(w.notes.find("power") == 0);
    CHECK(w.sets.at("A").contains(wide->coord_of_frequency(8)));
    CHECK(w.sets.at("A").contains(wide->coord_of_frequency(128)));
}

TEST_CASE("interleaved dyadic construction hits its closed-form norms") {
    for (double q : {1.0, 2.0}) {
        for (int n : {2, 3}) {
            auto c = mixed_dyadic_construction(q, n);
            CHECK(c.space->dim() == (1 << (2 * n)) - 1);
            CHECK(c.P == (1 << n) - 1);
            CHECK(c.gamma.size() == c.P);
            CHECK(c.space->norm(c.x) ==
                  doctest::Approx(std::pow(2.0 * n, 1.0 / q)));
            CHECK(c.space->norm(project(c.x, c.gamma)) == doctest::Approx(double(n)));
            CHECK(is_greedy_set(c.x, c.gamma));
            GreedyFamily fam = greedy_sets(c.x, c.P);
            CHECK(fam.count() == 1);  // strict modulus gaps force a unique set
        }
    }
    auto cinf = mixed_dyadic_construction(std::numeric_limits<double>::infinity(), 2);
    CHECK(cinf.space->norm(cinf.x) == doctest::Approx(1.0));
    CHECK(cinf.spec.expected.at("norm") == doctest::Approx(1.0));
    CHECK_THROWS_AS(mixed_dyadic_construction(2.0, 0), DomainError);
    CHECK_THROWS_AS(mixed_dyadic_construction(2.0, 8), LayoutError);
}

TEST_CASE("bridges hand witnesses to the matching searches only") {
    auto summing = make_summing(14);
    CHECK(operator_witnesses_for(*summing, 2).size() == 3);
    CHECK(nu_witnesses_for(*summing, 2).size() == 1);
    CHECK(lebesgue_witnesses_for(*summing, 2).size() == 2);

    auto l1c0 = make_direct_sum({1.0, false, 4}, {2.0, true, 4});
    CHECK(operator_witnesses_for(*l1c0, 2).empty());
    CHECK(nu_witnesses_for(*l1c0, 2).size() == 1);
    CHECK(lebesgue_witnesses_for(*l1c0, 2).empty());

    auto trig = make_trig(1.0, 20, 656);
    CHECK(nu_witnesses_for(*trig, 2).empty());       // window would need order 3
    CHECK(nu_witnesses_for(*trig, 3).size() == 1);   // parameter 1, sets of size 3

    auto lp = make_lp({2.0, false, 5});
    CHECK(nu_witnesses_for(*lp, 2).empty());
    CHECK(operator_witnesses_for(*lp, 2).empty());
}
