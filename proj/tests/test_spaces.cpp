#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "greedylab/errors.hpp"
#include "greedylab/spaces.hpp"

using namespace greedylab;

namespace {

CoeffVector random_vector(const Space& space, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    CoeffVector x(space.field(), space.dim());
    for (int i = 1; i <= space.dim(); ++i) {
        if (space.field() == FieldTag::Real) x.set(i, unif(rng));
        else x.set(i, Complex(unif(rng), unif(rng)));
    }
    return x;
}

void check_norm_axioms(const Space& space, int samples, double tol) {
    std::mt19937_64 rng(0xabcdef12u + static_cast<uint64_t>(space.dim()));
    std::uniform_real_distribution<double> scale(-3.0, 3.0);
    CHECK(space.norm(space.zero()) == 0.0);
    for (int t = 0; t < samples; ++t) {
        CoeffVector x = random_vector(space, rng);
        CoeffVector y = random_vector(space, rng);
        double nx = space.norm(x), ny = space.norm(y);
        CHECK(nx >= 0.0);
        if (!x.is_zero()) CHECK(nx > 0.0);
        double s = scale(rng);
        CHECK(space.norm(Complex(s, 0.0) * x) ==
              doctest::Approx(std::abs(s) * nx).epsilon(tol));
        CHECK(space.norm(x + y) <= nx + ny + tol * std::max(1.0, nx + ny));
    }
    // basis vector norms stay inside the declared bracket
    for (int i = 1; i <= space.dim(); ++i) {
        CoeffVector e(space.field(), space.dim());
        e.set(i, 1.0);
        double v = space.norm(e);
        CHECK(v >= space.meta().kappa1 - tol);
        CHECK(v <= space.meta().kappa2 + tol);
    }
}

}  // namespace

TEST_CASE("norm axioms hold on every example family") {
    check_norm_axioms(*make_lp({1.0, false, 6}), 300, 1e-12);
    check_norm_axioms(*make_lp({2.0, false, 6}), 300, 1e-12);
    check_norm_axioms(*make_lp({2.5, false, 5}), 300, 1e-12);
    check_norm_axioms(*make_lp({2.0, true, 6}), 300, 1e-12);
    check_norm_axioms(*make_summing(8), 300, 1e-12);
    check_norm_axioms(*make_direct_sum({1.0, false, 4}, {2.0, true, 4}), 300, 1e-12);
    check_norm_axioms(*make_direct_sum({1.0, false, 4}, {2.0, false, 4}), 300, 1e-12);
    check_norm_axioms(*make_james(2.0, 7), 200, 1e-12);
    check_norm_axioms(*make_mixed_dyadic(2.0, {0, 2, 1, 3}), 150, 1e-12);
    check_norm_axioms(*make_trig(1.0, 6, 208), 60, 1e-9);
    check_norm_axioms(*make_trig(2.0, 6, 208), 60, 1e-9);
}

TEST_CASE("summing norm equals the largest partial sum") {
    auto space = make_summing(7);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        CoeffVector x(FieldTag::Real, 7);
        for (int i = 1; i <= 7; ++i) x.set(i, unif(rng));
        double run = 0.0, best = 0.0;
        for (int i = 1; i <= 7; ++i) {
            run += x.at(i).real();
            best = std::max(best, std::abs(run));
        }
        CHECK(space->norm(x) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("chain norm matches exhaustive block partitions") {
    for (double q : {1.5, 2.0, 3.0}) {
        auto space = make_james(q, 8);
        std::mt19937_64 rng(33 + int(q * 2));
        std::uniform_real_distribution<double> unif(-2.0, 2.0);
        for (int t = 0; t < 60; ++t) {
            int d = 2 + t % 7;
            CoeffVector x(FieldTag::Real, 8);
            for (int i = 1; i <= d; ++i) x.set(i, unif(rng));
            // every composition of 1..d into consecutive blocks, with gaps
            // allowed at both ends and between blocks
            double best = 0.0;
            std::function<void(int, double)> rec = [&](int from, double acc) {
                best = std::max(best, std::pow(acc, 1.0 / q));
                for (int lo = from; lo <= d; ++lo) {
                    double sum = 0.0;
                    for (int hi = lo; hi <= d; ++hi) {
                        sum += x.at(hi).real();
                        rec(hi + 1, acc + std::pow(std::abs(sum), q));
                    }
                }
            };
            rec(1, 0.0);
            CHECK(space->norm(x) == doctest::Approx(best).epsilon(1e-10));
        }
    }
    CHECK(make_james(2.0, 3)->norm(CoeffVector::real({1, -1, 1})) ==
          doctest::Approx(std::sqrt(3.0)));
    CHECK(make_james(2.0, 2)->norm(CoeffVector::real({1, 1})) == doctest::Approx(2.0));
}

TEST_CASE("dyadic aggregate norm matches a direct grid integral") {
    auto space = make_mixed_dyadic(2.0, {0, 2, 1, 3});
    const auto& layout = space->layout();
    int cells = 1 << layout.max_level();
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        CoeffVector x(FieldTag::Real, space->dim());
        for (int i = 1; i <= space->dim(); ++i) x.set(i, unif(rng));
        double integral = 0.0;
        for (int cell = 0; cell < cells; ++cell) {
            double acc = 0.0;
            for (size_t b = 0; b < layout.levels.size(); ++b) {
                int level = layout.levels[b];
                int idx = cell >> (layout.max_level() - level);
                double v = x.at(layout.block_first(int(b)) + idx).real();
                acc += std::pow(std::abs(v) * double(1 << level), 2.0);
            }
            integral += std::sqrt(acc) / cells;
        }
        CHECK(space->f_norm(x) == doctest::Approx(integral).epsilon(1e-10));
        CHECK(space->norm(x) ==
              doctest::Approx(std::max(space->f_norm(x), space->james_norm(x))));
    }
}

TEST_CASE("frequency-side norms match closed forms") {
    auto space = make_trig(2.0, 8, 272);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        CoeffVector x(FieldTag::Complex, space->dim());
        double sq = 0.0;
        for (int i = 1; i <= space->dim(); ++i) {
            Complex c(unif(rng), unif(rng));
            x.set(i, c);
            sq += std::norm(c);
        }
        CHECK(space->norm(x) == doctest::Approx(std::sqrt(sq)).epsilon(1e-9));
    }
    for (double p : {1.0, 2.0}) {
        auto sp = make_trig(p, 8, 272);
        CoeffVector e(FieldTag::Complex, sp->dim());
        e.set(sp->coord_of_frequency(-3), 1.0);
        CHECK(sp->norm(e) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_trig(1.0, 8, 100), PrecisionError);
}

TEST_CASE("space construction from JSON configs") {
    auto summing = space_from_json_text(R"({"space":"summing","dim":14})");
    CHECK(summing->dim() == 14);
    CHECK(summing->name() == "summing(14)");

    auto sum = space_from_json_text(
        R"({"space":"direct_sum","left":{"p":1,"dim":4},"right":{"c0":true,"dim":4}})");
    CHECK(sum->dim() == 8);
    CHECK(sum->name() == "direct_sum(lp(1,4),c0(4))");

    auto james = space_from_json_text(R"({"space":"james","q":2,"dim":10})");
    CHECK(james->dim() == 10);

    auto dyadic = space_from_json_text(R"({"space":"mixed_dyadic","q":2,"levels":[0,2,1,3]})");
    CHECK(dyadic->dim() == 15);

    auto trig = space_from_json_text(R"({"space":"trig","p":1,"n_max":6,"M":208})");
    CHECK(trig->dim() == 13);

    CHECK_THROWS_AS(space_from_json_text("{oops"), ConfigError);
    CHECK_THROWS_AS(space_from_json_text(R"({"space":"nope","dim":3})"), ConfigError);
    CHECK_THROWS_AS(space_from_json_text(R"({"dim":3})"), ConfigError);
    CHECK_THROWS_AS(space_from_json_text(R"({"space":"summing"})"), ConfigError);
    CHECK_THROWS_AS(space_from_json_text(R"({"space":"summing","dim":0})"), ConfigError);
    CHECK_THROWS_AS(
        space_from_json_text(R"({"space":"direct_sum","left":{"p":0.5,"dim":3}})"),
        ConfigError);
}
