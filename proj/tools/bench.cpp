#include <chrono>
#include <cstdio>
#include <string>

#include "greedylab/constants.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/spaces.hpp"

namespace gl = greedylab;

namespace {

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& label, double serial_ms, double parallel_ms) {
    std::printf("%-38s %10.1f ms %10.1f ms %7.2fx\n", label.c_str(), serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
    std::printf("%-38s %13s %13s %8s\n", "workload", "serial", "parallel", "speedup");
    std::printf("threads available: %d\n", gl::effective_threads());

    {
        auto space = gl::make_summing(14);
        double s = 0, p = 0;
        gl::ConstantEstimate a, b;
        s = time_ms([&] { a = gl::democracy_constant(*space, 3, gl::ConstantKind::tmu,
                                                     gl::ExecPolicy::Serial); });
        p = time_ms([&] { b = gl::democracy_constant(*space, 3, gl::ConstantKind::tmu,
                                                     gl::ExecPolicy::Parallel); });
        row("signed democracy scan, prefix d=14", s, p);
        if (a.lower != b.lower) std::printf("  MISMATCH: %.17g vs %.17g\n", a.lower, b.lower);
    }
    {
        auto space = gl::make_direct_sum({1.0, false, 7}, {2.0, true, 7});
        double s = 0, p = 0;
        gl::ConstantEstimate a, b;
        gl::SearchBudget budget;
        s = time_ms([&] { a = gl::operator_constant(*space, 3, gl::ConstantKind::g_tilde,
                                                    budget, {}, gl::ExecPolicy::Serial); });
        p = time_ms([&] { b = gl::operator_constant(*space, 3, gl::ConstantKind::g_tilde,
                                                    budget, {}, gl::ExecPolicy::Parallel); });
        row("nested greedy pair scan, sum d=14", s, p);
        if (a.lower != b.lower) std::printf("  MISMATCH: %.17g vs %.17g\n", a.lower, b.lower);
    }
    {
        auto space = gl::make_james(2.0, 12);
        gl::CoeffVector x(gl::FieldTag::Real, 12);
        for (int i = 1; i <= 12; ++i) x.set(i, (i % 3 == 0 ? -1.0 : 1.0) / i);
        double s = 0, p = 0;
        gl::SigmaTildeResult a, b;
        s = time_ms([&] { a = gl::sigma_tilde(*space, x, 4, gl::ExecPolicy::Serial); });
        p = time_ms([&] { b = gl::sigma_tilde(*space, x, 4, gl::ExecPolicy::Parallel); });
        row("projection error scan, chain d=12", s, p);
        if (a.best.value != b.best.value)
            std::printf("  MISMATCH: %.17g vs %.17g\n", a.best.value, b.best.value);
    }
    return 0;
}
