#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greedylab/constants.hpp"
#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/report.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/witnesses.hpp"

namespace gl = greedylab;

namespace {

constexpr double kTol = 1e-9;

struct Options {
    std::string space_arg;
    std::string n_range = "1..3";
    std::vector<std::string> suites;
    uint64_t seed = 1;
    long long budget = 20000;
    std::string out_path;
    std::string format = "json";
    std::string example;
};

std::pair<int, int> parse_range(const std::string& text) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            size_t used = 0;
            int v = std::stoi(text, &used);
            if (used != text.size()) throw gl::ConfigError("trailing characters in --N");
            return {v, v};
        }
        size_t used = 0;
        int a = std::stoi(text.substr(0, pos), &used);
        if (used != pos) throw gl::ConfigError("bad lower endpoint in --N");
        std::string hi = text.substr(pos + 2);
        int b = std::stoi(hi, &used);
        if (used != hi.size()) throw gl::ConfigError("bad upper endpoint in --N");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw gl::ConfigError("--N expects an integer or a..b range, got '" + text + "'");
    } catch (const std::out_of_range&) {
        throw gl::ConfigError("--N endpoint out of integer range in '" + text + "'");
    }
}

gl::SpacePtr load_space(const std::string& arg) {
    if (arg.empty()) throw gl::ConfigError("--space is required");
    std::string text = arg;
    if (arg.find('{') == std::string::npos) {
        std::ifstream f(arg);
        if (!f) throw gl::ConfigError("cannot read space config file '" + arg + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        text = buf.str();
    }
    return gl::space_from_json_text(text);
}

gl::SearchBudget make_budget(const Options& opt) {
    if (opt.budget < 1) throw gl::ConfigError("--budget must be positive");
    gl::SearchBudget b;
    b.seed = opt.seed;
    b.nu_samples = static_cast<uint64_t>(opt.budget);
    b.scale = static_cast<double>(opt.budget) / 20000.0;
    return b;
}

bool suite_on(const Options& opt, const std::string& name, bool fallback) {
    if (opt.suites.empty()) return fallback;
    for (const auto& s : opt.suites)
        if (s == name) return true;
    return false;
}

void emit(const gl::Report& report, const Options& opt) {
    std::string text;
    if (opt.format == "json") {
        text = report.to_json().dump(2) + "\n";
    } else if (opt.format == "csv") {
        text = report.to_csv();
    } else if (opt.format == "md") {
        text = report.to_markdown();
    } else {
        throw gl::ConfigError("--format must be csv, json or md");
    }
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        gl::write_text_file(opt.out_path, text);
    }
}

// union of the canned constructions over every order in the range
void collect_witnesses(const gl::Space& space, int n_hi,
                       std::vector<gl::OperatorWitness>& op_w,
                       std::vector<gl::NuWitness>& nu_w) {
    for (int n = 1; n <= n_hi; ++n) {
        for (auto& w : gl::operator_witnesses_for(space, n)) op_w.push_back(std::move(w));
        for (auto& w : gl::nu_witnesses_for(space, n)) nu_w.push_back(std::move(w));
    }
}

gl::Report base_report(const gl::Space& space, const Options& opt) {
    gl::Report r;
    r.space_name = space.name();
    r.dim = space.dim();
    r.field = space.field();
    r.seed = opt.seed;
    return r;
}

int finish(gl::Report& report, const Options& opt, int code_so_far) {
    emit(report, opt);
    if (code_so_far != 0) return code_so_far;
    return report.violated_count() > 0 ? 1 : 0;
}

int cmd_constants(const Options& opt) {
    auto space = load_space(opt.space_arg);
    auto [n_lo, n_hi] = parse_range(opt.n_range);
    gl::Report report = base_report(*space, opt);
    if (n_lo > n_hi || n_hi < 1) {
        return finish(report, opt, 0);
    }
    gl::SearchBudget budget = make_budget(opt);
    std::vector<gl::OperatorWitness> op_w;
    std::vector<gl::NuWitness> nu_w;
    collect_witnesses(*space, n_hi, op_w, nu_w);
    int guard_code = 0;
    try {
        gl::ConstantTable table =
            gl::compute_all_constants(*space, n_hi, budget, op_w, nu_w,
                                      gl::ExecPolicy::Parallel, true);
        for (const auto& [key, est] : table.entries()) {
            if (est.N >= n_lo && est.N <= n_hi) report.constants.push_back(est);
        }
        if (suite_on(opt, "lebesgue", false)) {
            for (int n = std::max(1, n_lo); n <= n_hi; ++n) {
                report.sandwiches.push_back(gl::lebesgue_sandwich(
                    *space, n, table, gl::lebesgue_witnesses_for(*space, n)));
            }
        }
        if (suite_on(opt, "lemmas", false)) {
            auto suite = gl::lemma_suite(*space, n_hi, table,
                                         static_cast<uint64_t>(opt.budget), opt.seed);
            report.notes.push_back("lemma suite: " + std::to_string(suite.checks) +
                                   " checks on " + std::to_string(suite.samples) +
                                   " samples");
            for (auto& c : suite.violations) report.certificates.push_back(std::move(c));
        }
    } catch (const gl::SizeError& e) {
        report.notes.push_back(std::string("size guard: ") + e.what());
        guard_code = 3;
    } catch (const gl::RangeError& e) {
        report.notes.push_back(std::string("range guard: ") + e.what());
        guard_code = 3;
    }
    return finish(report, opt, guard_code);
}

int cmd_verify(const Options& opt) {
    auto space = load_space(opt.space_arg);
    auto [n_lo, n_hi] = parse_range(opt.n_range);
    gl::Report report = base_report(*space, opt);
    if (n_lo > n_hi || n_hi < 1) {
        return finish(report, opt, 0);
    }
    gl::SearchBudget budget = make_budget(opt);
    std::vector<gl::OperatorWitness> op_w;
    std::vector<gl::NuWitness> nu_w;
    collect_witnesses(*space, n_hi, op_w, nu_w);
    int guard_code = 0;
    try {
        gl::ConstantTable table =
            gl::compute_all_constants(*space, n_hi, budget, op_w, nu_w,
                                      gl::ExecPolicy::Parallel, true);
        if (suite_on(opt, "constants", false)) {
            for (const auto& [key, est] : table.entries()) {
                if (est.N >= n_lo && est.N <= n_hi) report.constants.push_back(est);
            }
        }
        std::optional<gl::LebesgueSandwich> last;
        if (suite_on(opt, "lebesgue", true)) {
            for (int n = std::max(1, n_lo); n <= n_hi; ++n) {
                auto s = gl::lebesgue_sandwich(*space, n, table,
                                               gl::lebesgue_witnesses_for(*space, n));
                last = s;
                report.sandwiches.push_back(std::move(s));
            }
        }
        if (suite_on(opt, "lemmas", true)) {
            auto suite = gl::lemma_suite(*space, n_hi, table,
                                         static_cast<uint64_t>(opt.budget), opt.seed,
                                         kTol, last);
            report.notes.push_back("lemma suite: " + std::to_string(suite.checks) +
                                   " checks on " + std::to_string(suite.samples) +
                                   " samples");
            for (auto& c : suite.violations) report.certificates.push_back(std::move(c));
            for (auto& c : suite.chain_certificates)
                report.certificates.push_back(std::move(c));
        }
    } catch (const gl::SizeError& e) {
        report.notes.push_back(std::string("size guard: ") + e.what());
        guard_code = 3;
    } catch (const gl::RangeError& e) {
        report.notes.push_back(std::string("range guard: ") + e.what());
        guard_code = 3;
    }
    return finish(report, opt, guard_code);
}

// ---- reproduce ---------------------------------------------------------

struct EqualityLine {
    std::string label;
    // empty kind means a Lebesgue quantity: "L" or "L~"
    std::optional<gl::ConstantKind> kind;
    bool tilde = false;
    double (*value)(int N);
};

void check_equalities(const gl::Space& space, const std::vector<EqualityLine>& lines,
                      int n_hi, const Options& opt, gl::Report& report) {
    gl::SearchBudget budget = make_budget(opt);
    std::vector<gl::OperatorWitness> op_w;
    std::vector<gl::NuWitness> nu_w;
    collect_witnesses(space, n_hi, op_w, nu_w);
    gl::ConstantTable table = gl::compute_all_constants(space, n_hi, budget, op_w, nu_w,
                                                        gl::ExecPolicy::Parallel, true);
    std::vector<gl::LebesgueSandwich> sandwiches;
    for (int n = 1; n <= n_hi; ++n) {
        sandwiches.push_back(
            gl::lebesgue_sandwich(space, n, table, gl::lebesgue_witnesses_for(space, n)));
    }
    for (const auto& [key, est] : table.entries()) report.constants.push_back(est);
    for (const auto& s : sandwiches) report.sandwiches.push_back(s);

    for (const auto& line : lines) {
        bool ok = true;
        std::ostringstream detail;
        for (int n = 1; n <= n_hi; ++n) {
            double want = line.value(n);
            double lo, hi;
            if (line.kind) {
                const auto& est = table.at(*line.kind, n);
                lo = est.lower;
                hi = est.upper;
            } else if (line.tilde) {
                lo = sandwiches[size_t(n - 1)].lower.L_tilde;
                hi = sandwiches[size_t(n - 1)].upper.L_tilde;
            } else {
                lo = sandwiches[size_t(n - 1)].lower.L;
                hi = sandwiches[size_t(n - 1)].upper.L;
            }
            double scale = std::max(1.0, std::abs(want));
            if (std::abs(lo - want) > kTol * scale || std::abs(hi - want) > kTol * scale)
                ok = false;
            if (n > 1) detail << ", ";
            detail << "N=" << n << ": [" << lo << ", " << hi << "] vs " << want;
        }
        gl::BoundCertificate cert;
        cert.name = line.label;
        cert.lhs = line.value(n_hi);
        cert.rhs = line.value(n_hi);
        cert.status = ok ? gl::CertificateStatus::Equality : gl::CertificateStatus::Violated;
        cert.detail = detail.str();
        report.certificates.push_back(std::move(cert));
    }
}

double slope_fit(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int reproduce_trig(const Options& opt) {
    auto space = gl::make_trig(1.0, 127, 4096);
    gl::Report report = base_report(*space, opt);

    for (int N : {4, 8, 16}) {
        double v = space->norm(gl::trig_vallee_poussin(*space, N));
        gl::BoundCertificate c;
        c.name = "smoothing kernel mean norm, window " + std::to_string(N);
        c.lhs = v;
        c.rhs = 3.0;
        c.status = v <= 3.0 + 1e-6 ? gl::CertificateStatus::Holds
                                   : gl::CertificateStatus::Violated;
        report.certificates.push_back(std::move(c));
    }

    std::vector<std::pair<double, double>> pts;
    for (int N : {4, 8, 16, 32}) {
        auto w = gl::trig_lacunary_nu(*space, N);
        double ratio = w.expected.at("ratio");
        pts.push_back({std::log(double(N)), std::log(ratio)});
        report.notes.push_back("lacunary ratio at window " + std::to_string(N) + ": " +
                               std::to_string(ratio) + " (" + w.notes + ")");
    }
    double slope = slope_fit(pts);
    gl::BoundCertificate c;
    c.name = "lacunary ratio log-log slope";
    c.lhs = std::abs(slope - 0.5);
    c.rhs = 0.15;
    c.status = c.lhs <= c.rhs ? gl::CertificateStatus::Holds
                              : gl::CertificateStatus::Violated;
    c.detail = "fitted slope " + std::to_string(slope) + ", expected 0.5 +/- 0.15";
    report.certificates.push_back(std::move(c));

    for (int n : {8, 16, 32, 64}) {
        double v = space->norm(gl::trig_dirichlet(*space, n));
        report.notes.push_back("spike kernel mean norm over log at window " +
                               std::to_string(n) + ": " + std::to_string(v / std::log(n)));
    }
    return finish(report, opt, 0);
}

int reproduce_mixed(const Options& opt) {
    gl::Report report;
    report.space_name = "interleaved dyadic family, q = 2";
    report.field = gl::FieldTag::Real;
    report.seed = opt.seed;

    std::vector<double> nu_emp;
    double c_obs = 1.0;
    for (int n : {2, 3, 4}) {
        auto c = gl::mixed_dyadic_construction(2.0, n);
        const auto& sp = *c.space;
        report.dim = sp.dim();
        double norm_x = sp.norm(c.x);
        double part = sp.norm(gl::project(c.x, c.gamma));
        double want_x = c.spec.expected.at("norm");
        auto push = [&](const std::string& name, double lhs, double rhs, bool equality) {
            gl::BoundCertificate cert;
            cert.name = name + ", n = " + std::to_string(n);
            cert.lhs = lhs;
            cert.rhs = rhs;
            bool ok = equality ? std::abs(lhs - rhs) <= kTol * std::max(1.0, std::abs(rhs))
                               : lhs <= rhs + kTol * std::max(1.0, std::abs(rhs));
            cert.status = !ok ? gl::CertificateStatus::Violated
                              : (equality ? gl::CertificateStatus::Equality
                                          : gl::CertificateStatus::Holds);
            report.certificates.push_back(std::move(cert));
        };
        push("alternating-level vector norm equals (2n)^(1/2)", norm_x, want_x, true);
        push("greedy-part norm equals n", part, double(n), true);
        push("coordinate-drop lower bound at least n^(1/2)", std::sqrt(double(n)),
             part / norm_x, false);

        // signed indicator norms never exceed the set size
        std::mt19937_64 rng(opt.seed + static_cast<uint64_t>(n));
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_int_distribution<int> coord(1, sp.dim());
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            std::set<int> labels;
            int want = 1 + trial % std::min(8, sp.dim());
            while (static_cast<int>(labels.size()) < want) labels.insert(coord(rng));
            gl::IndexSet A(std::vector<int>(labels.begin(), labels.end()));
            gl::SignPattern eps;
            for (int l : A.labels()) eps.set(l, coin(rng) ? 1.0 : -1.0);
            double v = sp.norm(gl::indicator(sp.dim(), A, eps));
            worst = std::max(worst, v / A.size());
            c_obs = std::max(c_obs, A.size() / v);
        }
        push("signed indicator norm over set size", worst, 1.0, false);

        gl::SearchBudget budget = make_budget(opt);
        budget.scale = std::min(budget.scale, 0.25);
        auto nu = gl::a_property_constant(sp, 2, budget, gl::nu_witnesses_for(sp, 2));
        nu_emp.push_back(nu.lower);
        report.notes.push_back("sampled nu lower at order 2, n = " + std::to_string(n) +
                               ": " + std::to_string(nu.lower));
    }
    gl::BoundCertificate bounded;
    bounded.name = "sampled nu stays bounded across n";
    bounded.lhs = *std::max_element(nu_emp.begin(), nu_emp.end());
    bounded.rhs = 3.0 * c_obs;
    bounded.status = bounded.lhs <= bounded.rhs + kTol
                         ? gl::CertificateStatus::Holds
                         : gl::CertificateStatus::Violated;
    bounded.detail = "observed indicator-norm defect " + std::to_string(c_obs);
    report.certificates.push_back(std::move(bounded));
    gl::BoundCertificate trend;
    trend.name = "sampled nu shows no growth in n";
    trend.lhs = nu_emp.back();
    trend.rhs = nu_emp.front() + 0.25;
    trend.status = trend.lhs <= trend.rhs + kTol ? gl::CertificateStatus::Holds
                                                 : gl::CertificateStatus::Violated;
    report.certificates.push_back(std::move(trend));
    return finish(report, opt, 0);
}

int cmd_reproduce(const Options& opt) {
    const std::string& id = opt.example;
    if (id == "5.1") {
        auto space = gl::make_summing(14);
        gl::Report report = base_report(*space, opt);
        check_equalities(*space,
                         {{"mu(N) = 1", gl::ConstantKind::mu, false,
                           [](int) { return 1.0; }},
                          {"tmu(N) = N", gl::ConstantKind::tmu, false,
                           [](int n) { return double(n); }},
                          {"g(N) = 2N", gl::ConstantKind::g, false,
                           [](int n) { return 2.0 * n; }},
                          {"k(N) = 2N", gl::ConstantKind::k, false,
                           [](int n) { return 2.0 * n; }},
                          {"g_c(N) = 1 + 2N", gl::ConstantKind::g_c, false,
                           [](int n) { return 1.0 + 2.0 * n; }},
                          {"k_c(N) = 1 + 2N", gl::ConstantKind::k_c, false,
                           [](int n) { return 1.0 + 2.0 * n; }},
                          {"nu(N) = 1 + 4N", gl::ConstantKind::nu, false,
                           [](int n) { return 1.0 + 4.0 * n; }},
                          {"L~(N) = 1 + 4N", std::nullopt, true,
                           [](int n) { return 1.0 + 4.0 * n; }},
                          {"L(N) = 1 + 6N", std::nullopt, false,
                           [](int n) { return 1.0 + 6.0 * n; }}},
                         3, opt, report);
        return finish(report, opt, 0);
    }
    if (id == "5.2") {
        auto space = gl::make_direct_sum({1.0, false, 4}, {2.0, true, 4});
        gl::Report report = base_report(*space, opt);
        check_equalities(*space,
                         {{"mu(N) = N", gl::ConstantKind::mu, false,
                           [](int n) { return double(n); }},
                          {"tmu(N) = N", gl::ConstantKind::tmu, false,
                           [](int n) { return double(n); }},
                          {"g(N) = 1", gl::ConstantKind::g, false,
                           [](int) { return 1.0; }},
                          {"k(N) = 1", gl::ConstantKind::k, false,
                           [](int) { return 1.0; }},
                          {"g_c(N) = 1", gl::ConstantKind::g_c, false,
                           [](int) { return 1.0; }},
                          {"k_c(N) = 1", gl::ConstantKind::k_c, false,
                           [](int) { return 1.0; }},
                          {"nu(N) = N + 1", gl::ConstantKind::nu, false,
                           [](int n) { return n + 1.0; }},
                          {"L~(N) = N + 1", std::nullopt, true,
                           [](int n) { return n + 1.0; }},
                          {"L(N) = N + 1", std::nullopt, false,
                           [](int n) { return n + 1.0; }}},
                         3, opt, report);
        return finish(report, opt, 0);
    }
    if (id == "5.3") {
        auto space = gl::make_direct_sum({1.0, false, 4}, {2.0, false, 4});
        gl::Report report = base_report(*space, opt);
        check_equalities(*space,
                         {{"mu(N) = N^(1/2)", gl::ConstantKind::mu, false,
                           [](int n) { return std::sqrt(double(n)); }},
                          {"tmu(N) = N^(1/2)", gl::ConstantKind::tmu, false,
                           [](int n) { return std::sqrt(double(n)); }},
                          {"g(N) = 1", gl::ConstantKind::g, false,
                           [](int) { return 1.0; }},
                          {"k(N) = 1", gl::ConstantKind::k, false,
                           [](int) { return 1.0; }},
                          {"g_c(N) = 1", gl::ConstantKind::g_c, false,
                           [](int) { return 1.0; }},
                          {"k_c(N) = 1", gl::ConstantKind::k_c, false,
                           [](int) { return 1.0; }},
                          {"nu(N) = (N+1)^(1/2)", gl::ConstantKind::nu, false,
                           [](int n) { return std::sqrt(n + 1.0); }},
                          {"L~(N) = (N+1)^(1/2)", std::nullopt, true,
                           [](int n) { return std::sqrt(n + 1.0); }},
                          {"L(N) = (N+1)^(1/2)", std::nullopt, false,
                           [](int n) { return std::sqrt(n + 1.0); }}},
                         3, opt, report);
        return finish(report, opt, 0);
    }
    if (id == "lp_c0") {
        auto space = gl::make_direct_sum({2.0, false, 4}, {2.0, true, 4});
        gl::Report report = base_report(*space, opt);
        check_equalities(*space,
                         {{"mu(N) = 1 + (N-1)^(1/2)", gl::ConstantKind::mu, false,
                           [](int n) { return 1.0 + std::sqrt(n - 1.0); }},
                          {"tmu(N) = 1 + (N-1)^(1/2)", gl::ConstantKind::tmu, false,
                           [](int n) { return 1.0 + std::sqrt(n - 1.0); }},
                          {"nu(N) = 1 + N^(1/2)", gl::ConstantKind::nu, false,
                           [](int n) { return 1.0 + std::sqrt(double(n)); }},
                          {"L~(N) = 1 + N^(1/2)", std::nullopt, true,
                           [](int n) { return 1.0 + std::sqrt(double(n)); }},
                          {"L(N) = 1 + N^(1/2)", std::nullopt, false,
                           [](int n) { return 1.0 + std::sqrt(double(n)); }}},
                         3, opt, report);
        return finish(report, opt, 0);
    }
    if (id == "5.4") return reproduce_trig(opt);
    if (id == "5.5") return reproduce_mixed(opt);
    throw gl::ConfigError("unknown example id '" + id +
                          "'; expected one of 5.1, 5.2, 5.3, lp_c0, 5.4, 5.5");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thresholding greedy algorithm laboratory"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--space", opt.space_arg,
                        "space config: JSON file path or inline JSON object");
        sub->add_option("--N", opt.n_range, "order range a..b or single order");
        sub->add_option("--suite", opt.suites,
                        "suites to include: constants, lebesgue, lemmas")
            ->delimiter(',');
        sub->add_option("--seed", opt.seed, "root seed for all sampling");
        sub->add_option("--budget", opt.budget, "sample budget for randomized searches");
        sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
        sub->add_option("--format", opt.format, "report format: csv, json or md");
    };

    CLI::App* c_constants = app.add_subcommand(
        "constants", "compute the twelve constants over an order range");
    add_common(c_constants);
    CLI::App* c_verify = app.add_subcommand(
        "verify", "run inequality suites and Lebesgue sandwich checks");
    add_common(c_verify);
    CLI::App* c_reproduce =
        app.add_subcommand("reproduce", "rerun a canonical example table");
    add_common(c_reproduce);
    c_reproduce->add_option("--example", opt.example,
                            "example id: 5.1, 5.2, 5.3, lp_c0, 5.4 or 5.5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_constants->parsed()) return cmd_constants(opt);
        if (c_verify->parsed()) return cmd_verify(opt);
        return cmd_reproduce(opt);
    } catch (const gl::SizeError& e) {
        std::cerr << "size guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const gl::RangeError& e) {
        std::cerr << "range guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
