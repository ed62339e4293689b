#include "greedylab/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "greedylab/core.hpp"
#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

bool has_prefix(const std::string& s, const std::string& p) {
    return s.rfind(p, 0) == 0;
}

IndexSet contiguous(int first, int count) {
    std::vector<int> v;
    v.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) v.push_back(first + i);
    return IndexSet(v);
}

}  // namespace

std::vector<WitnessSpec> summing_witnesses(const Space& space, int N) {
    if (N < 1) throw DomainError("order must be positive");
    int d = space.dim();
    std::vector<WitnessSpec> out;

    if (d >= 2 * N + 1) {
        // alternating two-block vector: tiny norm, large greedy pieces
        WitnessSpec w;
        w.name = "alternating two-block vector";
        CoeffVector a(FieldTag::Real, d);
        a.set(1, -1.0);
        for (int j = 1; j <= N; ++j) {
            a.set(2 * j, 2.0);
            a.set(2 * j + 1, -2.0);
        }
        std::vector<int> evens;
        for (int j = 1; j <= N; ++j) evens.push_back(2 * j);
        w.x = a;
        w.sets["Gamma"] = IndexSet(evens);
        w.sets["GammaPrime"] = IndexSet(evens);
        w.expected["norm"] = 1.0;
        w.expected["projection_norm"] = 2.0 * N;
        w.expected["complement_norm"] = 1.0 + 2.0 * N;
        w.notes = "the positive coordinates form a greedy set; keeping them or dropping "
                  "them both blow up against the unit norm";
        out.push_back(std::move(w));
    }

    if (d >= 4 * N + 1) {
        // cancelling combs: same profile with the middle teeth flipped down
        // or fresh unit teeth appended
        WitnessSpec w;
        w.name = "cancelling comb configuration";
        CoeffVector x(FieldTag::Real, d);
        std::vector<int> middles;
        for (int j = 0; j < N; ++j) {
            x.set(3 * j + 1, 0.5);
            x.set(3 * j + 3, 0.5);
            middles.push_back(3 * j + 2);
        }
        x.set(3 * N + 1, 0.5);
        IndexSet B(middles);
        IndexSet A = contiguous(3 * N + 2, N);
        w.x = x;
        w.sets["A"] = A;
        w.sets["B"] = B;
        w.signs["eps"] = SignPattern::constant(A, 1.0);
        w.signs["eta"] = SignPattern::constant(B, -1.0);
        w.expected["denominator_norm"] = 0.5;
        w.expected["numerator_norm"] = 0.5 + 2.0 * N;
        w.expected["ratio"] = 1.0 + 4.0 * N;
        w.notes = "downward teeth cancel the half-plateaus while fresh teeth stack on top";
        out.push_back(std::move(w));
    }

    if (d >= 4 * N + 2) {
        WitnessSpec w;
        w.name = "buffered plateau with alternating tail";
        CoeffVector x(FieldTag::Real, d);
        std::vector<int> gamma, mids;
        if (d >= 5 * N + 1) {
            for (int j = 0; j < N; ++j) {
                x.set(3 * j + 1, 0.5);
                x.set(3 * j + 2, 1.0);
                x.set(3 * j + 3, 0.5);
                mids.push_back(3 * j + 2);
            }
            x.set(3 * N + 1, 0.5);
            for (int j = 0; j < N; ++j) {
                x.set(3 * N + 2 + 2 * j, -1.0);
                x.set(3 * N + 3 + 2 * j, 1.0);
                gamma.push_back(3 * N + 2 + 2 * j);
            }
        } else {
            x.set(1, 0.5);
            for (int i = 2; i <= 2 * N; ++i) x.set(i, 1.0);
            x.set(2 * N + 1, 0.5);
            x.set(2 * N + 2, 0.5);
            for (int j = 0; j < N; ++j) {
                x.set(2 * N + 3 + 2 * j, -1.0);
                x.set(2 * N + 4 + 2 * j, 1.0);
                gamma.push_back(2 * N + 3 + 2 * j);
            }
            for (int j = 1; j <= N; ++j) mids.push_back(2 * j);
        }
        CoeffVector z(FieldTag::Real, d);
        for (int m : mids) z.set(m, 2.0);
        w.x = x;
        w.sets["Gamma"] = IndexSet(gamma);
        w.feasible_z = z;
        w.expected["complement_norm"] = 3.0 * N + 0.5;
        w.expected["approximant_error"] = 0.5;
        w.expected["ratio"] = 6.0 * N + 1.0;
        w.notes = "dropping the negative tail strands the plateau; doubling down on the "
                  "plateau interior cancels it";
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

struct BlockRole {
    double p = 1.0;
    bool is_c0 = false;
    int first = 1;
    int dim = 0;
};

// family tags for the two-block sums with closed-form constants
enum class SumFamily { None, L1C0, L1Lq, LpC0 };

SumFamily classify(const BlockRole& left, const BlockRole& right, BlockRole& heavy,
                   BlockRole& light) {
    auto is_l1 = [](const BlockRole& b) { return !b.is_c0 && b.p == 1.0; };
    auto is_lq = [](const BlockRole& b) { return !b.is_c0 && b.p > 1.0; };
    for (const auto* a : {&left, &right}) {
        const BlockRole& other = (a == &left) ? right : left;
        if (is_l1(*a) && other.is_c0) {
            heavy = *a;
            light = other;
            return SumFamily::L1C0;
        }
        if (is_l1(*a) && is_lq(other)) {
            heavy = *a;
            light = other;
            return SumFamily::L1Lq;
        }
        if (is_lq(*a) && other.is_c0) {
            heavy = *a;
            light = other;
            return SumFamily::LpC0;
        }
    }
    return SumFamily::None;
}

}  // namespace

std::vector<WitnessSpec> direct_sum_witnesses(const Space& space, const BlockSpec& left,
                                              const BlockSpec& right, int N) {
    if (N < 1) throw DomainError("order must be positive");
    if (left.dim + right.dim != space.dim())
        throw DomainError("block dimensions do not match the space");
    BlockRole lrole{left.p, left.is_c0, 1, left.dim};
    BlockRole rrole{right.p, right.is_c0, left.dim + 1, right.dim};
    BlockRole heavy, light;
    SumFamily family = classify(lrole, rrole, heavy, light);
    std::vector<WitnessSpec> out;
    if (family == SumFamily::None) return out;
    int d = space.dim();

    {
        bool fits = family == SumFamily::LpC0
                        ? (light.dim >= N + 1 && heavy.dim >= N - 1)
                        : (heavy.dim >= N && light.dim >= N);
        if (fits) {
            WitnessSpec w;
            w.name = "democracy extremal pair";
            IndexSet num, den;
            double num_norm = 0.0;
            if (family == SumFamily::LpC0) {
                std::vector<int> labels = {light.first};
                for (int i = 0; i < N - 1; ++i) labels.push_back(heavy.first + i);
                num = IndexSet(labels);
                den = contiguous(light.first + 1, N);
                num_norm = 1.0 + std::pow(double(N - 1), 1.0 / heavy.p);
            } else {
                num = contiguous(heavy.first, N);
                den = contiguous(light.first, N);
                num_norm = double(N);
            }
            double den_norm = light.is_c0 ? 1.0 : std::pow(double(N), 1.0 / light.p);
            w.x = indicator(space.field(), d, num);
            w.sets["num_set"] = num;
            w.sets["den_set"] = den;
            w.expected["numerator_norm"] = num_norm;
            w.expected["denominator_norm"] = den_norm;
            w.expected["ratio"] = num_norm / den_norm;
            w.notes = "equal-size sets concentrated in the two blocks";
            out.push_back(std::move(w));
        }
    }

    if (heavy.dim >= N && light.dim >= N + 1) {
        WitnessSpec w;
        w.name = "convexity extremal configuration";
        IndexSet A = contiguous(heavy.first, N);
        IndexSet B = contiguous(light.first, N);
        CoeffVector x(space.field(), d);
        x.set(light.first + N, 1.0);
        double num_norm = family == SumFamily::LpC0
                              ? std::pow(double(N), 1.0 / heavy.p) + 1.0
                              : double(N) + 1.0;
        double den_norm = light.is_c0 ? 1.0 : std::pow(double(N) + 1.0, 1.0 / light.p);
        w.x = x;
        w.sets["A"] = A;
        w.sets["B"] = B;
        w.signs["eps"] = SignPattern::constant(A, 1.0);
        w.signs["eta"] = SignPattern::constant(B, 1.0);
        w.expected["numerator_norm"] = num_norm;
        w.expected["denominator_norm"] = den_norm;
        w.expected["ratio"] = num_norm / den_norm;
        w.notes = "one extra light-block coordinate rides along with either set";
        out.push_back(std::move(w));
    }
    return out;
}

CoeffVector trig_dirichlet(const TrigSpace& space, int n) {
    if (n < 0 || n > space.n_max())
        throw RangeError("frequency window [-" + std::to_string(n) + ", " + std::to_string(n) +
                         "] does not fit below n_max = " + std::to_string(space.n_max()));
    CoeffVector x(FieldTag::Complex, space.dim());
    for (int k = -n; k <= n; ++k) x.set(space.coord_of_frequency(k), 1.0);
    return x;
}

CoeffVector trig_fejer(const TrigSpace& space, int n) {
    if (n < 0 || n > space.n_max())
        throw RangeError("frequency window [-" + std::to_string(n) + ", " + std::to_string(n) +
                         "] does not fit below n_max = " + std::to_string(space.n_max()));
    CoeffVector x(FieldTag::Complex, space.dim());
    for (int k = -n; k <= n; ++k)
        x.set(space.coord_of_frequency(k), 1.0 - std::abs(k) / double(n + 1));
    return x;
}

CoeffVector trig_vallee_poussin(const TrigSpace& space, int N) {
    if (N < 0 || 2 * N + 1 > space.n_max())
        throw RangeError("smoothing window 2N+1 = " + std::to_string(2 * N + 1) +
                         " does not fit below n_max = " + std::to_string(space.n_max()));
    CoeffVector x(FieldTag::Complex, space.dim());
    for (int k = -(2 * N + 1); k <= 2 * N + 1; ++k) {
        double f2 = 2.0 * (1.0 - std::abs(k) / double(2 * N + 2));
        double f1 = std::abs(k) <= N ? 1.0 - std::abs(k) / double(N + 1) : 0.0;
        x.set(space.coord_of_frequency(k), f2 - f1);
    }
    return x;
}

std::vector<int> rudin_shapiro_signs(int k) {
    if (k < 0) throw DomainError("negative recursion depth");
    if (k > 24) throw RangeError("sign sequence of length 2^" + std::to_string(k) + " refused");
    std::vector<int> P = {1}, Q = {1};
    for (int step = 0; step < k; ++step) {
        std::vector<int> nextP = P, nextQ = P;
        nextP.insert(nextP.end(), Q.begin(), Q.end());
        for (int s : Q) nextQ.push_back(-s);
        P = std::move(nextP);
        Q = std::move(nextQ);
    }
    return P;
}

WitnessSpec trig_lacunary_nu(const TrigSpace& space, int N) {
    if (N < 1) throw DomainError("order must be positive");
    if (2 * N + 1 > space.n_max())
        throw RangeError("denominator window 2N+1 = " + std::to_string(2 * N + 1) +
                         " does not fit below n_max = " + std::to_string(space.n_max()));
    IndexSet B;
    {
        std::vector<int> labels;
        for (int k = -N; k <= N; ++k) labels.push_back(space.coord_of_frequency(k));
        B = IndexSet(labels);
    }
    CoeffVector x = trig_vallee_poussin(space, N) - trig_dirichlet(space, N);
    // the two kernels agree on |k| <= N; clear the rounding residue so the
    // support really avoids B
    for (int k = -N; k <= N; ++k) x.set(space.coord_of_frequency(k), 0.0);

    std::vector<int> a_labels;
    SignPattern eps;
    std::string how;
    int j0 = 0;
    while ((1 << j0) < 4 * N) ++j0;
    if (j0 + 2 * N <= 30 && (1 << (j0 + 2 * N)) <= space.n_max()) {
        for (int t = 0; t <= 2 * N; ++t)
            a_labels.push_back(space.coord_of_frequency(1 << (j0 + t)));
        std::sort(a_labels.begin(), a_labels.end());
        eps = SignPattern::constant(IndexSet(a_labels), 1.0);
        how = "power-of-two frequencies starting at 2^" + std::to_string(j0);
    } else if (3 * N + 2 <= space.n_max()) {
        for (int k = -(3 * N + 2); k <= -(2 * N + 2); ++k)
            a_labels.push_back(space.coord_of_frequency(k));
        for (int k = 2 * N + 2; k <= 3 * N + 1; ++k)
            a_labels.push_back(space.coord_of_frequency(k));
        std::sort(a_labels.begin(), a_labels.end());
        int depth = 0;
        while ((1 << depth) < static_cast<int>(a_labels.size())) ++depth;
        auto signs = rudin_shapiro_signs(depth);
        for (size_t i = 0; i < a_labels.size(); ++i)
            eps.set(a_labels[i], double(signs[i]));
        how = "two frequency blocks flanking the smoothing window, flat-spectrum signs";
    } else {
        throw RangeError("numerator set needs frequencies up to 3N+2 = " +
                         std::to_string(3 * N + 2) + " but n_max = " +
                         std::to_string(space.n_max()));
    }
    IndexSet A(a_labels);
    SignPattern eta = SignPattern::constant(B, 1.0);

    auto add_signed = [](CoeffVector v, const IndexSet& S, const SignPattern& sg) {
        for (int i : S.labels()) v.set(i, v.at(i) + sg.at(i));
        return v;
    };
    CoeffVector num = add_signed(x, A, eps);
    CoeffVector den = add_signed(x, B, eta);
    WitnessSpec w;
    w.name = "lacunary convexity witness";
    w.x = x;
    w.sets["A"] = A;
    w.sets["B"] = B;
    w.signs["eps"] = eps;
    w.signs["eta"] = eta;
    w.expected["numerator_norm"] = space.norm(num);
    w.expected["denominator_norm"] = space.norm(den);
    w.expected["ratio"] = space.norm(num) / space.norm(den);
    w.notes = how;
    return w;
}

std::vector<WitnessSpec> trig_witnesses(const TrigSpace& space, int N) {
    std::vector<WitnessSpec> out;
    if (N >= 0 && N <= space.n_max()) {
        WitnessSpec w;
        w.name = "spike kernel";
        w.x = trig_dirichlet(space, N);
        w.notes = "flat coefficients on the frequency window";
        out.push_back(std::move(w));

        WitnessSpec f;
        f.name = "triangular kernel";
        f.x = trig_fejer(space, N);
        if (space.p() == 1.0) f.expected["norm"] = 1.0;
        f.notes = "nonnegative on the circle, so the mean equals the centre coefficient";
        out.push_back(std::move(f));
    }
    if (2 * N + 1 <= space.n_max()) {
        WitnessSpec v;
        v.name = "smoothing kernel";
        v.x = trig_vallee_poussin(space, N);
        v.notes = "flat on the inner window, linear decay outside; norm stays below 3";
        out.push_back(std::move(v));
    }
    try {
        out.push_back(trig_lacunary_nu(space, N));
    } catch (const RangeError&) {
    }
    return out;
}

MixedDyadicConstruction mixed_dyadic_construction(double q, int n) {
    if (n < 1) throw DomainError("level count must be positive");
    std::vector<int> levels;
    for (int j = 0; j < n; ++j) {
        levels.push_back(j);
        levels.push_back(n + j);
    }
    MixedDyadicConstruction c;
    c.space = make_mixed_dyadic(q, levels);
    int d = c.space->dim();
    const auto& layout = c.space->layout();

    CoeffVector x(FieldTag::Real, d);
    std::vector<int> gamma;
    for (int b = 0; b < 2 * n; ++b) {
        int level = levels[static_cast<size_t>(b)];
        double value = std::ldexp(b % 2 == 0 ? 1.0 : -1.0, -level);
        int first = layout.block_first(b);
        for (int i = 0; i < (1 << level); ++i) {
            x.set(first + i, value);
            if (b % 2 == 0) gamma.push_back(first + i);
        }
    }
    c.x = x;
    c.gamma = IndexSet(gamma);
    c.P = (1 << n) - 1;

    double levels_total = 2.0 * n;
    double norm_x = std::isinf(q) ? 1.0 : std::pow(levels_total, 1.0 / q);
    c.spec.name = "interleaved coarse and fine levels";
    c.spec.x = x;
    c.spec.sets["Gamma"] = c.gamma;
    c.spec.expected["norm"] = norm_x;
    c.spec.expected["greedy_part_norm"] = double(n);
    c.spec.expected["ratio"] = double(n) / norm_x;
    c.spec.notes = "alternating signs keep the chain norm low; the greedy part is all "
                   "positive and spans half the levels";
    return c;
}

namespace {

std::optional<BlockSpec> parse_block(const std::string& text) {
    if (has_prefix(text, "c0(")) {
        BlockSpec b;
        b.is_c0 = true;
        b.dim = std::atoi(text.c_str() + 3);
        return b;
    }
    if (has_prefix(text, "lp(")) {
        BlockSpec b;
        size_t comma = text.find(',');
        if (comma == std::string::npos) return std::nullopt;
        b.p = std::strtod(text.c_str() + 3, nullptr);
        b.dim = std::atoi(text.c_str() + comma + 1);
        return b;
    }
    return std::nullopt;
}

// recover the two block specs from a name like direct_sum(lp(1,4),c0(4))
std::optional<std::pair<BlockSpec, BlockSpec>> parse_direct_sum_name(const std::string& name) {
    const std::string prefix = "direct_sum(";
    if (!has_prefix(name, prefix) || name.back() != ')') return std::nullopt;
    std::string inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        if (inner[i] == ')') --depth;
        if (inner[i] == ',' && depth == 0) {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return std::nullopt;
    auto left = parse_block(inner.substr(0, split));
    auto right = parse_block(inner.substr(split + 1));
    if (!left || !right) return std::nullopt;
    return std::make_pair(*left, *right);
}

}  // namespace

std::vector<OperatorWitness> operator_witnesses_for(const Space& space, int N) {
    std::vector<OperatorWitness> out;
    if (has_prefix(space.name(), "summing(")) {
        for (auto& spec : summing_witnesses(space, N)) out.push_back({spec.x, spec.name});
    }
    return out;
}

std::vector<NuWitness> nu_witnesses_for(const Space& space, int N) {
    std::vector<NuWitness> out;
    if (has_prefix(space.name(), "summing(")) {
        for (auto& spec : summing_witnesses(space, N)) {
            if (spec.name != "cancelling comb configuration") continue;
            out.push_back({spec.sets.at("A"), spec.sets.at("B"), spec.signs.at("eps"),
                           spec.signs.at("eta"), spec.x, spec.name});
        }
    } else if (auto blocks = parse_direct_sum_name(space.name())) {
        for (auto& spec : direct_sum_witnesses(space, blocks->first, blocks->second, N)) {
            if (spec.name != "convexity extremal configuration") continue;
            out.push_back({spec.sets.at("A"), spec.sets.at("B"), spec.signs.at("eps"),
                           spec.signs.at("eta"), spec.x, spec.name});
        }
    } else if (auto* trig = dynamic_cast<const TrigSpace*>(&space)) {
        int m = (N - 1) / 2;  // largest window with |A| = 2m+1 <= N
        if (m >= 1) {
            try {
                auto spec = trig_lacunary_nu(*trig, m);
                out.push_back({spec.sets.at("A"), spec.sets.at("B"), spec.signs.at("eps"),
                               spec.signs.at("eta"), spec.x,
                               spec.name + " (" + spec.notes + ")"});
            } catch (const RangeError&) {
            }
        }
    }
    return out;
}

std::vector<LebesgueWitness> lebesgue_witnesses_for(const Space& space, int N) {
    std::vector<LebesgueWitness> out;
    if (has_prefix(space.name(), "summing(")) {
        for (auto& spec : summing_witnesses(space, N)) {
            if (spec.name == "alternating two-block vector") {
                out.push_back({spec.x, spec.sets.at("GammaPrime"), std::nullopt, spec.name});
            } else if (spec.name == "buffered plateau with alternating tail") {
                out.push_back({spec.x, spec.sets.at("Gamma"), spec.feasible_z, spec.name});
            }
        }
    }
    return out;
}

}  // namespace greedylab
