#include "greedylab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "greedylab/combinatorics.hpp"

namespace greedylab {

std::string to_string(FieldTag f) { return f == FieldTag::Real ? "real" : "complex"; }

std::string to_string(ConstantKind k) {
    switch (k) {
        case ConstantKind::k: return "k";
        case ConstantKind::k_c: return "k_c";
        case ConstantKind::g: return "g";
        case ConstantKind::g_c: return "g_c";
        case ConstantKind::g_hat: return "g_hat";
        case ConstantKind::g_tilde: return "g_tilde";
        case ConstantKind::mu: return "mu";
        case ConstantKind::mu_d: return "mu_d";
        case ConstantKind::tmu: return "tmu";
        case ConstantKind::tmu_d: return "tmu_d";
        case ConstantKind::nu: return "nu";
        case ConstantKind::gamma: return "gamma";
    }
    return "?";
}

std::optional<ConstantKind> constant_kind_from_string(const std::string& s) {
    for (ConstantKind k : all_constant_kinds())
        if (to_string(k) == s) return k;
    return std::nullopt;
}

// ---- CoeffVector --------------------------------------------------------

CoeffVector CoeffVector::real(std::vector<double> values) {
    CoeffVector v(FieldTag::Real, static_cast<int>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) v.c_[i] = Complex(values[i], 0.0);
    return v;
}

CoeffVector CoeffVector::complex(std::vector<Complex> values) {
    CoeffVector v(FieldTag::Complex, static_cast<int>(values.size()));
    v.c_ = std::move(values);
    return v;
}

void CoeffVector::set(int i, Complex v) {
    if (field_ == FieldTag::Real && v.imag() != 0.0)
        throw FieldError("complex value written into a real vector");
    c_[checked(i)] = v;
}

double CoeffVector::linf() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

std::vector<int> CoeffVector::support() const {
    std::vector<int> s;
    for (int i = 1; i <= dim(); ++i)
        if (c_[static_cast<size_t>(i - 1)] != Complex(0.0, 0.0)) s.push_back(i);
    return s;
}

bool CoeffVector::is_zero() const { return support().empty(); }

static void check_same_shape(const CoeffVector& a, const CoeffVector& b) {
    if (a.dim() != b.dim()) throw DomainError("vector dimensions differ");
    if (a.field() != b.field()) throw FieldError("vector fields differ");
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& o) {
    check_same_shape(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& o) {
    check_same_shape(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CoeffVector& CoeffVector::operator*=(Complex s) {
    if (field_ == FieldTag::Real && s.imag() != 0.0)
        throw FieldError("complex scale on a real vector");
    for (auto& z : c_) z *= s;
    return *this;
}

// ---- IndexSet -----------------------------------------------------------

IndexSet::IndexSet(std::vector<int> labels) : v_(std::move(labels)) {
    std::sort(v_.begin(), v_.end());
    auto dup = std::adjacent_find(v_.begin(), v_.end());
    if (dup != v_.end()) throw DomainError("duplicate coordinate label in index set");
    if (!v_.empty() && v_.front() < 1) throw IndexError("coordinate labels are 1-based");
}

IndexSet IndexSet::range(int first, int last) {
    std::vector<int> v;
    for (int i = first; i <= last; ++i) v.push_back(i);
    return IndexSet(std::move(v));
}

bool IndexSet::contains(int i) const {
    return std::binary_search(v_.begin(), v_.end(), i);
}

IndexSet IndexSet::set_union(const IndexSet& o) const {
    std::vector<int> r;
    std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r));
    IndexSet s;
    s.v_ = std::move(r);
    return s;
}

IndexSet IndexSet::set_difference(const IndexSet& o) const {
    std::vector<int> r;
    std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r));
    IndexSet s;
    s.v_ = std::move(r);
    return s;
}

IndexSet IndexSet::set_intersection(const IndexSet& o) const {
    std::vector<int> r;
    std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r));
    IndexSet s;
    s.v_ = std::move(r);
    return s;
}

bool IndexSet::subset_of(const IndexSet& o) const {
    return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
}

// ---- SignPattern ---------------------------------------------------------

static void check_unimodular(Complex v) {
    if (std::abs(std::abs(v) - 1.0) > 1e-12)
        throw DomainError("sign pattern entry is not unimodular");
}

SignPattern SignPattern::constant(const IndexSet& on, Complex value) {
    check_unimodular(value);
    SignPattern p;
    for (int i : on.labels()) p.m_[i] = value;
    return p;
}

void SignPattern::set(int i, Complex value) {
    check_unimodular(value);
    m_[i] = value;
}

Complex SignPattern::at(int i) const {
    auto it = m_.find(i);
    if (it == m_.end())
        throw DomainError("sign pattern does not cover coordinate " + std::to_string(i));
    return it->second;
}

bool SignPattern::covers(const IndexSet& s) const {
    for (int i : s.labels())
        if (!has(i)) return false;
    return true;
}

bool SignPattern::is_real() const {
    for (const auto& [i, v] : m_)
        if (v.imag() != 0.0) return false;
    return true;
}

SignPattern SignPattern::restrict_to(const IndexSet& s) const {
    SignPattern p;
    for (int i : s.labels()) p.m_[i] = at(i);
    return p;
}

// ---- combinatorics --------------------------------------------------------

uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    const uint64_t cap = ~uint64_t(0) / 2;
    for (int i = 1; i <= k; ++i) {
        if (r > cap / static_cast<uint64_t>(n - k + i)) return cap;  // saturate
        r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
    }
    return r;
}

uint64_t subset_count_up_to(int n, int k) {
    uint64_t total = 0;
    for (int s = 1; s <= k; ++s) {
        uint64_t b = binomial(n, s);
        if (total > ~uint64_t(0) / 2 - b) return ~uint64_t(0) / 2;
        total += b;
    }
    return total;
}

void for_each_combination(int n, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        std::vector<int> empty;
        fn(empty);
        return;
    }
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

void for_each_subset_up_to(const std::vector<int>& base, int max_size,
                           const std::function<void(const std::vector<int>&)>& fn) {
    int n = static_cast<int>(base.size());
    for (int s = 1; s <= std::min(max_size, n); ++s) {
        for_each_combination(n, s, [&](const std::vector<int>& pick) {
            std::vector<int> subset;
            subset.reserve(pick.size());
            for (int p : pick) subset.push_back(base[static_cast<size_t>(p - 1)]);
            fn(subset);
        });
    }
}

void for_each_subset(const std::vector<int>& base,
                     const std::function<void(const std::vector<int>&)>& fn) {
    int n = static_cast<int>(base.size());
    if (n > 30) throw SizeError("subset enumeration over more than 30 elements");
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(base[static_cast<size_t>(i)]);
        fn(subset);
    }
}

void for_each_sign_tuple(int k, bool real_field, int roots_of_unity,
                         const std::function<void(const std::vector<Complex>&)>& fn) {
    int base = real_field ? 2 : roots_of_unity;
    if (base < 2) throw DomainError("need at least two sign values");
    std::vector<Complex> values;
    if (real_field) {
        values = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
    } else {
        for (int j = 0; j < base; ++j) {
            double th = 2.0 * M_PI * j / base;
            values.emplace_back(std::cos(th), std::sin(th));
        }
    }
    std::vector<int> digits(static_cast<size_t>(k), 0);
    std::vector<Complex> tuple(static_cast<size_t>(k), values[0]);
    while (true) {
        for (int i = 0; i < k; ++i) tuple[static_cast<size_t>(i)] = values[static_cast<size_t>(digits[static_cast<size_t>(i)])];
        fn(tuple);
        int i = k - 1;
        while (i >= 0 && digits[static_cast<size_t>(i)] == base - 1) {
            digits[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++digits[static_cast<size_t>(i)];
    }
}

uint64_t sign_tuple_count(int k, bool real_field, int roots_of_unity) {
    uint64_t base = real_field ? 2 : static_cast<uint64_t>(roots_of_unity);
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > ~uint64_t(0) / 2 / base) return ~uint64_t(0) / 2;
        r *= base;
    }
    return r;
}

// ---- greedy sets -----------------------------------------------------------

GreedyFamily greedy_sets(const CoeffVector& x, int N) {
    int d = x.dim();
    if (N < 1 || N > d)
        throw DomainError("greedy order " + std::to_string(N) + " outside 1..dim");

    std::vector<double> mods(static_cast<size_t>(d));
    for (int i = 1; i <= d; ++i) mods[static_cast<size_t>(i - 1)] = x.modulus(i);

    std::vector<double> sorted = mods;
    std::nth_element(sorted.begin(), sorted.begin() + (N - 1), sorted.end(),
                     std::greater<double>());
    double threshold = sorted[static_cast<size_t>(N - 1)];

    GreedyFamily fam;
    fam.order = N;
    fam.threshold = threshold;
    std::vector<int> forced, ties;
    for (int i = 1; i <= d; ++i) {
        double m = mods[static_cast<size_t>(i - 1)];
        if (m > threshold)
            forced.push_back(i);
        else if (m == threshold)
            ties.push_back(i);
    }
    fam.forced = IndexSet(forced);
    fam.ties = IndexSet(ties);

    int need = N - fam.forced.size();
    uint64_t count = binomial(fam.ties.size(), need);
    if (count > kGreedyFamilyGuard)
        throw SizeError("greedy family has " + std::to_string(count) + " sets (guard " +
                        std::to_string(kGreedyFamilyGuard) + ")");

    for_each_combination(fam.ties.size(), need, [&](const std::vector<int>& pick) {
        std::vector<int> labels = forced;
        for (int p : pick) labels.push_back(fam.ties.labels()[static_cast<size_t>(p - 1)]);
        fam.sets.push_back(IndexSet(std::move(labels)));
    });
    std::sort(fam.sets.begin(), fam.sets.end());
    return fam;
}

bool is_greedy_set(const CoeffVector& x, const IndexSet& gamma) {
    if (gamma.empty()) return true;
    double inside = std::numeric_limits<double>::infinity();
    for (int i : gamma.labels()) inside = std::min(inside, x.modulus(i));
    double outside = 0.0;
    for (int i = 1; i <= x.dim(); ++i)
        if (!gamma.contains(i)) outside = std::max(outside, x.modulus(i));
    return inside >= outside;
}

// ---- projections, truncation, indicators -----------------------------------

CoeffVector project(const CoeffVector& x, const IndexSet& A) {
    CoeffVector r(x.field(), x.dim());
    for (int i : A.labels()) r.raw()[static_cast<size_t>(i - 1)] = x.at(i);  // at() checks range
    return r;
}

CoeffVector project_complement(const CoeffVector& x, const IndexSet& A) {
    CoeffVector r = x;
    for (int i : A.labels()) {
        if (i < 1 || i > x.dim()) throw IndexError("projection index outside 1..dim");
        r.raw()[static_cast<size_t>(i - 1)] = Complex(0.0, 0.0);
    }
    return r;
}

static Complex sign_of(Complex z) {
    double m = std::abs(z);
    return m == 0.0 ? Complex(0.0, 0.0) : z / m;
}

TruncationResult truncate(const CoeffVector& x, double alpha) {
    if (alpha < 0.0) throw DomainError("truncation level must be nonnegative");
    TruncationResult r;
    r.value = x;
    std::vector<int> lambda;
    for (int i = 1; i <= x.dim(); ++i) {
        if (x.modulus(i) > alpha) {
            lambda.push_back(i);
            r.value.raw()[static_cast<size_t>(i - 1)] = alpha * sign_of(x.at(i));
        }
    }
    r.lambda = IndexSet(std::move(lambda));
    return r;
}

CoeffVector indicator(FieldTag field, int dim, const IndexSet& A, const SignPattern& eps) {
    if (!eps.covers(A)) throw DomainError("sign pattern does not cover the index set");
    CoeffVector r(field, dim);
    for (int i : A.labels()) {
        if (i < 1 || i > dim) throw IndexError("indicator index outside 1..dim");
        r.set(i, eps.at(i));
    }
    return r;
}

CoeffVector indicator(FieldTag field, int dim, const IndexSet& A) {
    return indicator(field, dim, A, SignPattern::constant(A));
}

CoeffVector indicator(int dim, const IndexSet& A, const SignPattern& eps) {
    return indicator(eps.is_real() ? FieldTag::Real : FieldTag::Complex, dim, A, eps);
}

CoeffVector indicator(int dim, const IndexSet& A) {
    return indicator(FieldTag::Real, dim, A);
}

// ---- convex hull decomposition ---------------------------------------------

std::vector<HullTerm> hull_decompose(const CoeffVector& z, const IndexSet& A) {
    if (A.size() > 20) throw SizeError("hull decomposition limited to |A| <= 20");
    for (int i : z.support())
        if (!A.contains(i)) throw DomainError("vector supported outside the index set");
    if (z.linf() > 1.0 + 1e-12) throw DomainError("vector leaves the unit cube");

    std::vector<HullTerm> terms;
    terms.push_back({1.0, SignPattern()});
    for (int n : A.labels()) {
        Complex zn = z.at(n);
        double r = std::min(1.0, std::abs(zn));
        Complex dir = r == 0.0 ? Complex(1.0, 0.0) : zn / r;
        double wp = (1.0 + r) / 2.0, wm = (1.0 - r) / 2.0;
        std::vector<HullTerm> next;
        next.reserve(terms.size() * 2);
        for (const auto& t : terms) {
            if (t.weight * wp > 0.0) {
                HullTerm a = t;
                a.weight *= wp;
                a.signs.set(n, dir);
                next.push_back(std::move(a));
            }
            if (t.weight * wm > 0.0) {
                HullTerm b = t;
                b.weight *= wm;
                b.signs.set(n, -dir);
                next.push_back(std::move(b));
            }
        }
        terms = std::move(next);
    }
    return terms;
}

CoeffVector hull_recombine(int dim, const IndexSet& A, const std::vector<HullTerm>& terms) {
    bool real = true;
    for (const auto& t : terms) real = real && t.signs.is_real();
    CoeffVector acc(real ? FieldTag::Real : FieldTag::Complex, dim);
    for (const auto& t : terms) {
        for (int i : A.labels()) acc.raw()[static_cast<size_t>(i - 1)] += t.weight * t.signs.at(i);
    }
    return acc;
}

}  // namespace greedylab
