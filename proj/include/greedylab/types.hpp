#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/errors.hpp"

namespace greedylab {

using Complex = std::complex<double>;

enum class FieldTag { Real, Complex };

std::string to_string(FieldTag f);

// Coordinate labels are 1-based everywhere in the public API; only the raw
// storage inside CoeffVector is 0-based.
class CoeffVector {
  public:
    CoeffVector() = default;
    CoeffVector(FieldTag field, int dim) : field_(field), c_(static_cast<size_t>(dim)) {
        if (dim < 0) throw DomainError("CoeffVector: negative dimension");
    }
    static CoeffVector real(std::vector<double> values);
    static CoeffVector complex(std::vector<Complex> values);

    FieldTag field() const { return field_; }
    int dim() const { return static_cast<int>(c_.size()); }

    Complex at(int i) const { return c_[checked(i)]; }
    void set(int i, Complex v);
    void set(int i, double v) { set(i, Complex(v, 0.0)); }
    double modulus(int i) const { return std::abs(c_[checked(i)]); }

    const std::vector<Complex>& raw() const { return c_; }
    std::vector<Complex>& raw() { return c_; }

    double linf() const;
    std::vector<int> support() const;  // 1-based labels of nonzero coordinates
    bool is_zero() const;

    CoeffVector& operator+=(const CoeffVector& o);
    CoeffVector& operator-=(const CoeffVector& o);
    CoeffVector& operator*=(Complex s);
    friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
    friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
    friend CoeffVector operator*(Complex s, CoeffVector a) { return a *= s; }

  private:
    size_t checked(int i) const {
        if (i < 1 || i > dim()) throw IndexError("coordinate " + std::to_string(i) + " outside 1.." + std::to_string(dim()));
        return static_cast<size_t>(i - 1);
    }
    FieldTag field_ = FieldTag::Real;
    std::vector<Complex> c_;
};

// Sorted set of 1-based coordinate labels.
class IndexSet {
  public:
    IndexSet() = default;
    explicit IndexSet(std::vector<int> labels);
    static IndexSet range(int first, int last);  // inclusive

    int size() const { return static_cast<int>(v_.size()); }
    bool empty() const { return v_.empty(); }
    bool contains(int i) const;
    const std::vector<int>& labels() const { return v_; }

    IndexSet set_union(const IndexSet& o) const;
    IndexSet set_difference(const IndexSet& o) const;
    IndexSet set_intersection(const IndexSet& o) const;
    bool disjoint_from(const IndexSet& o) const { return set_intersection(o).empty(); }
    bool subset_of(const IndexSet& o) const;

    bool operator==(const IndexSet& o) const { return v_ == o.v_; }
    bool operator<(const IndexSet& o) const { return v_ < o.v_; }

  private:
    std::vector<int> v_;
};

// Unimodular coefficients on an index set. Entries must have modulus 1
// (within 1e-12); real spaces only accept +1/-1.
class SignPattern {
  public:
    SignPattern() = default;
    static SignPattern constant(const IndexSet& on, Complex value = 1.0);
    void set(int i, Complex value);
    Complex at(int i) const;          // throws DomainError when missing
    bool has(int i) const { return m_.count(i) > 0; }
    bool covers(const IndexSet& s) const;
    bool is_real() const;
    const std::map<int, Complex>& entries() const { return m_; }

    // restriction to a subset of the carried labels
    SignPattern restrict_to(const IndexSet& s) const;

  private:
    std::map<int, Complex> m_;
};

struct GreedyFamily {
    int order = 0;                // requested N
    double threshold = 0.0;       // N-th largest modulus
    IndexSet forced;              // coordinates with modulus strictly above threshold
    IndexSet ties;                // coordinates at the threshold
    std::vector<IndexSet> sets;   // all greedy sets, lexicographic

    size_t count() const { return sets.size(); }
};

enum class ConstantKind {
    k, k_c, g, g_c, g_hat, g_tilde,
    mu, mu_d, tmu, tmu_d, nu, gamma,
};

std::string to_string(ConstantKind k);
std::optional<ConstantKind> constant_kind_from_string(const std::string& s);

inline const std::vector<ConstantKind>& all_constant_kinds() {
    static const std::vector<ConstantKind> kinds = {
        ConstantKind::k,  ConstantKind::k_c,  ConstantKind::g,   ConstantKind::g_c,
        ConstantKind::g_hat, ConstantKind::g_tilde, ConstantKind::mu, ConstantKind::mu_d,
        ConstantKind::tmu, ConstantKind::tmu_d, ConstantKind::nu, ConstantKind::gamma};
    return kinds;
}

}  // namespace greedylab
