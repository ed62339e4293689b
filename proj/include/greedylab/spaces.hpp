#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedylab/space.hpp"

namespace greedylab {

// The summing norm: ||a|| = max_{1<=M<=dim} |sum_{n<=M} a_n|. Real field.
SpacePtr make_summing(int dim);

// One l^p block (p = inf for the c0-style sup norm at finite dimension).
struct BlockSpec {
    double p = 2.0;  // in [1, inf); ignored when is_c0
    bool is_c0 = false;
    int dim = 0;
};

// Pure l^p / c0 space; building block and directly useful in tests.
SpacePtr make_lp(const BlockSpec& spec);

// Direct sum with norm ||(x, y)|| = ||x||_left + ||y||_right.
SpacePtr make_direct_sum(const BlockSpec& left, const BlockSpec& right);

// James-style norm: sup over chains 0 = m_0 < m_1 < ... < m_r <= dim of
// (sum_k |sum_{m_k < j <= m_{k+1}} a_j|^q)^{1/q}. Real field, q in [1, inf).
SpacePtr make_james(double q, int dim);

// Dyadic block layout: one block of 2^k coordinates per requested level k,
// in the given order. Coordinates inside a block follow the left-to-right
// order of the dyadic intervals of that level.
struct DyadicLayout {
    std::vector<int> levels;
    int dim() const;
    int max_level() const;
    // block b (0-based) covers 1-based coordinates [block_first(b), block_first(b)+2^level)
    int block_first(int b) const;
};

class MixedDyadicSpace;  // exposes f_norm / james_norm separately

// Triple norm max(f-norm, James norm) on a dyadic layout; the f-norm is
// ||a||_f = int_0^1 (sum_I |a_I|^q |I|^{-q} chi_I(t))^{1/q} dt, computed
// exactly on the common refinement grid. Real field. Guard: max level <= 12.
std::shared_ptr<const MixedDyadicSpace> make_mixed_dyadic(double q, const std::vector<int>& levels);

class MixedDyadicSpace : public Space {
  public:
    MixedDyadicSpace(double q, DyadicLayout layout);
    double f_norm(const CoeffVector& x) const;
    double james_norm(const CoeffVector& x) const;
    const DyadicLayout& layout() const { return layout_; }
    double q() const { return q_; }
    // the James side scans consecutive block partitions, roughly dim^2 work
    double norm_work() const override { return static_cast<double>(dim()) * dim(); }

  protected:
    double norm_impl(const CoeffVector& x) const override;

  private:
    double q_;
    DyadicLayout layout_;
};

// l1-direct sum of several triple-norm blocks (norm = sum of block norms).
SpacePtr make_dyadic_block_sum(double q, const std::vector<std::vector<int>>& level_lists);

// Trigonometric system on the torus: coordinate i corresponds to frequency
// i - n_max - 1 in [-n_max, n_max]; ||a||_p = ((1/M) sum_m |sum_k a_k
// e^{ik theta_m}|^p)^{1/p} on the uniform grid. Complex field.
// Guard: M >= 16 * (2 n_max + 1), else PrecisionError.
class TrigSpace;
std::shared_ptr<const TrigSpace> make_trig(double p, int n_max, int M);

class TrigSpace : public Space {
  public:
    TrigSpace(double p, int n_max, int M);
    int n_max() const { return n_max_; }
    int quadrature_points() const { return M_; }
    double p() const { return p_; }
    double norm_work() const override { return static_cast<double>(dim()) * M_; }
    // 1-based coordinate of frequency k in [-n_max, n_max]
    int coord_of_frequency(int k) const;

  protected:
    double norm_impl(const CoeffVector& x) const override;

  private:
    double p_;
    int n_max_;
    int M_;
    std::vector<Complex> twiddle_;  // e^{2 pi i t / M}
};

// Space construction from a JSON config object, e.g.
//   {"space":"summing","dim":14}
//   {"space":"direct_sum","left":{"p":1,"dim":8},"right":{"c0":true,"dim":8}}
//   {"space":"james","q":2,"dim":10}
//   {"space":"mixed_dyadic","q":2,"levels":[0,2,1,3]}
//   {"space":"trig","p":1,"n_max":32,"M":4096}
// Malformed input -> ConfigError.
SpacePtr space_from_json(const nlohmann::json& config);
SpacePtr space_from_json_text(const std::string& text);

}  // namespace greedylab
