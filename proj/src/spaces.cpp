#include "greedylab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSignFamilyCap = 16384;   // 2^14 rows for an l1-style family
constexpr int kProductFamilyCap = 20000;

std::string fmt_num(double v) {
    if (v == kInf) return "inf";
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double conjugate_exponent(double q) {
    if (q <= 1.0) return kInf;
    if (q == kInf) return 1.0;
    return q / (q - 1.0);
}

// Max over the family {±(sum of the first m coordinates)}: the summing norm.
class SummingSpace final : public Space {
  public:
    explicit SummingSpace(int dim)
        : Space("summing(" + std::to_string(dim) + ")", dim, FieldTag::Real,
                SpaceMeta{1.0, 2.0, 2.0, 2.0}) {
        for (int N = 1; N <= dim; ++N) {
            register_constant(ConstantKind::k, N, 2.0 * N,
                              "kept alternating +2/-2 block doubles the prefix peak");
            register_constant(ConstantKind::g, N, 2.0 * N,
                              "the alternating +2/-2 block is a greedy set");
            register_constant(ConstantKind::k_c, N, 1.0 + 2.0 * N,
                              "dropping the positive half of the alternating block");
            register_constant(ConstantKind::g_c, N, 1.0 + 2.0 * N,
                              "dropping the positive half of the alternating block");
            register_constant(ConstantKind::g_hat, N, 2.0 * N,
                              "smaller of the kept and dropped alternating bounds");
            register_constant(ConstantKind::g_tilde, N, 2.0 * N,
                              "nested greedy differences stay below the kept bound");
            register_constant(ConstantKind::mu, N, 1.0,
                              "every unsigned indicator has norm |A|");
            register_constant(ConstantKind::mu_d, N, 1.0,
                              "every unsigned indicator has norm |A|");
            register_constant(ConstantKind::tmu, N, 1.0 * N,
                              "constant signs over alternating signs");
            register_constant(ConstantKind::tmu_d, N, 1.0 * N,
                              "constant signs over alternating signs");
            register_constant(ConstantKind::gamma, N, std::ceil(N / 2.0),
                              "one sign class of an alternating pattern");
            register_constant(ConstantKind::nu, N, 1.0 + 4.0 * N,
                              "half-height comb against an opposite-signed block");
            register_lebesgue(false, N, 1.0 + 6.0 * N,
                              "comb vector with a two-point corrector");
            register_lebesgue(true, N, 1.0 + 4.0 * N,
                              "half-height comb against an opposite-signed block");
        }
    }

    std::optional<PolyhedralFamily> polyhedral() const override {
        PolyhedralFamily fam;
        fam.functionals.reserve(static_cast<size_t>(2 * dim()));
        for (int m = 1; m <= dim(); ++m) {
            std::vector<double> row(static_cast<size_t>(dim()), 0.0);
            for (int i = 0; i < m; ++i) row[static_cast<size_t>(i)] = 1.0;
            fam.functionals.push_back(row);
            for (double& w : row) w = -w;
            fam.functionals.push_back(std::move(row));
        }
        return fam;
    }

  protected:
    double norm_impl(const CoeffVector& x) const override {
        double run = 0.0;
        double best = 0.0;
        for (int i = 1; i <= dim(); ++i) {
            run += x.at(i).real();
            best = std::max(best, std::abs(run));
        }
        return best;
    }
};

double block_norm(const CoeffVector& x, int first, int count, const BlockSpec& spec) {
    if (spec.is_c0) {
        double best = 0.0;
        for (int i = first; i < first + count; ++i) best = std::max(best, x.modulus(i));
        return best;
    }
    if (spec.p == 1.0) {
        double sum = 0.0;
        for (int i = first; i < first + count; ++i) sum += x.modulus(i);
        return sum;
    }
    double sum = 0.0;
    for (int i = first; i < first + count; ++i) {
        double m = x.modulus(i);
        if (m > 0.0) sum += std::pow(m, spec.p);
    }
    return std::pow(sum, 1.0 / spec.p);
}

void validate_block(const BlockSpec& spec) {
    if (spec.dim < 1) throw DomainError("block dimension must be at least 1");
    if (!spec.is_c0 && (!(spec.p >= 1.0) || spec.p == kInf))
        throw DomainError("block exponent must satisfy 1 <= p < inf");
}

std::string block_name(const BlockSpec& spec) {
    if (spec.is_c0) return "c0(" + std::to_string(spec.dim) + ")";
    return "lp(" + fmt_num(spec.p) + "," + std::to_string(spec.dim) + ")";
}

// ±(all sign vectors) for an l1 block, ±(coordinate functionals) for a c0
// block; other exponents have no finite norming family.
std::optional<std::vector<std::vector<double>>> block_family(const BlockSpec& spec) {
    std::vector<std::vector<double>> rows;
    if (spec.is_c0) {
        for (int i = 0; i < spec.dim; ++i) {
            std::vector<double> row(static_cast<size_t>(spec.dim), 0.0);
            row[static_cast<size_t>(i)] = 1.0;
            rows.push_back(row);
            row[static_cast<size_t>(i)] = -1.0;
            rows.push_back(std::move(row));
        }
        return rows;
    }
    if (spec.p != 1.0) return std::nullopt;
    if (spec.dim > 14) return std::nullopt;
    std::uint64_t total = std::uint64_t{1} << spec.dim;
    if (total > kSignFamilyCap) return std::nullopt;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<double> row(static_cast<size_t>(spec.dim));
        for (int i = 0; i < spec.dim; ++i)
            row[static_cast<size_t>(i)] = (mask >> i) & 1 ? 1.0 : -1.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

class LpSpace final : public Space {
  public:
    explicit LpSpace(const BlockSpec& spec)
        : Space(block_name(spec), spec.dim, FieldTag::Real, SpaceMeta{}), spec_(spec) {
        for (int N = 1; N <= dim(); ++N) {
            const char* unc = "permuting or flipping coordinates preserves the norm";
            register_constant(ConstantKind::k, N, 1.0, unc);
            register_constant(ConstantKind::k_c, N, 1.0, unc);
            register_constant(ConstantKind::g, N, 1.0, unc);
            register_constant(ConstantKind::g_c, N, 1.0, unc);
            register_constant(ConstantKind::g_hat, N, 1.0, unc);
            register_constant(ConstantKind::g_tilde, N, 1.0, unc);
            const char* dem = "indicator norms depend only on the set size";
            register_constant(ConstantKind::mu, N, 1.0, dem);
            register_constant(ConstantKind::mu_d, N, 1.0, dem);
            register_constant(ConstantKind::tmu, N, 1.0, dem);
            register_constant(ConstantKind::tmu_d, N, 1.0, dem);
            register_constant(ConstantKind::gamma, N, 1.0, dem);
            register_constant(ConstantKind::nu, N, 1.0,
                              "indicator plus disjoint tail splits coordinatewise");
            register_lebesgue(false, N, 1.0, "keeping the largest moduli is optimal");
            register_lebesgue(true, N, 1.0, "keeping the largest moduli is optimal");
        }
    }

    std::optional<PolyhedralFamily> polyhedral() const override {
        auto rows = block_family(spec_);
        if (!rows) return std::nullopt;
        PolyhedralFamily fam;
        fam.functionals = std::move(*rows);
        return fam;
    }

  protected:
    double norm_impl(const CoeffVector& x) const override {
        return block_norm(x, 1, dim(), spec_);
    }

  private:
    BlockSpec spec_;
};

class DirectSumSpace final : public Space {
  public:
    DirectSumSpace(const BlockSpec& left, const BlockSpec& right)
        : Space("direct_sum(" + block_name(left) + "," + block_name(right) + ")",
                left.dim + right.dim, FieldTag::Real, SpaceMeta{}),
          left_(left), right_(right) {
        bool left_l1 = !left.is_c0 && left.p == 1.0;
        bool right_l1 = !right.is_c0 && right.p == 1.0;
        const char* unc = "both block norms are coordinatewise monotone";
        for (int N = 1; N <= dim(); ++N) {
            register_constant(ConstantKind::k, N, 1.0, unc);
            register_constant(ConstantKind::k_c, N, 1.0, unc);
            register_constant(ConstantKind::g, N, 1.0, unc);
            register_constant(ConstantKind::g_c, N, 1.0, unc);
            register_constant(ConstantKind::g_hat, N, 1.0, unc);
            register_constant(ConstantKind::g_tilde, N, 1.0, unc);
            register_constant(ConstantKind::gamma, N, 1.0,
                              "block norms grow coordinatewise in the set");
        }
        if (left_l1 && right.is_c0) {
            for (int N = 1; N <= dim(); ++N) {
                double n = N;
                const char* dem = "N left ones over N right ones";
                register_constant(ConstantKind::mu, N, n, dem);
                register_constant(ConstantKind::mu_d, N, n, dem);
                register_constant(ConstantKind::tmu, N, n, dem);
                register_constant(ConstantKind::tmu_d, N, n, dem);
                const char* wit = "N left ones against N right ones plus a fresh right coordinate";
                register_constant(ConstantKind::nu, N, n + 1.0, wit);
                register_lebesgue(false, N, n + 1.0, wit);
                register_lebesgue(true, N, n + 1.0, wit);
            }
        } else if (left_l1 && !right.is_c0 && right.p > 1.0) {
            double qp = conjugate_exponent(right.p);
            for (int N = 1; N <= dim(); ++N) {
                double dem_v = std::pow(N, 1.0 / qp);
                const char* dem = "N left ones over N right ones";
                register_constant(ConstantKind::mu, N, dem_v, dem);
                register_constant(ConstantKind::mu_d, N, dem_v, dem);
                register_constant(ConstantKind::tmu, N, dem_v, dem);
                register_constant(ConstantKind::tmu_d, N, dem_v, dem);
                double wit_v = std::pow(N + 1.0, 1.0 / qp);
                const char* wit = "N left ones against N right ones, sharing one right coordinate";
                register_constant(ConstantKind::nu, N, wit_v, wit);
                register_lebesgue(false, N, wit_v, wit);
                register_lebesgue(true, N, wit_v, wit);
            }
        } else if (left_l1 && right_l1) {
            for (int N = 1; N <= dim(); ++N) {
                const char* dem = "the whole space carries the l1 norm";
                register_constant(ConstantKind::mu, N, 1.0, dem);
                register_constant(ConstantKind::mu_d, N, 1.0, dem);
                register_constant(ConstantKind::tmu, N, 1.0, dem);
                register_constant(ConstantKind::tmu_d, N, 1.0, dem);
                register_constant(ConstantKind::nu, N, 1.0, dem);
                register_lebesgue(false, N, 1.0, dem);
                register_lebesgue(true, N, 1.0, dem);
            }
        } else if (!left.is_c0 && left.p > 1.0 && right.is_c0) {
            for (int N = 1; N <= dim(); ++N) {
                double dem_v = 1.0 + std::pow(N - 1.0, 1.0 / left.p);
                const char* dem = "N-1 left ones and one right coordinate over N right ones";
                register_constant(ConstantKind::mu, N, dem_v, dem);
                register_constant(ConstantKind::mu_d, N, dem_v, dem);
                register_constant(ConstantKind::tmu, N, dem_v, dem);
                register_constant(ConstantKind::tmu_d, N, dem_v, dem);
                double wit_v = 1.0 + std::pow(N, 1.0 / left.p);
                const char* wit = "N left ones against N right ones plus a fresh right coordinate";
                register_constant(ConstantKind::nu, N, wit_v, wit);
                register_lebesgue(false, N, wit_v, wit);
                register_lebesgue(true, N, wit_v, wit);
            }
        }
    }

    const BlockSpec& left() const { return left_; }
    const BlockSpec& right() const { return right_; }

    std::optional<PolyhedralFamily> polyhedral() const override {
        auto lrows = block_family(left_);
        auto rrows = block_family(right_);
        if (!lrows || !rrows) return std::nullopt;
        std::uint64_t total =
            static_cast<std::uint64_t>(lrows->size()) * rrows->size();
        if (total > kProductFamilyCap) return std::nullopt;
        PolyhedralFamily fam;
        fam.functionals.reserve(total);
        for (const auto& lr : *lrows) {
            for (const auto& rr : *rrows) {
                std::vector<double> row;
                row.reserve(static_cast<size_t>(dim()));
                row.insert(row.end(), lr.begin(), lr.end());
                row.insert(row.end(), rr.begin(), rr.end());
                fam.functionals.push_back(std::move(row));
            }
        }
        return fam;
    }

  protected:
    double norm_impl(const CoeffVector& x) const override {
        return block_norm(x, 1, left_.dim, left_) +
               block_norm(x, left_.dim + 1, right_.dim, right_);
    }

  private:
    BlockSpec left_;
    BlockSpec right_;
};

double james_chain_norm(const std::vector<double>& a, double q) {
    int d = static_cast<int>(a.size());
    std::vector<double> prefix(static_cast<size_t>(d) + 1, 0.0);
    for (int i = 0; i < d; ++i) prefix[static_cast<size_t>(i) + 1] = prefix[static_cast<size_t>(i)] + a[static_cast<size_t>(i)];
    if (q == kInf) {
        double lo = 0.0, hi = 0.0;
        double best = 0.0;
        for (int i = 1; i <= d; ++i) {
            double s = prefix[static_cast<size_t>(i)];
            best = std::max(best, std::max(s - lo, hi - s));
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        return best;
    }
    std::vector<double> dp(static_cast<size_t>(d) + 1, 0.0);
    double best = 0.0;
    for (int i = 1; i <= d; ++i) {
        double v = 0.0;
        for (int t = 0; t < i; ++t) {
            double gap = std::abs(prefix[static_cast<size_t>(i)] - prefix[static_cast<size_t>(t)]);
            double cand = dp[static_cast<size_t>(t)] + (gap > 0.0 ? std::pow(gap, q) : 0.0);
            v = std::max(v, cand);
        }
        dp[static_cast<size_t>(i)] = v;
        best = std::max(best, v);
    }
    return std::pow(best, 1.0 / q);
}

class JamesSpace final : public Space {
  public:
    JamesSpace(double q, int dim)
        : Space("james(" + fmt_num(q) + "," + std::to_string(dim) + ")", dim,
                FieldTag::Real, SpaceMeta{}),
          q_(q) {
        for (int N = 1; N <= dim; ++N) {
            register_constant(ConstantKind::mu, N, 1.0,
                              "a single chain block sums every indicator");
            register_constant(ConstantKind::mu_d, N, 1.0,
                              "a single chain block sums every indicator");
        }
    }

    std::optional<PolyhedralFamily> polyhedral() const override {
        if (q_ != 1.0) return std::nullopt;
        BlockSpec l1{1.0, false, dim()};
        auto rows = block_family(l1);
        if (!rows) return std::nullopt;
        PolyhedralFamily fam;
        fam.functionals = std::move(*rows);
        return fam;
    }

  protected:
    double norm_impl(const CoeffVector& x) const override {
        std::vector<double> a(static_cast<size_t>(dim()));
        for (int i = 1; i <= dim(); ++i) a[static_cast<size_t>(i) - 1] = x.at(i).real();
        return james_chain_norm(a, q_);
    }

  private:
    double q_;
};

std::string layout_tag(const std::vector<int>& levels) {
    std::string s = "[";
    for (size_t i = 0; i < levels.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(levels[static_cast<size_t>(i)]);
    }
    return s + "]";
}

void validate_layout(const DyadicLayout& layout) {
    if (layout.levels.empty()) throw LayoutError("dyadic layout needs at least one level");
    for (int k : layout.levels) {
        if (k < 0) throw LayoutError("dyadic level must be nonnegative");
        if (k > 12) throw LayoutError("dyadic level " + std::to_string(k) + " exceeds the guard (12)");
    }
}

class DyadicBlockSumSpace final : public Space {
  public:
    DyadicBlockSumSpace(double q, std::vector<std::shared_ptr<const MixedDyadicSpace>> blocks)
        : Space(sum_name(q, blocks), total_dim(blocks), FieldTag::Real, SpaceMeta{}),
          blocks_(std::move(blocks)) {}

  protected:
    double norm_impl(const CoeffVector& x) const override {
        double total = 0.0;
        int offset = 0;
        for (const auto& block : blocks_) {
            CoeffVector y = block->zero();
            for (int i = 1; i <= block->dim(); ++i) y.set(i, x.at(offset + i));
            total += block->norm(y);
            offset += block->dim();
        }
        return total;
    }

  private:
    static int total_dim(const std::vector<std::shared_ptr<const MixedDyadicSpace>>& blocks) {
        int d = 0;
        for (const auto& b : blocks) d += b->dim();
        return d;
    }
    static std::string sum_name(double q, const std::vector<std::shared_ptr<const MixedDyadicSpace>>& blocks) {
        std::string s = "dyadic_block_sum(" + fmt_num(q);
        for (const auto& b : blocks) s += "," + layout_tag(b->layout().levels);
        return s + ")";
    }
    std::vector<std::shared_ptr<const MixedDyadicSpace>> blocks_;
};

}  // namespace

int DyadicLayout::dim() const {
    int d = 0;
    for (int k : levels) d += 1 << k;
    return d;
}

int DyadicLayout::max_level() const {
    int m = 0;
    for (int k : levels) m = std::max(m, k);
    return m;
}

int DyadicLayout::block_first(int b) const {
    int first = 1;
    for (int j = 0; j < b; ++j) first += 1 << levels[static_cast<size_t>(j)];
    return first;
}

namespace {
std::string mixed_name(double q, const DyadicLayout& layout) {
    if (!(q >= 1.0)) throw DomainError("mixed_dyadic exponent must satisfy q >= 1");
    validate_layout(layout);
    return "mixed_dyadic(" + fmt_num(q) + "," + layout_tag(layout.levels) + ")";
}
}  // namespace

MixedDyadicSpace::MixedDyadicSpace(double q, DyadicLayout layout)
    : Space(mixed_name(q, layout), layout.dim(), FieldTag::Real, SpaceMeta{}),
      q_(q), layout_(std::move(layout)) {}

double MixedDyadicSpace::f_norm(const CoeffVector& x) const {
    int kmax = layout_.max_level();
    int cells = 1 << kmax;
    int nblocks = static_cast<int>(layout_.levels.size());
    std::vector<int> firsts(static_cast<size_t>(nblocks));
    for (int b = 0; b < nblocks; ++b) firsts[static_cast<size_t>(b)] = layout_.block_first(b);
    double total = 0.0;
    for (int c = 0; c < cells; ++c) {
        double cell = 0.0;
        for (int b = 0; b < nblocks; ++b) {
            int k = layout_.levels[static_cast<size_t>(b)];
            int idx = c >> (kmax - k);
            double m = x.modulus(firsts[static_cast<size_t>(b)] + idx) * static_cast<double>(1 << k);
            if (q_ == kInf) {
                cell = std::max(cell, m);
            } else if (m > 0.0) {
                cell += std::pow(m, q_);
            }
        }
        total += q_ == kInf ? cell : (cell > 0.0 ? std::pow(cell, 1.0 / q_) : 0.0);
    }
    return total / static_cast<double>(cells);
}

double MixedDyadicSpace::james_norm(const CoeffVector& x) const {
    std::vector<double> a(static_cast<size_t>(dim()));
    for (int i = 1; i <= dim(); ++i) a[static_cast<size_t>(i) - 1] = x.at(i).real();
    return james_chain_norm(a, q_);
}

double MixedDyadicSpace::norm_impl(const CoeffVector& x) const {
    return std::max(f_norm(x), james_norm(x));
}

std::shared_ptr<const MixedDyadicSpace> make_mixed_dyadic(double q, const std::vector<int>& levels) {
    return std::make_shared<const MixedDyadicSpace>(q, DyadicLayout{levels});
}

SpacePtr make_dyadic_block_sum(double q, const std::vector<std::vector<int>>& level_lists) {
    if (level_lists.empty()) throw LayoutError("dyadic block sum needs at least one block");
    std::vector<std::shared_ptr<const MixedDyadicSpace>> blocks;
    blocks.reserve(level_lists.size());
    for (const auto& levels : level_lists) blocks.push_back(make_mixed_dyadic(q, levels));
    return std::make_shared<const DyadicBlockSumSpace>(q, std::move(blocks));
}

TrigSpace::TrigSpace(double p, int n_max, int M)
    : Space("trig(" + fmt_num(p) + "," + std::to_string(n_max) + "," + std::to_string(M) + ")",
            2 * n_max + 1, FieldTag::Complex, SpaceMeta{}),
      p_(p), n_max_(n_max), M_(M) {
    if (!(p >= 1.0) || p == kInf) throw DomainError("trig exponent must satisfy 1 <= p < inf");
    if (n_max < 1) throw DomainError("trig n_max must be at least 1");
    if (M < 16 * (2 * n_max + 1))
        throw PrecisionError("trig quadrature needs M >= 16*(2*n_max+1) points; got M=" + std::to_string(M));
    twiddle_.resize(static_cast<size_t>(M_));
    const double step = 2.0 * M_PI / static_cast<double>(M_);
    for (int t = 0; t < M_; ++t)
        twiddle_[static_cast<size_t>(t)] = Complex(std::cos(step * t), std::sin(step * t));
}

int TrigSpace::coord_of_frequency(int k) const {
    if (k < -n_max_ || k > n_max_)
        throw DomainError("frequency " + std::to_string(k) + " outside [-n_max, n_max]");
    return k + n_max_ + 1;
}

double TrigSpace::norm_impl(const CoeffVector& x) const {
    std::vector<int> supp = x.support();
    if (supp.empty()) return 0.0;
    std::vector<int> freq(supp.size());
    std::vector<Complex> coef(supp.size());
    for (size_t j = 0; j < supp.size(); ++j) {
        freq[j] = supp[j] - n_max_ - 1;
        coef[j] = x.at(supp[j]);
    }
    double acc = 0.0;
    for (int m = 0; m < M_; ++m) {
        Complex val(0.0, 0.0);
        for (size_t j = 0; j < supp.size(); ++j) {
            std::int64_t t = (static_cast<std::int64_t>(freq[j]) * m) % M_;
            if (t < 0) t += M_;
            val += coef[j] * twiddle_[static_cast<size_t>(t)];
        }
        double a = std::abs(val);
        if (p_ == 1.0) {
            acc += a;
        } else if (p_ == 2.0) {
            acc += a * a;
        } else if (a > 0.0) {
            acc += std::pow(a, p_);
        }
    }
    return std::pow(acc / static_cast<double>(M_), 1.0 / p_);
}

std::shared_ptr<const TrigSpace> make_trig(double p, int n_max, int M) {
    return std::make_shared<const TrigSpace>(p, n_max, M);
}

SpacePtr make_summing(int dim) {
    if (dim < 1) throw DomainError("summing dimension must be at least 1");
    return std::make_shared<const SummingSpace>(dim);
}

SpacePtr make_lp(const BlockSpec& spec) {
    validate_block(spec);
    return std::make_shared<const LpSpace>(spec);
}

SpacePtr make_direct_sum(const BlockSpec& left, const BlockSpec& right) {
    validate_block(left);
    validate_block(right);
    return std::make_shared<const DirectSumSpace>(left, right);
}

SpacePtr make_james(double q, int dim) {
    if (dim < 1) throw DomainError("james dimension must be at least 1");
    if (!(q >= 1.0) || q == kInf) throw DomainError("james exponent must satisfy 1 <= q < inf");
    return std::make_shared<const JamesSpace>(q, dim);
}

namespace {

using nlohmann::json;

double exponent_field(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
        return kInf;
    if (!v.is_number()) throw ConfigError("field '" + key + "' must be a number or \"inf\"");
    return v.get<double>();
}

int int_field(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
    return v.get<int>();
}

BlockSpec block_from_json(const json& obj) {
    if (!obj.is_object()) throw ConfigError("direct sum block must be an object");
    BlockSpec spec;
    spec.dim = int_field(obj, "dim");
    if (obj.contains("c0") && obj.at("c0").is_boolean() && obj.at("c0").get<bool>()) {
        spec.is_c0 = true;
    } else {
        spec.p = exponent_field(obj, "p");
    }
    return spec;
}

SpacePtr dispatch_space(const json& config) {
    if (!config.is_object()) throw ConfigError("space config must be a JSON object");
    if (!config.contains("space") || !config.at("space").is_string())
        throw ConfigError("space config needs a string field 'space'");
    std::string kind = config.at("space").get<std::string>();
    if (kind == "summing") {
        return make_summing(int_field(config, "dim"));
    }
    if (kind == "lp" || kind == "c0") {
        BlockSpec spec;
        spec.dim = int_field(config, "dim");
        if (kind == "c0" || (config.contains("c0") && config.at("c0").is_boolean() && config.at("c0").get<bool>()))
            spec.is_c0 = true;
        else
            spec.p = exponent_field(config, "p");
        return make_lp(spec);
    }
    if (kind == "direct_sum") {
        return make_direct_sum(block_from_json(config.at("left")),
                               block_from_json(config.at("right")));
    }
    if (kind == "james") {
        return make_james(exponent_field(config, "q"), int_field(config, "dim"));
    }
    if (kind == "mixed_dyadic") {
        const json& lv = config.at("levels");
        if (!lv.is_array() || lv.empty()) throw ConfigError("'levels' must be a nonempty array");
        std::vector<int> levels;
        for (const auto& e : lv) {
            if (!e.is_number_integer()) throw ConfigError("'levels' entries must be integers");
            levels.push_back(e.get<int>());
        }
        return make_mixed_dyadic(exponent_field(config, "q"), levels);
    }
    if (kind == "dyadic_block_sum") {
        const json& bl = config.at("blocks");
        if (!bl.is_array() || bl.empty()) throw ConfigError("'blocks' must be a nonempty array");
        std::vector<std::vector<int>> lists;
        for (const auto& block : bl) {
            if (!block.is_array() || block.empty()) throw ConfigError("each block must be a nonempty array of levels");
            std::vector<int> levels;
            for (const auto& e : block) {
                if (!e.is_number_integer()) throw ConfigError("'blocks' entries must be integers");
                levels.push_back(e.get<int>());
            }
            lists.push_back(std::move(levels));
        }
        return make_dyadic_block_sum(exponent_field(config, "q"), lists);
    }
    if (kind == "trig") {
        double p = exponent_field(config, "p");
        int n_max = int_field(config, "n_max");
        int M = config.contains("M") ? int_field(config, "M") : 16 * (2 * n_max + 1);
        return make_trig(p, n_max, M);
    }
    throw ConfigError("unknown space kind '" + kind + "'");
}

}  // namespace

SpacePtr space_from_json(const nlohmann::json& config) {
    try {
        return dispatch_space(config);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid space config: ") + e.what());
    }
}

SpacePtr space_from_json_text(const std::string& text) {
    nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ConfigError("space config is not valid JSON");
    return space_from_json(parsed);
}

}  // namespace greedylab
