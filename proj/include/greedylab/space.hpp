#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/types.hpp"

namespace greedylab {

struct SpaceMeta {
    double kappa1 = 1.0;  // inf_n ||e_n||
    double kappa2 = 1.0;  // sup_n max(||e_n||, ||e*_n||)
    double K = 1.0;       // sup_{m,n} ||e_m|| ||e*_n||
    double Kstar = 1.0;   // sup_n ||e_n|| ||e*_n||
};

// A known closed-form value of a constant on this space, valid as an upper
// bound and (when `attained` holds at this dimension) as the exact value.
struct RegisteredValue {
    double value = 0.0;
    std::string citation;
};

// Finite symmetric family F of linear functionals with ||y|| = max f(y).
// Only offered by spaces whose unit ball is a polytope; enables exact
// best-approximation solves.
struct PolyhedralFamily {
    std::vector<std::vector<double>> functionals;  // row-major weights, 1-based slot i-1
};

class Space {
  public:
    virtual ~Space() = default;

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    FieldTag field() const { return field_; }
    const SpaceMeta& meta() const { return meta_; }

    // Norm oracle. Rejects vectors of the wrong dimension or field.
    double norm(const CoeffVector& x) const;

    std::optional<RegisteredValue> registered_constant(ConstantKind kind, int N) const;
    // Registered Lebesgue values: exact L (index 0) and L-tilde (index 1).
    std::optional<RegisteredValue> registered_lebesgue(bool tilde, int N) const;

    virtual std::optional<PolyhedralFamily> polyhedral() const { return std::nullopt; }

    // Rough operation count of one norm evaluation, consumed by the work
    // guards that decide when an enumeration or descent loop is affordable.
    virtual double norm_work() const { return static_cast<double>(dim_); }

    // Roots-of-unity resolution for sign enumerations on complex spaces.
    int sign_discretization() const { return sign_roots_; }

    // Fresh zero vector in this space's field.
    CoeffVector zero() const { return CoeffVector(field_, dim_); }

  protected:
    Space(std::string name, int dim, FieldTag field, SpaceMeta meta)
        : name_(std::move(name)), dim_(dim), field_(field), meta_(meta) {}

    virtual double norm_impl(const CoeffVector& x) const = 0;

    void register_constant(ConstantKind kind, int N, double value, std::string citation);
    void register_lebesgue(bool tilde, int N, double value, std::string citation);
    void set_sign_discretization(int m) { sign_roots_ = m; }

  private:
    std::string name_;
    int dim_ = 0;
    FieldTag field_ = FieldTag::Real;
    SpaceMeta meta_;
    int sign_roots_ = 8;
    std::map<std::pair<int, int>, RegisteredValue> registered_;
    std::map<std::pair<int, int>, RegisteredValue> registered_L_;
};

using SpacePtr = std::shared_ptr<const Space>;

}  // namespace greedylab
