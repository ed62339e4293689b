#include "greedylab/space.hpp"

#include <cmath>

#include "greedylab/errors.hpp"

namespace greedylab {

double Space::norm(const CoeffVector& x) const {
    if (x.dim() != dim_) throw DomainError("vector dimension does not match the space");
    if (field_ == FieldTag::Real && x.field() == FieldTag::Complex)
        throw FieldError("complex vector in a real space");
    double v = norm_impl(x);
    if (!std::isfinite(v) || v < 0.0) throw DomainError("norm evaluation failed");
    return v;
}

void Space::register_constant(ConstantKind kind, int N, double value, std::string citation) {
    registered_[{static_cast<int>(kind), N}] = RegisteredValue{value, std::move(citation)};
}

void Space::register_lebesgue(bool tilde, int N, double value, std::string citation) {
    registered_L_[{tilde ? 1 : 0, N}] = RegisteredValue{value, std::move(citation)};
}

std::optional<RegisteredValue> Space::registered_constant(ConstantKind kind, int N) const {
    auto it = registered_.find({static_cast<int>(kind), N});
    if (it == registered_.end()) return std::nullopt;
    return it->second;
}

std::optional<RegisteredValue> Space::registered_lebesgue(bool tilde, int N) const {
    auto it = registered_L_.find({tilde ? 1 : 0, N});
    if (it == registered_L_.end()) return std::nullopt;
    return it->second;
}

}  // namespace greedylab
