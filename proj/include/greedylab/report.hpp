#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedylab/constants.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/space.hpp"

namespace greedylab {

inline constexpr const char* kVersion = "0.1.0";

// Deterministic serialization: ordered keys, no timestamps, values printed
// by the shortest round-trip representation. +inf serializes as null.
using Json = nlohmann::ordered_json;

Json to_json(const CoeffVector& x);
Json to_json(const IndexSet& s);
Json to_json(const SignPattern& p);
Json to_json(const ConstantEstimate& e);
Json to_json(const BoundCertificate& c);

struct Report {
    std::string space_name;
    int dim = 0;
    FieldTag field = FieldTag::Real;
    uint64_t seed = 0;
    std::vector<ConstantEstimate> constants;
    std::vector<BoundCertificate> certificates;
    std::vector<LebesgueSandwich> sandwiches;
    std::vector<std::string> notes;

    int exact_count() const;
    int violated_count() const;

    Json to_json() const;
    std::string to_csv() const;       // kind,N,lower,upper,exact,citation
    std::string to_markdown() const;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace greedylab
