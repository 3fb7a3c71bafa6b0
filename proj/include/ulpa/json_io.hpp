#ifndef ULPA_JSON_IO_HPP
#define ULPA_JSON_IO_HPP

#include "ulpa/branching.hpp"
#include "ulpa/permutative.hpp"
#include "ulpa/reduction.hpp"

#include "json.hpp"

namespace ulpa {

using Json = nlohmann::ordered_json;

inline constexpr const char* kBranchingSchema = "ulpa.bs/1";
inline constexpr const char* kPermutativeSchema = "ulpa.pd/1";

Json scalar_json(const Scalar& q);
// Accepts "p/q" strings and JSON integers. Throws InvalidScalar.
Scalar scalar_from_json(const Json& j);

Json path_json(const Ultragraph& g, const Path& p);
Json set_json(const Ultragraph& g, const VertexSet& s);
Json point_json(const Point& p);
Json factor_seq_json(const Ultragraph& g, const FactorSeq& seq);
Json form_json(const Ultragraph& g, const ReducedForm& form);
Json graded_json(const SkewRing& k, const GradedElement& x);

// Throws InvalidSystem for malformed documents, UnknownVertex/UnknownEdge for
// labels outside g.
Json branching_to_json(const Ultragraph& g, const BranchingSystem& bs);
BranchingSystem branching_from_json(const Ultragraph& g, const Json& j);

Json permutative_to_json(const Ultragraph& g, const PermutativeData& pd);
PermutativeData permutative_from_json(const Ultragraph& g, const Json& j);

Json discrete_to_json(const Ultragraph& g, const DiscreteSystem& ds);
Json branching_report_json(const BranchingReport& report);
Json stratification_json(const Ultragraph& g, const Stratification& s);

}  // namespace ulpa

#endif  // ULPA_JSON_IO_HPP
