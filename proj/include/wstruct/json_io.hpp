#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wstruct/k0.hpp"
#include "wstruct/slope.hpp"
#include "wstruct/weight.hpp"

namespace wstruct {

using Json = nlohmann::ordered_json;

/// Malformed or ill-typed input; `where` is a JSON pointer or a byte offset.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

/// Parses text, turning syntax errors into InputError with the byte offset.
Json parse_json_text(const std::string& text, const std::string& origin);
/// Reads and parses a file; unreadable files are InputErrors too.
Json read_json_file(const std::string& path);

Json rational_json(const mpq_class& q);
Json rational_vector_json(const RationalVector& v);
Json int_lattice_json(const IntLattice& l);
Json scaled_lattice_json(const ScaledLattice& l);

/// {"vertices": [...], "arrows": [[from, to], ...]} with vertex labels.
Json quiver_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

/// Entry (i, j) is a scalar when its only path is trivial, else the list of
/// path coefficients in path-basis order.
Json base_morphism_json(const BaseMorphism& f);
BaseMorphism base_morphism_from_json(const Json& j, const BaseObject& source, const BaseObject& target,
                                     const std::string& where);

/// {"lo": k, "terms": [[mult per vertex], ...], "diffs": [matrix, ...]}.
Json complex_json(const Complex& c);
Complex complex_from_json(const Json& j, const CategoryPtr& cat, const std::string& where = "");

/// {"source", "target", "degree", "components": {"<i>": matrix}}.
Json graded_map_json(const GradedMap& f);
GradedMap graded_map_from_json(const Json& j, const CategoryPtr& cat, const std::string& where = "");

Json decomposition_json(const WeightDecomposition& d);
Json triangle_json(const Triangle& t);

/// {"core": {"<i>": v}, "left": {"end", "vals"}, "right": {"start", "vals"}}.
/// Periods are the lengths of the value lists.
Json slope_object_json(const SlopeObject& m);
SlopeObject slope_object_from_json(const Json& j, const std::string& where = "");
Json slope_pair_json(const SlopePair& s);
Json certificate_json(const ObstructionCertificate& c);

Json criterion_json(const CriterionResult& r);
Json necessary_condition_json(const NecessaryConditionReport& r);

}  // namespace wstruct
