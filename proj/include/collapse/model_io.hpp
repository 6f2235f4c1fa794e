#pragma once

// JSON model files and degeneracy reports. Exact scalars travel as strings
// ("3/2", "pi2*4") or JSON integers; JSON floats are rejected.

#include <filesystem>
#include <string>

#include "collapse/bifurcation.hpp"
#include "collapse/submersion.hpp"
#include "json.hpp"

namespace collapse {

using Json = nlohmann::ordered_json;

SpaceDescriptor space_from_json(const Json& j);
Json space_to_json(const SpaceDescriptor& space);

// Parses and validates. Throws SchemaViolation / InconsistentModel.
SubmersionModel model_from_json(const Json& j);
Json model_to_json(const SubmersionModel& model);
SubmersionModel load_model(const std::filesystem::path& path);

Json degeneracies_to_json(const SubmersionModel& model, const DegeneracyList& list, const Rational& t_min,
                          const Rational& t_max);
DegeneracyList degeneracies_from_json(const Json& j);

}  // namespace collapse
