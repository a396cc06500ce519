#pragma once

#include <string>

#include "json.hpp"

#include "hadamard/actions.hpp"
#include "hadamard/continuum.hpp"
#include "hadamard/diffeo.hpp"
#include "hadamard/spaces.hpp"
#include "hadamard/test_function.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard::io {

using Json = nlohmann::json;

// Models are written by name ("euclidean:3", "spd:2", "spd1:3",
// "product[spd:2@0.5,spd:2@0.5]"); the reader also accepts
// {"kind": "product", "factors": [{"model": ..., "weight": ...}]}.
Json to_json(const SpaceModel& model);
SpaceModel model_from_json(const Json& j);
SpaceModel parse_model(const std::string& name);

// {"model": name, "coords": ...}; SPD matrices are row-major nested lists,
// product points list the coordinates of their parts.
Json to_json(const SpaceModel& model, const Point& p);
Point point_from_json(const Json& j);
Point point_from_json(const Json& coords, const SpaceModel& model);

Json to_json(const FiniteMeasureSpace& space);
FiniteMeasureSpace space_from_json(const Json& j);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json to_json(const SimpleFunction& xi);
SimpleFunction simple_function_from_json(const Json& j);

Json to_json(const TorusDiffeo& phi);
TorusDiffeo diffeo_from_json(const Json& j);

Json to_json(const IsometryDescriptor& phi);
IsometryDescriptor isometry_from_json(const Json& j);

Json to_json(const TestFunction& f);
TestFunction test_function_from_json(const Json& j);

Json to_json(const Tolerances& tol);
// Applies the overrides in `j` on top of `base`; unknown names are rejected.
Tolerances tolerances_from_json(const Json& j, Tolerances base = default_tolerances());

}  // namespace hadamard::io
