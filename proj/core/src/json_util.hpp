#pragma once

// Internal nlohmann bridging shared by the serialization code; not installed.

#include <json.hpp>

#include "qpt/matrix.hpp"

namespace qpt::detail {

using json = nlohmann::json;

json matrix_to_json_obj(const Matrix& m);
Matrix matrix_from_json_obj(const json& j);

}  // namespace qpt::detail
