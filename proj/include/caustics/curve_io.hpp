#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "caustics/curve.hpp"

namespace caustics {

/// {"c0": ..., "anchor": [x, y], "harmonics": [[k, a, b], ...]}
nlohmann::json curve_to_json(const FourierCurve& curve);
FourierCurve curve_from_json(const nlohmann::json& j);

std::string serialize_curve(const FourierCurve& curve);
FourierCurve parse_curve(std::string_view text);

/// Accepts the inline shorthand "omega:n,tau" or a path to a serialized curve.
FourierCurve load_curve(const std::string& source);

}  // namespace caustics
