#pragma once

#include "spaceform/cosmos.hpp"
#include "spaceform/quotient.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace spaceform::io {

using nlohmann::json;

/// {"kind": "spherical"|"flat"|"hyperbolic", "dim": n, "k": real}
ModelSpace space_from_json(const json& j);
json to_json(const ModelSpace& space);

/// n+1 ambient coordinates; flat spaces also accept the n flat coordinates.
AmbientPoint point_from_json(const ModelSpace& space, const json& j);
json to_json(const AmbientPoint& p);

/// Group file: {"kind": ..., "generators": [...], "max_word_length": int}.
/// Generators are quaternion 4-arrays (left twists unless "twist": "right"),
/// full (n+1)x(n+1) matrices, or flat {"A": n x n, "b": n} objects. A kind
/// naming a spherical family ("2I", "C8", "2D3", ...) needs no generators.
DiscreteGroup group_from_json(const ModelSpace& space, const json& j);

json to_json(const Isometry& g);

/// Form file: {"space": ..., "group": ..., "r": real, "base": point}.
/// Returns the verification report; callers decide how to treat a rejection.
VerificationReport form_report_from_json(const json& j);
/// As above but throws InvalidArgument on rejection.
SpaceForm form_from_json(const json& j);
json to_json(const SpaceForm& form, const json& group_json);

json to_json(const Violation& v);

/// {"stars": [{"id": "...", "pos": [...], "lum": real}]}
StarCatalog catalog_from_json(const ModelSpace& space, const json& j);
json to_json(const StarCatalog& catalog);

json to_json(const GhostImage& image);

/// Inline JSON when the text starts with '{' or '[', else a file path.
json load_json(const std::string& text_or_path);

/// Shortest round-trip decimal form of a double.
std::string format_real(double value);

} // namespace spaceform::io
