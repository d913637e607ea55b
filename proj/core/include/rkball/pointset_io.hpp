#pragma once

#include <string>

#include "rkball/ball.hpp"
#include "rkball/mult_bm.hpp"

namespace rkball {

/// Parses a point set from JSON text of the form
///   {"d": 1, "points": [[0, 0], [0.5, 0]]}
/// where each point is a [re, im] pair for d = 1 or a length-d list of
/// [re, im] pairs for d >= 2. Throws ParseError on malformed JSON and
/// ValidationError (naming the offending index) on invalid points.
PointSet pointset_from_json(const std::string& text);

PointSet load_pointset(const std::string& path);

std::string pointset_to_json(const PointSet& x);

/// Parses interpolation data: {"d": ..., "nodes": [...], "targets": [...]},
/// nodes in the point-set format and each target a length-m list of
/// [re, im] pairs ([re, im] itself is accepted when m = 1).
PickInstance pick_instance_from_json(const std::string& text);

PickInstance load_pick_instance(const std::string& path);

} // namespace rkball
