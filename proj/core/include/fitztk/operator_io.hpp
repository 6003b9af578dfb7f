#pragma once

#include <string>

#include "fitztk/operator_graph.hpp"

namespace fitztk {

// Operator spec files: JSON, schema_version 1.
//
//   {"schema_version": 1, "kind": "polygonal", "dimension": 1,
//    "pieces": [
//      {"type": "point",   "z": {"x": [0], "xstar": [0]}},
//      {"type": "segment", "a": {...}, "b": {...}},
//      {"type": "ray",     "base": {...}, "dir": {...}},
//      {"type": "line",    "base": {...}, "dir": {...}}]}
//
//   {"schema_version": 1, "kind": "linear", "dimension": 2,
//    "A": [[1, 0], [0, 1]], "b": [0, 0]}
//
//   {"schema_version": 1, "kind": "cubic1d", "dimension": 1}
//
// Parse errors carry the offending location; invariant violations carry the
// field path (e.g. "pieces[3].dir").

OperatorGraph load_operator(const std::string& path, const TolerancePolicy& pol = {});
OperatorGraph parse_operator(const std::string& json_text, const TolerancePolicy& pol = {});

std::string serialize_operator(const OperatorGraph& op);
void save_operator(const OperatorGraph& op, const std::string& path);

/// Parse "x1,...,xn;s1,...,sn" into a paired point (the CLI format).
PairedPoint parse_paired_point(const std::string& text);

}  // namespace fitztk
