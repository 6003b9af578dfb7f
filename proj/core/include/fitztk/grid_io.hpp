#pragma once

#include <iosfwd>
#include <string>

#include "fitztk/conjugate.hpp"
#include "fitztk/operator_graph.hpp"

namespace fitztk {

struct GridWindow {
  double xmin = -2.0, xmax = 2.0;
  double ymin = -2.0, ymax = 2.0;
};

// CSV dump of the phi / c / gap landscape of a 1-D operator over a window:
// header "x,xstar,phi,c,gap", row-major with xstar varying fastest,
// resolution points per axis, "inf"/"-inf" tokens, LF line endings,
// %.17g numbers so every row re-parses to the same value.
void grid_dump(const OperatorGraph& op, const GridWindow& window, int resolution,
               std::ostream& out, const TolerancePolicy& pol = {});

std::string grid_dump_string(const OperatorGraph& op, const GridWindow& window, int resolution,
                             const TolerancePolicy& pol = {});

// Grid function CSV: header "x,value" (1-D) or "x,y,value" (2-D row-major),
// same token conventions as grid_dump.
void write_grid_csv(const GridFunction& f, std::ostream& out);
std::string grid_csv_string(const GridFunction& f);
GridFunction read_grid_csv(std::istream& in);
GridFunction load_grid_csv(const std::string& path);
void save_grid_csv(const GridFunction& f, const std::string& path);

}  // namespace fitztk
