#include "fitztk/grid_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fitztk/fitzpatrick.hpp"

namespace fitztk {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

ExtendedReal parse_token(const std::string& tok) {
  if (tok == "inf") return ExtendedReal::plus_inf();
  if (tok == "-inf") return ExtendedReal::minus_inf();
  try {
    return ExtendedReal(std::stod(tok));
  } catch (const std::exception&) {
    throw FileParseError("grid csv: bad numeric token '" + tok + "'");
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

}  // namespace

void grid_dump(const OperatorGraph& op, const GridWindow& window, int resolution,
               std::ostream& out, const TolerancePolicy& pol) {
  if (operator_dim(op) != 1) throw PreconditionError("grid_dump: operator dimension must be 1");
  if (resolution < 1) throw PreconditionError("grid_dump: resolution must be >= 1");
  std::vector<double> xs = linspace(window.xmin, window.xmax, resolution);
  std::vector<double> ys = linspace(window.ymin, window.ymax, resolution);
  out << "x,xstar,phi,c,gap\n";
  for (double x : xs) {
    for (double y : ys) {
      PairedPoint z(Vector::Constant(1, x), Vector::Constant(1, y));
      ExtendedReal phi = fitzpatrick(op, z, pol);
      double c = coupling(z);
      ExtendedReal g = phi - ExtendedReal(c);
      out << fmt(x) << "," << fmt(y) << "," << phi.str() << "," << fmt(c) << "," << g.str()
          << "\n";
    }
  }
}

std::string grid_dump_string(const OperatorGraph& op, const GridWindow& window, int resolution,
                             const TolerancePolicy& pol) {
  std::ostringstream ss;
  grid_dump(op, window, resolution, ss, pol);
  return ss.str();
}

void write_grid_csv(const GridFunction& f, std::ostream& out) {
  if (f.dims() == 1) {
    out << "x,value\n";
    for (std::size_t i = 0; i < f.axes[0].size(); ++i) {
      out << fmt(f.axes[0][i]) << "," << f.values[i].str() << "\n";
    }
    return;
  }
  out << "x,y,value\n";
  for (std::size_t i = 0; i < f.axes[0].size(); ++i) {
    for (std::size_t j = 0; j < f.axes[1].size(); ++j) {
      out << fmt(f.axes[0][i]) << "," << fmt(f.axes[1][j]) << "," << f.at(i, j).str() << "\n";
    }
  }
}

std::string grid_csv_string(const GridFunction& f) {
  std::ostringstream ss;
  write_grid_csv(f, ss);
  return ss.str();
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FileParseError("grid csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int cols;
  if (line == "x,value") {
    cols = 2;
  } else if (line == "x,y,value") {
    cols = 3;
  } else {
    throw FileParseError("grid csv: expected header 'x,value' or 'x,y,value'");
  }

  std::vector<double> xs, ys;
  std::vector<ExtendedReal> vals;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (static_cast<int>(toks.size()) != cols) {
      throw FileParseError("grid csv: row " + std::to_string(row) + " has " +
                           std::to_string(toks.size()) + " fields, expected " +
                           std::to_string(cols));
    }
    ExtendedReal x = parse_token(toks[0]);
    if (!x.is_finite()) throw FileParseError("grid csv: infinite coordinate");
    xs.push_back(x.value());
    if (cols == 3) {
      ExtendedReal y = parse_token(toks[1]);
      if (!y.is_finite()) throw FileParseError("grid csv: infinite coordinate");
      ys.push_back(y.value());
    }
    vals.push_back(parse_token(toks.back()));
  }
  if (cols == 2) {
    return GridFunction(std::move(xs), std::move(vals));
  }

  // rebuild the two axes from the row-major listing
  std::vector<double> ax = xs, ay = ys;
  std::sort(ax.begin(), ax.end());
  ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
  std::sort(ay.begin(), ay.end());
  ay.erase(std::unique(ay.begin(), ay.end()), ay.end());
  if (ax.size() * ay.size() != vals.size()) {
    throw FileParseError("grid csv: rows do not form a full rectangular grid");
  }
  std::vector<ExtendedReal> ordered(vals.size(), ExtendedReal(0.0));
  for (std::size_t k = 0; k < vals.size(); ++k) {
    auto ix = std::lower_bound(ax.begin(), ax.end(), xs[k]) - ax.begin();
    auto iy = std::lower_bound(ay.begin(), ay.end(), ys[k]) - ay.begin();
    ordered[static_cast<std::size_t>(ix) * ay.size() + static_cast<std::size_t>(iy)] = vals[k];
  }
  return GridFunction(std::move(ax), std::move(ay), std::move(ordered));
}

GridFunction load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileParseError("cannot open grid csv: " + path);
  return read_grid_csv(in);
}

void save_grid_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileParseError("cannot write grid csv: " + path);
  write_grid_csv(f, out);
}

}  // namespace fitztk
