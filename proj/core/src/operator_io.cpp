#include "fitztk/operator_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fitztk {

namespace {

using nlohmann::json;

Vector vector_from_json(const json& j, const std::string& path, Eigen::Index n) {
  if (!j.is_array()) throw FileParseError(path + ": expected a number array");
  if (n >= 0 && static_cast<Eigen::Index>(j.size()) != n) {
    throw FileParseError(path + ": expected length " + std::to_string(n));
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw FileParseError(path + "[" + std::to_string(i) + "]: expected a number");
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

PairedPoint paired_from_json(const json& j, const std::string& path, Eigen::Index n) {
  if (!j.is_object() || !j.contains("x") || !j.contains("xstar")) {
    throw FileParseError(path + ": expected {\"x\": [...], \"xstar\": [...]}");
  }
  try {
    return PairedPoint(vector_from_json(j["x"], path + ".x", n),
                       vector_from_json(j["xstar"], path + ".xstar", n));
  } catch (const Error& e) {
    throw FileParseError(path + ": " + e.what());
  }
}

json paired_to_json(const PairedPoint& z) {
  json j;
  j["x"] = std::vector<double>(z.x.data(), z.x.data() + z.x.size());
  j["xstar"] = std::vector<double>(z.xstar.data(), z.xstar.data() + z.xstar.size());
  return j;
}

OperatorGraph parse_polygonal(const json& j, Eigen::Index n) {
  if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty()) {
    throw FileParseError("pieces: expected a nonempty array");
  }
  std::vector<GraphPiece> pieces;
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const json& pj = j["pieces"][i];
    std::string path = "pieces[" + std::to_string(i) + "]";
    if (!pj.is_object() || !pj.contains("type") || !pj["type"].is_string()) {
      throw FileParseError(path + ".type: expected a string");
    }
    std::string type = pj["type"].get<std::string>();
    try {
      if (type == "point") {
        pieces.push_back(GraphPiece::point(paired_from_json(pj.at("z"), path + ".z", n)));
      } else if (type == "segment") {
        pieces.push_back(GraphPiece::segment(paired_from_json(pj.at("a"), path + ".a", n),
                                             paired_from_json(pj.at("b"), path + ".b", n)));
      } else if (type == "ray") {
        pieces.push_back(GraphPiece::ray(paired_from_json(pj.at("base"), path + ".base", n),
                                         paired_from_json(pj.at("dir"), path + ".dir", n)));
      } else if (type == "line") {
        pieces.push_back(GraphPiece::line(paired_from_json(pj.at("base"), path + ".base", n),
                                          paired_from_json(pj.at("dir"), path + ".dir", n)));
      } else {
        throw FileParseError(path + ".type: unknown piece type '" + type + "'");
      }
    } catch (const json::out_of_range&) {
      throw FileParseError(path + ": missing a required field for type '" + type + "'");
    } catch (const InvariantError& e) {
      throw FileParseError(path + ": " + e.what());
    }
  }
  return PolygonalOperator(n, std::move(pieces));
}

OperatorGraph parse_linear(const json& j, Eigen::Index n, const TolerancePolicy& pol) {
  if (!j.contains("A") || !j["A"].is_array() || static_cast<Eigen::Index>(j["A"].size()) != n) {
    throw FileParseError("A: expected " + std::to_string(n) + " matrix rows");
  }
  Matrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    Vector row = vector_from_json(j["A"][static_cast<std::size_t>(r)],
                                  "A[" + std::to_string(r) + "]", n);
    a.row(r) = row.transpose();
  }
  Vector b = Vector::Zero(n);
  if (j.contains("b")) b = vector_from_json(j["b"], "b", n);
  try {
    return LinearMonotoneOperator(a, b, pol);
  } catch (const NotMonotoneError& e) {
    throw FileParseError(std::string("A: ") + e.what() +
                         " (min eigenvalue " + std::to_string(e.min_eigenvalue()) + ")");
  }
}

}  // namespace

OperatorGraph parse_operator(const std::string& json_text, const TolerancePolicy& pol) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FileParseError(std::string("operator spec: ") + e.what());
  }
  if (!j.is_object()) throw FileParseError("operator spec: expected a JSON object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1) {
    throw FileParseError("schema_version: expected the integer 1");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw FileParseError("kind: expected one of \"polygonal\", \"linear\", \"cubic1d\"");
  }
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
      j["dimension"].get<int>() < 1) {
    throw FileParseError("dimension: expected a positive integer");
  }
  Eigen::Index n = j["dimension"].get<int>();
  std::string kind = j["kind"].get<std::string>();
  if (kind == "polygonal") return parse_polygonal(j, n);
  if (kind == "linear") return parse_linear(j, n, pol);
  if (kind == "cubic1d") {
    if (n != 1) throw FileParseError("dimension: cubic1d requires dimension 1");
    return CubicOperator{};
  }
  throw FileParseError("kind: unknown operator kind '" + kind + "'");
}

OperatorGraph load_operator(const std::string& path, const TolerancePolicy& pol) {
  std::ifstream in(path);
  if (!in) throw FileParseError("cannot open operator file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator(ss.str(), pol);
}

std::string serialize_operator(const OperatorGraph& op) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = operator_kind_name(op);
  j["dimension"] = static_cast<int>(operator_dim(op));
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    json pieces = json::array();
    for (const GraphPiece& p : poly->pieces) {
      json pj;
      pj["type"] = piece_kind_name(p.kind());
      switch (p.kind()) {
        case PieceKind::Point:
          pj["z"] = paired_to_json(p.base());
          break;
        case PieceKind::Segment:
          pj["a"] = paired_to_json(p.base());
          pj["b"] = paired_to_json(p.second());
          break;
        case PieceKind::Ray:
        case PieceKind::Line:
          pj["base"] = paired_to_json(p.base());
          pj["dir"] = paired_to_json(p.direction());
          break;
      }
      pieces.push_back(pj);
    }
    j["pieces"] = pieces;
  } else if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < lin->dim(); ++r) {
      Vector row = lin->a().row(r).transpose();
      rows.push_back(std::vector<double>(row.data(), row.data() + row.size()));
    }
    j["A"] = rows;
    j["b"] = std::vector<double>(lin->b().data(), lin->b().data() + lin->b().size());
  }
  return j.dump(2);
}

void save_operator(const OperatorGraph& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileParseError("cannot write operator file: " + path);
  out << serialize_operator(op) << "\n";
}

PairedPoint parse_paired_point(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) {
    throw FileParseError("paired point: expected \"x1,..,xn;s1,..,sn\"");
  }
  auto parse_list = [](const std::string& part) {
    std::vector<double> out;
    std::stringstream ss(part);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw FileParseError("paired point: bad number '" + tok + "'");
      }
    }
    if (out.empty()) throw FileParseError("paired point: empty coordinate list");
    return out;
  };
  std::vector<double> xs = parse_list(text.substr(0, semi));
  std::vector<double> ss = parse_list(text.substr(semi + 1));
  if (xs.size() != ss.size()) {
    throw FileParseError("paired point: x and xstar must have the same length");
  }
  Vector x(xs.size()), s(ss.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = xs[i];
    s[static_cast<Eigen::Index>(i)] = ss[i];
  }
  return PairedPoint(x, s);
}

}  // namespace fitztk
