#pragma once

// JSON forms of quivers, matrices, modules, certificates and patterns.
// Scalars are strings: "p/q" over Q, "r mod p" over F_p.

#include <json.hpp>

#include "dorbit/construct.hpp"
#include "dorbit/lie.hpp"

namespace dorbit {

using json = nlohmann::ordered_json;

inline json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
  return {{"vertices", q.vertex_count()}, {"arrows", std::move(arrows)}};
}

inline json to_json(const DimensionVector& d) { return d.values(); }

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline json to_json(const Representation& x) {
  json maps = json::object();
  for (std::size_t a = 0; a < x.quiver().arrow_count(); ++a) maps[x.quiver().arrow(a).id] = to_json(x.map(a));
  return {{"field", x.field().to_string()}, {"dim", to_json(x.dim())}, {"maps", std::move(maps)}};
}

inline json to_json(const DModule& x) {
  return {{"quiver", to_json(x.algebra().base())},
          {"delta_dim", to_json(x.delta_dim())},
          {"representation", to_json(x.rep())}};
}

inline json to_json(const Certificate& c) {
  return {{"delta_dim", to_json(c.delta_dim)},   {"end_dim", c.end_dim_D},
          {"end_dim_A", c.end_dim_A},            {"sum_squares", c.sum_squares},
          {"ext1_exact_sequence", c.ext1_exact_sequence}, {"ext1_resolution", c.ext1_resolution},
          {"rigid", c.rigid}};
}

inline json to_json(const BlockPattern& p) {
  json cells = json::array();
  for (auto [h, j] : p.cells) cells.push_back({h, j});
  return {{"which", std::string(1, pattern_letter(p.which))},
          {"t", p.t},
          {"block_sizes", p.block_sizes},
          {"diagonal_included", p.diagonal_included},
          {"dimension", p.dimension()},
          {"cells", std::move(cells)}};
}

inline json to_json(const ExtensionCase& c) {
  return {{"tag", std::string(1, c.tag)}, {"u", c.u}, {"gamma", c.gamma}, {"gamma_out", c.gamma_out}};
}

}  // namespace dorbit
