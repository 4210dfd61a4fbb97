#include "fractbem/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fractbem {

std::string MultiIndex::str() const {
  if (entries.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(static_cast<int>(entries[i]));
  }
  return s;
}

double FractalMesh::measure_sum() const {
  double s = 0.0;
  for (const auto& c : cells) s += c.measure;
  return s;
}

namespace {

Cell finish_cell(const AttractorModel& model, MultiIndex idx, const Similarity& map,
                 double ratio) {
  Cell c;
  c.index = std::move(idx);
  c.map = map;
  c.ratio = ratio;
  c.diameter = ratio * model.h0;
  c.measure = std::pow(ratio, model.ifs.dim) * model.measure;
  c.barycenter = map(model.barycenter);
  c.ball_center = map(model.ball_center);
  c.ball_radius = map.rho * model.ball_radius;
  return c;
}

}  // namespace

Cell make_cell(const AttractorModel& model, const MultiIndex& idx) {
  Similarity map = identity_map();
  double ratio = 1.0;
  for (std::uint8_t m : idx.entries) {
    if (m < 1 || m > model.ifs.map_count())
      throw std::invalid_argument("make_cell: index entry out of range");
    const Similarity& s = model.ifs.maps[m - 1];
    map = map.compose(s);
    ratio *= s.rho;  // left-to-right, bit-reproducible
  }
  return finish_cell(model, idx, map, ratio);
}

Cell child_cell(const AttractorModel& model, const Cell& parent, int m) {
  if (m < 1 || m > model.ifs.map_count())
    throw std::invalid_argument("child_cell: map index out of range");
  MultiIndex idx = parent.index;
  idx.entries.push_back(static_cast<std::uint8_t>(m));
  return finish_cell(model, idx, parent.map.compose(model.ifs.maps[m - 1]),
                     parent.ratio * model.ifs.maps[m - 1].rho);
}

FractalMesh generate_level_mesh(const AttractorModel& model, int level, std::size_t cell_cap) {
  if (level < 0) throw std::invalid_argument("generate_level_mesh: level must be >= 0");
  const int M = model.ifs.map_count();
  double count = std::pow(static_cast<double>(M), level);
  if (count > static_cast<double>(cell_cap))
    throw std::runtime_error("generate_level_mesh: cell cap exceeded");

  FractalMesh mesh;
  mesh.attractor = model;
  mesh.kind = MeshKind::Level;
  mesh.parameter = level;
  mesh.cells.reserve(static_cast<std::size_t>(count));

  // depth-first enumeration yields lexicographic index order
  Cell root = make_cell(model, MultiIndex{});
  auto descend = [&](auto&& self, const Cell& cell, int depth) -> void {
    if (depth == level) {
      mesh.cells.push_back(cell);
      return;
    }
    for (int m = 1; m <= M; ++m) self(self, child_cell(model, cell, m), depth + 1);
  };
  descend(descend, root, 0);
  return mesh;
}

FractalMesh generate_diameter_mesh(const AttractorModel& model, double h, std::size_t cell_cap) {
  if (!(h > 0.0) || h > model.h0)
    throw std::invalid_argument("generate_diameter_mesh: h must lie in (0, h0]");

  FractalMesh mesh;
  mesh.attractor = model;
  mesh.kind = MeshKind::Diameter;
  mesh.parameter = h;

  const int M = model.ifs.map_count();
  Cell root = make_cell(model, MultiIndex{});
  // emit a cell the first time its diameter drops to <= h (root only for h = h0)
  auto descend = [&](auto&& self, const Cell& cell) -> void {
    if (cell.diameter <= h) {
      if (mesh.cells.size() >= cell_cap)
        throw std::runtime_error("generate_diameter_mesh: cell cap exceeded");
      mesh.cells.push_back(cell);
      return;
    }
    for (int m = 1; m <= M; ++m) self(self, child_cell(model, cell, m));
  };
  descend(descend, root);
  return mesh;
}

std::string mesh_to_csv(const FractalMesh& mesh) {
  std::ostringstream os;
  os.precision(17);
  const int n = mesh.attractor.ifs.dim;
  os << "index;diameter;measure;barycenter\n";
  for (const auto& c : mesh.cells) {
    os << c.index.str() << ';' << c.diameter << ';' << c.measure << ';' << c.barycenter[0];
    if (n == 2) os << ' ' << c.barycenter[1];
    os << '\n';
  }
  return os.str();
}

}  // namespace fractbem
