#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractbem/attractor.hpp"

namespace fractbem {

// Word in the index tree; the empty word is the root index "0".
struct MultiIndex {
  std::vector<std::uint8_t> entries;  // 1-based map indices

  std::size_t length() const { return entries.size(); }
  bool is_root() const { return entries.empty(); }
  MultiIndex parent() const {
    MultiIndex p = *this;
    if (!p.entries.empty()) p.entries.pop_back();
    return p;
  }
  std::string str() const;
  bool operator==(const MultiIndex&) const = default;
  bool operator<(const MultiIndex& o) const { return entries < o.entries; }
};

// One cell Gamma_m of a decomposition, a similar copy of the attractor.
struct Cell {
  MultiIndex index;
  Similarity map;       // composed left-to-right: s_{m1} o ... o s_{ml}
  double ratio = 1.0;   // composed contraction ratio (left-to-right product)
  double diameter = 0.0;
  double measure = 0.0;
  Vec2 barycenter{0.0, 0.0};
  Vec2 ball_center{0.0, 0.0};
  double ball_radius = 0.0;
};

enum class MeshKind { Level, Diameter };

struct FractalMesh {
  AttractorModel attractor;
  std::vector<Cell> cells;  // sorted by index
  MeshKind kind = MeshKind::Diameter;
  double parameter = 0.0;  // level (as double) or diameter bound h

  std::size_t size() const { return cells.size(); }
  double measure_sum() const;
};

Cell make_cell(const AttractorModel& model, const MultiIndex& idx);
Cell child_cell(const AttractorModel& model, const Cell& parent, int m);  // m is 1-based

// All M^level indices.
FractalMesh generate_level_mesh(const AttractorModel& model, int level,
                                std::size_t cell_cap = 20000000);

// L_h: indices whose diameter first drops to <= h along the tree; h in (0, h0].
FractalMesh generate_diameter_mesh(const AttractorModel& model, double h,
                                   std::size_t cell_cap = 20000000);

// CSV export: index;diameter;measure;barycenter coordinates.
std::string mesh_to_csv(const FractalMesh& mesh);

}  // namespace fractbem
