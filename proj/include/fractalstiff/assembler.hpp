#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "fractalstiff/matrixcore.hpp"

namespace fractalstiff::assembler {

struct Node {
  int id;
  double x;
  double y;
};

// Nodes are stored by file id; "top" picks the corner carrying the apex
// role for the element's local frames (-1 = lexicographically smallest id).
// The other two corners take the lower-left / lower-right roles in
// counter-clockwise order.
struct Element {
  int id;
  std::array<int, 3> node_ids;
  int top_id = -1;
};

struct Material {
  double a1_axial = 0;  // amplitude of the rank-3 stretching mechanism
  double a1_bend = 0;   // amplitude of the rank-5 bending mechanism
};

struct Support {
  int node_id;
  bool ux, uy, rz;
};

struct PointLoad {
  int node_id;
  double fx, fy, mz;
};

struct StructureModel {
  std::vector<Node> nodes;
  std::vector<Element> elements;
  Material material;
  std::vector<Support> supports;
  std::vector<PointLoad> loads;

  int index_of(int node_id) const;  // ArgumentError on unknown id
};

struct SolutionField {
  std::vector<std::array<double, 3>> nodal;      // (ux, uy, theta) per node
  std::vector<std::array<double, 3>> reactions;  // nonzero only at supports
  double energy;
  std::vector<double> per_element_energy;
};

struct InteriorVertex {
  int level;  // 1-based refinement depth
  double x, y;
  double ux, uy, rz;
};

// Line-oriented sections: [nodes] id x y, [elements] id n1 n2 n3 [top],
// [material] key value, [supports] node ux uy rz (0/1), [loads] node fx fy mz.
// '#' starts a comment. Throws ParseError on malformed input.
StructureModel parse_structure(std::istream& in);
StructureModel parse_structure_file(const std::string& path);

// Equilateral check (relative side spread <= 1e-9), node references, and at
// least one positive mode amplitude. GeometryError / ArgumentError.
void validate_model(const StructureModel& model);

// Mode-sum element stiffness for the canonical upward triangle of side d,
// in the global frame.
Mat element_total_stiffness(const Material& mat, double d);

// Corner node indices in role order (top, lower-left, lower-right): top from
// the element's flag (default smallest id), the rest by counter-clockwise
// orientation. Side length as the mean of the three edges.
std::array<int, 3> element_corner_indices(const StructureModel& model,
                                          const Element& el);
double element_side(const StructureModel& model, const Element& el);

// Element stiffness at its actual position/orientation, global frame, rows
// in role order; corner frames follow the element's own centroid.
Mat placed_element_stiffness(const StructureModel& model, const Element& el);

// Global stiffness over 3 DOFs per node, no supports applied.
Mat assemble_global(const StructureModel& model);

// Constrained solve (fixed DOFs pinned to zero), reactions and stored
// energy reported. SingularMatrix when supports leave rigid motion free.
SolutionField solve_displacements(const StructureModel& model);

// Recursive mid-side displacement recovery inside one element: per level the
// shared mid-side DOFs of the three half-scale children are condensed back
// out of the solved corner data, then recursion descends top / lower-left /
// lower-right with each mode amplitude rescaled by its own halving factor.
std::vector<InteriorVertex> refine_interior(const StructureModel& model,
                                            const SolutionField& field,
                                            int element_index, int levels);

}  // namespace fractalstiff::assembler
