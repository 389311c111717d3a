#include "fractalstiff/assembler.hpp"

#include <algorithm>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "fractalstiff/framelab.hpp"
#include "fractalstiff/gasketsolver.hpp"

namespace fractalstiff::assembler {

int StructureModel::index_of(int node_id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == node_id) return static_cast<int>(i);
  throw ArgumentError("unknown node id " + std::to_string(node_id));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> out;
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

int to_int(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE ||
      v < INT_MIN || v > INT_MAX)
    throw ParseError("expected integer, got '" + s + "'");
  return static_cast<int>(v);
}

double to_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError("expected number, got '" + s + "'");
  return v;
}

bool to_flag(const std::string& s) {
  const int v = to_int(s);
  if (v != 0 && v != 1) throw ParseError("support flag must be 0 or 1");
  return v == 1;
}

enum class Section { None, Nodes, Elements, MaterialS, Supports, Loads };

}  // namespace

StructureModel parse_structure(std::istream& in) {
  StructureModel model;
  Section section = Section::None;
  std::unordered_set<int> node_ids, element_ids;
  std::string raw;
  int lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;
    const auto fail = [lineno](const std::string& msg) -> ParseError {
      return ParseError("line " + std::to_string(lineno) + ": " + msg);
    };

    if (tok[0].front() == '[') {
      if (tok.size() != 1) throw fail("malformed section header");
      if (tok[0] == "[nodes]") section = Section::Nodes;
      else if (tok[0] == "[elements]") section = Section::Elements;
      else if (tok[0] == "[material]") section = Section::MaterialS;
      else if (tok[0] == "[supports]") section = Section::Supports;
      else if (tok[0] == "[loads]") section = Section::Loads;
      else throw fail("unknown section " + tok[0]);
      continue;
    }

    try {
      switch (section) {
        case Section::None:
          throw fail("data before any section header");
        case Section::Nodes: {
          if (tok.size() != 3) throw fail("expected: id x y");
          Node n{to_int(tok[0]), to_double(tok[1]), to_double(tok[2])};
          if (!node_ids.insert(n.id).second)
            throw fail("duplicate node id " + tok[0]);
          model.nodes.push_back(n);
          break;
        }
        case Section::Elements: {
          if (tok.size() != 4 && tok.size() != 5)
            throw fail("expected: id n1 n2 n3 [top]");
          Element e;
          e.id = to_int(tok[0]);
          e.node_ids = {to_int(tok[1]), to_int(tok[2]), to_int(tok[3])};
          if (tok.size() == 5) e.top_id = to_int(tok[4]);
          if (!element_ids.insert(e.id).second)
            throw fail("duplicate element id " + tok[0]);
          model.elements.push_back(e);
          break;
        }
        case Section::MaterialS: {
          if (tok.size() != 2) throw fail("expected: key value");
          if (tok[0] == "a1_axial") model.material.a1_axial = to_double(tok[1]);
          else if (tok[0] == "a1_bend") model.material.a1_bend = to_double(tok[1]);
          else throw fail("unknown material key '" + tok[0] + "'");
          break;
        }
        case Section::Supports: {
          if (tok.size() != 4) throw fail("expected: node ux uy rz");
          model.supports.push_back(
              {to_int(tok[0]), to_flag(tok[1]), to_flag(tok[2]), to_flag(tok[3])});
          break;
        }
        case Section::Loads: {
          if (tok.size() != 4) throw fail("expected: node fx fy mz");
          model.loads.push_back({to_int(tok[0]), to_double(tok[1]),
                                 to_double(tok[2]), to_double(tok[3])});
          break;
        }
      }
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw fail(msg);
    }
  }
  return model;
}

StructureModel parse_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open structure file: " + path);
  return parse_structure(in);
}

namespace {

std::array<std::array<double, 2>, 3> corner_coords(const StructureModel& model,
                                                   const Element& el) {
  const std::array<int, 3> idx = element_corner_indices(model, el);
  std::array<std::array<double, 2>, 3> pos;
  for (int i = 0; i < 3; ++i)
    pos[i] = {model.nodes[idx[i]].x, model.nodes[idx[i]].y};
  return pos;
}

gasketsolver::StiffnessParams mode_sum_params(double a_axial, double a_bend,
                                              double d) {
  if (!(d > 0)) throw ArgumentError("side length must be positive");
  if (a_axial < 0 || a_bend < 0)
    throw ArgumentError("mode amplitudes must be nonnegative");
  if (a_axial == 0 && a_bend == 0)
    throw ArgumentError("at least one mode amplitude must be positive");
  // Equilibrium completion is linear in the free coefficients, so the
  // mode-sum element is the gasket built from the summed parameters.
  const gasketsolver::StiffnessParams ax =
      gasketsolver::axial_mode().blocks.to_params(a_axial, d);
  const gasketsolver::StiffnessParams bd =
      gasketsolver::bending_mode().blocks.to_params(a_bend, d);
  return {ax.a1 + bd.a1, ax.a2 + bd.a2, ax.a3 + bd.a3,
          ax.a4 + bd.a4, ax.b1 + bd.b1, d};
}

double side_of(const std::array<std::array<double, 2>, 3>& pos) {
  double sum = 0;
  for (int i = 0; i < 3; ++i) {
    const auto& p = pos[i];
    const auto& q = pos[(i + 1) % 3];
    sum += std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  return sum / 3;
}

// Global-frame 9x9 of a triangle given its corner coordinates in role order
// (top, lower-left, lower-right); each corner frame points outward along its
// own median, so the canonical centered triangle reproduces the 90/210/330
// frames exactly.
Mat placed_from_geometry(const std::array<std::array<double, 2>, 3>& pos,
                         double a_axial, double a_bend) {
  const double d = side_of(pos);
  const Mat k_local =
      gasketsolver::build_gasket_stiffness(mode_sum_params(a_axial, a_bend, d));
  const double cx = (pos[0][0] + pos[1][0] + pos[2][0]) / 3;
  const double cy = (pos[0][1] + pos[1][1] + pos[2][1]) / 3;
  Mat r = Mat::Zero(9, 9);
  for (int i = 0; i < 3; ++i) {
    const double phi = std::atan2(pos[i][1] - cy, pos[i][0] - cx);
    r.block(3 * i, 3 * i, 3, 3) = framelab::dof_rotation(phi);
  }
  return r.transpose() * k_local * r;
}

}  // namespace

Mat element_total_stiffness(const Material& mat, double d) {
  const Mat k_local = gasketsolver::build_gasket_stiffness(
      mode_sum_params(mat.a1_axial, mat.a1_bend, d));
  const Mat r = framelab::corner_frames_from_global();
  return r.transpose() * k_local * r;
}

std::array<int, 3> element_corner_indices(const StructureModel& model,
                                          const Element& el) {
  int top = el.top_id;
  if (top < 0) top = *std::min_element(el.node_ids.begin(), el.node_ids.end());
  if (std::count(el.node_ids.begin(), el.node_ids.end(), top) != 1)
    throw ArgumentError("element " + std::to_string(el.id) +
                        ": top vertex must be exactly one of its nodes");
  std::array<int, 2> rest{};
  int nrest = 0;
  for (int id : el.node_ids)
    if (id != top) rest[nrest++] = id;
  if (rest[0] > rest[1]) std::swap(rest[0], rest[1]);

  const Node& t = model.nodes[model.index_of(top)];
  const Node& p = model.nodes[model.index_of(rest[0])];
  const Node& q = model.nodes[model.index_of(rest[1])];
  const double cross =
      (p.x - t.x) * (q.y - t.y) - (q.x - t.x) * (p.y - t.y);
  if (cross == 0)
    throw GeometryError("element " + std::to_string(el.id) + " is degenerate");
  const int ll = cross > 0 ? rest[0] : rest[1];
  const int lr = cross > 0 ? rest[1] : rest[0];
  return {model.index_of(top), model.index_of(ll), model.index_of(lr)};
}

double element_side(const StructureModel& model, const Element& el) {
  return side_of(corner_coords(model, el));
}

Mat placed_element_stiffness(const StructureModel& model, const Element& el) {
  return placed_from_geometry(corner_coords(model, el),
                              model.material.a1_axial, model.material.a1_bend);
}

void validate_model(const StructureModel& model) {
  std::unordered_set<int> node_ids;
  for (const Node& n : model.nodes)
    if (!node_ids.insert(n.id).second)
      throw ArgumentError("duplicate node id " + std::to_string(n.id));

  if (model.material.a1_axial < 0 || model.material.a1_bend < 0)
    throw ArgumentError("mode amplitudes must be nonnegative");
  if (model.material.a1_axial == 0 && model.material.a1_bend == 0)
    throw ArgumentError("at least one mode amplitude must be positive");

  std::unordered_set<int> element_ids;
  for (const Element& el : model.elements) {
    if (!element_ids.insert(el.id).second)
      throw ArgumentError("duplicate element id " + std::to_string(el.id));
    if (el.node_ids[0] == el.node_ids[1] || el.node_ids[0] == el.node_ids[2] ||
        el.node_ids[1] == el.node_ids[2])
      throw ArgumentError("element " + std::to_string(el.id) +
                          " repeats a node");
    const auto pos = corner_coords(model, el);  // checks refs and orientation
    double lo = 0, hi = 0, mean = 0;
    for (int i = 0; i < 3; ++i) {
      const double len = std::hypot(pos[(i + 1) % 3][0] - pos[i][0],
                                    pos[(i + 1) % 3][1] - pos[i][1]);
      lo = i == 0 ? len : std::min(lo, len);
      hi = std::max(hi, len);
      mean += len / 3;
    }
    if (!(mean > 0) || (hi - lo) / mean > 1e-9)
      throw GeometryError("element " + std::to_string(el.id) +
                          " is not equilateral");
  }

  for (const Support& s : model.supports) model.index_of(s.node_id);
  for (const PointLoad& l : model.loads) model.index_of(l.node_id);
}

Mat assemble_global(const StructureModel& model) {
  const int n = 3 * static_cast<int>(model.nodes.size());
  Mat k = Mat::Zero(n, n);
  for (const Element& el : model.elements) {
    const std::array<int, 3> idx = element_corner_indices(model, el);
    const Mat ke = placed_element_stiffness(model, el);
    for (int rn = 0; rn < 3; ++rn)
      for (int cn = 0; cn < 3; ++cn)
        k.block(3 * idx[rn], 3 * idx[cn], 3, 3) += ke.block(3 * rn, 3 * cn, 3, 3);
  }
  return k;
}

SolutionField solve_displacements(const StructureModel& model) {
  validate_model(model);
  const int nn = static_cast<int>(model.nodes.size());
  const int n = 3 * nn;
  const Mat k = assemble_global(model);

  Vec f = Vec::Zero(n);
  for (const PointLoad& l : model.loads) {
    const int i = 3 * model.index_of(l.node_id);
    f[i] += l.fx;
    f[i + 1] += l.fy;
    f[i + 2] += l.mz;
  }

  std::vector<bool> fixed(n, false);
  for (const Support& s : model.supports) {
    const int i = 3 * model.index_of(s.node_id);
    if (s.ux) fixed[i] = true;
    if (s.uy) fixed[i + 1] = true;
    if (s.rz) fixed[i + 2] = true;
  }

  std::vector<int> free_dofs;
  for (int i = 0; i < n; ++i)
    if (!fixed[i]) free_dofs.push_back(i);
  const int m = static_cast<int>(free_dofs.size());

  Vec u = Vec::Zero(n);
  if (m > 0) {
    Mat kff(m, m);
    Vec ff(m);
    for (int i = 0; i < m; ++i) {
      ff[i] = f[free_dofs[i]];
      for (int j = 0; j < m; ++j) kff(i, j) = k(free_dofs[i], free_dofs[j]);
    }
    kff = ((kff + kff.transpose()) / 2).eval();
    const Mat uf = solve_sym(kff, ff);
    for (int i = 0; i < m; ++i) u[free_dofs[i]] = uf(i, 0);
  }

  const Vec residual = k * u - f;
  SolutionField out;
  out.nodal.resize(nn);
  out.reactions.assign(nn, {0, 0, 0});
  for (int i = 0; i < nn; ++i) {
    out.nodal[i] = {u[3 * i], u[3 * i + 1], u[3 * i + 2]};
    for (int c = 0; c < 3; ++c)
      if (fixed[3 * i + c]) out.reactions[i][c] = residual[3 * i + c];
  }
  out.energy = 0.5 * u.dot(k * u);
  out.per_element_energy.reserve(model.elements.size());
  for (const Element& el : model.elements) {
    const std::array<int, 3> idx = element_corner_indices(model, el);
    Vec ue(9);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) ue[3 * i + c] = u[3 * idx[i] + c];
    const Mat ke = placed_element_stiffness(model, el);
    out.per_element_energy.push_back(0.5 * ue.dot(ke * ue));
  }
  return out;
}

namespace {

struct RefineJob {
  int level;  // level of the mid-side vertices this job recovers
  std::array<std::array<double, 2>, 3> pos;  // corners, role order
  std::array<std::array<double, 3>, 3> disp;  // global-frame corner triples
  double a_axial;
  double a_bend;
};

std::array<double, 2> midpoint(const std::array<double, 2>& a,
                               const std::array<double, 2>& b) {
  return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
}

}  // namespace

std::vector<InteriorVertex> refine_interior(const StructureModel& model,
                                            const SolutionField& field,
                                            int element_index, int levels) {
  if (levels < 1) throw ArgumentError("refinement depth must be at least 1");
  if (element_index < 0 ||
      element_index >= static_cast<int>(model.elements.size()))
    throw ArgumentError("element index out of range");
  if (field.nodal.size() != model.nodes.size())
    throw ArgumentError("solution field does not match the model");

  // Under side halving each mechanism's amplitude grows by the inverse of
  // its own condensation factor, measured at the converged modes.
  const double inv_ax = 1.0 / gasketsolver::axial_mode().scaling;
  const double inv_bd = 1.0 / gasketsolver::bending_mode().scaling;

  const Element& el = model.elements[element_index];
  const std::array<int, 3> idx = element_corner_indices(model, el);
  RefineJob root;
  root.level = 1;
  root.pos = corner_coords(model, el);
  for (int i = 0; i < 3; ++i) root.disp[i] = field.nodal[idx[i]];
  root.a_axial = model.material.a1_axial;
  root.a_bend = model.material.a1_bend;

  // Local node numbering inside one job: 0..2 the corners (top, ll, lr),
  // 3 = mid(top, lr), 4 = mid(top, ll), 5 = mid(ll, lr). Children in role
  // order map onto these as rows below.
  static constexpr int child_nodes[3][3] = {{0, 4, 3}, {4, 1, 5}, {3, 5, 2}};

  std::vector<RefineJob> queue{root};
  std::vector<InteriorVertex> out;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const RefineJob job = queue[qi];
    const double ca = job.a_axial * inv_ax;
    const double cb = job.a_bend * inv_bd;

    std::array<std::array<double, 2>, 6> p;
    for (int i = 0; i < 3; ++i) p[i] = job.pos[i];
    p[3] = midpoint(job.pos[0], job.pos[2]);
    p[4] = midpoint(job.pos[0], job.pos[1]);
    p[5] = midpoint(job.pos[1], job.pos[2]);

    Mat kk = Mat::Zero(18, 18);
    for (const auto& nodes : child_nodes) {
      const Mat ke =
          placed_from_geometry({p[nodes[0]], p[nodes[1]], p[nodes[2]]}, ca, cb);
      for (int rn = 0; rn < 3; ++rn)
        for (int cn = 0; cn < 3; ++cn)
          kk.block(3 * nodes[rn], 3 * nodes[cn], 3, 3) +=
              ke.block(3 * rn, 3 * cn, 3, 3);
    }

    Vec uc(9);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) uc[3 * i + c] = job.disp[i][c];
    const Mat m = kk.block(0, 9, 9, 9);
    const Mat nmat =
        ((kk.block(9, 9, 9, 9) + kk.block(9, 9, 9, 9).transpose()) / 2).eval();
    const Mat um = solve_sym_pseudo(nmat, -(m.transpose() * uc));

    std::array<std::array<double, 3>, 3> mid_disp;
    for (int i = 0; i < 3; ++i) {
      mid_disp[i] = {um(3 * i, 0), um(3 * i + 1, 0), um(3 * i + 2, 0)};
      out.push_back({job.level, p[3 + i][0], p[3 + i][1], mid_disp[i][0],
                     mid_disp[i][1], mid_disp[i][2]});
    }

    if (job.level < levels) {
      for (const auto& nodes : child_nodes) {
        RefineJob child;
        child.level = job.level + 1;
        for (int i = 0; i < 3; ++i) {
          child.pos[i] = p[nodes[i]];
          child.disp[i] =
              nodes[i] < 3 ? job.disp[nodes[i]] : mid_disp[nodes[i] - 3];
        }
        child.a_axial = ca;
        child.a_bend = cb;
        queue.push_back(child);
      }
    }
  }
  return out;
}

}  // namespace fractalstiff::assembler
