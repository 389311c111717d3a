// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fractalstiff/assembler.hpp"
#include "fractalstiff/beamlab.hpp"
#include "fractalstiff/framelab.hpp"
#include "fractalstiff/gasketsolver.hpp"
#include "fractalstiff/matrixcore.hpp"

using namespace fractalstiff;
namespace gs = fractalstiff::gasketsolver;
namespace fl = fractalstiff::framelab;
namespace as = fractalstiff::assembler;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const char* fmt, double got, double want, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, got, want, tol);
  notes.emplace_back(buf);
}

void report(int number, const char* label, bool passed, double ms) {
  std::printf("%s criterion %d: %s (%.1f ms)\n", passed ? "PASS" : "FAIL",
              number, label, ms);
  if (!passed) {
    ++failures;
    for (const std::string& n : notes) std::printf("       %s\n", n.c_str());
  }
  notes.clear();
}

bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

// criterion 1: beam fixed point, scaling 1/8, classical recovery

bool beam_criterion() {
  bool ok = true;
  for (double L : {1.0, 2.0}) {
    const beamlab::SelfSimilarityReport rep = beamlab::solve_beam_self_similarity(L);
    if (!close_rel(rep.c_over_a, L * L / 3, 1e-12)) {
      ok = false;
      note("c/a = %.17g, want %.17g (tol %g)", rep.c_over_a, L * L / 3, 1e-12);
    }
    if (!close_rel(rep.scaling, 0.125, 1e-12)) {
      ok = false;
      note("scaling = %.17g, want %.17g (tol %g)", rep.scaling, 0.125, 1e-12);
    }
  }
  for (const auto& [ei, len] :
       std::vector<std::pair<double, double>>{{1, 1}, {2.5, 1.7}, {0.3, 3}}) {
    const Mat want = beamlab::classical_beam_stiffness(ei, len);
    const Mat got = beamlab::recovered_beam_stiffness(ei, len);
    const double diff = max_abs(got - want) / max_abs(want);
    if (diff > 1e-12) {
      ok = false;
      note("classical recovery rel diff = %.3g, want %.3g (tol %g)", diff, 0.0,
           1e-12);
    }
  }
  return ok;
}

// criterion 2: frame blocks against the closed forms, ranks 3/5, [S]K = 0

Mat block_a_closed(const fl::FrameSpec& s) {
  const double ea = s.E * s.A_s, ei = s.E * s.I, d = s.d;
  const double r3 = std::sqrt(3.0);
  Mat a(3, 3);
  a << ea * 3 / (2 * d) + ei * 6 / (d * d * d), 0, 0,
       0, ea / (2 * d) + ei * 18 / (d * d * d), -ei * 6 * r3 / (d * d),
       0, -ei * 6 * r3 / (d * d), ei * 8 / d;
  return a;
}

Mat block_b_closed(const fl::FrameSpec& s) {
  const double ea = s.E * s.A_s, ei = s.E * s.I, d = s.d;
  const double r3 = std::sqrt(3.0);
  Mat b(3, 3);
  b << ea * 3 / (4 * d) - ei * 3 / (d * d * d),
       ea * r3 / (4 * d) + ei * 3 * r3 / (d * d * d), -ei * 3 / (d * d),
       -ea * r3 / (4 * d) - ei * 3 * r3 / (d * d * d),
       -ea / (4 * d) + ei * 9 / (d * d * d), -ei * 3 * r3 / (d * d),
       ei * 3 / (d * d), -ei * 3 * r3 / (d * d), ei * 2 / d;
  return b;
}

bool frame_criterion() {
  bool ok = true;
  for (const fl::FrameSpec spec :
       {fl::FrameSpec{1, 1, 1, 2}, fl::FrameSpec{2.3, 0.4, 0.09, 1.6}}) {
    const fl::BlockPair blocks = fl::frame_blocks(spec);
    const double scale =
        std::max(max_abs(block_a_closed(spec)), max_abs(block_b_closed(spec)));
    if (max_abs(blocks.A - block_a_closed(spec)) > 1e-12 * scale ||
        max_abs(blocks.B - block_b_closed(spec)) > 1e-12 * scale) {
      ok = false;
      note("frame blocks deviate by %.3g rel, want %.3g (tol %g)",
           std::max(max_abs(blocks.A - block_a_closed(spec)),
                    max_abs(blocks.B - block_b_closed(spec))) /
               scale,
           0.0, 1e-12);
    }
    const fl::ModeRankReport ranks = fl::mode_rank_report(spec);
    if (ranks.rank_axial != 3 || ranks.rank_bend != 5) {
      ok = false;
      note("ranks = %g/%g, want %g (3 and 5)", ranks.rank_axial,
           ranks.rank_bend, 0.0);
    }
    const double eq = fl::check_equilibrium(fl::assemble_frame(spec), spec.d);
    if (eq > 1e-12) {
      ok = false;
      note("equilibrium residual = %.3g, want %.3g (tol %g)", eq, 0.0, 1e-12);
    }
  }
  return ok;
}

// criterion 3: restart search reproduces both printed mode tables

bool modes_criterion(const gs::SearchResult& search) {
  bool ok = true;
  int physical = 0;
  const gs::ModeSolution* axial = nullptr;
  const gs::ModeSolution* bending = nullptr;
  for (const gs::ModeSolution& s : search.solutions) {
    if (!s.physical) continue;
    ++physical;
    if (s.mode == gs::Mode::Axial) axial = &s;
    if (s.mode == gs::Mode::Bending) bending = &s;
  }
  if (physical != 2 || !axial || !bending) {
    note("physical solutions = %g, want %g (tol %g)", physical, 2, 0);
    return false;
  }

  Mat alpha_ax(3, 3), beta_ax(3, 3);
  alpha_ax << 1, 0, 0, 0, 0.333333, 0, 0, 0, 0;
  beta_ax << 0.5, 0.2886725, 0, -0.2886725, -0.166666, 0, 0, 0, 0;
  const double da = std::max(max_abs(axial->blocks.alpha() - alpha_ax),
                             max_abs(axial->blocks.beta() - beta_ax));
  if (da > 1e-5) {
    ok = false;
    note("axial table deviation = %.3g, want %.3g (tol %g)", da, 0.0, 1e-5);
  }
  if (std::abs(axial->scaling - 0.5) > 1e-9) {
    ok = false;
    note("axial scaling = %.12g, want %.12g (tol %g)", axial->scaling, 0.5,
         1e-9);
  }

  Mat alpha_bd(3, 3), beta_bd(3, 3);
  alpha_bd << 1, 0, 0, 0, 1.45714, -0.593846, 0, -0.593846, 0.376471;
  beta_bd << -0.5, 0.866025, -0.285714, -0.866025, -0.0428571, -0.0989743,
      0.285714, -0.0989743, 0.0403361;
  const double db = std::max(max_abs(bending->blocks.alpha() - alpha_bd),
                             max_abs(bending->blocks.beta() - beta_bd));
  if (db > 1e-4) {
    ok = false;
    note("bending table deviation = %.3g, want %.3g (tol %g)", db, 0.0, 1e-4);
  }
  if (std::abs(bending->scaling - 0.15) > 1e-4) {
    ok = false;
    note("bending scaling = %.12g, want %.12g (tol %g)", bending->scaling,
         0.15, 1e-4);
  }
  return ok;
}

// criterion 4: axial translational sub-blocks against the closed forms

bool remark_criterion() {
  const double r3 = std::sqrt(3.0);
  const Mat alpha = gs::axial_mode().blocks.alpha();
  const Mat beta = gs::axial_mode().blocks.beta();
  Mat alpha_o(2, 2), beta_o(2, 2);
  alpha_o << 1, 0, 0, 1.0 / 3.0;
  beta_o << 0.5, r3 / 6, -r3 / 6, -1.0 / 6.0;
  const double diff =
      std::max(max_abs(alpha.block(0, 0, 2, 2) - alpha_o),
               max_abs(beta.block(0, 0, 2, 2) - beta_o));
  if (diff > 1e-5) {
    note("sub-block deviation = %.3g, want %.3g (tol %g)", diff, 0.0, 1e-5);
    return false;
  }
  return true;
}

// criterion 5: two condensations follow the squared scaling law

bool scaling_criterion() {
  bool ok = true;
  for (const gs::ModeSolution* mode :
       {&gs::bending_mode(), &gs::axial_mode()}) {
    const gs::CondensationResult once =
        gs::assemble_and_condense(mode->blocks.to_params(1.0, 1.0));
    const Mat& kh = once.K_hat;
    const gs::StiffnessParams next{kh(0, 0), kh(1, 1), kh(2, 2),
                                   kh(1, 2), kh(0, 3), 2.0};
    const double twice = gs::assemble_and_condense(next).K_hat(0, 0);
    const double measured = kh(0, 0);
    if (std::abs(twice - gs::scaling_law(measured, 4.0)) > 1e-6) {
      ok = false;
      note("double condensation = %.12g, want %.12g (tol %g)", twice,
           gs::scaling_law(measured, 4.0), 1e-6);
    }
  }
  const gs::CondensationResult ax =
      gs::assemble_and_condense(gs::axial_mode().blocks.to_params(1.0, 1.0));
  const gs::StiffnessParams next{ax.K_hat(0, 0), ax.K_hat(1, 1),
                                 ax.K_hat(2, 2), ax.K_hat(1, 2),
                                 ax.K_hat(0, 3), 2.0};
  const double twice = gs::assemble_and_condense(next).K_hat(0, 0);
  if (std::abs(twice - 0.25) > 1e-6) {
    ok = false;
    note("axial double condensation = %.12g, want %.12g (tol %g)", twice, 0.25,
         1e-6);
  }
  return ok;
}

// criterion 6: condensed vs direct solve of the same two-level system,
// interior recovered through refine_interior

as::StructureModel figure_six(double a_axial, double a_bend) {
  as::StructureModel m;
  const auto pos = fl::corner_positions(2.0);
  const auto mid = [&pos](int i, int j) -> std::array<double, 2> {
    return {(pos[i][0] + pos[j][0]) / 2, (pos[i][1] + pos[j][1]) / 2};
  };
  const auto ip = mid(0, 2), jp = mid(0, 1), kp = mid(1, 2);
  m.nodes = {{1, pos[0][0], pos[0][1]}, {2, pos[1][0], pos[1][1]},
             {3, pos[2][0], pos[2][1]}, {4, ip[0], ip[1]},
             {5, jp[0], jp[1]},         {6, kp[0], kp[1]}};
  m.elements = {{1, {1, 5, 4}, 1}, {2, {5, 2, 6}, 5}, {3, {4, 6, 3}, 4}};
  m.material = {a_axial, a_bend};
  return m;
}

bool condensation_criterion() {
  bool ok = true;
  const double pa = 0.8, pb = 0.45;  // parent-level amplitudes
  as::StructureModel child =
      figure_six(pa / gs::axial_mode().scaling, pb / gs::bending_mode().scaling);
  child.supports = {{2, true, true, false}, {3, false, true, false}};

  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  child.loads = {{1, u(rng), u(rng), u(rng) / 10},
                 {2, 0, 0, u(rng) / 10},
                 {3, u(rng), 0, u(rng) / 10}};
  const as::SolutionField full = as::solve_displacements(child);

  // exact Schur elimination of the nine interior DOFs
  const Mat k18 = as::assemble_global(child);
  const Mat l = k18.block(0, 0, 9, 9);
  const Mat m = k18.block(0, 9, 9, 9);
  Mat n = k18.block(9, 9, 9, 9);
  n = (0.5 * (n + n.transpose())).eval();
  const Mat khat = l - m * n.fullPivLu().solve(m.transpose());

  Vec fload = Vec::Zero(9);
  for (const as::PointLoad& ld : child.loads) {
    const int i = 3 * child.index_of(ld.node_id);
    if (i < 9) {
      fload[i] += ld.fx;
      fload[i + 1] += ld.fy;
      fload[i + 2] += ld.mz;
    }
  }
  const std::array<int, 6> free_dofs{0, 1, 2, 5, 6, 8};
  Mat kr(6, 6);
  Vec fr(6);
  for (int i = 0; i < 6; ++i) {
    fr[i] = fload[free_dofs[i]];
    for (int j = 0; j < 6; ++j) kr(i, j) = khat(free_dofs[i], free_dofs[j]);
  }
  const Vec ur = kr.fullPivLu().solve(fr);
  Vec u9 = Vec::Zero(9);
  for (int i = 0; i < 6; ++i) u9[free_dofs[i]] = ur[i];

  double umax = 0;
  for (int i = 0; i < 9; ++i)
    umax = std::max(umax, std::abs(full.nodal[i / 3][i % 3]));
  for (int i = 0; i < 9; ++i) {
    if (std::abs(u9[i] - full.nodal[i / 3][i % 3]) > 1e-9 * umax) {
      ok = false;
      note("corner dof mismatch = %.3g, want %.3g (tol %g rel)",
           std::abs(u9[i] - full.nodal[i / 3][i % 3]) / umax, 0.0, 1e-9);
      break;
    }
  }

  as::StructureModel parent;
  const auto pos = fl::corner_positions(2.0);
  parent.nodes = {{1, pos[0][0], pos[0][1]},
                  {2, pos[1][0], pos[1][1]},
                  {3, pos[2][0], pos[2][1]}};
  parent.elements = {{1, {1, 2, 3}, 1}};
  parent.material = {pa, pb};
  as::SolutionField corner_field;
  corner_field.nodal = {full.nodal[0], full.nodal[1], full.nodal[2]};
  corner_field.reactions.assign(3, {0, 0, 0});
  corner_field.energy = full.energy;

  const std::vector<as::InteriorVertex> verts =
      as::refine_interior(parent, corner_field, 0, 1);
  double imax = 0;
  for (int i = 3; i < 6; ++i)
    for (int c = 0; c < 3; ++c)
      imax = std::max(imax, std::abs(full.nodal[i][c]));
  for (int i = 0; i < 3; ++i) {
    const double d =
        std::max({std::abs(verts[i].ux - full.nodal[3 + i][0]),
                  std::abs(verts[i].uy - full.nodal[3 + i][1]),
                  std::abs(verts[i].rz - full.nodal[3 + i][2])});
    if (d > 1e-9 * imax) {
      ok = false;
      note("interior recovery mismatch = %.3g, want %.3g (tol %g rel)",
           d / imax, 0.0, 1e-9);
      break;
    }
  }
  return ok;
}

// criterion 7: randomized equilibrium, block-pattern, PSD, and null-vector
// suites, at least 100 admissible draws each

bool pattern_ok(const Mat& k, double tol) {
  const Mat a = k.block(0, 0, 3, 3);
  const Mat b = k.block(0, 3, 3, 3);
  const double scale = std::max(max_abs(k), 1e-300);
  if (std::abs(a(0, 1)) > tol * scale || std::abs(a(0, 2)) > tol * scale ||
      std::abs(a(1, 2) - a(2, 1)) > tol * scale)
    return false;
  if (std::abs(b(1, 0) + b(0, 1)) > tol * scale ||
      std::abs(b(2, 0) + b(0, 2)) > tol * scale ||
      std::abs(b(2, 1) - b(1, 2)) > tol * scale)
    return false;
  Mat tiled(9, 9);
  tiled.block(0, 0, 3, 3) = a;
  tiled.block(0, 3, 3, 3) = b;
  tiled.block(0, 6, 3, 3) = b.transpose();
  tiled.block(3, 0, 3, 3) = b.transpose();
  tiled.block(3, 3, 3, 3) = a;
  tiled.block(3, 6, 3, 3) = b;
  tiled.block(6, 0, 3, 3) = b;
  tiled.block(6, 3, 3, 3) = b.transpose();
  tiled.block(6, 6, 3, 3) = a;
  return max_abs(k - tiled) <= tol * scale;
}

bool property_criterion() {
  bool ok = true;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto draw = [&] {
    gs::StiffnessParams p{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0};
    if (std::abs(p.a1) < 0.1) p.a1 = 1.0;
    p.d = 0.3 + std::abs(u(rng));
    return p;
  };

  int equilibrium_done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const gs::StiffnessParams p = draw();
    const Mat k = gs::build_gasket_stiffness(p);
    if (fl::check_equilibrium(k, p.d) > 1e-10 || !pattern_ok(k, 1e-10)) {
      ok = false;
      note("built-matrix invariant broke at draw %g (want %g, tol %g)", trial,
           0.0, 1e-10);
      break;
    }
    ++equilibrium_done;
  }

  int condensed_done = 0, attempts = 0;
  while (condensed_done < 100 && attempts < 1000) {
    ++attempts;
    const gs::StiffnessParams p = draw();
    gs::CondensationResult res;
    try {
      res = gs::assemble_and_condense(p);
    } catch (const SingularMatrix&) {
      continue;
    }
    if (fl::check_equilibrium(res.K_hat, 2 * p.d) > 1e-10 ||
        !pattern_ok(res.K_hat, 1e-10)) {
      ok = false;
      note("condensed-matrix invariant broke at draw %g (want %g, tol %g)",
           condensed_done, 0.0, 1e-10);
      break;
    }
    ++condensed_done;
  }
  if (condensed_done < 100) {
    ok = false;
    note("condensed draws completed = %g, want %g (tol %g)", condensed_done,
         100, 0);
  }

  std::uniform_real_distribution<double> amp(0.1, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double aax = amp(rng), abd = amp(rng), d = amp(rng);
    const gs::StiffnessParams pax = gs::axial_mode().blocks.to_params(aax, d);
    const gs::StiffnessParams pbd = gs::bending_mode().blocks.to_params(abd, d);
    const gs::StiffnessParams sum{pax.a1 + pbd.a1, pax.a2 + pbd.a2,
                                  pax.a3 + pbd.a3, pax.a4 + pbd.a4,
                                  pax.b1 + pbd.b1, d};
    const Mat k = gs::build_gasket_stiffness(sum);
    if (min_sym_eigenvalue(k) < -1e-8 * max_abs(k)) {
      ok = false;
      note("PSD broke at draw %g: min eig %g (tol %g rel)", trial,
           min_sym_eigenvalue(k), 1e-8);
      break;
    }

    const Mat kbd = gs::build_gasket_stiffness(pbd);
    Vec ext = Vec::Zero(9);
    ext(0) = ext(3) = ext(6) = 1;
    if (max_abs(kbd * ext) > 1e-10 * max_abs(kbd)) {
      ok = false;
      note("homogeneous extension residual %g at draw %g (tol %g rel)",
           max_abs(kbd * ext) / max_abs(kbd), trial, 1e-10);
      break;
    }
    const Mat kax = gs::build_gasket_stiffness(pax);
    Vec drill = Vec::Zero(9);
    drill(2) = u(rng);
    drill(5) = u(rng);
    drill(8) = u(rng);
    if (max_abs(kax * drill) > 1e-10 * max_abs(kax)) {
      ok = false;
      note("drilling residual %g at draw %g (tol %g rel)",
           max_abs(kax * drill) / max_abs(kax), trial, 1e-10);
      break;
    }
  }
  return ok && equilibrium_done == 100;
}

}  // namespace

int main() {
  {
    Timer t;
    const bool ok = beam_criterion();
    const double ms = t.ms();
    report(1, "beam fixed point, 1/8 scaling, classical recovery",
           ok && ms < 1000, ms);
  }
  {
    Timer t;
    const bool ok = frame_criterion();
    const double ms = t.ms();
    report(2, "frame blocks, mode ranks 3/5, equilibrium", ok && ms < 1000,
           ms);
  }
  {
    Timer t;
    const gs::SearchResult search = gs::random_restart_search(1, 200);
    const bool ok = modes_criterion(search);
    const double ms = t.ms();
    report(3, "restart search reproduces both gasket mode tables",
           ok && ms < 30000, ms);
  }
  {
    Timer t;
    const bool ok = remark_criterion();
    report(4, "axial translational sub-blocks match the closed forms", ok,
           t.ms());
  }
  {
    Timer t;
    const bool ok = scaling_criterion();
    report(5, "double condensation follows the squared scaling law", ok,
           t.ms());
  }
  {
    Timer t;
    const bool ok = condensation_criterion();
    report(6, "condensed and direct two-level solves agree with recovery", ok,
           t.ms());
  }
  {
    Timer t;
    const bool ok = property_criterion();
    report(7, "equilibrium, pattern, PSD, and null-space property suites", ok,
           t.ms());
  }
  std::printf("acceptance: %d/7 criteria passed\n", 7 - failures);
  return failures;
}
