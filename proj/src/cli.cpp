#include "fractalstiff/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fractalstiff/assembler.hpp"
#include "fractalstiff/beamlab.hpp"
#include "fractalstiff/framelab.hpp"
#include "fractalstiff/gasketsolver.hpp"
#include "fractalstiff/matrixcore.hpp"

namespace fractalstiff::cli {

namespace {

using json = nlohmann::ordered_json;
namespace gs = gasketsolver;
namespace as = assembler;

// Machine output carries 12 significant digits; the rounding goes through
// a decimal string so the JSON path and the text path agree exactly.
double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  if (r == 0.0) r = 0.0;
  return r;
}

std::string f12(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string f6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void emit_json(std::ostream& out, const json& doc) {
  out << doc.dump(2) << "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write file: " + path);
  f << content;
  if (!f) throw ParseError("write failed: " + path);
}

struct BeamArgs {
  double length = 0;
  double ei = 1.0;
  bool as_json = false;
};

int cmd_derive_beam(const BeamArgs& a, std::ostream& out) {
  const beamlab::SelfSimilarityReport rep =
      beamlab::solve_beam_self_similarity(a.length);
  const Mat k = beamlab::recovered_beam_stiffness(a.ei, a.length);
  if (a.as_json) {
    json doc;
    doc["command"] = "derive-beam";
    doc["length"] = round12(a.length);
    doc["ei"] = round12(a.ei);
    doc["iterations"] = rep.iterations;
    doc["c_over_a"] = round12(rep.c_over_a);
    doc["scaling"] = round12(rep.scaling);
    doc["classical_matrix"] = mat_json(k);
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "beam self-similarity\n";
    out << "L = " << f12(a.length) << "\n";
    out << "EI = " << f12(a.ei) << "\n";
    out << "iterations = " << rep.iterations << "\n";
    out << "c/a = " << f12(rep.c_over_a) << "\n";
    out << "scaling = " << f12(rep.scaling) << "\n";
    out << "recovered classical stiffness:\n" << format_matrix(k);
  }
  out << "OK derive-beam\n";
  return 0;
}

struct FrameArgs {
  double e = 0, area = 0, inertia = 0, side = 0;
  bool split = false;
  bool as_json = false;
};

int cmd_derive_frame(const FrameArgs& a, std::ostream& out) {
  const framelab::FrameSpec spec{a.e, a.area, a.inertia, a.side};
  const Mat k = framelab::assemble_frame(spec);
  const framelab::ModeRankReport ranks = framelab::mode_rank_report(spec);
  const double eq = framelab::check_equilibrium(k, a.side);
  if (a.as_json) {
    json doc;
    doc["command"] = "derive-frame";
    doc["e"] = round12(a.e);
    doc["area"] = round12(a.area);
    doc["inertia"] = round12(a.inertia);
    doc["side"] = round12(a.side);
    doc["split"] = a.split;
    doc["equilibrium_residual"] = round12(eq);
    doc["rank_axial"] = ranks.rank_axial;
    doc["rank_bend"] = ranks.rank_bend;
    doc["homogeneous_extension_energy"] =
        round12(ranks.homogeneous_extension_energy);
    if (a.split) {
      const framelab::FrameSplit parts = framelab::assemble_frame_split(spec);
      doc["k_axial"] = mat_json(parts.axial);
      doc["k_bend"] = mat_json(parts.bend);
    } else {
      doc["k"] = mat_json(k);
    }
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "frame corner stiffness\n";
    out << "E = " << f12(a.e) << "\n";
    out << "A = " << f12(a.area) << "\n";
    out << "I = " << f12(a.inertia) << "\n";
    out << "d = " << f12(a.side) << "\n";
    out << "equilibrium residual = " << f12(eq) << "\n";
    out << "rank(K_axial) = " << ranks.rank_axial << "\n";
    out << "rank(K_bend) = " << ranks.rank_bend << "\n";
    out << "homogeneous extension energy = "
        << f12(ranks.homogeneous_extension_energy) << "\n";
    if (a.split) {
      const framelab::FrameSplit parts = framelab::assemble_frame_split(spec);
      out << "K_axial (corner frames):\n" << format_matrix(parts.axial);
      out << "K_bend (corner frames):\n" << format_matrix(parts.bend);
    } else {
      out << "K (corner frames):\n" << format_matrix(k);
    }
  }
  out << "OK derive-frame\n";
  return 0;
}

struct ModesArgs {
  std::uint64_t seed = 1;
  int restarts = 200;
  bool constrained = false;
  double tol = 1e-12;
  bool as_json = false;
};

void solution_text(std::ostream& out, const gs::ModeSolution& s) {
  out << "  scaling = " << f12(s.scaling) << "\n";
  out << "  rank = " << s.rank << "\n";
  out << "  iterations = " << s.iterations << "\n";
  out << "  residual = " << f12(s.residual_norm) << "\n";
  out << "  min eigenvalue = " << f12(s.min_eigenvalue) << "\n";
  out << "  physical = " << (s.physical ? "yes" : "no") << "\n";
  out << "alpha:\n" << format_matrix(s.blocks.alpha());
  out << "beta:\n" << format_matrix(s.blocks.beta());
}

json solution_json(const gs::ModeSolution& s) {
  json doc;
  doc["classification"] = gs::mode_name(s.mode);
  doc["scaling"] = round12(s.scaling);
  doc["rank"] = s.rank;
  doc["iterations"] = s.iterations;
  doc["residual"] = round12(s.residual_norm);
  doc["min_eigenvalue"] = round12(s.min_eigenvalue);
  doc["physical"] = s.physical;
  doc["alpha"] = mat_json(s.blocks.alpha());
  doc["beta"] = mat_json(s.blocks.beta());
  return doc;
}

int cmd_solve_modes(const ModesArgs& a, std::ostream& out) {
  gs::NewtonOptions opts;
  opts.tol = a.tol;
  const gs::SearchResult res = gs::random_restart_search(a.seed, a.restarts, opts);
  int physical = 0;
  for (const auto& s : res.solutions) physical += s.physical ? 1 : 0;

  const gs::NondimBlocks start{1.0, 1.0, 1.0, -0.5};
  gs::ModeSolution con{};
  bool uncon_converged = false;
  int uncon_iterations = 0;
  if (a.constrained) {
    con = gs::constrained_bending_solve(start, opts);
    try {
      uncon_iterations = gs::newton_solve(start, opts).iterations;
      uncon_converged = true;
    } catch (const FixedPointFailure&) {
      uncon_iterations = opts.max_iter;
    } catch (const SingularMatrix&) {
      uncon_iterations = opts.max_iter;
    } catch (const SingularJacobian&) {
      uncon_iterations = opts.max_iter;
    }
  }

  if (a.as_json) {
    json doc;
    doc["command"] = "solve-modes";
    doc["seed"] = a.seed;
    doc["restarts"] = a.restarts;
    doc["tol"] = round12(a.tol);
    doc["failures"] = res.failures;
    doc["physical_solutions"] = physical;
    json sols = json::array();
    for (const auto& s : res.solutions) sols.push_back(solution_json(s));
    doc["solutions"] = sols;
    if (a.constrained) {
      json c;
      c["start"] = {round12(start.alpha2), round12(start.alpha3),
                    round12(start.alpha4), round12(start.beta1)};
      c["iterations"] = con.iterations;
      c["scaling"] = round12(con.scaling);
      c["residual"] = round12(con.residual_norm);
      c["unconstrained_outcome"] = uncon_converged ? "converged" : "failed";
      c["unconstrained_iterations"] = uncon_iterations;
      doc["constrained_bending"] = c;
    }
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "gasket self-similarity modes\n";
    out << "seed = " << a.seed << "\n";
    out << "restarts = " << a.restarts << "\n";
    out << "tol = " << f12(a.tol) << "\n";
    out << "failed starts = " << res.failures << "\n";
    out << "solutions = " << res.solutions.size() << " (physical "
        << physical << ")\n";
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      const auto& s = res.solutions[i];
      out << "\nsolution " << i + 1 << ": " << gs::mode_name(s.mode) << "\n";
      solution_text(out, s);
    }
    out << "\nsummary (classification, scaling, rank, iterations, physical):\n";
    for (const auto& s : res.solutions) {
      out << gs::mode_name(s.mode) << " " << f6(s.scaling) << " " << s.rank
          << " " << s.iterations << " " << (s.physical ? "yes" : "no") << "\n";
    }
    if (a.constrained) {
      out << "\nconstrained bending solve, start (1, 1, 1, -0.5), beta1 frozen:\n";
      out << "  iterations = " << con.iterations << "\n";
      out << "  scaling = " << f12(con.scaling) << "\n";
      out << "  residual = " << f12(con.residual_norm) << "\n";
      if (uncon_converged)
        out << "unconstrained from the same start: iterations = "
            << uncon_iterations << "\n";
      else
        out << "unconstrained from the same start: no convergence, counted as "
            << uncon_iterations << " iterations\n";
    }
  }
  out << "OK solve-modes\n";
  return 0;
}

struct CondenseArgs {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, b1 = 0;
  double side = 1.0;
  bool as_json = false;
};

int cmd_condense(const CondenseArgs& a, std::ostream& out) {
  const gs::StiffnessParams p{a.a1, a.a2, a.a3, a.a4, a.b1, a.side};
  const Mat k = gs::build_gasket_stiffness(p);
  const gs::CondensationResult res = gs::assemble_and_condense(p);
  const double ratio = res.K_hat(0, 0) / a.a1;
  if (a.as_json) {
    json doc;
    doc["command"] = "condense";
    doc["a1"] = round12(a.a1);
    doc["a2"] = round12(a.a2);
    doc["a3"] = round12(a.a3);
    doc["a4"] = round12(a.a4);
    doc["b1"] = round12(a.b1);
    doc["side"] = round12(a.side);
    doc["a1_hat_over_a1"] = round12(ratio);
    doc["k"] = mat_json(k);
    doc["k_hat"] = mat_json(res.K_hat);
    doc["recovery"] = mat_json(res.recovery);
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "gasket condensation\n";
    out << "a1 = " << f12(a.a1) << "\n";
    out << "a2 = " << f12(a.a2) << "\n";
    out << "a3 = " << f12(a.a3) << "\n";
    out << "a4 = " << f12(a.a4) << "\n";
    out << "b1 = " << f12(a.b1) << "\n";
    out << "d = " << f12(a.side) << "\n";
    out << "a1_hat / a1 = " << f12(ratio) << "\n";
    out << "K (side d, corner frames):\n" << format_matrix(k);
    out << "K_hat (side 2d, corner frames):\n" << format_matrix(res.K_hat);
    out << "recovery (global frame):\n" << format_matrix(res.recovery);
  }
  out << "OK condense\n";
  return 0;
}

struct ScaleArgs {
  double kappa = 0, rho = 0;
  bool as_json = false;
};

int cmd_scale(const ScaleArgs& a, std::ostream& out) {
  const double k = gs::scaling_law(a.kappa, a.rho);
  if (a.as_json) {
    json doc;
    doc["command"] = "scale";
    doc["kappa2"] = round12(a.kappa);
    doc["rho"] = round12(a.rho);
    doc["kappa"] = round12(k);
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "scaling law\n";
    out << "kappa2 = " << f12(a.kappa) << "\n";
    out << "rho = " << f12(a.rho) << "\n";
    out << "kappa(rho) = " << f12(k) << "\n";
  }
  out << "OK scale\n";
  return 0;
}

struct AssembleArgs {
  std::string in_path;
  std::string out_path;
  bool as_json = false;
};

int cmd_assemble(const AssembleArgs& a, std::ostream& out) {
  const as::StructureModel model = as::parse_structure_file(a.in_path);
  as::validate_model(model);
  const Mat k = as::assemble_global(model);
  write_file(a.out_path, format_matrix(k));
  if (a.as_json) {
    json doc;
    doc["command"] = "assemble";
    doc["input"] = a.in_path;
    doc["nodes"] = model.nodes.size();
    doc["elements"] = model.elements.size();
    doc["dofs"] = 3 * model.nodes.size();
    doc["output"] = a.out_path;
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "assembled global stiffness\n";
    out << "input = " << a.in_path << "\n";
    out << "nodes = " << model.nodes.size() << "\n";
    out << "elements = " << model.elements.size() << "\n";
    out << "dofs = " << 3 * model.nodes.size() << "\n";
    out << "output = " << a.out_path << "\n";
  }
  out << "OK assemble\n";
  return 0;
}

struct SolveArgs {
  std::string in_path;
  std::string out_path;
  int refine = 0;
  bool as_json = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const as::StructureModel model = as::parse_structure_file(a.in_path);
  const as::SolutionField field = as::solve_displacements(model);

  std::vector<std::vector<as::InteriorVertex>> interior;
  if (a.refine > 0) {
    interior.reserve(model.elements.size());
    for (std::size_t e = 0; e < model.elements.size(); ++e)
      interior.push_back(
          as::refine_interior(model, field, static_cast<int>(e), a.refine));
  }

  std::string rep;
  rep += "structure solution report\n";
  rep += "input = " + a.in_path + "\n";
  rep += "nodes = " + std::to_string(model.nodes.size()) + "\n";
  rep += "elements = " + std::to_string(model.elements.size()) + "\n";
  rep += "total energy = " + f12(field.energy) + "\n";
  rep += "\nnodal displacements (node, ux, uy, rz):\n";
  for (std::size_t i = 0; i < model.nodes.size(); ++i) {
    const auto& u = field.nodal[i];
    rep += std::to_string(model.nodes[i].id) + " " + f12(u[0]) + " " +
           f12(u[1]) + " " + f12(u[2]) + "\n";
  }
  rep += "\nreactions (node, fx, fy, mz):\n";
  for (std::size_t i = 0; i < model.nodes.size(); ++i) {
    bool supported = false;
    for (const auto& s : model.supports)
      if (s.node_id == model.nodes[i].id && (s.ux || s.uy || s.rz))
        supported = true;
    if (!supported) continue;
    const auto& r = field.reactions[i];
    rep += std::to_string(model.nodes[i].id) + " " + f12(r[0]) + " " +
           f12(r[1]) + " " + f12(r[2]) + "\n";
  }
  rep += "\nelement energies (element, energy):\n";
  for (std::size_t e = 0; e < model.elements.size(); ++e)
    rep += std::to_string(model.elements[e].id) + " " +
           f12(field.per_element_energy[e]) + "\n";
  if (a.refine > 0) {
    for (std::size_t e = 0; e < model.elements.size(); ++e) {
      for (int level = 1; level <= a.refine; ++level) {
        rep += "\ninterior vertices, element " +
               std::to_string(model.elements[e].id) + ", level " +
               std::to_string(level) + " (x, y, ux, uy, rz):\n";
        for (const auto& v : interior[e]) {
          if (v.level != level) continue;
          rep += f12(v.x) + " " + f12(v.y) + " " + f12(v.ux) + " " +
                 f12(v.uy) + " " + f12(v.rz) + "\n";
        }
      }
    }
  }
  write_file(a.out_path, rep);

  if (a.as_json) {
    json doc;
    doc["command"] = "solve";
    doc["input"] = a.in_path;
    doc["nodes"] = model.nodes.size();
    doc["elements"] = model.elements.size();
    doc["energy"] = round12(field.energy);
    json nodal = json::array();
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
      json row;
      row["node"] = model.nodes[i].id;
      row["ux"] = round12(field.nodal[i][0]);
      row["uy"] = round12(field.nodal[i][1]);
      row["rz"] = round12(field.nodal[i][2]);
      nodal.push_back(row);
    }
    doc["nodal"] = nodal;
    json reactions = json::array();
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
      bool supported = false;
      for (const auto& s : model.supports)
        if (s.node_id == model.nodes[i].id && (s.ux || s.uy || s.rz))
          supported = true;
      if (!supported) continue;
      json row;
      row["node"] = model.nodes[i].id;
      row["fx"] = round12(field.reactions[i][0]);
      row["fy"] = round12(field.reactions[i][1]);
      row["mz"] = round12(field.reactions[i][2]);
      reactions.push_back(row);
    }
    doc["reactions"] = reactions;
    json energies = json::array();
    for (std::size_t e = 0; e < model.elements.size(); ++e) {
      json row;
      row["element"] = model.elements[e].id;
      row["energy"] = round12(field.per_element_energy[e]);
      energies.push_back(row);
    }
    doc["element_energies"] = energies;
    if (a.refine > 0) {
      doc["refine_levels"] = a.refine;
      json verts = json::array();
      for (std::size_t e = 0; e < model.elements.size(); ++e) {
        for (const auto& v : interior[e]) {
          json row;
          row["element"] = model.elements[e].id;
          row["level"] = v.level;
          row["x"] = round12(v.x);
          row["y"] = round12(v.y);
          row["ux"] = round12(v.ux);
          row["uy"] = round12(v.uy);
          row["rz"] = round12(v.rz);
          verts.push_back(row);
        }
      }
      doc["interior"] = verts;
    }
    doc["report"] = a.out_path;
    doc["status"] = "ok";
    emit_json(out, doc);
  } else {
    out << "structure solve\n";
    out << "input = " << a.in_path << "\n";
    out << "nodes = " << model.nodes.size() << "\n";
    out << "elements = " << model.elements.size() << "\n";
    out << "total energy = " << f12(field.energy) << "\n";
    if (a.refine > 0) {
      std::size_t count = 0;
      for (const auto& iv : interior) count += iv.size();
      out << "refine levels = " << a.refine << "\n";
      out << "interior vertices = " << count << "\n";
    }
    out << "report = " << a.out_path << "\n";
  }
  out << "OK solve\n";
  return 0;
}

int fail(std::ostream& out, std::ostream& err, const std::string& msg, int code) {
  err << "error: " << msg << "\n";
  out << "FAIL " << msg << "\n";
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"self-similar stiffness toolkit"};
  app.name("fractalstiff");
  app.require_subcommand(1);

  BeamArgs beam;
  CLI::App* sc_beam =
      app.add_subcommand("derive-beam", "beam self-similarity fixed point");
  sc_beam->add_option("--length", beam.length, "beam span L")
      ->required()
      ->check(CLI::PositiveNumber);
  sc_beam->add_option("--ei", beam.ei, "bending stiffness EI")
      ->check(CLI::PositiveNumber);
  sc_beam->add_flag("--json", beam.as_json, "machine-readable output");

  FrameArgs frame;
  CLI::App* sc_frame =
      app.add_subcommand("derive-frame", "triangular frame corner stiffness");
  sc_frame->add_option("--e", frame.e, "modulus E")
      ->required()
      ->check(CLI::PositiveNumber);
  sc_frame->add_option("--area", frame.area, "cross-section area")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sc_frame->add_option("--inertia", frame.inertia, "moment of inertia")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sc_frame->add_option("--side", frame.side, "triangle side d")
      ->required()
      ->check(CLI::PositiveNumber);
  sc_frame->add_flag("--split", frame.split, "print axial/bending parts");
  sc_frame->add_flag("--json", frame.as_json, "machine-readable output");

  ModesArgs modes;
  CLI::App* sc_modes =
      app.add_subcommand("solve-modes", "gasket self-similarity modes");
  sc_modes->add_option("--seed", modes.seed, "restart RNG seed")
      ->envname("FRACTALSTIFF_SEED");
  sc_modes->add_option("--restarts", modes.restarts, "number of random starts")
      ->check(CLI::PositiveNumber);
  sc_modes->add_flag("--constrained-bending", modes.constrained,
                     "also run the beta1-frozen bending solve");
  sc_modes->add_option("--tol", modes.tol, "Newton residual tolerance")
      ->check(CLI::PositiveNumber);
  sc_modes->add_flag("--json", modes.as_json, "machine-readable output");

  CondenseArgs cond;
  CLI::App* sc_cond =
      app.add_subcommand("condense", "assemble three copies and condense");
  sc_cond->add_option("--a1", cond.a1, "axial diagonal coefficient")->required();
  sc_cond->add_option("--a2", cond.a2, "tangential diagonal coefficient")
      ->required();
  sc_cond->add_option("--a3", cond.a3, "drilling diagonal coefficient")
      ->required();
  sc_cond->add_option("--a4", cond.a4, "tangential/drilling coupling")
      ->required();
  sc_cond->add_option("--b1", cond.b1, "leading off-diagonal coefficient")
      ->required();
  sc_cond->add_option("--side", cond.side, "triangle side d")
      ->check(CLI::PositiveNumber);
  sc_cond->add_flag("--json", cond.as_json, "machine-readable output");

  ScaleArgs scale;
  CLI::App* sc_scale =
      app.add_subcommand("scale", "scaling factor at an arbitrary size ratio");
  sc_scale->add_option("--kappa", scale.kappa, "scaling at doubling")->required();
  sc_scale->add_option("--rho", scale.rho, "size ratio")->required();
  sc_scale->add_flag("--json", scale.as_json, "machine-readable output");

  AssembleArgs asm_args;
  CLI::App* sc_asm =
      app.add_subcommand("assemble", "write the global stiffness of a structure");
  sc_asm->add_option("--in", asm_args.in_path, "structure file")->required();
  sc_asm->add_option("--out", asm_args.out_path, "output matrix file")
      ->required();
  sc_asm->add_flag("--json", asm_args.as_json, "machine-readable output");

  SolveArgs solve;
  CLI::App* sc_solve =
      app.add_subcommand("solve", "solve a structure for displacements");
  sc_solve->add_option("--in", solve.in_path, "structure file")->required();
  sc_solve->add_option("--refine", solve.refine, "interior recovery depth")
      ->check(CLI::PositiveNumber);
  sc_solve->add_option("--out", solve.out_path, "report file")->required();
  sc_solve->add_flag("--json", solve.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(out, err, e.what(), 2);
  }

  try {
    if (*sc_beam) return cmd_derive_beam(beam, out);
    if (*sc_frame) return cmd_derive_frame(frame, out);
    if (*sc_modes) return cmd_solve_modes(modes, out);
    if (*sc_cond) return cmd_condense(cond, out);
    if (*sc_scale) return cmd_scale(scale, out);
    if (*sc_asm) return cmd_assemble(asm_args, out);
    if (*sc_solve) return cmd_solve(solve, out);
  } catch (const ArgumentError& e) {
    return fail(out, err, e.what(), 2);
  } catch (const GeometryError& e) {
    return fail(out, err, e.what(), 2);
  } catch (const ParseError& e) {
    return fail(out, err, e.what(), 2);
  } catch (const SingularMatrix& e) {
    return fail(out, err, e.what(), 1);
  } catch (const FixedPointFailure& e) {
    return fail(out, err, e.what(), 1);
  } catch (const SingularJacobian& e) {
    return fail(out, err, e.what(), 1);
  } catch (const EigenFailure& e) {
    return fail(out, err, e.what(), 1);
  }
  return fail(out, err, "no subcommand selected", 2);
}

}  // namespace fractalstiff::cli
