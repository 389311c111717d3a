#pragma once

#include <cstdint>
#include <vector>

#include "fractalstiff/framelab.hpp"
#include "fractalstiff/matrixcore.hpp"

namespace fractalstiff::gasketsolver {

// The five free coefficients of a symmetry/equilibrium-admissible 9x9 gasket
// stiffness, plus the side length. a1 normalizes everything and must be
// nonzero; the remaining block entries are determined by equilibrium.
struct StiffnessParams {
  double a1;  // force/length
  double a2;  // force/length
  double a3;  // force*length
  double a4;  // force
  double b1;  // force/length
  double d;   // length, > 0
};

// Non-dimensional unknowns of the self-similarity fixed point (alpha1 == 1
// implicit). beta2..beta6 are the equilibrium-completed derived entries.
struct NondimBlocks {
  double alpha2;
  double alpha3;
  double alpha4;
  double beta1;

  double beta2() const;
  double beta3() const;
  double beta4() const;
  double beta5() const;
  double beta6() const;

  Mat alpha() const;  // 3x3 [[1,0,0],[0,a2,a4],[0,a4,a3]]
  Mat beta() const;   // 3x3 with the skew/symmetric sign pattern

  StiffnessParams to_params(double a1, double d) const;
};

NondimBlocks nondim_from_params(const StiffnessParams& p);

enum class Mode { Axial, Bending, Unclassified };
const char* mode_name(Mode m);

struct ModeSolution {
  NondimBlocks blocks;
  double scaling;  // leading-coefficient ratio under side doubling
  Mode mode;
  int rank;                // of the reconstructed 9x9 at a1=1, d=1
  double min_eigenvalue;   // of the same matrix
  int iterations;
  bool physical;           // min_eigenvalue >= -1e-8 * max|K|
  double residual_norm;    // fixed-point residual at blocks, inf-norm
};

// Dimensional blocks with b2..b6 completed from equilibrium; the direct
// route and the non-dimensional one agree identically.
framelab::BlockPair complete_params(const StiffnessParams& p);

// 9x9 stiffness in the corner node frames; satisfies S * K = 0 at side d
// by construction.
Mat build_gasket_stiffness(const StiffnessParams& p);

// Passive rotation of one nodal DOF triple about z by phi (radians).
Mat rotation_matrix(double phi);

struct CondensationResult {
  // Corner stiffness of the doubled triangle, back in corner node frames.
  Mat K_hat;
  // Maps retained corner DOFs to the eliminated mid-side DOFs; both sides
  // in the global frame of the assembly.
  Mat recovery;
};

// Three congruent copies of the side-d gasket placed on the corners of a
// side-2d triangle, mid-side nodes shared pairwise and condensed out.
// Throws SingularMatrix when the interior block vanishes or the singular
// interior system is inconsistent; exact consistent rank loss (the axial
// mode's decoupled drilling DOFs) is tolerated.
CondensationResult assemble_and_condense(const StiffnessParams& p);

// (alpha2^ - alpha2, alpha3^ - alpha3, alpha4^ - alpha4, beta1^ - beta1)
// where the hatted values non-dimensionalize the condensed matrix at side 2d.
Vec fixed_point_residual(const NondimBlocks& x);

// Residual plus the leading-coefficient ratio read at the same point.
Vec fixed_point_residual(const NondimBlocks& x, double& scaling_out);

struct NewtonOptions {
  double tol = 1e-12;      // residual inf-norm
  int max_iter = 100;
  double fd_step = 1e-7;   // relative, absolute floor 1e-9
};

// Damped Newton (step halving, <= 20 halvings) on the 4 unknowns with a
// forward-difference Jacobian. On a line-search stall very near a solution,
// components below 1e-4 are snapped to zero and frozen (the subspace
// alpha3 = alpha4 = 0 is exactly invariant under the map, where the map
// loses second-order smoothness); the result is accepted only if the full
// residual meets tol.
ModeSolution newton_solve(const NondimBlocks& start, const NewtonOptions& opts = {});

struct SearchResult {
  std::vector<ModeSolution> solutions;  // ascending scaling
  int failures;
};

// Deterministic multi-start driver: deduplicates at distance 1e-6 in
// (alpha2, alpha3, alpha4, beta1), counts per-start failures.
SearchResult search_from_starts(const std::vector<NondimBlocks>& starts,
                                const NewtonOptions& opts = {});

// Starts drawn uniformly from [-2,2]^4 with a fixed bit mapping on
// mt19937_64 so identical seeds reproduce byte-identical reports.
SearchResult random_restart_search(std::uint64_t seed, int n_restarts,
                                   const NewtonOptions& opts = {});

// Reduced 3-unknown solve with beta1 frozen at -1/2 (the bending mode's
// zero-eigenvector constraint imposed ab initio).
ModeSolution constrained_bending_solve(const NondimBlocks& start,
                                       const NewtonOptions& opts = {});

// Axial iff rank 3 with the drilling unit vectors annihilated; Bending iff
// rank 5 with the homogeneous extension annihilated.
Mode classify_mode(const NondimBlocks& x);

// kappa2^(log2 rho): the scaling at an arbitrary size ratio, anchored at
// the measured value for doubling.
double scaling_law(double kappa2, double rho);

// The two converged modes (cached; deterministic).
const ModeSolution& axial_mode();
const ModeSolution& bending_mode();

}  // namespace fractalstiff::gasketsolver
