#pragma once

#include "fractalstiff/matrixcore.hpp"

namespace fractalstiff::beamlab {

// Two-constant beam: a couples transverse translations (force/length),
// c couples end rotations (force*length). DOF order (w1, th1, w2, th2).
struct BeamParams {
  double a;
  double c;
  double L;
};

// 4x4 symmetric stiffness determined by symmetry and equilibrium alone.
Mat parametrized_beam_stiffness(const BeamParams& p);

// 2x4 force/moment balance rows (moment taken about the left end); every
// column of an equilibrated beam stiffness lies in its null space.
Mat beam_static_matrix(double L);

// Two length-L beams joined end to end, shared middle DOFs condensed out.
// Result spans 2L. Throws SingularMatrix if the middle block is singular.
Mat condense_double_beam(const BeamParams& p);

// Scalar (4c - a L^2) / (8 c) multiplying the condensed matrix; zero at
// c = a L^2 / 4, a valid but degenerate input that condenses to nothing.
double condensation_prefactor(const BeamParams& p);

struct SelfSimilarityReport {
  double c_over_a;  // length^2
  double scaling;   // leading-entry ratio under span doubling
  int iterations;
};

// One-dimensional Newton in the scale-free ratio gamma = c/(a L^2), start
// gamma0 = 1; the unique positive fixed point gives c/a = L^2/3 and
// scaling 1/8, then both are cross-checked against the closed forms.
SelfSimilarityReport solve_beam_self_similarity(double L);

// Classical Euler-Bernoulli bending stiffness, EI units.
Mat classical_beam_stiffness(double EI, double L);

// Fixed-point form with the stiffness unit chosen to match the classical
// matrix entrywise: a = 12 EI / L^3, c = a L^2 / 3.
Mat recovered_beam_stiffness(double EI, double L);

}  // namespace fractalstiff::beamlab
