#pragma once

#include <array>

#include "fractalstiff/matrixcore.hpp"

namespace fractalstiff::framelab {

// Equilateral triangular frame of three identical beams.
struct FrameSpec {
  double E;    // modulus
  double A_s;  // cross-sectional area
  double I;    // moment of inertia
  double d;    // side length
};

// The two distinct 3x3 blocks of a symmetry-admissible 9x9 corner stiffness:
// A on the diagonal, B off-diagonal (tiled [[A,B,B^T],[B^T,A,B],[B,B^T,A]]).
struct BlockPair {
  Mat A;
  Mat B;
};

struct BeamModePair {
  Mat axial;  // 6x6, rank 1
  Mat bend;   // 6x6, rank 2
};

struct FrameSplit {
  Mat axial;  // 9x9, rank 3
  Mat bend;   // 9x9, rank 5
};

struct ModeRankReport {
  int rank_axial;
  int rank_bend;
  double homogeneous_extension_energy;  // quadratic form of the bend part
};

// Passive in-plane rotation of one (u, v, theta) nodal triple: translations
// re-expressed in axes rotated counter-clockwise by phi, drilling untouched.
Mat dof_rotation(double phi);

// Corner-frame angles (radians) for an upward triangle, order top /
// lower-left / lower-right: each node's first axis points outward along its
// median, i.e. 90, 210, 330 degrees from the global x-axis.
std::array<double, 3> corner_frame_angles();

// 9x9 block-diagonal map taking global nodal DOFs to the three corner frames.
Mat corner_frames_from_global();

// Corner coordinates of the upward triangle with side d, centroid at origin,
// order top / lower-left / lower-right.
std::array<std::array<double, 2>, 3> corner_positions(double d);

// Classical plane-frame beam element split by mechanism, local axes
// (x along the beam), DOF order (u1, v1, th1, u2, v2, th2).
BeamModePair beam_element_stiffness(double E, double A_s, double I, double L);

// 9x9 frame stiffness in the corner node frames; beam local x runs from the
// lower-numbered to the higher-numbered corner in (top, ll, lr) order.
Mat assemble_frame(const FrameSpec& spec);
FrameSplit assemble_frame_split(const FrameSpec& spec);

// Diagonal and off-diagonal blocks of the assembled frame.
BlockPair frame_blocks(const FrameSpec& spec);

// 3x9 force/moment balance rows in the corner frames, moments about the top
// vertex; an equilibrated K satisfies S * K = 0.
Mat static_matrix(double d);

// max|S*K| / max|K|.
double check_equilibrium(const Mat& k, double d);

ModeRankReport mode_rank_report(const FrameSpec& spec);

}  // namespace fractalstiff::framelab
