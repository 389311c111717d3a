#include "fractalstiff/framelab.hpp"

#include <cmath>
#include <numbers>

namespace fractalstiff::framelab {

namespace {

constexpr double pi = std::numbers::pi;

void validate(const FrameSpec& spec) {
  if (!(spec.E > 0) || !(spec.d > 0))
    throw ArgumentError("frame modulus and side length must be positive");
  if (spec.A_s < 0 || spec.I < 0)
    throw ArgumentError("frame area and inertia must be non-negative");
}

}  // namespace

Mat dof_rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat r(3, 3);
  r << c, s, 0,
      -s, c, 0,
      0, 0, 1;
  return r;
}

std::array<double, 3> corner_frame_angles() {
  return {pi / 2, pi * 7 / 6, pi * 11 / 6};
}

Mat corner_frames_from_global() {
  Mat r = Mat::Zero(9, 9);
  const auto angles = corner_frame_angles();
  for (int n = 0; n < 3; ++n)
    r.block(3 * n, 3 * n, 3, 3) = dof_rotation(angles[n]);
  return r;
}

std::array<std::array<double, 2>, 3> corner_positions(double d) {
  const double s3 = std::sqrt(3.0);
  return {{{0.0, d / s3}, {-d / 2, -d / (2 * s3)}, {d / 2, -d / (2 * s3)}}};
}

BeamModePair beam_element_stiffness(double E, double A_s, double I, double L) {
  if (!(E > 0) || !(L > 0)) throw ArgumentError("modulus and length must be positive");
  if (A_s < 0 || I < 0) throw ArgumentError("area and inertia must be non-negative");

  Mat axial = Mat::Zero(6, 6);
  const double ka = E * A_s / L;
  axial(0, 0) = ka;
  axial(3, 3) = ka;
  axial(0, 3) = -ka;
  axial(3, 0) = -ka;

  Mat bend = Mat::Zero(6, 6);
  const double L2 = L * L, L3 = L2 * L;
  const double t = 12 * E * I / L3, s = 6 * E * I / L2;
  const double r4 = 4 * E * I / L, r2 = 2 * E * I / L;
  bend(1, 1) = t;
  bend(4, 4) = t;
  bend(1, 4) = -t;
  bend(4, 1) = -t;
  bend(1, 2) = s;
  bend(2, 1) = s;
  bend(1, 5) = s;
  bend(5, 1) = s;
  bend(2, 4) = -s;
  bend(4, 2) = -s;
  bend(4, 5) = -s;
  bend(5, 4) = -s;
  bend(2, 2) = r4;
  bend(5, 5) = r4;
  bend(2, 5) = r2;
  bend(5, 2) = r2;
  return {axial, bend};
}

namespace {

// One mechanism of the triangle: three beams on the corner nodes, assembled
// in global axes, then re-expressed in the corner frames.
Mat assemble_mechanism(const FrameSpec& spec, bool bending) {
  const auto pos = corner_positions(spec.d);
  const BeamModePair beam = beam_element_stiffness(
      spec.E, bending ? 0.0 : spec.A_s, bending ? spec.I : 0.0, spec.d);
  const Mat& kb = bending ? beam.bend : beam.axial;

  Mat k_global = Mat::Zero(9, 9);
  const int edges[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& e : edges) {
    const int i = e[0], j = e[1];
    const double phi =
        std::atan2(pos[j][1] - pos[i][1], pos[j][0] - pos[i][0]);
    Mat g = Mat::Zero(6, 6);
    g.block(0, 0, 3, 3) = dof_rotation(phi);
    g.block(3, 3, 3, 3) = dof_rotation(phi);
    const Mat ke = g.transpose() * kb * g;
    const int map[2] = {i, j};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        k_global.block(3 * map[r], 3 * map[c], 3, 3) +=
            ke.block(3 * r, 3 * c, 3, 3);
  }

  const Mat r = corner_frames_from_global();
  Mat k = r * k_global * r.transpose();
  return ((k + k.transpose()) / 2).eval();
}

}  // namespace

FrameSplit assemble_frame_split(const FrameSpec& spec) {
  validate(spec);
  return {assemble_mechanism(spec, false), assemble_mechanism(spec, true)};
}

Mat assemble_frame(const FrameSpec& spec) {
  const FrameSplit split = assemble_frame_split(spec);
  return split.axial + split.bend;
}

BlockPair frame_blocks(const FrameSpec& spec) {
  const Mat k = assemble_frame(spec);
  return {k.block(0, 0, 3, 3), k.block(0, 3, 3, 3)};
}

Mat static_matrix(double d) {
  if (!(d > 0)) throw ArgumentError("side length must be positive");
  const double s3 = std::sqrt(3.0);
  Mat s(3, 9);
  // Force balance along global x and y, then moments about the top vertex,
  // all written against the corner-frame components.
  s << 0, -1, 0, -s3 / 2, 0.5, 0, s3 / 2, 0.5, 0,
      1, 0, 0, -0.5, -s3 / 2, 0, -0.5, s3 / 2, 0,
      0, 0, 1, -d / 2, s3 * d / 2, 1, d / 2, s3 * d / 2, 1;
  return s;
}

double check_equilibrium(const Mat& k, double d) {
  if (k.rows() != 9 || k.cols() != 9)
    throw ArgumentError("equilibrium check expects a 9x9 matrix");
  const double scale = max_abs(k);
  if (scale == 0.0) return 0.0;
  return max_abs(static_matrix(d) * k) / scale;
}

ModeRankReport mode_rank_report(const FrameSpec& spec) {
  const FrameSplit split = assemble_frame_split(spec);
  Vec v = Vec::Zero(9);
  v[0] = v[3] = v[6] = 1;  // homogeneous extension in the corner frames
  return {numerical_rank(split.axial, 1e-9), numerical_rank(split.bend, 1e-9),
          v.dot(split.bend * v)};
}

}  // namespace fractalstiff::framelab
