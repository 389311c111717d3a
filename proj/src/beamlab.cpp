#include "fractalstiff/beamlab.hpp"

#include <cmath>

namespace fractalstiff::beamlab {

namespace {

void validate(const BeamParams& p) {
  if (!(p.a > 0) || !(p.c > 0) || !(p.L > 0))
    throw ArgumentError("beam parameters must be positive");
}

}  // namespace

Mat parametrized_beam_stiffness(const BeamParams& p) {
  validate(p);
  const double a = p.a, c = p.c, L = p.L;
  Mat k(4, 4);
  k << a, a * L / 2, -a, a * L / 2,
      a * L / 2, c, -a * L / 2, a * L * L / 2 - c,
      -a, -a * L / 2, a, -a * L / 2,
      a * L / 2, a * L * L / 2 - c, -a * L / 2, c;
  return k;
}

Mat beam_static_matrix(double L) {
  if (!(L > 0)) throw ArgumentError("beam length must be positive");
  Mat s(2, 4);
  s << 1, 0, 1, 0,
      0, 1, L, 1;
  return s;
}

double condensation_prefactor(const BeamParams& p) {
  validate(p);
  return (4 * p.c - p.a * p.L * p.L) / (8 * p.c);
}

Mat condense_double_beam(const BeamParams& p) {
  const Mat k = parametrized_beam_stiffness(p);
  const Mat a = k.block(0, 0, 2, 2);
  const Mat b = k.block(0, 2, 2, 2);
  const Mat c = k.block(2, 2, 2, 2);

  // Two spans sharing the middle node: retained DOFs (left pair, right
  // pair), eliminated middle pair sees both spans.
  Mat retained = Mat::Zero(4, 4);
  retained.block(0, 0, 2, 2) = a;
  retained.block(2, 2, 2, 2) = c;
  Mat coupling(4, 2);
  coupling.block(0, 0, 2, 2) = b;
  coupling.block(2, 0, 2, 2) = b.transpose();
  const Mat middle = c + a;

  const Mat x = solve_sym(middle, coupling.transpose());
  Mat khat = retained - coupling * x;
  khat = ((khat + khat.transpose()) / 2).eval();
  return khat;
}

SelfSimilarityReport solve_beam_self_similarity(double L) {
  if (!(L > 0)) throw ArgumentError("beam length must be positive");

  // gamma = c/(a L^2) is scale-free; the map reads the condensed pair back
  // at span 2L.
  const auto gamma_hat = [L](double g) {
    const BeamParams p{1.0, g * L * L, L};
    const Mat khat = condense_double_beam(p);
    const double a_hat = khat(0, 0);
    const double c_hat = khat(1, 1);
    return c_hat / (a_hat * (2 * L) * (2 * L));
  };

  double g = 1.0;
  int it = 0;
  const int max_iter = 50;
  for (; it < max_iter; ++it) {
    const double f = gamma_hat(g) - g;
    if (std::abs(f) <= 1e-14) break;
    const double h = 1e-7 * std::max(std::abs(g), 1e-2);
    const double fp = (gamma_hat(g + h) - (g + h) - f) / h;
    if (fp == 0.0) throw FixedPointFailure("flat derivative in beam fixed point");
    g -= f / fp;
  }
  if (it == max_iter) throw FixedPointFailure("beam fixed point did not converge");

  const BeamParams star{1.0, g * L * L, L};
  const double scaling = condense_double_beam(star)(0, 0);
  const double c_over_a = g * L * L;

  if (std::abs(c_over_a - L * L / 3) > 1e-9 * L * L ||
      std::abs(scaling - 0.125) > 1e-9)
    throw FixedPointFailure("beam fixed point drifted from the closed form");
  return {c_over_a, scaling, it};
}

Mat classical_beam_stiffness(double EI, double L) {
  if (!(EI > 0) || !(L > 0)) throw ArgumentError("EI and L must be positive");
  Mat k(4, 4);
  const double L2 = L * L, L3 = L2 * L;
  k << 12 / L3, 6 / L2, -12 / L3, 6 / L2,
      6 / L2, 4 / L, -6 / L2, 2 / L,
      -12 / L3, -6 / L2, 12 / L3, -6 / L2,
      6 / L2, 2 / L, -6 / L2, 4 / L;
  return EI * k;
}

Mat recovered_beam_stiffness(double EI, double L) {
  if (!(EI > 0) || !(L > 0)) throw ArgumentError("EI and L must be positive");
  const double a = 12 * EI / (L * L * L);
  return parametrized_beam_stiffness({a, a * L * L / 3, L});
}

}  // namespace fractalstiff::beamlab
