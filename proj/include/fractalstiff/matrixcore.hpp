#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace fractalstiff {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Library-wide tolerances. Everything here is <= 18x18 and well scaled after
// non-dimensionalization, so fixed absolute/relative thresholds are adequate.
inline constexpr double symtol = 1e-10;
inline constexpr double lintol = 1e-10;
inline constexpr double pivtol = 1e-12;
inline constexpr double eigtol = 1e-10;

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& msg) : std::runtime_error(msg) {}
};
struct EigenFailure : std::runtime_error {
  explicit EigenFailure(const std::string& msg) : std::runtime_error(msg) {}
};
struct FixedPointFailure : std::runtime_error {
  explicit FixedPointFailure(const std::string& msg) : std::runtime_error(msg) {}
};
struct SingularJacobian : std::runtime_error {
  explicit SingularJacobian(const std::string& msg) : std::runtime_error(msg) {}
};
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

double max_abs(const Mat& a);
bool is_symmetric(const Mat& a, double tol = symtol);

// Dense symmetric solve with an explicit singularity gate: throws
// SingularMatrix when a pivot magnitude falls below pivtol * max|A|.
Mat solve_sym(const Mat& a, const Mat& b);

// Tolerant variant for static condensation: eigen-directions of A with
// |lambda| <= pivtol * max|lambda| are dropped, provided B is consistent
// along them. A vanishing A or an inconsistent singular system throws
// SingularMatrix. Needed because the interior block loses rank exactly on
// the invariant subspaces the fixed-point solver must traverse.
Mat solve_sym_pseudo(const Mat& a, const Mat& b);

// Singular values above tol * (largest magnitude); symmetric inputs use
// eigenvalue magnitudes instead, which is exact for the PSD stiffness blocks.
int numerical_rank(const Mat& a, double tol);

double min_sym_eigenvalue(const Mat& a);

// Text format shared by all CLI dumps: first line "rows cols", then one row
// per line, entries as shortest round-trip decimals, space-separated.
std::string format_matrix(const Mat& a);
Mat parse_matrix(std::istream& in);
Mat parse_matrix(const std::string& text);

}  // namespace fractalstiff
