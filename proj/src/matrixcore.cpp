#include "fractalstiff/matrixcore.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace fractalstiff {

double max_abs(const Mat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double skew = max_abs(a - a.transpose());
  return skew <= tol * (1.0 + max_abs(a));
}

namespace {

void require_square_system(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != a.cols())
    throw ArgumentError(std::string(op) + ": matrix must be square");
  if (b.rows() != a.rows())
    throw ArgumentError(std::string(op) + ": right-hand side row count mismatch");
}

}  // namespace

Mat solve_sym(const Mat& a, const Mat& b) {
  require_square_system(a, b, "solve_sym");
  if (!is_symmetric(a)) throw ArgumentError("solve_sym: matrix not symmetric");
  const double scale = max_abs(a);
  if (scale == 0.0) throw SingularMatrix("solve_sym: zero matrix");

  Eigen::FullPivLU<Mat> lu(a);
  const Vec pivots = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < pivots.size(); ++i) {
    if (std::abs(pivots[i]) < pivtol * scale)
      throw SingularMatrix("solve_sym: pivot below threshold");
  }
  Mat x = lu.solve(b);
  if (max_abs(a * x - b) > lintol * std::max(1.0, max_abs(b)))
    throw SingularMatrix("solve_sym: solution residual exceeds tolerance");
  return x;
}

Mat solve_sym_pseudo(const Mat& a, const Mat& b) {
  require_square_system(a, b, "solve_sym_pseudo");
  if (!is_symmetric(a)) throw ArgumentError("solve_sym_pseudo: matrix not symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw EigenFailure("solve_sym_pseudo: eigen decomposition failed");
  const Vec lam = es.eigenvalues();
  const Mat& q = es.eigenvectors();
  const double lam_max = lam.cwiseAbs().maxCoeff();
  if (lam_max == 0.0) throw SingularMatrix("solve_sym_pseudo: interior block vanishes");

  // project, rescale, lift: forming the explicit pseudo-inverse would put
  // 1/lam_min sized intermediates into play and wreck the residual check
  Mat coef = q.transpose() * b;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam[i]) > pivtol * lam_max)
      coef.row(i) /= lam[i];
    else
      coef.row(i).setZero();
  }
  Mat x = q * coef;

  // Dropped directions must carry no load, otherwise the system has no
  // solution and the parameters are genuinely unphysical.
  const double scale = std::max({max_abs(b), lam_max * max_abs(x), 1e-300});
  if (max_abs(a * x - b) > lintol * scale)
    throw SingularMatrix("solve_sym_pseudo: singular system is inconsistent");
  return x;
}

int numerical_rank(const Mat& a, double tol) {
  if (tol <= 0) throw ArgumentError("numerical_rank: tolerance must be positive");
  if (a.size() == 0) return 0;
  if (is_symmetric(a)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw EigenFailure("numerical_rank: eigen decomposition failed");
    const Vec lam = es.eigenvalues().cwiseAbs();
    const double top = lam.maxCoeff();
    if (top == 0.0) return 0;
    return static_cast<int>((lam.array() > tol * top).count());
  }
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec sv = svd.singularValues();
  const double top = sv.size() ? sv[0] : 0.0;
  if (top == 0.0) return 0;
  return static_cast<int>((sv.array() > tol * top).count());
}

double min_sym_eigenvalue(const Mat& a) {
  if (!is_symmetric(a)) throw ArgumentError("min_sym_eigenvalue: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigenFailure("min_sym_eigenvalue: eigen decomposition failed");
  return es.eigenvalues().minCoeff();
}

namespace {

void append_shortest(std::string& out, double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::string format_matrix(const Mat& a) {
  std::string out;
  out += std::to_string(a.rows());
  out += ' ';
  out += std::to_string(a.cols());
  out += '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      append_shortest(out, a(i, j));
    }
    out += '\n';
  }
  return out;
}

Mat parse_matrix(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw ParseError("matrix header must be 'rows cols'");
  Mat a(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      double v;
      if (!(in >> v)) throw ParseError("matrix body ended early or holds a non-number");
      a(i, j) = v;
    }
  }
  return a;
}

Mat parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

}  // namespace fractalstiff
