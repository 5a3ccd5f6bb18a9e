#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "qfib/scalar.hpp"

namespace qfib {

template <Scalar T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <Scalar T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

enum class SystemStatus { Unique, Underdetermined, Inconsistent };

/// Outcome of an overdetermined system A x = b.
///
/// `solution` is populated unless the system is inconsistent; for Underdetermined it is
/// the particular solution with every free variable set to zero (Exact) or the
/// minimum-norm solution (Float). `first_violating_row` is the smallest m such that
/// rows 0..m already form an inconsistent system.
template <Scalar T>
struct SystemSolution {
  SystemStatus status = SystemStatus::Inconsistent;
  Eigen::Index rank = 0;
  std::optional<Vector<T>> solution;
  std::optional<Eigen::Index> first_violating_row;
};

/// Row echelon form computed by Bareiss fraction-free elimination.
///
/// Rows are taken in their given order (the earliest row with a nonzero entry becomes
/// the pivot), so the result is deterministic. Every intermediate entry is a minor of
/// the input, hence all divisions are exact.
struct EchelonForm {
  IntMatrix reduced;
  std::vector<Eigen::Index> pivot_columns;
  std::vector<Eigen::Index> row_order;  // row_order[i] = original index of reduced row i

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

EchelonForm fraction_free_echelon(IntMatrix m);

/// Scale each row by the lcm of its denominators.
IntMatrix clear_denominators(const Matrix<Rational>& m);

/// Exact solve through fraction-free elimination of the augmented matrix [A | b].
SystemSolution<Rational> solve_exact(const Matrix<Rational>& a, const Vector<Rational>& b);

/// Least-squares solve. The system is consistent when every residual is at most
/// `residual_tol`; rank comes from a complete orthogonal decomposition with relative
/// threshold `rank_tol`.
SystemSolution<double> solve_least_squares(const Matrix<double>& a, const Vector<double>& b, double residual_tol,
                                           double rank_tol = 1e-10);

}  // namespace qfib
