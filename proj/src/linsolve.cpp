#include "qfib/linsolve.hpp"

#include <stdexcept>
#include <utility>

#include <Eigen/QR>

namespace qfib {

namespace {

BigInt lcm_of(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

bool consistent(const EchelonForm& ef, Eigen::Index augmented_col) {
  return ef.pivot_columns.empty() || ef.pivot_columns.back() != augmented_col;
}

}  // namespace

IntMatrix clear_denominators(const Matrix<Rational>& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    BigInt scale = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) scale = lcm_of(scale, m(i, j).denominator());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j).numerator() * (scale / m(i, j).denominator());
    }
  }
  return out;
}

EchelonForm fraction_free_echelon(IntMatrix m) {
  EchelonForm ef;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  ef.row_order.resize(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) ef.row_order[static_cast<std::size_t>(i)] = i;

  BigInt previous_pivot = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      m.row(p).swap(m.row(r));
      std::swap(ef.row_order[static_cast<std::size_t>(p)], ef.row_order[static_cast<std::size_t>(r)]);
    }
    const BigInt pivot = m(r, c);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      const BigInt factor = m(i, c);
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        BigInt num = pivot * m(i, j) - factor * m(r, j);
        BigInt quotient, remainder;
        boost::multiprecision::divide_qr(num, previous_pivot, quotient, remainder);
        if (remainder != 0) throw std::logic_error("fraction-free elimination: inexact division");
        m(i, j) = std::move(quotient);
      }
      m(i, c) = 0;
    }
    previous_pivot = pivot;
    ef.pivot_columns.push_back(c);
    ++r;
  }
  ef.reduced = std::move(m);
  return ef;
}

SystemSolution<Rational> solve_exact(const Matrix<Rational>& a, const Vector<Rational>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: row mismatch");
  const Eigen::Index k = a.cols();
  Matrix<Rational> augmented(a.rows(), k + 1);
  augmented.leftCols(k) = a;
  augmented.col(k) = b;
  const IntMatrix scaled = clear_denominators(augmented);
  const EchelonForm ef = fraction_free_echelon(scaled);

  SystemSolution<Rational> out;
  if (!consistent(ef, k)) {
    out.status = SystemStatus::Inconsistent;
    out.rank = ef.rank() - 1;
    for (Eigen::Index m = 0; m < scaled.rows(); ++m) {
      if (!consistent(fraction_free_echelon(scaled.topRows(m + 1)), k)) {
        out.first_violating_row = m;
        break;
      }
    }
    return out;
  }

  out.rank = ef.rank();
  out.status = out.rank == k ? SystemStatus::Unique : SystemStatus::Underdetermined;
  Vector<Rational> x = Vector<Rational>::Constant(k, Rational(0));
  for (Eigen::Index i = ef.rank() - 1; i >= 0; --i) {
    const Eigen::Index pc = ef.pivot_columns[static_cast<std::size_t>(i)];
    Rational acc(ef.reduced(i, k));
    for (Eigen::Index j = pc + 1; j < k; ++j) acc -= Rational(ef.reduced(i, j)) * x(j);
    x(pc) = acc / Rational(ef.reduced(i, pc));
  }
  out.solution = std::move(x);
  return out;
}

SystemSolution<double> solve_least_squares(const Matrix<double>& a, const Vector<double>& b, double residual_tol,
                                           double rank_tol) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_least_squares: row mismatch");
  auto fit = [&](Eigen::Index rows) {
    Eigen::CompleteOrthogonalDecomposition<Matrix<double>> cod(a.topRows(rows));
    cod.setThreshold(rank_tol);
    Vector<double> x = cod.solve(b.head(rows));
    const Vector<double> residual = a.topRows(rows) * x - b.head(rows);
    const double worst = rows == 0 ? 0.0 : residual.cwiseAbs().maxCoeff();
    return std::make_tuple(std::move(x), worst, cod.rank());
  };

  auto [x, worst, rank] = fit(a.rows());
  SystemSolution<double> out;
  out.rank = rank;
  if (worst > residual_tol) {
    out.status = SystemStatus::Inconsistent;
    for (Eigen::Index m = 1; m <= a.rows(); ++m) {
      if (std::get<1>(fit(m)) > residual_tol) {
        out.first_violating_row = m - 1;
        break;
      }
    }
    return out;
  }
  out.status = rank == a.cols() ? SystemStatus::Unique : SystemStatus::Underdetermined;
  out.solution = std::move(x);
  return out;
}

}  // namespace qfib
