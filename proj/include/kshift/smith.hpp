#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kshift/integer.hpp"

namespace kshift {

/// Smith normal form D = U·M·V of an integer matrix, with U and V unimodular.
///
/// `left` holds U, or U·F when a companion block F was supplied instead of the
/// identity; `right` holds V. Either is empty when not requested.
template <typename Scalar>
struct SmithResult {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index rank = 0;
  /// Positive, each dividing the next.
  std::vector<Scalar> invariant_factors;
  Matrix<Scalar> left;
  Matrix<Scalar> right;

  Eigen::Index cokernel_rank() const { return rows - rank; }

  std::vector<Scalar> cokernel_torsion() const {
    std::vector<Scalar> torsion;
    for (const auto& d : invariant_factors)
      if (d != Scalar(1)) torsion.push_back(d);
    return torsion;
  }

  bool all_factors_one() const {
    return std::all_of(invariant_factors.begin(), invariant_factors.end(),
                       [](const Scalar& d) { return d == Scalar(1); });
  }

  /// Z-basis of the integer kernel: the last cols − rank columns of V.
  std::vector<Vector<Scalar>> kernel_basis() const {
    std::vector<Vector<Scalar>> basis;
    for (Eigen::Index j = rank; j < right.cols(); ++j) basis.push_back(right.col(j));
    return basis;
  }

  Matrix<Scalar> diagonal_form() const {
    Matrix<Scalar> d = Matrix<Scalar>::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rank; ++i) d(i, i) = invariant_factors[static_cast<std::size_t>(i)];
    return d;
  }
};

/// A·B skipping zero entries of A and of the rows of B it touches. The oracle
/// matrices are very sparse, so this is far cheaper than a dense product.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> sparse_aware_product(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    std::vector<Eigen::Index> nz;
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (!is_zero(b(k, j))) nz.push_back(j);
    if (nz.empty()) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Scalar& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (auto j : nz) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

namespace detail {

template <typename Scalar>
class SmithReducer {
 public:
  SmithReducer(Matrix<Scalar> a, Matrix<Scalar>* left, Matrix<Scalar>* right)
      : a_(std::move(a)), left_(left), right_(right) {}

  SmithResult<Scalar> run() {
    const Eigen::Index rows = a_.rows();
    const Eigen::Index cols = a_.cols();
    const Eigen::Index limit = std::min(rows, cols);
    Eigen::Index r = 0;
    while (r < limit) {
      if (!place_pivot(r)) break;
      for (;;) {
        clear_column(r);
        if (!clear_row(r)) continue;
        if (!column_clean(r)) continue;
        if (enforce_divisibility(r)) break;
      }
      if (a_(r, r) < Scalar(0)) negate_row(r);
      ++r;
    }
    SmithResult<Scalar> result;
    result.rows = rows;
    result.cols = cols;
    result.rank = r;
    for (Eigen::Index i = 0; i < r; ++i) result.invariant_factors.push_back(a_(i, i));
    return result;
  }

 private:
  // Moves the smallest nonzero entry of the first nonzero column (>= r) of the
  // trailing submatrix to (r, r). Returns false when the submatrix is zero.
  bool place_pivot(Eigen::Index r) {
    for (Eigen::Index j = r; j < a_.cols(); ++j) {
      std::optional<Eigen::Index> best;
      for (Eigen::Index i = r; i < a_.rows(); ++i) {
        if (is_zero(a_(i, j))) continue;
        if (!best || abs_value(a_(i, j)) < abs_value(a_(*best, j))) best = i;
        if (abs_value(a_(*best, j)) == Scalar(1)) break;
      }
      if (best) {
        swap_cols(r, j);
        swap_rows(r, *best);
        return true;
      }
    }
    return false;
  }

  // Euclidean reduction of column r below the pivot using row operations.
  void clear_column(Eigen::Index r) {
    for (;;) {
      std::optional<Eigen::Index> smaller;
      for (Eigen::Index i = r + 1; i < a_.rows(); ++i) {
        if (is_zero(a_(i, r))) continue;
        Scalar q = a_(i, r) / a_(r, r);
        row_axpy(i, r, q);
        if (!is_zero(a_(i, r)) && (!smaller || abs_value(a_(i, r)) < abs_value(a_(*smaller, r)))) smaller = i;
      }
      if (!smaller) return;
      swap_rows(r, *smaller);
    }
  }

  // Column-operation counterpart; returns false if a smaller pivot had to be
  // swapped in, in which case the column needs clearing again.
  bool clear_row(Eigen::Index r) {
    bool stable = true;
    for (;;) {
      std::optional<Eigen::Index> smaller;
      for (Eigen::Index j = r + 1; j < a_.cols(); ++j) {
        if (is_zero(a_(r, j))) continue;
        Scalar q = a_(r, j) / a_(r, r);
        col_axpy(j, r, q);
        if (!is_zero(a_(r, j)) && (!smaller || abs_value(a_(r, j)) < abs_value(a_(r, *smaller)))) smaller = j;
      }
      if (!smaller) return stable;
      swap_cols(r, *smaller);
      stable = false;
    }
  }

  bool column_clean(Eigen::Index r) const {
    for (Eigen::Index i = r + 1; i < a_.rows(); ++i)
      if (!is_zero(a_(i, r))) return false;
    return true;
  }

  // The pivot must divide every trailing entry; otherwise fold the offending
  // row into row r and reduce again. Returns true when already satisfied.
  bool enforce_divisibility(Eigen::Index r) {
    const Scalar& pivot = a_(r, r);
    if (abs_value(pivot) == Scalar(1)) return true;
    for (Eigen::Index j = r + 1; j < a_.cols(); ++j)
      for (Eigen::Index i = r + 1; i < a_.rows(); ++i)
        if (!is_zero(a_(i, j) % pivot)) {
          row_axpy(r, i, Scalar(-1));
          return false;
        }
    return true;
  }

  // row_i -= q·row_k
  void row_axpy(Eigen::Index i, Eigen::Index k, const Scalar& q) {
    if (is_zero(q)) return;
    for (Eigen::Index j = 0; j < a_.cols(); ++j)
      if (!is_zero(a_(k, j))) a_(i, j) -= q * a_(k, j);
    if (left_)
      for (Eigen::Index j = 0; j < left_->cols(); ++j)
        if (!is_zero((*left_)(k, j))) (*left_)(i, j) -= q * (*left_)(k, j);
  }

  // col_j -= q·col_k
  void col_axpy(Eigen::Index j, Eigen::Index k, const Scalar& q) {
    if (is_zero(q)) return;
    for (Eigen::Index i = 0; i < a_.rows(); ++i)
      if (!is_zero(a_(i, k))) a_(i, j) -= q * a_(i, k);
    if (right_)
      for (Eigen::Index i = 0; i < right_->rows(); ++i)
        if (!is_zero((*right_)(i, k))) (*right_)(i, j) -= q * (*right_)(i, k);
  }

  void swap_rows(Eigen::Index i, Eigen::Index k) {
    if (i == k) return;
    a_.row(i).swap(a_.row(k));
    if (left_) left_->row(i).swap(left_->row(k));
  }

  void swap_cols(Eigen::Index j, Eigen::Index k) {
    if (j == k) return;
    a_.col(j).swap(a_.col(k));
    if (right_) right_->col(j).swap(right_->col(k));
  }

  void negate_row(Eigen::Index i) {
    a_.row(i) = -a_.row(i);
    if (left_) left_->row(i) = -left_->row(i);
  }

  Matrix<Scalar> a_;
  Matrix<Scalar>* left_;
  Matrix<Scalar>* right_;
};

}  // namespace detail

struct SmithOptions {
  bool left = false;
  bool right = false;
};

template <typename Derived>
SmithResult<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& m,
                                                        SmithOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> left;
  Matrix<Scalar> right;
  if (options.left) left = Matrix<Scalar>::Identity(m.rows(), m.rows());
  if (options.right) right = Matrix<Scalar>::Identity(m.cols(), m.cols());
  detail::SmithReducer<Scalar> reducer(m, options.left ? &left : nullptr, options.right ? &right : nullptr);
  auto result = reducer.run();
  result.left = std::move(left);
  result.right = std::move(right);
  return result;
}

/// SNF where the row operations are applied to `companion` instead of an
/// identity matrix, so `left` comes back as U·companion. V is always formed.
template <typename Derived, typename DerivedC>
SmithResult<typename Derived::Scalar> smith_normal_form_with_companion(const Eigen::MatrixBase<Derived>& m,
                                                                       const Eigen::MatrixBase<DerivedC>& companion) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> left = companion;
  Matrix<Scalar> right = Matrix<Scalar>::Identity(m.cols(), m.cols());
  detail::SmithReducer<Scalar> reducer(m, &left, &right);
  auto result = reducer.run();
  result.left = std::move(left);
  result.right = std::move(right);
  return result;
}

/// True iff U·M·V equals the diagonal form and U, V are square. Unimodularity
/// of U and V holds by construction (elementary operations only).
template <typename Derived>
bool smith_reassembles(const Eigen::MatrixBase<Derived>& m, const SmithResult<typename Derived::Scalar>& snf) {
  if (snf.left.rows() != m.rows() || snf.left.cols() != m.rows()) return false;
  if (snf.right.rows() != m.cols() || snf.right.cols() != m.cols()) return false;
  auto um = sparse_aware_product(snf.left, m);
  return sparse_aware_product(um, snf.right) == snf.diagonal_form();
}

/// Exact solutions x of M·x = f for each column f of `rhs`; nullopt for
/// columns outside the integer column span. Free coordinates are set to 0.
template <typename Derived, typename DerivedR>
std::vector<std::optional<Vector<typename Derived::Scalar>>> solve_integer(const Eigen::MatrixBase<Derived>& m,
                                                                            const Eigen::MatrixBase<DerivedR>& rhs,
                                                                            Eigen::Index* rank_out = nullptr) {
  using Scalar = typename Derived::Scalar;
  auto snf = smith_normal_form_with_companion(m, rhs);
  if (rank_out) *rank_out = snf.rank;
  std::vector<std::optional<Vector<Scalar>>> out;
  for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
    bool solvable = true;
    for (Eigen::Index i = snf.rank; i < m.rows() && solvable; ++i) solvable = is_zero(snf.left(i, c));
    Vector<Scalar> x = Vector<Scalar>::Zero(m.cols());
    for (Eigen::Index i = 0; i < snf.rank && solvable; ++i) {
      const Scalar& b = snf.left(i, c);
      if (is_zero(b)) continue;
      const Scalar& d = snf.invariant_factors[static_cast<std::size_t>(i)];
      if (!is_zero(b % d)) {
        solvable = false;
        break;
      }
      Scalar y = b / d;
      for (Eigen::Index k = 0; k < m.cols(); ++k)
        if (!is_zero(snf.right(k, i))) x(k) += y * snf.right(k, i);
    }
    if (solvable)
      out.emplace_back(std::move(x));
    else
      out.emplace_back(std::nullopt);
  }
  return out;
}

/// Rank over Q by fraction-free (integer Euclidean) row reduction.
template <typename Derived>
Eigen::Index integer_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    for (;;) {
      std::optional<Eigen::Index> best;
      for (Eigen::Index i = r; i < a.rows(); ++i)
        if (!is_zero(a(i, c)) && (!best || abs_value(a(i, c)) < abs_value(a(*best, c)))) best = i;
      if (!best) break;
      if (*best != r) a.row(r).swap(a.row(*best));
      bool clean = true;
      for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
        if (is_zero(a(i, c))) continue;
        Scalar q = a(i, c) / a(r, c);
        for (Eigen::Index j = c; j < a.cols(); ++j)
          if (!is_zero(a(r, j))) a(i, j) -= q * a(r, j);
        if (!is_zero(a(i, c))) clean = false;
      }
      if (clean) {
        ++r;
        break;
      }
    }
  }
  return r;
}

}  // namespace kshift
