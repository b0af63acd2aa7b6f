#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace reliaforge {

enum class ConstraintSense { LessEqual, GreaterEqual, Equal };

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize objective.x  s.t.  constraints.row(i) . x (sense_i) rhs_i,
///                             lower <= x <= upper.
/// Empty `lower` means all zero; empty `upper` means all +inf. Use
/// -infinity / +infinity for free directions.
template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector objective;
  Matrix constraints;
  std::vector<ConstraintSense> senses;
  Vector rhs;
  Vector lower;
  Vector upper;
};

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar value = Scalar(0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  /// Largest constraint or bound violation at x.
  Scalar primalResidual = Scalar(0);
  std::size_t pivots = 0;
};

namespace detail {

/// Dense two-phase tableau. Bland's rule on both entering and leaving choice,
/// so it terminates on degenerate problems.
template <typename Scalar>
class Tableau {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Tableau(Matrix rows, Vector rhs, std::vector<ConstraintSense> senses, Scalar eps)
      : eps_(eps) {
    const auto m = rows.rows();
    structural_ = rows.cols();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (rhs(i) < 0) {
        rows.row(i) *= Scalar(-1);
        rhs(i) = -rhs(i);
        auto& sense = senses[static_cast<std::size_t>(i)];
        if (sense == ConstraintSense::LessEqual)
          sense = ConstraintSense::GreaterEqual;
        else if (sense == ConstraintSense::GreaterEqual)
          sense = ConstraintSense::LessEqual;
      }
    }
    Eigen::Index slacks = 0, artificials = 0;
    for (auto s : senses) {
      if (s != ConstraintSense::Equal) ++slacks;
      if (s != ConstraintSense::LessEqual) ++artificials;
    }
    firstArtificial_ = structural_ + slacks;
    const Eigen::Index cols = firstArtificial_ + artificials;
    t_ = Matrix::Zero(m + 1, cols + 1);
    t_.topLeftCorner(m, structural_) = rows;
    t_.col(cols).head(m) = rhs;
    basis_.resize(static_cast<std::size_t>(m));
    Eigen::Index slack = structural_, art = firstArtificial_;
    for (Eigen::Index i = 0; i < m; ++i) {
      switch (senses[static_cast<std::size_t>(i)]) {
        case ConstraintSense::LessEqual:
          t_(i, slack) = 1;
          basis_[static_cast<std::size_t>(i)] = slack++;
          break;
        case ConstraintSense::GreaterEqual:
          t_(i, slack++) = -1;
          t_(i, art) = 1;
          basis_[static_cast<std::size_t>(i)] = art++;
          break;
        case ConstraintSense::Equal:
          t_(i, art) = 1;
          basis_[static_cast<std::size_t>(i)] = art++;
          break;
      }
    }
  }

  /// Returns false when the problem is infeasible.
  bool phaseOne() {
    const auto m = rowCount();
    // maximize -sum(artificials): objective row holds z_j - c_j.
    t_.row(m).setZero();
    for (Eigen::Index j = firstArtificial_; j < rhsCol(); ++j) t_(m, j) = 1;
    for (Eigen::Index i = 0; i < m; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= firstArtificial_) t_.row(m) -= t_.row(i);
    if (!iterate(rhsCol())) return false;  // cannot happen: phase one is bounded
    if (t_(m, rhsCol()) < -feasibilityTol()) return false;
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < firstArtificial_) continue;
      for (Eigen::Index j = 0; j < firstArtificial_; ++j) {
        if (std::abs(t_(i, j)) > eps_) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  /// Returns false when unbounded.
  bool phaseTwo(const Vector& objective) {
    const auto m = rowCount();
    t_.row(m).setZero();
    t_.row(m).head(structural_) = -objective.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto b = basis_[static_cast<std::size_t>(i)];
      if (b < structural_ && t_(m, b) != Scalar(0)) t_.row(m) -= t_(m, b) * t_.row(i);
    }
    return iterate(firstArtificial_);
  }

  Vector solution() const {
    Vector x = Vector::Zero(structural_);
    for (Eigen::Index i = 0; i < rowCount(); ++i) {
      const auto b = basis_[static_cast<std::size_t>(i)];
      if (b < structural_) x(b) = t_(i, rhsCol());
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  Eigen::Index rowCount() const { return t_.rows() - 1; }
  Eigen::Index rhsCol() const { return t_.cols() - 1; }
  Scalar feasibilityTol() const {
    return Scalar(100) * eps_ *
           (Scalar(1) + t_.col(rhsCol()).head(rowCount()).cwiseAbs().maxCoeff());
  }

  // Columns >= columnLimit never enter.
  bool iterate(Eigen::Index columnLimit) {
    const auto m = rowCount();
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < columnLimit; ++j) {
        if (t_(m, j) < -eps_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < m; ++i)
        if (t_(i, entering) > eps_) best = std::min(best, t_(i, rhsCol()) / t_(i, entering));
      if (!std::isfinite(best)) return false;
      // Among tied minimum ratios, the row whose basic variable has the lowest index leaves.
      Eigen::Index leaving = -1;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t_(i, entering) <= eps_ || t_(i, rhsCol()) / t_(i, entering) > best + eps_) continue;
        if (leaving < 0 ||
            basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])
          leaving = i;
      }
      pivot(leaving, entering);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    t_.row(r) /= t_(r, s);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, s);
      if (f != Scalar(0)) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = s;
    ++pivots_;
  }

  Scalar eps_;
  Eigen::Index structural_ = 0;
  Eigen::Index firstArtificial_ = 0;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

/// Solves a small dense LP with the two-phase simplex method.
///
/// Variable bounds are handled by substitution: finite lower bounds are
/// shifted out, upper-only variables are reflected, free variables are split
/// into a difference of two nonnegative parts, and finite upper bounds become
/// extra rows.
template <typename Scalar>
LpResult<Scalar> simplexSolve(const LinearProgram<Scalar>& lp,
                              Scalar eps = Scalar(1e-11)) {
  using Vector = typename LinearProgram<Scalar>::Vector;
  using Matrix = typename LinearProgram<Scalar>::Matrix;
  const auto n = lp.objective.size();
  const auto m = lp.constraints.rows();
  if (lp.constraints.cols() != n && m > 0)
    throw std::invalid_argument("simplexSolve: constraint matrix has wrong column count");
  if (lp.rhs.size() != m || static_cast<Eigen::Index>(lp.senses.size()) != m)
    throw std::invalid_argument("simplexSolve: rhs/senses size mismatch");
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  const Vector lower = lp.lower.size() == 0 ? Vector::Zero(n) : lp.lower;
  const Vector upper = lp.upper.size() == 0 ? Vector::Constant(n, inf) : lp.upper;
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("simplexSolve: bound vector size mismatch");

  // x_j = offset_j + sum over its columns of sign * z_col
  struct Mapping {
    Eigen::Index column;
    Scalar sign;
  };
  std::vector<std::vector<Mapping>> map(static_cast<std::size_t>(n));
  Vector offset = Vector::Zero(n);
  Eigen::Index z = 0;
  std::vector<std::pair<Eigen::Index, Scalar>> boundRows;  // z_col <= width
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& mj = map[static_cast<std::size_t>(j)];
    if (lower(j) > upper(j)) {
      LpResult<Scalar> r;
      r.status = LpStatus::Infeasible;
      return r;
    }
    if (std::isfinite(lower(j))) {
      offset(j) = lower(j);
      mj.push_back({z, Scalar(1)});
      if (std::isfinite(upper(j))) boundRows.emplace_back(z, upper(j) - lower(j));
      ++z;
    } else if (std::isfinite(upper(j))) {
      offset(j) = upper(j);
      mj.push_back({z++, Scalar(-1)});
    } else {
      mj.push_back({z++, Scalar(1)});
      mj.push_back({z++, Scalar(-1)});
    }
  }

  const Eigen::Index rows = m + static_cast<Eigen::Index>(boundRows.size());
  Matrix a = Matrix::Zero(rows, z);
  Vector b(rows);
  Vector c = Vector::Zero(z);
  std::vector<ConstraintSense> senses(lp.senses);
  for (Eigen::Index j = 0; j < n; ++j)
    for (const auto& [col, sign] : map[static_cast<std::size_t>(j)]) {
      if (m > 0) a.col(col).head(m) += sign * lp.constraints.col(j);
      c(col) += sign * lp.objective(j);
    }
  if (m > 0) b.head(m) = lp.rhs - lp.constraints * offset;
  for (std::size_t k = 0; k < boundRows.size(); ++k) {
    const auto row = m + static_cast<Eigen::Index>(k);
    a(row, boundRows[k].first) = 1;
    b(row) = boundRows[k].second;
    senses.push_back(ConstraintSense::LessEqual);
  }

  detail::Tableau<Scalar> tableau(std::move(a), std::move(b), std::move(senses), eps);
  LpResult<Scalar> result;
  if (!tableau.phaseOne()) {
    result.status = LpStatus::Infeasible;
    result.pivots = tableau.pivots();
    return result;
  }
  if (!tableau.phaseTwo(c)) {
    result.status = LpStatus::Unbounded;
    result.pivots = tableau.pivots();
    return result;
  }
  const Vector zs = tableau.solution();
  result.x = offset;
  for (Eigen::Index j = 0; j < n; ++j)
    for (const auto& [col, sign] : map[static_cast<std::size_t>(j)]) result.x(j) += sign * zs(col);
  result.status = LpStatus::Optimal;
  result.value = lp.objective.dot(result.x);
  result.pivots = tableau.pivots();

  Scalar worst = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    worst = std::max(worst, lower(j) - result.x(j));
    worst = std::max(worst, result.x(j) - upper(j));
  }
  if (m > 0) {
    const Vector lhs = lp.constraints * result.x;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar gap = lhs(i) - lp.rhs(i);
      switch (lp.senses[static_cast<std::size_t>(i)]) {
        case ConstraintSense::LessEqual: worst = std::max(worst, gap); break;
        case ConstraintSense::GreaterEqual: worst = std::max(worst, -gap); break;
        case ConstraintSense::Equal: worst = std::max(worst, std::abs(gap)); break;
      }
    }
  }
  result.primalResidual = worst;
  return result;
}

}  // namespace reliaforge
