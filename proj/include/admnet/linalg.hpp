#pragma once

#include <vector>

#include "admnet/polynomial.hpp"

namespace admnet {

/// Dense exact rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<Rational>& data() const { return data_; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Row echelon form of a set of vectors (all the same length), kept in
/// reduced form so membership reduces to forward elimination.
class RowSpace {
 public:
  explicit RowSpace(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Adds v; returns true if it enlarged the span.
  bool insert(std::vector<Rational> v);
  bool contains(std::vector<Rational> v) const;

 private:
  // Eliminates v against the basis; returns the residual.
  void reduce(std::vector<Rational>& v) const;

  int dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivots_;
};

int rank(const RationalMatrix& m);

/// Column space of `b` is invariant under `a` (a * col(b) subset of col(b)).
bool column_space_invariant(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace admnet
