#include "admnet/linalg.hpp"

#include <algorithm>

#include "admnet/error.hpp"

namespace admnet {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix dimension mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

void RowSpace::reduce(std::vector<Rational>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const int p = pivots_[r];
    if (v[p] == 0) continue;
    Rational factor = v[p];  // basis rows have pivot 1
    for (int j = p; j < dim_; ++j) {
      if (rows_[r][j] != 0) v[j] -= factor * rows_[r][j];
    }
  }
}

bool RowSpace::insert(std::vector<Rational> v) {
  if (static_cast<int>(v.size()) != dim_) throw Error("vector length mismatch");
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
  if (it == v.end()) return false;
  const int p = static_cast<int>(it - v.begin());
  Rational lead = v[p];
  for (int j = p; j < dim_; ++j) v[j] /= lead;
  // Keep the basis reduced: clear column p from existing rows.
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    Rational factor = row[p];
    for (int j = p; j < dim_; ++j) row[j] -= factor * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::contains(std::vector<Rational> v) const {
  if (static_cast<int>(v.size()) != dim_) throw Error("vector length mismatch");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

int rank(const RationalMatrix& m) {
  RowSpace space(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<Rational> row(m.data().begin() + static_cast<std::ptrdiff_t>(i) * m.cols(),
                              m.data().begin() + static_cast<std::ptrdiff_t>(i + 1) * m.cols());
    space.insert(std::move(row));
  }
  return space.rank();
}

bool column_space_invariant(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != a.cols()) throw Error("matrix dimension mismatch");
  RationalMatrix bt = b.transpose();
  RowSpace space(b.rows());
  for (int j = 0; j < bt.rows(); ++j) {
    space.insert(std::vector<Rational>(bt.data().begin() + static_cast<std::ptrdiff_t>(j) * bt.cols(),
                                       bt.data().begin() + static_cast<std::ptrdiff_t>(j + 1) * bt.cols()));
  }
  RationalMatrix image = (a * b).transpose();
  for (int j = 0; j < image.rows(); ++j) {
    std::vector<Rational> v(image.data().begin() + static_cast<std::ptrdiff_t>(j) * image.cols(),
                            image.data().begin() + static_cast<std::ptrdiff_t>(j + 1) * image.cols());
    if (!space.contains(std::move(v))) return false;
  }
  return true;
}

}  // namespace admnet
