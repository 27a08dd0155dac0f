#include "drinfeld/linalg.hpp"

#include <stdexcept>

#include "drinfeld/errors.hpp"

namespace drinfeld {

FMatrix FMatrix::identity(const FiniteField& field, std::size_t n) {
  FMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FMatrix FMatrix::transpose() const {
  FMatrix t(*field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

FVec FMatrix::apply(const FVec& v) const {
  if (v.size() != cols_) throw PreconditionError("matrix-vector dimension mismatch");
  FVec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s = field_->add(s, field_->mul(at(i, j), v[j]));
    out[i] = s;
  }
  return out;
}

FMatrix FMatrix::scaled(Elem s) const {
  FMatrix r = *this;
  for (auto& x : r.data_) x = field_->mul(x, s);
  return r;
}

bool FMatrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

FMatrix operator*(const FMatrix& x, const FMatrix& y) {
  if (x.cols_ != y.rows_) throw PreconditionError("matrix product dimension mismatch");
  const FiniteField& F = *x.field_;
  FMatrix r(F, x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i)
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const auto a = x.at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(a, y.at(k, j)));
    }
  return r;
}

FMatrix operator+(const FMatrix& x, const FMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw PreconditionError("matrix sum dimension mismatch");
  FMatrix r = x;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = x.field_->add(x.data_[i], y.data_[i]);
  return r;
}

FMatrix operator-(const FMatrix& x, const FMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw PreconditionError("matrix difference dimension mismatch");
  FMatrix r = x;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = x.field_->sub(x.data_[i], y.data_[i]);
  return r;
}

RowEchelon rref(FMatrix m) {
  const FiniteField& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    const auto inv = F.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      const auto c = m.at(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FMatrix& m) { return rref(m).pivots.size(); }

std::vector<FVec> kernel_basis(const FMatrix& m) {
  const auto e = rref(m);
  const FiniteField& F = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<FVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FVec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.reduced.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FVec> solve(const FMatrix& m, const FVec& rhs) {
  if (rhs.size() != m.rows()) throw PreconditionError("solve: right-hand side has wrong length");
  FMatrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[i];
  }
  const auto e = rref(aug);
  FVec x(m.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced.at(r, m.cols());
  }
  return x;
}

std::optional<FiniteField::Elem> proportionality(const FMatrix& target, const FMatrix& base) {
  if (target.rows() != base.rows() || target.cols() != base.cols()) return std::nullopt;
  const FiniteField& F = base.field();
  std::optional<FiniteField::Elem> s;
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j) {
      const auto b = base.at(i, j);
      if (b != 0 && !s) s = F.div(target.at(i, j), b);
    }
  if (!s) return std::nullopt;
  if (!(base.scaled(*s) == target)) return std::nullopt;
  return s;
}

bool SparseEchelon::insert(SparseVec v) {
  const FiniteField& F = *field_;
  SparseVec scratch;
  while (!v.empty()) {
    const auto lead = v.front();
    auto it = pivots_.find(lead.first);
    if (it == pivots_.end()) {
      const auto inv = F.inv(lead.second);
      for (auto& e : v) e.second = F.mul(e.second, inv);
      pivots_.emplace(lead.first, std::move(v));
      return true;
    }
    // v <- v - lead * row, where row has leading coefficient 1 at the same index.
    const SparseVec& row = it->second;
    const auto c = lead.second;
    scratch.clear();
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < row.size()) {
      if (j >= row.size() || (i < v.size() && v[i].first < row[j].first)) {
        scratch.push_back(v[i++]);
      } else if (i >= v.size() || row[j].first < v[i].first) {
        scratch.emplace_back(row[j].first, F.neg(F.mul(c, row[j].second)));
        ++j;
      } else {
        const auto val = F.sub(v[i].second, F.mul(c, row[j].second));
        if (val != 0) scratch.emplace_back(v[i].first, val);
        ++i;
        ++j;
      }
    }
    v.swap(scratch);
  }
  return false;
}

}  // namespace drinfeld
