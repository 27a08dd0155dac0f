#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drinfeld/finite_field.hpp"

namespace drinfeld {

using FVec = std::vector<FiniteField::Elem>;

// Dense row-major matrix over a finite field. The field must outlive the matrix.
class FMatrix {
 public:
  using Elem = FiniteField::Elem;

  FMatrix(const FiniteField& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static FMatrix identity(const FiniteField& field, std::size_t n);

  const FiniteField& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  FMatrix transpose() const;
  FVec apply(const FVec& v) const;
  FMatrix scaled(Elem s) const;
  bool is_zero() const;

  friend FMatrix operator*(const FMatrix& x, const FMatrix& y);
  friend FMatrix operator+(const FMatrix& x, const FMatrix& y);
  friend FMatrix operator-(const FMatrix& x, const FMatrix& y);
  friend bool operator==(const FMatrix& x, const FMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  const FiniteField* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

struct RowEchelon {
  FMatrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

RowEchelon rref(FMatrix m);
std::size_t rank(const FMatrix& m);
// Basis of the right null space {x : m x = 0}.
std::vector<FVec> kernel_basis(const FMatrix& m);
// Some solution of m x = rhs, if one exists.
std::optional<FVec> solve(const FMatrix& m, const FVec& rhs);

// If target = s * base for a single scalar s (with base != 0), returns s.
std::optional<FiniteField::Elem> proportionality(const FMatrix& target, const FMatrix& base);

// Incremental echelon basis of sparse vectors. The pivot of a stored row is its smallest index,
// so inserting vectors whose leading indices are "local" keeps fill-in low.
class SparseEchelon {
 public:
  using Entry = std::pair<std::uint32_t, FiniteField::Elem>;
  using SparseVec = std::vector<Entry>;  // sorted by index, no zero values

  explicit SparseEchelon(const FiniteField& field) : field_(&field) {}

  // Returns true iff v was independent of the rows inserted so far.
  bool insert(SparseVec v);
  std::size_t rank() const { return pivots_.size(); }

 private:
  const FiniteField* field_;
  std::unordered_map<std::uint32_t, SparseVec> pivots_;
};

}  // namespace drinfeld
