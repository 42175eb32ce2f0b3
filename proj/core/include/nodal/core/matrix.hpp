#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nodal/core/error.hpp"
#include "nodal/core/fp.hpp"
#include "nodal/core/rat.hpp"

namespace nodal {

/// Dense row-major matrix over a field.
template <typename C>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const C& fill = C())
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<C> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw PreconditionError("matrix entry count does not match its shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<C>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] const std::vector<C>& entries() const { return entries_; }

  C& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const C& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  [[nodiscard]] std::span<const C> row(std::size_t r) const {
    return std::span<const C>(entries_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<C> entries_;
};

using RatMatrix = Matrix<Rat>;
using FpMatrix = Matrix<Fp>;

/// Exact rank by fraction-free (Bareiss) elimination over the integers after
/// clearing row denominators.
std::size_t mat_rank(const RatMatrix& m);
/// Exact determinant; throws PreconditionError on a non-square matrix.
Rat mat_det(const RatMatrix& m);

/// Rank over F_p by Gaussian elimination.
std::size_t mat_rank(const FpMatrix& m);
/// Reduces every entry mod p; nullopt when p divides a denominator.
std::optional<FpMatrix> reduce_mod(const RatMatrix& m, std::uint64_t prime);

}  // namespace nodal
