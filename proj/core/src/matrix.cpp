#include "nodal/core/matrix.hpp"

#include <utility>

namespace nodal {

namespace {

struct IntegerRows {
  std::vector<std::vector<mpz_class>> rows;
  // Product of the per-row scale factors; det(original) = det(rows) / scale.
  mpz_class scale = 1;
};

IntegerRows clear_denominators(const RatMatrix& m) {
  IntegerRows out;
  out.rows.resize(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).den().get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.rows[r][c] = m(r, c).num() * (l / m(r, c).den());
    }
    out.scale *= l;
  }
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  mpz_class last_pivot = 1;
  int sign = 1;
};

// Bareiss elimination in place. For a square full-rank matrix the last pivot
// is the determinant up to the recorded row-swap sign.
BareissResult bareiss(std::vector<std::vector<mpz_class>>& a, std::size_t cols) {
  BareissResult res;
  const std::size_t rows = a.size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      std::swap(a[pivot], a[r]);
      res.sign = -res.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

}  // namespace

std::size_t mat_rank(const RatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto ints = clear_denominators(m);
  return bareiss(ints.rows, m.cols()).rank;
}

Rat mat_det(const RatMatrix& m) {
  if (!m.is_square()) {
    throw PreconditionError("determinant of a non-square " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " matrix");
  }
  if (m.rows() == 0) return Rat(1);
  auto ints = clear_denominators(m);
  const auto res = bareiss(ints.rows, m.cols());
  if (res.rank < m.rows()) return Rat(0);
  return Rat(res.last_pivot * res.sign, ints.scale);
}

std::size_t mat_rank(const FpMatrix& m) {
  std::vector<Fp> a = m.entries();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[r * cols + j]);
    }
    const Fp inv = a[r * cols + c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i * cols + c].is_zero()) continue;
      const Fp factor = a[i * cols + c] * inv;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] -= factor * a[r * cols + j];
    }
    ++r;
  }
  return r;
}

std::optional<FpMatrix> reduce_mod(const RatMatrix& m, std::uint64_t prime) {
  std::vector<Fp> e;
  e.reserve(m.entries().size());
  for (const auto& x : m.entries()) {
    auto v = Fp::from_rat(x, prime);
    if (!v) return std::nullopt;
    e.push_back(*v);
  }
  return FpMatrix(m.rows(), m.cols(), std::move(e));
}

}  // namespace nodal
