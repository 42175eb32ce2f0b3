#include "nodal/core/monomial.hpp"

#include <algorithm>
#include <limits>

#include "nodal/core/error.hpp"

namespace nodal {

namespace {

Monomial::Exponent checked_exponent(int v) {
  if (v < 0 || v > std::numeric_limits<Monomial::Exponent>::max()) {
    throw PreconditionError("monomial exponent out of range: " + std::to_string(v));
  }
  return static_cast<Monomial::Exponent>(v);
}

}  // namespace

Monomial::Monomial(std::span<const int> exps) {
  if (exps.size() > kMaxArity) {
    throw PreconditionError("arity " + std::to_string(exps.size()) + " exceeds the supported maximum");
  }
  for (std::size_t i = 0; i < exps.size(); ++i) {
    e_[i] = checked_exponent(exps[i]);
    degree_ += e_[i];
  }
}

Monomial Monomial::variable(std::size_t var, int power) {
  if (var >= kMaxArity) throw PreconditionError("variable index out of range");
  Monomial m;
  m.e_[var] = checked_exponent(power);
  m.degree_ = power;
  return m;
}

std::vector<int> Monomial::exponents(std::size_t arity) const {
  return {e_.begin(), e_.begin() + static_cast<std::ptrdiff_t>(arity)};
}

bool Monomial::fits(std::size_t arity) const {
  return std::all_of(e_.begin() + static_cast<std::ptrdiff_t>(arity), e_.end(),
                     [](Exponent x) { return x == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxArity; ++i) m.e_[i] = static_cast<Exponent>(e_[i] - divisor.e_[i]);
  m.degree_ = degree_ - divisor.degree_;
  return m;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    m.e_[i] = std::max(e_[i], other.e_[i]);
    m.degree_ += m.e_[i];
  }
  return m;
}

Monomial Monomial::with_exponent(std::size_t var, int value) const {
  Monomial m = *this;
  m.degree_ += value - m.e_[var];
  m.e_[var] = checked_exponent(value);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxArity; ++i) {
    m.e_[i] = checked_exponent(a.e_[i] + b.e_[i]);
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::vector<Monomial> monomials_of_degree(std::size_t arity, int degree) {
  if (arity > kMaxArity) throw PreconditionError("arity exceeds the supported maximum");
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (arity == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<int> e(arity, 0);
  // Enumerate compositions of `degree` into `arity` parts in lex-descending order.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == arity) {
      e[i] = left;
      out.emplace_back(std::span<const int>(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

}  // namespace nodal
