#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nodal {

inline constexpr std::size_t kMaxArity = 8;

/// Exponent vector of a monomial. Entries past the ring's arity are zero.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::span<const int> exps);

  static Monomial variable(std::size_t var, int power = 1);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int operator[](std::size_t i) const { return e_[i]; }
  [[nodiscard]] std::vector<int> exponents(std::size_t arity) const;
  /// True when no exponent at index >= arity is set.
  [[nodiscard]] bool fits(std::size_t arity) const;

  [[nodiscard]] bool divides(const Monomial& other) const;
  [[nodiscard]] bool coprime(const Monomial& other) const;
  /// Caller guarantees divisor.divides(*this).
  [[nodiscard]] Monomial divided_by(const Monomial& divisor) const;
  [[nodiscard]] Monomial lcm(const Monomial& other) const;
  [[nodiscard]] Monomial with_exponent(std::size_t var, int value) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  /// Graded lexicographic order: total degree first, then lex with
  /// variable 0 largest.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (std::size_t i = 0; i < kMaxArity; ++i) {
      if (auto c = a.e_[i] <=> b.e_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::array<Exponent, kMaxArity> e_{};
  int degree_ = 0;
};

/// All monomials of exact degree `degree` in `arity` variables, in
/// descending graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t arity, int degree);

}  // namespace nodal
