#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace nodal {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rat {
 public:
  Rat() = default;

  template <std::integral I>
  Rat(I value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  explicit Rat(const mpz_class& integer) : q_(integer) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "-p", or "p/q" with decimal integers. Throws FormatError.
  static Rat parse(std::string_view text);

  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] const mpq_class& value() const { return q_; }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] Rat abs() const { return Rat(mpq_class(::abs(q_))); }
  [[nodiscard]] Rat inverse() const;

  /// Exact square root when this is the square of a rational.
  [[nodiscard]] std::optional<Rat> sqrt() const;

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

/// Coefficient-field hooks used by the generic polynomial and matrix code.
template <typename C>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static Rat from_int(long v, const Rat& /*like*/) { return Rat(v); }
  static Rat one_like(const Rat& /*like*/) { return Rat(1); }
  static Rat zero_like(const Rat& /*like*/) { return Rat(0); }
};

}  // namespace nodal
