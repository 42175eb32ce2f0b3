#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>

#include "nodal/core/rat.hpp"

namespace nodal {

/// Default modulus of the prime-field mirror: 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

/// Reads NODAL_DEGEN_PRIME, falling back to kDefaultPrime. Throws FormatError if
/// the variable is set to something that is not a prime below 2^32.
std::uint64_t prefilter_prime_from_env();

bool is_prime(std::uint64_t n);

/// Element of Z/pZ for a word-size prime p < 2^32. Each element carries its
/// modulus so generic code can mint constants from an existing coefficient.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t prime) : v_(value % prime), p_(prime) {}

  static Fp from_int(long v, std::uint64_t prime);
  /// Image of a rational; nullopt when p divides the denominator.
  static std::optional<Fp> from_rat(const Rat& r, std::uint64_t prime);

  [[nodiscard]] std::uint64_t value() const { return v_; }
  [[nodiscard]] std::uint64_t prime() const { return p_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] Fp inverse() const;

  Fp& operator+=(const Fp& o) { v_ += o.v_; if (v_ >= p_) v_ -= p_; return *this; }
  Fp& operator-=(const Fp& o) { v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_; return *this; }
  Fp& operator*=(const Fp& o) { v_ = (v_ * o.v_) % p_; return *this; }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Fp& a, const Fp& b) { return a.v_ <=> b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = kDefaultPrime;
};

template <>
struct FieldTraits<Fp> {
  static Fp from_int(long v, const Fp& like) { return Fp::from_int(v, like.prime()); }
  static Fp one_like(const Fp& like) { return Fp(1, like.prime()); }
  static Fp zero_like(const Fp& like) { return Fp(0, like.prime()); }
};

}  // namespace nodal
