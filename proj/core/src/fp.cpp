#include "nodal/core/fp.hpp"

#include <cstdlib>
#include <string>

#include "nodal/core/error.hpp"

namespace nodal {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t prefilter_prime_from_env() {
  const char* raw = std::getenv("NODAL_DEGEN_PRIME");
  if (raw == nullptr || *raw == '\0') return kDefaultPrime;
  std::uint64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(raw, &used);
    if (raw[used] != '\0') throw std::invalid_argument(raw);
  } catch (const std::exception&) {
    throw FormatError(std::string("NODAL_DEGEN_PRIME is not an integer: ") + raw);
  }
  if (p >= (1ULL << 32) || !is_prime(p)) {
    throw FormatError("NODAL_DEGEN_PRIME must be a prime below 2^32, got " + std::to_string(p));
  }
  return p;
}

Fp Fp::from_int(long v, std::uint64_t prime) {
  const auto p = static_cast<long long>(prime);
  long long r = static_cast<long long>(v) % p;
  if (r < 0) r += p;
  return Fp(static_cast<std::uint64_t>(r), prime);
}

std::optional<Fp> Fp::from_rat(const Rat& r, std::uint64_t prime) {
  const mpz_class p(static_cast<unsigned long>(prime));
  mpz_class n = r.num() % p;
  mpz_class d = r.den() % p;
  if (n < 0) n += p;
  if (d == 0) return std::nullopt;
  const Fp fn(n.get_ui(), prime);
  const Fp fd(d.get_ui(), prime);
  return fn / fd;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw PreconditionError("inverse of zero in F_p");
  // Fermat: v^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = v_;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1U) result = (result * base) % p_;
    base = (base * base) % p_;
    e >>= 1U;
  }
  return Fp(result, p_);
}

}  // namespace nodal
