#include "nodal/core/rat.hpp"

#include <cctype>

#include "nodal/core/error.hpp"

namespace nodal {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num_part) || !is_decimal_integer(den_part) ||
      den_part.front() == '-' || den_part.front() == '+') {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num_part);
  if (n.front() == '+') n.erase(0, 1);
  const mpz_class num(n, 10);
  const mpz_class den(std::string(den_part), 10);
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

Rat Rat::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  return Rat(mpq_class(1 / q_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw PreconditionError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::optional<Rat> Rat::sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = num();
  const mpz_class d = den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rat(rn, rd);
}

}  // namespace nodal
