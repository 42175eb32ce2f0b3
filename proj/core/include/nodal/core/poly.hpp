#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nodal/core/error.hpp"
#include "nodal/core/fp.hpp"
#include "nodal/core/monomial.hpp"
#include "nodal/core/rat.hpp"

namespace nodal {

/// Total degree of a polynomial. The zero polynomial has degree minus
/// infinity, which is a distinct state rather than a negative integer.
class Degree {
 public:
  explicit constexpr Degree(int value) : value_(value), minus_inf_(false) {}
  static constexpr Degree minus_infinity() { return Degree(); }

  [[nodiscard]] constexpr bool is_minus_infinity() const { return minus_inf_; }
  /// Throws PreconditionError on minus infinity.
  [[nodiscard]] int value() const {
    if (minus_inf_) throw PreconditionError("degree of the zero polynomial has no integer value");
    return value_;
  }

  friend constexpr bool operator==(const Degree& a, const Degree& b) {
    return a.minus_inf_ == b.minus_inf_ && (a.minus_inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.minus_inf_ || b.minus_inf_) return b.minus_inf_ <=> a.minus_inf_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (a.minus_inf_ || b.minus_inf_) return minus_infinity();
    return Degree(a.value_ + b.value_);
  }

 private:
  constexpr Degree() = default;
  int value_ = 0;
  bool minus_inf_ = true;
};

template <typename C>
struct Term {
  Monomial mono;
  C coeff;
};

/// Sparse multivariate polynomial over a field C, stored in canonical form:
/// nonzero coefficients, distinct monomials, descending graded-lex order.
template <typename C>
class Poly {
 public:
  using Coeff = C;
  using Traits = FieldTraits<C>;

  explicit Poly(std::size_t arity = 0) : arity_(check_arity(arity)) {}

  static Poly constant(std::size_t arity, const C& c) {
    Poly p(arity);
    if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
    return p;
  }

  static Poly variable(std::size_t arity, std::size_t var, const C& one = C(1)) {
    if (var >= arity) throw PreconditionError("variable index " + std::to_string(var) + " out of range");
    Poly p(arity);
    p.terms_.push_back({Monomial::variable(var), one});
    return p;
  }

  static Poly monomial(std::size_t arity, const Monomial& m, const C& c) {
    if (!m.fits(arity)) throw PreconditionError("monomial does not fit the ring arity");
    Poly p(arity);
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  /// Canonicalizes an arbitrary term list (merges duplicates, drops zeros, sorts).
  static Poly from_terms(std::size_t arity, std::vector<Term<C>> terms) {
    Poly p(arity);
    for (const auto& t : terms) {
      if (!t.mono.fits(arity)) throw PreconditionError("term exponent vector longer than arity");
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term<C>& a, const Term<C>& b) { return a.mono > b.mono; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
        if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      } else if (!t.coeff.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  static Poly from_exponents(std::size_t arity,
                             std::initializer_list<std::pair<std::vector<int>, C>> terms) {
    std::vector<Term<C>> ts;
    for (const auto& [e, c] : terms) {
      if (e.size() != arity) throw ArityMismatch(arity, e.size());
      ts.push_back({Monomial(std::span<const int>(e)), c});
    }
    return from_terms(arity, std::move(ts));
  }

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] const std::vector<Term<C>>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.degree() == 0);
  }

  [[nodiscard]] Degree degree() const {
    return terms_.empty() ? Degree::minus_infinity() : Degree(terms_.front().mono.degree());
  }
  /// Lowest total degree among the terms: the order of vanishing at the origin.
  [[nodiscard]] Degree min_degree() const {
    if (terms_.empty()) return Degree::minus_infinity();
    int lo = terms_.front().mono.degree();
    for (const auto& t : terms_) lo = std::min(lo, t.mono.degree());
    return Degree(lo);
  }
  [[nodiscard]] bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term<C>& t) {
      return t.mono.degree() == terms_.front().mono.degree();
    });
  }

  [[nodiscard]] const Term<C>& leading_term() const {
    if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
    return terms_.front();
  }
  [[nodiscard]] const Monomial& leading_monomial() const { return leading_term().mono; }
  [[nodiscard]] const C& leading_coeff() const { return leading_term().coeff; }

  /// Coefficient of m (zero if absent).
  [[nodiscard]] C coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term<C>& t, const Monomial& key) { return t.mono > key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return zero_coeff();
  }

  [[nodiscard]] bool uses_variable(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term<C>& t) { return t.mono[var] != 0; });
  }

  /// Part of total degree exactly k.
  [[nodiscard]] Poly homogeneous_part(int k) const {
    Poly out(arity_);
    for (const auto& t : terms_) {
      if (t.mono.degree() == k) out.terms_.push_back(t);
    }
    return out;
  }

  // ---- ring operations -------------------------------------------------

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
  friend Poly operator-(const Poly& a) {
    Poly out = a;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same_arity(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.arity_);
    std::map<Monomial, C, std::greater<>> acc;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, ta.coeff * tb.coeff);
        if (!inserted) it->second += ta.coeff * tb.coeff;
      }
    }
    Poly out(a.arity_);
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (!c.is_zero()) out.terms_.push_back({m, std::move(c)});
    }
    return out;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  [[nodiscard]] Poly scaled(const C& c) const {
    if (c.is_zero()) return Poly(arity_);
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }
  [[nodiscard]] Poly times_monomial(const Monomial& m) const {
    Poly out = *this;
    for (auto& t : out.terms_) t.mono = t.mono * m;
    return out;
  }
  [[nodiscard]] Poly pow(unsigned k) const {
    Poly result = constant(arity_, one_coeff());
    Poly base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }
  /// Divides by the leading coefficient.
  [[nodiscard]] Poly monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coeff().inverse());
  }

  /// this -= c * m * g, in place, by a single sorted merge.
  void subtract_multiple(const Poly& g, const Monomial& m, const C& c) {
    std::vector<Term<C>> out;
    out.reserve(terms_.size() + g.terms_.size());
    auto it = terms_.begin();
    auto jt = g.terms_.begin();
    while (it != terms_.end() || jt != g.terms_.end()) {
      if (jt == g.terms_.end()) {
        out.push_back(std::move(*it++));
        continue;
      }
      const Monomial shifted = jt->mono * m;
      if (it == terms_.end() || shifted > it->mono) {
        out.push_back({shifted, -(c * jt->coeff)});
        ++jt;
      } else if (it->mono > shifted) {
        out.push_back(std::move(*it++));
      } else {
        C v = it->coeff - c * jt->coeff;
        if (!v.is_zero()) out.push_back({it->mono, std::move(v)});
        ++it;
        ++jt;
      }
    }
    terms_ = std::move(out);
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
  }

  // ---- calculus and substitution --------------------------------------

  /// Formal partial derivative with respect to variable `var`.
  [[nodiscard]] Poly derive(std::size_t var) const {
    if (var >= arity_) throw PreconditionError("derivative variable " + std::to_string(var) + " out of range");
    std::vector<Term<C>> out;
    for (const auto& t : terms_) {
      const int e = t.mono[var];
      if (e == 0) continue;
      C c = t.coeff * Traits::from_int(e, t.coeff);
      if (!c.is_zero()) out.push_back({t.mono.with_exponent(var, e - 1), std::move(c)});
    }
    // Lowering one exponent by one preserves the relative graded-lex order.
    Poly p(arity_);
    p.terms_ = std::move(out);
    return p;
  }

  [[nodiscard]] C eval(std::span<const C> point) const {
    if (point.size() != arity_) throw ArityMismatch(arity_, point.size());
    C sum = zero_coeff();
    for (const auto& t : terms_) {
      C v = t.coeff;
      for (std::size_t i = 0; i < arity_; ++i) {
        for (int k = 0; k < t.mono[i]; ++k) v *= point[i];
      }
      sum += v;
    }
    return sum;
  }
  [[nodiscard]] C eval(const std::vector<C>& point) const { return eval(std::span<const C>(point)); }

  /// Returns q with q(v) = p(v + point).
  [[nodiscard]] Poly translate(std::span<const C> point) const {
    if (point.size() != arity_) throw ArityMismatch(arity_, point.size());
    Poly out = *this;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (point[i].is_zero()) continue;
      Poly shift = variable(arity_, i, one_coeff()) + constant(arity_, point[i]);
      out = out.substitute(i, shift);
    }
    return out;
  }
  [[nodiscard]] Poly translate(const std::vector<C>& point) const { return translate(std::span<const C>(point)); }

  /// Replaces variable `var` by `expr`.
  [[nodiscard]] Poly substitute(std::size_t var, const Poly& expr) const {
    check_same_arity(*this, expr);
    if (var >= arity_) throw PreconditionError("substitution variable " + std::to_string(var) + " out of range");
    // Group terms by the exponent of var, then use cached powers of expr.
    std::map<int, std::vector<Term<C>>> by_power;
    for (const auto& t : terms_) by_power[t.mono[var]].push_back({t.mono.with_exponent(var, 0), t.coeff});
    Poly out(arity_);
    Poly power = constant(arity_, one_coeff());
    int current = 0;
    for (auto& [e, ts] : by_power) {
      while (current < e) {
        power = power * expr;
        ++current;
      }
      out = out + from_terms(arity_, std::move(ts)) * power;
    }
    return out;
  }

  /// Sets variable `var` to the constant c.
  [[nodiscard]] Poly restrict(std::size_t var, const C& c) const {
    return substitute(var, constant(arity_, c));
  }

  /// Adds a trailing variable so every term reaches the total degree.
  [[nodiscard]] Poly homogenize() const {
    if (arity_ + 1 > kMaxArity) throw PreconditionError("homogenize would exceed the supported arity");
    Poly out(arity_ + 1);
    if (is_zero()) return out;
    const int d = degree().value();
    std::vector<Term<C>> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({t.mono.with_exponent(arity_, d - t.mono.degree()), t.coeff});
    return from_terms(arity_ + 1, std::move(ts));
  }

  /// Sets the homogeneous variable `var` to 1 and drops it from the ring.
  [[nodiscard]] Poly dehomogenize(std::size_t var) const {
    if (var >= arity_) throw PreconditionError("dehomogenize variable out of range");
    if (!is_homogeneous()) throw PreconditionError("dehomogenize requires a homogeneous polynomial");
    return drop_variable(var, one_coeff());
  }

  /// Substitutes `value` for `var` and removes it, reducing arity by one.
  [[nodiscard]] Poly drop_variable(std::size_t var, const C& value) const {
    if (var >= arity_) throw PreconditionError("variable index out of range");
    std::vector<Term<C>> ts;
    for (const auto& t : terms_) {
      std::vector<int> e = t.mono.exponents(arity_);
      C c = t.coeff;
      for (int k = 0; k < e[var]; ++k) c *= value;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(var));
      ts.push_back({Monomial(std::span<const int>(e)), std::move(c)});
    }
    return from_terms(arity_ - 1, std::move(ts));
  }

  /// Re-embeds into a ring of larger arity; variable i goes to index map[i].
  [[nodiscard]] Poly embed(std::size_t new_arity, std::span<const std::size_t> map) const {
    if (map.size() != arity_) throw ArityMismatch(arity_, map.size());
    std::vector<Term<C>> ts;
    for (const auto& t : terms_) {
      std::vector<int> e(new_arity, 0);
      for (std::size_t i = 0; i < arity_; ++i) {
        if (map[i] >= new_arity) throw PreconditionError("embedding index out of range");
        e[map[i]] += t.mono[i];
      }
      ts.push_back({Monomial(std::span<const int>(e)), t.coeff});
    }
    return from_terms(new_arity, std::move(ts));
  }

  /// Applies f to every coefficient; the result is re-canonicalized.
  template <typename D, typename F>
  [[nodiscard]] Poly<D> map_coeffs(F&& f) const {
    std::vector<Term<D>> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({t.mono, f(t.coeff)});
    return Poly<D>::from_terms(arity_, std::move(ts));
  }

  /// Human-readable form, e.g. "2*x^2*y - 1/2*z".
  [[nodiscard]] std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      std::ostringstream c;
      c << t.coeff;
      std::string cs = c.str();
      const bool negative = !cs.empty() && cs.front() == '-';
      if (negative) cs.erase(0, 1);
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < arity_; ++i) {
        if (t.mono[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
      }
      if (mono.empty()) {
        os << cs;
      } else if (cs == "1") {
        os << mono;
      } else {
        os << cs << "*" << mono;
      }
    }
    return os.str();
  }

 private:
  static std::size_t check_arity(std::size_t arity) {
    if (arity > kMaxArity) throw PreconditionError("arity exceeds the supported maximum");
    return arity;
  }
  static void check_same_arity(const Poly& a, const Poly& b) {
    if (a.arity_ != b.arity_) throw ArityMismatch(a.arity_, b.arity_);
  }

  [[nodiscard]] C one_coeff() const {
    if constexpr (std::is_same_v<C, Rat>) {
      return Rat(1);
    } else {
      if (terms_.empty()) return C();
      return Traits::one_like(terms_.front().coeff);
    }
  }
  [[nodiscard]] C zero_coeff() const {
    if constexpr (std::is_same_v<C, Rat>) {
      return Rat(0);
    } else {
      if (terms_.empty()) return C();
      return Traits::zero_like(terms_.front().coeff);
    }
  }

  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    check_same_arity(a, b);
    Poly out(a.arity_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto it = a.terms_.begin();
    auto jt = b.terms_.begin();
    while (it != a.terms_.end() || jt != b.terms_.end()) {
      if (jt == b.terms_.end() || (it != a.terms_.end() && it->mono > jt->mono)) {
        out.terms_.push_back(*it++);
      } else if (it == a.terms_.end() || jt->mono > it->mono) {
        out.terms_.push_back({jt->mono, subtract ? -jt->coeff : jt->coeff});
        ++jt;
      } else {
        C v = subtract ? it->coeff - jt->coeff : it->coeff + jt->coeff;
        if (!v.is_zero()) out.terms_.push_back({it->mono, std::move(v)});
        ++it;
        ++jt;
      }
    }
    return out;
  }

  std::size_t arity_ = 0;
  std::vector<Term<C>> terms_;
};

/// Polynomial with exact rational coefficients.
using MultiPoly = Poly<Rat>;
using PolyFp = Poly<Fp>;

/// Image mod p; nullopt when p divides some denominator.
std::optional<PolyFp> reduce_mod(const MultiPoly& p, std::uint64_t prime);

/// Second partial derivatives evaluated at a point, as a symmetric matrix in
/// row-major order.
std::vector<Rat> hessian_at(const MultiPoly& p, std::span<const Rat> point);
std::vector<Rat> gradient_at(const MultiPoly& p, std::span<const Rat> point);

}  // namespace nodal
