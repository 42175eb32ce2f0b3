#include "nodal/core/groebner.hpp"

namespace nodal {

namespace detail {

namespace {

// Polynomial with integer coefficients, kept primitive between reductions.
// Only used as the exact coefficient domain of the Groebner engine.
struct ZTerm {
  Monomial mono;
  mpz_class c;
};

class ZPoly {
 public:
  explicit ZPoly(std::size_t arity = 0) : arity_(arity) {}
  ZPoly(std::size_t arity, std::vector<ZTerm> terms) : arity_(arity), terms_(std::move(terms)) {}

  [[nodiscard]] std::size_t arity() const { return arity_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const { return terms_.size() == 1 && terms_.front().mono.degree() == 0; }
  [[nodiscard]] const Monomial& leading_monomial() const { return terms_.front().mono; }
  [[nodiscard]] const mpz_class& leading_coeff() const { return terms_.front().c; }
  [[nodiscard]] const std::vector<ZTerm>& terms() const { return terms_; }
  std::vector<ZTerm>& terms() { return terms_; }

 private:
  std::size_t arity_;
  std::vector<ZTerm> terms_;
};

ZPoly from_rat(const MultiPoly& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.value().get_den_mpz_t());
  std::vector<ZTerm> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    mpz_class c = t.coeff.value().get_num() * (l / t.coeff.value().get_den());
    ts.push_back({t.mono, std::move(c)});
  }
  return ZPoly(p.arity(), std::move(ts));
}

MultiPoly to_rat(const ZPoly& p) {
  std::vector<Term<Rat>> ts;
  ts.reserve(p.terms().size());
  for (const auto& t : p.terms()) ts.push_back({t.mono, Rat(t.c)});
  return MultiPoly::from_terms(p.arity(), std::move(ts));
}

// gcd of all coefficients, stopping early at 1.
mpz_class content(const std::vector<ZTerm>& a, const std::vector<ZTerm>& b = {}) {
  mpz_class g = 0;
  for (const auto* v : {&a, &b}) {
    for (const auto& t : *v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return g;
    }
  }
  return g;
}

void divide_exact(std::vector<ZTerm>& v, const mpz_class& g) {
  for (auto& t : v) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

void make_primitive(ZPoly& p) {
  if (p.is_zero()) return;
  const mpz_class g = content(p.terms());
  if (g != 1) divide_exact(p.terms(), g);
  if (sgn(p.leading_coeff()) < 0) {
    for (auto& t : p.terms()) t.c = -t.c;
  }
}

// a * (f[from..] * mf) - b * (g * mg), both operands sorted descending.
std::vector<ZTerm> lin_comb(const mpz_class& a, std::span<const ZTerm> f, const Monomial& mf, const mpz_class& b,
                            std::span<const ZTerm> g, const Monomial& mg) {
  std::vector<ZTerm> out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  mpz_class c;
  while (i < f.size() || j < g.size()) {
    if (j == g.size() || (i < f.size() && f[i].mono * mf > g[j].mono * mg)) {
      mpz_mul(c.get_mpz_t(), a.get_mpz_t(), f[i].c.get_mpz_t());
      out.push_back({f[i].mono * mf, c});
      ++i;
    } else if (i == f.size() || g[j].mono * mg > f[i].mono * mf) {
      mpz_mul(c.get_mpz_t(), b.get_mpz_t(), g[j].c.get_mpz_t());
      out.push_back({g[j].mono * mg, -c});
      ++j;
    } else {
      mpz_mul(c.get_mpz_t(), a.get_mpz_t(), f[i].c.get_mpz_t());
      mpz_submul(c.get_mpz_t(), b.get_mpz_t(), g[j].c.get_mpz_t());
      if (sgn(c) != 0) out.push_back({f[i].mono * mf, c});
      ++i;
      ++j;
    }
  }
  return out;
}

ZPoly engine_normalize(const ZPoly& p) {
  ZPoly out = p;
  make_primitive(out);
  return out;
}

ZPoly engine_spoly(const ZPoly& f, const ZPoly& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), f.leading_coeff().get_mpz_t(), g.leading_coeff().get_mpz_t());
  const mpz_class a = g.leading_coeff() / gamma;
  const mpz_class b = f.leading_coeff() / gamma;
  return ZPoly(f.arity(), lin_comb(a, f.terms(), l.divided_by(f.leading_monomial()), b, g.terms(),
                                   l.divided_by(g.leading_monomial())));
}

// Full pseudo-reduction; the result is a primitive integer multiple of the
// normal form over Q.
ZPoly engine_reduce(const ZPoly& f, std::span<const ZPoly> divisors) {
  std::vector<ZTerm> p = f.terms();
  std::size_t head = 0;
  std::vector<ZTerm> rem;
  std::size_t steps = 0;
  mpz_class gamma;
  const Monomial one;
  while (head < p.size()) {
    const ZTerm& lt = p[head];
    const ZPoly* hit = nullptr;
    for (const auto& g : divisors) {
      if (!g.is_zero() && g.leading_monomial().divides(lt.mono)) {
        hit = &g;
        break;
      }
    }
    if (hit == nullptr) {
      rem.push_back(std::move(p[head]));
      ++head;
      continue;
    }
    mpz_gcd(gamma.get_mpz_t(), lt.c.get_mpz_t(), hit->leading_coeff().get_mpz_t());
    const mpz_class a = hit->leading_coeff() / gamma;
    const mpz_class b = lt.c / gamma;
    const Monomial m = lt.mono.divided_by(hit->leading_monomial());
    p = lin_comb(a, std::span<const ZTerm>(p).subspan(head), one, b, hit->terms(), m);
    head = 0;
    if (a != 1) {
      for (auto& t : rem) t.c *= a;
    }
    if (++steps % 8 == 0) {
      const mpz_class g = content(rem, p);
      if (g > 1) {
        divide_exact(rem, g);
        divide_exact(p, g);
      }
    }
  }
  ZPoly out(f.arity(), std::move(rem));
  make_primitive(out);
  return out;
}

std::vector<ZPoly> to_integer(const std::vector<MultiPoly>& gens) {
  std::vector<ZPoly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(from_rat(g));
  return out;
}

GroebnerResult<Rat> to_result(EngineRun<ZPoly>&& z) {
  EngineRun<MultiPoly> r;
  r.status = z.status;
  r.pairs_reduced = z.pairs_reduced;
  r.zero_reductions = z.zero_reductions;
  r.unit = z.unit;
  for (const auto& p : z.basis) r.basis.push_back(to_rat(p).monic());
  return finish<Rat>(std::move(r));
}

}  // namespace

}  // namespace detail

GroebnerResult<Rat> groebner_basis(const std::vector<MultiPoly>& gens, const GroebnerOptions& opts) {
  if (!gens.empty()) {
    for (const auto& g : gens) {
      if (g.arity() != gens.front().arity()) throw ArityMismatch(gens.front().arity(), g.arity());
    }
  }
  const int cap = opts.degree_cap.value_or(default_degree_cap<Rat>(gens));
  const auto integral = detail::to_integer(gens);
  if (opts.prefilter_prime) {
    std::vector<PolyFp> modular;
    bool good = true;
    for (const auto& g : gens) {
      auto r = reduce_mod(g, *opts.prefilter_prime);
      if (!r || r->is_zero() != g.is_zero()) {
        good = false;
        break;
      }
      modular.push_back(std::move(*r));
    }
    if (good) {
      BuchbergerTrace trace;
      const auto mod = buchberger(modular, cap, &trace);
      if (mod.is_unit_ideal()) {
        auto replayed = detail::Engine<detail::ZPoly>(cap, nullptr, &trace).run(integral);
        if (replayed && replayed->unit) return detail::to_result(std::move(*replayed));
      }
    }
  }
  return detail::to_result(*detail::Engine<detail::ZPoly>(cap, nullptr, nullptr).run(integral));
}

bool ideal_contains(const std::vector<MultiPoly>& basis, const MultiPoly& f) {
  return normal_form<Rat>(f, basis).is_zero();
}

bool is_groebner_basis(const std::vector<MultiPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form<Rat>(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace nodal
