#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nodal/core/poly.hpp"

namespace nodal {

enum class GroebnerStatus { Complete, Inconclusive };

template <typename C>
struct GroebnerResult {
  GroebnerStatus status = GroebnerStatus::Complete;
  /// Reduced, monic, sorted by ascending leading monomial when Complete; the
  /// partial basis reached so far when Inconclusive.
  std::vector<Poly<C>> basis;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;

  [[nodiscard]] bool complete() const { return status == GroebnerStatus::Complete; }
  [[nodiscard]] bool is_unit_ideal() const {
    return complete() && basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
  }
};

/// Record of one Buchberger run: for each S-pair taken from the queue, in
/// order, whether its remainder was nonzero and, if so, its leading monomial.
struct BuchbergerTrace {
  struct Step {
    bool nonzero = false;
    Monomial lead;
  };
  std::vector<Monomial> generator_leads;
  std::vector<Step> steps;
};

/// 2 * (max generator degree) + 4.
template <typename C>
int default_degree_cap(std::span<const Poly<C>> gens) {
  int d = 0;
  for (const auto& g : gens) {
    if (!g.is_zero()) d = std::max(d, g.degree().value());
  }
  return 2 * d + 4;
}

/// Fully reduced remainder of f modulo the list `divisors`.
template <typename C>
Poly<C> normal_form(const Poly<C>& f, std::span<const Poly<C>> divisors) {
  Poly<C> p = f;
  std::vector<Term<C>> rem;
  while (!p.is_zero()) {
    const Term<C> lt = p.leading_term();
    const Poly<C>* hit = nullptr;
    for (const auto& g : divisors) {
      if (!g.is_zero() && g.leading_monomial().divides(lt.mono)) {
        hit = &g;
        break;
      }
    }
    if (hit != nullptr) {
      p.subtract_multiple(*hit, lt.mono.divided_by(hit->leading_monomial()), lt.coeff / hit->leading_coeff());
    } else {
      rem.push_back(lt);
      p = p - Poly<C>::monomial(p.arity(), lt.mono, lt.coeff);
    }
  }
  return Poly<C>::from_terms(f.arity(), std::move(rem));
}

template <typename C>
Poly<C> s_polynomial(const Poly<C>& f, const Poly<C>& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Poly<C> a = f.times_monomial(l.divided_by(f.leading_monomial())).scaled(f.leading_coeff().inverse());
  a.subtract_multiple(g, l.divided_by(g.leading_monomial()), g.leading_coeff().inverse());
  return a;
}

namespace detail {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

template <typename P>
struct EngineRun {
  GroebnerStatus status = GroebnerStatus::Complete;
  std::vector<P> basis;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  /// A nonzero constant was reached; `basis` holds it alone.
  bool unit = false;
};

// Hooks for polynomials over a field.
template <typename C>
Poly<C> engine_normalize(const Poly<C>& p) {
  return p.monic();
}
template <typename C>
Poly<C> engine_spoly(const Poly<C>& f, const Poly<C>& g) {
  return s_polynomial(f, g);
}
template <typename C>
Poly<C> engine_reduce(const Poly<C>& f, std::span<const Poly<C>> divisors) {
  return normal_form<C>(f, divisors);
}

/// Buchberger with the Gebauer-Moeller criteria and normal selection. The
/// pair order depends only on leading monomials, so a run over one
/// coefficient domain can be replayed step for step over another.
template <typename P>
class Engine {
 public:
  Engine(int degree_cap, BuchbergerTrace* record, const BuchbergerTrace* replay)
      : cap_(degree_cap), record_(record), replay_(replay) {}

  /// nullopt only in replay mode, when the run diverges from the trace.
  std::optional<EngineRun<P>> run(const std::vector<P>& gens) {
    EngineRun<P> res;
    if (gens.empty()) return res;
    const std::size_t arity = gens.front().arity();
    for (const auto& g : gens) {
      if (g.arity() != arity) throw ArityMismatch(arity, g.arity());
    }
    std::vector<Monomial> leads;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.is_constant()) return unit(g);
      leads.push_back(g.leading_monomial());
      insert(engine_normalize(g));
    }
    if (record_ != nullptr) record_->generator_leads = leads;
    if (replay_ != nullptr && replay_->generator_leads != leads) return std::nullopt;

    std::size_t step = 0;
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        if (a.lcm != b.lcm) return a.lcm < b.lcm;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
      });
      const Pair pr = *best;
      pairs_.erase(best);
      if (pr.lcm.degree() > cap_) {
        res.status = GroebnerStatus::Inconclusive;
        res.basis = active_polys();
        return res;
      }

      if (replay_ != nullptr) {
        if (step >= replay_->steps.size()) return std::nullopt;
        const auto& expected = replay_->steps[step++];
        if (!expected.nonzero) {
          ++res.zero_reductions;
          continue;
        }
        P h = reduce_pair(pr);
        ++res.pairs_reduced;
        if (h.is_zero() || h.leading_monomial() != expected.lead) return std::nullopt;
        if (h.is_constant()) return unit(h);
        insert(engine_normalize(h));
        continue;
      }

      P h = reduce_pair(pr);
      ++res.pairs_reduced;
      if (record_ != nullptr) {
        record_->steps.push_back({!h.is_zero(), h.is_zero() ? Monomial() : h.leading_monomial()});
      }
      if (h.is_zero()) {
        ++res.zero_reductions;
        continue;
      }
      if (h.is_constant()) return unit(h);
      insert(engine_normalize(h));
    }
    res.basis = active_polys();
    return res;
  }

 private:
  EngineRun<P> unit(const P& constant) {
    EngineRun<P> res;
    res.unit = true;
    res.basis.push_back(engine_normalize(constant));
    return res;
  }

  std::vector<P> active_polys() const {
    std::vector<P> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) out.push_back(polys_[k]);
    }
    return out;
  }

  P reduce_pair(const Pair& pr) {
    const P s = engine_spoly(polys_[pr.i], polys_[pr.j]);
    const std::vector<P> divisors = active_polys();
    return engine_reduce(s, std::span<const P>(divisors));
  }

  const Monomial& lead(std::size_t k) const { return polys_[k].leading_monomial(); }

  // Gebauer-Moeller pair update.
  void insert(P h_poly) {
    const std::size_t h = polys_.size();
    polys_.push_back(std::move(h_poly));
    active_.push_back(true);
    const Monomial& lh = lead(h);

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g]) candidates.push_back({g, h, lh.lcm(lead(g))});
    }
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool keep = lh.coprime(lead(p.i));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b) {
          if (candidates[b].lcm.divides(p.lcm)) keep = false;
        }
        for (std::size_t b = 0; b < kept.size() && keep; ++b) {
          if (kept[b].lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (const auto& p : kept) {
      if (!lh.coprime(lead(p.i))) fresh.push_back(p);
    }
    std::erase_if(pairs_, [&](const Pair& p) {
      return lh.divides(p.lcm) && lead(p.i).lcm(lh) != p.lcm && lh.lcm(lead(p.j)) != p.lcm;
    });
    pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g] && lh.divides(lead(g))) active_[g] = false;
    }
  }

  int cap_;
  BuchbergerTrace* record_;
  const BuchbergerTrace* replay_;
  std::vector<P> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

/// Minimal, interreduced, monic, ascending by leading monomial.
template <typename C>
std::vector<Poly<C>> reduce_basis(std::vector<Poly<C>> g) {
  std::sort(g.begin(), g.end(), [](const Poly<C>& a, const Poly<C>& b) {
    return a.leading_monomial() < b.leading_monomial();
  });
  std::vector<Poly<C>> minimal;
  for (const auto& p : g) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Poly<C>& q) {
      return q.leading_monomial().divides(p.leading_monomial());
    });
    if (!redundant) minimal.push_back(p);
  }
  std::vector<Poly<C>> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Poly<C>> others;
    for (std::size_t m = 0; m < minimal.size(); ++m) {
      if (m != k) others.push_back(minimal[m]);
    }
    // The leading term is irreducible by the others, so only the tail changes.
    reduced.push_back(normal_form<C>(minimal[k], others).monic());
  }
  return reduced;
}

template <typename C>
GroebnerResult<C> finish(EngineRun<Poly<C>>&& run) {
  GroebnerResult<C> res;
  res.status = run.status;
  res.pairs_reduced = run.pairs_reduced;
  res.zero_reductions = run.zero_reductions;
  if (run.unit) {
    const auto& c = run.basis.front();
    res.basis.push_back(Poly<C>::constant(c.arity(), FieldTraits<C>::one_like(c.leading_coeff())));
  } else if (run.status == GroebnerStatus::Complete) {
    res.basis = reduce_basis(std::move(run.basis));
  } else {
    res.basis = std::move(run.basis);
  }
  return res;
}

}  // namespace detail

/// Buchberger's algorithm in graded-lex order over a field. Inconclusive
/// when an S-pair of degree above `degree_cap` would have to be reduced.
template <typename C>
GroebnerResult<C> buchberger(const std::vector<Poly<C>>& gens, int degree_cap,
                             BuchbergerTrace* record = nullptr) {
  return detail::finish<C>(*detail::Engine<Poly<C>>(degree_cap, record, nullptr).run(gens));
}

struct GroebnerOptions {
  std::optional<int> degree_cap;
  /// Prime for the modular pre-filter; nullopt disables it.
  std::optional<std::uint64_t> prefilter_prime;
};

/// Reduced Groebner basis over Q, computed fraction-free on primitive integer
/// polynomials. With a prefilter prime, the computation is first run mod p;
/// if that proves the unit ideal, the exact run replays only the S-pairs that
/// were nonzero mod p, and accepts the result only if it reaches a nonzero
/// constant exactly. Anything else falls back to the full exact computation.
GroebnerResult<Rat> groebner_basis(const std::vector<MultiPoly>& gens, const GroebnerOptions& opts = {});

/// True if every S-polynomial of `basis` reduces to zero modulo `basis`.
bool is_groebner_basis(const std::vector<MultiPoly>& basis);

/// True if f reduces to zero modulo a Groebner basis.
bool ideal_contains(const std::vector<MultiPoly>& basis, const MultiPoly& f);

}  // namespace nodal
