#include <algorithm>
#include <map>

#include "nodal/singularities/singularities.hpp"

namespace nodal::sing {

namespace {

constexpr long kMaxRootSearch = 1'000'000'000'000L;

// Monomials outside the leading-monomial ideal; nullopt if infinitely many.
std::optional<std::vector<Monomial>> standard_monomials(const std::vector<MultiPoly>& gb) {
  if (gb.empty()) return std::nullopt;
  const std::size_t n = gb.front().arity();
  std::vector<int> bound(n, -1);
  for (const auto& g : gb) {
    const Monomial& m = g.leading_monomial();
    for (std::size_t i = 0; i < n; ++i) {
      if (m.degree() == m[i] && (bound[i] < 0 || m[i] < bound[i])) bound[i] = m[i];
    }
  }
  if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return std::nullopt;
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      const Monomial m{std::span<const int>(e)};
      const bool reducible = std::any_of(gb.begin(), gb.end(), [&](const MultiPoly& g) {
        return g.leading_monomial().divides(m);
      });
      if (!reducible) out.push_back(m);
      return;
    }
    for (int k = 0; k < bound[i]; ++k) {
      e[i] = k;
      self(self, i + 1);
    }
    e[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Monic generator of I n Q[v], found as the first linear dependency among
// the normal forms of 1, v, v^2, ... Coefficients ascending.
std::vector<Rat> eliminant(const std::vector<MultiPoly>& gb, const std::vector<Monomial>& basis, std::size_t v) {
  const std::size_t n = gb.front().arity();
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

  struct Row {
    std::vector<Rat> coords;
    std::vector<Rat> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  MultiPoly power = MultiPoly::constant(n, Rat(1));
  const MultiPoly var = MultiPoly::variable(n, v);
  for (std::size_t k = 0; k <= basis.size(); ++k) {
    if (k > 0) power = normal_form<Rat>(power * var, gb);
    std::vector<Rat> coords(basis.size(), Rat(0));
    for (const auto& t : power.terms()) coords[index.at(t.mono)] = t.coeff;
    std::vector<Rat> combo(k + 1, Rat(0));
    combo[k] = Rat(1);
    for (const auto& r : rows) {
      if (coords[r.pivot].is_zero()) continue;
      const Rat factor = coords[r.pivot] / r.coords[r.pivot];
      for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= factor * r.coords[i];
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= factor * r.combo[i];
    }
    auto nz = std::find_if(coords.begin(), coords.end(), [](const Rat& x) { return !x.is_zero(); });
    if (nz == coords.end()) return combo;
    const auto pivot = static_cast<std::size_t>(nz - coords.begin());
    rows.push_back({std::move(coords), std::move(combo), pivot});
  }
  throw Error("no univariate eliminant found for a zero-dimensional ideal");
}

std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class n = abs(value);
  std::vector<std::pair<mpz_class, int>> factors;
  for (mpz_class p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) factors.emplace_back(p, k);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> out = {1};
  for (const auto& [p, k] : factors) {
    const std::size_t sz = out.size();
    mpz_class pk = 1;
    for (int e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

Rat eval_univariate(const std::vector<Rat>& c, const Rat& x) {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divides by (x - r), assuming r is a root.
std::vector<Rat> deflate(const std::vector<Rat>& c, const Rat& r) {
  std::vector<Rat> q(c.size() - 1, Rat(0));
  Rat carry(0);
  for (std::size_t i = c.size() - 1; i > 0; --i) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

struct RootSearch {
  std::vector<Rat> roots;
  bool split = false;
};

// Distinct rational roots; `split` when they account for the whole degree.
std::optional<RootSearch> rational_roots(std::vector<Rat> c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  RootSearch out;
  while (c.size() > 1 && c.front().is_zero()) {
    if (std::find(out.roots.begin(), out.roots.end(), Rat(0)) == out.roots.end()) out.roots.emplace_back(0);
    c.erase(c.begin());
  }
  if (c.size() <= 1) {
    out.split = true;
    return out;
  }
  mpz_class l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  const mpz_class a0 = (c.front() * Rat(l)).num();
  const mpz_class an = (c.back() * Rat(l)).num();
  if (abs(a0) > kMaxRootSearch || abs(an) > kMaxRootSearch) return std::nullopt;
  const auto ps = divisors(a0);
  const auto qs = divisors(an);
  std::vector<Rat> cur = c;
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      for (int s : {1, -1}) {
        const Rat cand(mpz_class(p * s), q);
        if (std::find(out.roots.begin(), out.roots.end(), cand) != out.roots.end()) continue;
        if (!eval_univariate(c, cand).is_zero()) continue;
        out.roots.push_back(cand);
        while (cur.size() > 1 && eval_univariate(cur, cand).is_zero()) cur = deflate(cur, cand);
      }
    }
  }
  out.split = cur.size() == 1;
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

RationalSolutions solve(const std::vector<MultiPoly>& gb, const GroebnerOptions& opts, int depth) {
  RationalSolutions out;
  if (gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero()) {
    out.complete = true;
    return out;
  }
  const auto basis = standard_monomials(gb);
  if (!basis || depth > static_cast<int>(kMaxArity)) return out;
  const std::size_t n = gb.front().arity();

  Point fixed(n, Rat(0));
  for (std::size_t v = 0; v < n; ++v) {
    const auto e = eliminant(gb, *basis, v);
    if (e.size() == 2) {
      fixed[v] = -e[0] / e[1];
      continue;
    }
    const auto roots = rational_roots(e);
    if (!roots) return out;
    bool complete = roots->split;
    for (const auto& r : roots->roots) {
      std::vector<MultiPoly> gens = gb;
      gens.push_back(MultiPoly::variable(n, v) - MultiPoly::constant(n, r));
      const auto sub_gb = groebner_basis(gens, opts);
      if (!sub_gb.complete()) {
        complete = false;
        continue;
      }
      auto sub = solve(sub_gb.basis, opts, depth + 1);
      complete = complete && sub.complete;
      out.points.insert(out.points.end(), sub.points.begin(), sub.points.end());
    }
    out.complete = complete;
    return out;
  }
  // Every coordinate is determined: a single point.
  out.points.push_back(fixed);
  out.complete = true;
  return out;
}

}  // namespace

std::optional<std::size_t> quotient_dimension(const std::vector<MultiPoly>& gb) {
  const auto basis = standard_monomials(gb);
  if (!basis) return std::nullopt;
  return basis->size();
}

RationalSolutions rational_points(const std::vector<MultiPoly>& gb, const GroebnerOptions& opts) {
  if (gb.empty()) return {};
  auto out = solve(gb, opts, 0);
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

}  // namespace nodal::sing
