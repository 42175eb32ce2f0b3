#include "nodal/core/poly.hpp"

namespace nodal {

std::optional<PolyFp> reduce_mod(const MultiPoly& p, std::uint64_t prime) {
  std::vector<Term<Fp>> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto c = Fp::from_rat(t.coeff, prime);
    if (!c) return std::nullopt;
    ts.push_back({t.mono, *c});
  }
  return PolyFp::from_terms(p.arity(), std::move(ts));
}

std::vector<Rat> gradient_at(const MultiPoly& p, std::span<const Rat> point) {
  std::vector<Rat> g;
  g.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) g.push_back(p.derive(i).eval(point));
  return g;
}

std::vector<Rat> hessian_at(const MultiPoly& p, std::span<const Rat> point) {
  const std::size_t n = p.arity();
  std::vector<Rat> h(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly di = p.derive(i);
    for (std::size_t j = i; j < n; ++j) {
      h[i * n + j] = di.derive(j).eval(point);
      h[j * n + i] = h[i * n + j];
    }
  }
  return h;
}

}  // namespace nodal
