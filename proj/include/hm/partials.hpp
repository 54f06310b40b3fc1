#pragma once

// Symbolic first and mixed second Wirtinger partials of a rational function
// N / prod f_k^e_k, stored as the partials of N and of every factor f_k.
// Evaluation substitutes a point into those polynomials and combines them
// with the product and quotient rules, so no expanded derivative numerator
// is ever formed.

#include <hm/ratfn.hpp>

#include <array>
#include <memory>
#include <vector>

namespace hm {

// Value, d/dx_a, d/dy_b and d^2/dx_a dy_b of a scalar function at a point.
// Indices are 0-based (a = alpha - 1).
struct ScalarPartials {
  GaussianRational value;
  std::array<GaussianRational, 4> dx;
  std::array<GaussianRational, 4> dy;
  std::array<std::array<GaussianRational, 4>, 4> dxy;

  friend ScalarPartials operator*(const ScalarPartials& f, const ScalarPartials& g) {
    ScalarPartials r;
    r.value = f.value * g.value;
    for (int a = 0; a < 4; ++a) {
      r.dx[a] = f.dx[a] * g.value + f.value * g.dx[a];
      r.dy[a] = f.dy[a] * g.value + f.value * g.dy[a];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        r.dxy[a][b] = f.dxy[a][b] * g.value + f.dx[a] * g.dy[b] + f.dy[b] * g.dx[a] + f.value * g.dxy[a][b];
    return r;
  }
};

struct PolyPartials {
  MultiPoly value;
  std::array<MultiPoly, 4> dx;
  std::array<MultiPoly, 4> dy;
  std::array<std::array<MultiPoly, 4>, 4> dxy;

  static PolyPartials of(const MultiPoly& p) {
    PolyPartials r;
    r.value = p;
    for (int a = 1; a <= 4; ++a) {
      r.dx[a - 1] = derivative(p, xvar(a));
      r.dy[a - 1] = derivative(p, yvar(a));
    }
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b) r.dxy[a - 1][b - 1] = derivative(r.dx[a - 1], yvar(b));
    return r;
  }

  ScalarPartials at(PointEvaluator& eval) const {
    ScalarPartials r;
    r.value = eval(value);
    for (int a = 0; a < 4; ++a) {
      r.dx[a] = eval(dx[a]);
      r.dy[a] = eval(dy[a]);
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) r.dxy[a][b] = eval(dxy[a][b]);
    return r;
  }
};

using PartialsPtr = std::shared_ptr<const PolyPartials>;

// Scalar partials of 1 / prod f_k^e_k from the partials of each f_k, via the
// logarithmic derivative L = sum e_k log f_k:
//   d(1/g) = -L_a / g,  d d-bar (1/g) = (L_a L_b - L_ab) / g.
inline ScalarPartials reciprocal_of_product(const std::vector<std::pair<ScalarPartials, unsigned>>& factors,
                                            const std::string& where) {
  GaussianRational g(1);
  std::array<GaussianRational, 4> la, lb;
  std::array<std::array<GaussianRational, 4>, 4> lab;
  for (const auto& [f, e] : factors) {
    if (f.value.is_zero()) throw DenominatorVanishes(where);
    GaussianRational inv = f.value.inverse();
    const GaussianRational w(static_cast<long>(e));
    g *= pow(f.value, e);
    for (int a = 0; a < 4; ++a) {
      la[a] += w * f.dx[a] * inv;
      lb[a] += w * f.dy[a] * inv;
    }
    GaussianRational inv2 = inv * inv;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) lab[a][b] += w * (f.dxy[a][b] * inv - f.dx[a] * f.dy[b] * inv2);
  }
  ScalarPartials r;
  r.value = g.inverse();
  for (int a = 0; a < 4; ++a) {
    r.dx[a] = -(la[a] * r.value);
    r.dy[a] = -(lb[a] * r.value);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.dxy[a][b] = (la[a] * lb[b] - lab[a][b]) * r.value;
  return r;
}

// Symbolic derivative data of one rational function.
class QuotientPartials {
 public:
  QuotientPartials() = default;

  // Factors already present in `shared` (matched by polynomial) reuse its partials.
  explicit QuotientPartials(const RatFn& f, std::vector<std::pair<PolyPtr, PartialsPtr>>* shared = nullptr)
      : num_(PolyPartials::of(f.num())) {
    for (const auto& fac : f.factors()) {
      PartialsPtr partials;
      if (shared)
        for (const auto& [poly, cached] : *shared)
          if (RatFn::same(poly, fac.poly)) partials = cached;
      if (!partials) {
        partials = std::make_shared<const PolyPartials>(PolyPartials::of(*fac.poly));
        if (shared) shared->emplace_back(fac.poly, partials);
      }
      den_.emplace_back(partials, fac.exp);
    }
  }

  const PolyPartials& numerator() const { return num_; }
  const std::vector<std::pair<PartialsPtr, unsigned>>& denominator() const { return den_; }

  // Factor values already evaluated at this point, keyed by partials identity.
  using FactorCache = std::vector<std::pair<const PolyPartials*, ScalarPartials>>;

  ScalarPartials at(PointEvaluator& eval) const {
    FactorCache cache;
    return at(eval, cache);
  }

  ScalarPartials at(PointEvaluator& eval, FactorCache& cache) const {
    std::vector<std::pair<ScalarPartials, unsigned>> dens;
    dens.reserve(den_.size());
    for (const auto& [partials, e] : den_) {
      const ScalarPartials* hit = nullptr;
      for (const auto& [key, value] : cache)
        if (key == partials.get()) hit = &value;
      if (!hit) {
        cache.emplace_back(partials.get(), partials->at(eval));
        hit = &cache.back().second;
      }
      dens.emplace_back(*hit, e);
    }
    return num_.at(eval) * reciprocal_of_product(dens, to_string(eval.point()));
  }

 private:
  PolyPartials num_;
  std::vector<std::pair<PartialsPtr, unsigned>> den_;
};

}  // namespace hm
