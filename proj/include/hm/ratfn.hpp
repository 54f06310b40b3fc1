#pragma once

// Rational functions num / (f1^e1 * ... * fk^ek) with the denominator kept
// as a product of shared polynomial factors. Nothing is ever reduced by a
// gcd; differentiation only bumps factor exponents.

#include <hm/jet.hpp>
#include <hm/multipoly.hpp>

#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hm {

struct DenominatorVanishes : std::domain_error {
  explicit DenominatorVanishes(const std::string& where)
      : std::domain_error("denominator vanishes at " + where) {}
};

using PolyPtr = std::shared_ptr<const MultiPoly>;

inline PolyPtr share(MultiPoly p) { return std::make_shared<const MultiPoly>(std::move(p)); }

// Shared n = 1 + sum x_a y_a so denominators recognise it by identity.
inline const PolyPtr& chart_norm_ptr() {
  static const PolyPtr n = share(chart_norm());
  return n;
}

struct DenFactor {
  PolyPtr poly;
  unsigned exp = 1;
};

class RatFn {
 public:
  RatFn() = default;
  RatFn(MultiPoly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  RatFn(const GaussianRational& c) : num_(c) {}   // NOLINT(google-explicit-constructor)
  RatFn(long c) : num_(c) {}                      // NOLINT(google-explicit-constructor)
  RatFn(MultiPoly num, const std::vector<DenFactor>& den) : num_(std::move(num)) {
    for (const auto& f : den) multiply_den(f.poly, f.exp);
  }
  RatFn(MultiPoly num, const PolyPtr& den, unsigned exp = 1) : num_(std::move(num)) {
    multiply_den(den, exp);
  }
  RatFn(MultiPoly num, MultiPoly den) : RatFn(std::move(num), share(std::move(den))) {}

  const MultiPoly& num() const { return num_; }
  const std::vector<DenFactor>& factors() const { return den_; }

  // Expanded denominator polynomial.
  MultiPoly den() const {
    MultiPoly d(1);
    for (const auto& f : den_) d *= f.poly->pow(f.exp);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }

  RatFn operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    RatFn r(a.num_ * b.num_);
    r.den_ = a.den_;
    for (const auto& f : b.den_) r.multiply_den(f.poly, f.exp);
    return r;
  }
  friend RatFn operator+(const RatFn& a, const RatFn& b) { return combine(a, b, false); }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return combine(a, b, true); }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  // Divides by factor^exp, sharing storage with an equal existing factor.
  void multiply_den(const PolyPtr& factor, unsigned exp = 1) {
    if (exp == 0) return;
    if (factor->is_zero()) throw DivisionByZero();
    if (factor->is_constant()) {
      num_ = pow(factor->leading().coef.inverse(), exp) * num_;
      return;
    }
    for (auto& f : den_)
      if (same(f.poly, factor)) {
        f.exp += exp;
        return;
      }
    den_.push_back({factor, exp});
  }

  static bool same(const PolyPtr& a, const PolyPtr& b) { return a == b || *a == *b; }

  std::string to_string() const {
    std::string s = "(" + num_.to_string() + ")";
    for (const auto& f : den_) s += " / (" + f.poly->to_string() + ")^" + std::to_string(f.exp);
    return s;
  }

 private:
  static RatFn combine(const RatFn& a, const RatFn& b, bool subtract) {
    // common denominator: per-factor max exponent
    RatFn r;
    r.den_ = a.den_;
    for (const auto& f : b.den_) {
      bool found = false;
      for (auto& g : r.den_)
        if (same(g.poly, f.poly)) {
          g.exp = std::max(g.exp, f.exp);
          found = true;
          break;
        }
      if (!found) r.den_.push_back(f);
    }
    auto lift = [&r](const RatFn& x) {
      MultiPoly scale(1);
      for (const auto& g : r.den_) {
        unsigned have = 0;
        for (const auto& f : x.den_)
          if (same(f.poly, g.poly)) have = f.exp;
        if (g.exp > have) scale *= g.poly->pow(g.exp - have);
      }
      return x.num_ * scale;
    };
    r.num_ = subtract ? lift(a) - lift(b) : lift(a) + lift(b);
    return r;
  }

  MultiPoly num_;
  std::vector<DenFactor> den_;
};

// Formal partial derivative in variable v (0..7). For N / prod f_k^e_k the
// result is [N' prod_S f_k - N sum_S e_k f_k' prod_{S\k} f_j] / (prod f_k^e_k prod_S f_k)
// where S is the set of factors that depend on v.
inline RatFn wirtinger(const RatFn& f, int v) {
  std::vector<std::size_t> moving;
  for (std::size_t k = 0; k < f.factors().size(); ++k)
    if (f.factors()[k].poly->depends_on(v)) moving.push_back(k);

  MultiPoly all_moving(1);
  for (auto k : moving) all_moving *= *f.factors()[k].poly;
  MultiPoly num = derivative(f.num(), v) * all_moving;
  for (auto k : moving) {
    MultiPoly others(1);
    for (auto j : moving)
      if (j != k) others *= *f.factors()[j].poly;
    const DenFactor& fk = f.factors()[k];
    num -= GaussianRational(long(fk.exp)) * (f.num() * derivative(*fk.poly, v) * others);
  }
  RatFn r(std::move(num), f.factors());
  for (auto k : moving) r.multiply_den(f.factors()[k].poly, 1);
  return r;
}

// Evaluates in ring T given values for all eight variables.
template <typename T>
T evaluate_in(const RatFn& f, const std::array<T, kNumVars>& values, const std::string& where) {
  T den = T(GaussianRational(1));
  for (const auto& fac : f.factors()) {
    T value = evaluate_in<T>(*fac.poly, values);
    for (unsigned e = 0; e < fac.exp; ++e) den *= value;
  }
  T num = evaluate_in<T>(f.num(), values);
  if constexpr (std::is_same_v<T, GaussianRational>) {
    if (den.is_zero()) throw DenominatorVanishes(where);
    return num / den;
  } else {
    if (den.value.is_zero()) throw DenominatorVanishes(where);
    return num / den;
  }
}

inline GaussianRational evaluate(const RatFn& f, const Point4& p) {
  return evaluate_in<GaussianRational>(f, conjugate_consistent(p), to_string(p));
}

// Mixed second partial d^2 f / dx_alpha dy_beta at p via the jet ring
// (alpha, beta in 1..4).
inline GaussianRational jet_mixed_second(const RatFn& f, const Point4& p, int alpha, int beta) {
  auto base = conjugate_consistent(p);
  std::array<JetQ, kNumVars> values;
  for (int v = 0; v < kNumVars; ++v) values[v] = JetQ(base[v]);
  values[xvar(alpha)].ds = GaussianRational(1);
  values[yvar(beta)].dt = GaussianRational(1);
  return evaluate_in<JetQ>(f, values, to_string(p)).dsdt;
}

// Equality by cross-multiplication after cancelling shared factors.
inline bool ratfn_equal(const RatFn& f, const RatFn& g) {
  MultiPoly lhs = f.num(), rhs = g.num();
  for (const auto& a : f.factors()) {
    unsigned other = 0;
    for (const auto& b : g.factors())
      if (RatFn::same(a.poly, b.poly)) other = b.exp;
    if (a.exp > other) rhs *= a.poly->pow(a.exp - other);
  }
  for (const auto& b : g.factors()) {
    unsigned other = 0;
    for (const auto& a : f.factors())
      if (RatFn::same(a.poly, b.poly)) other = a.exp;
    if (b.exp > other) lhs *= b.poly->pow(b.exp - other);
  }
  return lhs == rhs;
}

inline RatFn conjugate(const RatFn& f) {
  std::vector<DenFactor> den;
  for (const auto& fac : f.factors()) den.push_back({share(conjugate(*fac.poly)), fac.exp});
  return RatFn(conjugate(f.num()), den);
}

}  // namespace hm
