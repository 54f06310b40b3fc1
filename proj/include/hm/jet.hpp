#pragma once

// Truncated expansions value + ds*s + dt*t + dsdt*s*t with s^2 = t^2 = 0.
// Evaluating a function at (x + s, y + t) yields its first partials and the
// mixed second partial exactly, independently of symbolic differentiation.

#include <hm/gaussian_rational.hpp>

namespace hm {

template <typename T>
struct Jet2 {
  T value{};
  T ds{};
  T dt{};
  T dsdt{};

  Jet2() = default;
  Jet2(T v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Jet2(T v, T s, T t, T st) : value(std::move(v)), ds(std::move(s)), dt(std::move(t)), dsdt(std::move(st)) {}

  Jet2& operator+=(const Jet2& o) {
    value += o.value;
    ds += o.ds;
    dt += o.dt;
    dsdt += o.dsdt;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    value -= o.value;
    ds -= o.ds;
    dt -= o.dt;
    dsdt -= o.dsdt;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& f, const Jet2& g) {
    return {f.value * g.value, f.value * g.ds + f.ds * g.value, f.value * g.dt + f.dt * g.value,
            f.value * g.dsdt + f.ds * g.dt + f.dt * g.ds + f.dsdt * g.value};
  }
  Jet2 operator-() const { return {-value, -ds, -dt, -dsdt}; }

  // Requires value invertible.
  Jet2 inverse() const {
    T inv = T(1) / value;
    T inv2 = inv * inv;
    return {inv, -(ds * inv2), -(dt * inv2), (T(2) * ds * dt * inv - dsdt) * inv2};
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.inverse(); }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    return a.value == b.value && a.ds == b.ds && a.dt == b.dt && a.dsdt == b.dsdt;
  }
};

using JetQ = Jet2<GaussianRational>;

}  // namespace hm
