#pragma once

// Sparse polynomials over Q(i) in the eight formal variables
// x1..x4, y1..y4, where y_a stands for the conjugate of x_a.

#include <hm/gaussian_rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hm {

inline constexpr int kNumVars = 8;

// Variable index: 0..3 are x1..x4, 4..7 are y1..y4.
inline constexpr int xvar(int a) { return a - 1; }
inline constexpr int yvar(int a) { return a + 3; }
inline constexpr int conjugate_var(int v) { return v < 4 ? v + 4 : v - 4; }

inline std::string var_name(int v) {
  return std::string(1, v < 4 ? 'x' : 'y') + std::to_string(v % 4 + 1);
}

struct NotDivisible : std::domain_error {
  NotDivisible() : std::domain_error("polynomial division is not exact") {}
};

// Exponent vector packed one byte per variable, x1 in the most significant
// byte, so integer comparison of keys is lexicographic order with x1 > ... > y4.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t key) : key_(key) {}

  static Monomial var(int v, unsigned e = 1) {
    if (e > 255) throw std::overflow_error("exponent too large");
    return Monomial(std::uint64_t(e) << shift(v));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr unsigned exponent(int v) const { return unsigned(key_ >> shift(v)) & 0xFFu; }
  // Byte sum; valid because total degree is kept below 256.
  constexpr unsigned degree() const { return unsigned((key_ * 0x0101010101010101ULL) >> 56); }

  friend Monomial operator*(Monomial a, Monomial b) {
    if (a.degree() + b.degree() > 255) throw std::overflow_error("monomial degree overflow");
    return Monomial(a.key_ + b.key_);
  }
  bool divides(Monomial m) const {
    for (int v = 0; v < kNumVars; ++v)
      if (exponent(v) > m.exponent(v)) return false;
    return true;
  }
  // Requires divides(m).
  Monomial quotient_of(Monomial m) const { return Monomial(m.key_ - key_); }

  Monomial conjugate() const {
    // swap the x-half and the y-half
    return Monomial((key_ << 32) | (key_ >> 32));
  }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.key_ == b.key_; }
  friend constexpr bool operator!=(Monomial a, Monomial b) { return a.key_ != b.key_; }
  // Graded lexicographic.
  friend constexpr bool operator<(Monomial a, Monomial b) {
    unsigned da = a.degree(), db = b.degree();
    return da != db ? da < db : a.key_ < b.key_;
  }

  std::string to_string() const {
    std::string s;
    for (int v = 0; v < kNumVars; ++v) {
      unsigned e = exponent(v);
      if (e == 0) continue;
      if (!s.empty()) s += '*';
      s += var_name(v) + "^" + std::to_string(e);
    }
    return s;
  }

 private:
  static constexpr int shift(int v) { return 56 - 8 * v; }
  std::uint64_t key_ = 0;
};

struct Term {
  Monomial mono;
  GaussianRational coef;
};

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const GaussianRational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
  }
  MultiPoly(long c) : MultiPoly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly var(int v) {
    MultiPoly p;
    p.terms_.push_back({Monomial::var(v), GaussianRational(1)});
    return p;
  }
  static MultiPoly x(int a) { return var(xvar(a)); }
  static MultiPoly y(int a) { return var(yvar(a)); }
  static MultiPoly monomial(const GaussianRational& c, Monomial m) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }
  // Builds a canonical polynomial from arbitrary (possibly repeated, zero) terms.
  static MultiPoly from_terms(std::vector<Term> terms);

  // Terms in descending graded-lex order; leading term first.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.key() == 0); }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  const Term& leading() const { return terms_.front(); }

  bool depends_on(int v) const {
    return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.exponent(v) > 0; });
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const GaussianRational& c, const MultiPoly& p) {
    if (c.is_zero()) return {};
    MultiPoly r = p;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly r(1), base = *this;
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (a.terms_[k].mono != b.terms_[k].mono || a.terms_[k].coef != b.terms_[k].coef) return false;
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // "coef * x1^e1*...*y4^f4" terms joined by " + ", descending order; "0" when empty.
  std::string to_string() const;
  static MultiPoly parse(std::string_view text);

 private:
  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract);

  std::vector<Term> terms_;
};

inline MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return b.mono < a.mono; });
  MultiPoly r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coef += t.coef;
      if (r.terms_.back().coef.is_zero()) r.terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

inline MultiPoly MultiPoly::merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
  MultiPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && b.terms_[j].mono < a.terms_[i].mono)) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || a.terms_[i].mono < b.terms_[j].mono) {
      r.terms_.push_back({b.terms_[j].mono, subtract ? -b.terms_[j].coef : b.terms_[j].coef});
      ++j;
    } else {
      GaussianRational c = a.terms_[i].coef;
      if (subtract)
        c -= b.terms_[j].coef;
      else
        c += b.terms_[j].coef;
      if (!c.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.terms_[0].mono.key() == 0) return a.terms_[0].coef * b;
  if (b.size() == 1 && b.terms_[0].mono.key() == 0) return b.terms_[0].coef * a;
  if (a.degree() + b.degree() > 255) throw std::overflow_error("polynomial degree overflow");
  std::unordered_map<std::uint64_t, GaussianRational> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
  for (const Term& s : a.terms_)
    for (const Term& t : b.terms_)
      acc[s.mono.key() + t.mono.key()].add_product(s.coef, t.coef);
  MultiPoly r;
  r.terms_.reserve(acc.size());
  for (auto& [key, coef] : acc)
    if (!coef.is_zero()) r.terms_.push_back({Monomial(key), std::move(coef)});
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return y.mono < x.mono; });
  return r;
}

// Swaps x_a <-> y_a in every monomial and conjugates every coefficient.
inline MultiPoly conjugate(const MultiPoly& p) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const Term& t : p.terms()) terms.push_back({t.mono.conjugate(), t.coef.conj()});
  return MultiPoly::from_terms(std::move(terms));
}

// Formal partial derivative; all eight variables independent.
inline MultiPoly derivative(const MultiPoly& p, int v) {
  std::vector<Term> terms;
  const Monomial one = Monomial::var(v);
  for (const Term& t : p.terms()) {
    unsigned e = t.mono.exponent(v);
    if (e == 0) continue;
    terms.push_back({one.quotient_of(t.mono), t.coef * GaussianRational(long(e))});
  }
  // Differentiation is order-preserving on the surviving terms except for
  // grlex ties, so re-canonicalize.
  return MultiPoly::from_terms(std::move(terms));
}

// Exact quotient p / d; throws NotDivisible if d does not divide p.
inline MultiPoly divide_exact(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw DivisionByZero();
  if (d.is_constant()) return d.leading().coef.inverse() * p;
  auto desc = [](Monomial a, Monomial b) { return b < a; };
  std::map<Monomial, GaussianRational, decltype(desc)> rem(desc);
  for (const Term& t : p.terms()) rem.emplace(t.mono, t.coef);
  const Term& lead = d.leading();
  const GaussianRational lead_inv = lead.coef.inverse();
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead.mono.divides(top->first)) throw NotDivisible();
    Monomial qm = lead.mono.quotient_of(top->first);
    GaussianRational qc = top->second * lead_inv;
    for (const Term& t : d.terms()) {
      Monomial m = qm * t.mono;
      auto [it, inserted] = rem.try_emplace(m);
      it->second -= qc * t.coef;
      if (it->second.is_zero()) rem.erase(it);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return MultiPoly::from_terms(std::move(quotient));
}

// Evaluates p with variable v bound to values[v], in any ring T that can be
// built from a GaussianRational.
template <typename T>
T evaluate_in(const MultiPoly& p, const std::array<T, kNumVars>& values) {
  std::array<unsigned, kNumVars> maxe{};
  for (const Term& t : p.terms())
    for (int v = 0; v < kNumVars; ++v) maxe[v] = std::max(maxe[v], t.mono.exponent(v));
  std::array<std::vector<T>, kNumVars> powers;
  for (int v = 0; v < kNumVars; ++v) {
    powers[v].reserve(maxe[v] + 1);
    powers[v].push_back(T(GaussianRational(1)));
    for (unsigned e = 1; e <= maxe[v]; ++e) powers[v].push_back(powers[v].back() * values[v]);
  }
  T sum = T(GaussianRational(0));
  for (const Term& t : p.terms()) {
    T acc = T(t.coef);
    for (int v = 0; v < kNumVars; ++v) {
      unsigned e = t.mono.exponent(v);
      if (e) acc *= powers[v][e];
    }
    sum += acc;
  }
  return sum;
}

// Binds x_a := p_a and y_a := conj(p_a).
inline std::array<GaussianRational, kNumVars> conjugate_consistent(const Point4& p) {
  return {p[0], p[1], p[2], p[3], p[0].conj(), p[1].conj(), p[2].conj(), p[3].conj()};
}

// Evaluates many polynomials at one conjugate-consistent point, reusing the
// power tables between calls. Not thread-safe; use one per worker.
class PointEvaluator {
 public:
  explicit PointEvaluator(const Point4& p) : point_(p), values_(conjugate_consistent(p)) {
    for (int v = 0; v < kNumVars; ++v) powers_[v].push_back(GaussianRational(1));
  }

  const Point4& point() const { return point_; }

  GaussianRational operator()(const MultiPoly& poly) {
    GaussianRational sum;
    for (const Term& t : poly.terms()) {
      GaussianRational acc = t.coef;
      for (int v = 0; v < kNumVars; ++v)
        if (unsigned e = t.mono.exponent(v)) acc *= power(v, e);
      sum += acc;
    }
    return sum;
  }

 private:
  const GaussianRational& power(int v, unsigned e) {
    auto& table = powers_[v];
    while (table.size() <= e) table.push_back(table.back() * values_[v]);
    return table[e];
  }

  Point4 point_;
  std::array<GaussianRational, kNumVars> values_;
  std::array<std::vector<GaussianRational>, kNumVars> powers_;
};

inline GaussianRational evaluate(const MultiPoly& poly, const Point4& p) {
  return PointEvaluator(p)(poly);
}

inline std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const Term& t : terms_) {
    if (!s.empty()) s += " + ";
    s += t.coef.to_string();
    if (t.mono.key() != 0) s += " * " + t.mono.to_string();
  }
  return s;
}

inline MultiPoly MultiPoly::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "0") return {};
  std::vector<Term> terms;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t sep = text.find(" + ", start);
    std::string_view item = text.substr(start, sep == std::string_view::npos ? sep : sep - start);
    std::size_t star = item.find(" * ");
    GaussianRational c = GaussianRational::parse(trim(item.substr(0, star)));
    Monomial m;
    if (star != std::string_view::npos) {
      std::string_view rest = trim(item.substr(star + 3));
      std::size_t pos = 0;
      while (pos < rest.size()) {
        if (pos > 0) {
          if (rest[pos] != '*') throw ParseError("expected '*' in monomial '" + std::string(rest) + "'");
          ++pos;
        }
        if (pos + 4 > rest.size() || (rest[pos] != 'x' && rest[pos] != 'y') || rest[pos + 1] < '1' ||
            rest[pos + 1] > '4' || rest[pos + 2] != '^')
          throw ParseError("bad variable in monomial '" + std::string(rest) + "'");
        int a = rest[pos + 1] - '0';
        int v = rest[pos] == 'x' ? xvar(a) : yvar(a);
        pos += 3;
        std::size_t b = pos;
        while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (b == pos) throw ParseError("missing exponent in '" + std::string(rest) + "'");
        m = m * Monomial::var(v, unsigned(std::stoul(std::string(rest.substr(b, pos - b)))));
      }
    }
    terms.push_back({m, std::move(c)});
    if (sep == std::string_view::npos) break;
    start = sep + 3;
  }
  return from_terms(std::move(terms));
}

// n = 1 + sum_a x_a y_a
inline MultiPoly chart_norm() {
  MultiPoly n(1);
  for (int a = 1; a <= 4; ++a) n += MultiPoly::x(a) * MultiPoly::y(a);
  return n;
}

}  // namespace hm
