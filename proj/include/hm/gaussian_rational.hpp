#pragma once

// Exact complex numbers a + b*i with a, b in Q, backed by GMP rationals.

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hm {

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long num, long den) : re_(num, den) { re_.canonicalize(); }

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return im_ == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  // |z|^2 = z * conj(z)
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_real()) return GaussianRational(mpq_class(1) / re_);
    mpq_class d = norm();
    return {re_ / d, -im_ / d};
  }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
    } else {
      mpq_class r = re_ * o.re_ - im_ * o.im_;
      im_ = re_ * o.im_ + im_ * o.re_;
      re_ = std::move(r);
    }
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  // this += a * b without a temporary GaussianRational.
  void add_product(const GaussianRational& a, const GaussianRational& b) {
    if (a.is_real() && b.is_real()) {
      re_ += a.re_ * b.re_;
      return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // Text form: rational | rational ('+'|'-') rational 'i' | rational 'i'
  std::string to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    std::string s = re_.get_str();
    if (sgn(im_) > 0) {
      s += '+';
      s += im_.get_str();
    } else {
      s += '-';
      s += mpq_class(-im_).get_str();
    }
    s += 'i';
    return s;
  }

  static GaussianRational parse(std::string_view text);

  std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(re_.get_str());
    return h ^ (std::hash<std::string>{}(im_.get_str()) * 1000003u);
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline GaussianRational pow(GaussianRational base, unsigned e) {
  GaussianRational r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << z.to_string();
}

namespace detail {

// rational := ['-'] digits ['/' digits]; consumes from pos.
inline mpq_class parse_rational(std::string_view s, std::size_t& pos, bool allow_sign) {
  std::size_t start = pos;
  if (allow_sign && pos < s.size() && s[pos] == '-') ++pos;
  auto digits = [&] {
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == b) throw ParseError("expected digits in '" + std::string(s) + "'");
  };
  digits();
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    digits();
  }
  mpq_class q;
  if (q.set_str(std::string(s.substr(start, pos - start)), 10) != 0)
    throw ParseError("bad rational in '" + std::string(s) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

}  // namespace detail

inline GaussianRational GaussianRational::parse(std::string_view text) {
  std::size_t pos = 0;
  mpq_class first = detail::parse_rational(text, pos, true);
  if (pos == text.size()) return GaussianRational(first);
  if (text[pos] == 'i' && pos + 1 == text.size()) return {mpq_class(0), first};
  if (text[pos] != '+' && text[pos] != '-')
    throw ParseError("unexpected character in '" + std::string(text) + "'");
  bool negative = text[pos] == '-';
  ++pos;
  mpq_class second = detail::parse_rational(text, pos, false);
  if (pos + 1 != text.size() || text[pos] != 'i')
    throw ParseError("expected trailing 'i' in '" + std::string(text) + "'");
  if (negative) second = -second;
  return {first, second};
}

using Point4 = std::array<GaussianRational, 4>;

// point := gaussian ',' gaussian ',' gaussian ',' gaussian (surrounding blanks tolerated)
inline Point4 parse_point(std::string_view text) {
  Point4 p;
  std::size_t start = 0;
  for (int k = 0; k < 4; ++k) {
    std::size_t comma = text.find(',', start);
    if ((k < 3) != (comma != std::string_view::npos))
      throw ParseError("point needs exactly four comma-separated coordinates: '" +
                       std::string(text) + "'");
    std::string_view item = text.substr(start, k < 3 ? comma - start : std::string_view::npos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    p[k] = GaussianRational::parse(item);
    start = comma + 1;
  }
  return p;
}

inline std::string to_string(const Point4& p) {
  return p[0].to_string() + "," + p[1].to_string() + "," + p[2].to_string() + "," + p[3].to_string();
}

}  // namespace hm
