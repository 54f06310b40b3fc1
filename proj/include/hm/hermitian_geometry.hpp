#pragma once

// Fubini-Study data on the standard chart (1 : x1 : ... : x4) of P^4 and the
// Chern curvature / mean curvature of a Hermitian metric given by a matrix of
// rational functions in a holomorphic frame.

#include <hm/matrix.hpp>
#include <hm/partials.hpp>

#include <array>
#include <string>
#include <vector>

namespace hm {

struct SingularMetricAtPoint : std::domain_error {
  explicit SingularMetricAtPoint(const std::string& where)
      : std::domain_error("metric matrix is singular at " + where) {}
};

// ---------------------------------------------------------------------------
// Fubini-Study

struct FSData {
  PolyPtr n;            // 1 + sum x_a y_a
  RatFnMatrix g;        // g_ab = delta_ab / n - y_a x_b / n^2
  PolyMatrix g_inv;     // g^ab = n (delta_ab + y_a x_b)
  bool inverse_checked = false;
};

inline FSData build_fs(const PolyPtr& n) {
  FSData fs;
  fs.n = n;
  fs.g = RatFnMatrix(4, 4);
  fs.g_inv = PolyMatrix(4, 4);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      MultiPoly yx = MultiPoly::y(a) * MultiPoly::x(b);
      MultiPoly num = -yx;
      if (a == b) num += *n;
      fs.g(a - 1, b - 1) = RatFn(std::move(num), n, 2);
      MultiPoly inv = yx;
      if (a == b) inv += MultiPoly(1);
      fs.g_inv(a - 1, b - 1) = *n * inv;
    }
  const RatFnMatrix ginv = fs.g_inv.map([](const MultiPoly& p) { return RatFn(p); });
  const RatFnMatrix prod = fs.g * ginv;
  fs.inverse_checked = true;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      fs.inverse_checked = fs.inverse_checked && ratfn_equal(prod(a, b), RatFn(a == b ? 1L : 0L));
  return fs;
}

inline FSData build_fs() { return build_fs(chart_norm_ptr()); }

// ---------------------------------------------------------------------------
// Scalar helpers

inline GaussianRational trace(const ScalarMatrix& m) {
  GaussianRational t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Inverse of a scalar matrix via the adjugate; throws on a zero determinant.
inline ScalarMatrix inverse(const ScalarMatrix& m, const std::string& where) {
  auto [det, adj] = bareiss(m);
  if (det.is_zero()) throw SingularMetricAtPoint(where);
  return det.inverse() * adj;
}

// ---------------------------------------------------------------------------
// Symbolic derivative cache of a metric matrix

// H and its partials at one point; indices alpha, beta are 0-based.
struct MetricPointData {
  Point4 point;
  ScalarMatrix H;
  std::array<ScalarMatrix, 4> dx;
  std::array<ScalarMatrix, 4> dy;
  std::array<std::array<ScalarMatrix, 4>, 4> dxy;
};

class MetricDerivatives {
 public:
  explicit MetricDerivatives(RatFnMatrix H) : H_(std::move(H)) {
    if (H_.rows() != H_.cols()) throw std::invalid_argument("metric matrix must be square");
    std::vector<std::pair<PolyPtr, PartialsPtr>> shared;
    entries_.reserve(H_.rows() * H_.cols());
    for (std::size_t i = 0; i < H_.rows(); ++i)
      for (std::size_t j = 0; j < H_.cols(); ++j) entries_.emplace_back(H_(i, j), &shared);
  }

  const RatFnMatrix& metric() const { return H_; }
  std::size_t rank() const { return H_.rows(); }
  const QuotientPartials& entry(std::size_t i, std::size_t j) const { return entries_[i * H_.cols() + j]; }

  MetricPointData at(const Point4& p) const {
    const std::size_t r = rank();
    MetricPointData d;
    d.point = p;
    d.H = ScalarMatrix(r, r);
    for (auto& m : d.dx) m = ScalarMatrix(r, r);
    for (auto& m : d.dy) m = ScalarMatrix(r, r);
    for (auto& row : d.dxy)
      for (auto& m : row) m = ScalarMatrix(r, r);
    PointEvaluator eval(p);
    QuotientPartials::FactorCache cache;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        ScalarPartials s = entry(i, j).at(eval, cache);
        d.H(i, j) = s.value;
        for (int a = 0; a < 4; ++a) {
          d.dx[a](i, j) = s.dx[a];
          d.dy[a](i, j) = s.dy[a];
          for (int b = 0; b < 4; ++b) d.dxy[a][b](i, j) = s.dxy[a][b];
        }
      }
    return d;
  }

 private:
  RatFnMatrix H_;
  std::vector<QuotientPartials> entries_;
};

// ---------------------------------------------------------------------------
// Curvature

// F_{ij alpha beta} = -(d_a dbar_b H  H^-1)_ij + (d_a H  H^-1  dbar_b H  H^-1)_ij
// with alpha, beta 1-based.
inline ScalarMatrix curvature_block(const MetricPointData& d, const ScalarMatrix& Hinv, int alpha, int beta) {
  const auto& dx = d.dx[alpha - 1];
  const auto& dy = d.dy[beta - 1];
  const auto& dxy = d.dxy[alpha - 1][beta - 1];
  return dx * Hinv * dy * Hinv - dxy * Hinv;
}

inline GaussianRational curvature_coeff(const MetricPointData& d, std::size_t i, std::size_t j, int alpha,
                                        int beta) {
  const ScalarMatrix Hinv = inverse(d.H, to_string(d.point));
  return curvature_block(d, Hinv, alpha, beta)(i, j);
}

inline GaussianRational curvature_coeff(const MetricDerivatives& m, std::size_t i, std::size_t j, int alpha,
                                        int beta, const Point4& p) {
  return curvature_coeff(m.at(p), i, j, alpha, beta);
}

// K_ij = sum_{alpha,beta} g^{beta alpha} F_{ij alpha beta}
inline ScalarMatrix mean_curvature_matrix(const MetricPointData& d, const FSData& fs) {
  const ScalarMatrix Hinv = inverse(d.H, to_string(d.point));
  PointEvaluator eval(d.point);
  ScalarMatrix K(d.H.rows(), d.H.cols());
  for (int alpha = 1; alpha <= 4; ++alpha)
    for (int beta = 1; beta <= 4; ++beta) {
      GaussianRational g = eval(fs.g_inv(beta - 1, alpha - 1));
      K = K + g * curvature_block(d, Hinv, alpha, beta);
    }
  return K;
}

struct HEResidual {
  ScalarMatrix residual;      // K - lambda * Id
  mpq_class max_abs_sq;       // max over entries of |residual_ij|^2
  bool is_einstein = false;   // residual == 0 exactly
};

inline HEResidual he_residual(const ScalarMatrix& K, const mpq_class& lambda) {
  HEResidual r;
  r.residual = K - GaussianRational(lambda) * ScalarMatrix::identity(K.rows());
  r.max_abs_sq = 0;
  for (std::size_t i = 0; i < K.rows(); ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) {
      mpq_class a = r.residual(i, j).norm();
      if (a > r.max_abs_sq) r.max_abs_sq = a;
    }
  r.is_einstein = sgn(r.max_abs_sq) == 0;
  return r;
}

struct CurvatureReport {
  Point4 point;
  ScalarMatrix H;
  ScalarMatrix K;
  mpq_class lambda;
  ScalarMatrix residual;
  mpq_class max_abs_residual_sq;
  bool is_he_at_point = false;
  GaussianRational trace;
};

inline CurvatureReport mean_curvature(const MetricDerivatives& m, const FSData& fs, const Point4& p,
                                      const mpq_class& lambda = 2) {
  MetricPointData d = m.at(p);
  CurvatureReport r;
  r.point = p;
  r.K = mean_curvature_matrix(d, fs);
  r.H = std::move(d.H);
  r.lambda = lambda;
  HEResidual he = he_residual(r.K, lambda);
  r.residual = std::move(he.residual);
  r.max_abs_residual_sq = he.max_abs_sq;
  r.is_he_at_point = he.is_einstein;
  r.trace = trace(r.K);
  return r;
}

// Which product of the metric and the mean curvature endomorphism is Hermitian.
enum class SelfAdjointness { HK, KH };

inline const char* to_string(SelfAdjointness c) { return c == SelfAdjointness::HK ? "H*K" : "K*H"; }

inline bool is_self_adjoint(const ScalarMatrix& H, const ScalarMatrix& K, SelfAdjointness c) {
  return is_hermitian(c == SelfAdjointness::HK ? H * K : K * H);
}

// ---------------------------------------------------------------------------
// Line bundles: K_phi = -sum g^{beta alpha} d_a dbar_b log(phi), computed as
// (phi d_a dbar_b phi - d_a phi dbar_b phi) / phi^2.

inline RatFn reciprocal(const RatFn& f) {
  if (f.is_zero()) throw DivisionByZero();
  return RatFn(f.den(), share(f.num()));
}

inline RatFn line_bundle_mean_curvature(const RatFn& phi, const FSData& fs) {
  const RatFn inv = reciprocal(phi);
  const RatFn inv2 = inv * inv;
  RatFn K;
  for (int alpha = 1; alpha <= 4; ++alpha) {
    const RatFn da = wirtinger(phi, xvar(alpha));
    for (int beta = 1; beta <= 4; ++beta) {
      const RatFn db = wirtinger(phi, yvar(beta));
      const RatFn dab = wirtinger(da, yvar(beta));
      const RatFn ddlog = dab * inv - da * db * inv2;
      K -= RatFn(fs.g_inv(beta - 1, alpha - 1)) * ddlog;
    }
  }
  return K;
}

inline GaussianRational line_bundle_mean_curvature(const RatFn& phi, const FSData& fs, const Point4& p) {
  PointEvaluator eval(p);
  const ScalarPartials s = QuotientPartials(phi).at(eval);
  if (s.value.is_zero()) throw DenominatorVanishes(to_string(p));
  if (!s.value.is_real() || sgn(s.value.re()) <= 0)
    throw std::domain_error("line bundle metric is not positive at " + to_string(p));
  const GaussianRational inv = s.value.inverse();
  GaussianRational K;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      GaussianRational ddlog = s.dxy[a][b] * inv - s.dx[a] * s.dy[b] * inv * inv;
      K -= eval(fs.g_inv(b, a)) * ddlog;
    }
  return K;
}

}  // namespace hm
