#pragma once

// Reports for the command-line front end: the reference suite, single-point
// evaluation, point scans and the identity checks, rendered as JSON or text.

#include <hm/horrocks_mumford.hpp>

#include <json.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace hm {

// Everything built once and shared read-only by all point evaluations.
struct Model {
  MonadMaps monad;
  MonadReport monad_report;
  GramReport gram;
  HMetric metric;
  FSData fs;
};

inline Model build_model() {
  MonadMaps monad = build_monad();
  MonadReport monad_report = monad_check(monad);
  GramReport gram = gram_check(monad);
  HMetric metric = build_H(gram.blocks);
  return Model{std::move(monad), monad_report, std::move(gram), std::move(metric), build_fs()};
}

struct Identities {
  bool det_H = false;
  bool K_det_const4 = false;
  bool monad_b_after_a_zero = false;
  bool gram_matches_print = false;
};

inline Identities check_identities(const Model& m) {
  Identities ids;
  const DetIdentityResult det = verify_detH_identity(m.metric);
  ids.det_H = det.screen_passed && det.exact &&
              evaluate(detH_closed_form(), point_x0()) == GaussianRational(mpq_class(1, 5));
  ids.K_det_const4 = ids.det_H && verify_Kdet_constant(m.fs);
  ids.monad_b_after_a_zero = m.monad_report.image_in_kernel && m.monad_report.kernel_in_kernel;
  ids.gram_matches_print = m.gram.hermitian && m.gram.c_diagonal_real && m.gram.upper_right_is_conj_B_transpose &&
                           m.gram.mismatches.empty();
  return ids;
}

// One failed expectation of the suite.
struct Mismatch {
  std::string check;
  std::string expected;
  std::string actual;
};

struct Report {
  std::string command;
  std::vector<CurvatureReport> points;
  Identities identities;
  std::string verdict;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> notes;  // text output only
  int exit_code = 0;
};

// ---------------------------------------------------------------------------
// Point evaluation, optionally on several threads; results keep input order.

inline std::vector<CurvatureReport> evaluate_points(const Model& m, const std::vector<Point4>& points,
                                                    const mpq_class& lambda, unsigned threads) {
  std::vector<CurvatureReport> out(points.size());
  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i < points.size(); i += step)
      out[i] = mean_curvature(m.metric.derivatives, m.fs, points[i], lambda);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteConfig {
  mpq_class lambda = 2;
  unsigned threads = 1;
};

inline ScalarMatrix expected_K_x2() {
  const GaussianRational off(mpq_class(-217, 25992));
  return ScalarMatrix{{GaussianRational(2), off}, {off, GaussianRational(2)}};
}

inline constexpr const char* kVerdictReproduced =
    "reproduced: natural metric is NOT Hermitian-Einstein (K = 2*Id at x0 and x1, K != 2*Id at x2)";
inline constexpr const char* kVerdictNotReproduced = "NOT reproduced: see mismatches";

inline std::string matrix_to_string(const ScalarMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

inline Report run_suite(const Model& m, const SuiteConfig& cfg = {}) {
  Report r;
  r.command = "suite";
  r.identities = check_identities(m);
  auto expect_true = [&r](const std::string& check, bool value) {
    if (!value) r.mismatches.push_back({check, "true", "false"});
  };
  expect_true("monad_b_after_a_zero", r.identities.monad_b_after_a_zero);
  expect_true("gram_structure", m.gram.hermitian && m.gram.c_diagonal_real && m.gram.upper_right_is_conj_B_transpose);
  expect_true("det_H", r.identities.det_H);
  expect_true("K_det_const4", r.identities.K_det_const4);

  const std::vector<Point4> points{point_x0(), point_x1(), point_x2()};
  r.points = evaluate_points(m, points, cfg.lambda, cfg.threads);
  const ScalarMatrix two = GaussianRational(2) * ScalarMatrix::identity(2);
  const std::vector<ScalarMatrix> expected_K{two, two, expected_K_x2()};
  const std::vector<bool> expected_he{true, true, false};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const CurvatureReport& c = r.points[i];
    const std::string tag = "x" + std::to_string(i);
    if (!(c.K == expected_K[i]))
      r.mismatches.push_back({"K(" + tag + ")", matrix_to_string(expected_K[i]), matrix_to_string(c.K)});
    if (c.is_he_at_point != expected_he[i])
      r.mismatches.push_back({"he_at_point(" + tag + ")", expected_he[i] ? "true" : "false",
                              c.is_he_at_point ? "true" : "false"});
    if (c.trace != GaussianRational(4)) r.mismatches.push_back({"trace(" + tag + ")", "4", c.trace.to_string()});
    expect_true("H_positive_definite(" + tag + ")", is_positive_definite_2x2(c.H));
    expect_true("self_adjoint_" + std::string(to_string(kFrozenSelfAdjointness)) + "(" + tag + ")",
                is_self_adjoint(c.H, c.K, kFrozenSelfAdjointness));
  }
  if (!m.monad_report.print_mismatches.empty())
    r.notes.push_back("printed image vectors differ from the derived ones in " +
                      std::to_string(m.monad_report.print_mismatches.size()) + " coordinate(s)");
  r.verdict = r.mismatches.empty() ? kVerdictReproduced : kVerdictNotReproduced;
  r.exit_code = r.mismatches.empty() ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// Single point

inline constexpr int kExitParseError = 2;
inline constexpr int kExitDomainError = 3;

inline std::string point_verdict(const CurvatureReport& c) {
  return c.is_he_at_point ? "HE at point: K = lambda*Id" : "not HE at point: K != lambda*Id";
}

// Throws ParseError on malformed input; a domain failure is reported with exit 3.
inline Report eval_point(const Model& m, const Point4& p, const mpq_class& lambda = 2) {
  Report r;
  r.command = "point";
  r.identities = check_identities(m);
  const DomainStatus status = domain_check(m.metric, p);
  if (!status.ok()) {
    r.verdict = "domain error: " + status.to_string();
    r.exit_code = kExitDomainError;
    return r;
  }
  r.points.push_back(mean_curvature(m.metric.derivatives, m.fs, p, lambda));
  r.verdict = point_verdict(r.points.back());
  return r;
}

// ---------------------------------------------------------------------------
// Scans

// Splitmix64; fixed so that sampled points do not depend on the standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi] up to a negligible modulo bias.
  long uniform(long lo, long hi) { return lo + static_cast<long>((*this)() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

// Coordinates re + im*i with |numerators| <= cap, denominators in [1, cap] and
// a nonzero real part, so no coordinate is ever zero.
inline std::vector<Point4> random_points(std::size_t count, std::uint64_t seed, long cap) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  SplitMix64 rng(seed);
  std::vector<Point4> pts(count);
  for (auto& p : pts)
    for (auto& c : p) {
      long re = rng.uniform(1, cap) * (rng.uniform(0, 1) ? 1 : -1);
      mpq_class real(re, rng.uniform(1, cap));
      mpq_class imag(rng.uniform(-cap, cap), rng.uniform(1, cap));
      real.canonicalize();
      imag.canonicalize();
      c = GaussianRational(real, imag);
    }
  return pts;
}

// All 4-tuples over the given values, first coordinate varying slowest.
inline std::vector<Point4> grid_points(const std::vector<GaussianRational>& values) {
  std::vector<Point4> pts;
  const std::size_t k = values.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d) pts.push_back({values[a], values[b], values[c], values[d]});
  return pts;
}

inline std::vector<GaussianRational> parse_values(std::string_view text) {
  std::vector<GaussianRational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(GaussianRational::parse(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct ScanSummary {
  std::size_t evaluated = 0;
  std::size_t he_exact = 0;
  std::size_t skipped = 0;
  std::size_t trace_violations = 0;
  std::size_t self_adjoint_violations = 0;
  std::size_t positivity_violations = 0;
  mpq_class max_residual_abs_sq = 0;

  std::size_t violations() const { return trace_violations + self_adjoint_violations + positivity_violations; }
};

inline ScanSummary summarize(const std::vector<CurvatureReport>& rows) {
  ScanSummary s;
  for (const auto& c : rows) {
    ++s.evaluated;
    if (c.is_he_at_point) ++s.he_exact;
    if (c.trace != GaussianRational(4)) ++s.trace_violations;
    if (!is_self_adjoint(c.H, c.K, kFrozenSelfAdjointness)) ++s.self_adjoint_violations;
    if (!is_positive_definite_2x2(c.H)) ++s.positivity_violations;
    if (c.max_abs_residual_sq > s.max_residual_abs_sq) s.max_residual_abs_sq = c.max_abs_residual_sq;
  }
  return s;
}

// Points outside the domain are skipped and reported through `log`.
inline Report scan(const Model& m, const std::vector<Point4>& points, unsigned threads = 1,
                   const std::function<void(const std::string&)>& log = {}) {
  Report r;
  r.command = "scan";
  r.identities = check_identities(m);
  std::vector<Point4> usable;
  std::size_t skipped = 0;
  for (const Point4& p : points) {
    const DomainStatus status = domain_check(m.metric, p);
    if (status.ok()) {
      usable.push_back(p);
      continue;
    }
    ++skipped;
    const std::string line = "skipped " + to_string(p) + ": " + status.to_string();
    r.notes.push_back(line);
    if (log) log(line);
  }
  r.points = evaluate_points(m, usable, 2, threads);
  ScanSummary s = summarize(r.points);
  s.skipped = skipped;
  r.verdict = "evaluated " + std::to_string(s.evaluated) + ", skipped " + std::to_string(s.skipped) + ", HE-exact " +
              std::to_string(s.he_exact) + ", max residual |.|^2 " + s.max_residual_abs_sq.get_str() +
              ", invariant violations " + std::to_string(s.violations()) + " (trace " +
              std::to_string(s.trace_violations) + ", self-adjoint " + std::to_string(s.self_adjoint_violations) +
              ", positivity " + std::to_string(s.positivity_violations) + ")";
  r.exit_code = s.violations() == 0 ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// Identity-only commands

inline Report det_check(const Model& m) {
  Report r;
  r.command = "det-check";
  r.identities = check_identities(m);
  r.verdict = r.identities.det_H ? "det H = x1 y1 x2 y2 x3 y3 x4 y4 / n holds exactly" : "det H identity FAILS";
  r.exit_code = r.identities.det_H ? 0 : 1;
  return r;
}

inline Report gram_report(const Model& m) {
  Report r;
  r.command = "gram-check";
  r.identities = check_identities(m);
  const GramReport& g = m.gram;
  const bool structure = g.hermitian && g.c_diagonal_real && g.upper_right_is_conj_B_transpose;
  r.notes.push_back(std::string("gram hermitian: ") + (g.hermitian ? "yes" : "no"));
  r.notes.push_back(std::string("C diagonal and real: ") + (g.c_diagonal_real ? "yes" : "no"));
  r.notes.push_back(std::string("upper-right block equals conj(B)^t: ") +
                    (g.upper_right_is_conj_B_transpose ? "yes" : "no"));
  r.notes.push_back("mismatches against printed C, B, A: " + std::to_string(g.mismatches.size()));
  for (const auto& s : g.mismatches) r.notes.push_back("  " + s);
  r.notes.push_back("mismatches against printed image vectors: " +
                    std::to_string(m.monad_report.print_mismatches.size()));
  for (const auto& s : m.monad_report.print_mismatches) r.notes.push_back("  " + s);
  r.verdict = structure && r.identities.monad_b_after_a_zero ? "computed Gram matrix has the expected block structure"
                                                             : "Gram structure check FAILS";
  r.exit_code = structure && r.identities.monad_b_after_a_zero ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

// Annotation only: 12 significant digits of an exact value.
inline std::string approx_decimal(const GaussianRational& z) {
  auto render = [](const mpq_class& q) {
    mpf_class f(q, 256);
    char buf[64];
    gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
    return std::string(buf);
  };
  if (z.is_real()) return render(z.re());
  std::string im = render(z.im());
  if (im.front() != '-') im = "+" + im;
  return render(z.re()) + im + "i";
}

inline nlohmann::ordered_json to_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["command"] = r.command;
  doc["points"] = ordered_json::array();
  for (const auto& c : r.points) {
    ordered_json row;
    row["point"] = ordered_json::array();
    for (const auto& x : c.point) row["point"].push_back(x.to_string());
    row["K"] = ordered_json::array();
    for (std::size_t i = 0; i < 2; ++i)
      row["K"].push_back(ordered_json::array({c.K(i, 0).to_string(), c.K(i, 1).to_string()}));
    row["lambda"] = c.lambda.get_str();
    row["residual_max_abs_sq"] = c.max_abs_residual_sq.get_str();
    row["he_at_point"] = c.is_he_at_point;
    row["trace"] = c.trace.to_string();
    doc["points"].push_back(std::move(row));
  }
  doc["identities"] = {{"det_H", r.identities.det_H},
                       {"K_det_const4", r.identities.K_det_const4},
                       {"monad_b_after_a_zero", r.identities.monad_b_after_a_zero},
                       {"gram_matches_print", r.identities.gram_matches_print}};
  doc["verdict"] = r.verdict;
  return doc;
}

inline std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline std::string render_text(const Report& r, bool decimals = false) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "true" : "false"; };
  out << "command: " << r.command << "\n";
  for (const auto& c : r.points) {
    out << "point " << to_string(c.point) << "\n";
    out << "  K = " << matrix_to_string(c.K) << "\n";
    if (decimals) {
      out << "  K (approximate) = [[" << approx_decimal(c.K(0, 0)) << ", " << approx_decimal(c.K(0, 1)) << "], ["
          << approx_decimal(c.K(1, 0)) << ", " << approx_decimal(c.K(1, 1)) << "]]\n";
    }
    out << "  lambda = " << c.lambda.get_str() << ", residual max |.|^2 = " << c.max_abs_residual_sq.get_str()
        << ", trace = " << c.trace << "\n";
    out << "  " << point_verdict(c) << "\n";
  }
  out << "identities:\n";
  out << "  det_H: " << yes(r.identities.det_H) << "\n";
  out << "  K_det_const4: " << yes(r.identities.K_det_const4) << "\n";
  out << "  monad_b_after_a_zero: " << yes(r.identities.monad_b_after_a_zero) << "\n";
  out << "  gram_matches_print: " << yes(r.identities.gram_matches_print) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  for (const auto& mm : r.mismatches)
    out << "mismatch " << mm.check << ": expected " << mm.expected << ", got " << mm.actual << "\n";
  out << "verdict: " << r.verdict << "\n";
  return out.str();
}

}  // namespace hm
