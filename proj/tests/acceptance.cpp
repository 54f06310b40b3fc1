// Acceptance run: one PASS/FAIL line per criterion. The optional first
// argument is the path of the hm executable, used for the determinism check.

#include <hm/report.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using namespace hm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
}

struct CommandResult {
  std::string output;
  int status = -1;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe.get())) > 0) r.output.append(buf, got);
  r.status = pclose(pipe.release());
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = Clock::now();
  const Model m = build_model();
  const ScalarMatrix two = GaussianRational(2) * ScalarMatrix::identity(2);

  // 1-3: reference points
  const CurvatureReport k0 = mean_curvature(m.metric.derivatives, m.fs, point_x0());
  const double t0 = seconds_since(start);
  report(1, k0.K == two && t0 <= 60,
         "K(1,1,1,1) = " + matrix_to_string(k0.K) + " in " + std::to_string(t0) + " s including the symbolic build");

  const CurvatureReport k1 = mean_curvature(m.metric.derivatives, m.fs, point_x1());
  report(2, k1.K == two, "K(2,1,1,1) = " + matrix_to_string(k1.K));

  const CurvatureReport k2 = mean_curvature(m.metric.derivatives, m.fs, point_x2());
  const Report suite = run_suite(m);
  const bool verdict = suite.verdict.find("natural metric is NOT Hermitian-Einstein") != std::string::npos;
  report(3, k2.K == expected_K_x2() && !k2.is_he_at_point && verdict && suite.exit_code == 0,
         "K(1+i,1,1,1) = " + matrix_to_string(k2.K) + "; verdict \"" + suite.verdict + "\"");

  // 4: det H identity
  auto t = Clock::now();
  const DetIdentityResult det = verify_detH_identity(m.metric);
  const GaussianRational det_x0 = bareiss_determinant(evaluate(m.metric.H, point_x0()));
  const double t4 = seconds_since(t);
  report(4, det.screen_passed && det.exact && det_x0 == GaussianRational(mpq_class(1, 5)) && t4 <= 300,
         std::string("det H = prod|x_a|^2 / n exactly: ") + (det.exact ? "yes" : "no") + ", det H(1,1,1,1) = " +
             det_x0.to_string() + ", " + std::to_string(t4) + " s");

  // 5: determinant line bundle
  const bool kdet = det.exact && verify_Kdet_constant(m.fs);
  report(5, kdet, "K_det = 4 as a rational function identity");

  // 6: monad
  bool monad = true;
  for (const FrameVector& v : m.monad.image)
    for (const MultiPoly& c : apply_b(m.monad, v)) monad = monad && c.is_zero();
  report(6, monad && m.monad_report.kernel_in_kernel,
         "b(a_i) = 0 for the five image generators (and for a_1, a_2)");

  // 7: Gram matrix
  const GramReport& g = m.gram;
  const bool structure = g.hermitian && g.c_diagonal_real && g.upper_right_is_conj_B_transpose;
  std::string gram_detail = "Hermitian 7x7 with diagonal real C and upper-right conj(B)^t; " +
                            std::to_string(g.mismatches.size()) + " mismatches against printed C, B, A";
  for (const auto& s : g.mismatches) gram_detail += "; " + s;
  report(7, structure, gram_detail);

  // 8: jet oracle against the symbolic derivative cache
  t = Clock::now();
  std::size_t equal = 0, total = 0;
  for (const Point4& p : random_points(10, 2024, 3)) {
    const MetricPointData d = m.metric.derivatives.at(p);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (int a = 1; a <= 4; ++a)
          for (int b = 1; b <= 4; ++b) {
            ++total;
            if (d.dxy[a - 1][b - 1](i, j) == jet_mixed_second(m.metric.H(i, j), p, a, b)) ++equal;
          }
  }
  report(8, equal == 640 && total == 640,
         std::to_string(equal) + "/" + std::to_string(total) + " exact equalities at 10 seeded points in " +
             std::to_string(seconds_since(t)) + " s");

  // 9: invariants at random points
  t = Clock::now();
  const std::vector<Point4> pts = random_points(25, 4242, 3);
  std::size_t evaluated = 0;
  ScanSummary s;
  for (const Point4& p : pts)
    if (domain_check(m.metric, p).ok()) ++evaluated;
  if (evaluated == pts.size()) s = summarize(evaluate_points(m, pts, 2, 1));
  const double t9 = seconds_since(t);
  report(9, evaluated == 25 && s.evaluated == 25 && s.violations() == 0 && t9 <= 600,
         std::to_string(s.evaluated) + " points: trace violations " + std::to_string(s.trace_violations) +
             ", non-positive H " + std::to_string(s.positivity_violations) + ", " +
             to_string(kFrozenSelfAdjointness) + " not Hermitian " + std::to_string(s.self_adjoint_violations) +
             ", " + std::to_string(t9) + " s");

  // 10: determinism of the CLI report
  if (argc > 1) {
    const std::string cmd = std::string("\"") + argv[1] + "\" suite --output json";
    const CommandResult a = run_command(cmd), b = run_command(cmd);
    report(10, a.status == 0 && b.status == 0 && !a.output.empty() && a.output == b.output,
           "two runs of `hm suite --output json` are byte-identical (" + std::to_string(a.output.size()) + " bytes)");
  } else {
    const std::string a = render_json(run_suite(m)), b = render_json(run_suite(m));
    report(10, a == b, "two suite reports rendered in-process are byte-identical (no CLI path given)");
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
