// hm: exact Hermitian-Einstein checks for the natural metric on the
// Horrocks-Mumford bundle E(-2).

#include <hm/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void emit(const hm::Report& r, const std::string& format, bool decimals) {
  if (format == "json") {
    std::cout << hm::render_json(r);
    for (const auto& m : r.mismatches)
      std::cerr << "mismatch " << m.check << ": expected " << m.expected << ", got " << m.actual << "\n";
  } else {
    std::cout << hm::render_text(r, decimals);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact mean curvature of the natural metric on the Horrocks-Mumford bundle E(-2)"};
  app.require_subcommand(1);

  std::string format = "text";
  bool decimals = false;
  unsigned threads = 1;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--decimal", decimals, "Also print approximate decimals (text output)");
  };

  auto* suite = app.add_subcommand("suite", "Reproduce K at the three reference points and the identities");
  add_output(suite);
  suite->add_option("--threads", threads, "Worker threads for point evaluation")->check(CLI::PositiveNumber);

  std::string point_text;
  auto* point = app.add_subcommand("point", "Evaluate K at one point of the chart");
  add_output(point);
  point->add_option("--point", point_text, "Four comma-separated Gaussian rationals")->required();

  std::string sampler;
  std::size_t count = 25;
  std::uint64_t seed = 1;
  long cap = 3;
  std::string values;
  auto* scan = app.add_subcommand("scan", "Evaluate K at sampled points and count invariant violations");
  add_output(scan);
  scan->add_option("--sampler", sampler, "random or grid")->required()->check(CLI::IsMember({"random", "grid"}));
  scan->add_option("--count", count, "Number of random points");
  scan->add_option("--seed", seed, "Random seed");
  scan->add_option("--cap", cap, "Bound on numerator and denominator magnitudes")->check(CLI::PositiveNumber);
  scan->add_option("--values", values, "Comma-separated coordinate values for the grid sampler");
  scan->add_option("--threads", threads, "Worker threads for point evaluation")->check(CLI::PositiveNumber);

  auto* det = app.add_subcommand("det-check", "Verify the closed form of det H exactly");
  add_output(det);
  auto* gram = app.add_subcommand("gram-check", "Compare the computed Gram blocks with the printed ones");
  add_output(gram);

  std::string out_path;
  auto* exp = app.add_subcommand("export", "Write H and its cached partials as sorted-term text");
  exp->add_option("--out", out_path, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hm::kExitParseError;
  }

  try {
    hm::Point4 p;
    std::vector<hm::Point4> points;
    if (*point) p = hm::parse_point(point_text);
    if (*scan) {
      if (sampler == "grid") {
        if (values.empty()) throw hm::ParseError("--values is required for the grid sampler");
        points = hm::grid_points(hm::parse_values(values));
      } else {
        points = hm::random_points(count, seed, cap);
      }
    }

    const hm::Model model = hm::build_model();
    hm::Report report;
    if (*suite) {
      report = hm::run_suite(model, {2, threads});
    } else if (*point) {
      report = hm::eval_point(model, p);
      if (report.exit_code == hm::kExitDomainError) std::cerr << report.verdict << "\n";
    } else if (*scan) {
      report = hm::scan(model, points, threads, [](const std::string& line) { std::cerr << line << "\n"; });
    } else if (*det) {
      report = hm::det_check(model);
    } else if (*gram) {
      report = hm::gram_report(model);
    } else {
      std::ofstream file(out_path);
      if (!file) {
        std::cerr << "cannot open " << out_path << "\n";
        return 1;
      }
      hm::export_metric(model.metric, file);
      return file ? 0 : 1;
    }
    emit(report, format, decimals);
    return report.exit_code;
  } catch (const hm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return hm::kExitParseError;
  }
}
