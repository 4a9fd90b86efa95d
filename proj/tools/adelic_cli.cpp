// adelic: volumes, lattice-point counts, bound checks and example
// reproductions for adelic polytopes over totally real fields.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adelic/cli.hpp"

namespace {

adelic::Rational parse_width(const std::string& text) {
  if (text.find_first_of("eE.") == std::string::npos) return adelic::parse_rational(text);
  double x = std::stod(text);
  if (!(x > 0)) throw adelic::ParseError("precision must be positive");
  return adelic::Rational(x);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace adelic;

  CLI::App app{"Exact computations with adelic polytopes over totally real number fields"};
  app.require_subcommand(1);

  std::string convention;
  std::string format = "text";
  std::string precision = "1/1000000";
  std::uint64_t cap = EnumerateOptions{}.cap;
  app.add_option("--convention", convention, "Measure convention for reported values")
      ->check(CLI::IsMember({"proof", "discriminant"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "svg"}));
  app.add_option("--precision", precision, "Enclosure width for irrational values (p/q or decimal)");
  app.add_option("--cap", cap, "Maximum number of enumeration candidates");

  std::string instance_path;
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", instance_path, "Instance JSON file, - for stdin")->required();
    sub->fallthrough();
  };

  auto* volume = app.add_subcommand("volume", "Adelic volume in both conventions");
  add_instance(volume);

  bool list_points = false;
  auto* count = app.add_subcommand("count", "Number of points of C in K^n");
  add_instance(count);
  count->add_flag("--points", list_points, "List the points");

  std::string bound = "all";
  auto* check = app.add_subcommand("check", "Verify point-count bounds; exit 4 if one fails");
  add_instance(check);
  check->add_option("--bound", bound, "Bound name or all")
      ->check(CLI::IsMember({"all", "blichfeldt", "blichfeldt_adelic", "henze", "henze_adelic", "gaudron", "embedded",
                             "blichfeldt_embedded"}));

  std::string example_name;
  cli::ExampleOptions example_options;
  std::string window;
  auto* example = app.add_subcommand("example", "Reproduce figure1, example1 or example2");
  example->add_option("name", example_name, "figure1, example1 or example2")
      ->required()
      ->check(CLI::IsMember({"figure1", "example1", "example2"}));
  example->add_option("--out-dir", example_options.out_dir, "Write figure1.csv and figure1.svg here");
  example->add_option("--window", window, "Half-width of the plotted window");
  example->add_flag("!--no-labels", example_options.svg.labels, "Omit point labels in the SVG");
  example->fallthrough();

  int k_max = 20;
  auto* growth = app.add_subcommand("growth", "Counts of kC for k = 1..k_max and the fitted exponent");
  add_instance(growth);
  growth->add_option("--k-max", k_max, "Largest dilation factor (>= 4)");

  int place = 1;
  auto* triangulate = app.add_subcommand("triangulate", "Placing triangulation at a real place");
  add_instance(triangulate);
  triangulate->add_option("--place", place, "Real place, numbered from 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitParse;
  }

  cli::Result result = cli::guarded([&]() -> cli::Result {
    cli::Options opt;
    opt.format = cli::parse_format(format);
    opt.precision = parse_width(precision);
    if (sgn(opt.precision) <= 0) throw ParseError("precision must be positive");
    opt.enumerate.cap = cap;
    if (!convention.empty()) opt.convention = io::parse_convention(convention);

    if (example->parsed()) {
      if (!window.empty()) example_options.svg.half_width = parse_rational(window);
      return cli::cmd_example(example_name, opt, example_options);
    }
    io::Instance in = io::parse_instance(cli::read_source(instance_path));
    if (volume->parsed()) return cli::cmd_volume(in, opt);
    if (count->parsed()) return cli::cmd_count(in, opt, list_points);
    if (check->parsed()) return cli::cmd_check(in, opt, bound);
    if (growth->parsed()) return cli::cmd_growth(in, opt, k_max);
    return cli::cmd_triangulate(in, opt, place);
  });
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
