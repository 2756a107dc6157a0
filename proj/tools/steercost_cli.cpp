// steercost: locality and steering analysis of two-input/two-output boxes.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "steercost/box_io.hpp"
#include "steercost/errors.hpp"
#include "steercost/report.hpp"
#include "steercost/steering.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Opens --out, or falls back to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw steercost::ValidationError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_json(const std::string& path, const nlohmann::json& doc) {
  Output out(path);
  out.stream() << doc.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace steercost;
  CLI::App app{"Bell locality, EPR steering and steering cost of two-input/two-output boxes"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;
  int grid_n = kDefaultGrid;
  std::string family_name = "white";
  double v_min = 0.0;
  double v_max = 1.0;
  int steps = 11;
  double V = 0.9;
  std::string preset;
  bool no_convergence = false;
  std::string pr_bits;
  bool uniform = false;

  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--grid", grid_n, "Bloch-circle grid size for the numeric steering cost")
        ->check(CLI::Range(8, 100000));
  };

  auto* analyze = app.add_subcommand("analyze", "Full locality/steering report for a box (JSON)");
  analyze->add_option("--input", input, "Box JSON file {\"p\": [16 numbers]}")->required();
  add_grid(analyze);
  analyze->add_flag("--no-convergence", no_convergence, "Skip the 2x grid convergence check");
  analyze->add_option("--out", out_path, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "CSV sweep over a BB84 family");
  sweep->add_option("--family", family_name, "white or colored")->check(CLI::IsMember({"white", "colored"}));
  sweep->add_option("--vmin", v_min, "Lowest visibility");
  sweep->add_option("--vmax", v_max, "Highest visibility");
  sweep->add_option("--steps", steps, "Number of rows (>= 2)");
  add_grid(sweep);
  sweep->add_option("--out", out_path, "Output path (default stdout)");

  auto* decompose = app.add_subcommand("decompose", "LHV-LHS model or steering decomposition (JSON)");
  decompose->add_option("--input", input, "Box JSON file")->required();
  add_grid(decompose);
  decompose->add_option("--out", out_path, "Output path (default stdout)");

  auto* locc = app.add_subcommand("locc", "Monotonicity of the steering cost under a 1W-LOCC preset (JSON)");
  locc->add_option("--preset", preset, "Channel preset name")->required();
  locc->add_option("--family", family_name, "white or colored")->check(CLI::IsMember({"white", "colored"}));
  locc->add_option("--v,--V", V, "Visibility")->check(CLI::Range(0.0, 1.0));
  add_grid(locc);
  locc->add_option("--out", out_path, "Output path (default stdout)");

  auto* make_box = app.add_subcommand("make-box", "Write a family box, a PR box or the uniform box as JSON");
  make_box->add_option("--family", family_name, "white or colored")->check(CLI::IsMember({"white", "colored"}));
  make_box->add_option("--v,--V", V, "Visibility")->check(CLI::Range(0.0, 1.0));
  make_box->add_option("--pr", pr_bits, "PR box alpha,beta,gamma as three bits, e.g. 000");
  make_box->add_flag("--uniform", uniform, "The maximally mixed box");
  make_box->add_option("--out", out_path, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      emit_json(out_path, analyze_report(read_box_file(input), grid_n, !no_convergence));
    } else if (*sweep) {
      SweepOptions options;
      options.family = parse_family(family_name);
      options.v_min = v_min;
      options.v_max = v_max;
      options.steps = steps;
      options.grid_n = grid_n;
      Output out(out_path);
      write_sweep_csv(out.stream(), options);
    } else if (*decompose) {
      emit_json(out_path, decompose_report(read_box_file(input), grid_n));
    } else if (*locc) {
      emit_json(out_path, locc_report(preset, parse_family(family_name), V, grid_n));
    } else if (*make_box) {
      Box box = uniform_box();
      if (!pr_bits.empty()) {
        if (pr_bits.size() != 3 || pr_bits.find_first_not_of("01") != std::string::npos) {
          throw OutOfRange("--pr expects three bits such as 010, got '" + pr_bits + "'");
        }
        box = pr_box(pr_bits[0] - '0', pr_bits[1] - '0', pr_bits[2] - '0');
      } else if (!uniform) {
        box = family_box(parse_family(family_name), V);
      }
      emit_json(out_path, box_to_json(box));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
