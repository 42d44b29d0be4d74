#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

void add_common_flags(CLI::App* sub, crsu2::cli::RunConfig& cfg) {
  sub->add_option("--lambda", cfg.lambdas, "lambda values (repeatable)");
  sub->add_option("--lambda-from", cfg.lambda_from, "start of a lambda range");
  sub->add_option("--lambda-to", cfg.lambda_to, "end of a lambda range (inclusive)");
  sub->add_option("--samples", cfg.samples, "number of evenly spaced samples in the range");
  sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, crsu2::cli::Format>{{"text", crsu2::cli::Format::text},
                                                    {"json", crsu2::cli::Format::json},
                                                    {"csv", crsu2::cli::Format::csv}},
          CLI::ignore_case));
  sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
  sub->add_option("--tol", cfg.tol, "tolerance for the command's own checks");
  sub->add_option("--tol-scale", cfg.tol_scale, "multiplier on every verify tolerance")->capture_default_str();
  sub->add_option("--steps", cfg.steps, "RK4 steps for transport")->capture_default_str();
  sub->add_option("--fd-step", cfg.fd_step, "finite difference step")->capture_default_str();
  sub->add_option("--max-iter", cfg.max_iterations, "solver iteration cap")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan connections of the left-invariant CR structures on SU(2)"};
  app.require_subcommand(1);
  crsu2::cli::RunConfig cfg;

  const std::pair<const char*, const char*> commands[] = {
      {"verify", "run every invariant suite"},
      {"curvature", "curvature on basis pairs, closed form beside the bracket computation"},
      {"sweep", "obstruction and normality residual over a lambda range"},
      {"solve", "rederive phi_lambda by Newton iteration"},
      {"transport", "parallel transport demos"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_flags(sub, cfg);
    sub->callback([&cfg, n = std::string(name)] { cfg.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  crsu2::cli::CommandResult result;
  try {
    result = crsu2::cli::run_command(cfg);
  } catch (const crsu2::cli::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string text = crsu2::cli::render(cfg, result);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << cfg.out << '\n';
      return 2;
    }
    f << text;
  }

  if (const auto* fail = result.report.first_failure()) {
    std::cerr << "first failing check: " << fail->name << " (" << fail->inputs << ")\n";
    return 1;
  }
  return 0;
}
