#include <iostream>

#include <CLI11.hpp>

#include "coxgrowth/cli.hpp"

int main(int argc, char** argv) {
  using namespace coxgrowth;
  cli::RunConfig cfg;
  std::string suite, eval;
  bool no_gate = false;

  CLI::App app{"Growth of Coxeter groups: enumeration, lemma checks, growth series"};
  app.add_option("command", cfg.command, "info | ball | stats | verify | series")
      ->required()
      ->check(CLI::IsMember({"info", "ball", "stats", "verify", "series"}));
  app.add_option("--matrix", cfg.matrix_path, "Coxeter matrix JSON file")->required();
  app.add_option("--depth", cfg.depth, "ball radius N (default 12 / 10 / 8 for rank <= 3 / 4 / >= 5)");
  app.add_option("--cap", cfg.cap, "element cap for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "write output here instead of stdout");
  app.add_option("--suite", suite, "comma list of L32,L33,L34,L35,L45,k-ratio,P29,C210,L211,L24");
  app.add_option("--eval", eval, "comma list of evaluation points P/Q");
  app.add_flag("--no-hypothesis-gate", no_gate, "run verifiers outside their hypotheses and report counterexamples");

  try {
    app.parse(argc, argv);
    cfg.suite = cli::parse_list(suite);
    cfg.eval = cli::parse_eval(eval);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidationError;
  }
  cfg.hypothesis_gate = !no_gate;
  return cli::run(cfg, std::cout, std::cerr);
}
