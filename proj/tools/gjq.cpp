#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gjq_cli.hpp"

namespace {

void add_common(CLI::App& sub, gjq::cli::CliConfig& c) {
  sub.add_option("--n", c.n, "polynomial degree")->required();
  sub.add_option("--alpha", c.alpha, "exponent of (1-x)")->default_val(0.0);
  sub.add_option("--beta", c.beta, "exponent of (1+x)")->default_val(0.0);
  sub.add_option("--order", c.order, "node correction order: 0, 2 or 4")->default_val(4);
  sub.add_option("--J", c.J, "truncation order of the coefficient series")->default_val(3);
  sub.add_option("--format", c.format, "csv or json")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--output,-o", c.output, "output file (default: standard output)");
  sub.add_flag("--oracle", c.oracle, "use the extended-precision oracle");
  sub.add_option("--digits", c.digits, "significant digits (<= 17, or <= 32 with --oracle)")->default_val(17);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-Jacobi nodes, weights and error reports"};
  app.require_subcommand(1);
  gjq::cli::CliConfig c;

  auto* nodes = app.add_subcommand("nodes", "zeros of P_n^(alpha,beta)");
  auto* weights = app.add_subcommand("weights", "quadrature weights");
  auto* rule = app.add_subcommand("rule", "nodes and weights");
  auto* eval = app.add_subcommand("eval", "P_n, P_n' and the scaled function v at --x");
  auto* check = app.add_subcommand("check", "per-node errors against the oracle");
  auto* bench = app.add_subcommand("bench", "timing of parameter, node and weight phases");
  for (auto* sub : {nodes, weights, rule, eval, check, bench}) add_common(*sub, c);
  for (auto* sub : {weights, rule})
    sub->add_option("--method", c.method, "automatic, asymptotic, oracle or hybrid")
        ->default_val("automatic")
        ->check(CLI::IsMember({"automatic", "asymptotic", "oracle", "hybrid"}));
  eval->add_option("--x", c.x, "evaluation point(s)")->required();
  bench->add_option("--repeat", c.repeat, "repetitions")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(gjq::cli::ExitCode::domain);
  }
  c.command = app.get_subcommands().front()->get_name();
  return gjq::cli::run(c, std::cout, std::cerr);
}
