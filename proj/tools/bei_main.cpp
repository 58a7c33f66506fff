#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bei/commands.hpp"
#include "bei/error.hpp"
#include "bei/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"invariant calculator for binomial edge ideals of glued fan graphs"};
  app.set_version_flag("--version", std::string(bei::kKernelVersion));
  app.require_subcommand(1);

  bei::CommandOptions opt;
  bei::SuiteOptions sopt;
  std::string expr;

  auto add_common = [&](CLI::App* c, bool with_expr) {
    if (with_expr) c->add_option("expr", expr, "graph expression")->required();
    c->add_option("-m,--m", opt.m, "number of rows (>= 2)")->check(CLI::Range(2, 64));
    c->add_option("--char", opt.characteristic, "coefficient field characteristic");
    c->add_option("--gb-cap", opt.gb_cap, "variable cap for basis oracles");
    c->add_option("--res-cap", opt.res_cap, "variable cap for resolution oracles");
    c->add_option("--cutset-cap", opt.cutset_cap, "vertex cap for separator scans");
    c->add_option("--cache", opt.cache_dir, "cache directory (default: $BEI_CACHE)");
  };

  CLI::App* pred = app.add_subcommand("predict", "closed-form bounds only");
  add_common(pred, true);
  CLI::App* orac = app.add_subcommand("oracle", "computed ground truth only");
  add_common(orac, true);
  CLI::App* veri = app.add_subcommand("verify", "prediction against ground truth");
  add_common(veri, true);
  veri->add_flag("--formula-only", opt.formula_only, "skip the oracles");
  veri->add_flag("--csv", opt.csv, "CSV output");
  CLI::App* deco = app.add_subcommand("decompose", "separator family and minimal-prime dims");
  add_common(deco, true);
  deco->add_flag("--check-ideal", opt.check_ideal,
                 "verify that the minimal primes intersect to the ideal");
  CLI::App* suit = app.add_subcommand("suite", "run a deterministic case family");
  add_common(suit, false);
  suit->add_option("--family", sopt.family, "fans|pure|fp|composites|chains|random|all");
  suit->add_option("--count", sopt.random_count, "random case count");
  suit->add_option("--seed", sopt.seed, "random seed");
  suit->add_option("--csv-out", sopt.csv_path, "write all rows to a CSV file");
  suit->add_flag("--formula-only", opt.formula_only, "skip the oracles");
  suit->add_flag("--csv", opt.csv, "append CSV rows to the report");

  try {
    app.parse(argc, argv);
    if (pred->parsed()) return bei::cmd_predict(expr, opt, std::cout);
    if (orac->parsed()) return bei::cmd_oracle(expr, opt, std::cout);
    if (veri->parsed()) return bei::cmd_verify(expr, opt, std::cout);
    if (deco->parsed()) return bei::cmd_decompose(expr, opt, std::cout);
    if (suit->parsed()) return bei::cmd_suite(sopt, opt, std::cout);
    return 2;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const bei::BeiError& e) {
    std::cerr << "error (" << bei::BeiError::kind_name(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == bei::ErrorKind::Internal ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
