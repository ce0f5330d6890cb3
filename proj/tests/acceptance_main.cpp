// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <CLI11.hpp>

#include <iostream>

#include "dynprice/acceptance.hpp"

int main(int argc, char** argv) {
  dynprice::AcceptanceOptions opts;
  CLI::App app{"acceptance criteria"};
  app.add_option("--seed", opts.seed);
  app.add_option("--workers", opts.workers);
  app.add_option("--reps", opts.replications);
  app.add_option("--criteria", opts.only)->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& r : dynprice::run_acceptance(opts)) {
    std::cout << dynprice::format_result(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
