#include "acceptance/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"leglab acceptance criteria"};
  int criterion = 0;
  bool as_json = false;
  app.add_option("--criterion", criterion, "run a single criterion");
  app.add_flag("--json", as_json, "print JSON records");
  CLI11_PARSE(app, argc, argv);

  std::vector<leglab::acceptance::CriterionResult> results;
  try {
    if (criterion != 0) results.push_back(leglab::acceptance::run_criterion(criterion));
    else results = leglab::acceptance::run_all();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  bool ok = true;
  for (const auto& r : results) {
    if (!as_json) std::cout << leglab::acceptance::format_line(r) << '\n';
    ok = ok && r.pass();
  }
  if (as_json) std::cout << leglab::acceptance::to_json(results, true).dump(2) << '\n';
  return ok ? 0 : 1;
}
