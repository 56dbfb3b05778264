#include <iostream>

#include "rlcan/accept.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto results = rlcan::run_acceptance(std::cout, only);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
