// Prints the most frequently executed in-scope classes of a trace.
//
//   key_classes TRACE [PREFIX...]

#include <fstream>
#include <iostream>

#include "dyntest/dynamic_metrics.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: key_classes TRACE [PREFIX...]\n";
    return 1;
  }
  try {
    const auto trace = dyntest::parse_trace_file(argv[1]);
    dyntest::ScopeFilter scope;
    for (int i = 2; i < argc; ++i) scope.include_prefixes.emplace_back(argv[i]);

    const auto metrics = dyntest::compute_class_metrics(trace, scope);
    const auto ranking = dyntest::rank_key_classes(metrics, 5);
    for (const auto& [id, ef] : ranking.entries) {
      const auto& m = metrics.at(id);
      std::cout << id << "  EF=" << ef << "  IC=" << m.ic << "  EC=" << m.ec << '\n';
    }
  } catch (const dyntest::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}
