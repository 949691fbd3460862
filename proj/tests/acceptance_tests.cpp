// Dedicated acceptance binary: runs every criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <cstdio>

#include "steklov/acceptance.hpp"

int main() {
  const auto results = steklov::run_acceptance();
  return steklov::report_acceptance(results, stdout);
}
