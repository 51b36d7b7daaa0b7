// Prints the Allen composition table as a C++ initializer, computed by the
// endpoint-enumeration oracle. Output is committed as src/allen_table.inc.
#include <cstdio>

#include "support/oracles.hpp"

int main() {
  const auto table = proctime::oracle::enumerate_composition_table();
  std::printf("// Generated by tools/gen_composition.cpp. Do not edit.\n");
  std::printf("// Row: first relation, column: second relation, canonical order.\n");
  for (const auto& row : table) {
    std::printf("{");
    for (std::size_t j = 0; j < row.size(); ++j) std::printf("0x%04x%s", row[j].mask(), j + 1 < row.size() ? ", " : "");
    std::printf("},\n");
  }
}
