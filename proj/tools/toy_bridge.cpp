// Serves the built-in toy world over the bridge line protocol on
// stdin/stdout. Reference peer for external environment bridges.
#include <iostream>

#include "neoplanner/bridge_env.hpp"
#include "neoplanner/toy_world.hpp"

int main() {
  std::ios::sync_with_stdio(false);
  neoplanner::ToyWorld world;
  neoplanner::serve_bridge(world, std::cin, std::cout);
  return 0;
}
