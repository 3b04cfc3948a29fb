#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "strongties/graph.hpp"

namespace strongties {

// The ten-node toy graph used as the canonical scoring fixture. Node naming:
// focal node a, candidates b1..b3, distance-two nodes c1, c2 and d1..d4.
namespace fixture {
inline constexpr NodeId kA = 0;
inline constexpr NodeId kB1 = 1;
inline constexpr NodeId kB2 = 2;
inline constexpr NodeId kB3 = 3;
inline constexpr NodeId kC1 = 4;
inline constexpr NodeId kC2 = 5;
inline constexpr NodeId kD1 = 6;
inline constexpr NodeId kD2 = 7;
inline constexpr NodeId kD3 = 8;
inline constexpr NodeId kD4 = 9;
}  // namespace fixture

LayeredGraph fixture_graph();
std::string fixture_tsv();

struct FixtureCheck {
  bool pass = true;
  std::vector<std::string> lines;  // one line per comparison, pass or fail
};

/// Recomputes every candidate score on the fixture and compares (a, b1)
/// against the expected toy-example values; additionally cross-checks every
/// cycle-based scorer against the brute-force oracle for all candidates and
/// the remaining scorers against direct definition-level recomputation.
FixtureCheck run_fixture_check();

}  // namespace strongties
