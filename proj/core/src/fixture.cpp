#include "strongties/fixture.hpp"

#include <cmath>
#include <sstream>

#include "strongties/motifs.hpp"
#include "strongties/oracle.hpp"

namespace strongties {

namespace {

struct FixtureEdge {
  NodeId u, v;
  bool strong;
};

constexpr FixtureEdge kFixtureEdges[] = {
    {fixture::kA, fixture::kB1, false},  {fixture::kA, fixture::kB2, false},
    {fixture::kA, fixture::kB3, false},  {fixture::kB1, fixture::kB3, false},
    {fixture::kB2, fixture::kD1, false}, {fixture::kB2, fixture::kD2, false},
    {fixture::kB3, fixture::kD3, false}, {fixture::kB3, fixture::kD4, false},
    {fixture::kB1, fixture::kB2, true},  {fixture::kB2, fixture::kB3, true},
    {fixture::kB1, fixture::kC1, true},  {fixture::kB1, fixture::kC2, true},
    {fixture::kB2, fixture::kC2, true},  {fixture::kC1, fixture::kC2, true},
};

}  // namespace

LayeredGraph fixture_graph() {
  GraphBuilder builder;
  for (NodeId v = 0; v <= fixture::kD4; ++v) builder.add_node(v);
  for (const auto& e : kFixtureEdges) builder.add_edge(e.u, e.v, e.strong);
  return builder.finalize();
}

std::string fixture_tsv() {
  std::string out = "# toy scoring fixture\n";
  for (const auto& e : kFixtureEdges) {
    out += std::to_string(e.u) + "\t" + std::to_string(e.v) + "\t0\n";
    if (e.strong)
      out += std::to_string(e.u) + "\t" + std::to_string(e.v) + "\t1\n";
  }
  return out;
}

namespace {

void check_eq(FixtureCheck& result, const std::string& what, double got,
              double want, double tol = 0.0) {
  const bool ok = tol == 0.0 ? got == want : std::abs(got - want) <= tol;
  std::ostringstream line;
  line.precision(12);
  line << (ok ? "ok   " : "FAIL ") << what << ": got " << got << ", expected "
       << want;
  result.lines.push_back(line.str());
  if (!ok) result.pass = false;
}

}  // namespace

FixtureCheck run_fixture_check() {
  FixtureCheck result;
  const LayeredGraph g = fixture_graph();
  const EgoScorer scorer(g, fixture::kA);

  // Expected values for candidate b1 from the toy example.
  const CandidateScores b1 = scorer.score(fixture::kB1);
  check_eq(result, "degree(a,b1)", b1.degree, 5);
  check_eq(result, "embeddedness(a,b1)", b1.embeddedness, 2);
  check_eq(result, "adamic_adar(a,b1)", b1.adamic_adar,
           1.0 / std::log(5.0) + 1.0 / std::log(6.0), 1e-9);
  check_eq(result, "h1(a,b1)", b1.h1, 5);
  check_eq(result, "triangles(a,b1)", b1.triangles, 1);
  check_eq(result, "squares_inside(a,b1)", b1.squares_inside, 1);
  check_eq(result, "squares_outside(a,b1)", b1.squares_outside, 1);
  check_eq(result, "pentagons_inside(a,b1)", b1.pentagons_inside, 0);
  check_eq(result, "pentagons_outside(a,b1)", b1.pentagons_outside, 1);

  // Oracle cross-check of every cycle scorer, and definition-level
  // recomputation of the rest, for every candidate.
  for (NodeId b : scorer.candidates()) {
    const std::string tag = "(a,b=" + std::to_string(b) + ")";
    const CandidateScores s = scorer.score(b);
    check_eq(result, "triangles" + tag + " vs oracle", s.triangles,
             static_cast<double>(oracle_count_cycles(
                 g, fixture::kA, b, 3, CycleMotif::TriangleStrong)));
    check_eq(result, "squares_inside" + tag + " vs oracle", s.squares_inside,
             static_cast<double>(oracle_count_cycles(
                 g, fixture::kA, b, 4, CycleMotif::SquareInside)));
    check_eq(result, "squares_outside" + tag + " vs oracle", s.squares_outside,
             static_cast<double>(oracle_count_cycles(
                 g, fixture::kA, b, 4, CycleMotif::SquareOutside)));
    check_eq(result, "pentagons_inside" + tag + " vs oracle",
             s.pentagons_inside,
             static_cast<double>(oracle_count_cycles(
                 g, fixture::kA, b, 5, CycleMotif::PentagonInside)));
    check_eq(result, "pentagons_outside" + tag + " vs oracle",
             s.pentagons_outside,
             static_cast<double>(oracle_count_cycles(
                 g, fixture::kA, b, 5, CycleMotif::PentagonOutside)));

    std::uint32_t deg = 0, mutual = 0;
    double aa = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != b && g.has_edge(b, v, Layer::Weak)) ++deg;
      if (v == b || v == fixture::kA) continue;
      if (g.has_edge(b, v, Layer::Weak) &&
          g.has_edge(fixture::kA, v, Layer::Weak)) {
        ++mutual;
        std::uint32_t dv = 0;
        for (NodeId w = 0; w < g.node_count(); ++w)
          if (w != v && g.has_edge(v, w, Layer::Weak)) ++dv;
        aa += 1.0 / std::log(static_cast<double>(dv));
      }
    }
    check_eq(result, "degree" + tag + " vs recount", s.degree, deg);
    check_eq(result, "embeddedness" + tag + " vs recount", s.embeddedness,
             mutual);
    check_eq(result, "adamic_adar" + tag + " vs recount", s.adamic_adar, aa,
             1e-12);
    const bool has_strong = g.degree(b, Layer::Strong) > 0;
    check_eq(result, "h1" + tag + " vs recount", s.h1,
             has_strong ? static_cast<double>(deg) : 0.0);
  }
  return result;
}

}  // namespace strongties
