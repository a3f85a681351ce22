#include "ballsteinitz/reduction.hpp"

#include <algorithm>
#include <unordered_set>

namespace ballsteinitz {

void require_polyhedral(const PlaneGraph& g) {
  if (g.vertex_count() < 4) throw PreconditionError("graph needs at least four vertices");
  if (!is_simple(g)) throw PreconditionError("graph is not simple");
  if (!is_plane(g)) throw PreconditionError("rotation system is not a plane embedding");
  if (!is_three_connected(g)) throw PreconditionError("graph is not 3-connected");
}

bool is_k4(const PlaneGraph& g) {
  return g.vertex_count() == 4 && g.edge_count() == 6 && is_simple(g);
}

namespace {

struct Candidate {
  PlaneGraph graph;
  ReductionStep step;
  std::size_t size;
};

std::vector<Site> sites(const PlaneGraph& g) {
  std::vector<Site> out;
  for (const Face& f : faces(g))
    if (f.size() == 3)
      out.push_back({Direction::DeltaToY, -1, {f.darts[0].tail, f.darts[1].tail, f.darts[2].tail}});
  for (VertexId v : g.vertices())
    if (g.degree(v) == 3) out.push_back({Direction::YToDelta, v, {-1, -1, -1}});
  return out;
}

class Search {
 public:
  Search(std::size_t cap, std::size_t budget, SearchStats& stats)
      : cap_(cap), budget_(budget), stats_(stats) {}

  bool run(const PlaneGraph& g) {
    visited_.insert(canonical_code(g));
    return dfs(g);
  }

  std::vector<PlaneGraph> graphs;
  std::vector<ReductionStep> steps;
  bool exhausted = false;

 private:
  bool dfs(const PlaneGraph& g) {
    if (is_k4(g)) return true;
    if (++expanded_ > budget_) {
      exhausted = true;
      return false;
    }
    ++stats_.states_expanded;
    std::vector<Candidate> next;
    for (const Site& site : sites(g)) {
      auto [h, step] = simple_reduction(g, site);
      if (h.vertex_count() < 4 || h.vertex_count() > cap_) continue;
      if (!is_simple(h) || !is_three_connected(h)) continue;
      if (!visited_.insert(canonical_code(h)).second) continue;
      ++stats_.states_generated;
      const std::size_t size = h.vertex_count() + h.edge_count();
      next.push_back({std::move(h), std::move(step), size});
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const Candidate& a, const Candidate& b) { return a.size < b.size; });
    for (auto& c : next) {
      graphs.push_back(c.graph);
      steps.push_back(c.step);
      if (dfs(c.graph)) return true;
      graphs.pop_back();
      steps.pop_back();
      if (exhausted) return false;
    }
    return false;
  }

  std::size_t cap_;
  std::size_t budget_;
  std::size_t expanded_ = 0;
  SearchStats& stats_;
  std::unordered_set<std::string> visited_;
};

}  // namespace

ReductionTrace reduce_to_k4(const PlaneGraph& g, const SearchLimits& limits) {
  require_polyhedral(g);
  ReductionTrace trace;
  trace.graphs.push_back(g);
  if (is_k4(g)) return trace;
  for (std::size_t slack = std::max<std::size_t>(limits.slack, 1);; slack *= 2) {
    slack = std::min(slack, limits.max_slack);
    ++trace.stats.rounds;
    trace.stats.final_slack = slack;
    Search search(g.vertex_count() + slack, limits.max_states, trace.stats);
    if (search.run(g)) {
      trace.graphs.insert(trace.graphs.end(), search.graphs.begin(), search.graphs.end());
      trace.steps = std::move(search.steps);
      return trace;
    }
    if (slack >= limits.max_slack)
      throw SearchExhausted("no reduction to K4 found within slack " + std::to_string(slack) +
                            " and " + std::to_string(limits.max_states) + " states per round");
  }
}

void replay_trace(const ReductionTrace& trace) {
  if (trace.graphs.size() != trace.steps.size() + 1)
    throw GraphError("trace has mismatched graph and step counts");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto [out, step] = simple_reduction(trace.graphs[i], trace.steps[i].site);
    if (!(out == trace.graphs[i + 1]))
      throw GraphError("step " + std::to_string(i) + " does not reproduce the recorded graph");
    if (!(apply_step(trace.graphs[i], trace.steps[i]) == trace.graphs[i + 1]))
      throw GraphError("step " + std::to_string(i) + " record does not reproduce its graph");
  }
  if (!is_k4(trace.graphs.back())) throw GraphError("trace does not end at K4");
}

}  // namespace ballsteinitz
