#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ballsteinitz/plane_graph.hpp"

namespace ballsteinitz {

/// Input graph violates a documented precondition.
class PreconditionError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// The reduction search ran out of budget before reaching K4.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  std::size_t slack = 4;       // states may exceed |V(G)| by this many vertices
  std::size_t max_slack = 16;  // slack doubles on exhaustion up to this value
  std::size_t max_states = 200000;  // per slack round
};

struct SearchStats {
  std::size_t states_expanded = 0;
  std::size_t states_generated = 0;
  std::size_t rounds = 0;
  std::size_t final_slack = 0;
};

/// graphs[i+1] is the post-graph of steps[i]; graphs.front() is the input
/// and graphs.back() is K4.
struct ReductionTrace {
  std::vector<PlaneGraph> graphs;
  std::vector<ReductionStep> steps;
  SearchStats stats;
};

/// Throws PreconditionError unless g is simple, plane, 3-connected with at
/// least four vertices.
void require_polyhedral(const PlaneGraph& g);

bool is_k4(const PlaneGraph& g);

/// Depth-first search over simple reductions in both directions, memoized by
/// canonical code. Deterministic for equal inputs and limits.
ReductionTrace reduce_to_k4(const PlaneGraph& g, const SearchLimits& limits = {});

/// Re-applies every step from graphs.front() and checks each result equals
/// the recorded graph. Throws GraphError on mismatch.
void replay_trace(const ReductionTrace& trace);

}  // namespace ballsteinitz
