#pragma once

#include <cstdint>
#include <vector>

#include "ftkc/graph.hpp"
#include "ftkc/rational.hpp"

namespace ftkc {

// Directed s-t network whose arcs carry a finite capacity or the symbolic
// infinite marker. Cap is std::int64_t or Integer.
template <class Cap>
class FlowNetwork {
 public:
  struct Arc {
    int from;
    int to;
    Cap capacity;
    bool infinite;
  };

  FlowNetwork(int nodes, int source, int sink);

  int add_node();
  int add_arc(int from, int to, Cap capacity);
  int add_infinite_arc(int from, int to);

  int node_count() const { return nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  void check_endpoints(int from, int to) const;

  int nodes_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
};

template <class Cap>
struct FlowResult {
  bool infinite = false;
  Cap value{};
  std::vector<Cap> flow;          // per arc; empty when infinite
  std::vector<char> source_side;  // minimum cut; empty when infinite
};

// Edmonds-Karp. When some s-t path uses only infinite arcs the value is
// infinite and no flow or cut is reported.
template <class Cap>
FlowResult<Cap> max_flow(const FlowNetwork<Cap>& net);

extern template class FlowNetwork<std::int64_t>;
extern template class FlowNetwork<Integer>;
extern template FlowResult<std::int64_t> max_flow(const FlowNetwork<std::int64_t>&);
extern template FlowResult<Integer> max_flow(const FlowNetwork<Integer>&);

struct AssignmentResult {
  bool ok = false;
  std::vector<int> assignment;  // client -> center, when ok
  VertexSet witness;            // clients U with |U| > caps(allowed(U)), when not ok
};

// Assigns every client to an allowed center without exceeding capacities, or
// returns a set of clients violating Hall's condition.
AssignmentResult capacitated_assignment(int clients, int centers, const std::vector<std::vector<int>>& allowed,
                                        const std::vector<Capacity>& caps);

}  // namespace ftkc
