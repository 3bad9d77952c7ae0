#include "ftkc/flow.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "ftkc/errors.hpp"

namespace ftkc {

template <class Cap>
FlowNetwork<Cap>::FlowNetwork(int nodes, int source, int sink) : nodes_(nodes), source_(source), sink_(sink) {
  if (source == sink || source < 0 || sink < 0 || source >= nodes || sink >= nodes) {
    throw ContractViolation("invalid source/sink");
  }
}

template <class Cap>
int FlowNetwork<Cap>::add_node() {
  return nodes_++;
}

template <class Cap>
void FlowNetwork<Cap>::check_endpoints(int from, int to) const {
  if (from < 0 || to < 0 || from >= nodes_ || to >= nodes_) throw ContractViolation("arc endpoint out of range");
  if (to == source_) throw ContractViolation("arc into the source");
  if (from == sink_) throw ContractViolation("arc out of the sink");
}

template <class Cap>
int FlowNetwork<Cap>::add_arc(int from, int to, Cap capacity) {
  check_endpoints(from, to);
  if (capacity < 0) throw ContractViolation("negative arc capacity");
  arcs_.push_back(Arc{from, to, std::move(capacity), false});
  return static_cast<int>(arcs_.size()) - 1;
}

template <class Cap>
int FlowNetwork<Cap>::add_infinite_arc(int from, int to) {
  check_endpoints(from, to);
  arcs_.push_back(Arc{from, to, Cap(0), true});
  return static_cast<int>(arcs_.size()) - 1;
}

namespace {

template <class Cap>
struct Residual {
  // Edge 2i is arc i forward, edge 2i+1 its reverse.
  std::vector<int> head;
  std::vector<Cap> cap;
  std::vector<char> unbounded;
  std::vector<std::vector<int>> out;
};

}  // namespace

template <class Cap>
FlowResult<Cap> max_flow(const FlowNetwork<Cap>& net) {
  const auto& arcs = net.arcs();
  const int n = net.node_count();
  const int s = net.source();
  const int t = net.sink();

  Residual<Cap> r;
  r.out.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    r.head.push_back(a.to);
    r.cap.push_back(a.infinite ? Cap(0) : a.capacity);
    r.unbounded.push_back(a.infinite ? 1 : 0);
    r.head.push_back(a.from);
    r.cap.push_back(Cap(0));
    r.unbounded.push_back(0);
    r.out[static_cast<std::size_t>(a.from)].push_back(static_cast<int>(2 * i));
    r.out[static_cast<std::size_t>(a.to)].push_back(static_cast<int>(2 * i + 1));
  }

  FlowResult<Cap> result;

  // A path of infinite arcs never disappears, so one check up front suffices.
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const int e : r.out[static_cast<std::size_t>(x)]) {
        const int y = r.head[static_cast<std::size_t>(e)];
        if (r.unbounded[static_cast<std::size_t>(e)] && !seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          queue.push_back(y);
        }
      }
    }
    if (seen[static_cast<std::size_t>(t)]) {
      result.infinite = true;
      return result;
    }
  }

  auto usable = [&](int e) { return r.unbounded[static_cast<std::size_t>(e)] || r.cap[static_cast<std::size_t>(e)] > 0; };

  Cap total(0);
  std::vector<int> via(static_cast<std::size_t>(n));
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{s};
    via[static_cast<std::size_t>(s)] = -2;
    while (!queue.empty() && via[static_cast<std::size_t>(t)] == -1) {
      const int x = queue.front();
      queue.pop_front();
      for (const int e : r.out[static_cast<std::size_t>(x)]) {
        const int y = r.head[static_cast<std::size_t>(e)];
        if (via[static_cast<std::size_t>(y)] == -1 && usable(e)) {
          via[static_cast<std::size_t>(y)] = e;
          queue.push_back(y);
        }
      }
    }
    if (via[static_cast<std::size_t>(t)] == -1) break;

    std::optional<Cap> bottleneck;
    for (int x = t; x != s;) {
      const int e = via[static_cast<std::size_t>(x)];
      if (!r.unbounded[static_cast<std::size_t>(e)]) {
        const Cap& c = r.cap[static_cast<std::size_t>(e)];
        if (!bottleneck || c < *bottleneck) bottleneck = c;
      }
      x = r.head[static_cast<std::size_t>(e ^ 1)];
    }
    if (!bottleneck) throw ContractViolation("unbounded augmenting path after the infinite-path check");
    for (int x = t; x != s;) {
      const int e = via[static_cast<std::size_t>(x)];
      if (!r.unbounded[static_cast<std::size_t>(e)]) r.cap[static_cast<std::size_t>(e)] -= *bottleneck;
      r.cap[static_cast<std::size_t>(e ^ 1)] += *bottleneck;
      x = r.head[static_cast<std::size_t>(e ^ 1)];
    }
    total += *bottleneck;
  }

  result.value = total;
  result.flow.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) result.flow.push_back(r.cap[2 * i + 1]);
  result.source_side.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) result.source_side[static_cast<std::size_t>(v)] = via[static_cast<std::size_t>(v)] != -1;
  return result;
}

template class FlowNetwork<std::int64_t>;
template class FlowNetwork<Integer>;
template FlowResult<std::int64_t> max_flow(const FlowNetwork<std::int64_t>&);
template FlowResult<Integer> max_flow(const FlowNetwork<Integer>&);

namespace {

class Matcher {
 public:
  Matcher(const std::vector<std::vector<int>>& allowed, const std::vector<Capacity>& caps)
      : allowed_(allowed), caps_(caps), holders_(caps.size()), assignment_(allowed.size(), -1) {}

  bool place(int client) {
    visited_center_.assign(caps_.size(), 0);
    visited_client_.assign(allowed_.size(), 0);
    return augment(client);
  }

  VertexSet visited_clients() const {
    VertexSet out;
    for (std::size_t c = 0; c < visited_client_.size(); ++c) {
      if (visited_client_[c]) out.push_back(static_cast<int>(c));
    }
    return out;
  }

  const std::vector<int>& assignment() const { return assignment_; }

 private:
  bool augment(int client) {
    visited_client_[static_cast<std::size_t>(client)] = 1;
    const auto& options = allowed_[static_cast<std::size_t>(client)];
    for (const int center : options) {
      auto& hold = holders_[static_cast<std::size_t>(center)];
      if (static_cast<Capacity>(hold.size()) < caps_[static_cast<std::size_t>(center)]) {
        take(client, center);
        return true;
      }
    }
    for (const int center : options) {
      if (visited_center_[static_cast<std::size_t>(center)]) continue;
      visited_center_[static_cast<std::size_t>(center)] = 1;
      const auto hold = holders_[static_cast<std::size_t>(center)];
      for (const int other : hold) {
        if (visited_client_[static_cast<std::size_t>(other)]) continue;
        if (augment(other)) {
          take(client, center);
          return true;
        }
      }
    }
    return false;
  }

  void take(int client, int center) {
    const int previous = assignment_[static_cast<std::size_t>(client)];
    if (previous >= 0) {
      auto& old = holders_[static_cast<std::size_t>(previous)];
      old.erase(std::find(old.begin(), old.end(), client));
    }
    // When a client moves off `center`, augment() above already erased it, so
    // the push keeps the holder count equal to the load.
    assignment_[static_cast<std::size_t>(client)] = center;
    holders_[static_cast<std::size_t>(center)].push_back(client);
  }

  const std::vector<std::vector<int>>& allowed_;
  const std::vector<Capacity>& caps_;
  std::vector<std::vector<int>> holders_;
  std::vector<int> assignment_;
  std::vector<char> visited_center_;
  std::vector<char> visited_client_;
};

}  // namespace

AssignmentResult capacitated_assignment(int clients, int centers, const std::vector<std::vector<int>>& allowed,
                                        const std::vector<Capacity>& caps) {
  if (static_cast<int>(allowed.size()) != clients || static_cast<int>(caps.size()) != centers) {
    throw ContractViolation("capacitated_assignment: size mismatch");
  }
  Matcher matcher(allowed, caps);
  AssignmentResult result;
  for (int c = 0; c < clients; ++c) {
    if (!matcher.place(c)) {
      result.witness = matcher.visited_clients();
      return result;
    }
  }
  result.ok = true;
  result.assignment = matcher.assignment();
  return result;
}

}  // namespace ftkc
