#include "olr/feasibility.hpp"

#include <deque>
#include <tuple>
#include <vector>

#include "olr/error.hpp"

namespace olr {

namespace {

void check_marginal(const std::map<std::string, Rational>& m, const char* which) {
  Rational total(0);
  for (const auto& [k, w] : m) {
    if (sgn(w) <= 0) throw Error(std::string(which) + "(" + k + ") = " + to_string(w) + " is not positive");
    total += w;
  }
  if (total != 1) throw Error(std::string(which) + " has mass " + to_string(total) + ", expected 1");
}

struct Edge {
  int to;
  int rev;
  Rational cap;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : adj_(n) {}

  int add(int from, int to, Rational cap) {
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), std::move(cap)});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, Rational(0)});
    return static_cast<int>(adj_[from].size()) - 1;
  }

  // Shortest augmenting paths; every path saturates at least one edge, and
  // the number of distinct shortest-path phases is bounded, so this
  // terminates with rational capacities as well.
  Rational max_flow(int s, int t) {
    Rational total(0);
    const int n = static_cast<int>(adj_.size());
    for (;;) {
      std::vector<std::pair<int, int>> parent(n, {-1, -1});
      parent[s] = {s, -1};
      std::deque<int> queue{s};
      while (!queue.empty() && parent[t].first < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int i = 0; i < static_cast<int>(adj_[u].size()); ++i) {
          const Edge& e = adj_[u][i];
          if (parent[e.to].first < 0 && sgn(e.cap) > 0) {
            parent[e.to] = {u, i};
            queue.push_back(e.to);
          }
        }
      }
      if (parent[t].first < 0) return total;
      Rational push = -1;
      for (int v = t; v != s; v = parent[v].first) {
        const Edge& e = adj_[parent[v].first][parent[v].second];
        if (push < 0 || e.cap < push) push = e.cap;
      }
      for (int v = t; v != s; v = parent[v].first) {
        Edge& e = adj_[parent[v].first][parent[v].second];
        e.cap -= push;
        adj_[e.to][e.rev].cap += push;
      }
      total += push;
    }
  }

  // Flow on a forward edge is the capacity accumulated on its reverse edge.
  const Rational& flow(int from, int index) const {
    const Edge& e = adj_[from][index];
    return adj_[e.to][e.rev].cap;
  }

 private:
  std::vector<std::vector<Edge>> adj_;
};

}  // namespace

void validate(const TransportInstance& inst) {
  check_marginal(inst.mu, "mu");
  check_marginal(inst.nu, "nu");
}

std::optional<Coupling> transport_feasible(const TransportInstance& inst) {
  validate(inst);
  std::map<std::string, int> a_id, b_id;
  for (const auto& [a, _] : inst.mu) a_id.emplace(a, 2 + static_cast<int>(a_id.size()));
  for (const auto& [b, _] : inst.nu) b_id.emplace(b, 2 + static_cast<int>(a_id.size() + b_id.size()));

  const int source = 0, sink = 1;
  FlowNetwork net(2 + static_cast<int>(a_id.size() + b_id.size()));
  for (const auto& [a, w] : inst.mu) net.add(source, a_id[a], w);
  for (const auto& [b, w] : inst.nu) net.add(b_id[b], sink, w);

  // Total mass is 1, so capacity 1 on a support edge never binds.
  std::vector<std::tuple<std::string, std::string, int>> middle;
  for (const auto& [a, b] : inst.support) {
    auto ia = a_id.find(a);
    auto ib = b_id.find(b);
    if (ia == a_id.end() || ib == b_id.end()) continue;
    middle.emplace_back(a, b, net.add(ia->second, ib->second, Rational(1)));
  }

  if (net.max_flow(source, sink) != 1) return std::nullopt;
  Coupling c;
  for (const auto& [a, b, idx] : middle) {
    const Rational& f = net.flow(a_id[a], idx);
    if (sgn(f) > 0) c.emplace(std::pair{a, b}, f);
  }
  return c;
}

bool is_coupling(const TransportInstance& inst, const Coupling& c) {
  std::map<std::string, Rational> left, right;
  for (const auto& [ab, w] : c) {
    if (sgn(w) < 0 || !inst.support.contains(ab)) return false;
    left[ab.first] += w;
    right[ab.second] += w;
  }
  auto same = [](const std::map<std::string, Rational>& got, const std::map<std::string, Rational>& want) {
    for (const auto& [k, w] : got)
      if (sgn(w) != 0 && (!want.contains(k) || want.at(k) != w)) return false;
    for (const auto& [k, w] : want) {
      auto it = got.find(k);
      if (it == got.end() || it->second != w) return false;
    }
    return true;
  };
  return same(left, inst.mu) && same(right, inst.nu);
}

}  // namespace olr
