#include "qbaf/core.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include <json.hpp>

namespace qbaf {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

}  // namespace

Qbaf::Qbaf(std::vector<Argument> arguments, const std::vector<IdPair>& attacks,
           const std::vector<IdPair>& supports)
    : args_(std::move(arguments)) {
  index_.reserve(args_.size());
  for (int i = 0; i < static_cast<int>(args_.size()); ++i) {
    const Argument& a = args_[i];
    if (a.id.empty()) fail("argument " + std::to_string(i) + " has an empty id");
    if (!index_.emplace(a.id, i).second) fail("duplicate argument id \"" + a.id + "\"");
    if (!std::isfinite(a.tau) || a.tau < 0.0 || a.tau > 1.0)
      fail("argument \"" + a.id + "\" has initial strength outside [0,1]");
  }
  attackers_.resize(args_.size());
  supporters_.resize(args_.size());

  auto add_edges = [&](const std::vector<IdPair>& pairs, const char* kind,
                       std::vector<Edge>& out, std::vector<std::vector<int>>& incoming) {
    std::set<Edge> seen;
    for (const auto& [from, to] : pairs) {
      auto fi = index_.find(from);
      auto ti = index_.find(to);
      if (fi == index_.end())
        fail(std::string(kind) + " edge references undeclared argument \"" + from + "\"");
      if (ti == index_.end())
        fail(std::string(kind) + " edge references undeclared argument \"" + to + "\"");
      Edge e{fi->second, ti->second};
      if (!seen.insert(e).second)
        fail("duplicate " + std::string(kind) + " edge (" + from + ", " + to + ")");
      out.push_back(e);
      incoming[e.second].push_back(e.first);
    }
  };
  add_edges(attacks, "attack", attacks_, attackers_);
  add_edges(supports, "support", supports_, supporters_);
}

int Qbaf::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown argument id \"" + id + "\"");
  return it->second;
}

bool Qbaf::operator==(const Qbaf& other) const {
  return args_ == other.args_ && attacks_ == other.attacks_ && supports_ == other.supports_;
}

namespace {

using nlohmann::ordered_json;

std::vector<IdPair> read_edge_array(const ordered_json& j, const char* key) {
  std::vector<IdPair> pairs;
  if (!j.contains(key)) return pairs;
  const auto& arr = j.at(key);
  if (!arr.is_array()) fail(std::string("\"") + key + "\" must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      fail(std::string("each \"") + key + "\" entry must be a [source, target] id pair");
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return pairs;
}

}  // namespace

Qbaf parse_qbaf(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "arguments" && key != "attacks" && key != "supports")
      fail("unknown top-level key \"" + key + "\"");
  }
  if (!j.contains("arguments")) fail("missing \"arguments\"");
  const auto& args = j.at("arguments");
  if (!args.is_array()) fail("\"arguments\" must be an array");

  std::vector<Argument> arguments;
  arguments.reserve(args.size());
  for (const auto& a : args) {
    if (!a.is_object()) fail("each argument must be an object");
    for (const auto& [key, value] : a.items()) {
      (void)value;
      if (key != "id" && key != "tau") fail("unknown argument key \"" + key + "\"");
    }
    if (!a.contains("id") || !a.at("id").is_string()) fail("argument missing string \"id\"");
    if (!a.contains("tau") || !a.at("tau").is_number())
      fail("argument \"" + a.at("id").get<std::string>() + "\" missing numeric \"tau\"");
    arguments.push_back({a.at("id").get<std::string>(), a.at("tau").get<double>()});
  }

  return Qbaf(std::move(arguments), read_edge_array(j, "attacks"),
              read_edge_array(j, "supports"));
}

std::string serialize_qbaf(const Qbaf& q) {
  ordered_json j;
  j["arguments"] = ordered_json::array();
  for (const Argument& a : q.arguments()) {
    ordered_json ja;
    ja["id"] = a.id;
    ja["tau"] = a.tau;
    j["arguments"].push_back(std::move(ja));
  }
  auto edge_array = [&](const std::vector<Qbaf::Edge>& edges) {
    ordered_json arr = ordered_json::array();
    for (const auto& [from, to] : edges)
      arr.push_back({q.argument(from).id, q.argument(to).id});
    return arr;
  };
  j["attacks"] = edge_array(q.attacks());
  j["supports"] = edge_array(q.supports());
  return j.dump(2) + "\n";
}

std::pair<std::vector<std::string>, std::vector<std::string>> parents(
    const Qbaf& q, const std::string& id) {
  int idx = q.index_of(id);
  std::pair<std::vector<std::string>, std::vector<std::string>> out;
  for (int a : q.attackers_of(idx)) out.first.push_back(q.argument(a).id);
  for (int s : q.supporters_of(idx)) out.second.push_back(q.argument(s).id);
  return out;
}

namespace {

// Iterative Tarjan over the combined attack+support successor lists.
// Components are emitted in reverse topological order; we re-sort afterwards
// so the listing is deterministic in document order.
struct TarjanState {
  const std::vector<std::vector<int>>& succ;
  std::vector<int> index, low, on_stack;
  std::vector<int> stack;
  int counter = 0;
  std::vector<std::vector<int>> sccs;

  explicit TarjanState(const std::vector<std::vector<int>>& s)
      : succ(s), index(s.size(), -1), low(s.size(), 0), on_stack(s.size(), 0) {}

  void run(int root) {
    // Explicit frame stack: (node, next successor position).
    std::vector<std::pair<int, size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < succ[v].size()) {
        int w = succ[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          sccs.push_back(std::move(comp));
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
  }
};

}  // namespace

GraphInfo analyze_graph(const Qbaf& q) {
  const int n = q.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> in_degree(n, 0);
  std::vector<int> out_degree(n, 0);
  auto add = [&](const std::vector<Qbaf::Edge>& edges) {
    for (const auto& [from, to] : edges) {
      succ[from].push_back(to);
      ++out_degree[from];
      ++in_degree[to];
    }
  };
  add(q.attacks());
  add(q.supports());

  GraphInfo info;
  info.max_in_degree = n == 0 ? 0 : *std::max_element(in_degree.begin(), in_degree.end());

  TarjanState tarjan(succ);
  for (int v = 0; v < n; ++v)
    if (tarjan.index[v] < 0) tarjan.run(v);
  std::sort(tarjan.sccs.begin(), tarjan.sccs.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  info.sccs = std::move(tarjan.sccs);

  std::vector<char> has_self_loop(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : succ[v])
      if (w == v) has_self_loop[v] = 1;

  info.acyclic = true;
  for (const auto& comp : info.sccs)
    if (comp.size() > 1 || has_self_loop[comp.front()]) info.acyclic = false;

  // A nontrivial component is a simple cycle iff, within the component, every
  // member has exactly one predecessor and one successor.
  info.at_most_one_cycle = true;
  for (const auto& comp : info.sccs) {
    bool nontrivial = comp.size() > 1 || has_self_loop[comp.front()];
    if (!nontrivial) continue;
    std::vector<char> member(n, 0);
    for (int v : comp) member[v] = 1;
    std::vector<int> in_comp(n, 0), out_comp(n, 0);
    for (int v : comp)
      for (int w : succ[v])
        if (member[w]) {
          ++out_comp[v];
          ++in_comp[w];
        }
    for (int v : comp)
      if (in_comp[v] != 1 || out_comp[v] != 1) info.at_most_one_cycle = false;
  }

  if (info.acyclic) {
    // Kahn's algorithm with a min-index heap so equal-depth arguments appear
    // in document order.
    std::vector<int> remaining = in_degree;
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v)
      if (remaining[v] == 0) ready.push(v);
    while (!ready.empty()) {
      int v = ready.top();
      ready.pop();
      info.topo_order.push_back(v);
      for (int w : succ[v])
        if (--remaining[w] == 0) ready.push(w);
    }
  }
  return info;
}

}  // namespace qbaf
