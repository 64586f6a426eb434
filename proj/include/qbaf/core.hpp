#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

// Core data model for quantitative bipolar argumentation frameworks: arguments
// carrying initial strengths in [0,1], attack and support relations, JSON
// round-tripping, and structural graph analysis (topological order, strongly
// connected components, in-degrees).

namespace qbaf {

// Raised when a framework document is syntactically or semantically invalid.
// The message includes a byte offset for syntax errors.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Argument {
  std::string id;
  double tau = 0.0;  // initial strength, in [0, 1]

  bool operator==(const Argument&) const = default;
};

using IdPair = std::pair<std::string, std::string>;

// An immutable framework. Arguments keep their document order; edges are stored
// as (source, target) index pairs in document order. Construction validates:
// non-empty unique ids, taus in [0,1] and finite, edge endpoints declared,
// no duplicate edge within a relation. An ordered pair may appear in both
// relations at once (an argument can attack and support the same target).
class Qbaf {
 public:
  using Edge = std::pair<int, int>;

  Qbaf() = default;
  Qbaf(std::vector<Argument> arguments, const std::vector<IdPair>& attacks,
       const std::vector<IdPair>& supports);

  int size() const { return static_cast<int>(args_.size()); }
  const std::vector<Argument>& arguments() const { return args_; }
  const std::vector<Edge>& attacks() const { return attacks_; }
  const std::vector<Edge>& supports() const { return supports_; }

  bool has(const std::string& id) const { return index_.count(id) != 0; }
  // Throws std::out_of_range for unknown ids.
  int index_of(const std::string& id) const;
  const Argument& argument(int index) const { return args_.at(index); }

  // Incoming edges of an argument, as source indices in edge document order.
  const std::vector<int>& attackers_of(int index) const { return attackers_.at(index); }
  const std::vector<int>& supporters_of(int index) const { return supporters_.at(index); }

  // Structural equality: same argument sequence (ids and taus) and the same
  // edge sequences.
  bool operator==(const Qbaf& other) const;

 private:
  std::vector<Argument> args_;
  std::vector<Edge> attacks_;
  std::vector<Edge> supports_;
  std::vector<std::vector<int>> attackers_;
  std::vector<std::vector<int>> supporters_;
  std::unordered_map<std::string, int> index_;
};

struct GraphInfo {
  bool acyclic = false;
  // Argument indices in a topological order of the combined attack+support
  // graph; empty when the framework is cyclic. Ties broken by document order.
  std::vector<int> topo_order;
  // Maximum over arguments of (number of incoming attacks + incoming
  // supports). A pair attacking and supporting the same target counts twice.
  int max_in_degree = 0;
  // Strongly connected components of the combined graph, each sorted by
  // argument index, listed in discovery order of their smallest member.
  std::vector<std::vector<int>> sccs;
  // True iff every nontrivial SCC (size >= 2, or a single self-looping
  // argument) is a simple cycle: each member has exactly one predecessor and
  // one successor inside the component.
  bool at_most_one_cycle = false;
};

// Parses a framework from JSON text. Top-level keys: "arguments" (required),
// "attacks" and "supports" (optional, default empty). Unknown keys anywhere
// are rejected. Throws ParseError.
Qbaf parse_qbaf(const std::string& text);

// Canonical JSON form: key order arguments/attacks/supports, two-space indent,
// arguments and edges in document order. parse(serialize(q)) == q.
std::string serialize_qbaf(const Qbaf& q);

// (attacker ids, supporter ids) of `id`, in edge document order.
std::pair<std::vector<std::string>, std::vector<std::string>> parents(
    const Qbaf& q, const std::string& id);

GraphInfo analyze_graph(const Qbaf& q);

}  // namespace qbaf
