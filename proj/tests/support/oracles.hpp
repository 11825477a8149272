#pragma once

// Reference implementations used only by the tests. They are written from the
// definitions, share no code with the library's algorithms and favour
// obviousness over speed.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "efunc/diagrams.hpp"
#include "efunc/machines.hpp"

namespace oracle {

using efunc::Code;
using efunc::Stage;

// Pairs listed diagonal by diagonal: (0,0), (1,0), (0,1), (2,0), (1,1), ...
std::pair<Code, Code> dovetail_nth(Code n);
Code dovetail_index(Code x, Code y);
Code nested_tuple(const std::vector<Code>& xs);

std::set<Code> interleave(const std::vector<std::set<Code>>& parts);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t x, std::size_t y);

 private:
  std::vector<std::size_t> parent_;
};

/// A finite relational structure as plain data.
struct Model {
  std::vector<std::size_t> arities;
  Code n = 0;
  std::set<std::pair<std::size_t, std::vector<Code>>> facts;

  bool holds(std::size_t r, const std::vector<Code>& args) const {
    return facts.contains({r, args});
  }
};

Model model_of(const efunc::StructurePresentation& s, Stage stage);
std::vector<std::vector<Code>> tuples(Code n, std::size_t arity);

std::set<Code> atomic_diagram_of(const Model& m);
std::set<Code> positive_diagram_of(const Model& m);
std::set<Code> pullback_of(const std::vector<Code>& f, const Model& m);

/// All isomorphisms a -> b as image vectors, at most `limit` of them.
std::vector<std::vector<Code>> isomorphisms(const Model& a, const Model& b,
                                            std::size_t limit = 2);

/// Longest simple path length from `root` that never visits `cut`, in the
/// symmetric binary relation 0 of the model, ignoring loops.
Code hanging_depth(const Model& g, Code root, Code cut);

/// 1 on p, 0 on duals of p, undefined elsewhere on [0, max code].
std::vector<std::optional<bool>> alpha(const std::set<Code>& p);

/// {x < input_bound : some p within d, all codes < bound, p consistent, and
/// some axiom (q, x, 1) with q defined on alpha(p) and agreeing with it}.
std::set<Code> literal_diagram_operator(const std::vector<efunc::QueryAxiom>& axioms,
                                        const std::set<Code>& d, Code bound, Code input_bound);

}  // namespace oracle
