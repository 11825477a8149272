#include "efunc/machines.hpp"

#include <algorithm>
#include <sstream>

#include "efunc/errors.hpp"

namespace efunc {

namespace {

std::string describe(const CodeSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Code c : s) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '}';
  return out.str();
}

bool subset_of(const CodeSet& premise, const CodeSet& snapshot) {
  if (premise.size() > snapshot.size()) return false;
  for (Code c : premise)
    if (!snapshot.contains(c)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

EnumOperator::EnumOperator(std::vector<EnumAxiom> axioms) : axioms_(std::move(axioms)) {
  std::stable_sort(axioms_.begin(), axioms_.end(),
                   [](const EnumAxiom& a, const EnumAxiom& b) { return a.stage < b.stage; });
}

std::span<const EnumAxiom> EnumOperator::available(Stage stage) const {
  auto end = std::upper_bound(axioms_.begin(), axioms_.end(), stage,
                              [](Stage s, const EnumAxiom& a) { return s < a.stage; });
  return {axioms_.data(), static_cast<std::size_t>(end - axioms_.begin())};
}

Stage EnumOperator::last_stage() const noexcept {
  return axioms_.empty() ? 0 : axioms_.back().stage;
}

EnumOracle EnumOracle::fixed(const CodeSet& elements, Stage stage) {
  EnumOracle o;
  for (Code c : elements) o.entries_.emplace(c, stage);
  return o;
}

void EnumOracle::add(Code c, Stage stage) {
  auto [it, inserted] = entries_.emplace(c, stage);
  if (!inserted) it->second = std::min(it->second, stage);
}

bool EnumOracle::contains(Code c, Stage stage) const {
  auto it = entries_.find(c);
  return it != entries_.end() && it->second <= stage;
}

CodeSet EnumOracle::at(Stage stage) const {
  CodeSet out;
  for (const auto& [c, s] : entries_)
    if (s <= stage) out.insert(out.end(), c);
  return out;
}

Stage EnumOracle::last_stage() const noexcept {
  Stage last = 0;
  for (const auto& [c, s] : entries_) last = std::max(last, s);
  return last;
}

CodeSet apply_enum_operator(const EnumOperator& op, const EnumOracle& oracle, Stage stage) {
  CodeSet out;
  for (const EnumAxiom& ax : op.available(stage)) {
    if (out.contains(ax.conclusion)) continue;
    bool fires = true;
    for (Code c : ax.premise) {
      if (!oracle.contains(c, stage)) {
        fires = false;
        break;
      }
    }
    if (fires) out.insert(ax.conclusion);
  }
  return out;
}

CodeSet apply_enum_operator(const EnumOperator& op, const CodeSet& snapshot, Stage stage) {
  CodeSet out;
  for (const EnumAxiom& ax : op.available(stage)) {
    if (out.contains(ax.conclusion)) continue;
    if (subset_of(ax.premise, snapshot)) out.insert(ax.conclusion);
  }
  return out;
}

std::optional<EnumAxiom> find_witness(const EnumOperator& op, const CodeSet& snapshot,
                                      Stage stage, Code c) {
  for (const EnumAxiom& ax : op.available(stage))
    if (ax.conclusion == c && subset_of(ax.premise, snapshot)) return ax;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

TotalOracle::TotalOracle(const CodeSet& ones, Code window) : window_(window) {
  for (Code c : ones) {
    if (c >= window) break;
    ones_.insert(ones_.end(), c);
  }
}

TotalOracle TotalOracle::covering(const CodeSet& ones, Code min_window) {
  const Code w = ones.empty() ? 0 : *ones.rbegin() + 1;
  return TotalOracle(ones, std::max(w, min_window));
}

std::optional<bool> TotalOracle::bit(Code c) const {
  if (c >= window_) return std::nullopt;
  return ones_.contains(c);
}

std::string to_string(OracleShape shape) {
  switch (shape) {
    case OracleShape::plain: return "plain";
    case OracleShape::atomic_diagram: return "atomic-diagram";
    case OracleShape::positive_diagram: return "positive-diagram";
    case OracleShape::atomic_join: return "atomic-join";
    case OracleShape::positive_join: return "positive-join";
  }
  return "plain";
}

std::optional<OracleShape> shape_from_string(const std::string& name) {
  for (OracleShape s : {OracleShape::plain, OracleShape::atomic_diagram,
                        OracleShape::positive_diagram, OracleShape::atomic_join,
                        OracleShape::positive_join})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

namespace {

bool atomic_column_ok(const QueryMap& q) {
  for (const auto& [z, v] : q) {
    if (z % 2 == 1) continue;  // each dual pair visited once, from its even member
    auto it = q.find(dual(z));
    if (it != q.end() && it->second == v) return false;
  }
  return true;
}

bool positive_column_ok(const QueryMap& q) {
  for (const auto& [z, v] : q) {
    const Code col = z % 3;
    if (col == 2) continue;
    auto [x, y] = cantor_unpair(z / 3);
    const bool forced = (col == 0) ? (x == y) : (x != y);
    if (v != forced) return false;
  }
  return true;
}

bool graph_column_ok(const QueryMap& q) {
  std::map<Code, Code> forward;
  std::map<Code, Code> backward;
  for (const auto& [z, v] : q) {
    if (!v) continue;
    auto [u, w] = cantor_unpair(z);
    auto [fit, fnew] = forward.emplace(u, w);
    if (!fnew && fit->second != w) return false;
    auto [bit, bnew] = backward.emplace(w, u);
    if (!bnew && bit->second != u) return false;
  }
  return true;
}

bool join_ok(const QueryMap& q, bool positive) {
  QueryMap cols[3];
  for (const auto& [z, v] : q) cols[z % 3].emplace(z / 3, v);
  auto side_ok = [positive](const QueryMap& m) {
    return positive ? positive_column_ok(m) : atomic_column_ok(m);
  };
  return side_ok(cols[0]) && graph_column_ok(cols[1]) && side_ok(cols[2]);
}

}  // namespace

bool realizable(const QueryMap& q, OracleShape shape) {
  switch (shape) {
    case OracleShape::plain: return true;
    case OracleShape::atomic_diagram: return atomic_column_ok(q);
    case OracleShape::positive_diagram: return positive_column_ok(q);
    case OracleShape::atomic_join: return join_ok(q, false);
    case OracleShape::positive_join: return join_ok(q, true);
  }
  return true;
}

bool compatible(const QueryMap& a, const QueryMap& b, OracleShape shape) {
  QueryMap merged = a;
  for (const auto& [z, v] : b) {
    auto [it, inserted] = merged.emplace(z, v);
    if (!inserted && it->second != v) return false;
  }
  return realizable(merged, shape);
}

TuringFunctional::TuringFunctional(std::vector<QueryAxiom> axioms, OracleShape shape)
    : axioms_(std::move(axioms)), shape_(shape) {
  std::stable_sort(axioms_.begin(), axioms_.end(),
                   [](const QueryAxiom& a, const QueryAxiom& b) { return a.stage < b.stage; });
  for (std::size_t i = 0; i < axioms_.size(); ++i) by_input_[axioms_[i].input].push_back(i);
}

Stage TuringFunctional::last_stage() const noexcept {
  return axioms_.empty() ? 0 : axioms_.back().stage;
}

std::span<const std::size_t> TuringFunctional::axioms_for(Code input) const {
  auto it = by_input_.find(input);
  if (it == by_input_.end()) return {};
  return it->second;
}

std::optional<Inconsistency> TuringFunctional::find_inconsistency() const {
  for (const auto& [input, idx] : by_input_) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        const QueryAxiom& a = axioms_[idx[i]];
        const QueryAxiom& b = axioms_[idx[j]];
        if (a.output != b.output && compatible(a.queries, b.queries, shape_))
          return Inconsistency{idx[i], idx[j]};
      }
    }
  }
  return std::nullopt;
}

void TuringFunctional::validate() const {
  if (auto bad = find_inconsistency()) {
    const QueryAxiom& a = axioms_[bad->first];
    const QueryAxiom& b = axioms_[bad->second];
    std::ostringstream msg;
    msg << "functional inconsistency: axioms #" << bad->first << " and #" << bad->second
        << " on input " << a.input << " output " << a.output << " vs " << b.output
        << " with compatible queries";
    throw FunctionalInconsistency(msg.str());
  }
}

Computation run_turing_functional(const TuringFunctional& phi, const TotalOracle& oracle,
                                  Code input, Stage stage) {
  Computation result;
  std::optional<std::size_t> fired;
  for (std::size_t i : phi.axioms_for(input)) {
    const QueryAxiom& ax = phi.axioms()[i];
    if (ax.stage > stage) continue;
    bool mismatch = false;
    bool outside = false;
    Code outside_at = 0;
    for (const auto& [z, v] : ax.queries) {
      auto b = oracle.bit(z);
      if (!b) {
        outside = true;
        outside_at = z;
      } else if (*b != v) {
        mismatch = true;
        break;
      }
    }
    if (mismatch) continue;
    if (outside)
      throw InsufficientOracle("query at " + std::to_string(outside_at) +
                               " lies outside the oracle window " +
                               std::to_string(oracle.window()));
    if (fired && phi.axioms()[*fired].output != ax.output)
      throw FunctionalInconsistency("axioms #" + std::to_string(*fired) + " and #" +
                                    std::to_string(i) + " both fire on input " +
                                    std::to_string(input) + " with different outputs");
    if (!fired) fired = i;
  }
  if (fired) {
    result.value = phi.axioms()[*fired].output;
    result.use = phi.axioms()[*fired].queries;
  }
  return result;
}

std::optional<Code> apply_turing_functional(const TuringFunctional& phi,
                                            const TotalOracle& oracle, Code input, Stage stage) {
  return run_turing_functional(phi, oracle, input, stage).value;
}

bool OracleView::query(Code c) {
  auto b = oracle_->bit(c);
  if (!b)
    throw InsufficientOracle("query at " + std::to_string(c) + " lies outside the oracle window " +
                             std::to_string(oracle_->window()));
  use_[c] = *b;
  return *b;
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_listing(const EnumOperator& op) {
  std::vector<std::string> out;
  const auto& axioms = op.axioms();
  for (std::size_t i = 1; i < axioms.size(); ++i) {
    if (axioms[i].stage < axioms[i - 1].stage)
      out.push_back("listing not monotone at axiom #" + std::to_string(i));
  }
  // Premises are std::set values, finite by construction; an axiom that can
  // never fire at its own stage is still legitimate.
  return out;
}

std::vector<std::string> check_monotone_compact(const EnumOperator& op, const CodeSet& x,
                                                const CodeSet& y, Stage s, Stage t) {
  std::vector<std::string> out;
  const CodeSet xs = apply_enum_operator(op, x, s);
  const CodeSet xt = apply_enum_operator(op, x, t);
  const CodeSet ys = apply_enum_operator(op, y, s);
  for (Code c : xs) {
    if (!xt.contains(c))
      out.push_back("stage monotonicity: " + std::to_string(c) + " lost between stages " +
                    std::to_string(s) + " and " + std::to_string(t));
    if (!ys.contains(c))
      out.push_back("oracle monotonicity: " + std::to_string(c) + " lost on oracle extension");
    auto w = find_witness(op, x, s, c);
    if (!w) {
      out.push_back("compactness: no witness axiom for " + std::to_string(c));
      continue;
    }
    const CodeSet replay = apply_enum_operator(op, w->premise, s);
    if (!replay.contains(c))
      out.push_back("compactness: premise " + describe(w->premise) + " does not reproduce " +
                    std::to_string(c));
  }
  return out;
}

}  // namespace efunc
