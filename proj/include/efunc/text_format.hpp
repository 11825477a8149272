#pragma once

// Textual operator format, one axiom per line:
//
//   enum {2,4} -> 7 @3
//   turing [10:1, 11:0] 4 -> 1 @0
//
// `@stage` is optional (default 0). Lines starting with `#` are comments.
// An optional `shape <name>` line declares the oracle shape a functional
// reads (plain, atomic-diagram, positive-diagram, atomic-join, positive-join).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "efunc/machines.hpp"

namespace efunc {

struct OperatorFile {
  std::vector<EnumAxiom> enum_axioms;
  std::vector<QueryAxiom> query_axioms;
  std::optional<OracleShape> shape;

  EnumOperator enum_operator() const { return EnumOperator(enum_axioms); }
  TuringFunctional functional() const {
    return TuringFunctional(query_axioms, shape.value_or(OracleShape::plain));
  }
};

/// Throws ParseError carrying line and column.
OperatorFile parse_operators(std::istream& in, const std::string& source = "<input>");
OperatorFile parse_operators_string(const std::string& text, const std::string& source = "<input>");
OperatorFile load_operators(const std::string& path);

/// Parses a single axiom line into `out` (used by the bundle format too).
/// Returns false if the line is not an axiom line.
namespace detail { class Cursor; }
bool parse_axiom_line(detail::Cursor& cur, OperatorFile& out);

std::string format_axiom(const EnumAxiom& ax);
std::string format_axiom(const QueryAxiom& ax);

/// `header` lines are emitted as `# ` comments before the axioms.
void write_operator(std::ostream& out, const EnumOperator& op,
                    const std::vector<std::string>& header = {});
void write_operator(std::ostream& out, const TuringFunctional& phi,
                    const std::vector<std::string>& header = {});

}  // namespace efunc
