#pragma once

// Functor bundle files:
//
//   kind star-enumerable
//   from: 2
//   to: 2                      (optional, defaults to `from`)
//   object
//   enum {0} -> 0
//   morphism
//   shape atomic-join
//   turing [1:1] 0 -> 0
//
// Axiom and shape lines belong to the block opened by the last `object` or
// `morphism` line.

#include <iosfwd>
#include <string>

#include "efunc/functors.hpp"
#include "efunc/text_format.hpp"

namespace efunc {

struct FunctorBundle {
  FunctorKind kind = FunctorKind::computable;
  RelationalLanguage from;
  RelationalLanguage to;
  OperatorFile object;
  OperatorFile morphism;

  /// Picks each part's species from the kind; throws KindError if the block
  /// holds axioms of the other species.
  EffectivizedFunctor functor(const std::string& name) const;
};

FunctorBundle parse_bundle(std::istream& in, const std::string& source = "<input>");
FunctorBundle load_bundle(const std::string& path);
void write_bundle(std::ostream& out, const FunctorBundle& bundle);

}  // namespace efunc
