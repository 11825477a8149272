#pragma once

// The pullback chain for a pseudo-inverse pair F, G: from f^-1(A) build the
// quotient copy A^, push it through F and G, spread each result back over the
// classes of f^-1(=) and close the loop with the witness Lambda_C^{A^}. Every
// link is an exact set equality on the window.

#include <optional>
#include <string>
#include <vector>

#include "efunc/diagrams.hpp"
#include "efunc/functors.hpp"
#include "efunc/random.hpp"

namespace efunc {

struct PipelineLink {
  std::string name;
  bool equal = false;
  std::optional<Code> first_difference;  // least code in the symmetric difference
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  std::string note;
};

struct PipelineResult {
  std::vector<PipelineLink> links;

  bool ok() const;
  /// Index of the first unequal link.
  std::optional<std::size_t> first_failure() const;
};

enum class PipelineCorruption { none, skip_class };

PipelineResult run_spectrum_chain(const EffectivizedFunctor& f, const EffectivizedFunctor& g,
                                  const IsoWitness& lambda_c, const StructurePresentation& a,
                                  const Enumeration& e, Stage stage,
                                  PipelineCorruption corruption = PipelineCorruption::none);

/// Surjection of [0, size) onto [0, window): every target hit once, the
/// remaining size - window values drawn uniformly, then shuffled.
Enumeration random_enumeration(Rng& rng, Code window, Code size);

/// Uniformly drawn bijection of [0, n).
IsoGraph random_permutation(Rng& rng, Code n);

}  // namespace efunc
