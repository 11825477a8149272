#include "efunc/spectrum.hpp"

#include <algorithm>
#include <numeric>

#include "efunc/errors.hpp"

namespace efunc {

bool PipelineResult::ok() const { return !first_failure().has_value(); }

std::optional<std::size_t> PipelineResult::first_failure() const {
  for (std::size_t i = 0; i < links.size(); ++i)
    if (!links[i].equal) return i;
  return std::nullopt;
}

namespace {

PipelineLink compare_sets(std::string name, const CodeSet& lhs, const CodeSet& rhs) {
  PipelineLink link;
  link.name = std::move(name);
  link.lhs_size = lhs.size();
  link.rhs_size = rhs.size();
  link.equal = lhs == rhs;
  if (!link.equal) {
    std::vector<Code> diff;
    std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                  std::back_inserter(diff));
    link.first_difference = diff.front();
  }
  return link;
}

PipelineLink failed(std::string name, std::string note) {
  PipelineLink link;
  link.name = std::move(name);
  link.note = std::move(note);
  return link;
}

// The =/!= columns of `pb` with `relations` as the relation column.
CodeSet with_relations(const CodeSet& pb, const CodeSet& relations) {
  CodeSet out;
  for (Code c : pb)
    if (c % 3 != 2) out.insert(c);
  for (Code r : relations) out.insert(join_code(r, 2, 3));
  return out;
}

// Drops every relation code that mentions a member of the first class used.
void skip_one_class(CodeSet& relations, const EqualityClasses& classes,
                    const RelationalLanguage& language) {
  std::optional<std::size_t> victim;
  for (Code r : relations) {
    const Atom a = decode_atom(2 * r, language, DiagramFormat::atomic).atom();
    if (!a.args.empty()) {
      victim = classes.class_of[a.args.front()];
      break;
    }
  }
  if (!victim) return;
  std::erase_if(relations, [&](Code r) {
    const Atom a = decode_atom(2 * r, language, DiagramFormat::atomic).atom();
    return std::any_of(a.args.begin(), a.args.end(),
                       [&](Code x) { return classes.class_of[x] == *victim; });
  });
}

}  // namespace

PipelineResult run_spectrum_chain(const EffectivizedFunctor& f, const EffectivizedFunctor& g,
                                  const IsoWitness& lambda_c, const StructurePresentation& a,
                                  const Enumeration& e, Stage stage,
                                  PipelineCorruption corruption) {
  PipelineResult r;
  const Code n = e.size();
  const CodeSet pb = pullback(e, a, stage);
  const EqualityClasses classes = equality_classes(pb, n);
  const Enumeration cls = classes.as_enumeration();

  // Quotient copy and its renaming back to A.
  const StructurePresentation ahat = quotient_by_equality(pb, n, a.language());
  r.links.push_back(compare_sets("pullback of quotient = f^-1(A)", pullback(cls, ahat, stage), pb));
  IsoGraph rename;
  for (std::size_t k = 0; k < classes.size(); ++k) rename[k] = e(classes.members[k].front());
  if (is_bijection_on(rename, a.universe())) {
    r.links.push_back(compare_sets("quotient is a copy of A", positive_diagram(ahat, stage),
                                   positive_diagram(transport(a, inverse(rename)), stage)));
  } else {
    r.links.push_back(failed("quotient is a copy of A",
                             "class representatives do not cover the window of A"));
    return r;
  }

  // F(A^) spread over the classes.
  const StructurePresentation fa = apply_object(f, ahat, stage);
  CodeSet x = spread_relations(positive_diagram(fa, stage), pb, n, f.to());
  if (corruption == PipelineCorruption::skip_class) skip_one_class(x, classes, f.to());
  const CodeSet spread_f = with_relations(pb, x);
  r.links.push_back(compare_sets("spread P(F(A^)) = f^-1(F(A^))", spread_f, pullback(cls, fa, stage)));
  r.links.push_back(compare_sets("spread P(F(A^)) = f^-1(F(A))", spread_f,
                                 pullback(e, apply_object(f, a, stage), stage)));
  r.links.push_back(compare_sets("f^-1(F(A^))/f^-1(=) = P(F(A^))",
                                 positive_diagram(quotient_by_equality(spread_f, n, f.to()), stage),
                                 positive_diagram(fa, stage)));

  // G(F(A^)) spread over the same classes.
  const StructurePresentation gfa = apply_object(g, fa, stage);
  const CodeSet spread_gf =
      with_relations(pb, spread_relations(positive_diagram(gfa, stage), pb, n, g.to()));
  r.links.push_back(compare_sets("spread P(GF(A^)) = f^-1(GF(A^))", spread_gf,
                                 pullback(cls, gfa, stage)));
  r.links.push_back(compare_sets("f^-1(GF(A^))/f^-1(=) = P(GF(A^))",
                                 positive_diagram(quotient_by_equality(spread_gf, n, g.to()), stage),
                                 positive_diagram(gfa, stage)));

  // Closing the loop through Lambda_C^{A^} : A^ -> GF(A^).
  const IsoGraph lambda = run_witness(lambda_c, ahat, ahat.universe(), gfa.universe(), stage);
  r.links.push_back(compare_sets("(f . Lambda)^-1(GF(A^)) = f^-1(A)",
                                 pullback(compose_enumeration(cls, lambda), gfa, stage), pb));
  return r;
}

Enumeration random_enumeration(Rng& rng, Code window, Code size) {
  if (size < window) throw BoundsError("an enumeration onto the window needs size >= window");
  Enumeration e;
  e.values.resize(size);
  std::iota(e.values.begin(), e.values.begin() + static_cast<std::ptrdiff_t>(window), Code{0});
  for (Code x = window; x < size; ++x) e.values[x] = rng.below(window);
  rng.shuffle(e.values);
  return e;
}

IsoGraph random_permutation(Rng& rng, Code n) {
  std::vector<Code> p(n);
  std::iota(p.begin(), p.end(), Code{0});
  rng.shuffle(p);
  IsoGraph g;
  for (Code x = 0; x < n; ++x) g.emplace(x, p[x]);
  return g;
}

}  // namespace efunc
