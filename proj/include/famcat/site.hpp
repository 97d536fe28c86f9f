#ifndef FAMCAT_SITE_HPP
#define FAMCAT_SITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "famcat/fam.hpp"

namespace famcat {

// A finite family of morphisms with a common codomain.
struct CoveringFamily {
  FamObject codomain;
  std::vector<FamMorphism> members;
};
ValidationReport check_covering_family_data(const CoveringFamily& c);

// Covers are the shape-level effective epimorphic families: the copaired map
// ∐ X_i -> X must be π₀-surjective. The verdict carries the witness.
struct CoverVerdict {
  bool covering = false;
  EffectiveEpi epi;
};
CoverVerdict is_covering_family(const CoveringFamily& c);

// Pullback of a cover along a morphism into its codomain: members become
// (X_i, F_i) ×_{(X,F)} (X', F') -> (X', F'). The result is itself verified to
// cover before it is returned.
CoveringFamily pullback_cover(const CoveringFamily& c, const FamMorphism& along,
                              Budget& budget);

// Randomized verification of the pretopology axioms over seeded samples, plus
// the two specializations: over the terminal category the cover predicate is
// exactly π₀-surjectivity, and the shape projection sends covers to covers of
// groupoids (checked with an independent connectivity routine).
struct AxiomSuiteReport {
  int samples = 0;
  int equivalence_pass = 0, equivalence_fail = 0;
  int pullback_pass = 0, pullback_fail = 0;
  int composition_pass = 0, composition_fail = 0;
  int refinement_pass = 0, refinement_fail = 0;
  int fam_star_pass = 0, fam_star_fail = 0;
  int site_morphism_pass = 0, site_morphism_fail = 0;
  bool indeterminate = false;
  std::string detail;

  bool all_passed() const {
    return equivalence_fail == 0 && pullback_fail == 0 && composition_fail == 0 &&
           refinement_fail == 0 && fam_star_fail == 0 && site_morphism_fail == 0 &&
           !indeterminate && samples > 0;
  }
};
AxiomSuiteReport pretopology_axiom_suite(const CategoryPtr& target, std::uint64_t seed,
                                         int samples, Budget& budget);

// Seeded generator for a random family over the target with a random shape;
// arrows are constant per component so they exist over any target.
FamObject random_fam_object(Rng& rng, const CategoryPtr& target, int max_components,
                            int max_objects_per_component);
// Random morphism into f: a random functor into the shape with the arrow
// pulled back along it.
FamMorphism random_fam_morphism_into(Rng& rng, const FamObject& f, int max_components,
                                     int max_objects_per_component);

}  // namespace famcat

#endif
