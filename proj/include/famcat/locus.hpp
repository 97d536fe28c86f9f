#ifndef FAMCAT_LOCUS_HPP
#define FAMCAT_LOCUS_HPP

#include <string>
#include <vector>

#include "famcat/fam.hpp"
#include "famcat/rng.hpp"

namespace famcat {

// Copresheaf on the walking arrow with a section: sets at [0] and [1] with
// s: base -> total and r: total -> base satisfying r∘s = id.
struct RetractionDiagram {
  std::vector<std::string> base, total;
  std::vector<int> s;  // base index -> total index
  std::vector<int> r;  // total index -> base index
};
ValidationReport validate_retraction(const RetractionDiagram& x);

// Family of pointed sets indexed by a finite set.
struct PointedSetFamily {
  std::vector<std::string> indices;
  std::vector<std::vector<std::string>> carriers;
  std::vector<int> basepoints;  // per index: position in its carrier
};
ValidationReport validate_pointed_family(const PointedSetFamily& fam);

// X ↦ ⟨(r⁻¹(p), s(p))⟩_{p ∈ base}.
PointedSetFamily functor_F(const RetractionDiagram& x);
// ⟨X_i⟩ ↦ the retraction with total = tagged ∐ carriers, r the tag projection
// and s the basepoint selection.
RetractionDiagram functor_G(const PointedSetFamily& fam);

// Morphisms of the two categories, for functoriality and naturality checks.
struct RetractionMap {
  std::vector<int> base_map, total_map;
};
ValidationReport check_retraction_map(const RetractionDiagram& x, const RetractionDiagram& y,
                                      const RetractionMap& m);

struct FamilyMap {
  std::vector<int> index_map;
  std::vector<std::vector<int>> carrier_maps;  // per source index
};
ValidationReport check_family_map(const PointedSetFamily& a, const PointedSetFamily& b,
                                  const FamilyMap& m);

FamilyMap functor_F_on_map(const RetractionDiagram& x, const RetractionDiagram& y,
                           const RetractionMap& m);
RetractionMap functor_G_on_map(const PointedSetFamily& a, const PointedSetFamily& b,
                               const FamilyMap& m);

std::vector<RetractionDiagram> enumerate_retractions(int total_bound);
std::vector<PointedSetFamily> enumerate_families(int index_bound, int carrier_bound);
std::vector<RetractionMap> enumerate_retraction_maps(const RetractionDiagram& x,
                                                     const RetractionDiagram& y);
std::vector<FamilyMap> enumerate_family_maps(const PointedSetFamily& a,
                                             const PointedSetFamily& b);

// Round trip G∘F ≅ id and F∘G ≅ id: explicit componentwise isomorphisms over
// every diagram with |total| <= total_bound and every family within the given
// bounds, with naturality squares verified on sampled morphisms.
struct RoundTripReport {
  bool verified = false;
  int diagrams_checked = 0;
  int families_checked = 0;
  int naturality_squares = 0;
  std::string detail;
};
RoundTripReport roundtrip_check(int total_bound, int index_bound, int carrier_bound, Rng& rng,
                                int morphism_samples, Budget& budget);

// π₀ of the encoded family equals the base: component count of the
// tagged-discrete-shape encoding of F(x), compared with |base|.
struct Pi0CorollaryReport {
  bool verified = false;
  int base_size = 0;
  int component_count = 0;
};
Pi0CorollaryReport pi0_corollary_check(const RetractionDiagram& x);

// Skeleton of pointed sets P1..Pn (element 0 is the basepoint) with
// basepoint-preserving maps; target category for the fam-core encoding.
CategoryPtr pointed_set_skeleton(int max_size);
FamObject encode_family(const PointedSetFamily& fam, const CategoryPtr& skeleton);

}  // namespace famcat

#endif
