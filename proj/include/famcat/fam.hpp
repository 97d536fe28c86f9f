#ifndef FAMCAT_FAM_HPP
#define FAMCAT_FAM_HPP

#include <optional>
#include <string>
#include <vector>

#include "famcat/groupoid.hpp"

namespace famcat {

// A parametrized family: a groupoid-shaped index X together with a functor
// F: X -> C into the target category. X is the shape, F the arrow.
struct FamObject {
  GroupoidPtr shape;
  CategoryPtr target;
  Functor arrow;  // arrow.src == shape->cat_ptr(), arrow.tgt == target
};

// Morphism of families: a functor of shapes φ plus components
// φ★(x): F1(x) -> F2(φ(x)) natural in x.
struct FamMorphism {
  FamObject src, tgt;
  Functor phi;
  std::vector<int> comps;

  NatTrans phi_star() const {
    return NatTrans{src.arrow, compose_functors(tgt.arrow, phi), comps};
  }
};

ValidationReport validate_fam(const FamObject& f);
ValidationReport validate_fam_morphism(const FamMorphism& m);

bool fam_object_equal(const FamObject& a, const FamObject& b);
bool fam_morphism_equal(const FamMorphism& a, const FamMorphism& b);

FamMorphism identity_fam_morphism(const FamObject& f);
FamMorphism compose_fam(const FamMorphism& m2, const FamMorphism& m1);

// σ: point-shaped family at an object of C. Fully faithful and left exact.
FamObject sigma_embed(const CategoryPtr& target, int obj);

bool is_zero_truncated(const FamObject& f);

// Connected decomposition with explicit reassembly isomorphisms.
struct DecompositionCertificate {
  std::vector<FamObject> components;
  std::vector<int> block_of;             // shape object -> component index
  std::vector<FamMorphism> inclusions;   // component -> f
  FamMorphism to_coproduct;              // iso f -> ∐ components
  FamMorphism from_coproduct;            // its inverse
};
DecompositionCertificate decompose_connected(const FamObject& f);

struct FamCoproduct {
  FamObject obj;
  std::vector<FamMorphism> injections;
  std::vector<std::pair<int, int>> obj_origin;  // shape object -> (part, object)
  std::vector<std::pair<int, int>> mor_origin;
};
FamCoproduct fam_coproduct(const CategoryPtr& target, const std::vector<FamObject>& parts);

// Diagram over a groupoid index; general category indices are rejected by
// construction (the index type is a groupoid).
struct FamDiagram {
  GroupoidPtr index;
  std::vector<FamObject> fibers;      // per index object
  std::vector<FamMorphism> edges;     // per index morphism
};
ValidationReport check_fam_diagram(const FamDiagram& d);

struct FamColimit {
  FamObject obj;
  std::vector<FamMorphism> injections;
  Grothendieck gr;  // the shape-level construction, kept for mediator lookups
};
FamColimit fam_colimit(const FamDiagram& d, Budget& budget);

struct FamLimit {
  FamObject obj;
  std::vector<FamMorphism> projections;
  // For pullbacks: the comparison 2-cell component at each shape object of
  // the limit (the iso-comma φ); empty otherwise.
  std::vector<int> square;
};
FamLimit fam_terminal(const CategoryPtr& target, Budget& budget);
FamLimit fam_product(const CategoryPtr& target, const std::vector<FamObject>& factors,
                     Budget& budget);
FamLimit fam_pullback(const FamMorphism& left, const FamMorphism& right, Budget& budget);

std::vector<FamMorphism> enumerate_fam_homs(const FamObject& a, const FamObject& b,
                                            Budget& budget);

// --- universal-property verification by enumeration (small instances) ---

// A cocone on d with apex z: legs plus, per index morphism u, the invertible
// comparison 2-cell ε_u: leg(tgt u)∘d(u) => leg(src u) (components in the
// shape of z), subject to naturality, arrow compatibility and the cocycle
// condition. For a discrete index this is a plain tuple of legs.
struct FamCocone {
  std::vector<FamMorphism> legs;
  std::vector<std::vector<int>> epsilon;  // per index morphism, per fiber object
};
std::vector<FamCocone> enumerate_cocones(const FamDiagram& d, const FamObject& z,
                                         Budget& budget);
// Mediators h: colim -> z matching the cocone's legs and 2-cells exactly.
std::vector<FamMorphism> cocone_mediators(const FamColimit& colim, const FamDiagram& d,
                                          const FamObject& z, const FamCocone& cocone,
                                          Budget& budget);

// A cone on the cospan l: A -> R <- B: r with apex w: two legs plus the
// invertible 2-cell η: l∘to_left => r∘to_right.
struct FamPullbackCone {
  FamMorphism to_left, to_right;
  std::vector<int> eta;  // per shape object of w, a morphism in the shape of R
};
std::vector<FamPullbackCone> enumerate_pullback_cones(const FamMorphism& l,
                                                      const FamMorphism& r,
                                                      const FamObject& w, Budget& budget);
std::vector<FamMorphism> pullback_cone_mediators(const FamLimit& lim, const FamMorphism& l,
                                                 const FamMorphism& r,
                                                 const FamPullbackCone& cone, Budget& budget);

std::vector<std::vector<FamMorphism>> enumerate_product_cones(
    const std::vector<FamObject>& factors, const FamObject& w, Budget& budget);
std::vector<FamMorphism> product_cone_mediators(const FamLimit& lim,
                                                const std::vector<FamMorphism>& cone,
                                                Budget& budget);

// --- extensivity -----------------------------------------------------------

// Verifies that ∏ Fam/c_i -> Fam/(c1 ⊔ c2) is an equivalence over a bounded
// catalog of probe domains: essential surjectivity by explicit splitting and
// fully-faithfulness by hom-set enumeration.
struct ExtensivityReport {
  bool verified = false;
  bool indeterminate = false;
  int slice_objects_checked = 0;
  int hom_pairs_checked = 0;
  std::string detail;
};
ExtensivityReport extensivity_check(const FamObject& c1, const FamObject& c2, Budget& budget);

// Probe shapes with at most two objects, used by the extensivity harness and
// the enumerative suites.
std::vector<GroupoidPtr> small_shape_catalog();

}  // namespace famcat

#endif
