#ifndef FAMCAT_HOMOTOPY_HPP
#define FAMCAT_HOMOTOPY_HPP

#include <optional>
#include <string>
#include <vector>

#include "famcat/fam.hpp"

namespace famcat {

// Pointed family: a basepoint object of the shape, optionally with the
// morphism component *->F(x) that exhibits it as a map out of σ(terminal).
// The fundamental group only needs the object.
struct PointedFam {
  FamObject fam;
  int basepoint = -1;
  std::optional<int> component;
};
ValidationReport validate_pointed_fam(const PointedFam& p);

struct GroupIso {
  FiniteGroup src, tgt;
  std::vector<int> map;
};
ValidationReport check_group_iso(const GroupIso& iso);

// The shape projection; at this truncation level Π∞ = Π₁ (shapes are already
// 1-truncated) and τ≤0 is π₀ viewed as a set.
GroupoidPtr shape_of(const FamObject& f);
Pi0 tau0(const FamObject& f);

// Δ(I): coproduct of |I| copies of σ(terminal of C); discrete shape of size |I|.
FamObject delta_family(const CategoryPtr& target, const std::vector<std::string>& index);
// Δ on a map of index sets.
FamMorphism delta_on_map(const FamObject& delta_src, const FamObject& delta_tgt,
                         const std::vector<int>& map);

// Exhaustive check of Hom(f, ΔI) ≅ Hom(π₀(shape f), I) for 0-truncated f,
// with naturality sampled in both arguments.
struct AdjunctionReport {
  bool verified = false;
  bool indeterminate = false;
  long long hom_count = 0;
  long long expected = 0;  // |I|^{|π₀|}
  int naturality_samples = 0;
  std::string detail;
};
AdjunctionReport adjunction_check(const FamObject& f, const std::vector<std::string>& index,
                                  Rng& rng, int naturality_samples, Budget& budget);

FiniteGroup pi1(const PointedFam& p);

// Conjugation by the breadth-first connecting path; requires a connected shape.
GroupIso basepoint_change_iso(const FamObject& f, int x0, int x1);

// Compares the shape of the colimit against the shape-level Grothendieck
// construction by equivalence search, and the fundamental groups at matched
// basepoints. Index must be discrete or one-object.
struct ColimitPreservationReport {
  bool equivalent = false;
  bool pi1_matched = false;
  int components = 0;
  std::vector<int> aut_orders;
  std::string detail;
};
ColimitPreservationReport pi1_colimit_preservation_check(const FamDiagram& d, Budget& budget);

}  // namespace famcat

#endif
