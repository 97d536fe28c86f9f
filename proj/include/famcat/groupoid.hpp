#ifndef FAMCAT_GROUPOID_HPP
#define FAMCAT_GROUPOID_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "famcat/category.hpp"
#include "famcat/rng.hpp"

namespace famcat {

class FiniteGroupoid;
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

struct GroupoidData {
  CategoryData cat;
  std::vector<std::pair<std::string, std::string>> inverses;  // (morphism, its inverse)
};

// Finite groupoid: a finite category plus an inverse table. Stands in for a
// 1-truncated homotopy type.
class FiniteGroupoid {
 public:
  FiniteGroupoid(CategoryPtr cat, std::vector<int> inverse)
      : cat_(std::move(cat)), inverse_(std::move(inverse)) {}

  static GroupoidPtr build(const GroupoidData& data, ValidationReport& report);

  // Computes inverses by search; reports when some morphism has none.
  static GroupoidPtr from_category(CategoryPtr cat, ValidationReport* report = nullptr);

  const FiniteCategory& cat() const { return *cat_; }
  const CategoryPtr& cat_ptr() const { return cat_; }
  int inverse(int m) const { return inverse_[m]; }
  int num_objects() const { return cat_->num_objects(); }
  int num_morphisms() const { return cat_->num_morphisms(); }

  ValidationReport check_axioms() const;

 private:
  CategoryPtr cat_;
  std::vector<int> inverse_;  // -1 marks a missing inverse (reported, never used)
};

ValidationReport validate_groupoid(const GroupoidData& data);

// Connected components. Blocks are listed in order of their smallest object.
struct Pi0 {
  std::vector<int> block_of;            // object -> block index
  std::vector<std::vector<int>> blocks;  // block -> its objects

  int count() const { return static_cast<int>(blocks.size()); }
};

Pi0 pi0(const FiniteCategory& c);
bool is_connected(const FiniteCategory& c);

// Group as a multiplication table; mul(a, b) composes b first, then a, so that
// automorphism groups embed with their composition order.
struct FiniteGroup {
  std::vector<std::string> elems;
  int identity = 0;
  std::vector<int> table;  // a * n + b  ->  a·b
  std::vector<int> inverse;

  int order() const { return static_cast<int>(elems.size()); }
  int mul(int a, int b) const { return table[a * order() + b]; }
};

ValidationReport check_group(const FiniteGroup& g);
int element_order(const FiniteGroup& g, int a);

struct GroupIsoResult {
  enum class Status { Found, None, Indeterminate };
  Status status = Status::None;
  std::vector<int> map;  // src element -> tgt element, when found
};
GroupIsoResult find_group_iso(const FiniteGroup& a, const FiniteGroup& b, int order_cap = 24);

std::vector<std::vector<int>> enumerate_group_homs(const FiniteGroup& a, const FiniteGroup& b);

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_group_3();
FiniteGroup dihedral_group_4();  // symmetries of a square, order 8

// hom(x, x) under composition.
FiniteGroup aut_group(const FiniteGroupoid& g, int x);

// Shape builders.
GroupoidPtr point_groupoid();
GroupoidPtr empty_groupoid();
GroupoidPtr discrete_groupoid(const std::vector<std::string>& objects);
GroupoidPtr delooping(const FiniteGroup& g, const std::string& name = "B");
// Codiscrete on n objects with vertex group g: hom(u, v) = g for all u, v.
GroupoidPtr connected_groupoid(int n_objects, const FiniteGroup& g,
                               const std::string& prefix = "x");

struct DisjointUnion {
  GroupoidPtr total;
  std::vector<Functor> injections;
  std::vector<std::pair<int, int>> obj_origin;  // total object -> (summand, object)
  std::vector<std::pair<int, int>> mor_origin;
};
DisjointUnion disjoint_union_groupoids(const std::vector<GroupoidPtr>& parts);

// Homotopy pullback of f: A -> C <- B: g as the iso-comma groupoid. Objects
// are triples (a, b, φ: f(a) -> g(b)); morphisms are pairs (α, β) with
// g(β)∘φ = φ'∘f(α). The square commutes up to the tautological transformation
// whose component at a triple is its φ.
struct IsoComma {
  GroupoidPtr pb;
  Functor to_left, to_right;
  std::vector<std::array<int, 3>> objs;  // (a, b, φ)
  std::vector<std::array<int, 2>> mors;  // (α, β)
  std::vector<int> square;               // per object: φ, a morphism of C
};
IsoComma iso_comma_pullback(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& c,
                            const Functor& f, const Functor& g, Budget& budget);

// Groupoid-valued diagram over a groupoid index.
struct GroupoidDiagram {
  GroupoidPtr index;
  std::vector<GroupoidPtr> fibers;  // per index object
  std::vector<Functor> edges;       // per index morphism u: fiber(src u) -> fiber(tgt u)
};
ValidationReport check_groupoid_diagram(const GroupoidDiagram& d);

// Total groupoid of a diagram: objects (j, x), morphisms (u, v: d(u)(x) -> x').
struct Grothendieck {
  GroupoidPtr total;
  std::vector<Functor> fiber_injections;       // per index object
  std::vector<std::pair<int, int>> obj_pairs;  // total object -> (j, x)
  std::vector<std::array<int, 3>> mor_data;    // total morphism -> (u, x, v)
};
Grothendieck grothendieck_construction(const GroupoidDiagram& d, Budget& budget);

// π₀-surjectivity with a witness: the induced block map when true, an unhit
// block of the target when false.
struct EffectiveEpi {
  bool verdict = false;
  std::vector<int> block_map;  // source block -> target block
  int missing_block = -1;
};
EffectiveEpi is_effective_epi(const Functor& f);

// One level of the nerve of a map f: X' -> X. Level k is built from k+1
// copies of X' (level 0 is X' itself, whose single face is the augmentation
// f). Objects of level k are chains (x_0..x_k; φ_1..φ_k) with
// φ_i: f(x_{i-1}) -> f(x_i); faces delete a coordinate and compose the φs.
struct CechLevel {
  int level = 0;
  GroupoidPtr grpd;
  std::vector<Functor> faces;  // d_0..d_k to level k-1; {f} at level 0
};
std::vector<CechLevel> cech_nerve(const GroupoidPtr& xprime, const GroupoidPtr& x,
                                  const Functor& f, int levels, Budget& budget);

// π₁ from the nerve's 2-skeleton: spanning-tree edge-path presentation reduced
// by coset enumeration. Throws BudgetExceeded when the coset cap is hit.
FiniteGroup edge_path_pi1(const FiniteGroupoid& g, int basepoint, int coset_cap = 20000);

// Composite path x -> y picked breadth-first with name-order tie-breaks;
// nullopt when no path exists.
std::optional<int> connecting_morphism(const FiniteGroupoid& g, int x, int y);

bool is_equivalence_functor(const FiniteGroupoid& a, const FiniteGroupoid& b, const Functor& f);
std::optional<Functor> find_equivalence(const GroupoidPtr& a, const GroupoidPtr& b,
                                        int order_cap = 24);

// Equivalent inflation of g: object o is replicated copies[o] >= 1 times,
// chaotically wired within each clone set. projection collapses the copies.
struct Blowup {
  GroupoidPtr total;
  Functor projection;  // total -> g, an equivalence
};
Blowup blowup_groupoid(const GroupoidPtr& g, const std::vector<int>& copies);

// Seeded generators used by the randomized suites.
GroupoidPtr random_groupoid(Rng& rng, int max_components, int max_objects_per_component,
                            int max_vertex_group = 3);
Functor random_functor(Rng& rng, const GroupoidPtr& a, const GroupoidPtr& b);

}  // namespace famcat

#endif
