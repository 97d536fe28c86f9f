#ifndef FAMCAT_CATEGORY_HPP
#define FAMCAT_CATEGORY_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "famcat/budget.hpp"
#include "famcat/validation.hpp"

namespace famcat {

class FiniteCategory;
using CategoryPtr = std::shared_ptr<const FiniteCategory>;

// Serializable form of a finite category. Ids are free-form strings; the
// composition table lists triples [f, g, gof] meaning g∘f = gof.
struct CategoryData {
  struct Arrow {
    std::string id, src, tgt;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // (object, its identity)
  std::vector<std::array<std::string, 3>> composition;          // [f, g, g∘f]
};

// Finite category with an extensional composition table, immutable once
// constructed. Objects and morphisms are dense indices; names are kept for
// reporting and for canonical (lexicographic) tie-breaking.
//
// The raw constructor trusts its tables (programmatic builders use it and are
// covered by tests); data coming from files goes through build(), which
// reports malformed references and structural defects, after which
// check_axioms() reports axiom violations on whatever table survived.
class FiniteCategory {
 public:
  FiniteCategory(std::string name, std::vector<std::string> objects,
                 std::vector<std::string> morphisms, std::vector<int> src,
                 std::vector<int> tgt, std::vector<int> identity,
                 std::vector<int> compose_table);

  static CategoryPtr build(const CategoryData& data, ValidationReport& report);

  int num_objects() const { return static_cast<int>(obj_names_.size()); }
  int num_morphisms() const { return static_cast<int>(mor_names_.size()); }
  int src(int m) const { return src_[m]; }
  int tgt(int m) const { return tgt_[m]; }
  int identity_at(int obj) const { return identity_[obj]; }
  bool is_identity(int m) const { return identity_[src_[m]] == m; }
  bool composable(int g, int f) const { return src_[g] == tgt_[f]; }

  // g∘f, or -1 when the pair is not composable or the entry is missing.
  int compose(int g, int f) const { return compose_[g * num_morphisms() + f]; }

  const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }

  const std::string& name() const { return name_; }
  const std::string& object_name(int o) const { return obj_names_[o]; }
  const std::string& morphism_name(int m) const { return mor_names_[m]; }
  int object_index(const std::string& id) const;  // -1 when absent
  int morphism_index(const std::string& id) const;

  ValidationReport check_axioms() const;
  CategoryData to_data() const;

 private:
  std::string name_;
  std::vector<std::string> obj_names_, mor_names_;
  std::vector<int> src_, tgt_, identity_, compose_;
  std::vector<std::vector<std::vector<int>>> hom_;
  std::unordered_map<std::string, int> obj_index_, mor_index_;
};

// Reference/structure errors plus axiom violations, in one report.
ValidationReport validate_category(const CategoryData& data);

// Assembles a category from tables plus a composite rule evaluated on every
// composable pair. For programmatic constructions whose validity the caller
// guarantees (and tests verify).
template <typename Composer>
CategoryPtr make_category(std::string name, std::vector<std::string> objects,
                          std::vector<std::string> morphisms, std::vector<int> src,
                          std::vector<int> tgt, std::vector<int> identity,
                          Composer&& composite_of) {
  const int n = static_cast<int>(morphisms.size());
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (src[g] == tgt[f]) table[static_cast<size_t>(g) * n + f] = composite_of(g, f);
  return std::make_shared<FiniteCategory>(std::move(name), std::move(objects),
                                          std::move(morphisms), std::move(src), std::move(tgt),
                                          std::move(identity), std::move(table));
}

// Functor as dense object/morphism maps between immutable categories.
struct Functor {
  CategoryPtr src, tgt;
  std::vector<int> obj, mor;

  int on_obj(int o) const { return obj[o]; }
  int on_mor(int m) const { return mor[m]; }
};

Functor identity_functor(const CategoryPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);
bool functor_equal(const Functor& a, const Functor& b);
ValidationReport check_functor(const Functor& f);

struct NatTrans {
  Functor f1, f2;               // parallel functors
  std::vector<int> components;  // per source object x: morphism f1(x) -> f2(x)
};
ValidationReport check_nat_trans(const NatTrans& t);

// Finite diagram in a category: nodes pick objects, edges pick morphisms.
struct CatDiagram {
  struct Edge {
    int from, to, mor;
  };

  CategoryPtr cat;
  std::vector<int> nodes;
  std::vector<Edge> edges;
};

struct Cone {
  int apex;
  std::vector<int> legs;  // per diagram node: morphism apex -> node object
};

// Object with exactly one morphism from every object; smallest name on ties.
std::optional<int> find_terminal(const FiniteCategory& c);

std::vector<Cone> enumerate_cones(const CatDiagram& d, Budget& budget);

// Terminal cone over d, or nullopt when none exists. Budget exhaustion throws
// (indeterminate), which is distinct from nullopt (no limit).
std::optional<Cone> brute_force_limit(const CatDiagram& d, Budget& budget);
std::optional<Cone> brute_force_limit(const CatDiagram& d);

// Mediating morphisms h: from.apex -> to.apex with to.legs∘h = from.legs.
std::vector<int> cone_mediators(const CatDiagram& d, const Cone& from, const Cone& to);

std::vector<Functor> enumerate_functors(const CategoryPtr& a, const CategoryPtr& b,
                                        Budget& budget);
std::vector<std::vector<int>> enumerate_nat_trans(const Functor& f1, const Functor& f2,
                                                  Budget& budget);

}  // namespace famcat

#endif
