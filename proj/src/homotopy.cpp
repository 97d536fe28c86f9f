#include "famcat/homotopy.hpp"

#include <algorithm>
#include <set>

namespace famcat {

ValidationReport validate_pointed_fam(const PointedFam& p) {
  ValidationReport report = validate_fam(p.fam);
  if (!report.ok()) return report;
  if (p.basepoint < 0 || p.basepoint >= p.fam.shape->num_objects()) {
    report.add("ref.unknown-object", "basepoint is not an object of the shape");
    return report;
  }
  if (p.component) {
    std::optional<int> t = find_terminal(*p.fam.target);
    if (!t) {
      report.add("structure.no-terminal", "component given but C has no terminal object");
      return report;
    }
    const FiniteCategory& c = *p.fam.target;
    if (*p.component < 0 || *p.component >= c.num_morphisms() ||
        c.src(*p.component) != *t || c.tgt(*p.component) != p.fam.arrow.obj[p.basepoint])
      report.add("structure.component-endpoints",
                 "basepoint component is not a morphism * -> F(x)");
  }
  return report;
}

ValidationReport check_group_iso(const GroupIso& iso) {
  ValidationReport report;
  if (iso.src.order() != iso.tgt.order() ||
      static_cast<int>(iso.map.size()) != iso.src.order()) {
    report.add("structure.map-shape", "element map does not match the group orders");
    return report;
  }
  std::vector<bool> hit(iso.tgt.order(), false);
  for (int x : iso.map) {
    if (x < 0 || x >= iso.tgt.order() || hit[x]) {
      report.add("axiom.bijection", "element map is not a bijection");
      return report;
    }
    hit[x] = true;
  }
  if (iso.map[iso.src.identity] != iso.tgt.identity)
    report.add("axiom.identity", "identity is not preserved");
  for (int a = 0; a < iso.src.order(); ++a)
    for (int b = 0; b < iso.src.order(); ++b)
      if (iso.map[iso.src.mul(a, b)] != iso.tgt.mul(iso.map[a], iso.map[b])) {
        report.add("axiom.homomorphism",
                   "multiplication not preserved at ('" + iso.src.elems[a] + "', '" +
                       iso.src.elems[b] + "')");
        return report;
      }
  return report;
}

GroupoidPtr shape_of(const FamObject& f) { return f.shape; }

Pi0 tau0(const FamObject& f) { return pi0(f.shape->cat()); }

FamObject delta_family(const CategoryPtr& target, const std::vector<std::string>& index) {
  std::optional<int> t = find_terminal(*target);
  if (!t) throw Error("delta_family: C has no terminal object");

  FamObject out;
  out.shape = discrete_groupoid(index);
  out.target = target;
  out.arrow.src = out.shape->cat_ptr();
  out.arrow.tgt = target;
  out.arrow.obj.assign(index.size(), *t);
  out.arrow.mor.assign(index.size(), target->identity_at(*t));
  return out;
}

FamMorphism delta_on_map(const FamObject& delta_src, const FamObject& delta_tgt,
                         const std::vector<int>& map) {
  FamMorphism out;
  out.src = delta_src;
  out.tgt = delta_tgt;
  out.phi.src = delta_src.shape->cat_ptr();
  out.phi.tgt = delta_tgt.shape->cat_ptr();
  out.phi.obj = map;
  for (int i : map) out.phi.mor.push_back(delta_tgt.shape->cat().identity_at(i));
  for (size_t i = 0; i < map.size(); ++i)
    out.comps.push_back(delta_src.target->identity_at(delta_src.arrow.obj[i]));
  return out;
}

namespace {

// The unit of the adjunction: a morphism into ΔI names one index per component.
std::vector<int> component_assignment(const FamMorphism& h, const Pi0& blocks) {
  std::vector<int> out(blocks.count(), -1);
  for (int b = 0; b < blocks.count(); ++b) out[b] = h.phi.obj[blocks.blocks[b].front()];
  return out;
}

}  // namespace

AdjunctionReport adjunction_check(const FamObject& f, const std::vector<std::string>& index,
                                  Rng& rng, int naturality_samples, Budget& budget) {
  AdjunctionReport report;
  if (!is_zero_truncated(f)) throw Error("adjunction_check: family is not 0-truncated");

  try {
    const FamObject delta = delta_family(f.target, index);
    const Pi0 blocks = tau0(f);

    report.expected = 1;
    for (int b = 0; b < blocks.count(); ++b) {
      report.expected *= static_cast<long long>(index.size());
      budget.charge();
    }

    std::vector<FamMorphism> homs = enumerate_fam_homs(f, delta, budget);
    report.hom_count = static_cast<long long>(homs.size());
    if (report.hom_count != report.expected) {
      report.detail = "hom count " + std::to_string(report.hom_count) + " differs from |I|^{pi0} = " +
                      std::to_string(report.expected);
      return report;
    }

    // Injectivity of h -> (component assignment): with the count above this
    // makes the comparison a bijection.
    std::set<std::vector<int>> images;
    for (const FamMorphism& h : homs) {
      budget.charge();
      images.insert(component_assignment(h, blocks));
    }
    if (static_cast<long long>(images.size()) != report.hom_count) {
      report.detail = "component assignment is not injective on Hom(f, ΔI)";
      return report;
    }

    // Naturality in both arguments on sampled squares.
    const DecompositionCertificate parts = decompose_connected(f);
    for (int s = 0; s < naturality_samples; ++s) {
      budget.charge();
      if (!homs.empty()) {
        const FamMorphism& h = homs[rng.uniform(static_cast<int>(homs.size()))];

        // Argument f: precompose with a component inclusion f_j -> f.
        if (!parts.components.empty()) {
          const int j = rng.uniform(static_cast<int>(parts.components.size()));
          const FamMorphism& incl = parts.inclusions[j];
          const std::vector<int> lhs =
              component_assignment(compose_fam(h, incl), tau0(parts.components[j]));
          const std::vector<int> rhs_full = component_assignment(h, blocks);
          // block of the included component inside f
          const int block = blocks.block_of[incl.phi.obj[0]];
          if (lhs != std::vector<int>{rhs_full[block]}) {
            report.detail = "naturality in the family argument fails";
            return report;
          }
        }

        // Argument I: postcompose with Δ of a random map I -> I'.
        const int m = 1 + rng.uniform(3);
        std::vector<std::string> index2;
        for (int i = 0; i < m; ++i) index2.push_back("i" + std::to_string(i));
        const FamObject delta2 = delta_family(f.target, index2);
        std::vector<int> u(index.size());
        for (size_t i = 0; i < index.size(); ++i) u[i] = rng.uniform(m);
        const FamMorphism du = delta_on_map(delta, delta2, u);
        std::vector<int> lhs = component_assignment(compose_fam(du, h), blocks);
        std::vector<int> rhs = component_assignment(h, blocks);
        for (int& v : rhs) v = u[v];
        if (lhs != rhs) {
          report.detail = "naturality in the index argument fails";
          return report;
        }
      }
      ++report.naturality_samples;
    }
    report.verified = true;
  } catch (const BudgetExceeded&) {
    report.indeterminate = true;
    report.detail = "budget exceeded";
  }
  return report;
}

FiniteGroup pi1(const PointedFam& p) {
  if (p.basepoint < 0 || p.basepoint >= p.fam.shape->num_objects())
    throw Error("pi1: basepoint is not an object of the shape");
  return aut_group(*p.fam.shape, p.basepoint);
}

GroupIso basepoint_change_iso(const FamObject& f, int x0, int x1) {
  const FiniteCategory& c = f.shape->cat();
  if (x0 < 0 || x0 >= c.num_objects() || x1 < 0 || x1 >= c.num_objects())
    throw Error("basepoint_change_iso: unknown object");
  if (!is_connected(c))
    throw Error("basepoint_change_iso: shape is not connected, so the "
                "components criterion for a connecting path fails");

  const int p = *connecting_morphism(*f.shape, x0, x1);

  GroupIso iso;
  iso.src = aut_group(*f.shape, x0);
  iso.tgt = aut_group(*f.shape, x1);

  const auto& loops0 = c.hom(x0, x0);
  const auto& loops1 = c.hom(x1, x1);
  std::vector<int> pos(c.num_morphisms(), -1);
  for (size_t i = 0; i < loops1.size(); ++i) pos[loops1[i]] = static_cast<int>(i);
  for (int g : loops0) {
    const int conj = c.compose(p, c.compose(g, f.shape->inverse(p)));
    iso.map.push_back(pos[conj]);
  }
  return iso;
}

ColimitPreservationReport pi1_colimit_preservation_check(const FamDiagram& d, Budget& budget) {
  ColimitPreservationReport report;
  const FiniteCategory& k = d.index->cat();

  const bool discrete = [&] {
    for (int m = 0; m < k.num_morphisms(); ++m)
      if (!k.is_identity(m)) return false;
    return true;
  }();
  if (!discrete && k.num_objects() != 1)
    throw Error("pi1_colimit_preservation_check: index must be discrete or one-object");

  const FamColimit colim = fam_colimit(d, budget);

  GroupoidDiagram shapes;
  shapes.index = d.index;
  for (const FamObject& f : d.fibers) shapes.fibers.push_back(f.shape);
  for (const FamMorphism& e : d.edges) shapes.edges.push_back(e.phi);
  const Grothendieck gr = grothendieck_construction(shapes, budget);

  std::optional<Functor> eq = find_equivalence(shape_of(colim.obj), gr.total);
  report.equivalent = eq.has_value();
  if (!report.equivalent) {
    report.detail = "no equivalence between the colimit shape and the shape-level colimit";
    return report;
  }

  const Pi0 blocks = pi0(colim.obj.shape->cat());
  report.components = blocks.count();
  report.pi1_matched = true;
  for (int b = 0; b < blocks.count(); ++b) {
    const int x = blocks.blocks[b].front();
    const FiniteGroup left = aut_group(*colim.obj.shape, x);
    const FiniteGroup right = aut_group(*gr.total, eq->obj[x]);
    report.aut_orders.push_back(left.order());
    if (find_group_iso(left, right).status != GroupIsoResult::Status::Found) {
      report.pi1_matched = false;
      report.detail = "fundamental groups differ at a matched basepoint";
    }
  }
  return report;
}

}  // namespace famcat
