#include "famcat/fam.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace famcat {

ValidationReport validate_fam(const FamObject& f) {
  ValidationReport report;
  if (!f.shape || !f.target) {
    report.add("ref.unresolved", "shape or target reference missing");
    return report;
  }
  report.merge(f.shape->check_axioms());
  if (f.arrow.src != f.shape->cat_ptr() || f.arrow.tgt != f.target) {
    report.add("structure.arrow-endpoints", "arrow does not run from the shape to the target");
    return report;
  }
  report.merge(check_functor(f.arrow));
  return report;
}

ValidationReport validate_fam_morphism(const FamMorphism& m) {
  ValidationReport report;
  if (m.src.target != m.tgt.target) {
    report.add("structure.target-mismatch", "source and target families live over different categories");
    return report;
  }
  if (m.phi.src != m.src.shape->cat_ptr() || m.phi.tgt != m.tgt.shape->cat_ptr()) {
    report.add("structure.phi-endpoints", "φ does not run between the two shapes");
    return report;
  }
  report.merge(check_functor(m.phi));
  if (!report.ok()) return report;
  report.merge(check_nat_trans(m.phi_star()));
  return report;
}

bool fam_object_equal(const FamObject& a, const FamObject& b) {
  return a.shape == b.shape && a.target == b.target && a.arrow.obj == b.arrow.obj &&
         a.arrow.mor == b.arrow.mor;
}

bool fam_morphism_equal(const FamMorphism& a, const FamMorphism& b) {
  return fam_object_equal(a.src, b.src) && fam_object_equal(a.tgt, b.tgt) &&
         a.phi.obj == b.phi.obj && a.phi.mor == b.phi.mor && a.comps == b.comps;
}

FamMorphism identity_fam_morphism(const FamObject& f) {
  FamMorphism m;
  m.src = m.tgt = f;
  m.phi = identity_functor(f.shape->cat_ptr());
  for (int x = 0; x < f.shape->num_objects(); ++x)
    m.comps.push_back(f.target->identity_at(f.arrow.obj[x]));
  return m;
}

FamMorphism compose_fam(const FamMorphism& m2, const FamMorphism& m1) {
  if (!fam_object_equal(m1.tgt, m2.src))
    throw Error("compose_fam: target of the first morphism is not the source of the second");
  FamMorphism out;
  out.src = m1.src;
  out.tgt = m2.tgt;
  out.phi = compose_functors(m2.phi, m1.phi);
  const FiniteCategory& c = *m1.src.target;
  for (int x = 0; x < m1.src.shape->num_objects(); ++x)
    out.comps.push_back(c.compose(m2.comps[m1.phi.obj[x]], m1.comps[x]));
  return out;
}

FamObject sigma_embed(const CategoryPtr& target, int obj) {
  if (obj < 0 || obj >= target->num_objects()) throw Error("sigma_embed: unknown object");
  FamObject f;
  f.shape = point_groupoid();
  f.target = target;
  f.arrow.src = f.shape->cat_ptr();
  f.arrow.tgt = target;
  f.arrow.obj = {obj};
  f.arrow.mor = {target->identity_at(obj)};
  return f;
}

bool is_zero_truncated(const FamObject& f) {
  const FiniteCategory& c = f.shape->cat();
  for (int x = 0; x < c.num_objects(); ++x)
    if (c.hom(x, x).size() != 1) return false;
  return true;
}

namespace {

// Full sub-family on a subset of shape objects (must be closed under
// morphisms, e.g. a union of π₀ blocks). Keeps names.
struct Restriction {
  FamObject fam;
  FamMorphism inclusion;          // restricted -> original
  std::vector<int> new_of_obj;    // original object -> restricted index or -1
  std::vector<int> new_of_mor;
};

Restriction restrict_fam(const FamObject& f, const std::vector<int>& objects) {
  const FiniteCategory& c = f.shape->cat();
  Restriction out;
  out.new_of_obj.assign(c.num_objects(), -1);
  out.new_of_mor.assign(c.num_morphisms(), -1);

  std::vector<std::string> objs, mors;
  std::vector<int> src, tgt, identity, inverse, old_obj, old_mor;
  for (int o : objects) {
    out.new_of_obj[o] = static_cast<int>(objs.size());
    objs.push_back(c.object_name(o));
    old_obj.push_back(o);
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (out.new_of_obj[c.src(m)] < 0 || out.new_of_obj[c.tgt(m)] < 0) continue;
    out.new_of_mor[m] = static_cast<int>(mors.size());
    mors.push_back(c.morphism_name(m));
    src.push_back(out.new_of_obj[c.src(m)]);
    tgt.push_back(out.new_of_obj[c.tgt(m)]);
    old_mor.push_back(m);
  }
  for (int o : objects) identity.push_back(out.new_of_mor[c.identity_at(o)]);
  for (int m : old_mor) inverse.push_back(out.new_of_mor[f.shape->inverse(m)]);

  const auto& new_of_mor = out.new_of_mor;
  CategoryPtr cat = make_category(
      c.name() + ".r", std::move(objs), std::move(mors), std::move(src), std::move(tgt),
      std::move(identity),
      [&c, &old_mor, &new_of_mor](int g, int f2) {
        return new_of_mor[c.compose(old_mor[g], old_mor[f2])];
      });
  GroupoidPtr shape = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));

  out.fam.shape = shape;
  out.fam.target = f.target;
  out.fam.arrow.src = cat;
  out.fam.arrow.tgt = f.target;
  for (int o : old_obj) out.fam.arrow.obj.push_back(f.arrow.obj[o]);
  for (int m : old_mor) out.fam.arrow.mor.push_back(f.arrow.mor[m]);

  out.inclusion.src = out.fam;
  out.inclusion.tgt = f;
  out.inclusion.phi.src = cat;
  out.inclusion.phi.tgt = f.shape->cat_ptr();
  out.inclusion.phi.obj = old_obj;
  out.inclusion.phi.mor = old_mor;
  for (int o : old_obj)
    out.inclusion.comps.push_back(f.target->identity_at(f.arrow.obj[o]));
  return out;
}

}  // namespace

FamCoproduct fam_coproduct(const CategoryPtr& target, const std::vector<FamObject>& parts) {
  for (const FamObject& p : parts)
    if (p.target != target) throw Error("fam_coproduct: mismatched target categories");

  FamCoproduct out;
  if (parts.size() == 1) {
    out.obj = parts.front();
    out.injections = {identity_fam_morphism(parts.front())};
    for (int o = 0; o < parts.front().shape->num_objects(); ++o)
      out.obj_origin.emplace_back(0, o);
    for (int m = 0; m < parts.front().shape->num_morphisms(); ++m)
      out.mor_origin.emplace_back(0, m);
    return out;
  }

  std::vector<GroupoidPtr> shapes;
  for (const FamObject& p : parts) shapes.push_back(p.shape);
  DisjointUnion du = disjoint_union_groupoids(shapes);

  out.obj.shape = du.total;
  out.obj.target = target;
  out.obj.arrow.src = du.total->cat_ptr();
  out.obj.arrow.tgt = target;
  for (const auto& [p, o] : du.obj_origin) out.obj.arrow.obj.push_back(parts[p].arrow.obj[o]);
  for (const auto& [p, m] : du.mor_origin) out.obj.arrow.mor.push_back(parts[p].arrow.mor[m]);
  out.obj_origin = du.obj_origin;
  out.mor_origin = du.mor_origin;

  for (size_t p = 0; p < parts.size(); ++p) {
    FamMorphism inj;
    inj.src = parts[p];
    inj.tgt = out.obj;
    inj.phi = du.injections[p];
    for (int o = 0; o < parts[p].shape->num_objects(); ++o)
      inj.comps.push_back(target->identity_at(parts[p].arrow.obj[o]));
    out.injections.push_back(std::move(inj));
  }
  return out;
}

DecompositionCertificate decompose_connected(const FamObject& f) {
  const Pi0 blocks = pi0(f.shape->cat());

  DecompositionCertificate cert;
  cert.block_of = blocks.block_of;
  std::vector<Restriction> restrictions;
  for (const auto& block : blocks.blocks) {
    restrictions.push_back(restrict_fam(f, block));
    cert.components.push_back(restrictions.back().fam);
    cert.inclusions.push_back(restrictions.back().inclusion);
  }

  FamCoproduct coprod = fam_coproduct(f.target, cert.components);

  // f -> ∐ components: object x goes to the tagged copy of x in its block.
  cert.to_coproduct.src = f;
  cert.to_coproduct.tgt = coprod.obj;
  cert.to_coproduct.phi.src = f.shape->cat_ptr();
  cert.to_coproduct.phi.tgt = coprod.obj.shape->cat_ptr();

  // coproduct index of (part, restricted object/morphism)
  std::map<std::pair<int, int>, int> co_obj, co_mor;
  for (int i = 0; i < static_cast<int>(coprod.obj_origin.size()); ++i)
    co_obj[coprod.obj_origin[i]] = i;
  for (int i = 0; i < static_cast<int>(coprod.mor_origin.size()); ++i)
    co_mor[coprod.mor_origin[i]] = i;

  const FiniteCategory& c = f.shape->cat();
  for (int x = 0; x < c.num_objects(); ++x) {
    const int p = blocks.block_of[x];
    cert.to_coproduct.phi.obj.push_back(co_obj.at({p, restrictions[p].new_of_obj[x]}));
    cert.to_coproduct.comps.push_back(f.target->identity_at(f.arrow.obj[x]));
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const int p = blocks.block_of[c.src(m)];
    cert.to_coproduct.phi.mor.push_back(co_mor.at({p, restrictions[p].new_of_mor[m]}));
  }

  cert.from_coproduct.src = coprod.obj;
  cert.from_coproduct.tgt = f;
  cert.from_coproduct.phi.src = coprod.obj.shape->cat_ptr();
  cert.from_coproduct.phi.tgt = f.shape->cat_ptr();
  for (const auto& [p, o] : coprod.obj_origin) {
    const int orig = restrictions[p].inclusion.phi.obj[o];
    cert.from_coproduct.phi.obj.push_back(orig);
    cert.from_coproduct.comps.push_back(f.target->identity_at(f.arrow.obj[orig]));
  }
  for (const auto& [p, m] : coprod.mor_origin)
    cert.from_coproduct.phi.mor.push_back(restrictions[p].inclusion.phi.mor[m]);
  return cert;
}

ValidationReport check_fam_diagram(const FamDiagram& d) {
  ValidationReport report;
  const FiniteCategory& k = d.index->cat();
  if (static_cast<int>(d.fibers.size()) != k.num_objects() ||
      static_cast<int>(d.edges.size()) != k.num_morphisms()) {
    report.add("structure.map-shape", "diagram does not assign every index object/morphism");
    return report;
  }
  for (size_t j = 1; j < d.fibers.size(); ++j)
    if (d.fibers[j].target != d.fibers[0].target) {
      report.add("structure.target-mismatch", "diagram values live over different categories");
      return report;
    }
  for (int u = 0; u < k.num_morphisms(); ++u) {
    if (!fam_object_equal(d.edges[u].src, d.fibers[k.src(u)]) ||
        !fam_object_equal(d.edges[u].tgt, d.fibers[k.tgt(u)])) {
      report.add("structure.edge-endpoints",
                 "edge at '" + k.morphism_name(u) + "' does not run between its fibers");
      return report;
    }
    report.merge(validate_fam_morphism(d.edges[u]));
  }
  if (!report.ok()) return report;

  for (int o = 0; o < k.num_objects(); ++o)
    if (!fam_morphism_equal(d.edges[k.identity_at(o)], identity_fam_morphism(d.fibers[o])))
      report.add("axiom.diagram-identity", "identity of '" + k.object_name(o) +
                                               "' is not assigned the identity morphism");
  for (int f = 0; f < k.num_morphisms(); ++f)
    for (int g = 0; g < k.num_morphisms(); ++g) {
      if (!k.composable(g, f)) continue;
      if (!fam_morphism_equal(d.edges[k.compose(g, f)],
                              compose_fam(d.edges[g], d.edges[f])))
        report.add("axiom.diagram-composition",
                   "diagram does not preserve the composite of ('" + k.morphism_name(f) +
                       "', '" + k.morphism_name(g) + "')");
    }
  return report;
}

FamColimit fam_colimit(const FamDiagram& d, Budget& budget) {
  {
    ValidationReport functorial = check_fam_diagram(d);
    if (!functorial.ok())
      throw Error("fam_colimit: diagram is not functorial:\n" + functorial.to_string());
  }
  if (d.fibers.empty()) throw Error("fam_colimit: empty index; use fam_coproduct({})");
  const CategoryPtr target = d.fibers.front().target;

  GroupoidDiagram shapes;
  shapes.index = d.index;
  for (const FamObject& f : d.fibers) shapes.fibers.push_back(f.shape);
  for (const FamMorphism& e : d.edges) shapes.edges.push_back(e.phi);

  FamColimit out;
  out.gr = grothendieck_construction(shapes, budget);

  out.obj.shape = out.gr.total;
  out.obj.target = target;
  out.obj.arrow.src = out.gr.total->cat_ptr();
  out.obj.arrow.tgt = target;
  for (const auto& [j, x] : out.gr.obj_pairs)
    out.obj.arrow.obj.push_back(d.fibers[j].arrow.obj[x]);
  // arrow on (u, x, v) = F_{j'}(v) ∘ φ★_u(x), the unique choice making the
  // injections natural.
  const FiniteCategory& k = d.index->cat();
  for (const auto& [u, x, v] : out.gr.mor_data) {
    const int j2 = k.tgt(u);
    out.obj.arrow.mor.push_back(
        target->compose(d.fibers[j2].arrow.mor[v], d.edges[u].comps[x]));
  }

  for (int j = 0; j < k.num_objects(); ++j) {
    FamMorphism inj;
    inj.src = d.fibers[j];
    inj.tgt = out.obj;
    inj.phi = out.gr.fiber_injections[j];
    for (int x = 0; x < d.fibers[j].shape->num_objects(); ++x)
      inj.comps.push_back(target->identity_at(d.fibers[j].arrow.obj[x]));
    out.injections.push_back(std::move(inj));
  }
  return out;
}

FamLimit fam_terminal(const CategoryPtr& target, Budget& budget) {
  (void)budget;
  std::optional<int> t = find_terminal(*target);
  if (!t)
    throw Error("fam_terminal: C has no limit for the empty diagram (no terminal object)");
  FamLimit out;
  out.obj = sigma_embed(target, *t);
  return out;
}

namespace {

GroupoidPtr product_groupoid(const std::vector<GroupoidPtr>& factors,
                             std::vector<std::vector<int>>* obj_tuples,
                             std::vector<std::vector<int>>* mor_tuples) {
  const int n = static_cast<int>(factors.size());
  std::map<std::vector<int>, int> obj_index, mor_index;

  std::vector<std::string> objs, mors;
  std::vector<int> src, tgt;
  std::vector<int> tuple(n, 0);

  auto odometer = [&](auto sizes, auto&& emit) {
    for (int i = 0; i < n; ++i)
      if (sizes(i) == 0) return;
    std::fill(tuple.begin(), tuple.end(), 0);
    while (true) {
      emit(tuple);
      int pos = 0;
      while (pos < n) {
        if (++tuple[pos] < sizes(pos)) break;
        tuple[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
  };

  if (n == 0) {
    objs.push_back("()");
    obj_index[{}] = 0;
    mors.push_back("id()");
    mor_index[{}] = 0;
    src.push_back(0);
    tgt.push_back(0);
    obj_tuples->push_back({});
    mor_tuples->push_back({});
  } else {
    odometer([&](int i) { return factors[i]->num_objects(); }, [&](const std::vector<int>& t) {
      std::string name = "(";
      for (int i = 0; i < n; ++i)
        name += (i ? "," : "") + factors[i]->cat().object_name(t[i]);
      name += ")";
      obj_index[t] = static_cast<int>(objs.size());
      objs.push_back(std::move(name));
      obj_tuples->push_back(t);
    });
    odometer([&](int i) { return factors[i]->num_morphisms(); },
             [&](const std::vector<int>& t) {
               std::string name = "(";
               std::vector<int> s(n), g(n);
               for (int i = 0; i < n; ++i) {
                 name += (i ? "," : "") + factors[i]->cat().morphism_name(t[i]);
                 s[i] = factors[i]->cat().src(t[i]);
                 g[i] = factors[i]->cat().tgt(t[i]);
               }
               name += ")";
               mor_index[t] = static_cast<int>(mors.size());
               mors.push_back(std::move(name));
               mor_tuples->push_back(t);
               src.push_back(obj_index.at(s));
               tgt.push_back(obj_index.at(g));
             });
  }

  std::vector<int> identity(objs.size());
  for (const auto& [t, idx] : obj_index) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = factors[i]->cat().identity_at(t[i]);
    identity[idx] = mor_index.at(ids);
  }

  const auto& mt = *mor_tuples;
  CategoryPtr cat = make_category(
      "prod", std::move(objs), std::move(mors), std::move(src), std::move(tgt),
      std::move(identity), [&](int m2, int m1) {
        std::vector<int> t(n);
        for (int i = 0; i < n; ++i)
          t[i] = factors[i]->cat().compose(mt[m2][i], mt[m1][i]);
        return mor_index.at(t);
      });

  std::vector<int> inverse(mor_tuples->size());
  for (size_t m = 0; m < mor_tuples->size(); ++m) {
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[i] = factors[i]->inverse((*mor_tuples)[m][i]);
    inverse[m] = mor_index.at(inv);
  }
  return std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));
}

std::string diagram_description(const CatDiagram& d) {
  std::string out = "{";
  for (size_t i = 0; i < d.nodes.size(); ++i)
    out += (i ? ", " : "") + d.cat->object_name(d.nodes[i]);
  out += "}";
  for (const auto& e : d.edges) out += " " + d.cat->morphism_name(e.mor);
  return out;
}

// Pointwise limit in C with a hard error naming the cone when absent.
Cone pointwise_limit(const CatDiagram& d, Budget& budget) {
  std::optional<Cone> cone = brute_force_limit(d, budget);
  if (!cone)
    throw Error("fam_limit: C lacks the limit of the cone over " + diagram_description(d));
  return *cone;
}

int unique_mediator(const CatDiagram& d, const Cone& from, const Cone& to) {
  std::vector<int> meds = cone_mediators(d, from, to);
  if (meds.size() != 1)
    throw Error("fam_limit: mediating morphism in C is not unique for " +
                diagram_description(d));
  return meds.front();
}

}  // namespace

FamLimit fam_product(const CategoryPtr& target, const std::vector<FamObject>& factors,
                     Budget& budget) {
  if (factors.empty()) return fam_terminal(target, budget);
  for (const FamObject& f : factors)
    if (f.target != target) throw Error("fam_product: mismatched target categories");

  std::vector<GroupoidPtr> shapes;
  for (const FamObject& f : factors) shapes.push_back(f.shape);
  std::vector<std::vector<int>> obj_tuples, mor_tuples;
  GroupoidPtr shape = product_groupoid(shapes, &obj_tuples, &mor_tuples);

  const int n = static_cast<int>(factors.size());
  auto diagram_at = [&](const std::vector<int>& tuple) {
    CatDiagram d;
    d.cat = target;
    for (int i = 0; i < n; ++i) d.nodes.push_back(factors[i].arrow.obj[tuple[i]]);
    return d;
  };

  std::vector<Cone> cones;
  for (const auto& tuple : obj_tuples) cones.push_back(pointwise_limit(diagram_at(tuple), budget));

  FamLimit out;
  out.obj.shape = shape;
  out.obj.target = target;
  out.obj.arrow.src = shape->cat_ptr();
  out.obj.arrow.tgt = target;
  for (const Cone& c : cones) out.obj.arrow.obj.push_back(c.apex);
  for (size_t m = 0; m < mor_tuples.size(); ++m) {
    const int so = shape->cat().src(static_cast<int>(m));
    const int to = shape->cat().tgt(static_cast<int>(m));
    Cone transported{cones[so].apex, {}};
    for (int i = 0; i < n; ++i)
      transported.legs.push_back(
          target->compose(factors[i].arrow.mor[mor_tuples[m][i]], cones[so].legs[i]));
    out.obj.arrow.mor.push_back(
        unique_mediator(diagram_at(obj_tuples[to]), transported, cones[to]));
  }

  for (int i = 0; i < n; ++i) {
    FamMorphism proj;
    proj.src = out.obj;
    proj.tgt = factors[i];
    proj.phi.src = shape->cat_ptr();
    proj.phi.tgt = factors[i].shape->cat_ptr();
    for (const auto& tuple : obj_tuples) proj.phi.obj.push_back(tuple[i]);
    for (const auto& tuple : mor_tuples) proj.phi.mor.push_back(tuple[i]);
    for (size_t o = 0; o < obj_tuples.size(); ++o) proj.comps.push_back(cones[o].legs[i]);
    out.projections.push_back(std::move(proj));
  }
  return out;
}

FamLimit fam_pullback(const FamMorphism& left, const FamMorphism& right, Budget& budget) {
  if (!fam_object_equal(left.tgt, right.tgt))
    throw Error("fam_pullback: the two morphisms do not share a codomain");
  const FamObject& base = left.tgt;
  const CategoryPtr target = base.target;

  IsoComma ic = iso_comma_pullback(left.src.shape, right.src.shape, base.shape, left.phi,
                                   right.phi, budget);

  auto diagram_at = [&](int pb_obj) {
    const auto [a, b, psi] = ic.objs[pb_obj];
    CatDiagram d;
    d.cat = target;
    d.nodes = {left.src.arrow.obj[a], right.src.arrow.obj[b],
               base.arrow.obj[base.shape->cat().tgt(psi)]};
    const int u = target->compose(base.arrow.mor[psi], left.comps[a]);
    const int v = right.comps[b];
    d.edges = {{0, 2, u}, {1, 2, v}};
    return d;
  };

  std::vector<Cone> cones;
  for (int o = 0; o < ic.pb->num_objects(); ++o)
    cones.push_back(pointwise_limit(diagram_at(o), budget));

  FamLimit out;
  out.obj.shape = ic.pb;
  out.obj.target = target;
  out.obj.arrow.src = ic.pb->cat_ptr();
  out.obj.arrow.tgt = target;
  out.square = ic.square;
  for (const Cone& c : cones) out.obj.arrow.obj.push_back(c.apex);

  const FiniteCategory& pc = ic.pb->cat();
  for (int m = 0; m < pc.num_morphisms(); ++m) {
    const int so = pc.src(m), to = pc.tgt(m);
    const auto [alpha, beta] = ic.mors[m];
    Cone transported{cones[so].apex, {}};
    transported.legs.push_back(
        target->compose(left.src.arrow.mor[alpha], cones[so].legs[0]));
    transported.legs.push_back(
        target->compose(right.src.arrow.mor[beta], cones[so].legs[1]));
    transported.legs.push_back(
        target->compose(base.arrow.mor[right.phi.mor[beta]], cones[so].legs[2]));
    out.obj.arrow.mor.push_back(unique_mediator(diagram_at(to), transported, cones[to]));
  }

  FamMorphism pl, pr;
  pl.src = pr.src = out.obj;
  pl.tgt = left.src;
  pr.tgt = right.src;
  pl.phi = ic.to_left;
  pr.phi = ic.to_right;
  for (int o = 0; o < ic.pb->num_objects(); ++o) {
    pl.comps.push_back(cones[o].legs[0]);
    pr.comps.push_back(cones[o].legs[1]);
  }
  out.projections = {std::move(pl), std::move(pr)};
  return out;
}

std::vector<FamMorphism> enumerate_fam_homs(const FamObject& a, const FamObject& b,
                                            Budget& budget) {
  if (a.target != b.target)
    throw Error("enumerate_fam_homs: families live over different categories");
  std::vector<FamMorphism> out;
  for (const Functor& phi :
       enumerate_functors(a.shape->cat_ptr(), b.shape->cat_ptr(), budget)) {
    const Functor composite = compose_functors(b.arrow, phi);
    for (std::vector<int>& comps : enumerate_nat_trans(a.arrow, composite, budget)) {
      FamMorphism m;
      m.src = a;
      m.tgt = b;
      m.phi = phi;
      m.comps = std::move(comps);
      out.push_back(std::move(m));
    }
  }
  return out;
}

// --- cocones and cones -----------------------------------------------------

namespace {

// All ε assignments for one edge, given the two legs.
std::vector<std::vector<int>> edge_two_cells(const FamDiagram& d, int u, const FamObject& z,
                                             const FamMorphism& leg_src,
                                             const FamMorphism& leg_tgt, Budget& budget) {
  const FiniteCategory& k = d.index->cat();
  const FamObject& fib = d.fibers[k.src(u)];
  const FamMorphism& du = d.edges[u];
  const FiniteCategory& zs = z.shape->cat();
  const FiniteCategory& c = *z.target;

  const int nx = fib.shape->num_objects();
  std::vector<std::vector<int>> out;
  std::vector<int> eps(nx, -1);

  auto rec = [&](auto&& self, int x) -> void {
    if (x == nx) {
      out.push_back(eps);
      return;
    }
    const int from = leg_tgt.phi.obj[du.phi.obj[x]];
    const int to = leg_src.phi.obj[x];
    for (int cand : zs.hom(from, to)) {
      budget.charge();
      // arrow compatibility at x
      const int lhs = c.compose(
          z.arrow.mor[cand], c.compose(leg_tgt.comps[du.phi.obj[x]], du.comps[x]));
      if (lhs != leg_src.comps[x]) continue;
      eps[x] = cand;
      // naturality against morphisms with both endpoints assigned
      bool ok = true;
      const FiniteCategory& fs = fib.shape->cat();
      for (int m = 0; m < fs.num_morphisms() && ok; ++m) {
        const int s = fs.src(m), t = fs.tgt(m);
        if (s > x || t > x) continue;
        const int l = zs.compose(eps[t], leg_tgt.phi.mor[du.phi.mor[m]]);
        const int r = zs.compose(leg_src.phi.mor[m], eps[s]);
        ok = l == r;
      }
      if (ok) self(self, x + 1);
    }
    eps[x] = -1;
  };
  rec(rec, 0);
  return out;
}

}  // namespace

std::vector<FamCocone> enumerate_cocones(const FamDiagram& d, const FamObject& z,
                                         Budget& budget) {
  const FiniteCategory& k = d.index->cat();
  const int nj = k.num_objects();

  std::vector<std::vector<FamMorphism>> leg_choices;
  for (int j = 0; j < nj; ++j) leg_choices.push_back(enumerate_fam_homs(d.fibers[j], z, budget));

  std::vector<FamCocone> out;
  std::vector<int> pick(nj, 0);
  for (int j = 0; j < nj; ++j)
    if (leg_choices[j].empty()) return out;

  bool done = nj == 0;
  while (!done || nj == 0) {
    budget.charge();
    FamCocone cocone;
    for (int j = 0; j < nj; ++j) cocone.legs.push_back(leg_choices[j][pick[j]]);

    // per-edge 2-cells; identity edges take identity components
    std::vector<std::vector<std::vector<int>>> eps_choices(k.num_morphisms());
    bool feasible = true;
    for (int u = 0; u < k.num_morphisms() && feasible; ++u) {
      if (k.is_identity(u)) {
        std::vector<int> ident;
        const FamObject& fib = d.fibers[k.src(u)];
        for (int x = 0; x < fib.shape->num_objects(); ++x)
          ident.push_back(z.shape->cat().identity_at(cocone.legs[k.src(u)].phi.obj[x]));
        eps_choices[u] = {ident};
        continue;
      }
      eps_choices[u] = edge_two_cells(d, u, z, cocone.legs[k.src(u)], cocone.legs[k.tgt(u)],
                                      budget);
      feasible = !eps_choices[u].empty();
    }

    if (feasible) {
      // joint odometer over edges with the cocycle filter
      const int ne = k.num_morphisms();
      std::vector<size_t> cursor(ne, 0);
      while (true) {
        budget.charge();
        std::vector<std::vector<int>> eps(ne);
        for (int u = 0; u < ne; ++u) eps[u] = eps_choices[u][cursor[u]];
        bool cocycle = true;
        for (int u1 = 0; u1 < ne && cocycle; ++u1)
          for (int u2 = 0; u2 < ne && cocycle; ++u2) {
            if (!k.composable(u2, u1)) continue;
            const int u21 = k.compose(u2, u1);
            const FamObject& fib = d.fibers[k.src(u1)];
            for (int x = 0; x < fib.shape->num_objects() && cocycle; ++x) {
              const int expected =
                  z.shape->cat().compose(eps[u1][x], eps[u2][d.edges[u1].phi.obj[x]]);
              cocycle = eps[u21][x] == expected;
            }
          }
        if (cocycle) {
          FamCocone full = cocone;
          full.epsilon = eps;
          out.push_back(std::move(full));
        }
        int pos = 0;
        while (pos < ne) {
          if (++cursor[pos] < eps_choices[pos].size()) break;
          cursor[pos] = 0;
          ++pos;
        }
        if (pos == ne) break;
      }
    }

    if (nj == 0) break;
    int pos = 0;
    while (pos < nj) {
      if (++pick[pos] < static_cast<int>(leg_choices[pos].size())) break;
      pick[pos] = 0;
      ++pos;
    }
    done = pos == nj;
    if (done) break;
  }
  return out;
}

std::vector<FamMorphism> cocone_mediators(const FamColimit& colim, const FamDiagram& d,
                                          const FamObject& z, const FamCocone& cocone,
                                          Budget& budget) {
  const FiniteCategory& k = d.index->cat();
  std::vector<FamMorphism> out;

  // lookup: shape morphism (u, x, identity) of the total groupoid
  std::map<std::array<int, 3>, int> mor_at;
  for (int m = 0; m < static_cast<int>(colim.gr.mor_data.size()); ++m)
    mor_at[colim.gr.mor_data[m]] = m;

  for (const FamMorphism& h : enumerate_fam_homs(colim.obj, z, budget)) {
    bool matches = true;
    for (int j = 0; j < k.num_objects() && matches; ++j)
      matches = fam_morphism_equal(compose_fam(h, colim.injections[j]), cocone.legs[j]);
    for (int u = 0; u < k.num_morphisms() && matches; ++u) {
      if (k.is_identity(u)) continue;
      const FamObject& fib = d.fibers[k.src(u)];
      for (int x = 0; x < fib.shape->num_objects() && matches; ++x) {
        const int ident = d.fibers[k.tgt(u)].shape->cat().identity_at(d.edges[u].phi.obj[x]);
        const int gm = mor_at.at({u, x, ident});
        matches = h.phi.mor[gm] == z.shape->inverse(cocone.epsilon[u][x]);
      }
    }
    if (matches) out.push_back(h);
  }
  return out;
}

std::vector<FamPullbackCone> enumerate_pullback_cones(const FamMorphism& l,
                                                      const FamMorphism& r,
                                                      const FamObject& w, Budget& budget) {
  const FamObject& base = l.tgt;
  const FiniteCategory& bs = base.shape->cat();
  const FiniteCategory& c = *base.target;

  std::vector<FamPullbackCone> out;
  for (const FamMorphism& a : enumerate_fam_homs(w, l.src, budget)) {
    for (const FamMorphism& b : enumerate_fam_homs(w, r.src, budget)) {
      const int nw = w.shape->num_objects();
      std::vector<int> eta(nw, -1);
      auto rec = [&](auto&& self, int x) -> void {
        if (x == nw) {
          out.push_back({a, b, eta});
          return;
        }
        const int from = l.phi.obj[a.phi.obj[x]];
        const int to = r.phi.obj[b.phi.obj[x]];
        for (int cand : bs.hom(from, to)) {
          budget.charge();
          const int lhs = c.compose(base.arrow.mor[cand],
                                    c.compose(l.comps[a.phi.obj[x]], a.comps[x]));
          const int rhs = c.compose(r.comps[b.phi.obj[x]], b.comps[x]);
          if (lhs != rhs) continue;
          eta[x] = cand;
          bool ok = true;
          const FiniteCategory& ws = w.shape->cat();
          for (int m = 0; m < ws.num_morphisms() && ok; ++m) {
            const int s = ws.src(m), t = ws.tgt(m);
            if (s > x || t > x) continue;
            const int lhs2 = bs.compose(eta[t], l.phi.mor[a.phi.mor[m]]);
            const int rhs2 = bs.compose(r.phi.mor[b.phi.mor[m]], eta[s]);
            ok = lhs2 == rhs2;
          }
          if (ok) self(self, x + 1);
        }
        eta[x] = -1;
      };
      rec(rec, 0);
    }
  }
  return out;
}

std::vector<FamMorphism> pullback_cone_mediators(const FamLimit& lim, const FamMorphism& l,
                                                 const FamMorphism& r,
                                                 const FamPullbackCone& cone, Budget& budget) {
  (void)l;
  (void)r;
  std::vector<FamMorphism> out;
  const FamObject& w = cone.to_left.src;
  for (const FamMorphism& h : enumerate_fam_homs(w, lim.obj, budget)) {
    if (!fam_morphism_equal(compose_fam(lim.projections[0], h), cone.to_left)) continue;
    if (!fam_morphism_equal(compose_fam(lim.projections[1], h), cone.to_right)) continue;
    bool square_ok = true;
    for (int x = 0; x < w.shape->num_objects() && square_ok; ++x)
      square_ok = lim.square[h.phi.obj[x]] == cone.eta[x];
    if (square_ok) out.push_back(h);
  }
  return out;
}

std::vector<std::vector<FamMorphism>> enumerate_product_cones(
    const std::vector<FamObject>& factors, const FamObject& w, Budget& budget) {
  std::vector<std::vector<FamMorphism>> choices;
  for (const FamObject& f : factors) choices.push_back(enumerate_fam_homs(w, f, budget));
  std::vector<std::vector<FamMorphism>> out;
  for (const auto& ch : choices)
    if (ch.empty()) return out;

  const int n = static_cast<int>(factors.size());
  std::vector<int> pick(n, 0);
  while (true) {
    budget.charge();
    std::vector<FamMorphism> cone;
    for (int i = 0; i < n; ++i) cone.push_back(choices[i][pick[i]]);
    out.push_back(std::move(cone));
    int pos = 0;
    while (pos < n) {
      if (++pick[pos] < static_cast<int>(choices[pos].size())) break;
      pick[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

std::vector<FamMorphism> product_cone_mediators(const FamLimit& lim,
                                                const std::vector<FamMorphism>& cone,
                                                Budget& budget) {
  std::vector<FamMorphism> out;
  if (cone.empty()) return out;
  const FamObject& w = cone.front().src;
  for (const FamMorphism& h : enumerate_fam_homs(w, lim.obj, budget)) {
    bool ok = true;
    for (size_t i = 0; i < cone.size() && ok; ++i)
      ok = fam_morphism_equal(compose_fam(lim.projections[i], h), cone[i]);
    if (ok) out.push_back(h);
  }
  return out;
}

// --- extensivity -----------------------------------------------------------

std::vector<GroupoidPtr> small_shape_catalog() {
  return {empty_groupoid(), point_groupoid(), discrete_groupoid({"p", "q"}),
          connected_groupoid(2, trivial_group(), "ch"), delooping(cyclic_group(2), "BZ2")};
}

namespace {

// Splits a slice object m: a -> c1⊔c2 along the summands and returns the two
// restricted slice objects.
struct SliceSplit {
  Restriction left, right;
  FamMorphism into_left, into_right;
};

SliceSplit split_slice(const FamMorphism& m, const FamCoproduct& coprod,
                       const FamObject& c1, const FamObject& c2) {
  std::vector<int> side0, side1;
  for (int x = 0; x < m.src.shape->num_objects(); ++x) {
    if (coprod.obj_origin[m.phi.obj[x]].first == 0)
      side0.push_back(x);
    else
      side1.push_back(x);
  }

  SliceSplit out;
  out.left = restrict_fam(m.src, side0);
  out.right = restrict_fam(m.src, side1);

  auto retarget = [&](const Restriction& rest, const FamObject& ci) {
    FamMorphism mi;
    mi.src = rest.fam;
    mi.tgt = ci;
    mi.phi.src = rest.fam.shape->cat_ptr();
    mi.phi.tgt = ci.shape->cat_ptr();
    for (int x : rest.inclusion.phi.obj)
      mi.phi.obj.push_back(coprod.obj_origin[m.phi.obj[x]].second);
    for (int mm : rest.inclusion.phi.mor)
      mi.phi.mor.push_back(coprod.mor_origin[m.phi.mor[mm]].second);
    for (int x : rest.inclusion.phi.obj) mi.comps.push_back(m.comps[x]);
    return mi;
  };
  out.into_left = retarget(out.left, c1);
  out.into_right = retarget(out.right, c2);
  return out;
}

// ⊔ on slice objects: (m1: a1 -> c1, m2: a2 -> c2) -> a1⊔a2 -> c1⊔c2.
FamMorphism coproduct_on_slices(const FamMorphism& m1, const FamMorphism& m2,
                                const FamCoproduct& doms, const FamCoproduct& coprod) {
  FamMorphism out;
  out.src = doms.obj;
  out.tgt = coprod.obj;
  out.phi.src = doms.obj.shape->cat_ptr();
  out.phi.tgt = coprod.obj.shape->cat_ptr();
  for (const auto& [p, o] : doms.obj_origin) {
    const FamMorphism& m = p == 0 ? m1 : m2;
    out.phi.obj.push_back(coprod.injections[p].phi.obj[m.phi.obj[o]]);
    out.comps.push_back(m.comps[o]);
  }
  for (const auto& [p, mm] : doms.mor_origin) {
    const FamMorphism& m = p == 0 ? m1 : m2;
    out.phi.mor.push_back(coprod.injections[p].phi.mor[m.phi.mor[mm]]);
  }
  return out;
}

std::vector<FamMorphism> slice_homs(const FamMorphism& from, const FamMorphism& to,
                                    Budget& budget) {
  std::vector<FamMorphism> out;
  for (const FamMorphism& h : enumerate_fam_homs(from.src, to.src, budget))
    if (fam_morphism_equal(compose_fam(to, h), from)) out.push_back(h);
  return out;
}

}  // namespace

ExtensivityReport extensivity_check(const FamObject& c1, const FamObject& c2, Budget& budget) {
  ExtensivityReport report;
  if (c1.target != c2.target) throw Error("extensivity_check: mismatched target categories");
  const CategoryPtr target = c1.target;

  try {
    FamCoproduct coprod = fam_coproduct(target, {c1, c2});

    // Probe domains: every family over the target with a catalog shape.
    std::vector<FamObject> domains;
    for (const GroupoidPtr& shape : small_shape_catalog()) {
      for (const Functor& arrow :
           enumerate_functors(shape->cat_ptr(), target, budget)) {
        FamObject dom;
        dom.shape = shape;
        dom.target = target;
        dom.arrow = arrow;
        domains.push_back(std::move(dom));
      }
    }

    // Essential surjectivity: every slice object over c1⊔c2 splits, up to a
    // slice isomorphism, as a coproduct of slice objects over the summands.
    for (const FamObject& dom : domains) {
      for (const FamMorphism& m : enumerate_fam_homs(dom, coprod.obj, budget)) {
        SliceSplit split = split_slice(m, coprod, c1, c2);
        FamCoproduct doms = fam_coproduct(target, {split.left.fam, split.right.fam});
        FamMorphism glued = coproduct_on_slices(split.into_left, split.into_right, doms, coprod);

        // Reassembly iso w: a1⊔a2 -> a with ⊔(m1,m2) = m∘w.
        FamMorphism w;
        w.src = doms.obj;
        w.tgt = dom;
        w.phi.src = doms.obj.shape->cat_ptr();
        w.phi.tgt = dom.shape->cat_ptr();
        for (const auto& [p, o] : doms.obj_origin) {
          const Restriction& rest = p == 0 ? split.left : split.right;
          w.phi.obj.push_back(rest.inclusion.phi.obj[o]);
          w.comps.push_back(target->identity_at(dom.arrow.obj[rest.inclusion.phi.obj[o]]));
        }
        for (const auto& [p, mm] : doms.mor_origin) {
          const Restriction& rest = p == 0 ? split.left : split.right;
          w.phi.mor.push_back(rest.inclusion.phi.mor[mm]);
        }

        ++report.slice_objects_checked;
        if (!validate_fam_morphism(w).ok() ||
            !fam_morphism_equal(compose_fam(m, w), glued)) {
          report.detail = "essential surjectivity fails at a slice object over " +
                          dom.shape->cat().name();
          return report;
        }
        // w is invertible: bijective on objects and morphisms by construction.
        bool bijective =
            w.phi.obj.size() == static_cast<size_t>(dom.shape->num_objects()) &&
            w.phi.mor.size() == static_cast<size_t>(dom.shape->num_morphisms());
        std::vector<bool> seen_obj(dom.shape->num_objects(), false);
        for (int o : w.phi.obj) {
          if (seen_obj[o]) bijective = false;
          seen_obj[o] = true;
        }
        if (!bijective) {
          report.detail = "reassembly comparison is not an isomorphism";
          return report;
        }
      }
    }

    // Fully faithful: hom sets of the product of slices match hom sets of the
    // slice over the coproduct.
    std::vector<FamMorphism> slice1, slice2;
    for (const FamObject& dom : domains) {
      for (const FamMorphism& m : enumerate_fam_homs(dom, c1, budget)) slice1.push_back(m);
      for (const FamMorphism& m : enumerate_fam_homs(dom, c2, budget)) slice2.push_back(m);
    }
    for (const FamMorphism& m1 : slice1)
      for (const FamMorphism& m2 : slice2)
        for (const FamMorphism& n1 : slice1)
          for (const FamMorphism& n2 : slice2) {
            budget.charge();
            FamCoproduct dm = fam_coproduct(target, {m1.src, m2.src});
            FamCoproduct dn = fam_coproduct(target, {n1.src, n2.src});
            FamMorphism um = coproduct_on_slices(m1, m2, dm, coprod);
            FamMorphism un = coproduct_on_slices(n1, n2, dn, coprod);
            const size_t separate =
                slice_homs(m1, n1, budget).size() * slice_homs(m2, n2, budget).size();
            const size_t joined = slice_homs(um, un, budget).size();
            ++report.hom_pairs_checked;
            if (separate != joined) {
              report.detail = "fully-faithfulness fails: " + std::to_string(separate) +
                              " pairwise slice maps vs " + std::to_string(joined) +
                              " joined slice maps";
              return report;
            }
          }

    report.verified = true;
  } catch (const BudgetExceeded&) {
    report.indeterminate = true;
    report.detail = "budget exceeded";
  }
  return report;
}

}  // namespace famcat
