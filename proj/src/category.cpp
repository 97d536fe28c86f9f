#include "famcat/category.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace famcat {

long long Budget::default_cap() {
  if (const char* env = std::getenv("FAMCAT_BUDGET")) {
    char* end = nullptr;
    long long cap = std::strtoll(env, &end, 10);
    if (end != env && cap > 0) return cap;
  }
  return 1'000'000;
}

FiniteCategory::FiniteCategory(std::string name, std::vector<std::string> objects,
                               std::vector<std::string> morphisms, std::vector<int> src,
                               std::vector<int> tgt, std::vector<int> identity,
                               std::vector<int> compose_table)
    : name_(std::move(name)),
      obj_names_(std::move(objects)),
      mor_names_(std::move(morphisms)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      identity_(std::move(identity)),
      compose_(std::move(compose_table)) {
  const int n_obj = num_objects();
  const int n_mor = num_morphisms();
  hom_.assign(n_obj, std::vector<std::vector<int>>(n_obj));
  for (int m = 0; m < n_mor; ++m) hom_[src_[m]][tgt_[m]].push_back(m);
  for (int o = 0; o < n_obj; ++o) obj_index_[obj_names_[o]] = o;
  for (int m = 0; m < n_mor; ++m) mor_index_[mor_names_[m]] = m;
}

int FiniteCategory::object_index(const std::string& id) const {
  auto it = obj_index_.find(id);
  return it == obj_index_.end() ? -1 : it->second;
}

int FiniteCategory::morphism_index(const std::string& id) const {
  auto it = mor_index_.find(id);
  return it == mor_index_.end() ? -1 : it->second;
}

CategoryPtr FiniteCategory::build(const CategoryData& data, ValidationReport& report) {
  // Canonical order: sort both id lists so ties and serialization are
  // independent of input order.
  std::vector<std::string> objects = data.objects;
  std::sort(objects.begin(), objects.end());
  std::unordered_map<std::string, int> obj_index;
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) {
    if (!obj_index.emplace(objects[i], i).second)
      report.add("ref.duplicate-object", "object id '" + objects[i] + "' declared twice");
  }

  std::vector<CategoryData::Arrow> arrows = data.morphisms;
  std::sort(arrows.begin(), arrows.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::unordered_map<std::string, int> mor_index;
  for (int i = 0; i < static_cast<int>(arrows.size()); ++i) {
    if (!mor_index.emplace(arrows[i].id, i).second)
      report.add("ref.duplicate-morphism", "morphism id '" + arrows[i].id + "' declared twice");
  }

  const int n_obj = static_cast<int>(objects.size());
  const int n_mor = static_cast<int>(arrows.size());
  std::vector<int> src(n_mor, -1), tgt(n_mor, -1);
  for (int m = 0; m < n_mor; ++m) {
    auto s = obj_index.find(arrows[m].src);
    auto t = obj_index.find(arrows[m].tgt);
    if (s == obj_index.end())
      report.add("ref.unknown-object", "morphism '" + arrows[m].id + "' has unknown source '" +
                                           arrows[m].src + "'");
    else
      src[m] = s->second;
    if (t == obj_index.end())
      report.add("ref.unknown-object", "morphism '" + arrows[m].id + "' has unknown target '" +
                                           arrows[m].tgt + "'");
    else
      tgt[m] = t->second;
  }

  std::vector<int> identity(n_obj, -1);
  for (const auto& [obj, mor] : data.identities) {
    auto o = obj_index.find(obj);
    auto m = mor_index.find(mor);
    if (o == obj_index.end()) {
      report.add("ref.unknown-object", "identity entry names unknown object '" + obj + "'");
      continue;
    }
    if (m == mor_index.end()) {
      report.add("ref.unknown-morphism", "identity of '" + obj + "' names unknown morphism '" +
                                             mor + "'");
      continue;
    }
    if (identity[o->second] != -1 && identity[o->second] != m->second)
      report.add("structure.conflicting-identity", "object '" + obj + "' has two identity entries");
    identity[o->second] = m->second;
  }

  std::vector<int> compose(static_cast<size_t>(n_mor) * n_mor, -1);
  for (const auto& triple : data.composition) {
    const std::string& fid = triple[0];
    const std::string& gid = triple[1];
    const std::string& gofid = triple[2];
    auto f = mor_index.find(fid);
    auto g = mor_index.find(gid);
    auto gof = mor_index.find(gofid);
    bool bad = false;
    for (const auto& [it, id] :
         {std::pair{f, fid}, std::pair{g, gid}, std::pair{gof, gofid}}) {
      if (it == mor_index.end()) {
        report.add("ref.unknown-morphism", "composition entry names unknown morphism '" + id + "'");
        bad = true;
      }
    }
    if (bad) continue;
    const int fi = f->second, gi = g->second, ci = gof->second;
    if (src[fi] < 0 || tgt[fi] < 0 || src[gi] < 0 || tgt[gi] < 0) continue;
    if (tgt[fi] != src[gi]) {
      report.add("structure.non-composable-entry",
                 "table entry (" + fid + ", " + gid + ") is not a composable pair");
      continue;
    }
    if (src[ci] != src[fi] || tgt[ci] != tgt[gi]) {
      report.add("structure.composite-endpoints",
                 "composite of (" + fid + ", " + gid + ") should go " + objects[src[fi]] +
                     " -> " + objects[tgt[gi]] + " but '" + gofid + "' does not");
      continue;
    }
    int& cell = compose[static_cast<size_t>(gi) * n_mor + fi];
    if (cell != -1 && cell != ci) {
      report.add("structure.conflicting-entry",
                 "two different composites recorded for (" + fid + ", " + gid + ")");
      continue;
    }
    cell = ci;
  }

  for (int o = 0; o < n_obj; ++o) {
    if (identity[o] == -1)
      report.add("structure.missing-identity", "object '" + objects[o] + "' has no identity entry");
    else if (src[identity[o]] != o || tgt[identity[o]] != o)
      report.add("structure.identity-endpoints",
                 "identity of '" + objects[o] + "' is not an endomorphism of it");
  }

  if (!report.ok()) return nullptr;

  std::vector<std::string> mor_names(n_mor);
  for (int m = 0; m < n_mor; ++m) mor_names[m] = arrows[m].id;
  return std::make_shared<FiniteCategory>(data.name, std::move(objects), std::move(mor_names),
                                          std::move(src), std::move(tgt), std::move(identity),
                                          std::move(compose));
}

ValidationReport FiniteCategory::check_axioms() const {
  ValidationReport report;
  const int n_mor = num_morphisms();

  std::vector<std::vector<int>> by_src(num_objects());
  for (int m = 0; m < n_mor; ++m) by_src[src_[m]].push_back(m);

  // Closure: every composable pair has an entry.
  for (int f = 0; f < n_mor; ++f)
    for (int g : by_src[tgt_[f]])
      if (compose(g, f) == -1)
        report.add("axiom.closure", "composite undefined for (f=" + mor_names_[f] +
                                        ", g=" + mor_names_[g] + ")");

  // Identity laws (only where the closure entry exists).
  for (int f = 0; f < n_mor; ++f) {
    const int idt = identity_[tgt_[f]];
    const int ids = identity_[src_[f]];
    int left = compose(idt, f);
    if (left != -1 && left != f)
      report.add("axiom.identity-left",
                 "id_" + obj_names_[tgt_[f]] + " ∘ " + mor_names_[f] + " = " +
                     mor_names_[left] + " differs from " + mor_names_[f]);
    int right = compose(f, ids);
    if (right != -1 && right != f)
      report.add("axiom.identity-right",
                 mor_names_[f] + " ∘ id_" + obj_names_[src_[f]] + " = " + mor_names_[right] +
                     " differs from " + mor_names_[f]);
  }

  // Associativity over all composable triples with defined intermediates.
  for (int f = 0; f < n_mor; ++f) {
    for (int g : by_src[tgt_[f]]) {
      const int gf = compose(g, f);
      for (int h : by_src[tgt_[g]]) {
        const int hg = compose(h, g);
        if (gf == -1 || hg == -1) continue;
        const int a = compose(h, gf);
        const int b = compose(hg, f);
        if (a != -1 && b != -1 && a != b)
          report.add("axiom.associativity",
                     "h∘(g∘f) != (h∘g)∘f for (f=" + mor_names_[f] + ", g=" + mor_names_[g] +
                         ", h=" + mor_names_[h] + ")");
      }
    }
  }
  return report;
}

CategoryData FiniteCategory::to_data() const {
  CategoryData data;
  data.name = name_;
  data.objects = obj_names_;
  for (int m = 0; m < num_morphisms(); ++m)
    data.morphisms.push_back({mor_names_[m], obj_names_[src_[m]], obj_names_[tgt_[m]]});
  for (int o = 0; o < num_objects(); ++o)
    data.identities.emplace_back(obj_names_[o], mor_names_[identity_[o]]);
  for (int g = 0; g < num_morphisms(); ++g)
    for (int f = 0; f < num_morphisms(); ++f)
      if (compose(g, f) != -1)
        data.composition.push_back({mor_names_[f], mor_names_[g], mor_names_[compose(g, f)]});
  return data;
}

ValidationReport validate_category(const CategoryData& data) {
  ValidationReport report;
  CategoryPtr cat = FiniteCategory::build(data, report);
  if (cat) report.merge(cat->check_axioms());
  return report;
}

Functor identity_functor(const CategoryPtr& c) {
  Functor f;
  f.src = f.tgt = c;
  f.obj.resize(c->num_objects());
  f.mor.resize(c->num_morphisms());
  std::iota(f.obj.begin(), f.obj.end(), 0);
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (g.src != f.tgt) throw Error("compose_functors: target of f is not source of g");
  Functor out;
  out.src = f.src;
  out.tgt = g.tgt;
  out.obj.resize(f.obj.size());
  out.mor.resize(f.mor.size());
  for (size_t o = 0; o < f.obj.size(); ++o) out.obj[o] = g.obj[f.obj[o]];
  for (size_t m = 0; m < f.mor.size(); ++m) out.mor[m] = g.mor[f.mor[m]];
  return out;
}

bool functor_equal(const Functor& a, const Functor& b) {
  return a.src == b.src && a.tgt == b.tgt && a.obj == b.obj && a.mor == b.mor;
}

ValidationReport check_functor(const Functor& f) {
  ValidationReport report;
  const FiniteCategory& a = *f.src;
  const FiniteCategory& b = *f.tgt;
  if (static_cast<int>(f.obj.size()) != a.num_objects() ||
      static_cast<int>(f.mor.size()) != a.num_morphisms()) {
    report.add("structure.map-shape", "object/morphism map sizes do not match the source");
    return report;
  }
  for (int o = 0; o < a.num_objects(); ++o)
    if (f.obj[o] < 0 || f.obj[o] >= b.num_objects())
      report.add("ref.unknown-object", "image of object '" + a.object_name(o) + "' is out of range");
  for (int m = 0; m < a.num_morphisms(); ++m)
    if (f.mor[m] < 0 || f.mor[m] >= b.num_morphisms())
      report.add("ref.unknown-morphism",
                 "image of morphism '" + a.morphism_name(m) + "' is out of range");
  if (!report.ok()) return report;

  for (int m = 0; m < a.num_morphisms(); ++m) {
    if (b.src(f.mor[m]) != f.obj[a.src(m)] || b.tgt(f.mor[m]) != f.obj[a.tgt(m)])
      report.add("axiom.functor-endpoints",
                 "image of '" + a.morphism_name(m) + "' has wrong source or target");
  }
  if (!report.ok()) return report;

  for (int o = 0; o < a.num_objects(); ++o)
    if (f.mor[a.identity_at(o)] != b.identity_at(f.obj[o]))
      report.add("axiom.functor-identity",
                 "identity of '" + a.object_name(o) + "' is not sent to an identity");

  std::vector<std::vector<int>> by_src(a.num_objects());
  for (int m = 0; m < a.num_morphisms(); ++m) by_src[a.src(m)].push_back(m);
  for (int f1 = 0; f1 < a.num_morphisms(); ++f1) {
    for (int g1 : by_src[a.tgt(f1)]) {
      const int c = a.compose(g1, f1);
      if (c == -1) continue;
      if (f.mor[c] != b.compose(f.mor[g1], f.mor[f1]))
        report.add("axiom.functor-composition",
                   "composite of (" + a.morphism_name(f1) + ", " + a.morphism_name(g1) +
                       ") is not preserved");
    }
  }
  return report;
}

ValidationReport check_nat_trans(const NatTrans& t) {
  ValidationReport report;
  if (t.f1.src != t.f2.src || t.f1.tgt != t.f2.tgt) {
    report.add("structure.not-parallel", "component functors are not parallel");
    return report;
  }
  const FiniteCategory& a = *t.f1.src;
  const FiniteCategory& b = *t.f1.tgt;
  if (static_cast<int>(t.components.size()) != a.num_objects()) {
    report.add("structure.map-shape", "component list does not match the source objects");
    return report;
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    const int c = t.components[x];
    if (c < 0 || c >= b.num_morphisms()) {
      report.add("ref.unknown-morphism", "component at '" + a.object_name(x) + "' is out of range");
      continue;
    }
    if (b.src(c) != t.f1.obj[x] || b.tgt(c) != t.f2.obj[x])
      report.add("structure.component-endpoints",
                 "component at '" + a.object_name(x) + "' has wrong endpoints");
  }
  if (!report.ok()) return report;

  for (int m = 0; m < a.num_morphisms(); ++m) {
    const int x = a.src(m), y = a.tgt(m);
    const int lhs = b.compose(t.components[y], t.f1.mor[m]);
    const int rhs = b.compose(t.f2.mor[m], t.components[x]);
    if (lhs != rhs || lhs == -1)
      report.add("axiom.naturality", "square at morphism '" + a.morphism_name(m) +
                                         "' (" + a.object_name(x) + " -> " + a.object_name(y) +
                                         ") does not commute");
  }
  return report;
}

std::optional<int> find_terminal(const FiniteCategory& c) {
  std::optional<int> best;
  for (int t = 0; t < c.num_objects(); ++t) {
    bool terminal = true;
    for (int a = 0; a < c.num_objects() && terminal; ++a)
      terminal = c.hom(a, t).size() == 1;
    if (terminal && (!best || c.object_name(t) < c.object_name(*best))) best = t;
  }
  return best;
}

namespace {

void cones_rec(const CatDiagram& d, int apex, size_t node, std::vector<int>& legs,
               std::vector<Cone>& out, Budget& budget) {
  if (node == d.nodes.size()) {
    out.push_back({apex, legs});
    return;
  }
  const FiniteCategory& c = *d.cat;
  for (int leg : c.hom(apex, d.nodes[node])) {
    budget.charge();
    legs[node] = leg;
    bool ok = true;
    for (const auto& e : d.edges) {
      const size_t lo = static_cast<size_t>(e.from), hi = static_cast<size_t>(e.to);
      if (lo > node && hi > node) continue;
      if (lo <= node && hi <= node) {
        if (c.compose(e.mor, legs[lo]) != legs[hi]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) cones_rec(d, apex, node + 1, legs, out, budget);
  }
  legs[node] = -1;
}

}  // namespace

std::vector<Cone> enumerate_cones(const CatDiagram& d, Budget& budget) {
  std::vector<Cone> out;
  std::vector<int> legs(d.nodes.size(), -1);
  for (int apex = 0; apex < d.cat->num_objects(); ++apex)
    cones_rec(d, apex, 0, legs, out, budget);
  return out;
}

std::vector<int> cone_mediators(const CatDiagram& d, const Cone& from, const Cone& to) {
  const FiniteCategory& c = *d.cat;
  std::vector<int> out;
  for (int h : c.hom(from.apex, to.apex)) {
    bool ok = true;
    for (size_t n = 0; n < d.nodes.size(); ++n)
      if (c.compose(to.legs[n], h) != from.legs[n]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return out;
}

std::optional<Cone> brute_force_limit(const CatDiagram& d, Budget& budget) {
  std::vector<Cone> cones = enumerate_cones(d, budget);

  // Canonical order so ties break on identifiers, not on table order.
  std::sort(cones.begin(), cones.end(), [&](const Cone& a, const Cone& b) {
    const auto& an = d.cat->object_name(a.apex);
    const auto& bn = d.cat->object_name(b.apex);
    if (an != bn) return an < bn;
    for (size_t i = 0; i < a.legs.size(); ++i) {
      const auto& am = d.cat->morphism_name(a.legs[i]);
      const auto& bm = d.cat->morphism_name(b.legs[i]);
      if (am != bm) return am < bm;
    }
    return false;
  });

  for (const Cone& candidate : cones) {
    bool terminal = true;
    for (const Cone& other : cones) {
      budget.charge();
      if (cone_mediators(d, other, candidate).size() != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) return candidate;
  }
  return std::nullopt;
}

std::optional<Cone> brute_force_limit(const CatDiagram& d) {
  Budget budget;
  return brute_force_limit(d, budget);
}

namespace {

struct FunctorSearch {
  const FiniteCategory& a;
  const FiniteCategory& b;
  const CategoryPtr& ap;
  const CategoryPtr& bp;
  Budget& budget;
  std::vector<Functor>& out;
  std::vector<int> obj, mor;

  // Incremental functor-law check: all composition constraints whose three
  // participants are assigned and which involve the newly assigned morphism.
  bool consistent(int m) const {
    for (int g = 0; g <= m; ++g) {
      for (int f = 0; f <= m; ++f) {
        if (!a.composable(g, f)) continue;
        const int c = a.compose(g, f);
        if (c < 0 || c > m) continue;
        if (g != m && f != m && c != m) continue;
        if (mor[c] != b.compose(mor[g], mor[f])) return false;
      }
    }
    return true;
  }

  void morphisms(int m) {
    if (m == a.num_morphisms()) {
      Functor f{ap, bp, obj, mor};
      out.push_back(std::move(f));
      return;
    }
    if (a.is_identity(m)) {
      budget.charge();
      mor[m] = b.identity_at(obj[a.src(m)]);
      if (consistent(m)) morphisms(m + 1);
      mor[m] = -1;
      return;
    }
    for (int im : b.hom(obj[a.src(m)], obj[a.tgt(m)])) {
      budget.charge();
      mor[m] = im;
      if (consistent(m)) morphisms(m + 1);
    }
    mor[m] = -1;
  }

  void objects(int o) {
    if (o == a.num_objects()) {
      morphisms(0);
      return;
    }
    for (int io = 0; io < b.num_objects(); ++io) {
      budget.charge();
      obj[o] = io;
      objects(o + 1);
    }
    obj[o] = -1;
  }
};

}  // namespace

std::vector<Functor> enumerate_functors(const CategoryPtr& a, const CategoryPtr& b,
                                        Budget& budget) {
  std::vector<Functor> out;
  if (a->num_objects() > 0 && b->num_objects() == 0) return out;
  FunctorSearch search{*a, *b, a, b, budget, out,
                       std::vector<int>(a->num_objects(), -1),
                       std::vector<int>(a->num_morphisms(), -1)};
  search.objects(0);
  return out;
}

namespace {

void nat_trans_rec(const Functor& f1, const Functor& f2, int x, std::vector<int>& comps,
                   std::vector<std::vector<int>>& out, Budget& budget) {
  const FiniteCategory& a = *f1.src;
  const FiniteCategory& b = *f1.tgt;
  if (x == a.num_objects()) {
    out.push_back(comps);
    return;
  }
  for (int c : b.hom(f1.obj[x], f2.obj[x])) {
    budget.charge();
    comps[x] = c;
    bool ok = true;
    for (int m = 0; m < a.num_morphisms() && ok; ++m) {
      const int s = a.src(m), t = a.tgt(m);
      if (s > x || t > x) continue;
      ok = b.compose(comps[t], f1.mor[m]) == b.compose(f2.mor[m], comps[s]);
    }
    if (ok) nat_trans_rec(f1, f2, x + 1, comps, out, budget);
  }
  comps[x] = -1;
}

}  // namespace

std::vector<std::vector<int>> enumerate_nat_trans(const Functor& f1, const Functor& f2,
                                                  Budget& budget) {
  if (f1.src != f2.src || f1.tgt != f2.tgt)
    throw Error("enumerate_nat_trans: functors are not parallel");
  std::vector<std::vector<int>> out;
  std::vector<int> comps(f1.src->num_objects(), -1);
  nat_trans_rec(f1, f2, 0, comps, out, budget);
  return out;
}

}  // namespace famcat
