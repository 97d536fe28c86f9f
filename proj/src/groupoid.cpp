#include "famcat/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "famcat/todd_coxeter.hpp"

namespace famcat {

GroupoidPtr FiniteGroupoid::build(const GroupoidData& data, ValidationReport& report) {
  CategoryPtr cat = FiniteCategory::build(data.cat, report);
  if (!cat) return nullptr;

  std::vector<int> inverse(cat->num_morphisms(), -1);
  bool refs_ok = true;
  for (const auto& [mid, iid] : data.inverses) {
    const int m = cat->morphism_index(mid);
    const int i = cat->morphism_index(iid);
    if (m < 0) {
      report.add("ref.unknown-morphism", "inverse entry names unknown morphism '" + mid + "'");
      refs_ok = false;
      continue;
    }
    if (i < 0) {
      report.add("ref.unknown-morphism",
                 "inverse of '" + mid + "' names unknown morphism '" + iid + "'");
      refs_ok = false;
      continue;
    }
    inverse[m] = i;
  }
  if (!refs_ok) return nullptr;
  return std::make_shared<FiniteGroupoid>(std::move(cat), std::move(inverse));
}

GroupoidPtr FiniteGroupoid::from_category(CategoryPtr cat, ValidationReport* report) {
  std::vector<int> inverse(cat->num_morphisms(), -1);
  for (int m = 0; m < cat->num_morphisms(); ++m) {
    for (int n : cat->hom(cat->tgt(m), cat->src(m))) {
      if (cat->compose(n, m) == cat->identity_at(cat->src(m)) &&
          cat->compose(m, n) == cat->identity_at(cat->tgt(m))) {
        inverse[m] = n;
        break;
      }
    }
    if (inverse[m] < 0 && report)
      report->add("axiom.inverse-missing",
                  "morphism '" + cat->morphism_name(m) + "' has no two-sided inverse");
  }
  return std::make_shared<FiniteGroupoid>(std::move(cat), std::move(inverse));
}

ValidationReport FiniteGroupoid::check_axioms() const {
  ValidationReport report = cat_->check_axioms();
  for (int m = 0; m < cat_->num_morphisms(); ++m) {
    const int i = inverse_[m];
    if (i < 0) {
      report.add("axiom.inverse-missing",
                 "morphism '" + cat_->morphism_name(m) + "' has no inverse entry");
      continue;
    }
    if (cat_->src(i) != cat_->tgt(m) || cat_->tgt(i) != cat_->src(m)) {
      report.add("axiom.inverse-endpoints",
                 "inverse of '" + cat_->morphism_name(m) + "' has wrong endpoints");
      continue;
    }
    if (cat_->compose(i, m) != cat_->identity_at(cat_->src(m)) ||
        cat_->compose(m, i) != cat_->identity_at(cat_->tgt(m)))
      report.add("axiom.inverse-law",
                 "'" + cat_->morphism_name(i) + "' is not a two-sided inverse of '" +
                     cat_->morphism_name(m) + "'");
  }
  return report;
}

ValidationReport validate_groupoid(const GroupoidData& data) {
  ValidationReport report;
  GroupoidPtr g = FiniteGroupoid::build(data, report);
  if (g) report.merge(g->check_axioms());
  return report;
}

Pi0 pi0(const FiniteCategory& c) {
  Pi0 out;
  out.block_of.assign(c.num_objects(), -1);

  std::vector<std::vector<int>> adj(c.num_objects());
  for (int m = 0; m < c.num_morphisms(); ++m) {
    adj[c.src(m)].push_back(c.tgt(m));
    adj[c.tgt(m)].push_back(c.src(m));
  }

  for (int start = 0; start < c.num_objects(); ++start) {
    if (out.block_of[start] != -1) continue;
    const int block = static_cast<int>(out.blocks.size());
    out.blocks.emplace_back();
    std::deque<int> queue{start};
    out.block_of[start] = block;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      out.blocks[block].push_back(u);
      for (int v : adj[u])
        if (out.block_of[v] == -1) {
          out.block_of[v] = block;
          queue.push_back(v);
        }
    }
  }
  for (auto& block : out.blocks) std::sort(block.begin(), block.end());
  return out;
}

bool is_connected(const FiniteCategory& c) { return pi0(c).count() == 1; }

ValidationReport check_group(const FiniteGroup& g) {
  ValidationReport report;
  const int n = g.order();
  if (static_cast<int>(g.table.size()) != n * n || static_cast<int>(g.inverse.size()) != n) {
    report.add("structure.map-shape", "multiplication or inverse table has wrong size");
    return report;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) < 0 || g.mul(a, b) >= n) {
        report.add("structure.out-of-range", "product out of range");
        return report;
      }
  for (int a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
      report.add("axiom.identity", "identity law fails at '" + g.elems[a] + "'");
    if (g.inverse[a] < 0 || g.mul(a, g.inverse[a]) != g.identity ||
        g.mul(g.inverse[a], a) != g.identity)
      report.add("axiom.inverse-law", "inverse law fails at '" + g.elems[a] + "'");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(a, g.mul(b, c)) != g.mul(g.mul(a, b), c)) {
          report.add("axiom.associativity",
                     "associativity fails at ('" + g.elems[a] + "', '" + g.elems[b] + "', '" +
                         g.elems[c] + "')");
          return report;
        }
  return report;
}

int element_order(const FiniteGroup& g, int a) {
  int x = a, k = 1;
  while (x != g.identity) {
    x = g.mul(x, a);
    ++k;
  }
  return k;
}

namespace {

std::vector<int> greedy_generators(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<bool> closed(g.order(), false);
  closed[g.identity] = true;
  int closed_count = 1;
  auto close_over = [&](int seed) {
    std::deque<int> queue{seed};
    if (!closed[seed]) {
      closed[seed] = true;
      ++closed_count;
    }
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y = 0; y < g.order(); ++y) {
        if (!closed[y]) continue;
        for (int z : {g.mul(x, y), g.mul(y, x)})
          if (!closed[z]) {
            closed[z] = true;
            ++closed_count;
            queue.push_back(z);
          }
      }
    }
  };
  for (int a = 0; a < g.order() && closed_count < g.order(); ++a) {
    if (closed[a]) continue;
    gens.push_back(a);
    close_over(a);
  }
  return gens;
}

// Extends generator images to a full map; empty when no homomorphism matches.
std::vector<int> extend_hom(const FiniteGroup& a, const FiniteGroup& b,
                            const std::vector<int>& gens, const std::vector<int>& images) {
  std::vector<int> map(a.order(), -1);
  map[a.identity] = b.identity;
  std::vector<int> known{a.identity};
  for (size_t i = 0; i < known.size(); ++i) {
    const int x = known[i];
    for (size_t k = 0; k < gens.size(); ++k) {
      const int y = a.mul(x, gens[k]);
      const int fy = b.mul(map[x], images[k]);
      if (map[y] == -1) {
        map[y] = fy;
        known.push_back(y);
      } else if (map[y] != fy) {
        return {};
      }
    }
  }
  for (int x = 0; x < a.order(); ++x)
    if (map[x] == -1) return {};  // generators do not generate (cannot happen)
  return map;
}

bool iso_search(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                size_t k, std::vector<int>& images, std::vector<int>& out) {
  if (k == gens.size()) {
    std::vector<int> map = extend_hom(a, b, gens, images);
    if (map.empty()) return false;
    std::vector<bool> hit(b.order(), false);
    for (int x : map) {
      if (hit[x]) return false;
      hit[x] = true;
    }
    out = std::move(map);
    return true;
  }
  const int want = element_order(a, gens[k]);
  for (int cand = 0; cand < b.order(); ++cand) {
    if (element_order(b, cand) != want) continue;
    images[k] = cand;
    if (iso_search(a, b, gens, k + 1, images, out)) return true;
  }
  return false;
}

}  // namespace

GroupIsoResult find_group_iso(const FiniteGroup& a, const FiniteGroup& b, int order_cap) {
  GroupIsoResult result;
  if (a.order() != b.order()) return result;
  if (a.order() > order_cap) {
    result.status = GroupIsoResult::Status::Indeterminate;
    return result;
  }
  std::vector<int> orders_a(a.order()), orders_b(b.order());
  for (int x = 0; x < a.order(); ++x) orders_a[x] = element_order(a, x);
  for (int x = 0; x < b.order(); ++x) orders_b[x] = element_order(b, x);
  {
    auto sa = orders_a, sb = orders_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return result;
  }
  std::vector<int> gens = greedy_generators(a);
  std::vector<int> images(gens.size(), -1), map;
  if (iso_search(a, b, gens, 0, images, map)) {
    result.status = GroupIsoResult::Status::Found;
    result.map = std::move(map);
  }
  return result;
}

std::vector<std::vector<int>> enumerate_group_homs(const FiniteGroup& a, const FiniteGroup& b) {
  std::vector<std::vector<int>> out;
  std::vector<int> gens = greedy_generators(a);
  std::vector<int> images(gens.size(), 0);
  std::set<std::vector<int>> seen;

  const auto total = [&] {
    long long t = 1;
    for (size_t i = 0; i < gens.size(); ++i) t *= b.order();
    return t;
  }();
  for (long long tuple = 0; tuple < total; ++tuple) {
    long long rest = tuple;
    for (size_t i = 0; i < gens.size(); ++i) {
      images[i] = static_cast<int>(rest % b.order());
      rest /= b.order();
    }
    bool plausible = true;
    for (size_t i = 0; i < gens.size() && plausible; ++i)
      plausible = element_order(a, gens[i]) % element_order(b, images[i]) == 0;
    if (!plausible) continue;
    std::vector<int> map = extend_hom(a, b, gens, images);
    if (!map.empty() && seen.insert(map).second) out.push_back(std::move(map));
  }
  return out;
}

FiniteGroup trivial_group() {
  FiniteGroup g;
  g.elems = {"e"};
  g.identity = 0;
  g.table = {0};
  g.inverse = {0};
  return g;
}

FiniteGroup cyclic_group(int n) {
  FiniteGroup g;
  g.identity = 0;
  for (int i = 0; i < n; ++i) g.elems.push_back("r" + std::to_string(i));
  g.table.resize(static_cast<size_t>(n) * n);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    g.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
  }
  return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  const int n = a.order() * b.order();
  g.identity = a.identity * b.order() + b.identity;
  g.table.resize(static_cast<size_t>(n) * n);
  g.inverse.resize(n);
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < b.order(); ++y) {
      const int i = x * b.order() + y;
      g.elems.push_back("(" + a.elems[x] + "," + b.elems[y] + ")");
      g.inverse[i] = a.inverse[x] * b.order() + b.inverse[y];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int x = a.mul(i / b.order(), j / b.order());
      const int y = b.mul(i % b.order(), j % b.order());
      g.table[i * n + j] = x * b.order() + y;
    }
  return g;
}

namespace {

FiniteGroup perm_group(int degree, std::vector<std::vector<int>> perms) {
  FiniteGroup g;
  const int n = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& p) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  g.identity = index_of(id);
  g.table.resize(static_cast<size_t>(n) * n);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    std::string name = "p";
    for (int v : perms[a]) name += std::to_string(v);
    g.elems.push_back(name);
    std::vector<int> inv(degree);
    for (int i = 0; i < degree; ++i) inv[perms[a][i]] = i;
    g.inverse[a] = index_of(inv);
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int i = 0; i < degree; ++i) prod[i] = perms[a][perms[b][i]];
      g.table[a * n + b] = index_of(prod);
    }
  }
  return g;
}

}  // namespace

FiniteGroup symmetric_group_3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p = {0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perm_group(3, std::move(perms));
}

FiniteGroup dihedral_group_4() {
  std::vector<std::vector<int>> perms;
  std::vector<int> rot = {1, 2, 3, 0};
  std::vector<int> cur = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    perms.push_back(cur);
    std::vector<int> refl(4);
    for (int j = 0; j < 4; ++j) refl[j] = cur[3 - j];
    perms.push_back(refl);
    std::vector<int> next(4);
    for (int j = 0; j < 4; ++j) next[j] = rot[cur[j]];
    cur = next;
  }
  return perm_group(4, std::move(perms));
}

FiniteGroup aut_group(const FiniteGroupoid& g, int x) {
  const FiniteCategory& c = g.cat();
  if (x < 0 || x >= c.num_objects()) throw Error("aut_group: unknown object");
  const std::vector<int>& loops = c.hom(x, x);
  std::vector<int> pos(c.num_morphisms(), -1);
  for (size_t i = 0; i < loops.size(); ++i) pos[loops[i]] = static_cast<int>(i);

  FiniteGroup out;
  const int n = static_cast<int>(loops.size());
  out.table.resize(static_cast<size_t>(n) * n);
  out.inverse.resize(n);
  for (int i = 0; i < n; ++i) {
    out.elems.push_back(c.morphism_name(loops[i]));
    out.inverse[i] = pos[g.inverse(loops[i])];
    for (int j = 0; j < n; ++j) out.table[i * n + j] = pos[c.compose(loops[i], loops[j])];
  }
  out.identity = pos[c.identity_at(x)];
  return out;
}

GroupoidPtr point_groupoid() {
  static const GroupoidPtr point = [] {
    CategoryPtr cat = make_category(
        "pt", {"*"}, {"id_*"}, {0}, {0}, {0}, [](int, int) { return 0; });
    return std::make_shared<const FiniteGroupoid>(cat, std::vector<int>{0});
  }();
  return point;
}

GroupoidPtr empty_groupoid() {
  static const GroupoidPtr empty = [] {
    CategoryPtr cat = make_category("empty", {}, {}, {}, {}, {}, [](int, int) { return -1; });
    return std::make_shared<const FiniteGroupoid>(cat, std::vector<int>{});
  }();
  return empty;
}

GroupoidPtr discrete_groupoid(const std::vector<std::string>& objects) {
  std::vector<std::string> mors;
  std::vector<int> src, tgt, identity;
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) {
    mors.push_back("id_" + objects[i]);
    src.push_back(i);
    tgt.push_back(i);
    identity.push_back(i);
  }
  CategoryPtr cat = make_category("disc", objects, std::move(mors), std::move(src),
                                  std::move(tgt), std::move(identity),
                                  [](int g, int) { return g; });
  std::vector<int> inv(objects.size());
  std::iota(inv.begin(), inv.end(), 0);
  return std::make_shared<const FiniteGroupoid>(std::move(cat), std::move(inv));
}

GroupoidPtr delooping(const FiniteGroup& g, const std::string& name) {
  std::vector<int> src(g.order(), 0), tgt(g.order(), 0);
  CategoryPtr cat = make_category(
      name, {name + ".o"}, g.elems, std::move(src), std::move(tgt),
      std::vector<int>{g.identity}, [&g](int a, int b) { return g.mul(a, b); });
  return std::make_shared<const FiniteGroupoid>(std::move(cat), g.inverse);
}

GroupoidPtr connected_groupoid(int n_objects, const FiniteGroup& g, const std::string& prefix) {
  std::vector<std::string> objs, mors;
  std::vector<int> src, tgt, identity(n_objects, -1), inverse;
  for (int i = 0; i < n_objects; ++i) objs.push_back(prefix + std::to_string(i));

  const int k = g.order();
  // morphism (i -> j, a) at index (i*n + j)*k + a
  auto at = [&](int i, int j, int a) { return (i * n_objects + j) * k + a; };
  for (int i = 0; i < n_objects; ++i)
    for (int j = 0; j < n_objects; ++j)
      for (int a = 0; a < k; ++a) {
        mors.push_back(prefix + std::to_string(i) + ">" + std::to_string(j) + ":" + g.elems[a]);
        src.push_back(i);
        tgt.push_back(j);
        inverse.push_back(at(j, i, g.inverse[a]));
      }
  for (int i = 0; i < n_objects; ++i) identity[i] = at(i, i, g.identity);

  CategoryPtr cat = make_category(
      "conn", std::move(objs), std::move(mors), std::move(src), std::move(tgt),
      std::move(identity), [&, n_objects, k](int m2, int m1) {
        const int i = (m1 / k) / n_objects, j2 = (m2 / k) % n_objects;
        return at(i, j2, g.mul(m2 % k, m1 % k));
      });
  return std::make_shared<const FiniteGroupoid>(std::move(cat), std::move(inverse));
}

DisjointUnion disjoint_union_groupoids(const std::vector<GroupoidPtr>& parts) {
  DisjointUnion out;
  std::vector<std::string> objs, mors;
  std::vector<int> src, tgt, identity, inverse;
  std::vector<int> obj_offset(parts.size()), mor_offset(parts.size());

  for (size_t p = 0; p < parts.size(); ++p) {
    const FiniteCategory& c = parts[p]->cat();
    obj_offset[p] = static_cast<int>(objs.size());
    mor_offset[p] = static_cast<int>(mors.size());
    const std::string tag = "u" + std::to_string(p) + ":";
    for (int o = 0; o < c.num_objects(); ++o) {
      objs.push_back(tag + c.object_name(o));
      out.obj_origin.emplace_back(static_cast<int>(p), o);
    }
    for (int m = 0; m < c.num_morphisms(); ++m) {
      mors.push_back(tag + c.morphism_name(m));
      src.push_back(obj_offset[p] + c.src(m));
      tgt.push_back(obj_offset[p] + c.tgt(m));
      inverse.push_back(mor_offset[p] + parts[p]->inverse(m));
      out.mor_origin.emplace_back(static_cast<int>(p), m);
    }
    for (int o = 0; o < c.num_objects(); ++o)
      identity.push_back(mor_offset[p] + c.identity_at(o));
  }

  const auto& origin = out.mor_origin;
  CategoryPtr cat = make_category(
      "coprod", std::move(objs), std::move(mors), std::move(src), std::move(tgt),
      std::move(identity), [&parts, &origin, &mor_offset](int g, int f) {
        const auto& [pg, mg] = origin[g];
        const auto& [pf, mf] = origin[f];
        if (pg != pf) return -1;  // unreachable: no cross-part composable pairs
        return mor_offset[pg] + parts[pg]->cat().compose(mg, mf);
      });
  out.total = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));

  for (size_t p = 0; p < parts.size(); ++p) {
    Functor inj;
    inj.src = parts[p]->cat_ptr();
    inj.tgt = cat;
    inj.obj.resize(parts[p]->cat().num_objects());
    inj.mor.resize(parts[p]->cat().num_morphisms());
    std::iota(inj.obj.begin(), inj.obj.end(), obj_offset[p]);
    std::iota(inj.mor.begin(), inj.mor.end(), mor_offset[p]);
    out.injections.push_back(std::move(inj));
  }
  return out;
}

IsoComma iso_comma_pullback(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& c,
                            const Functor& f, const Functor& g, Budget& budget) {
  if (f.src != a->cat_ptr() || g.src != b->cat_ptr())
    throw Error("iso_comma_pullback: functor sources do not match the given groupoids");
  if (f.tgt != c->cat_ptr() || g.tgt != c->cat_ptr())
    throw Error("iso_comma_pullback: mismatched target categories");

  const FiniteCategory& ca = a->cat();
  const FiniteCategory& cb = b->cat();
  const FiniteCategory& cc = c->cat();

  IsoComma out;
  std::map<std::array<int, 3>, int> obj_index;
  std::vector<std::string> obj_names;
  for (int ao = 0; ao < ca.num_objects(); ++ao)
    for (int bo = 0; bo < cb.num_objects(); ++bo)
      for (int phi : cc.hom(f.obj[ao], g.obj[bo])) {
        budget.charge();
        obj_index[{ao, bo, phi}] = static_cast<int>(out.objs.size());
        out.objs.push_back({ao, bo, phi});
        obj_names.push_back("(" + ca.object_name(ao) + "|" + cb.object_name(bo) + "|" +
                            cc.morphism_name(phi) + ")");
      }

  std::vector<std::vector<int>> a_by_src(ca.num_objects()), b_by_src(cb.num_objects());
  for (int m = 0; m < ca.num_morphisms(); ++m) a_by_src[ca.src(m)].push_back(m);
  for (int m = 0; m < cb.num_morphisms(); ++m) b_by_src[cb.src(m)].push_back(m);

  // A morphism is determined by its source triple and the pair (α, β); the
  // target φ' = g(β)∘φ∘f(α)⁻¹ is forced.
  std::map<std::array<int, 3>, int> mor_index;  // (src obj, α, β)
  std::vector<std::string> mor_names;
  std::vector<int> msrc, mtgt;
  for (int so = 0; so < static_cast<int>(out.objs.size()); ++so) {
    const auto [ao, bo, phi] = out.objs[so];
    for (int alpha : a_by_src[ao])
      for (int beta : b_by_src[bo]) {
        budget.charge();
        const int f_alpha_inv = f.mor[a->inverse(alpha)];
        const int phi2 = cc.compose(g.mor[beta], cc.compose(phi, f_alpha_inv));
        const int to = obj_index.at({ca.tgt(alpha), cb.tgt(beta), phi2});
        mor_index[{so, alpha, beta}] = static_cast<int>(mor_names.size());
        mor_names.push_back("(" + ca.morphism_name(alpha) + "|" + cb.morphism_name(beta) +
                            ")@" + obj_names[so]);
        out.mors.push_back({alpha, beta});
        msrc.push_back(so);
        mtgt.push_back(to);
      }
  }

  const int n_mor = static_cast<int>(out.mors.size());
  std::vector<int> identity(out.objs.size());
  for (int so = 0; so < static_cast<int>(out.objs.size()); ++so)
    identity[so] = mor_index.at({so, ca.identity_at(out.objs[so][0]),
                                 cb.identity_at(out.objs[so][1])});

  std::vector<int> table(static_cast<size_t>(n_mor) * n_mor, -1);
  for (int m2 = 0; m2 < n_mor; ++m2)
    for (int m1 = 0; m1 < n_mor; ++m1) {
      if (msrc[m2] != mtgt[m1]) continue;
      const int alpha = ca.compose(out.mors[m2][0], out.mors[m1][0]);
      const int beta = cb.compose(out.mors[m2][1], out.mors[m1][1]);
      table[static_cast<size_t>(m2) * n_mor + m1] = mor_index.at({msrc[m1], alpha, beta});
    }

  std::vector<int> inverse(n_mor);
  for (int m = 0; m < n_mor; ++m)
    inverse[m] =
        mor_index.at({mtgt[m], a->inverse(out.mors[m][0]), b->inverse(out.mors[m][1])});

  CategoryPtr cat = std::make_shared<FiniteCategory>(
      "pb", obj_names, std::move(mor_names), std::move(msrc), std::move(mtgt),
      std::move(identity), std::move(table));
  out.pb = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));

  out.to_left.src = out.to_right.src = cat;
  out.to_left.tgt = a->cat_ptr();
  out.to_right.tgt = b->cat_ptr();
  for (const auto& o : out.objs) {
    out.to_left.obj.push_back(o[0]);
    out.to_right.obj.push_back(o[1]);
    out.square.push_back(o[2]);
  }
  for (const auto& m : out.mors) {
    out.to_left.mor.push_back(m[0]);
    out.to_right.mor.push_back(m[1]);
  }
  return out;
}

ValidationReport check_groupoid_diagram(const GroupoidDiagram& d) {
  ValidationReport report;
  const FiniteCategory& k = d.index->cat();
  if (static_cast<int>(d.fibers.size()) != k.num_objects() ||
      static_cast<int>(d.edges.size()) != k.num_morphisms()) {
    report.add("structure.map-shape", "diagram does not assign every index object/morphism");
    return report;
  }
  for (int u = 0; u < k.num_morphisms(); ++u) {
    const Functor& e = d.edges[u];
    if (e.src != d.fibers[k.src(u)]->cat_ptr() || e.tgt != d.fibers[k.tgt(u)]->cat_ptr()) {
      report.add("structure.edge-endpoints",
                 "edge at '" + k.morphism_name(u) + "' does not run between its fibers");
      return report;
    }
    report.merge(check_functor(e));
  }
  if (!report.ok()) return report;

  for (int o = 0; o < k.num_objects(); ++o)
    if (!functor_equal(d.edges[k.identity_at(o)], identity_functor(d.fibers[o]->cat_ptr())))
      report.add("axiom.diagram-identity",
                 "identity of '" + k.object_name(o) + "' is not assigned the identity functor");
  for (int f = 0; f < k.num_morphisms(); ++f)
    for (int g = 0; g < k.num_morphisms(); ++g) {
      if (!k.composable(g, f)) continue;
      if (!functor_equal(d.edges[k.compose(g, f)],
                         compose_functors(d.edges[g], d.edges[f])))
        report.add("axiom.diagram-composition",
                   "diagram does not preserve the composite of ('" + k.morphism_name(f) +
                       "', '" + k.morphism_name(g) + "')");
    }
  return report;
}

Grothendieck grothendieck_construction(const GroupoidDiagram& d, Budget& budget) {
  {
    ValidationReport functorial = check_groupoid_diagram(d);
    if (!functorial.ok())
      throw Error("grothendieck_construction: diagram is not functorial:\n" +
                  functorial.to_string());
  }
  const FiniteCategory& k = d.index->cat();

  Grothendieck out;
  std::map<std::pair<int, int>, int> obj_index;
  std::vector<std::string> obj_names;
  for (int j = 0; j < k.num_objects(); ++j) {
    const FiniteCategory& fib = d.fibers[j]->cat();
    for (int x = 0; x < fib.num_objects(); ++x) {
      budget.charge();
      obj_index[{j, x}] = static_cast<int>(out.obj_pairs.size());
      out.obj_pairs.emplace_back(j, x);
      obj_names.push_back("(" + k.object_name(j) + "|" + fib.object_name(x) + ")");
    }
  }

  // Morphism (u: j -> j', x, v: d(u)(x) -> x').
  std::map<std::array<int, 3>, int> mor_index;
  std::vector<std::string> mor_names;
  std::vector<int> msrc, mtgt;
  for (int u = 0; u < k.num_morphisms(); ++u) {
    const int j = k.src(u), j2 = k.tgt(u);
    const FiniteCategory& fib = d.fibers[j]->cat();
    const FiniteCategory& fib2 = d.fibers[j2]->cat();
    for (int x = 0; x < fib.num_objects(); ++x) {
      const int ux = d.edges[u].obj[x];
      for (int v = 0; v < fib2.num_morphisms(); ++v) {
        if (fib2.src(v) != ux) continue;
        budget.charge();
        mor_index[{u, x, v}] = static_cast<int>(mor_names.size());
        mor_names.push_back("(" + k.morphism_name(u) + "|" + fib.object_name(x) + "|" +
                            fib2.morphism_name(v) + ")");
        out.mor_data.push_back({u, x, v});
        msrc.push_back(obj_index.at({j, x}));
        mtgt.push_back(obj_index.at({j2, fib2.tgt(v)}));
      }
    }
  }

  std::vector<int> identity(out.obj_pairs.size());
  for (const auto& [key, idx] : obj_index) {
    const auto [j, x] = key;
    identity[idx] =
        mor_index.at({k.identity_at(j), x, d.fibers[j]->cat().identity_at(x)});
  }

  const auto& mor_data = out.mor_data;
  CategoryPtr cat = make_category(
      "gr", std::move(obj_names), std::move(mor_names), std::move(msrc), std::move(mtgt),
      std::move(identity), [&](int m2, int m1) {
        const auto [u1, x1, v1] = mor_data[m1];
        const auto [u2, x2, v2] = mor_data[m2];
        (void)x2;
        const int u = k.compose(u2, u1);
        const int j2 = k.tgt(u1);
        const int v = d.fibers[k.tgt(u2)]->cat().compose(v2, d.edges[u2].mor[v1]);
        (void)j2;
        return mor_index.at({u, x1, v});
      });

  std::vector<int> inverse(cat->num_morphisms());
  for (int m = 0; m < cat->num_morphisms(); ++m) {
    const auto [u, x, v] = out.mor_data[m];
    const int j2 = k.tgt(u);
    const int uinv = d.index->inverse(u);
    const int vinv = d.fibers[j2]->inverse(v);
    inverse[m] = mor_index.at({uinv, d.fibers[j2]->cat().tgt(v), d.edges[uinv].mor[vinv]});
  }
  out.total = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));

  for (int j = 0; j < k.num_objects(); ++j) {
    const FiniteCategory& fib = d.fibers[j]->cat();
    Functor inj;
    inj.src = d.fibers[j]->cat_ptr();
    inj.tgt = cat;
    for (int x = 0; x < fib.num_objects(); ++x) inj.obj.push_back(obj_index.at({j, x}));
    for (int v = 0; v < fib.num_morphisms(); ++v)
      inj.mor.push_back(mor_index.at({k.identity_at(j), fib.src(v), v}));
    out.fiber_injections.push_back(std::move(inj));
  }
  return out;
}

EffectiveEpi is_effective_epi(const Functor& f) {
  const Pi0 ps = pi0(*f.src);
  const Pi0 pt = pi0(*f.tgt);

  EffectiveEpi out;
  out.block_map.assign(ps.count(), -1);
  std::vector<bool> hit(pt.count(), false);
  for (int block = 0; block < ps.count(); ++block) {
    const int image_block = pt.block_of[f.obj[ps.blocks[block].front()]];
    out.block_map[block] = image_block;
    hit[image_block] = true;
  }
  for (int block = 0; block < pt.count(); ++block)
    if (!hit[block]) {
      out.verdict = false;
      out.missing_block = block;
      out.block_map.clear();
      return out;
    }
  out.verdict = true;
  return out;
}

namespace {

struct ChainLevel {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> objs;  // (xs, phis)
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> obj_index;
  std::vector<std::pair<int, std::vector<int>>> mors;  // (src obj, alphas)
  std::map<std::pair<int, std::vector<int>>, int> mor_index;
  std::vector<int> mor_tgt;
  GroupoidPtr grpd;
};

}  // namespace

std::vector<CechLevel> cech_nerve(const GroupoidPtr& xprime, const GroupoidPtr& x,
                                  const Functor& f, int levels, Budget& budget) {
  if (f.src != xprime->cat_ptr() || f.tgt != x->cat_ptr())
    throw Error("cech_nerve: map endpoints do not match the given groupoids");
  if (levels < 0) throw Error("cech_nerve: negative level bound");

  const FiniteCategory& cx = xprime->cat();
  const FiniteCategory& cb = x->cat();

  std::vector<CechLevel> out;
  out.push_back({0, xprime, {f}});

  std::vector<ChainLevel> chain(levels + 1);
  // Level 0 in chain form, for the level-1 faces.
  for (int o = 0; o < cx.num_objects(); ++o) {
    chain[0].obj_index[{{o}, {}}] = o;
    chain[0].objs.push_back({{o}, {}});
  }
  for (int m = 0; m < cx.num_morphisms(); ++m) {
    chain[0].mor_index[{cx.src(m), {m}}] = m;
    chain[0].mors.push_back({cx.src(m), {m}});
    chain[0].mor_tgt.push_back(cx.tgt(m));
  }
  chain[0].grpd = xprime;

  for (int k = 1; k <= levels; ++k) {
    ChainLevel& lv = chain[k];
    // Objects: extend every level k-1 chain by (φ_k, x_k).
    for (const auto& [xs, phis] : chain[k - 1].objs) {
      const int last = xs.back();
      for (int xk = 0; xk < cx.num_objects(); ++xk)
        for (int phik : cb.hom(f.obj[last], f.obj[xk])) {
          budget.charge();
          auto nxs = xs;
          nxs.push_back(xk);
          auto nphis = phis;
          nphis.push_back(phik);
          lv.obj_index[{nxs, nphis}] = static_cast<int>(lv.objs.size());
          lv.objs.push_back({std::move(nxs), std::move(nphis)});
        }
    }

    std::vector<std::vector<int>> by_src(cx.num_objects());
    for (int m = 0; m < cx.num_morphisms(); ++m) by_src[cx.src(m)].push_back(m);

    // Morphisms: tuples of X' morphisms out of the source chain; the target
    // chain is forced by φ'_i = f(α_i)∘φ_i∘f(α_{i-1})⁻¹.
    std::vector<std::string> mor_names;
    std::vector<int> msrc, mtgt;
    for (int so = 0; so < static_cast<int>(lv.objs.size()); ++so) {
      const auto& [xs, phis] = lv.objs[so];
      std::vector<std::vector<int>> alpha_choices(k + 1);
      for (int i = 0; i <= k; ++i) alpha_choices[i] = by_src[xs[i]];
      std::vector<int> alphas(k + 1, 0);
      std::vector<size_t> cursor(k + 1, 0);
      // Odometer over alpha tuples.
      bool done = false;
      while (!done) {
        budget.charge();
        for (int i = 0; i <= k; ++i) alphas[i] = alpha_choices[i][cursor[i]];
        std::vector<int> ys(k + 1), nphis(k);
        for (int i = 0; i <= k; ++i) ys[i] = cx.tgt(alphas[i]);
        for (int i = 1; i <= k; ++i) {
          const int f_ai = f.mor[alphas[i]];
          const int f_prev_inv = f.mor[xprime->inverse(alphas[i - 1])];
          nphis[i - 1] = cb.compose(f_ai, cb.compose(phis[i - 1], f_prev_inv));
        }
        const int to = lv.obj_index.at({ys, nphis});
        lv.mor_index[{so, alphas}] = static_cast<int>(lv.mors.size());
        lv.mors.push_back({so, alphas});
        lv.mor_tgt.push_back(to);
        msrc.push_back(so);
        mtgt.push_back(to);
        mor_names.push_back("L" + std::to_string(k) + "m" + std::to_string(lv.mors.size() - 1));
        // advance odometer
        int pos = 0;
        while (pos <= k) {
          if (++cursor[pos] < alpha_choices[pos].size()) break;
          cursor[pos] = 0;
          ++pos;
        }
        done = pos > k;
      }
    }

    std::vector<std::string> obj_names;
    for (size_t i = 0; i < lv.objs.size(); ++i)
      obj_names.push_back("L" + std::to_string(k) + "o" + std::to_string(i));

    std::vector<int> identity(lv.objs.size());
    for (int so = 0; so < static_cast<int>(lv.objs.size()); ++so) {
      std::vector<int> ids(k + 1);
      for (int i = 0; i <= k; ++i) ids[i] = cx.identity_at(lv.objs[so].first[i]);
      identity[so] = lv.mor_index.at({so, ids});
    }

    CategoryPtr cat = make_category(
        "cech" + std::to_string(k), std::move(obj_names), std::move(mor_names),
        std::move(msrc), std::move(mtgt), std::move(identity), [&lv, &cx, k](int m2, int m1) {
          std::vector<int> composed(k + 1);
          for (int i = 0; i <= k; ++i)
            composed[i] = cx.compose(lv.mors[m2].second[i], lv.mors[m1].second[i]);
          return lv.mor_index.at({lv.mors[m1].first, composed});
        });

    std::vector<int> inverse(cat->num_morphisms());
    for (int m = 0; m < cat->num_morphisms(); ++m) {
      std::vector<int> inv(k + 1);
      for (int i = 0; i <= k; ++i) inv[i] = xprime->inverse(lv.mors[m].second[i]);
      inverse[m] = lv.mor_index.at({lv.mor_tgt[m], inv});
    }
    lv.grpd = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));

    // Faces d_0..d_k to level k-1.
    std::vector<Functor> faces;
    for (int i = 0; i <= k; ++i) {
      Functor face;
      face.src = cat;
      face.tgt = chain[k - 1].grpd->cat_ptr();
      for (const auto& [xs, phis] : lv.objs) {
        std::vector<int> ys, nphis;
        for (int t = 0; t <= k; ++t)
          if (t != i) ys.push_back(xs[t]);
        if (i == 0) {
          for (int t = 2; t <= k; ++t) nphis.push_back(phis[t - 1]);
        } else if (i == k) {
          for (int t = 1; t < k; ++t) nphis.push_back(phis[t - 1]);
        } else {
          for (int t = 1; t < i; ++t) nphis.push_back(phis[t - 1]);
          nphis.push_back(cb.compose(phis[i], phis[i - 1]));  // φ_{i+1}∘φ_i
          for (int t = i + 2; t <= k; ++t) nphis.push_back(phis[t - 1]);
        }
        face.obj.push_back(chain[k - 1].obj_index.at({ys, nphis}));
      }
      for (int m = 0; m < static_cast<int>(lv.mors.size()); ++m) {
        std::vector<int> nalphas;
        for (int t = 0; t <= k; ++t)
          if (t != i) nalphas.push_back(lv.mors[m].second[t]);
        face.mor.push_back(chain[k - 1].mor_index.at({face.obj[lv.mors[m].first], nalphas}));
      }
      faces.push_back(std::move(face));
    }
    out.push_back({k, lv.grpd, std::move(faces)});
  }
  return out;
}

std::optional<int> connecting_morphism(const FiniteGroupoid& g, int x, int y) {
  const FiniteCategory& c = g.cat();
  if (x < 0 || x >= c.num_objects() || y < 0 || y >= c.num_objects())
    throw Error("connecting_morphism: unknown object");

  std::vector<int> order(c.num_morphisms());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return c.morphism_name(i) < c.morphism_name(j); });

  std::vector<int> path(c.num_objects(), -1);
  path[x] = c.identity_at(x);
  std::deque<int> queue{x};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == y) return path[y];
    for (int m : order) {
      if (c.src(m) == u && path[c.tgt(m)] == -1) {
        path[c.tgt(m)] = c.compose(m, path[u]);
        queue.push_back(c.tgt(m));
      }
      if (c.tgt(m) == u && path[c.src(m)] == -1) {
        path[c.src(m)] = c.compose(g.inverse(m), path[u]);
        queue.push_back(c.src(m));
      }
    }
  }
  return path[y] == -1 ? std::nullopt : std::optional<int>(path[y]);
}

FiniteGroup edge_path_pi1(const FiniteGroupoid& g, int basepoint, int coset_cap) {
  const FiniteCategory& c = g.cat();
  if (basepoint < 0 || basepoint >= c.num_objects())
    throw Error("edge_path_pi1: unknown basepoint");
  if (!is_connected(c)) throw Error("edge_path_pi1: groupoid is not connected");

  // Spanning tree of the nerve 1-skeleton, breadth-first from the basepoint
  // with name-order tie-breaks.
  std::vector<int> order(c.num_morphisms());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return c.morphism_name(i) < c.morphism_name(j); });

  std::vector<bool> in_tree(c.num_morphisms(), false), reached(c.num_objects(), false);
  reached[basepoint] = true;
  std::deque<int> queue{basepoint};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int m : order) {
      const int other = c.src(m) == u ? c.tgt(m) : (c.tgt(m) == u ? c.src(m) : -1);
      if (other < 0 || reached[other]) continue;
      reached[other] = true;
      in_tree[m] = true;
      queue.push_back(other);
    }
  }

  Presentation pres;
  pres.generators = c.num_morphisms();
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (in_tree[m]) pres.relators.push_back({2 * m});
  // Triangles of the nerve 2-skeleton: [f][g] = [g∘f] as edge paths.
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int hg = 0; hg < c.num_morphisms(); ++hg) {
      if (!c.composable(hg, f)) continue;
      pres.relators.push_back({2 * f, 2 * hg, 2 * c.compose(hg, f) + 1});
    }

  std::optional<FiniteGroup> result = todd_coxeter(pres, coset_cap);
  if (!result)
    throw BudgetExceeded("edge_path_pi1: coset cap " + std::to_string(coset_cap) +
                         " exceeded; group not confirmed finite within budget");
  return *result;
}

bool is_equivalence_functor(const FiniteGroupoid& a, const FiniteGroupoid& b,
                            const Functor& f) {
  const FiniteCategory& ca = a.cat();
  const FiniteCategory& cb = b.cat();
  (void)b;

  // Fully faithful: bijection on each hom set.
  for (int x = 0; x < ca.num_objects(); ++x)
    for (int y = 0; y < ca.num_objects(); ++y) {
      const auto& source = ca.hom(x, y);
      const auto& target = cb.hom(f.obj[x], f.obj[y]);
      if (source.size() != target.size()) return false;
      std::set<int> images;
      for (int m : source) images.insert(f.mor[m]);
      if (images.size() != source.size()) return false;
    }

  // Essentially surjective: every component of b contains an image object.
  const Pi0 pb = pi0(cb);
  std::vector<bool> hit(pb.count(), false);
  for (int x = 0; x < ca.num_objects(); ++x) hit[pb.block_of[f.obj[x]]] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

std::optional<Functor> find_equivalence(const GroupoidPtr& a, const GroupoidPtr& b,
                                        int order_cap) {
  const FiniteCategory& ca = a->cat();
  const FiniteCategory& cb = b->cat();
  const Pi0 pa = pi0(ca);
  const Pi0 pb = pi0(cb);
  if (pa.count() != pb.count()) return std::nullopt;

  std::vector<FiniteGroup> auts_a, auts_b;
  for (int i = 0; i < pa.count(); ++i) auts_a.push_back(aut_group(*a, pa.blocks[i].front()));
  for (int j = 0; j < pb.count(); ++j) auts_b.push_back(aut_group(*b, pb.blocks[j].front()));

  // Perfect matching of components by automorphism-group isomorphism.
  const int n = pa.count();
  std::vector<std::vector<std::optional<GroupIsoResult>>> iso(
      n, std::vector<std::optional<GroupIsoResult>>(n));
  auto iso_at = [&](int i, int j) -> const GroupIsoResult& {
    if (!iso[i][j]) iso[i][j] = find_group_iso(auts_a[i], auts_b[j], order_cap);
    return *iso[i][j];
  };
  std::vector<int> match(n, -1);
  std::vector<bool> used(n, false);
  auto assign = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || iso_at(i, j).status != GroupIsoResult::Status::Found) continue;
      used[j] = true;
      match[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
      match[i] = -1;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;

  Functor f;
  f.src = a->cat_ptr();
  f.tgt = b->cat_ptr();
  f.obj.assign(ca.num_objects(), -1);
  f.mor.assign(ca.num_morphisms(), -1);

  std::vector<int> path_to_rep(ca.num_objects(), -1);
  for (int i = 0; i < n; ++i) {
    const int rep_a = pa.blocks[i].front();
    const int rep_b = pb.blocks[match[i]].front();
    for (int u : pa.blocks[i]) {
      f.obj[u] = rep_b;
      path_to_rep[u] = *connecting_morphism(*a, rep_a, u);
    }
    const auto& loops_a = ca.hom(rep_a, rep_a);
    const auto& loops_b = cb.hom(rep_b, rep_b);
    std::vector<int> pos(ca.num_morphisms(), -1);
    for (size_t t = 0; t < loops_a.size(); ++t) pos[loops_a[t]] = static_cast<int>(t);
    const auto& theta = iso_at(i, match[i]).map;
    for (int u : pa.blocks[i])
      for (int v : pa.blocks[i])
        for (int m : ca.hom(u, v)) {
          const int loop =
              ca.compose(a->inverse(path_to_rep[v]), ca.compose(m, path_to_rep[u]));
          f.mor[m] = loops_b[theta[pos[loop]]];
        }
  }
  return f;
}

Blowup blowup_groupoid(const GroupoidPtr& g, const std::vector<int>& copies) {
  const FiniteCategory& c = g->cat();
  if (static_cast<int>(copies.size()) != c.num_objects())
    throw Error("blowup_groupoid: one copy count per object required");
  for (int k : copies)
    if (k < 1) throw Error("blowup_groupoid: copy counts must be positive");

  std::vector<int> obj_offset(c.num_objects(), 0);
  int total_objs = 0;
  for (int o = 0; o < c.num_objects(); ++o) {
    obj_offset[o] = total_objs;
    total_objs += copies[o];
  }

  std::vector<std::string> objs(total_objs), mors;
  std::vector<int> proj_obj(total_objs), src, tgt, proj_mor, inverse;
  for (int o = 0; o < c.num_objects(); ++o)
    for (int k = 0; k < copies[o]; ++k) {
      objs[obj_offset[o] + k] = c.object_name(o) + "#" + std::to_string(k);
      proj_obj[obj_offset[o] + k] = o;
    }

  // morphism (m, cs, ct): copy cs of src(m) -> copy ct of tgt(m)
  std::vector<int> mor_offset(c.num_morphisms(), 0);
  int total_mors = 0;
  for (int m = 0; m < c.num_morphisms(); ++m) {
    mor_offset[m] = total_mors;
    total_mors += copies[c.src(m)] * copies[c.tgt(m)];
  }
  auto at = [&](int m, int cs, int ct) { return mor_offset[m] + cs * copies[c.tgt(m)] + ct; };

  mors.resize(total_mors);
  src.resize(total_mors);
  tgt.resize(total_mors);
  proj_mor.resize(total_mors);
  inverse.resize(total_mors);
  for (int m = 0; m < c.num_morphisms(); ++m)
    for (int cs = 0; cs < copies[c.src(m)]; ++cs)
      for (int ct = 0; ct < copies[c.tgt(m)]; ++ct) {
        const int idx = at(m, cs, ct);
        mors[idx] =
            c.morphism_name(m) + "#" + std::to_string(cs) + "." + std::to_string(ct);
        src[idx] = obj_offset[c.src(m)] + cs;
        tgt[idx] = obj_offset[c.tgt(m)] + ct;
        proj_mor[idx] = m;
        inverse[idx] = at(g->inverse(m), ct, cs);
      }

  std::vector<int> identity(total_objs);
  for (int o = 0; o < c.num_objects(); ++o)
    for (int k = 0; k < copies[o]; ++k)
      identity[obj_offset[o] + k] = at(c.identity_at(o), k, k);

  std::vector<int> table(static_cast<size_t>(total_mors) * total_mors, -1);
  for (int m2 = 0; m2 < total_mors; ++m2)
    for (int m1 = 0; m1 < total_mors; ++m1) {
      if (src[m2] != tgt[m1]) continue;
      const int base = c.compose(proj_mor[m2], proj_mor[m1]);
      const int cs = src[m1] - obj_offset[c.src(proj_mor[m1])];
      const int ct = tgt[m2] - obj_offset[c.tgt(proj_mor[m2])];
      table[static_cast<size_t>(m2) * total_mors + m1] = at(base, cs, ct);
    }

  Blowup out;
  CategoryPtr cat = std::make_shared<FiniteCategory>(
      "blow", std::move(objs), std::move(mors), std::move(src), std::move(tgt),
      std::move(identity), std::move(table));
  out.total = std::make_shared<const FiniteGroupoid>(cat, std::move(inverse));
  out.projection.src = cat;
  out.projection.tgt = g->cat_ptr();
  out.projection.obj = proj_obj;
  out.projection.mor = proj_mor;
  return out;
}

GroupoidPtr random_groupoid(Rng& rng, int max_components, int max_objects_per_component,
                            int max_vertex_group) {
  const int components = 1 + rng.uniform(max_components);
  std::vector<GroupoidPtr> parts;
  for (int i = 0; i < components; ++i) {
    const int n = 1 + rng.uniform(max_objects_per_component);
    const int gsize = 1 + rng.uniform(max_vertex_group);
    const FiniteGroup group = gsize == 1 ? trivial_group() : cyclic_group(gsize);
    parts.push_back(connected_groupoid(n, group, "c" + std::to_string(i) + "x"));
  }
  if (parts.size() == 1) return parts.front();
  return disjoint_union_groupoids(parts).total;
}

Functor random_functor(Rng& rng, const GroupoidPtr& a, const GroupoidPtr& b) {
  const FiniteCategory& ca = a->cat();
  const FiniteCategory& cb = b->cat();
  if (cb.num_objects() == 0 && ca.num_objects() > 0)
    throw Error("random_functor: no functor into the empty groupoid");

  Functor f;
  f.src = a->cat_ptr();
  f.tgt = b->cat_ptr();
  f.obj.assign(ca.num_objects(), -1);
  f.mor.assign(ca.num_morphisms(), -1);

  const Pi0 pa = pi0(ca);
  const Pi0 pb = pi0(cb);
  std::vector<int> path_to_rep(ca.num_objects(), -1);
  std::vector<int> tau(ca.num_objects(), -1);

  for (int i = 0; i < pa.count(); ++i) {
    const int rep_a = pa.blocks[i].front();
    const int anchor = rng.uniform(cb.num_objects());
    const FiniteGroup aut_a = aut_group(*a, rep_a);
    const FiniteGroup aut_b = aut_group(*b, anchor);
    const auto homs = enumerate_group_homs(aut_a, aut_b);
    const std::vector<int>& theta = homs[rng.uniform(static_cast<int>(homs.size()))];

    const auto& loops_a = ca.hom(rep_a, rep_a);
    const auto& loops_b = cb.hom(anchor, anchor);
    std::vector<int> pos(ca.num_morphisms(), -1);
    for (size_t t = 0; t < loops_a.size(); ++t) pos[loops_a[t]] = static_cast<int>(t);

    const auto& block_b = pb.blocks[pb.block_of[anchor]];
    for (int u : pa.blocks[i]) {
      const int target = block_b[rng.uniform(static_cast<int>(block_b.size()))];
      f.obj[u] = target;
      path_to_rep[u] = *connecting_morphism(*a, rep_a, u);
      const int straight = *connecting_morphism(*b, anchor, target);
      const int twist = loops_b[rng.uniform(static_cast<int>(loops_b.size()))];
      tau[u] = cb.compose(straight, twist);
    }
    for (int u : pa.blocks[i])
      for (int v : pa.blocks[i])
        for (int m : ca.hom(u, v)) {
          const int loop =
              ca.compose(a->inverse(path_to_rep[v]), ca.compose(m, path_to_rep[u]));
          const int image_loop = loops_b[theta[pos[loop]]];
          f.mor[m] = cb.compose(tau[v], cb.compose(image_loop, b->inverse(tau[u])));
        }
  }
  return f;
}

}  // namespace famcat
