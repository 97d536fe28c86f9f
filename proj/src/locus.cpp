#include "famcat/locus.hpp"

#include <algorithm>
#include <map>

namespace famcat {

ValidationReport validate_retraction(const RetractionDiagram& x) {
  ValidationReport report;
  if (x.s.size() != x.base.size() || x.r.size() != x.total.size()) {
    report.add("structure.map-shape", "s or r does not match the base/total sizes");
    return report;
  }
  for (size_t p = 0; p < x.base.size(); ++p)
    if (x.s[p] < 0 || x.s[p] >= static_cast<int>(x.total.size())) {
      report.add("ref.out-of-range", "s('" + x.base[p] + "') is not an element of total");
      return report;
    }
  for (size_t e = 0; e < x.total.size(); ++e)
    if (x.r[e] < 0 || x.r[e] >= static_cast<int>(x.base.size())) {
      report.add("ref.out-of-range", "r('" + x.total[e] + "') is not an element of base");
      return report;
    }
  for (size_t p = 0; p < x.base.size(); ++p)
    if (x.r[x.s[p]] != static_cast<int>(p))
      report.add("axiom.section", "r∘s differs from the identity at '" + x.base[p] + "'");
  return report;
}

ValidationReport validate_pointed_family(const PointedSetFamily& fam) {
  ValidationReport report;
  if (fam.carriers.size() != fam.indices.size() ||
      fam.basepoints.size() != fam.indices.size()) {
    report.add("structure.map-shape", "carrier or basepoint list does not match the indices");
    return report;
  }
  for (size_t i = 0; i < fam.indices.size(); ++i) {
    if (fam.carriers[i].empty())
      report.add("axiom.pointed", "carrier of '" + fam.indices[i] + "' is empty");
    else if (fam.basepoints[i] < 0 ||
             fam.basepoints[i] >= static_cast<int>(fam.carriers[i].size()))
      report.add("axiom.basepoint",
                 "basepoint of '" + fam.indices[i] + "' is outside its carrier");
  }
  return report;
}

PointedSetFamily functor_F(const RetractionDiagram& x) {
  PointedSetFamily fam;
  fam.indices = x.base;
  fam.carriers.resize(x.base.size());
  fam.basepoints.assign(x.base.size(), -1);
  // fiber r⁻¹(p), pointed by s(p)
  for (size_t e = 0; e < x.total.size(); ++e)
    fam.carriers[x.r[e]].push_back(x.total[e]);
  for (size_t p = 0; p < x.base.size(); ++p) {
    const std::string& point = x.total[x.s[p]];
    for (size_t k = 0; k < fam.carriers[p].size(); ++k)
      if (fam.carriers[p][k] == point) fam.basepoints[p] = static_cast<int>(k);
  }
  return fam;
}

RetractionDiagram functor_G(const PointedSetFamily& fam) {
  RetractionDiagram x;
  x.base = fam.indices;
  for (size_t i = 0; i < fam.indices.size(); ++i)
    for (size_t k = 0; k < fam.carriers[i].size(); ++k) {
      x.total.push_back("(" + fam.indices[i] + "," + fam.carriers[i][k] + ")");
      x.r.push_back(static_cast<int>(i));  // γ₁: tag projection
    }
  // γ₂: basepoint selection
  x.s.assign(fam.indices.size(), -1);
  int offset = 0;
  for (size_t i = 0; i < fam.indices.size(); ++i) {
    x.s[i] = offset + fam.basepoints[i];
    offset += static_cast<int>(fam.carriers[i].size());
  }
  return x;
}

ValidationReport check_retraction_map(const RetractionDiagram& x, const RetractionDiagram& y,
                                      const RetractionMap& m) {
  ValidationReport report;
  if (m.base_map.size() != x.base.size() || m.total_map.size() != x.total.size()) {
    report.add("structure.map-shape", "component maps do not match the source diagram");
    return report;
  }
  for (size_t p = 0; p < x.base.size(); ++p)
    if (m.total_map[x.s[p]] != y.s[m.base_map[p]])
      report.add("axiom.s-square", "square with s does not commute at '" + x.base[p] + "'");
  for (size_t e = 0; e < x.total.size(); ++e)
    if (m.base_map[x.r[e]] != y.r[m.total_map[e]])
      report.add("axiom.r-square", "square with r does not commute at '" + x.total[e] + "'");
  return report;
}

ValidationReport check_family_map(const PointedSetFamily& a, const PointedSetFamily& b,
                                  const FamilyMap& m) {
  ValidationReport report;
  if (m.index_map.size() != a.indices.size() || m.carrier_maps.size() != a.indices.size()) {
    report.add("structure.map-shape", "component maps do not match the source family");
    return report;
  }
  for (size_t i = 0; i < a.indices.size(); ++i) {
    const int j = m.index_map[i];
    if (j < 0 || j >= static_cast<int>(b.indices.size())) {
      report.add("ref.out-of-range", "index map leaves the target index set");
      return report;
    }
    if (m.carrier_maps[i].size() != a.carriers[i].size()) {
      report.add("structure.map-shape", "carrier map at '" + a.indices[i] + "' has wrong size");
      return report;
    }
    for (int img : m.carrier_maps[i])
      if (img < 0 || img >= static_cast<int>(b.carriers[j].size())) {
        report.add("ref.out-of-range", "carrier map leaves the target carrier");
        return report;
      }
    if (m.carrier_maps[i][a.basepoints[i]] != b.basepoints[j])
      report.add("axiom.pointed-map",
                 "carrier map at '" + a.indices[i] + "' does not preserve the basepoint");
  }
  return report;
}

FamilyMap functor_F_on_map(const RetractionDiagram& x, const RetractionDiagram& y,
                           const RetractionMap& m) {
  const PointedSetFamily fx = functor_F(x);
  const PointedSetFamily fy = functor_F(y);

  // positions of elements within their fibers
  auto positions = [](const RetractionDiagram& d, const PointedSetFamily& fam) {
    std::vector<int> pos(d.total.size(), -1);
    std::vector<int> counters(fam.indices.size(), 0);
    for (size_t e = 0; e < d.total.size(); ++e) pos[e] = counters[d.r[e]]++;
    return pos;
  };
  const std::vector<int> pos_y = positions(y, fy);

  FamilyMap out;
  out.index_map = m.base_map;
  out.carrier_maps.resize(x.base.size());
  std::vector<int> counters(x.base.size(), 0);
  for (size_t e = 0; e < x.total.size(); ++e) {
    const int p = x.r[e];
    (void)counters[p]++;
    out.carrier_maps[p].push_back(pos_y[m.total_map[e]]);
  }
  return out;
}

RetractionMap functor_G_on_map(const PointedSetFamily& a, const PointedSetFamily& b,
                               const FamilyMap& m) {
  RetractionMap out;
  out.base_map = m.index_map;

  std::vector<int> offsets_b(b.indices.size(), 0);
  for (size_t j = 1; j < b.indices.size(); ++j)
    offsets_b[j] = offsets_b[j - 1] + static_cast<int>(b.carriers[j - 1].size());

  for (size_t i = 0; i < a.indices.size(); ++i)
    for (size_t k = 0; k < a.carriers[i].size(); ++k)
      out.total_map.push_back(offsets_b[m.index_map[i]] + m.carrier_maps[i][k]);
  return out;
}

std::vector<RetractionDiagram> enumerate_retractions(int total_bound) {
  std::vector<RetractionDiagram> out;
  for (int t = 0; t <= total_bound; ++t) {
    for (int b = 0; b <= t; ++b) {
      RetractionDiagram proto;
      for (int i = 0; i < b; ++i) proto.base.push_back("b" + std::to_string(i));
      for (int e = 0; e < t; ++e) proto.total.push_back("t" + std::to_string(e));
      if (b == 0) {
        if (t == 0) out.push_back(proto);  // the empty diagram
        continue;                          // nonempty total needs a base
      }
      // all r: total -> base, then all sections s with r∘s = id
      std::vector<int> r(t, 0);
      while (true) {
        std::vector<std::vector<int>> fibers(b);
        for (int e = 0; e < t; ++e) fibers[r[e]].push_back(e);
        bool surjective = true;
        for (int p = 0; p < b; ++p) surjective = surjective && !fibers[p].empty();
        if (surjective) {
          std::vector<int> pick(b, 0);
          while (true) {
            RetractionDiagram d = proto;
            d.r = r;
            d.s.resize(b);
            for (int p = 0; p < b; ++p) d.s[p] = fibers[p][pick[p]];
            out.push_back(std::move(d));
            int pos = 0;
            while (pos < b) {
              if (++pick[pos] < static_cast<int>(fibers[pos].size())) break;
              pick[pos] = 0;
              ++pos;
            }
            if (pos == b) break;
          }
        }
        int pos = 0;
        while (pos < t) {
          if (++r[pos] < b) break;
          r[pos] = 0;
          ++pos;
        }
        if (pos == t) break;
        if (t == 0) break;
      }
      if (t == 0 && b > 0) {
        // base without total cannot satisfy r∘s = id; skip
      }
    }
  }
  return out;
}

std::vector<PointedSetFamily> enumerate_families(int index_bound, int carrier_bound) {
  std::vector<PointedSetFamily> out;
  // per-index variants: (carrier size, basepoint)
  std::vector<std::pair<int, int>> variants;
  for (int size = 1; size <= carrier_bound; ++size)
    for (int bp = 0; bp < size; ++bp) variants.emplace_back(size, bp);

  for (int n = 0; n <= index_bound; ++n) {
    std::vector<int> pick(n, 0);
    while (true) {
      PointedSetFamily fam;
      for (int i = 0; i < n; ++i) {
        fam.indices.push_back("i" + std::to_string(i));
        const auto [size, bp] = variants[pick[i]];
        std::vector<std::string> carrier;
        for (int k = 0; k < size; ++k)
          carrier.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
        fam.carriers.push_back(std::move(carrier));
        fam.basepoints.push_back(bp);
      }
      out.push_back(std::move(fam));
      if (n == 0) break;
      int pos = 0;
      while (pos < n) {
        if (++pick[pos] < static_cast<int>(variants.size())) break;
        pick[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
  }
  return out;
}

std::vector<RetractionMap> enumerate_retraction_maps(const RetractionDiagram& x,
                                                     const RetractionDiagram& y) {
  std::vector<RetractionMap> out;
  const int b = static_cast<int>(x.base.size()), t = static_cast<int>(x.total.size());
  const int yb = static_cast<int>(y.base.size()), yt = static_cast<int>(y.total.size());
  if ((b > 0 && yb == 0) || (t > 0 && yt == 0)) return out;

  std::vector<int> bm(b, 0), tm(t, 0);
  while (true) {
    while (true) {
      RetractionMap m{bm, tm};
      if (check_retraction_map(x, y, m).ok()) out.push_back(std::move(m));
      int pos = 0;
      while (pos < t) {
        if (++tm[pos] < yt) break;
        tm[pos] = 0;
        ++pos;
      }
      if (pos == t) break;
    }
    int pos = 0;
    while (pos < b) {
      if (++bm[pos] < yb) break;
      bm[pos] = 0;
      ++pos;
    }
    if (pos == b) break;
  }
  return out;
}

std::vector<FamilyMap> enumerate_family_maps(const PointedSetFamily& a,
                                             const PointedSetFamily& b) {
  std::vector<FamilyMap> out;
  const int n = static_cast<int>(a.indices.size());
  if (n > 0 && b.indices.empty()) return out;

  std::vector<int> im(n, 0);
  while (true) {
    // carrier maps per index: all pointed maps
    std::vector<std::vector<std::vector<int>>> choices(n);
    bool feasible = true;
    for (int i = 0; i < n && feasible; ++i) {
      const int j = im[i];
      const int from = static_cast<int>(a.carriers[i].size());
      const int to = static_cast<int>(b.carriers[j].size());
      std::vector<int> cm(from, 0);
      while (true) {
        if (cm[a.basepoints[i]] == b.basepoints[j]) choices[i].push_back(cm);
        int pos = 0;
        while (pos < from) {
          if (++cm[pos] < to) break;
          cm[pos] = 0;
          ++pos;
        }
        if (pos == from) break;
      }
      feasible = !choices[i].empty();
    }
    if (feasible) {
      std::vector<int> pick(n, 0);
      while (true) {
        FamilyMap m;
        m.index_map = im;
        for (int i = 0; i < n; ++i) m.carrier_maps.push_back(choices[i][pick[i]]);
        out.push_back(std::move(m));
        int pos = 0;
        while (pos < n) {
          if (++pick[pos] < static_cast<int>(choices[pos].size())) break;
          pick[pos] = 0;
          ++pos;
        }
        if (pos == n) break;
      }
    }
    if (n == 0) break;
    int pos = 0;
    while (pos < n) {
      if (++im[pos] < static_cast<int>(b.indices.size())) break;
      im[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

namespace {

// Isomorphism of retraction diagrams via matching names through F/G, checked
// elementwise: for G(F(x)) vs x the bijection sends (p, e) back to e.
bool gf_iso(const RetractionDiagram& x, RetractionMap* iso_out) {
  const RetractionDiagram gf = functor_G(functor_F(x));
  if (gf.base.size() != x.base.size() || gf.total.size() != x.total.size()) return false;

  RetractionMap iso;
  iso.base_map.resize(gf.base.size());
  for (size_t p = 0; p < gf.base.size(); ++p) iso.base_map[p] = static_cast<int>(p);

  // gf total elements are named "(p, original-name)"; match on the original.
  std::map<std::string, int> by_name;
  for (size_t e = 0; e < x.total.size(); ++e) by_name[x.total[e]] = static_cast<int>(e);
  iso.total_map.resize(gf.total.size());
  std::vector<bool> hit(x.total.size(), false);
  const PointedSetFamily fx = functor_F(x);
  int pos = 0;
  for (size_t i = 0; i < fx.indices.size(); ++i)
    for (size_t k = 0; k < fx.carriers[i].size(); ++k, ++pos) {
      auto it = by_name.find(fx.carriers[i][k]);
      if (it == by_name.end()) return false;
      if (hit[it->second]) return false;
      hit[it->second] = true;
      iso.total_map[pos] = it->second;
    }
  if (!check_retraction_map(gf, x, iso).ok()) return false;
  if (iso_out) *iso_out = iso;
  return true;
}

bool fg_iso(const PointedSetFamily& fam, FamilyMap* iso_out) {
  const PointedSetFamily fg = functor_F(functor_G(fam));
  if (fg.indices.size() != fam.indices.size()) return false;

  FamilyMap iso;
  for (size_t i = 0; i < fg.indices.size(); ++i) iso.index_map.push_back(static_cast<int>(i));
  for (size_t i = 0; i < fg.indices.size(); ++i) {
    if (fg.carriers[i].size() != fam.carriers[i].size()) return false;
    // fg carriers are tagged "(i, name)"; strip by matching the suffix.
    std::vector<int> cm(fg.carriers[i].size(), -1);
    for (size_t k = 0; k < fg.carriers[i].size(); ++k) {
      for (size_t k2 = 0; k2 < fam.carriers[i].size(); ++k2) {
        const std::string expect = "(" + fam.indices[i] + "," + fam.carriers[i][k2] + ")";
        if (fg.carriers[i][k] == expect) cm[k] = static_cast<int>(k2);
      }
      if (cm[k] < 0) return false;
    }
    iso.carrier_maps.push_back(std::move(cm));
  }
  if (!check_family_map(fg, fam, iso).ok()) return false;
  if (iso_out) *iso_out = iso;
  return true;
}

}  // namespace

RoundTripReport roundtrip_check(int total_bound, int index_bound, int carrier_bound, Rng& rng,
                                int morphism_samples, Budget& budget) {
  RoundTripReport report;

  const std::vector<RetractionDiagram> diagrams = enumerate_retractions(total_bound);
  const std::vector<PointedSetFamily> families = enumerate_families(index_bound, carrier_bound);

  for (const RetractionDiagram& x : diagrams) {
    budget.charge();
    if (!validate_retraction(x).ok()) {
      report.detail = "enumerated an invalid retraction diagram";
      return report;
    }
    if (!gf_iso(x, nullptr)) {
      report.detail = "G∘F is not isomorphic to the identity on a diagram with |total| = " +
                      std::to_string(x.total.size());
      return report;
    }
    ++report.diagrams_checked;
  }

  for (const PointedSetFamily& fam : families) {
    budget.charge();
    if (!fg_iso(fam, nullptr)) {
      report.detail = "F∘G is not isomorphic to the identity on a family with " +
                      std::to_string(fam.indices.size()) + " indices";
      return report;
    }
    ++report.families_checked;
  }

  // Naturality of the G∘F ≅ id isomorphism: for sampled morphisms m: x -> y,
  // iso_y ∘ GF(m) = m ∘ iso_x. Functoriality of F and G rides along.
  for (int s = 0; s < morphism_samples; ++s) {
    budget.charge();
    const RetractionDiagram& x = diagrams[rng.uniform(static_cast<int>(diagrams.size()))];
    const RetractionDiagram& y = diagrams[rng.uniform(static_cast<int>(diagrams.size()))];
    const std::vector<RetractionMap> maps = enumerate_retraction_maps(x, y);
    if (maps.empty()) continue;
    const RetractionMap& m = maps[rng.uniform(static_cast<int>(maps.size()))];

    const FamilyMap fm = functor_F_on_map(x, y, m);
    if (!check_family_map(functor_F(x), functor_F(y), fm).ok()) {
      report.detail = "F is not functorial on a sampled morphism";
      return report;
    }
    const RetractionMap gfm = functor_G_on_map(functor_F(x), functor_F(y), fm);

    RetractionMap iso_x, iso_y;
    gf_iso(x, &iso_x);
    gf_iso(y, &iso_y);

    // compose maps: first gfm then iso_y, vs first iso_x then m
    RetractionMap lhs, rhs;
    for (int p : gfm.base_map) lhs.base_map.push_back(iso_y.base_map[p]);
    for (int e : gfm.total_map) lhs.total_map.push_back(iso_y.total_map[e]);
    for (int p : iso_x.base_map) rhs.base_map.push_back(m.base_map[p]);
    for (int e : iso_x.total_map) rhs.total_map.push_back(m.total_map[e]);
    if (lhs.base_map != rhs.base_map || lhs.total_map != rhs.total_map) {
      report.detail = "naturality square of the round-trip isomorphism fails";
      return report;
    }
    ++report.naturality_squares;
  }

  report.verified = true;
  return report;
}

CategoryPtr pointed_set_skeleton(int max_size) {
  // objects P1..Pn; morphisms are maps [m] -> [n] fixing element 0
  std::vector<std::string> objs;
  for (int n = 1; n <= max_size; ++n) objs.push_back("P" + std::to_string(n));

  struct Map {
    int from, to;  // sizes
    std::vector<int> images;
  };
  std::vector<Map> maps;
  std::vector<std::string> names;
  std::vector<int> src, tgt;
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;

  for (int m = 1; m <= max_size; ++m)
    for (int n = 1; n <= max_size; ++n) {
      std::vector<int> images(m, 0);
      while (true) {
        if (images[0] == 0) {
          std::string name = "P" + std::to_string(m) + ">P" + std::to_string(n) + ":";
          for (int v : images) name += std::to_string(v);
          index[{{m, n}, images}] = static_cast<int>(maps.size());
          maps.push_back({m, n, images});
          names.push_back(std::move(name));
          src.push_back(m - 1);
          tgt.push_back(n - 1);
        }
        int pos = 0;
        while (pos < m) {
          if (++images[pos] < n) break;
          images[pos] = 0;
          ++pos;
        }
        if (pos == m) break;
      }
    }

  std::vector<int> identity(max_size);
  for (int n = 1; n <= max_size; ++n) {
    std::vector<int> id_images(n);
    for (int i = 0; i < n; ++i) id_images[i] = i;
    identity[n - 1] = index.at({{n, n}, id_images});
  }

  return make_category(
      "PtSet", std::move(objs), std::move(names), std::move(src), std::move(tgt),
      std::move(identity), [&maps, &index](int g, int f) {
        const Map& mf = maps[f];
        const Map& mg = maps[g];
        std::vector<int> images(mf.from);
        for (int i = 0; i < mf.from; ++i) images[i] = mg.images[mf.images[i]];
        return index.at({{mf.from, mg.to}, images});
      });
}

FamObject encode_family(const PointedSetFamily& fam, const CategoryPtr& skeleton) {
  FamObject out;
  out.shape = discrete_groupoid(fam.indices);
  out.target = skeleton;
  out.arrow.src = out.shape->cat_ptr();
  out.arrow.tgt = skeleton;
  for (size_t i = 0; i < fam.indices.size(); ++i) {
    const int size = static_cast<int>(fam.carriers[i].size());
    const int obj = skeleton->object_index("P" + std::to_string(size));
    if (obj < 0) throw Error("encode_family: carrier larger than the skeleton bound");
    out.arrow.obj.push_back(obj);
    out.arrow.mor.push_back(skeleton->identity_at(obj));
  }
  return out;
}

Pi0CorollaryReport pi0_corollary_check(const RetractionDiagram& x) {
  Pi0CorollaryReport report;
  report.base_size = static_cast<int>(x.base.size());

  const PointedSetFamily fam = functor_F(x);
  int bound = 1;
  for (const auto& carrier : fam.carriers)
    bound = std::max(bound, static_cast<int>(carrier.size()));
  const CategoryPtr skeleton = pointed_set_skeleton(bound);
  const FamObject encoded = encode_family(fam, skeleton);

  const DecompositionCertificate cert = decompose_connected(encoded);
  report.component_count = static_cast<int>(cert.components.size());
  report.verified = report.component_count == report.base_size &&
                    static_cast<int>(fam.indices.size()) == report.base_size;
  return report;
}

}  // namespace famcat
