#include "famcat/site.hpp"

#include <algorithm>

namespace famcat {

ValidationReport check_covering_family_data(const CoveringFamily& c) {
  ValidationReport report = validate_fam(c.codomain);
  for (size_t i = 0; i < c.members.size(); ++i) {
    if (!fam_object_equal(c.members[i].tgt, c.codomain)) {
      report.add("structure.codomain-mismatch",
                 "member " + std::to_string(i) + " does not land in the codomain");
      continue;
    }
    report.merge(validate_fam_morphism(c.members[i]));
  }
  return report;
}

CoverVerdict is_covering_family(const CoveringFamily& c) {
  std::vector<FamObject> sources;
  for (const FamMorphism& m : c.members) sources.push_back(m.src);
  FamCoproduct coprod = fam_coproduct(c.codomain.target, sources);

  // Copaired shape map ∐ X_i -> X.
  Functor copair;
  copair.src = coprod.obj.shape->cat_ptr();
  copair.tgt = c.codomain.shape->cat_ptr();
  for (const auto& [p, o] : coprod.obj_origin) copair.obj.push_back(c.members[p].phi.obj[o]);
  for (const auto& [p, m] : coprod.mor_origin) copair.mor.push_back(c.members[p].phi.mor[m]);

  CoverVerdict verdict;
  verdict.epi = is_effective_epi(copair);
  verdict.covering = verdict.epi.verdict;
  return verdict;
}

CoveringFamily pullback_cover(const CoveringFamily& c, const FamMorphism& along,
                              Budget& budget) {
  if (!fam_object_equal(along.tgt, c.codomain))
    throw Error("pullback_cover: the morphism does not land in the cover's codomain");
  if (!is_covering_family(c).covering)
    throw Error("pullback_cover: the input family is not a cover");

  CoveringFamily out;
  out.codomain = along.src;
  for (const FamMorphism& member : c.members) {
    FamLimit pb = fam_pullback(member, along, budget);
    out.members.push_back(pb.projections[1]);  // to (X', F')
  }
  return out;
}

FamObject random_fam_object(Rng& rng, const CategoryPtr& target, int max_components,
                            int max_objects_per_component) {
  FamObject out;
  out.shape = random_groupoid(rng, max_components, max_objects_per_component);
  out.target = target;
  out.arrow.src = out.shape->cat_ptr();
  out.arrow.tgt = target;
  out.arrow.obj.assign(out.shape->num_objects(), -1);
  out.arrow.mor.assign(out.shape->num_morphisms(), -1);

  // Constant per component, which is a functor over any target.
  const Pi0 blocks = pi0(out.shape->cat());
  for (int b = 0; b < blocks.count(); ++b) {
    const int c = rng.uniform(target->num_objects());
    for (int o : blocks.blocks[b]) out.arrow.obj[o] = c;
  }
  for (int m = 0; m < out.shape->num_morphisms(); ++m)
    out.arrow.mor[m] = target->identity_at(out.arrow.obj[out.shape->cat().src(m)]);
  return out;
}

FamMorphism random_fam_morphism_into(Rng& rng, const FamObject& f, int max_components,
                                     int max_objects_per_component) {
  FamMorphism out;
  out.tgt = f;
  GroupoidPtr shape = random_groupoid(rng, max_components, max_objects_per_component);
  out.phi = random_functor(rng, shape, f.shape);

  out.src.shape = shape;
  out.src.target = f.target;
  out.src.arrow = compose_functors(f.arrow, out.phi);
  for (int x = 0; x < shape->num_objects(); ++x)
    out.comps.push_back(f.target->identity_at(out.src.arrow.obj[x]));
  return out;
}

namespace {

// Independent connected-components pass (iterative label propagation), kept
// separate from pi0's traversal so the site-morphism check has its own route.
std::vector<int> label_propagation_blocks(const FiniteCategory& c) {
  std::vector<int> label(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) label[o] = o;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < c.num_morphisms(); ++m) {
      const int lo = std::min(label[c.src(m)], label[c.tgt(m)]);
      if (label[c.src(m)] != lo || label[c.tgt(m)] != lo) {
        label[c.src(m)] = label[c.tgt(m)] = lo;
        changed = true;
      }
    }
  }
  return label;
}

// π₀-surjectivity of the copaired shape map, recomputed from scratch.
bool jointly_surjective_on_components(const CoveringFamily& c) {
  const FiniteCategory& base = c.codomain.shape->cat();
  std::vector<int> label = label_propagation_blocks(base);
  std::vector<bool> hit(base.num_objects(), false);
  for (const FamMorphism& m : c.members)
    for (int img : m.phi.obj) hit[label[img]] = true;
  for (int o = 0; o < base.num_objects(); ++o)
    if (!hit[label[o]]) return false;
  return true;
}

CoveringFamily decomposition_cover(const FamObject& f) {
  DecompositionCertificate cert = decompose_connected(f);
  CoveringFamily cover;
  cover.codomain = f;
  cover.members = cert.inclusions;
  return cover;
}

}  // namespace

AxiomSuiteReport pretopology_axiom_suite(const CategoryPtr& target, std::uint64_t seed,
                                         int samples, Budget& budget) {
  AxiomSuiteReport report;
  Rng rng(seed);

  try {
    for (int s = 0; s < samples; ++s) {
      Rng sample_rng = rng.fork(static_cast<std::uint64_t>(s) + 1);
      ++report.samples;

      FamObject base = random_fam_object(sample_rng, target, 3, 2);

      // Axiom: a singleton equivalence covers. The blow-up projection is an
      // equivalence by construction; the functor is verified to be one.
      {
        std::vector<int> copies(base.shape->num_objects());
        for (int& k : copies) k = 1 + sample_rng.uniform(2);
        Blowup blow = blowup_groupoid(base.shape, copies);

        FamMorphism proj;
        proj.tgt = base;
        proj.src.shape = blow.total;
        proj.src.target = target;
        proj.src.arrow = compose_functors(base.arrow, blow.projection);
        proj.phi = blow.projection;
        for (int x = 0; x < blow.total->num_objects(); ++x)
          proj.comps.push_back(target->identity_at(proj.src.arrow.obj[x]));

        const bool genuinely_equivalence =
            is_equivalence_functor(*blow.total, *base.shape, blow.projection);
        const bool covers = is_covering_family({base, {proj}}).covering;
        (genuinely_equivalence && covers ? report.equivalence_pass
                                         : report.equivalence_fail)++;
      }

      // Base cover: the connected-decomposition inclusions plus optional noise.
      CoveringFamily cover = decomposition_cover(base);
      if (sample_rng.coin())
        cover.members.push_back(
            random_fam_morphism_into(sample_rng, base, 2, 2));
      if (!is_covering_family(cover).covering) {
        ++report.composition_fail;
        continue;
      }

      // Axiom: pullback stability.
      {
        FamMorphism probe = random_fam_morphism_into(sample_rng, base, 2, 2);
        CoveringFamily pulled = pullback_cover(cover, probe, budget);
        (is_covering_family(pulled).covering ? report.pullback_pass
                                             : report.pullback_fail)++;
      }

      // Axiom: composition stability. Cover every member by its own
      // decomposition and compose.
      {
        CoveringFamily composite;
        composite.codomain = base;
        for (const FamMorphism& member : cover.members) {
          CoveringFamily inner = decomposition_cover(member.src);
          for (const FamMorphism& inner_member : inner.members)
            composite.members.push_back(compose_fam(member, inner_member));
        }
        (is_covering_family(composite).covering ? report.composition_pass
                                                : report.composition_fail)++;
      }

      // Refinement monotonicity: a superfamily of a cover still covers.
      {
        CoveringFamily wider = cover;
        wider.members.push_back(random_fam_morphism_into(sample_rng, base, 2, 2));
        (is_covering_family(wider).covering ? report.refinement_pass
                                            : report.refinement_fail)++;
      }

      // Site morphism: the shape projection of a cover is a cover of
      // groupoids, recomputed by an independent connectivity route.
      {
        const bool shape_cover = jointly_surjective_on_components(cover);
        (shape_cover ? report.site_morphism_pass : report.site_morphism_fail)++;
      }

      // Over the terminal category, the cover predicate coincides with
      // π₀-surjectivity on every sample, including refuted ones.
      {
        static const CategoryPtr star = make_category(
            "star", std::vector<std::string>{"*"}, std::vector<std::string>{"id_*"},
            std::vector<int>{0}, std::vector<int>{0}, std::vector<int>{0},
            [](int, int) { return 0; });
        FamObject star_base = random_fam_object(sample_rng, star, 3, 2);
        CoveringFamily star_cover;
        star_cover.codomain = star_base;
        const int nmembers = sample_rng.uniform(3);
        for (int i = 0; i < nmembers; ++i)
          star_cover.members.push_back(
              random_fam_morphism_into(sample_rng, star_base, 2, 2));
        const bool lhs = is_covering_family(star_cover).covering;
        const bool rhs = jointly_surjective_on_components(star_cover);
        (lhs == rhs ? report.fam_star_pass : report.fam_star_fail)++;
      }
    }
  } catch (const BudgetExceeded&) {
    report.indeterminate = true;
    report.detail = "budget exceeded after " + std::to_string(report.samples) + " samples";
  }
  return report;
}

}  // namespace famcat
