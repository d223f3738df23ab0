#include "fibcalc/grothendieck.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <tuple>
#include <vector>

#include "fibcalc/errors.hpp"

namespace fibcalc {

namespace {

std::string key_text(const PseudoFunctor::CompKey& k) {
  return "('" + k.first + "', '" + k.second + "')";
}

// Every component of t must be an identity of the codomain of its source
// functor; `what` names the coherence equation being checked.
void require_identity_components(const NatTransf& t, const std::string& what) {
  const CatPtr& in = t.source().cod();
  for (const auto& [x, c] : t.components())
    if (!in->is_identity(c))
      throw NonFunctorial(what + " fails at '" + x + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// PseudoFunctor

const CatPtr& PseudoFunctor::fibre(const std::string& a) const {
  auto it = fibres_.find(a);
  if (it == fibres_.end()) throw UnknownObject("no fibre over '" + a + "'");
  return it->second;
}

const FinFunctor& PseudoFunctor::transport(const std::string& f) const {
  auto it = transport_.find(f);
  if (it == transport_.end())
    throw UnknownMorphism("no transport along '" + f + "'");
  return it->second;
}

const NatTransf& PseudoFunctor::unit_iso(const std::string& a) const {
  auto it = unit_isos_.find(a);
  if (it == unit_isos_.end())
    throw UnknownObject("no unit witness at '" + a + "'");
  return it->second;
}

const NatTransf& PseudoFunctor::comp_iso(const std::string& g,
                                         const std::string& f) const {
  auto it = comp_isos_.find({g, f});
  if (it == comp_isos_.end())
    throw UnknownMorphism("no composition witness for ('" + g + "', '" + f +
                          "')");
  return it->second;
}

const FinFunctor& PseudoFunctor::over(const std::string& a) const {
  if (!over_base_)
    throw BadInput("pseudofunctor carries no structure over a second base");
  auto it = over_.find(a);
  if (it == over_.end())
    throw UnknownObject("no structure functor over '" + a + "'");
  return it->second;
}

PseudoFunctor PseudoFunctor::make(CatPtr base, Variance variance,
                                  std::map<std::string, CatPtr> fibres,
                                  std::map<std::string, FinFunctor> transport,
                                  std::map<std::string, NatTransf> unit_isos,
                                  std::map<CompKey, NatTransf> comp_isos) {
  return make_over(std::move(base), variance, std::move(fibres),
                   std::move(transport), std::move(unit_isos),
                   std::move(comp_isos), nullptr, {}, Side::A);
}

PseudoFunctor PseudoFunctor::make_over(
    CatPtr base, Variance variance, std::map<std::string, CatPtr> fibres,
    std::map<std::string, FinFunctor> transport,
    std::map<std::string, NatTransf> unit_isos,
    std::map<CompKey, NatTransf> comp_isos, CatPtr over_base,
    std::map<std::string, FinFunctor> over, Side side) {
  if (!base) throw BadInput("pseudofunctor requires a base category");
  if (!over_base && !over.empty())
    throw BadInput("structure functors require a second base");
  const bool cov = variance == Variance::covariant;

  for (const std::string& a : base->objects()) {
    auto it = fibres.find(a);
    if (it == fibres.end() || !it->second)
      throw NonFunctorial("missing fibre over '" + a + "'");
  }
  if (fibres.size() != base->object_count())
    throw NonFunctorial("fibre assigned outside the base");

  for (const Mor& f : base->morphisms()) {
    auto it = transport.find(f.id);
    if (it == transport.end())
      throw NonFunctorial("missing transport along '" + f.id + "'");
    const std::string& from = cov ? f.src : f.tgt;
    const std::string& to = cov ? f.tgt : f.src;
    if (!it->second.dom()->same_presentation(*fibres.at(from)) ||
        !it->second.cod()->same_presentation(*fibres.at(to)))
      throw NonFunctorial("transport along '" + f.id +
                          "' has the wrong endpoints");
  }
  if (transport.size() != base->morphism_count())
    throw NonFunctorial("transport assigned outside the base");

  for (const std::string& a : base->objects()) {
    auto it = unit_isos.find(a);
    if (it == unit_isos.end())
      throw NonFunctorial("missing unit witness at '" + a + "'");
    const NatTransf& eta = it->second;
    if (!eta.source().same_tables(transport.at(base->identity(a))))
      throw NonFunctorial("unit witness at '" + a +
                          "' does not start at the identity transport");
    if (!eta.target().same_tables(identity_functor(fibres.at(a))))
      throw NonFunctorial("unit witness at '" + a +
                          "' does not end at the identity functor");
    if (!eta.is_iso())
      throw NonFunctorial("unit witness at '" + a + "' is not invertible");
  }
  if (unit_isos.size() != base->object_count())
    throw NonFunctorial("unit witness outside the base");

  std::set<PseudoFunctor::CompKey> pairs;
  for (const Mor& g : base->morphisms())
    for (const Mor& f : base->morphisms())
      if (g.src == f.tgt) pairs.insert({g.id, f.id});
  for (const PseudoFunctor::CompKey& k : pairs) {
    auto it = comp_isos.find(k);
    if (it == comp_isos.end())
      throw NonFunctorial("missing composition witness for " + key_text(k));
    const NatTransf& mu = it->second;
    const std::string& gf = base->compose(k.first, k.second);
    if (!mu.source().same_tables(transport.at(gf)))
      throw NonFunctorial("composition witness for " + key_text(k) +
                          " does not start at the composite transport");
    FinFunctor expect =
        cov ? compose(transport.at(k.first), transport.at(k.second))
            : compose(transport.at(k.second), transport.at(k.first));
    if (!mu.target().same_tables(expect))
      throw NonFunctorial("composition witness for " + key_text(k) +
                          " does not end at the transports composite");
    if (!mu.is_iso())
      throw NonFunctorial("composition witness for " + key_text(k) +
                          " is not invertible");
  }
  if (comp_isos.size() != pairs.size())
    throw NonFunctorial("composition witness for a non-composable pair");

  for (const Mor& f : base->morphisms()) {
    const FinFunctor& tf = transport.at(f.id);
    const NatTransf& eta_src = unit_isos.at(f.src);
    const NatTransf& eta_tgt = unit_isos.at(f.tgt);
    const NatTransf& pre = comp_isos.at({f.id, base->identity(f.src)});
    const NatTransf& post = comp_isos.at({base->identity(f.tgt), f.id});
    NatTransf t1 = cov ? vertical_compose(whisker_left(tf, eta_src), pre)
                       : vertical_compose(whisker_right(eta_src, tf), pre);
    NatTransf t2 = cov ? vertical_compose(whisker_right(eta_tgt, tf), post)
                       : vertical_compose(whisker_left(tf, eta_tgt), post);
    require_identity_components(
        t1, "unit triangle for '" + f.id + "' at its source");
    require_identity_components(
        t2, "unit triangle for '" + f.id + "' at its target");
  }

  for (const Mor& h : base->morphisms())
    for (const Mor& g : base->morphisms()) {
      if (h.src != g.tgt) continue;
      for (const Mor& f : base->morphisms()) {
        if (g.src != f.tgt) continue;
        const std::string& hg = base->compose(h.id, g.id);
        const std::string& gf = base->compose(g.id, f.id);
        NatTransf one =
            cov ? vertical_compose(
                      whisker_left(transport.at(h.id), comp_isos.at({g.id, f.id})),
                      comp_isos.at({h.id, gf}))
                : vertical_compose(
                      whisker_left(transport.at(f.id), comp_isos.at({h.id, g.id})),
                      comp_isos.at({hg, f.id}));
        NatTransf two =
            cov ? vertical_compose(
                      whisker_right(comp_isos.at({h.id, g.id}), transport.at(f.id)),
                      comp_isos.at({hg, f.id}))
                : vertical_compose(
                      whisker_right(comp_isos.at({g.id, f.id}), transport.at(h.id)),
                      comp_isos.at({h.id, gf}));
        if (one.components() != two.components())
          throw NonFunctorial("associativity pentagon fails on ('" + h.id +
                              "', '" + g.id + "', '" + f.id + "')");
      }
    }

  if (over_base) {
    for (const std::string& a : base->objects()) {
      auto it = over.find(a);
      if (it == over.end())
        throw NonFunctorial("missing structure functor over '" + a + "'");
      if (!it->second.dom()->same_presentation(*fibres.at(a)) ||
          !it->second.cod()->same_presentation(*over_base))
        throw NonFunctorial("structure functor over '" + a +
                            "' has the wrong endpoints");
    }
    if (over.size() != base->object_count())
      throw NonFunctorial("structure functor outside the base");
    for (const Mor& f : base->morphisms()) {
      const std::string& from = cov ? f.src : f.tgt;
      const std::string& to = cov ? f.tgt : f.src;
      if (!compose(over.at(to), transport.at(f.id)).same_tables(over.at(from)))
        throw NonFunctorial("transport along '" + f.id +
                            "' does not commute with the structure functors");
    }
    auto vertical = [&](const NatTransf& t, const std::string& at,
                        const std::string& what) {
      const FinFunctor& ov = over.at(at);
      for (const auto& [x, c] : t.components())
        if (!over_base->is_identity(ov.on_mor(c)))
          throw NonFunctorial(what + " is not vertical at '" + x + "'");
    };
    for (const std::string& a : base->objects())
      vertical(unit_isos.at(a), a, "unit witness at '" + a + "'");
    for (const PseudoFunctor::CompKey& k : pairs)
      vertical(comp_isos.at(k),
               cov ? base->tgt(k.first) : base->src(k.second),
               "composition witness for " + key_text(k));
  }

  PseudoFunctor out;
  out.base_ = std::move(base);
  out.variance_ = variance;
  out.side_ = side;
  out.fibres_ = std::move(fibres);
  out.transport_ = std::move(transport);
  out.unit_isos_ = std::move(unit_isos);
  out.comp_isos_ = std::move(comp_isos);
  out.over_base_ = std::move(over_base);
  out.over_ = std::move(over);
  return out;
}

// ---------------------------------------------------------------------------
// Straightening

namespace {

PseudoFunctor straighten_impl(const TwoVarFib& p, Variance variance, Side side,
                              bool with_over) {
  const CatPtr& base = side == Side::A ? p.base_a() : p.base_b();
  const CatPtr& total = p.total();
  const FinFunctor& proj = p.proj();
  const bool cov = variance == Variance::covariant;

  // The product arrow lifted for gamma, anchored at the total object x; the
  // unnamed coordinate stays the identity.
  auto travel_pair = [&](const std::string& gamma, const std::string& x) {
    if (side == Side::A)
      return pair_id(gamma, p.base_b()->identity(p.p2().on_obj(x)));
    return pair_id(p.base_a()->identity(p.p1().on_obj(x)), gamma);
  };
  // The vertical product arrow over the named-base object a matching the
  // fibre morphism u.
  auto vertical_pair = [&](const std::string& a, const std::string& u) {
    if (side == Side::A)
      return pair_id(p.base_a()->identity(a), p.p2().on_mor(u));
    return pair_id(p.p1().on_mor(u), p.base_b()->identity(a));
  };

  std::map<std::string, CatPtr> fibres;
  std::map<std::string, FinFunctor> over;
  for (const std::string& a : base->objects()) {
    FinFunctor f = side == Side::A ? p.fibre_over_a(a) : p.fibre_over_b(a);
    fibres.emplace(a, f.dom());
    over.emplace(a, std::move(f));
  }

  std::map<std::string, std::map<std::string, std::string>> lifts;
  std::map<std::string, FinFunctor> transport;
  for (const Mor& g : base->morphisms()) {
    const std::string& from = cov ? g.src : g.tgt;
    const std::string& to = cov ? g.tgt : g.src;
    const CatPtr& fs = fibres.at(from);
    const CatPtr& ft = fibres.at(to);
    std::map<std::string, std::string>& lift = lifts[g.id];
    std::map<std::string, std::string> om, mm;
    for (const std::string& x : fs->objects()) {
      const std::string pair = travel_pair(g.id, x);
      std::optional<std::string> e = cov
                                         ? find_cocartesian_lift(proj, x, pair)
                                         : find_cartesian_lift(proj, x, pair);
      if (!e)
        throw NotAFibration(std::string("no ") +
                            (cov ? "cocartesian" : "cartesian") +
                            " lift of '" + pair + "' at '" + x + "'");
      lift.emplace(x, *e);
      om.emplace(x, cov ? total->tgt(*e) : total->src(*e));
    }
    for (const Mor& u : fs->morphisms()) {
      // The factorisation of the square of lifts over the vertical arrow
      // exists and is unique because the chosen lifts are global.
      const std::string vp = vertical_pair(to, u.id);
      const std::string rhs = cov ? total->compose(lift.at(u.tgt), u.id)
                                  : total->compose(u.id, lift.at(u.src));
      std::vector<std::string> hits;
      for (const std::string& m : total->hom(om.at(u.src), om.at(u.tgt)))
        if (proj.on_mor(m) == vp &&
            (cov ? total->compose(m, lift.at(u.src)) == rhs
                 : total->compose(lift.at(u.tgt), m) == rhs))
          hits.push_back(m);
      if (hits.empty())
        throw NoLift("no transported image for '" + u.id + "' along '" +
                     g.id + "'");
      if (hits.size() > 1)
        throw NonUniqueFactorisation("transported image for '" + u.id +
                                     "' along '" + g.id + "' is not unique");
      mm.emplace(u.id, hits.front());
    }
    transport.emplace(g.id, FinFunctor::make(fs, ft, std::move(om),
                                             std::move(mm)));
  }

  // Identity base arrows lift to identities, so the identity transports are
  // strict and the unit witnesses are identities.
  std::map<std::string, NatTransf> unit_isos;
  for (const std::string& a : base->objects()) {
    const CatPtr& f = fibres.at(a);
    std::map<std::string, std::string> comps;
    for (const std::string& x : f->objects()) comps.emplace(x, f->identity(x));
    unit_isos.emplace(a, NatTransf::make(transport.at(base->identity(a)),
                                         identity_functor(f),
                                         std::move(comps)));
  }

  std::map<PseudoFunctor::CompKey, NatTransf> comp_isos;
  for (const Mor& g : base->morphisms())
    for (const Mor& f : base->morphisms()) {
      if (g.src != f.tgt) continue;
      const std::string& gf = base->compose(g.id, f.id);
      const FinFunctor& tg = transport.at(g.id);
      const FinFunctor& tf = transport.at(f.id);
      FinFunctor source = transport.at(gf);
      FinFunctor target = cov ? compose(tg, tf) : compose(tf, tg);
      std::map<std::string, std::string> comps;
      for (const std::string& x : source.dom()->objects()) {
        // Compare the chosen lift of the composite with the composite of
        // chosen lifts; the filler is vertical and unique.
        std::string direct, routed;
        if (cov) {
          direct = lifts.at(gf).at(x);
          routed = total->compose(lifts.at(g.id).at(tf.on_obj(x)),
                                  lifts.at(f.id).at(x));
        } else {
          direct = lifts.at(gf).at(x);
          routed = total->compose(lifts.at(g.id).at(x),
                                  lifts.at(f.id).at(tg.on_obj(x)));
        }
        std::vector<std::string> hits;
        for (const std::string& m :
             total->hom(source.on_obj(x), target.on_obj(x)))
          if (p.base_product()->is_identity(proj.on_mor(m)) &&
              (cov ? total->compose(m, direct) == routed
                   : total->compose(routed, m) == direct))
            hits.push_back(m);
        if (hits.size() != 1)
          throw NonUniqueFactorisation(
              "comparison of lifts over ('" + g.id + "', '" + f.id +
              "') at '" + x + "' is not unique");
        comps.emplace(x, hits.front());
      }
      comp_isos.emplace(PseudoFunctor::CompKey{g.id, f.id},
                        NatTransf::make(std::move(source), std::move(target),
                                        std::move(comps)));
    }

  if (!with_over)
    return PseudoFunctor::make(base, variance, std::move(fibres),
                               std::move(transport), std::move(unit_isos),
                               std::move(comp_isos));
  const CatPtr& other = side == Side::A ? p.base_b() : p.base_a();
  return PseudoFunctor::make_over(base, variance, std::move(fibres),
                                  std::move(transport), std::move(unit_isos),
                                  std::move(comp_isos), other, std::move(over),
                                  side);
}

}  // namespace

PseudoFunctor straighten(const FinFunctor& p, Variance variance) {
  return straighten_impl(one_variable(p.dom(), p.cod(), p), variance, Side::A,
                         false);
}

PseudoFunctor straighten(const TwoVarFib& p, Variance variance, Side side) {
  return straighten_impl(p, variance, side, true);
}

// ---------------------------------------------------------------------------
// Flip

PseudoFunctor flip(const PseudoFunctor& f) {
  const CatPtr& base = f.base();
  std::map<std::string, CatPtr> fibres;
  std::map<std::string, FinFunctor> transport;
  std::map<std::string, NatTransf> units;
  std::map<std::string, FinFunctor> over;
  for (const std::string& a : base->objects()) {
    fibres.emplace(a, f.fibre(a));
    units.emplace(a, f.unit_iso(a));
    if (f.has_over()) over.emplace(a, f.over(a));
  }
  for (const Mor& m : base->morphisms())
    transport.emplace(m.id, f.transport(m.id));
  std::map<PseudoFunctor::CompKey, NatTransf> comps;
  for (const Mor& g : base->morphisms())
    for (const Mor& h : base->morphisms())
      if (g.src == h.tgt)
        comps.emplace(PseudoFunctor::CompKey{h.id, g.id},
                      f.comp_iso(g.id, h.id));
  CatPtr flipped_base = opposite(base);
  Variance flipped = f.variance() == Variance::covariant
                         ? Variance::contravariant
                         : Variance::covariant;
  if (!f.has_over())
    return PseudoFunctor::make(std::move(flipped_base), flipped,
                               std::move(fibres), std::move(transport),
                               std::move(units), std::move(comps));
  return PseudoFunctor::make_over(std::move(flipped_base), flipped,
                                  std::move(fibres), std::move(transport),
                                  std::move(units), std::move(comps),
                                  f.over_base(), std::move(over), f.side());
}

// ---------------------------------------------------------------------------
// Unstraightening

TwoVarFib unstraighten(const PseudoFunctor& f0, Variance variance) {
  const PseudoFunctor f = variance == f0.variance() ? f0 : flip(f0);
  const CatPtr& base = f.base();
  const bool cov = variance == Variance::covariant;

  struct GObj {
    std::string a, x;
  };
  struct GMor {
    std::string a0, x0, a1, x1, g, u;
  };
  std::vector<GObj> objs;
  for (const std::string& a : base->objects())
    for (const std::string& x : f.fibre(a)->objects()) objs.push_back({a, x});
  std::vector<GMor> mors;
  for (const Mor& g : base->morphisms()) {
    const FinFunctor& t = f.transport(g.id);
    if (cov) {
      for (const std::string& x : f.fibre(g.src)->objects()) {
        const std::string& tx = t.on_obj(x);
        for (const Mor& u : f.fibre(g.tgt)->morphisms())
          if (u.src == tx) mors.push_back({g.src, x, g.tgt, u.tgt, g.id, u.id});
      }
    } else {
      for (const std::string& x : f.fibre(g.tgt)->objects()) {
        const std::string& tx = t.on_obj(x);
        for (const Mor& u : f.fibre(g.src)->morphisms())
          if (u.tgt == tx) mors.push_back({g.src, u.src, g.tgt, x, g.id, u.id});
      }
    }
  }

  auto distinct = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  std::vector<std::string> fibre_objects, fibre_morphisms;
  for (const GObj& o : objs) fibre_objects.push_back(o.x);
  for (const std::string& a : base->objects())
    for (const Mor& u : f.fibre(a)->morphisms())
      fibre_morphisms.push_back(u.id);
  bool strict_units = true;
  for (const std::string& a : base->objects()) {
    if (!f.transport(base->identity(a))
             .same_tables(identity_functor(f.fibre(a)))) {
      strict_units = false;
      break;
    }
    for (const auto& [x, c] : f.unit_iso(a).components())
      if (!f.fibre(a)->is_identity(c)) {
        strict_units = false;
        break;
      }
    if (!strict_units) break;
  }
  const bool bare_objects = distinct(fibre_objects);
  const bool bare_verticals =
      bare_objects && strict_units && distinct(fibre_morphisms);

  // Bare names are kept only when unambiguous; pair labels shared by two
  // arrows gain the undetermined endpoint as a prefix.
  std::map<std::string, std::string> obj_name;
  std::vector<std::string> mor_name;
  auto try_names = [&](bool bo, bool bm) {
    obj_name.clear();
    mor_name.assign(mors.size(), "");
    for (const GObj& o : objs)
      obj_name.emplace(pair_id(o.a, o.x), bo ? o.x : pair_id(o.a, o.x));
    std::vector<std::string> primary(mors.size());
    std::map<std::string, int> uses;
    for (std::size_t i = 0; i < mors.size(); ++i) {
      const GMor& m = mors[i];
      primary[i] =
          bm && base->is_identity(m.g) ? m.u : pair_id(m.g, m.u);
      ++uses[primary[i]];
    }
    for (std::size_t i = 0; i < mors.size(); ++i) {
      const GMor& m = mors[i];
      if (uses.at(primary[i]) == 1) {
        mor_name[i] = primary[i];
      } else {
        const std::string& anchor = cov ? obj_name.at(pair_id(m.a0, m.x0))
                                        : obj_name.at(pair_id(m.a1, m.x1));
        mor_name[i] = pair_id(anchor, pair_id(m.g, m.u));
      }
    }
    std::vector<std::string> everything;
    for (const auto& [key, name] : obj_name) everything.push_back(name);
    for (const std::string& name : mor_name) everything.push_back(name);
    return distinct(std::move(everything));
  };
  if (!try_names(bare_objects, bare_verticals) && !try_names(false, false))
    throw MalformedCategory(
        "could not derive distinct identifiers for the reconstructed total");

  std::map<std::tuple<std::string, std::string, std::string, std::string>,
           std::size_t>
      index;
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const GMor& m = mors[i];
    index.emplace(std::make_tuple(m.x0, m.x1, m.g, m.u), i);
  }
  auto record_name = [&](const std::string& x0, const std::string& x1,
                         const std::string& g, const std::string& u)
      -> const std::string& {
    auto it = index.find(std::make_tuple(x0, x1, g, u));
    if (it == index.end())
      throw MalformedCategory("composite ('" + g + "', '" + u +
                              "') escapes the morphism records");
    return mor_name[it->second];
  };

  std::vector<std::string> total_objects;
  for (const GObj& o : objs)
    total_objects.push_back(obj_name.at(pair_id(o.a, o.x)));
  std::sort(total_objects.begin(), total_objects.end());
  std::vector<Mor> total_morphisms;
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const GMor& m = mors[i];
    total_morphisms.push_back({mor_name[i], obj_name.at(pair_id(m.a0, m.x0)),
                               obj_name.at(pair_id(m.a1, m.x1))});
  }

  std::map<std::string, std::string> identities;
  for (const GObj& o : objs) {
    const std::string& eta = f.unit_iso(o.a).at(o.x);
    const std::string unit = cov ? eta : f.fibre(o.a)->inverse(eta);
    identities.emplace(obj_name.at(pair_id(o.a, o.x)),
                       record_name(o.x, o.x, base->identity(o.a), unit));
  }

  std::map<std::pair<std::string, std::string>, std::string> composition;
  for (std::size_t j = 0; j < mors.size(); ++j)
    for (std::size_t i = 0; i < mors.size(); ++i) {
      const GMor& m2 = mors[j];
      const GMor& m1 = mors[i];
      if (m1.a1 != m2.a0 || m1.x1 != m2.x0) continue;
      const std::string& g = base->compose(m2.g, m1.g);
      std::string u;
      if (cov) {
        const CatPtr& fc = f.fibre(m2.a1);
        u = fc->compose(m2.u,
                        fc->compose(f.transport(m2.g).on_mor(m1.u),
                                    f.comp_iso(m2.g, m1.g).at(m1.x0)));
      } else {
        const CatPtr& fc = f.fibre(m1.a0);
        u = fc->compose(fc->inverse(f.comp_iso(m2.g, m1.g).at(m2.x1)),
                        fc->compose(f.transport(m1.g).on_mor(m2.u), m1.u));
      }
      composition.emplace(std::make_pair(mor_name[j], mor_name[i]),
                          record_name(m1.x0, m2.x1, g, u));
    }

  CatPtr total = FinCat::validate(std::move(total_objects),
                                  std::move(total_morphisms),
                                  std::move(identities),
                                  std::move(composition));

  CatPtr other = f.has_over() ? f.over_base() : terminal();
  std::map<std::string, std::string> named_obj, named_mor, other_obj,
      other_mor;
  for (const GObj& o : objs) {
    const std::string& n = obj_name.at(pair_id(o.a, o.x));
    named_obj.emplace(n, o.a);
    other_obj.emplace(n, f.has_over() ? f.over(o.a).on_obj(o.x)
                                      : other->objects().front());
  }
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const GMor& m = mors[i];
    named_mor.emplace(mor_name[i], m.g);
    if (f.has_over())
      other_mor.emplace(mor_name[i], cov ? f.over(m.a1).on_mor(m.u)
                                         : f.over(m.a0).on_mor(m.u));
    else
      other_mor.emplace(mor_name[i],
                        other->identity(other->objects().front()));
  }
  FinFunctor named_leg =
      FinFunctor::make(total, base, std::move(named_obj), std::move(named_mor));
  FinFunctor other_leg = FinFunctor::make(total, other, std::move(other_obj),
                                          std::move(other_mor));
  if (f.side() == Side::A)
    return TwoVarFib::make(total, base, other, std::move(named_leg),
                           std::move(other_leg));
  return TwoVarFib::make(total, other, base, std::move(other_leg),
                         std::move(named_leg));
}

// ---------------------------------------------------------------------------
// Dualisation

TwoVarFib dualize(const TwoVarFib& p, Side side, DualDirection direction) {
  FibTaxonomy t = classify(p);
  auto require = [&](bool flag, const std::string& name) {
    if (flag) return;
    std::string msg = "dualisation needs a " + name + " input";
    auto it = t.witnesses.find(name);
    if (it != t.witnesses.end() && !it->second.empty())
      msg += ": " + it->second.front();
    throw NotAFibration(msg);
  };
  Variance variance;
  if (side == Side::A && direction == DualDirection::ct) {
    require(t.gray, "gray");
    variance = Variance::covariant;
  } else if (side == Side::A) {
    require(t.curved_ortho, "curved_ortho");
    variance = Variance::contravariant;
  } else if (direction == DualDirection::ct) {
    require(t.curved_ortho, "curved_ortho");
    variance = Variance::covariant;
  } else {
    // An op-Gray input only guarantees cartesian lifts inside its right
    // part; the reconstruction consumes lifts cartesian in the whole total.
    require(t.op_gray, "op_gray");
    require(t.cart_over_b, "cart_over_B");
    variance = Variance::contravariant;
  }
  PseudoFunctor f = straighten(p, variance, side);
  return unstraighten(f, variance == Variance::covariant
                             ? Variance::contravariant
                             : Variance::covariant);
}

// ---------------------------------------------------------------------------
// Fibred equivalence search

namespace {

using EdgeClasses = std::map<std::string, EdgeClass>;

EdgeClasses edge_classes(const TwoVarFib& p, const EdgeSpec& want) {
  EdgeClasses out;
  if (!want.cartesian && !want.cocartesian && !want.locally_cartesian &&
      !want.locally_cocartesian)
    return out;
  for (const Mor& m : p.total()->morphisms())
    out.emplace(m.id, edge_class(p.proj(), m.id));
  return out;
}

// Enumerates base-preserving functors src -> dst in lexicographic order,
// pruning assignments that break functoriality or move a requested edge
// class off itself, and hands each complete candidate to visit.
bool functor_search(const TwoVarFib& src, const TwoVarFib& dst,
                    const EdgeSpec& want, const EdgeClasses& src_cls,
                    const EdgeClasses& dst_cls, std::size_t& budget,
                    const std::function<bool(const FinFunctor&)>& visit) {
  const FinCat& x = *src.total();
  const FinCat& y = *dst.total();
  const FinFunctor& ps = src.proj();
  const FinFunctor& pd = dst.proj();
  const std::vector<std::string>& xo = x.objects();
  const std::vector<Mor>& xm = x.morphisms();
  std::map<std::string, std::string> om, mm;

  auto spend = [&]() {
    if (budget == 0)
      throw SearchCapExceeded("fibred equivalence search budget exhausted");
    --budget;
  };
  auto edge_admissible = [&](const std::string& u, const std::string& v) {
    if (src_cls.empty()) return true;
    const EdgeClass& cu = src_cls.at(u);
    const EdgeClass& cv = dst_cls.at(v);
    if (want.cartesian && cu.cartesian && !cv.cartesian) return false;
    if (want.cocartesian && cu.cocartesian && !cv.cocartesian) return false;
    if (want.locally_cartesian && cu.locally_cartesian &&
        !cv.locally_cartesian)
      return false;
    if (want.locally_cocartesian && cu.locally_cocartesian &&
        !cv.locally_cocartesian)
      return false;
    return true;
  };

  std::function<bool(std::size_t)> place_mor = [&](std::size_t i) -> bool {
    if (i == xm.size())
      return visit(FinFunctor::make(src.total(), dst.total(), om, mm));
    const Mor& u = xm[i];
    const std::string& fs = om.at(u.src);
    const std::string& ft = om.at(u.tgt);
    for (const std::string& v : y.hom(fs, ft)) {
      spend();
      if (pd.on_mor(v) != ps.on_mor(u.id)) continue;
      if (x.is_identity(u.id) && v != y.identity(fs)) continue;
      if (!edge_admissible(u.id, v)) continue;
      bool ok = true;
      // Composition constraints close once the last participant of a
      // triple is assigned: u as a factor, then u as a composite.
      for (std::size_t j = 0; j < i && ok; ++j) {
        const Mor& w = xm[j];
        const std::string& wv = mm.at(w.id);
        if (w.src == u.tgt) {
          auto it = mm.find(x.compose(w.id, u.id));
          if (it != mm.end() && y.compose(wv, v) != it->second) ok = false;
        }
        if (ok && u.src == w.tgt) {
          auto it = mm.find(x.compose(u.id, w.id));
          if (it != mm.end() && y.compose(v, wv) != it->second) ok = false;
        }
      }
      mm.emplace(u.id, v);
      for (std::size_t j1 = 0; j1 <= i && ok; ++j1)
        for (std::size_t j2 = 0; j2 <= i && ok; ++j2) {
          const Mor& a = xm[j1];
          const Mor& b = xm[j2];
          if (a.src != b.tgt || x.compose(a.id, b.id) != u.id) continue;
          if (y.compose(mm.at(a.id), mm.at(b.id)) != v) ok = false;
        }
      if (ok && place_mor(i + 1)) return true;
      mm.erase(u.id);
    }
    return false;
  };
  std::function<bool(std::size_t)> place_obj = [&](std::size_t k) -> bool {
    if (k == xo.size()) return place_mor(0);
    const std::string& ox = xo[k];
    for (const std::string& oy : y.objects()) {
      spend();
      if (pd.on_obj(oy) != ps.on_obj(ox)) continue;
      om.emplace(ox, oy);
      if (place_obj(k + 1)) return true;
      om.erase(ox);
    }
    return false;
  };
  return place_obj(0);
}

bool vertical_iso(const NatTransf& t, const TwoVarFib& fib) {
  if (!t.is_iso()) return false;
  for (const auto& [x, c] : t.components())
    if (!fib.base_product()->is_identity(fib.proj().on_mor(c))) return false;
  return true;
}

}  // namespace

std::optional<FibEquivalence> fib_equivalent(const TwoVarFib& p,
                                             const TwoVarFib& q,
                                             const EdgeSpec& edges,
                                             const Caps& caps) {
  if (!p.base_a()->same_presentation(*q.base_a()) ||
      !p.base_b()->same_presentation(*q.base_b()))
    throw BadInput("fibred equivalence needs matching base presentations");
  for (const TwoVarFib* r : {&p, &q})
    if (r->total()->object_count() > caps.max_objects ||
        r->total()->morphism_count() > caps.max_morphisms)
      throw SearchCapExceeded("total category exceeds the configured caps");
  std::size_t budget = caps.search_budget;
  const EdgeClasses pc = edge_classes(p, edges);
  const EdgeClasses qc = edge_classes(q, edges);

  std::optional<FibEquivalence> out;
  functor_search(p, q, edges, pc, qc, budget, [&](const FinFunctor& fwd) {
    return functor_search(q, p, edges, qc, pc, budget,
                          [&](const FinFunctor& bwd) {
      std::optional<NatTransf> unit, counit;
      for (const NatTransf& t :
           enumerate_nat_transfs(identity_functor(p.total()),
                                 compose(bwd, fwd)))
        if (vertical_iso(t, p)) {
          unit = t;
          break;
        }
      if (!unit) return false;
      for (const NatTransf& t :
           enumerate_nat_transfs(compose(fwd, bwd),
                                 identity_functor(q.total())))
        if (vertical_iso(t, q)) {
          counit = t;
          break;
        }
      if (!counit) return false;
      out = FibEquivalence{fwd, bwd, std::move(*unit), std::move(*counit),
                           edges};
      return true;
    });
  });
  return out;
}

}  // namespace fibcalc
