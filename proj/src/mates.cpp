#include "fibcalc/mates.hpp"

#include "fibcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace fibcalc {

namespace {

// Unique arrow from s to t satisfying pred.  Used for the factorisations
// through chosen lifts, which are unique when the lift is (co)cartesian.
template <typename Pred>
std::string unique_arrow(const CatPtr& c, const std::string& s,
                         const std::string& t, Pred pred, const char* what) {
  std::optional<std::string> found;
  for (const std::string& m : c->hom(s, t)) {
    if (!pred(m)) continue;
    if (found)
      throw NonUniqueFactorisation(std::string(what) +
                                   ": ambiguous factorisation");
    found = m;
  }
  if (!found) throw NoLift(std::string(what) + ": no factorisation");
  return *found;
}

// Restriction of a fibred map to the fibres over one base object.
FinFunctor fibre_restriction(const FibredMap& g, const std::string& b) {
  auto xf = fibre_category(g.dom_proj, b);
  auto yf = fibre_category(g.cod_proj, b);
  std::map<std::string, std::string> om, mm;
  for (const std::string& o : xf->objects()) om[o] = g.map.on_obj(o);
  for (const Mor& m : xf->morphisms()) mm[m.id] = g.map.on_mor(m.id);
  return FinFunctor::make(xf, yf, om, mm);
}

// Unstraightened totals keep their fibre level names when those are
// globally unique; otherwise they decorate them with the base component.
// These helpers recover the fibre level name in either mode.
std::string ambient_object(const CatPtr& ambient, const std::string& o) {
  return ambient->has_object(o) ? o : split_pair_id(o).second;
}
std::string ambient_morphism(const CatPtr& ambient, const std::string& m) {
  return ambient->has_morphism(m) ? m : split_pair_id(m).second;
}

// Cache of cocartesian transports keyed by the base arrow.
class TransportCache {
 public:
  explicit TransportCache(const FinFunctor& proj) : proj_(proj) {}
  const FinFunctor& at(const std::string& beta) {
    auto it = cache_.find(beta);
    if (it == cache_.end())
      it = cache_.emplace(beta, cocartesian_transport(proj_, beta)).first;
    return it->second;
  }

 private:
  const FinFunctor& proj_;
  std::map<std::string, FinFunctor> cache_;
};

}  // namespace

FibredMap FibredMap::make(FinFunctor dom_proj, FinFunctor cod_proj,
                          FinFunctor map) {
  if (!map.dom()->same_presentation(*dom_proj.dom()) ||
      !map.cod()->same_presentation(*cod_proj.dom()))
    throw BadInput("fibred map must relate the two projection domains");
  if (!dom_proj.cod()->same_presentation(*cod_proj.cod()))
    throw BadInput("fibred map projections must share a base");
  if (!compose(cod_proj, map).same_tables(dom_proj))
    throw BadInput("fibred map must commute with the projections");
  return FibredMap{std::move(dom_proj), std::move(cod_proj), std::move(map)};
}

TwoVarFib mapping_cylinder(const FibredMap& g) {
  auto xt = g.dom_proj.dom();
  auto yt = g.cod_proj.dom();
  auto base = g.dom_proj.cod();

  RawCat raw;
  for (const std::string& y : yt->objects())
    raw.objects.push_back(pair_id("0", y));
  for (const std::string& x : xt->objects())
    raw.objects.push_back(pair_id("1", x));
  for (const std::string& y : yt->objects())
    raw.identities[pair_id("0", y)] = pair_id("0", yt->identity(y));
  for (const std::string& x : xt->objects())
    raw.identities[pair_id("1", x)] = pair_id("1", xt->identity(x));

  for (const Mor& v : yt->morphisms())
    raw.morphisms.push_back(
        {pair_id("0", v.id), pair_id("0", v.src), pair_id("0", v.tgt)});
  for (const Mor& u : xt->morphisms())
    raw.morphisms.push_back(
        {pair_id("1", u.id), pair_id("1", u.src), pair_id("1", u.tgt)});
  // Crossing arrows (0,y) -> (1,x) are the arrows from y into the image
  // of x, recorded as the pair (x, phi).
  for (const std::string& x : xt->objects()) {
    const std::string gx = g.map.on_obj(x);
    for (const std::string& y : yt->objects())
      for (const std::string& phi : yt->hom(y, gx))
        raw.morphisms.push_back({pair_id("01", pair_id(x, phi)),
                                 pair_id("0", y), pair_id("1", x)});
  }

  for (const Mor& v1 : yt->morphisms())
    for (const Mor& v2 : yt->morphisms())
      if (v2.src == v1.tgt)
        raw.composition[{pair_id("0", v2.id), pair_id("0", v1.id)}] =
            pair_id("0", yt->compose(v2.id, v1.id));
  for (const Mor& u1 : xt->morphisms())
    for (const Mor& u2 : xt->morphisms())
      if (u2.src == u1.tgt)
        raw.composition[{pair_id("1", u2.id), pair_id("1", u1.id)}] =
            pair_id("1", xt->compose(u2.id, u1.id));
  for (const std::string& x : xt->objects()) {
    const std::string gx = g.map.on_obj(x);
    for (const std::string& y : yt->objects())
      for (const std::string& phi : yt->hom(y, gx)) {
        const std::string cross = pair_id("01", pair_id(x, phi));
        for (const Mor& v : yt->morphisms())
          if (v.tgt == y)
            raw.composition[{cross, pair_id("0", v.id)}] =
                pair_id("01", pair_id(x, yt->compose(phi, v.id)));
        for (const Mor& u : xt->morphisms())
          if (u.src == x)
            raw.composition[{pair_id("1", u.id), cross}] = pair_id(
                "01",
                pair_id(u.tgt, yt->compose(g.map.on_mor(u.id), phi)));
      }
  }

  auto total = std::move(raw).validate();
  auto interval = simplex(1);

  std::map<std::string, std::string> o1, m1, o2, m2;
  for (const std::string& o : total->objects()) {
    auto pr = split_pair_id(o);
    o1[o] = pr.first;
    o2[o] = pr.first == "0" ? g.cod_proj.on_obj(pr.second)
                            : g.dom_proj.on_obj(pr.second);
  }
  for (const Mor& m : total->morphisms()) {
    auto pr = split_pair_id(m.id);
    if (pr.first == "0") {
      m1[m.id] = "id_0";
      m2[m.id] = g.cod_proj.on_mor(pr.second);
    } else if (pr.first == "1") {
      m1[m.id] = "id_1";
      m2[m.id] = g.dom_proj.on_mor(pr.second);
    } else {
      m1[m.id] = "0<1";
      m2[m.id] = g.cod_proj.on_mor(split_pair_id(pr.second).second);
    }
  }
  auto p1 = FinFunctor::make(total, interval, o1, m1);
  auto p2 = FinFunctor::make(total, base, o2, m2);
  return TwoVarFib::make(total, interval, base, std::move(p1), std::move(p2));
}

ParamRightAdjointReport is_param_right_adjoint(const FibredMap& g) {
  if (!cocartesian_fibration(g.dom_proj) ||
      !cocartesian_fibration(g.cod_proj))
    throw BadInput(
        "parametrised right adjoint detection needs cocartesian projections");
  ParamRightAdjointReport rep;
  rep.fibrewise = true;
  auto base = g.dom_proj.cod();
  for (const std::string& b : base->objects()) {
    auto gb = fibre_restriction(g, b);
    auto a = find_adjoint(gb, AdjointSide::left);
    if (!a) {
      rep.fibrewise = false;
      rep.witness = b;
      break;
    }
    rep.per_fibre.emplace(b, std::move(*a));
  }
  auto cyl = mapping_cylinder(g);
  auto tax = classify(cyl);
  rep.fibrational = tax.curved_ortho && cocartesian_fibration(cyl.proj_l());
  if (rep.fibrewise != rep.fibrational)
    throw CriteriaDisagree(
        "fibrewise adjoint search and cylinder classification disagree");
  rep.param_right_adjoint = rep.fibrewise && rep.fibrational;
  return rep;
}

ParamAdjunction adj(const FibredMap& g) {
  auto rep = is_param_right_adjoint(g);
  if (!rep.param_right_adjoint)
    throw BadInput("adjoint construction needs a parametrised right adjoint" +
                   (rep.witness ? "; fibre " + *rep.witness + " fails" : ""));
  auto base = g.dom_proj.cod();
  auto xt = g.dom_proj.dom();
  auto yt = g.cod_proj.dom();

  auto cyl = mapping_cylinder(g);
  auto dual = dualize(cyl, Side::B, DualDirection::ct);
  auto ct = cyl.total();
  auto dt = dual.total();
  auto l0 = fibre_category(dual.p1(), "0");
  auto l1 = fibre_category(dual.p1(), "1");
  auto ldp = compose(dual.p2(), fibre_inclusion(dual.p1(), "0"));
  auto lcp = compose(dual.p2(), fibre_inclusion(dual.p1(), "1"));
  auto dprod = dual.base_product();

  // Name indexes between the dual total and the underlying fibres.
  std::map<std::string, std::string> l0_of_y, l1_of_x;
  for (const std::string& o : l0->objects())
    l0_of_y[split_pair_id(ambient_object(ct, o)).second] = o;
  for (const std::string& o : l1->objects())
    l1_of_x[split_pair_id(ambient_object(ct, o)).second] = o;
  std::map<std::string, std::string> l0_vert, l1_vert;
  for (const Mor& m : l0->morphisms())
    if (dprod->is_identity(dual.proj().on_mor(m.id)))
      l0_vert[split_pair_id(ambient_morphism(ct, m.id)).second] = m.id;
  for (const Mor& m : l1->morphisms())
    if (dprod->is_identity(dual.proj().on_mor(m.id)))
      l1_vert[split_pair_id(ambient_morphism(ct, m.id)).second] = m.id;

  // Adjoint family from the interval direction lifts of the dual.
  std::map<std::string, std::string> lift_at;
  std::map<std::string, std::string> fobj, fmor;
  for (const std::string& z : l0->objects()) {
    auto lift = find_cocartesian_lift(
        dual.proj(), z, pair_id("0<1", base->identity(ldp.on_obj(z))));
    if (!lift)
      throw NoLift("adjoint construction: no interval lift at " + z);
    lift_at[z] = *lift;
    fobj[z] = dt->tgt(*lift);
  }
  for (const Mor& a : l0->morphisms()) {
    const std::string gamma = ldp.on_mor(a.id);
    fmor[a.id] = unique_arrow(
        dt, fobj.at(a.src), fobj.at(a.tgt),
        [&](const std::string& cand) {
          return lcp.on_mor(cand) == gamma &&
                 dt->compose(cand, lift_at.at(a.src)) ==
                     dt->compose(lift_at.at(a.tgt), a.id);
        },
        "adjoint family image");
  }
  auto left = FinFunctor::make(l0, l1, fobj, fmor);

  // The family extracted from the dual must restrict to the fibrewise
  // adjoints found independently.
  for (const auto& [b, a] : rep.per_fibre) {
    for (const std::string& y : a.left().dom()->objects()) {
      auto got = split_pair_id(ambient_object(ct, fobj.at(l0_of_y.at(y))));
      if (got.second != a.left().on_obj(y))
        throw CriteriaDisagree(
            "dual interval lifts disagree with the fibrewise adjoint at " + y);
    }
    for (const Mor& v : a.left().dom()->morphisms()) {
      auto img = fmor.at(l0_vert.at(v.id));
      auto got = split_pair_id(ambient_morphism(ct, img));
      if (got.second != a.left().on_mor(v.id))
        throw CriteriaDisagree(
            "dual interval lifts disagree with the fibrewise adjoint at " +
            v.id);
    }
  }

  // Comparison cells on the codomain side, from the original cleavage:
  // the component at x is the vertical closing the square of mapped and
  // lifted cocartesian arrows.
  std::map<std::string, NatTransf> rho;
  for (const Mor& bm : base->morphisms()) {
    const std::string b0 = bm.src;
    const std::string b1 = bm.tgt;
    auto tx = cocartesian_transport(g.dom_proj, bm.id);
    auto ty = cocartesian_transport(g.cod_proj, bm.id);
    auto gb0 = fibre_restriction(g, b0);
    auto gb1 = fibre_restriction(g, b1);
    std::map<std::string, std::string> comp;
    for (const std::string& x : gb0.dom()->objects()) {
      auto lx = find_cocartesian_lift(g.dom_proj, x, bm.id);
      auto ly = find_cocartesian_lift(g.cod_proj, g.map.on_obj(x), bm.id);
      if (!lx || !ly)
        throw NoLift("comparison cell: missing cocartesian lift at " + x);
      comp[x] = unique_arrow(
          yt, ty.on_obj(g.map.on_obj(x)), g.map.on_obj(tx.on_obj(x)),
          [&](const std::string& cand) {
            return base->is_identity(g.cod_proj.on_mor(cand)) &&
                   yt->compose(cand, *ly) == g.map.on_mor(*lx);
          },
          "comparison cell");
    }
    rho.emplace(bm.id,
                NatTransf::make(compose(ty, gb0), compose(gb1, tx), comp));
  }

  // Comparison cells for the adjoint family, extracted from the dual by
  // factoring the two lift orders against each other.
  std::map<std::string, NatTransf> lambda;
  for (const Mor& bm : base->morphisms()) {
    const std::string b0 = bm.src;
    const std::string b1 = bm.tgt;
    auto tx = cocartesian_transport(g.dom_proj, bm.id);
    auto ty = cocartesian_transport(g.cod_proj, bm.id);
    std::map<std::string, std::string> comp;
    for (const std::string& y : rep.per_fibre.at(b0).left().dom()->objects()) {
      const std::string z = l0_of_y.at(y);
      auto lb0 = find_cartesian_lift(dual.proj(), z, pair_id("id_0", bm.id));
      if (!lb0)
        throw NoLift("adjoint comparison cell: no base lift at " + z);
      const std::string h = dt->compose(lift_at.at(z), *lb0);
      const std::string z2 = dt->src(*lb0);
      const std::string h2 = unique_arrow(
          dt, fobj.at(z2), fobj.at(z),
          [&](const std::string& cand) {
            return dt->compose(cand, lift_at.at(z2)) == h;
          },
          "adjoint comparison cell");
      auto lb1 =
          find_cartesian_lift(dual.proj(), fobj.at(z), pair_id("id_1", bm.id));
      if (!lb1)
        throw NoLift("adjoint comparison cell: no target lift at " +
                     fobj.at(z));
      const std::string m = unique_arrow(
          dt, fobj.at(z2), dt->src(*lb1),
          [&](const std::string& cand) {
            return dprod->is_identity(dual.proj().on_mor(cand)) &&
                   dt->compose(*lb1, cand) == h2;
          },
          "adjoint comparison cell");
      comp[y] = split_pair_id(ambient_morphism(ct, m)).second;
    }
    lambda.emplace(
        bm.id,
        NatTransf::make(compose(rep.per_fibre.at(b1).left(), ty),
                        compose(tx, rep.per_fibre.at(b0).left()), comp));
  }

  for (const std::string& o : base->objects()) {
    const std::string idm = base->identity(o);
    if (!rho.at(idm).is_iso() || !lambda.at(idm).is_iso())
      throw Error("identity comparison cell is not invertible at " + o);
  }

  return ParamAdjunction{.base = base,
                         .right = g,
                         .cylinder = std::move(cyl),
                         .dual_cylinder = std::move(dual),
                         .left = std::move(left),
                         .left_dom_proj = std::move(ldp),
                         .left_cod_proj = std::move(lcp),
                         .per_fibre = std::move(rep.per_fibre),
                         .rho = std::move(rho),
                         .lambda = std::move(lambda)};
}

NatTransf beck_chevalley(const NatTransf& rho_beta,
                         const FinFunctor& transport_dom,
                         const FinFunctor& transport_cod,
                         const Adjunction& at_src, const Adjunction& at_tgt) {
  auto src = compose(at_tgt.left(), transport_cod);
  auto tgt = compose(transport_dom, at_src.left());
  auto cod = tgt.cod();
  std::map<std::string, std::string> comp;
  for (const std::string& y : src.dom()->objects()) {
    const std::string fy = at_src.left().on_obj(y);
    const std::string s1 =
        at_tgt.left().on_mor(transport_cod.on_mor(at_src.unit().at(y)));
    const std::string s2 = at_tgt.left().on_mor(rho_beta.at(fy));
    const std::string s3 = at_tgt.counit().at(transport_dom.on_obj(fy));
    comp[y] = cod->compose(s3, cod->compose(s2, s1));
  }
  return NatTransf::make(std::move(src), std::move(tgt), std::move(comp));
}

MateReport verify_mate(const ParamAdjunction& pa) {
  MateReport rep;
  rep.lambda_matches = true;
  rep.rho_matches = true;
  const auto& g = pa.right;
  auto yt = g.cod_proj.dom();
  for (const Mor& bm : pa.base->morphisms()) {
    auto tx = cocartesian_transport(g.dom_proj, bm.id);
    auto ty = cocartesian_transport(g.cod_proj, bm.id);
    const auto& at0 = pa.per_fibre.at(bm.src);
    const auto& at1 = pa.per_fibre.at(bm.tgt);
    auto bc = beck_chevalley(pa.rho.at(bm.id), tx, ty, at0, at1);
    for (const auto& [y, cmp] : pa.lambda.at(bm.id).components())
      if (bc.at(y) != cmp) {
        rep.lambda_matches = false;
        rep.mismatches.push_back("exchange composite of " + bm.id + " at " + y);
      }
    // Recover the codomain side cell from the adjoint side one.
    for (const auto& [x, cmp] : pa.rho.at(bm.id).components()) {
      const std::string gx = g.map.on_obj(x);
      const std::string s1 = at1.unit().at(ty.on_obj(gx));
      const std::string s2 = g.map.on_mor(pa.lambda.at(bm.id).at(gx));
      const std::string s3 = g.map.on_mor(tx.on_mor(at0.counit().at(x)));
      if (yt->compose(s3, yt->compose(s2, s1)) != cmp) {
        rep.rho_matches = false;
        rep.mismatches.push_back("dual recovery of " + bm.id + " at " + x);
      }
    }
  }
  return rep;
}

namespace {

// Apex of the parametrised unit together with the transported data at
// each object and the two comparison arrows at each morphism.  The apex
// pairs a degree zero object of the dual cylinder with a base arrow out
// of its image.
struct UnitApex {
  CatPtr total;
  std::map<std::string, std::string> y_of;   // underlying fibre object
  std::map<std::string, std::string> m_of;   // base arrow
  std::map<std::string, std::string> sy;     // transported object
  std::map<std::string, std::string> sx;     // transported adjoint image
  std::map<std::string, std::string> eta;    // unit component
  std::map<std::string, std::string> psi_y;  // codomain side comparison
  std::map<std::string, std::string> psi_x;  // domain side comparison
};

UnitApex unit_apex(const ParamAdjunction& pa) {
  const auto& g = pa.right;
  auto base = pa.base;
  auto xt = g.dom_proj.dom();
  auto yt = g.cod_proj.dom();
  auto ct = pa.cylinder.total();
  auto dt = pa.dual_cylinder.total();
  auto dprod = pa.dual_cylinder.base_product();

  auto opb = opposite(base);
  auto twl = tw(opb, TwVariant::left);
  auto pb = pullback_category(pa.left_dom_proj, twl.fibration.p2());

  auto sp = straighten(g.dom_proj, Variance::covariant);
  auto sq = straighten(g.cod_proj, Variance::covariant);
  TransportCache tx(g.dom_proj), ty(g.cod_proj);

  UnitApex ua{.total = pb.total};
  for (const std::string& A : pb.total->objects()) {
    const std::string z = pb.to_dom_f.on_obj(A);
    const std::string m = pb.to_dom_g.on_obj(A);
    const std::string y = split_pair_id(ambient_object(ct, z)).second;
    const std::string b1 = base->tgt(m);
    ua.y_of[A] = y;
    ua.m_of[A] = m;
    ua.sy[A] = ty.at(m).on_obj(y);
    ua.sx[A] =
        tx.at(m).on_obj(pa.per_fibre.at(base->src(m)).left().on_obj(y));
    ua.eta[A] = yt->compose(g.map.on_mor(pa.lambda.at(m).at(y)),
                            pa.per_fibre.at(b1).unit().at(ua.sy[A]));
  }

  for (const Mor& M : pb.total->morphisms()) {
    const std::string a = pb.to_dom_f.on_mor(M.id);
    const std::string sig = pb.to_dom_g.on_mor(M.id);
    const auto& [u, delta] = twl.squares.at(sig);
    const std::string m = ua.m_of.at(M.src);
    const std::string mt = ua.m_of.at(M.tgt);
    const std::string mdelta = base->compose(m, delta);
    if (base->compose(u, mdelta) != mt)
      throw Error("unit apex: twisted square decodes inconsistently");
    const std::string z = pb.to_dom_f.on_obj(M.src);
    const std::string zt = pb.to_dom_f.on_obj(M.tgt);
    const std::string yt_obj = ua.y_of.at(M.tgt);

    // Vertical parts of the apex arrow on both sides of the adjunction.
    auto l0lift =
        find_cartesian_lift(pa.dual_cylinder.proj(), zt, pair_id("id_0", delta));
    if (!l0lift) throw NoLift("unit apex: no degree zero base lift");
    const std::string wy = unique_arrow(
        dt, z, dt->src(*l0lift),
        [&](const std::string& cand) {
          return dprod->is_identity(pa.dual_cylinder.proj().on_mor(cand)) &&
                 dt->compose(*l0lift, cand) == a;
        },
        "unit apex vertical part");
    const std::string alpha_y =
        split_pair_id(ambient_morphism(ct, wy)).second;

    const std::string ahat = pa.left.on_mor(a);
    auto l1lift = find_cartesian_lift(pa.dual_cylinder.proj(),
                                      pa.left.on_obj(zt),
                                      pair_id("id_1", delta));
    if (!l1lift) throw NoLift("unit apex: no degree one base lift");
    const std::string wx = unique_arrow(
        dt, pa.left.on_obj(z), dt->src(*l1lift),
        [&](const std::string& cand) {
          return dprod->is_identity(pa.dual_cylinder.proj().on_mor(cand)) &&
                 dt->compose(*l1lift, cand) == ahat;
        },
        "unit apex vertical part");
    const std::string alpha_x =
        split_pair_id(ambient_morphism(ct, wx)).second;
    const std::string fxt =
        split_pair_id(ambient_object(ct, pa.left.on_obj(zt))).second;

    // Both comparison arrows follow the same route: transported vertical
    // part, collapse of the composite transport, push along the twisted
    // square, collapse again.
    auto chain = [&](const CatPtr& tot, PseudoFunctor& s, TransportCache& tc,
                     const FinFunctor& proj, const std::string& alpha,
                     const std::string& far) {
      const std::string a1 = tc.at(m).on_mor(alpha);
      const std::string b1 = tot->inverse(s.comp_iso(m, delta).at(far));
      auto c1 = find_cocartesian_lift(proj, tc.at(mdelta).on_obj(far), u);
      if (!c1) throw NoLift("unit apex: no transported lift");
      const std::string d1 = tot->inverse(s.comp_iso(u, mdelta).at(far));
      return tot->compose(d1, tot->compose(*c1, tot->compose(b1, a1)));
    };
    ua.psi_y[M.id] = chain(yt, sq, ty, g.cod_proj, alpha_y, yt_obj);
    ua.psi_x[M.id] = chain(xt, sp, tx, g.dom_proj, alpha_x, fxt);
  }
  return ua;
}

}  // namespace

FinFunctor param_unit(const ParamAdjunction& pa) {
  auto ua = unit_apex(pa);
  auto yt = pa.right.cod_proj.dom();
  auto interval = simplex(1);
  auto dom = product(ua.total, interval);

  std::map<std::string, std::string> om, mm;
  for (const std::string& A : ua.total->objects()) {
    om[pair_id(A, "0")] = ua.sy.at(A);
    om[pair_id(A, "1")] = pa.right.map.on_obj(ua.sx.at(A));
  }
  for (const Mor& M : ua.total->morphisms()) {
    const std::string gpsi = pa.right.map.on_mor(ua.psi_x.at(M.id));
    mm[pair_id(M.id, "id_0")] = ua.psi_y.at(M.id);
    mm[pair_id(M.id, "id_1")] = gpsi;
    mm[pair_id(M.id, "0<1")] = yt->compose(gpsi, ua.eta.at(M.src));
  }
  auto u = FinFunctor::make(dom, yt, om, mm);

  for (const std::string& A : ua.total->objects()) {
    if (!pa.base->is_identity(pa.right.cod_proj.on_mor(ua.eta.at(A))))
      throw NonFunctorial("parametrised unit component at " + A +
                          " is not vertical");
    const std::string m = ua.m_of.at(A);
    if (pa.base->is_identity(m) &&
        ua.eta.at(A) !=
            pa.per_fibre.at(pa.base->src(m)).unit().at(ua.y_of.at(A)))
      throw NonFunctorial("parametrised unit does not restrict to the fibre " +
                          pa.base->src(m));
  }
  return u;
}

FinFunctor param_counit(const ParamAdjunction& pa) {
  const auto& g = pa.right;
  auto base = pa.base;
  auto xt = g.dom_proj.dom();
  auto yt = g.cod_proj.dom();
  auto ct = pa.cylinder.total();
  auto dt = pa.dual_cylinder.total();
  auto dprod = pa.dual_cylinder.base_product();
  auto l1 = fibre_category(pa.dual_cylinder.p1(), "1");

  std::map<std::string, std::string> l1_of_x, l1_vert;
  for (const std::string& o : l1->objects())
    l1_of_x[split_pair_id(ambient_object(ct, o)).second] = o;
  for (const Mor& m : l1->morphisms())
    if (dprod->is_identity(pa.dual_cylinder.proj().on_mor(m.id)))
      l1_vert[split_pair_id(ambient_morphism(ct, m.id)).second] = m.id;

  auto twr = tw(base, TwVariant::right);
  auto pb = pullback_category(g.dom_proj, twr.fibration.p1());
  auto sp = straighten(g.dom_proj, Variance::covariant);
  auto sq = straighten(g.cod_proj, Variance::covariant);
  TransportCache tx(g.dom_proj), ty(g.cod_proj);

  // Per apex object: endpoints in the degree one fibre and the counit
  // component between them.
  std::map<std::string, std::string> src_of, tgt_of, eps;
  for (const std::string& A : pb.total->objects()) {
    const std::string x = pb.to_dom_f.on_obj(A);
    const std::string beta = pb.to_dom_g.on_obj(A);
    const std::string b0 = base->src(beta);
    const std::string b1 = base->tgt(beta);
    const std::string gx = g.map.on_obj(x);
    const std::string sy = ty.at(beta).on_obj(gx);
    src_of[A] = l1_of_x.at(pa.per_fibre.at(b1).left().on_obj(sy));
    tgt_of[A] = l1_of_x.at(tx.at(beta).on_obj(x));
    eps[A] =
        xt->compose(tx.at(beta).on_mor(pa.per_fibre.at(b0).counit().at(x)),
                    pa.lambda.at(beta).at(gx));
  }

  auto interval = simplex(1);
  auto dom = product(pb.total, interval);
  std::map<std::string, std::string> om, mm;
  for (const std::string& A : pb.total->objects()) {
    om[pair_id(A, "0")] = src_of.at(A);
    om[pair_id(A, "1")] = tgt_of.at(A);
  }

  // One side of the square transports the arrow itself, the other its
  // image; both land over the target leg of the twisted square.
  auto row = [&](const CatPtr& tot, PseudoFunctor& s, TransportCache& tc,
                 const FinFunctor& proj, const std::string& h,
                 const std::string& beta, const std::string& u,
                 const std::string& v, const std::string& x) {
    auto lift = find_cocartesian_lift(proj, x, u);
    if (!lift) throw NoLift("parametrised counit: no cocartesian lift");
    const std::string hbar = unique_arrow(
        tot, tot->tgt(*lift), tot->tgt(h),
        [&](const std::string& cand) {
          return base->is_identity(proj.on_mor(cand)) &&
                 tot->compose(cand, *lift) == h;
        },
        "parametrised counit");
    const std::string bu = base->compose(beta, u);
    const std::string m1 = s.comp_iso(v, bu).at(x);
    const std::string m2 = tc.at(v).on_mor(s.comp_iso(beta, u).at(x));
    const std::string m3 = tc.at(v).on_mor(tc.at(beta).on_mor(hbar));
    return tot->compose(m3, tot->compose(m2, m1));
  };

  for (const Mor& M : pb.total->morphisms()) {
    const std::string h = pb.to_dom_f.on_mor(M.id);
    const std::string sig = pb.to_dom_g.on_mor(M.id);
    const auto& [u, v] = twr.squares.at(sig);
    const std::string x = pb.to_dom_f.on_obj(M.src);
    const std::string betat = pb.to_dom_g.on_obj(M.tgt);
    const std::string b1 = base->tgt(pb.to_dom_g.on_obj(M.src));

    const std::string wr =
        row(xt, sp, tx, g.dom_proj, h, betat, u, v, x);
    auto liftr = find_cartesian_lift(pa.dual_cylinder.proj(), tgt_of.at(M.tgt),
                                     pair_id("id_1", v));
    if (!liftr) throw NoLift("parametrised counit: no dual base lift");
    const std::string row1 = dt->compose(*liftr, l1_vert.at(wr));

    const std::string gy = g.map.on_obj(x);
    const std::string wy =
        row(yt, sq, ty, g.cod_proj, g.map.on_mor(h), betat, u, v, gy);
    const std::string yarg = ty.at(betat).on_obj(
        g.map.on_obj(pb.to_dom_f.on_obj(M.tgt)));
    const std::string wl =
        xt->compose(pa.lambda.at(v).at(yarg),
                    pa.per_fibre.at(b1).left().on_mor(wy));
    auto liftl = find_cartesian_lift(pa.dual_cylinder.proj(), src_of.at(M.tgt),
                                     pair_id("id_1", v));
    if (!liftl) throw NoLift("parametrised counit: no dual base lift");
    const std::string row0 = dt->compose(*liftl, l1_vert.at(wl));

    mm[pair_id(M.id, "id_0")] = row0;
    mm[pair_id(M.id, "id_1")] = row1;
    mm[pair_id(M.id, "0<1")] = dt->compose(row1, l1_vert.at(eps.at(M.src)));
  }
  auto c = FinFunctor::make(dom, l1, om, mm);

  for (const std::string& A : pb.total->objects()) {
    const std::string beta = pb.to_dom_g.on_obj(A);
    if (base->is_identity(beta) &&
        eps.at(A) != pa.per_fibre.at(base->src(beta))
                         .counit()
                         .at(pb.to_dom_f.on_obj(A)))
      throw NonFunctorial(
          "parametrised counit does not restrict to the fibre " +
          base->src(beta));
  }
  return c;
}

FinFunctor pass_to_adjoint(const ParamAdjunction& pa) {
  auto ua = unit_apex(pa);
  auto xt = pa.right.dom_proj.dom();
  auto yt = pa.right.cod_proj.dom();

  std::map<std::string, std::string> pom, pmm;
  for (const std::string& A : ua.total->objects()) pom[A] = ua.sx.at(A);
  for (const Mor& M : ua.total->morphisms()) pmm[M.id] = ua.psi_x.at(M.id);
  auto phi = FinFunctor::make(ua.total, xt, pom, pmm);

  auto fr = free_fib(phi, Variance::covariant);
  auto ar = arrow_cat(yt);
  auto art = ar.total();
  auto frt = fr.projection.dom();

  std::map<std::string, std::string> om, mm;
  for (const std::string& o : frt->objects()) {
    auto pr = split_pair_id(o);
    om[o] = yt->compose(pa.right.map.on_mor(pr.second), ua.eta.at(pr.first));
  }
  for (const Mor& n : frt->morphisms()) {
    const auto& [M, d] = fr.squares.at(n.id);
    const std::string psi = ua.psi_y.at(M);
    const std::string gd = pa.right.map.on_mor(d);
    mm[n.id] = unique_arrow(
        art, om.at(n.src), om.at(n.tgt),
        [&](const std::string& cand) {
          return ar.p1().on_mor(cand) == psi && ar.p2().on_mor(cand) == gd;
        },
        "adjunct square");
  }
  auto etabar = FinFunctor::make(frt, art, om, mm);
  if (!compose(ar.p2(), etabar).same_tables(compose(pa.right.map,
                                                    fr.projection)))
    throw NonFunctorial(
        "passing to adjoints does not commute with the codomain projection");
  return etabar;
}

namespace {

// Same transports over the same base, opposite fibres.  Unit and
// composition witnesses invert componentwise.
PseudoFunctor opposite_fibres(const PseudoFunctor& pf) {
  auto base = pf.base();
  std::map<std::string, CatPtr> fibres;
  for (const std::string& a : base->objects())
    fibres.emplace(a, opposite(pf.fibre(a)));
  std::map<std::string, FinFunctor> transport;
  for (const Mor& m : base->morphisms())
    transport.emplace(m.id, opposite_functor(pf.transport(m.id)));
  std::map<std::string, NatTransf> units;
  for (const std::string& a : base->objects()) {
    std::map<std::string, std::string> comp;
    for (const auto& [x, c] : pf.unit_iso(a).components())
      comp[x] = pf.fibre(a)->inverse(c);
    units.emplace(a,
                  NatTransf::make(transport.at(base->identity(a)),
                                  identity_functor(fibres.at(a)), comp));
  }
  std::map<PseudoFunctor::CompKey, NatTransf> comps;
  for (const Mor& f : base->morphisms())
    for (const Mor& gm : base->morphisms()) {
      if (gm.src != f.tgt) continue;
      std::map<std::string, std::string> comp;
      for (const auto& [x, c] : pf.comp_iso(gm.id, f.id).components())
        comp[x] = pf.fibre(gm.tgt)->inverse(c);
      comps.emplace(
          PseudoFunctor::CompKey{gm.id, f.id},
          NatTransf::make(transport.at(base->compose(gm.id, f.id)),
                          compose(transport.at(gm.id), transport.at(f.id)),
                          comp));
    }
  return PseudoFunctor::make(base, pf.variance(), std::move(fibres),
                             std::move(transport), std::move(units),
                             std::move(comps));
}

// Fibrewise opposite of a fibred category, as a cocartesian fibration
// over the same base.
TwoVarFib opposed_vee(const PseudoFunctor& straightened) {
  return unstraighten(opposite_fibres(straightened), Variance::covariant);
}

std::string opvee_object(const TwoVarFib& f, const std::string& b,
                         const std::string& x) {
  if (f.total()->has_object(x)) return x;
  return pair_id(b, x);
}
std::string opvee_vertical(const TwoVarFib& f, const std::string& b,
                           const std::string& u) {
  if (f.total()->has_morphism(u)) return u;
  return pair_id(f.base_a()->identity(b), u);
}

// Relative twisted arrows of one side: objects are the vertical arrows,
// morphisms over beta are pairs (u, v) of verticals with
// w' = v . beta(w) . u, and the projection sends w to the pair of its
// endpoints with the source taken in the fibrewise opposite.
struct SideData {
  TwoVarFib opvee;
  CatPtr relcat;
  PullbackCat apex;
  FinFunctor leg;
  bool leg_left_fibration = false;
};

SideData build_side(const FinFunctor& proj, const PseudoFunctor& s) {
  auto tot = proj.dom();
  auto base = proj.cod();
  auto opv = opposed_vee(s);
  TransportCache tc(proj);

  std::vector<std::string> verts;
  for (const Mor& m : tot->morphisms())
    if (base->is_identity(proj.on_mor(m.id))) verts.push_back(m.id);
  auto vertical = [&](const std::string& m) {
    return base->is_identity(proj.on_mor(m));
  };

  struct RelMor {
    std::string w, w2, beta, u, v;
  };
  std::vector<RelMor> rel;
  for (const std::string& w : verts)
    for (const std::string& w2 : verts) {
      const std::string bw = proj.on_obj(tot->src(w));
      const std::string bw2 = proj.on_obj(tot->src(w2));
      for (const Mor& bm : base->morphisms()) {
        if (bm.src != bw || bm.tgt != bw2) continue;
        const auto& t = tc.at(bm.id);
        for (const std::string& u :
             tot->hom(tot->src(w2), t.on_obj(tot->src(w)))) {
          if (!vertical(u)) continue;
          for (const std::string& v :
               tot->hom(t.on_obj(tot->tgt(w)), tot->tgt(w2))) {
            if (!vertical(v)) continue;
            if (tot->compose(v, tot->compose(t.on_mor(w), u)) == w2)
              rel.push_back({w, w2, bm.id, u, v});
          }
        }
      }
    }

  // Primary names drop the endpoints; when that collides the endpoints
  // are restored for every morphism uniformly.
  std::map<std::string, int> seen;
  for (const RelMor& r : rel) ++seen[pair_id(r.beta, pair_id(r.u, r.v))];
  const bool collide =
      std::any_of(seen.begin(), seen.end(),
                  [](const auto& kv) { return kv.second > 1; });
  auto name_of = [&](const RelMor& r) {
    const std::string core = pair_id(r.beta, pair_id(r.u, r.v));
    return collide ? pair_id(pair_id(r.w, r.w2), core) : core;
  };

  RawCat raw;
  raw.objects = verts;
  std::map<std::tuple<std::string, std::string, std::string, std::string,
                      std::string>,
           std::string>
      index;
  for (const RelMor& r : rel) {
    const std::string n = name_of(r);
    raw.morphisms.push_back({n, r.w, r.w2});
    index[{r.w, r.w2, r.beta, r.u, r.v}] = n;
  }
  for (const std::string& w : verts)
    raw.identities[w] = index.at({w, w, base->identity(proj.on_obj(tot->src(w))),
                                  tot->identity(tot->src(w)),
                                  tot->identity(tot->tgt(w))});
  for (const RelMor& r1 : rel)
    for (const RelMor& r2 : rel) {
      if (r2.w != r1.w2) continue;
      const auto& t2 = tc.at(r2.beta);
      const std::string bb = base->compose(r2.beta, r1.beta);
      const std::string mu_s = s.comp_iso(r2.beta, r1.beta).at(tot->src(r1.w));
      const std::string mu_t = s.comp_iso(r2.beta, r1.beta).at(tot->tgt(r1.w));
      const std::string U = tot->compose(
          tot->inverse(mu_s), tot->compose(t2.on_mor(r1.u), r2.u));
      const std::string V =
          tot->compose(r2.v, tot->compose(t2.on_mor(r1.v), mu_t));
      auto it = index.find({r1.w, r2.w2, bb, U, V});
      if (it == index.end())
        throw Error("relative twisted arrows: composite left the enumeration");
      raw.composition[{name_of(r2), name_of(r1)}] = it->second;
    }
  auto relcat = std::move(raw).validate();

  auto apex = pullback_category(opv.p1(), proj);
  std::map<std::string, std::string> om, mm;
  for (const std::string& w : verts) {
    const std::string b = proj.on_obj(tot->src(w));
    om[w] = pair_id(opvee_object(opv, b, tot->src(w)), tot->tgt(w));
  }
  for (const RelMor& r : rel) {
    const std::string b = proj.on_obj(tot->src(r.w));
    const std::string b2 = proj.on_obj(tot->src(r.w2));
    auto l1 = find_cocartesian_lift(opv.p1(),
                                    opvee_object(opv, b, tot->src(r.w)),
                                    r.beta);
    auto l2 = find_cocartesian_lift(proj, tot->tgt(r.w), r.beta);
    if (!l1 || !l2)
      throw NoLift("relative twisted arrows: missing projection lift");
    const std::string m1 =
        opv.total()->compose(opvee_vertical(opv, b2, r.u), *l1);
    const std::string m2 = tot->compose(r.v, *l2);
    mm[name_of(r)] = pair_id(m1, m2);
  }
  auto leg = FinFunctor::make(relcat, apex.total, om, mm);
  const bool cert = left_fibration(leg);
  return SideData{std::move(opv), std::move(relcat), std::move(apex),
                  std::move(leg), cert};
}

}  // namespace

CorrPullbackReport corr_pullback_checks(const ParamAdjunction& pa,
                                        const Caps& caps) {
  const auto& g = pa.right;
  auto base = pa.base;
  auto xt = g.dom_proj.dom();
  auto yt = g.cod_proj.dom();
  std::vector<std::string> notes;

  auto sx = straighten(g.dom_proj, Variance::covariant);
  auto sy = straighten(g.cod_proj, Variance::covariant);
  auto sideX = build_side(g.dom_proj, sx);
  auto sideY = build_side(g.cod_proj, sy);

  // Comparison functor between the fibrewise opposites, twisted by the
  // adjoint comparison cells.
  std::map<std::string, std::string> fvo, fvm;
  for (const std::string& o : sideY.opvee.total()->objects()) {
    const std::string b = sideY.opvee.p1().on_obj(o);
    fvo[o] = opvee_object(sideX.opvee, b,
                          pa.per_fibre.at(b).left().on_obj(
                              ambient_object(yt, o)));
  }
  for (const Mor& m : sideY.opvee.total()->morphisms()) {
    const std::string beta = sideY.opvee.p1().on_mor(m.id);
    const std::string b = sideY.opvee.p1().on_obj(m.src);
    const std::string b2 = sideY.opvee.p1().on_obj(m.tgt);
    if (base->is_identity(beta)) {
      fvm[m.id] = opvee_vertical(
          sideX.opvee, b,
          pa.per_fibre.at(b).left().on_mor(ambient_morphism(yt, m.id)));
      continue;
    }
    auto lift = find_cocartesian_lift(sideY.opvee.p1(), m.src, beta);
    if (!lift) throw NoLift("correspondence comparison: missing lift");
    const std::string ubar = unique_arrow(
        sideY.opvee.total(), sideY.opvee.total()->tgt(*lift), m.tgt,
        [&](const std::string& cand) {
          return base->is_identity(sideY.opvee.p1().on_mor(cand)) &&
                 sideY.opvee.total()->compose(cand, *lift) == m.id;
        },
        "correspondence comparison");
    const std::string y = ambient_object(yt, m.src);
    const std::string c =
        xt->compose(pa.lambda.at(beta).at(y),
                    pa.per_fibre.at(b2).left().on_mor(
                        ambient_morphism(yt, ubar)));
    auto liftx = find_cocartesian_lift(sideX.opvee.p1(), fvo.at(m.src), beta);
    if (!liftx) throw NoLift("correspondence comparison: missing lift");
    fvm[m.id] = sideX.opvee.total()->compose(
        opvee_vertical(sideX.opvee, b2, c), *liftx);
  }
  auto fvee = FinFunctor::make(sideY.opvee.total(), sideX.opvee.total(),
                               fvo, fvm);

  // Shared apex pairing a fibrewise opposite object of the codomain side
  // with a domain side object, and the two comparison functors out of it.
  auto A = pullback_category(sideY.opvee.p1(), g.dom_proj);
  std::map<std::string, std::string> lo, lm, ro, rm;
  for (const std::string& o : A.total->objects()) {
    const std::string y = A.to_dom_f.on_obj(o);
    const std::string x = A.to_dom_g.on_obj(o);
    lo[o] = pair_id(fvee.on_obj(y), x);
    ro[o] = pair_id(y, g.map.on_obj(x));
  }
  for (const Mor& m : A.total->morphisms()) {
    const std::string m1 = A.to_dom_f.on_mor(m.id);
    const std::string m2 = A.to_dom_g.on_mor(m.id);
    lm[m.id] = pair_id(fvee.on_mor(m1), m2);
    rm[m.id] = pair_id(m1, g.map.on_mor(m2));
  }
  auto L = FinFunctor::make(A.total, sideX.apex.total, lo, lm);
  auto R = FinFunctor::make(A.total, sideY.apex.total, ro, rm);

  auto lhs_pb = pullback_category(L, sideX.leg);
  auto rhs_pb = pullback_category(R, sideY.leg);
  auto lhs = one_variable(lhs_pb.total, A.total, lhs_pb.to_dom_f);
  auto rhs = one_variable(rhs_pb.total, A.total, rhs_pb.to_dom_f);

  bool counts = true;
  for (const std::string& a : A.total->objects()) {
    std::size_t c1 = 0, c2 = 0;
    for (const std::string& o : lhs_pb.total->objects())
      if (lhs_pb.to_dom_f.on_obj(o) == a) ++c1;
    for (const std::string& o : rhs_pb.total->objects())
      if (rhs_pb.to_dom_f.on_obj(o) == a) ++c2;
    if (c1 != c2) {
      counts = false;
      notes.push_back("fibre sizes over " + a + " differ");
    }
  }

  const bool legs = sideX.leg_left_fibration && sideY.leg_left_fibration &&
                    left_fibration(lhs_pb.to_dom_f) &&
                    left_fibration(rhs_pb.to_dom_f);
  if (!legs) notes.push_back("a projection leg fails to be a left fibration");

  std::optional<FibEquivalence> eq;
  try {
    eq = fib_equivalent(lhs, rhs, EdgeSpec{.cocartesian = true}, caps);
    if (!eq) notes.push_back("no edge preserving equivalence found");
  } catch (const SearchCapExceeded& e) {
    notes.push_back(std::string("equivalence search capped: ") + e.what());
  }
  const bool equivalent = eq.has_value();

  // Twisted squares whose legs are a cocartesian and a cartesian lift
  // must themselves be cartesian for the induced twisted arrow functor.
  std::size_t checked = 0;
  bool lemma = true;
  for (const FinFunctor* proj : {&g.cod_proj, &g.dom_proj}) {
    auto twtot = tw(proj->dom(), TwVariant::left);
    auto twbase = tw(proj->cod(), TwVariant::left);
    auto tp = twisted_functor(*proj, twtot, twbase);
    for (const auto& [n, sqr] : twtot.squares) {
      if (!is_cocartesian_edge(*proj, sqr.first) ||
          !is_cartesian_edge(*proj, sqr.second))
        continue;
      ++checked;
      if (!is_cartesian_edge(tp, n)) {
        lemma = false;
        notes.push_back("twisted square " + n + " fails to be cartesian");
      }
    }
  }

  // Fibrewise cartesian arrows promote to cartesian arrows of the whole
  // map whenever the map preserves cocartesian edges.
  bool preserves = true;
  for (const Mor& e : xt->morphisms())
    if (is_cocartesian_edge(g.dom_proj, e.id) &&
        !is_cocartesian_edge(g.cod_proj, g.map.on_mor(e.id))) {
      preserves = false;
      break;
    }
  bool promo = true;
  if (!preserves) {
    notes.push_back(
        "map does not preserve cocartesian edges; promotion is vacuous");
  } else {
    for (const std::string& b : base->objects()) {
      auto gb = fibre_restriction(g, b);
      for (const Mor& phi : gb.dom()->morphisms())
        if (is_cartesian_edge(gb, phi.id) &&
            !is_cartesian_edge(g.map, phi.id)) {
          promo = false;
          notes.push_back("fibrewise cartesian arrow " + phi.id +
                          " fails to promote");
        }
    }
  }

  return CorrPullbackReport{.lhs = std::move(lhs),
                            .rhs = std::move(rhs),
                            .equivalence = std::move(eq),
                            .pullbacks_equivalent = equivalent,
                            .fibre_counts_match = counts,
                            .left_fibration_legs = legs,
                            .twisted_cartesian_lemma = lemma,
                            .fibre_cartesian_promotion = promo,
                            .twisted_edges_checked = checked,
                            .notes = std::move(notes)};
}

TwoVarAdjoint two_var_adjoint(const FinFunctor& f, const CatPtr& d,
                              const CatPtr& b) {
  auto prod = product(d, b);
  if (!f.dom()->same_presentation(*prod))
    throw BadInput(
        "two variable adjoint needs a functor out of the product of its "
        "arguments");
  auto c = f.cod();

  for (const std::string& bo : b->objects()) {
    std::map<std::string, std::string> om, mm;
    for (const std::string& x : d->objects())
      om[x] = f.on_obj(pair_id(x, bo));
    for (const Mor& m : d->morphisms())
      mm[m.id] = f.on_mor(pair_id(m.id, b->identity(bo)));
    auto fb = FinFunctor::make(d, c, om, mm);
    if (!find_adjoint(fb, AdjointSide::right))
      throw NotFibrewiseLeftAdjoint(
          "partial functor has no right adjoint at " + bo);
  }

  auto ghat = opposite_functor(pair_into_product(f, proj2(d, b)));
  auto fm = FibredMap::make(opposite_functor(proj2(d, b)),
                            opposite_functor(proj2(c, b)), ghat);
  auto pa = adj(fm);

  auto opb = opposite(b);
  auto gdom = product(c, opb);

  auto eps_of = [&](const std::string& bo, const std::string& y) {
    return split_pair_id(pa.per_fibre.at(bo).unit().at(pair_id(y, bo))).first;
  };
  auto eta_of = [&](const std::string& bo, const std::string& x) {
    return split_pair_id(pa.per_fibre.at(bo).counit().at(pair_id(x, bo)))
        .first;
  };
  auto g_of = [&](const std::string& bo, const std::string& y) {
    return split_pair_id(
               pa.per_fibre.at(bo).left().on_obj(pair_id(y, bo)))
        .first;
  };
  auto adjunct = [&](const std::string& bo, const std::string& x,
                     const std::string& cm) {
    const std::string gm =
        split_pair_id(
            pa.per_fibre.at(bo).left().on_mor(pair_id(cm, b->identity(bo))))
            .first;
    return d->compose(gm, eta_of(bo, x));
  };

  std::map<std::string, std::string> gom, gmm;
  for (const std::string& o : gdom->objects()) {
    auto [y, bo] = split_pair_id(o);
    gom[o] = g_of(bo, y);
  }
  for (const Mor& m : gdom->morphisms()) {
    auto [w, beta] = split_pair_id(m.id);
    auto [y, b0] = split_pair_id(gdom->src(m.id));
    const std::string b1 = opb->tgt(beta);
    const std::string gy = gom.at(gdom->src(m.id));
    const std::string c0 = c->compose(
        w, c->compose(eps_of(b0, y),
                      f.on_mor(pair_id(d->identity(gy), beta))));
    gmm[m.id] = adjunct(b1, gy, c0);
  }
  auto G = FinFunctor::make(gdom, d, gom, gmm);

  for (const std::string& o : gdom->objects()) {
    const std::string z = pair_id("0", o);
    const std::string via =
        split_pair_id(split_pair_id(pa.left.on_obj(z)).second).first;
    if (via != gom.at(o))
      throw CriteriaDisagree(
          "transposed right adjoint disagrees with the dual construction at " +
          o);
  }

  std::map<std::string, std::string> adjtab;
  for (const std::string& bo : b->objects())
    for (const std::string& x : d->objects()) {
      const std::string fx = f.on_obj(pair_id(x, bo));
      for (const Mor& w : c->morphisms())
        if (w.src == fx)
          adjtab[pair_id(pair_id(x, bo), w.id)] = adjunct(bo, x, w.id);
    }

  std::size_t triples = 0;
  bool natural = true;
  for (const std::string& bo : b->objects())
    for (const std::string& x : d->objects()) {
      const std::string fx = f.on_obj(pair_id(x, bo));
      for (const std::string& y : c->objects()) {
        ++triples;
        std::set<std::string> images;
        const auto& homs = c->hom(fx, y);
        for (const std::string& w : homs)
          images.insert(adjtab.at(pair_id(pair_id(x, bo), w)));
        const auto& target = d->hom(x, g_of(bo, y));
        if (images.size() != homs.size() ||
            images != std::set<std::string>(target.begin(), target.end()))
          natural = false;
      }
    }
  // Naturality of the adjunct assignment in all three variables.
  for (const std::string& bo : b->objects())
    for (const std::string& x : d->objects()) {
      const std::string fx = f.on_obj(pair_id(x, bo));
      for (const Mor& w : c->morphisms()) {
        if (w.src != fx) continue;
        const std::string aw = adjtab.at(pair_id(pair_id(x, bo), w.id));
        for (const Mor& u : d->morphisms())
          if (u.tgt == x &&
              adjunct(bo, u.src,
                      c->compose(w.id,
                                 f.on_mor(pair_id(u.id, b->identity(bo))))) !=
                  d->compose(aw, u.id))
            natural = false;
        for (const Mor& v : c->morphisms())
          if (v.src == w.tgt &&
              adjunct(bo, x, c->compose(v.id, w.id)) !=
                  d->compose(G.on_mor(pair_id(v.id, b->identity(bo))), aw))
            natural = false;
        for (const Mor& beta : b->morphisms())
          if (beta.tgt == bo &&
              adjunct(beta.src, x,
                      c->compose(w.id,
                                 f.on_mor(pair_id(d->identity(x), beta.id)))) !=
                  d->compose(G.on_mor(pair_id(c->identity(w.tgt), beta.id)),
                             aw))
            natural = false;
      }
    }

  auto twc = tw(c, TwVariant::right);
  auto twd = tw(d, TwVariant::right);
  auto pb = pullback_category(f, twc.fibration.p1());
  auto twdt = twd.fibration.total();
  std::map<std::string, std::string> tom, tmm;
  for (const std::string& o : pb.total->objects()) tom[o] = adjtab.at(o);
  for (const Mor& M : pb.total->morphisms()) {
    const std::string m = pb.to_dom_f.on_mor(M.id);
    const std::string sig = pb.to_dom_g.on_mor(M.id);
    auto [u, beta] = split_pair_id(m);
    const std::string cc = twc.squares.at(sig).second;
    const std::string gimg = G.on_mor(pair_id(cc, beta));
    tmm[M.id] = unique_arrow(
        twdt, tom.at(M.src), tom.at(M.tgt),
        [&](const std::string& cand) {
          const auto& sqr = twd.squares.at(cand);
          return sqr.first == u && sqr.second == gimg;
        },
        "twisted adjunct square");
  }
  auto twf = FinFunctor::make(pb.total, twdt, tom, tmm);

  return TwoVarAdjoint{.right = std::move(G),
                       .pa = std::move(pa),
                       .adjuncts = std::move(adjtab),
                       .checked_triples = triples,
                       .bijection_natural = natural,
                       .tw_functor = std::move(twf)};
}

}  // namespace fibcalc
