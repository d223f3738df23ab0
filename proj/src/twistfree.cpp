#include "fibcalc/twistfree.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibcalc/errors.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"
#include "fibcalc/grothendieck.hpp"

namespace fibcalc {

namespace {

// A morphism-to-be of a square category: endpoints plus the two components
// that determine it.
struct SquareRec {
  std::string src;
  std::string tgt;
  std::string c1;
  std::string c2;
};

using SquareKey = std::tuple<std::string, std::string, std::string,
                             std::string>;

SquareKey key_of(const SquareRec& r) { return {r.src, r.tgt, r.c1, r.c2}; }

// Assigns each record its primary name; on any collision every record
// uniformly gains its source object as a prefix, then its endpoint pair.
std::vector<std::string> resolve_names(
    const std::vector<SquareRec>& recs,
    const std::vector<std::string>& primaries) {
  for (int scheme = 0; scheme < 3; ++scheme) {
    std::vector<std::string> names;
    names.reserve(recs.size());
    std::set<std::string> seen;
    bool ok = true;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      std::string name =
          scheme == 0   ? primaries[i]
          : scheme == 1 ? pair_id(recs[i].src, primaries[i])
                        : pair_id(pair_id(recs[i].src, recs[i].tgt),
                                  primaries[i]);
      if (!seen.insert(name).second) {
        ok = false;
        break;
      }
      names.push_back(std::move(name));
    }
    if (ok) return names;
  }
  throw MalformedCategory("square names collide under every naming scheme");
}

struct SquareCat {
  CatPtr cat;
  std::vector<std::string> names;            // aligned with the records
  std::map<SquareKey, std::string> index;    // (src, tgt, c1, c2) -> name
  std::map<std::string, SquareRec> by_name;  // name -> record
};

// Builds a category whose morphisms are the given records named by their
// component pairs, with identities and composites found through the index.
template <typename IdComponents, typename ComposeComponents>
SquareCat build_square_cat(std::vector<std::string> objects,
                           const std::vector<SquareRec>& recs,
                           IdComponents identity_components,
                           ComposeComponents compose_components) {
  std::vector<std::string> primaries;
  primaries.reserve(recs.size());
  for (const SquareRec& r : recs) primaries.push_back(pair_id(r.c1, r.c2));
  std::vector<std::string> names = resolve_names(recs, primaries);

  SquareCat out;
  out.names = names;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    out.index[key_of(recs[i])] = names[i];
    out.by_name[names[i]] = recs[i];
  }

  RawCat raw;
  std::sort(objects.begin(), objects.end());
  raw.objects = objects;
  for (std::size_t i = 0; i < recs.size(); ++i)
    raw.morphisms.push_back({names[i], recs[i].src, recs[i].tgt});
  for (const std::string& x : objects) {
    auto [i1, i2] = identity_components(x);
    auto it = out.index.find({x, x, i1, i2});
    if (it == out.index.end())
      throw MalformedCategory("identity square of '" + x + "' is missing");
    raw.identities[x] = it->second;
  }
  for (std::size_t i1 = 0; i1 < recs.size(); ++i1)
    for (std::size_t i2 = 0; i2 < recs.size(); ++i2) {
      if (recs[i2].src != recs[i1].tgt) continue;
      auto [c1, c2] = compose_components(recs[i2], recs[i1]);
      auto it = out.index.find({recs[i1].src, recs[i2].tgt, c1, c2});
      if (it == out.index.end())
        throw MalformedCategory("composite of squares '" + names[i1] +
                                "' and '" + names[i2] + "' is missing");
      raw.composition[{names[i2], names[i1]}] = it->second;
    }
  out.cat = std::move(raw).validate();
  return out;
}

}  // namespace

TwistedArrowCat tw(const CatPtr& base, TwVariant variant) {
  std::vector<std::string> objects;
  for (const Mor& f : base->morphisms()) objects.push_back(f.id);

  std::vector<SquareRec> recs;
  for (const Mor& f : base->morphisms())
    for (const Mor& fp : base->morphisms())
      for (const std::string& u : base->hom(f.src, fp.src))
        for (const std::string& b : base->hom(fp.tgt, f.tgt))
          if (base->compose(b, base->compose(fp.id, u)) == f.id)
            recs.push_back({f.id, fp.id, u, b});

  SquareCat sq = build_square_cat(
      objects, recs,
      [&](const std::string& f) {
        return std::pair{base->identity(base->src(f)),
                         base->identity(base->tgt(f))};
      },
      [&](const SquareRec& second, const SquareRec& first) {
        return std::pair{base->compose(second.c1, first.c1),
                         base->compose(first.c2, second.c2)};
      });

  std::map<std::string, std::string> so, sm, to, tm;
  for (const std::string& f : objects) {
    so[f] = base->src(f);
    to[f] = base->tgt(f);
  }
  std::map<std::string, std::pair<std::string, std::string>> squares;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    sm[sq.names[i]] = recs[i].c1;
    tm[sq.names[i]] = recs[i].c2;
    squares[sq.names[i]] = {recs[i].c1, recs[i].c2};
  }

  if (variant == TwVariant::right) {
    FinFunctor s = FinFunctor::make(sq.cat, base, so, sm);
    FinFunctor t = FinFunctor::make(sq.cat, opposite(base), to, tm);
    return {variant, base,
            TwoVarFib::make(sq.cat, base, opposite(base), s, t),
            std::move(squares)};
  }
  CatPtr left_total = opposite(sq.cat);
  FinFunctor s = FinFunctor::make(left_total, opposite(base), so, sm);
  FinFunctor t = FinFunctor::make(left_total, base, to, tm);
  return {variant, base,
          TwoVarFib::make(left_total, opposite(base), base, s, t),
          std::move(squares)};
}

TwoVarFib arrow_cat(const CatPtr& base) {
  std::vector<std::string> objects;
  for (const Mor& f : base->morphisms()) objects.push_back(f.id);

  std::vector<SquareRec> recs;
  for (const Mor& f : base->morphisms())
    for (const Mor& fp : base->morphisms())
      for (const std::string& u : base->hom(f.src, fp.src))
        for (const std::string& v : base->hom(f.tgt, fp.tgt))
          if (base->compose(v, f.id) == base->compose(fp.id, u))
            recs.push_back({f.id, fp.id, u, v});

  SquareCat sq = build_square_cat(
      objects, recs,
      [&](const std::string& f) {
        return std::pair{base->identity(base->src(f)),
                         base->identity(base->tgt(f))};
      },
      [&](const SquareRec& second, const SquareRec& first) {
        return std::pair{base->compose(second.c1, first.c1),
                         base->compose(second.c2, first.c2)};
      });

  std::map<std::string, std::string> so, sm, to, tm;
  for (const std::string& f : objects) {
    so[f] = base->src(f);
    to[f] = base->tgt(f);
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    sm[sq.names[i]] = recs[i].c1;
    tm[sq.names[i]] = recs[i].c2;
  }
  FinFunctor s = FinFunctor::make(sq.cat, base, so, sm);
  FinFunctor t = FinFunctor::make(sq.cat, base, to, tm);
  return TwoVarFib::make(sq.cat, base, base, s, t);
}

FinFunctor twisted_functor(const FinFunctor& f, const TwistedArrowCat& dom_tw,
                           const TwistedArrowCat& cod_tw) {
  if (dom_tw.variant != cod_tw.variant)
    throw BadInput("twisted-arrow variants disagree");
  if (!dom_tw.base->same_presentation(*f.dom()) ||
      !cod_tw.base->same_presentation(*f.cod()))
    throw BadInput("twisted-arrow bases do not match the functor endpoints");

  CatPtr dom_total = dom_tw.fibration.total();
  CatPtr cod_total = cod_tw.fibration.total();
  std::map<SquareKey, std::string> idx;
  for (const auto& [name, comps] : cod_tw.squares)
    idx[{cod_total->src(name), cod_total->tgt(name), comps.first,
         comps.second}] = name;

  std::map<std::string, std::string> om, mm;
  for (const std::string& w : dom_total->objects()) om[w] = f.on_mor(w);
  for (const Mor& m : dom_total->morphisms()) {
    const auto& [u, b] = dom_tw.squares.at(m.id);
    auto it = idx.find({f.on_mor(dom_total->src(m.id)),
                        f.on_mor(dom_total->tgt(m.id)), f.on_mor(u),
                        f.on_mor(b)});
    if (it == idx.end())
      throw MalformedCategory("image of square '" + m.id +
                              "' is not a square of the codomain");
    mm[m.id] = it->second;
  }
  return FinFunctor::make(dom_total, cod_total, std::move(om), std::move(mm));
}

FreeFibration free_fib(const FinFunctor& phi, Variance variance) {
  CatPtr e = phi.dom();
  CatPtr b = phi.cod();
  const bool cov = variance == Variance::covariant;

  // Objects pair a domain object with an arrow leaving (covariant) or
  // entering (contravariant) its image.
  std::vector<std::string> objects;
  std::map<std::string, std::pair<std::string, std::string>> obj_data;
  for (const std::string& x : e->objects())
    for (const Mor& m : b->morphisms()) {
      const std::string& anchor = cov ? m.src : m.tgt;
      if (anchor != phi.on_obj(x)) continue;
      std::string name = pair_id(x, m.id);
      objects.push_back(name);
      obj_data[name] = {x, m.id};
    }

  std::vector<SquareRec> recs;
  for (const std::string& so : objects)
    for (const std::string& to : objects) {
      const auto& [x, beta] = obj_data.at(so);
      const auto& [xp, betap] = obj_data.at(to);
      for (const std::string& g : e->hom(x, xp)) {
        const std::string& d_src = cov ? b->tgt(beta) : b->src(beta);
        const std::string& d_tgt = cov ? b->tgt(betap) : b->src(betap);
        for (const std::string& d : b->hom(d_src, d_tgt)) {
          bool commutes =
              cov ? b->compose(d, beta) ==
                        b->compose(betap, phi.on_mor(g))
                  : b->compose(phi.on_mor(g), beta) == b->compose(betap, d);
          if (commutes) recs.push_back({so, to, g, d});
        }
      }
    }

  SquareCat sq = build_square_cat(
      objects, recs,
      [&](const std::string& ob) {
        const auto& [x, beta] = obj_data.at(ob);
        return std::pair{e->identity(x),
                         b->identity(cov ? b->tgt(beta) : b->src(beta))};
      },
      [&](const SquareRec& second, const SquareRec& first) {
        return std::pair{e->compose(second.c1, first.c1),
                         b->compose(second.c2, first.c2)};
      });

  std::map<std::string, std::string> po, pm, uo, um;
  for (const std::string& ob : objects) {
    const auto& [x, beta] = obj_data.at(ob);
    po[ob] = cov ? b->tgt(beta) : b->src(beta);
  }
  std::map<std::string, std::pair<std::string, std::string>> squares;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    pm[sq.names[i]] = recs[i].c2;
    squares[sq.names[i]] = {recs[i].c1, recs[i].c2};
  }
  FinFunctor projection = FinFunctor::make(sq.cat, b, po, pm);

  for (const std::string& x : e->objects())
    uo[x] = pair_id(x, b->identity(phi.on_obj(x)));
  for (const Mor& g : e->morphisms()) {
    auto it = sq.index.find({uo.at(g.src), uo.at(g.tgt), g.id,
                             phi.on_mor(g.id)});
    if (it == sq.index.end())
      throw MalformedCategory("unit square of '" + g.id + "' is missing");
    um[g.id] = it->second;
  }
  FinFunctor unit = FinFunctor::make(e, sq.cat, uo, um);

  return {variance, phi, std::move(projection), std::move(unit),
          std::move(squares)};
}

FinFunctor extend_to_free(const FreeFibration& fr, const FinFunctor& f,
                          const FinFunctor& target) {
  if (!compose(target, f).same_tables(fr.phi))
    throw BadInput("extension data does not lie over the free base");
  const bool cov = fr.variance == Variance::covariant;
  if (cov ? !cocartesian_fibration(target) : !cartesian_fibration(target))
    throw NotAFibration(
        "extension target does not classify with the required variance");

  CatPtr tot = fr.projection.dom();
  CatPtr y = target.dom();
  std::map<std::string, std::string> om, mm, lift_of;
  for (const std::string& ob : tot->objects()) {
    auto [x, beta] = split_pair_id(ob);
    const std::string& fe = f.on_obj(x);
    std::optional<std::string> lift =
        cov ? find_cocartesian_lift(target, fe, beta)
            : find_cartesian_lift(target, fe, beta);
    if (!lift)
      throw NoLift("no lift of '" + beta + "' at '" + fe + "'");
    lift_of[ob] = *lift;
    om[ob] = cov ? y->tgt(*lift) : y->src(*lift);
  }
  for (const Mor& m : tot->morphisms()) {
    const auto& [g, d] = fr.squares.at(m.id);
    const std::string& l_src = lift_of.at(m.src);
    const std::string& l_tgt = lift_of.at(m.tgt);
    const std::string& fg = f.on_mor(g);
    std::vector<std::string> found;
    for (const std::string& cand : y->hom(om.at(m.src), om.at(m.tgt))) {
      if (target.on_mor(cand) != d) continue;
      bool commutes = cov ? y->compose(cand, l_src) == y->compose(l_tgt, fg)
                          : y->compose(l_tgt, cand) ==
                                y->compose(fg, l_src);
      if (commutes) found.push_back(cand);
    }
    if (found.size() != 1)
      throw NonUniqueFactorisation("factorisation of '" + m.id +
                                   "' through the lifts is not unique");
    mm[m.id] = found.front();
  }
  return FinFunctor::make(tot, y, std::move(om), std::move(mm));
}

DualFreeReport dual_of_free_check(const FinFunctor& phi, const Caps& caps) {
  CatPtr b = phi.cod();
  FreeFibration fr = free_fib(phi, Variance::contravariant);
  TwoVarFib dual = dualize(
      one_variable(fr.projection.dom(), b, fr.projection), Side::A,
      DualDirection::cc);

  TwistedArrowCat tl = tw(b, TwVariant::left);
  PullbackCat pb = pullback_category(phi, tl.fibration.p2());
  TwoVarFib pside = one_variable(
      pb.total, opposite(b), compose(tl.fibration.p1(), pb.to_dom_g));

  EdgeSpec spec;
  spec.cocartesian = true;
  std::optional<FibEquivalence> eq = fib_equivalent(dual, pside, spec, caps);
  if (!eq)
    throw CriteriaDisagree(
        "cocartesian dual and twisted pullback are not fibre-equivalent");
  return {std::move(dual), std::move(pside), std::move(*eq)};
}

namespace {

struct CorrBuild {
  Correspondence out;
  CatPtr e0;
  CatPtr e1;
  SquareCat sq;
};

// Correspondence of a single family total -> interval, where deg reads off
// the degree of each object.
CorrBuild corr_plain(const CatPtr& total, const FinFunctor& deg) {
  CatPtr e0 = fibre_category(deg, "0");
  CatPtr e1 = fibre_category(deg, "1");

  std::vector<std::string> objects;
  for (const Mor& m : total->morphisms())
    if (deg.on_obj(m.src) == "0" && deg.on_obj(m.tgt) == "1")
      objects.push_back(m.id);

  std::vector<SquareRec> recs;
  for (const std::string& v : objects)
    for (const std::string& vp : objects)
      for (const std::string& a : e0->hom(total->src(vp), total->src(v)))
        for (const std::string& c : e1->hom(total->tgt(v), total->tgt(vp)))
          if (total->compose(c, total->compose(v, a)) == vp)
            recs.push_back({v, vp, a, c});

  SquareCat sq = build_square_cat(
      objects, recs,
      [&](const std::string& v) {
        return std::pair{e0->identity(total->src(v)),
                         e1->identity(total->tgt(v))};
      },
      [&](const SquareRec& second, const SquareRec& first) {
        return std::pair{e0->compose(first.c1, second.c1),
                         e1->compose(second.c2, first.c2)};
      });

  std::map<std::string, std::string> ao, am, co, cm;
  for (const std::string& v : objects) {
    ao[v] = total->src(v);
    co[v] = total->tgt(v);
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    am[sq.names[i]] = recs[i].c1;
    cm[sq.names[i]] = recs[i].c2;
  }
  FinFunctor pa = FinFunctor::make(sq.cat, opposite(e0), ao, am);
  FinFunctor pc = FinFunctor::make(sq.cat, e1, co, cm);
  FinFunctor projection = pair_into_product(pa, pc);
  bool cert = left_fibration(projection);
  Correspondence out{sq.cat, projection.cod(), projection, cert};
  return {std::move(out), e0, e1, std::move(sq)};
}

// Correspondence of a family parametrised by the second base: the fibrewise
// construction glued along the straightened transports.
Correspondence corr_param(const TwoVarFib& e) {
  FibTaxonomy tax = classify(e);
  if (!tax.cocart_over_b)
    throw NotAFibration(
        "parametrised correspondence needs cocartesian transports in the "
        "second variable");
  CatPtr b = e.base_b();
  CatPtr total = e.total();
  PseudoFunctor st = straighten(e, Variance::covariant, Side::B);

  std::map<std::string, CorrBuild> cb;
  for (const std::string& bb : b->objects())
    cb.emplace(bb, corr_plain(st.fibre(bb), st.over(bb)));

  std::vector<std::string> objects;
  std::map<std::string, std::string> obj_fib;
  for (const std::string& bb : b->objects())
    for (const std::string& w : cb.at(bb).out.total->objects()) {
      objects.push_back(w);
      obj_fib[w] = bb;
    }
  std::sort(objects.begin(), objects.end());

  // A record pairs a base arrow with a square of the target fibre's
  // correspondence, out of the transported source object.
  struct PRec {
    std::string src;
    std::string tgt;
    std::string beta;
    std::string sigma;
  };
  std::vector<PRec> precs;
  for (const Mor& beta : b->morphisms()) {
    const FinFunctor& tr = st.transport(beta.id);
    const CorrBuild& src_cb = cb.at(beta.src);
    const CorrBuild& tgt_cb = cb.at(beta.tgt);
    for (const std::string& w : src_cb.out.total->objects()) {
      const std::string moved = tr.on_mor(w);
      for (const std::string& wp : tgt_cb.out.total->objects())
        for (const std::string& sg : tgt_cb.out.total->hom(moved, wp))
          precs.push_back({w, wp, beta.id, sg});
    }
  }

  std::vector<SquareRec> as_squares;
  std::vector<std::string> primaries;
  for (const PRec& r : precs) {
    as_squares.push_back({r.src, r.tgt, r.beta, r.sigma});
    primaries.push_back(b->is_identity(r.beta) ? r.sigma
                                               : pair_id(r.beta, r.sigma));
  }
  std::vector<std::string> names = resolve_names(as_squares, primaries);
  std::map<SquareKey, std::string> index;
  for (std::size_t i = 0; i < precs.size(); ++i)
    index[key_of(as_squares[i])] = names[i];

  // Composite of sigma-parts: conjugate the first square through the second
  // transport and the composition coherence, then compose in the fibre.
  auto composite = [&](const PRec& second, const PRec& first) -> PRec {
    const std::string beta = b->compose(second.beta, first.beta);
    const std::string& b2 = b->tgt(second.beta);
    const CorrBuild& cb2 = cb.at(b2);
    const CorrBuild& cb1 = cb.at(b->tgt(first.beta));
    const FinFunctor& tr2 = st.transport(second.beta);

    const SquareRec& s1 = cb1.sq.by_name.at(first.sigma);
    auto moved_it = cb2.sq.index.find(
        {tr2.on_mor(s1.src), tr2.on_mor(s1.tgt), tr2.on_mor(s1.c1),
         tr2.on_mor(s1.c2)});
    if (moved_it == cb2.sq.index.end())
      throw MalformedCategory("transported correspondence square is missing");

    const NatTransf& mu = st.comp_iso(second.beta, first.beta);
    CatPtr fib2 = st.fibre(b2);
    CatPtr fib0 = st.fibre(b->src(first.beta));
    const std::string& x0 = fib0->src(first.src);
    const std::string& y0 = fib0->tgt(first.src);
    const std::string coh_src = st.transport(beta).on_mor(first.src);
    const std::string coh_tgt =
        tr2.on_mor(st.transport(first.beta).on_mor(first.src));
    auto coh_it = cb2.sq.index.find(
        {coh_src, coh_tgt, fib2->inverse(mu.at(x0)), mu.at(y0)});
    if (coh_it == cb2.sq.index.end())
      throw MalformedCategory("coherence correspondence square is missing");

    const CatPtr& corr2 = cb2.out.total;
    std::string sigma = corr2->compose(
        second.sigma, corr2->compose(moved_it->second, coh_it->second));
    return {first.src, second.tgt, beta, sigma};
  };

  RawCat raw;
  raw.objects = objects;
  for (std::size_t i = 0; i < precs.size(); ++i)
    raw.morphisms.push_back({names[i], precs[i].src, precs[i].tgt});
  for (const std::string& w : objects) {
    const std::string& bb = obj_fib.at(w);
    auto it = index.find({w, w, b->identity(bb),
                          cb.at(bb).out.total->identity(w)});
    if (it == index.end())
      throw MalformedCategory("identity of crossing arrow '" + w +
                              "' is missing");
    raw.identities[w] = it->second;
  }
  for (std::size_t i1 = 0; i1 < precs.size(); ++i1)
    for (std::size_t i2 = 0; i2 < precs.size(); ++i2) {
      if (precs[i2].src != precs[i1].tgt) continue;
      PRec comp = composite(precs[i2], precs[i1]);
      auto it = index.find(key_of({comp.src, comp.tgt, comp.beta,
                                   comp.sigma}));
      if (it == index.end())
        throw MalformedCategory("composite crossing square is missing");
      raw.composition[{names[i2], names[i1]}] = it->second;
    }
  CatPtr corr_total = std::move(raw).validate();

  // Degree-zero side, dualised: objects are the degree-zero objects, a
  // morphism x -> x' over beta is a fibre arrow x' -> transport(beta)(x).
  std::map<std::string, std::vector<std::string>> deg0;
  std::vector<std::string> d_objects;
  std::map<std::string, std::string> d_obj_fib;
  for (const std::string& bb : b->objects())
    for (const std::string& x : st.fibre(bb)->objects())
      if (st.over(bb).on_obj(x) == "0") {
        deg0[bb].push_back(x);
        d_objects.push_back(x);
        d_obj_fib[x] = bb;
      }
  std::sort(d_objects.begin(), d_objects.end());

  std::vector<SquareRec> drecs;  // c1 = beta, c2 = fibre arrow
  std::vector<std::string> d_primaries;
  for (const Mor& beta : b->morphisms()) {
    const FinFunctor& tr = st.transport(beta.id);
    CatPtr fib_t = st.fibre(beta.tgt);
    for (const std::string& x : deg0[beta.src])
      for (const std::string& xp : deg0[beta.tgt])
        for (const std::string& v : fib_t->hom(xp, tr.on_obj(x))) {
          drecs.push_back({x, xp, beta.id, v});
          d_primaries.push_back(b->is_identity(beta.id)
                                    ? v
                                    : pair_id(beta.id, v));
        }
  }
  std::vector<std::string> d_names = resolve_names(drecs, d_primaries);
  std::map<SquareKey, std::string> d_index;
  for (std::size_t i = 0; i < drecs.size(); ++i)
    d_index[key_of(drecs[i])] = d_names[i];

  RawCat draw;
  draw.objects = d_objects;
  for (std::size_t i = 0; i < drecs.size(); ++i)
    draw.morphisms.push_back({d_names[i], drecs[i].src, drecs[i].tgt});
  for (const std::string& x : d_objects) {
    const std::string& bb = d_obj_fib.at(x);
    auto it = d_index.find({x, x, b->identity(bb),
                            st.fibre(bb)->identity(x)});
    if (it == d_index.end())
      throw MalformedCategory("identity of dual object '" + x +
                              "' is missing");
    draw.identities[x] = it->second;
  }
  for (std::size_t i1 = 0; i1 < drecs.size(); ++i1)
    for (std::size_t i2 = 0; i2 < drecs.size(); ++i2) {
      if (drecs[i2].src != drecs[i1].tgt) continue;
      const std::string beta = b->compose(drecs[i2].c1, drecs[i1].c1);
      CatPtr fib = st.fibre(b->tgt(beta));
      const NatTransf& mu = st.comp_iso(drecs[i2].c1, drecs[i1].c1);
      const std::string v = fib->compose(
          fib->inverse(mu.at(drecs[i1].src)),
          fib->compose(st.transport(drecs[i2].c1).on_mor(drecs[i1].c2),
                       drecs[i2].c2));
      auto it = d_index.find({drecs[i1].src, drecs[i2].tgt, beta, v});
      if (it == d_index.end())
        throw MalformedCategory("composite dual arrow is missing");
      draw.composition[{d_names[i2], d_names[i1]}] = it->second;
    }
  CatPtr d_total = std::move(draw).validate();
  std::map<std::string, std::string> dpo, dpm;
  for (const std::string& x : d_objects) dpo[x] = d_obj_fib.at(x);
  for (std::size_t i = 0; i < drecs.size(); ++i)
    dpm[d_names[i]] = drecs[i].c1;
  FinFunctor d_proj = FinFunctor::make(d_total, b, dpo, dpm);

  // Degree-one side with its projection to the base.
  std::vector<std::string> deg1;
  for (const std::string& x : total->objects())
    if (e.p1().on_obj(x) == "1") deg1.push_back(x);
  CatPtr e1_total = full_subcategory(total, deg1);
  FinFunctor e1_proj =
      compose(e.p2(), subcategory_inclusion(e1_total, total));

  PullbackCat apex = pullback_category(d_proj, e1_proj);

  const std::string& one_id = e.base_a()->identity("1");
  std::map<std::string, std::string> po, pm;
  for (const std::string& w : objects)
    po[w] = pair_id(total->src(w), total->tgt(w));
  for (std::size_t i = 0; i < precs.size(); ++i) {
    const PRec& r = precs[i];
    const std::string& bb = obj_fib.at(r.src);
    const CorrBuild& tgt_cb = cb.at(b->tgt(r.beta));
    const SquareRec& sg = tgt_cb.sq.by_name.at(r.sigma);
    auto dual_it = d_index.find({total->src(r.src), total->src(r.tgt),
                                 r.beta, sg.c1});
    if (dual_it == d_index.end())
      throw MalformedCategory("dual component of a crossing square is "
                              "missing");
    std::optional<std::string> lift = find_cocartesian_lift(
        e.proj(), total->tgt(r.src), pair_id(one_id, r.beta));
    if (!lift)
      throw NoLift("no transport of '" + r.beta + "' at '" +
                   total->tgt(r.src) + "'");
    const std::string e1_mor = e1_total->compose(sg.c2, *lift);
    pm[names[i]] = pair_id(dual_it->second, e1_mor);
    (void)bb;
  }
  FinFunctor projection =
      FinFunctor::make(corr_total, apex.total, std::move(po), std::move(pm));
  bool cert = left_fibration(projection);
  return {corr_total, apex.total, std::move(projection), cert};
}

}  // namespace

Correspondence corr(const TwoVarFib& e) {
  if (!e.base_a()->same_presentation(*simplex(1)))
    throw BadInput("correspondence requires the interval as first base");
  if (e.base_b()->object_count() == 1 && e.base_b()->morphism_count() == 1)
    return corr_plain(e.total(), e.p1()).out;
  return corr_param(e);
}

}  // namespace fibcalc
