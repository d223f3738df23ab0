#include "fibcalc/fibration.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibcalc/errors.hpp"

namespace fibcalc {

namespace {

// e: w -> x is cartesian when every (v: z -> x, sigma: p(z) -> p(w)) with
// p(e) . sigma = p(v) has exactly one u: z -> w over sigma with e . u = v.
bool cart_at(const FinFunctor& p, const Mor& e) {
  const FinCat& x = *p.dom();
  const FinCat& s = *p.cod();
  const std::string& pe = p.on_mor(e.id);
  const std::string& pw = p.on_obj(e.src);
  for (const std::string& z : x.objects()) {
    const std::string& pz = p.on_obj(z);
    for (const std::string& v : x.hom(z, e.tgt)) {
      for (const std::string& sigma : s.hom(pz, pw)) {
        if (s.compose(pe, sigma) != p.on_mor(v)) continue;
        int count = 0;
        for (const std::string& u : x.hom(z, e.src))
          if (p.on_mor(u) == sigma && x.compose(e.id, u) == v) ++count;
        if (count != 1) return false;
      }
    }
  }
  return true;
}

bool cocart_at(const FinFunctor& p, const Mor& e) {
  const FinCat& x = *p.dom();
  const FinCat& s = *p.cod();
  const std::string& pe = p.on_mor(e.id);
  const std::string& px = p.on_obj(e.tgt);
  for (const std::string& z : x.objects()) {
    const std::string& pz = p.on_obj(z);
    for (const std::string& v : x.hom(e.src, z)) {
      for (const std::string& sigma : s.hom(px, pz)) {
        if (s.compose(sigma, pe) != p.on_mor(v)) continue;
        int count = 0;
        for (const std::string& u : x.hom(e.tgt, z))
          if (p.on_mor(u) == sigma && x.compose(u, e.id) == v) ++count;
        if (count != 1) return false;
      }
    }
  }
  return true;
}

// The pullback of p along the base arrow under e, together with the avatar
// of e inside it.  The local flags of e are the global flags of the avatar
// relative to the projection to the walking arrow.
struct LocalPicture {
  PullbackCat pb;
  std::string edge;
};

LocalPicture local_picture(const FinFunctor& p, const Mor& e) {
  const FinCat& s = *p.cod();
  const std::string& s0 = p.on_obj(e.src);
  const std::string& s1 = p.on_obj(e.tgt);
  std::map<std::string, std::string> om{{"0", s0}, {"1", s1}};
  std::map<std::string, std::string> mm{{"id_0", s.identity(s0)},
                                        {"id_1", s.identity(s1)},
                                        {"0<1", p.on_mor(e.id)}};
  FinFunctor phi =
      FinFunctor::make(simplex(1), p.cod(), std::move(om), std::move(mm));
  LocalPicture out{pullback_category(phi, p), pair_id("0<1", e.id)};
  return out;
}

bool locally_cart_at(const FinFunctor& p, const Mor& e) {
  LocalPicture lp = local_picture(p, e);
  return cart_at(lp.pb.to_dom_f, lp.pb.total->mor(lp.edge));
}

bool locally_cocart_at(const FinFunctor& p, const Mor& e) {
  LocalPicture lp = local_picture(p, e);
  return cocart_at(lp.pb.to_dom_f, lp.pb.total->mor(lp.edge));
}

}  // namespace

EdgeClass edge_class(const FinFunctor& p, const std::string& e) {
  const Mor& m = p.dom()->mor(e);
  EdgeClass c;
  c.cartesian = cart_at(p, m);
  c.cocartesian = cocart_at(p, m);
  LocalPicture lp = local_picture(p, m);
  const Mor& avatar = lp.pb.total->mor(lp.edge);
  c.locally_cartesian = cart_at(lp.pb.to_dom_f, avatar);
  c.locally_cocartesian = cocart_at(lp.pb.to_dom_f, avatar);
  return c;
}

bool is_cartesian_edge(const FinFunctor& p, const std::string& e) {
  return cart_at(p, p.dom()->mor(e));
}

bool is_cocartesian_edge(const FinFunctor& p, const std::string& e) {
  return cocart_at(p, p.dom()->mor(e));
}

// ---------------------------------------------------------------------------
// Cleavages

std::optional<std::string> find_cocartesian_lift(const FinFunctor& p,
                                                 const std::string& x,
                                                 const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  if (b.src != p.on_obj(x))
    throw NoLift("cannot lift '" + beta + "' at '" + x +
                 "': it does not start at the image of '" + x + "'");
  if (base.is_identity(beta)) return p.dom()->identity(x);
  std::vector<std::pair<std::string, std::string>> found;  // (target, edge)
  for (const Mor& e : p.dom()->morphisms()) {
    if (e.src != x || p.on_mor(e.id) != beta) continue;
    if (cocart_at(p, e)) found.emplace_back(e.tgt, e.id);
  }
  if (found.empty()) return std::nullopt;
  return std::min_element(found.begin(), found.end())->second;
}

std::optional<std::string> find_cartesian_lift(const FinFunctor& p,
                                               const std::string& x,
                                               const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  if (b.tgt != p.on_obj(x))
    throw NoLift("cannot lift '" + beta + "' at '" + x +
                 "': it does not end at the image of '" + x + "'");
  if (base.is_identity(beta)) return p.dom()->identity(x);
  std::vector<std::pair<std::string, std::string>> found;  // (source, edge)
  for (const Mor& e : p.dom()->morphisms()) {
    if (e.tgt != x || p.on_mor(e.id) != beta) continue;
    if (cart_at(p, e)) found.emplace_back(e.src, e.id);
  }
  if (found.empty()) return std::nullopt;
  return std::min_element(found.begin(), found.end())->second;
}

std::optional<std::string> find_locally_cocartesian_lift(
    const FinFunctor& p, const std::string& x, const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  if (b.src != p.on_obj(x))
    throw NoLift("cannot lift '" + beta + "' at '" + x +
                 "': it does not start at the image of '" + x + "'");
  if (base.is_identity(beta)) return p.dom()->identity(x);
  std::vector<std::pair<std::string, std::string>> found;
  for (const Mor& e : p.dom()->morphisms()) {
    if (e.src != x || p.on_mor(e.id) != beta) continue;
    if (locally_cocart_at(p, e)) found.emplace_back(e.tgt, e.id);
  }
  if (found.empty()) return std::nullopt;
  return std::min_element(found.begin(), found.end())->second;
}

std::optional<std::string> find_locally_cartesian_lift(const FinFunctor& p,
                                                       const std::string& x,
                                                       const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  if (b.tgt != p.on_obj(x))
    throw NoLift("cannot lift '" + beta + "' at '" + x +
                 "': it does not end at the image of '" + x + "'");
  if (base.is_identity(beta)) return p.dom()->identity(x);
  std::vector<std::pair<std::string, std::string>> found;
  for (const Mor& e : p.dom()->morphisms()) {
    if (e.tgt != x || p.on_mor(e.id) != beta) continue;
    if (locally_cart_at(p, e)) found.emplace_back(e.src, e.id);
  }
  if (found.empty()) return std::nullopt;
  return std::min_element(found.begin(), found.end())->second;
}

// ---------------------------------------------------------------------------
// Fibration predicates

namespace {

std::optional<std::string> fibration_witness(const FinFunctor& p, bool cart,
                                             bool local) {
  for (const std::string& x0 : p.dom()->objects()) {
    const std::string& over = p.on_obj(x0);
    for (const Mor& b : p.cod()->morphisms()) {
      if (p.cod()->is_identity(b.id)) continue;
      if ((cart ? b.tgt : b.src) != over) continue;
      std::optional<std::string> lift =
          cart ? (local ? find_locally_cartesian_lift(p, x0, b.id)
                        : find_cartesian_lift(p, x0, b.id))
               : (local ? find_locally_cocartesian_lift(p, x0, b.id)
                        : find_cocartesian_lift(p, x0, b.id));
      if (!lift)
        return std::string("no ") + (local ? "locally " : "") +
               (cart ? "cartesian" : "cocartesian") + " lift of '" + b.id +
               "' at '" + x0 + "'";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> cartesian_fibration_witness(const FinFunctor& p) {
  return fibration_witness(p, true, false);
}
std::optional<std::string> cocartesian_fibration_witness(const FinFunctor& p) {
  return fibration_witness(p, false, false);
}
std::optional<std::string> locally_cartesian_fibration_witness(
    const FinFunctor& p) {
  return fibration_witness(p, true, true);
}
std::optional<std::string> locally_cocartesian_fibration_witness(
    const FinFunctor& p) {
  return fibration_witness(p, false, true);
}

bool cartesian_fibration(const FinFunctor& p) {
  return !cartesian_fibration_witness(p);
}
bool cocartesian_fibration(const FinFunctor& p) {
  return !cocartesian_fibration_witness(p);
}
bool locally_cartesian_fibration(const FinFunctor& p) {
  return !locally_cartesian_fibration_witness(p);
}
bool locally_cocartesian_fibration(const FinFunctor& p) {
  return !locally_cocartesian_fibration_witness(p);
}

bool left_fibration(const FinFunctor& p) {
  if (!cocartesian_fibration(p)) return false;
  for (const Mor& u : p.dom()->morphisms())
    if (!cocart_at(p, u)) return false;
  return true;
}

bool right_fibration(const FinFunctor& p) {
  if (!cartesian_fibration(p)) return false;
  for (const Mor& u : p.dom()->morphisms())
    if (!cart_at(p, u)) return false;
  return true;
}

bool groupoid_fibres(const FinFunctor& p) {
  for (const Mor& u : p.dom()->morphisms())
    if (p.cod()->is_identity(p.on_mor(u.id)) && !p.dom()->is_iso(u.id))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fibres and transport

CatPtr fibre_category(const FinFunctor& p, const std::string& s) {
  const std::string& id_s = p.cod()->identity(s);
  const FinCat& x = *p.dom();
  RawCat raw;
  for (const std::string& ob : x.objects()) {
    if (p.on_obj(ob) != s) continue;
    raw.objects.push_back(ob);
    raw.identities[ob] = x.identity(ob);
  }
  for (const Mor& u : x.morphisms())
    if (p.on_mor(u.id) == id_s) raw.morphisms.push_back(u);
  for (const Mor& g : raw.morphisms)
    for (const Mor& f : raw.morphisms)
      if (f.tgt == g.src) raw.composition[{g.id, f.id}] = x.compose(g.id, f.id);
  return std::move(raw).validate();
}

FinFunctor fibre_inclusion(const FinFunctor& p, const std::string& s) {
  CatPtr fib = fibre_category(p, s);
  std::map<std::string, std::string> om, mm;
  for (const std::string& ob : fib->objects()) om[ob] = ob;
  for (const Mor& u : fib->morphisms()) mm[u.id] = u.id;
  return FinFunctor::make(fib, p.dom(), std::move(om), std::move(mm));
}

FinFunctor cocartesian_transport(const FinFunctor& p, const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  CatPtr from = fibre_category(p, b.src);
  CatPtr to = fibre_category(p, b.tgt);
  const FinCat& x = *p.dom();
  std::map<std::string, std::string> lift, om, mm;
  for (const std::string& ob : from->objects()) {
    std::optional<std::string> e = find_cocartesian_lift(p, ob, beta);
    if (!e)
      throw NoLift("no cocartesian lift of '" + beta + "' at '" + ob + "'");
    lift[ob] = *e;
    om[ob] = x.tgt(*e);
  }
  const std::string& vertical = base.identity(b.tgt);
  for (const Mor& u : from->morphisms()) {
    const std::string& ex = lift[u.src];
    const std::string& ey = lift[u.tgt];
    const std::string rhs = x.compose(ey, u.id);
    std::vector<std::string> hits;
    for (const std::string& v : x.hom(x.tgt(ex), x.tgt(ey)))
      if (p.on_mor(v) == vertical && x.compose(v, ex) == rhs)
        hits.push_back(v);
    if (hits.size() != 1)
      throw NonUniqueFactorisation(
          "transport of '" + u.id + "' along '" + beta + "' admits " +
          std::to_string(hits.size()) + " vertical factorisations");
    mm[u.id] = hits.front();
  }
  return FinFunctor::make(std::move(from), std::move(to), std::move(om),
                          std::move(mm));
}

FinFunctor cartesian_transport(const FinFunctor& p, const std::string& beta) {
  const FinCat& base = *p.cod();
  const Mor& b = base.mor(beta);
  CatPtr from = fibre_category(p, b.tgt);
  CatPtr to = fibre_category(p, b.src);
  const FinCat& x = *p.dom();
  std::map<std::string, std::string> lift, om, mm;
  for (const std::string& ob : from->objects()) {
    std::optional<std::string> e = find_cartesian_lift(p, ob, beta);
    if (!e)
      throw NoLift("no cartesian lift of '" + beta + "' at '" + ob + "'");
    lift[ob] = *e;
    om[ob] = x.src(*e);
  }
  const std::string& vertical = base.identity(b.src);
  for (const Mor& u : from->morphisms()) {
    const std::string& ex = lift[u.src];
    const std::string& ey = lift[u.tgt];
    const std::string rhs = x.compose(u.id, ex);
    std::vector<std::string> hits;
    for (const std::string& v : x.hom(x.src(ex), x.src(ey)))
      if (p.on_mor(v) == vertical && x.compose(ey, v) == rhs)
        hits.push_back(v);
    if (hits.size() != 1)
      throw NonUniqueFactorisation(
          "transport of '" + u.id + "' along '" + beta + "' admits " +
          std::to_string(hits.size()) + " vertical factorisations");
    mm[u.id] = hits.front();
  }
  return FinFunctor::make(std::move(from), std::move(to), std::move(om),
                          std::move(mm));
}

// ---------------------------------------------------------------------------
// TwoVarFib

TwoVarFib::TwoVarFib(CatPtr total, CatPtr base_a, CatPtr base_b, FinFunctor p1,
                     FinFunctor p2, CatPtr prod, FinFunctor proj, CatPtr x_l,
                     FinFunctor proj_l, CatPtr x_r, FinFunctor proj_r)
    : total_(std::move(total)),
      base_a_(std::move(base_a)),
      base_b_(std::move(base_b)),
      p1_(std::move(p1)),
      p2_(std::move(p2)),
      prod_(std::move(prod)),
      proj_(std::move(proj)),
      x_l_(std::move(x_l)),
      proj_l_(std::move(proj_l)),
      x_r_(std::move(x_r)),
      proj_r_(std::move(proj_r)) {}

TwoVarFib TwoVarFib::make(CatPtr total, CatPtr base_a, CatPtr base_b,
                          FinFunctor p1, FinFunctor p2) {
  if (!p1.dom()->same_presentation(*total) ||
      !p2.dom()->same_presentation(*total))
    throw NonFunctorial("the legs of a two-variable fibration must be "
                        "defined on the given total category");
  if (!p1.cod()->same_presentation(*base_a))
    throw NonFunctorial("the first leg does not land in the first base");
  if (!p2.cod()->same_presentation(*base_b))
    throw NonFunctorial("the second leg does not land in the second base");

  FinFunctor proj = pair_into_product(p1, p2);
  CatPtr prod = proj.cod();

  std::set<std::string> l_mors, r_mors;
  for (const Mor& u : total->morphisms()) {
    if (base_b->is_iso(p2.on_mor(u.id))) l_mors.insert(u.id);
    if (base_a->is_iso(p1.on_mor(u.id))) r_mors.insert(u.id);
  }
  CatPtr x_l = wide_subcategory(total, l_mors);
  CatPtr x_r = wide_subcategory(total, r_mors);
  CatPtr prod_l = product(base_a, core(base_b));
  CatPtr prod_r = product(core(base_a), base_b);

  std::map<std::string, std::string> om_l, mm_l, om_r, mm_r;
  for (const std::string& ob : x_l->objects())
    om_l[ob] = pair_id(p1.on_obj(ob), p2.on_obj(ob));
  for (const Mor& u : x_l->morphisms())
    mm_l[u.id] = pair_id(p1.on_mor(u.id), p2.on_mor(u.id));
  FinFunctor proj_l =
      FinFunctor::make(x_l, prod_l, std::move(om_l), std::move(mm_l));
  for (const std::string& ob : x_r->objects())
    om_r[ob] = pair_id(p1.on_obj(ob), p2.on_obj(ob));
  for (const Mor& u : x_r->morphisms())
    mm_r[u.id] = pair_id(p1.on_mor(u.id), p2.on_mor(u.id));
  FinFunctor proj_r =
      FinFunctor::make(x_r, prod_r, std::move(om_r), std::move(mm_r));

  return TwoVarFib(std::move(total), std::move(base_a), std::move(base_b),
                   std::move(p1), std::move(p2), std::move(prod),
                   std::move(proj), std::move(x_l), std::move(proj_l),
                   std::move(x_r), std::move(proj_r));
}

FinFunctor TwoVarFib::fibre_over_a(const std::string& a) const {
  CatPtr fib = fibre_category(p1_, a);
  std::map<std::string, std::string> om, mm;
  for (const std::string& ob : fib->objects()) om[ob] = p2_.on_obj(ob);
  for (const Mor& u : fib->morphisms()) mm[u.id] = p2_.on_mor(u.id);
  return FinFunctor::make(std::move(fib), base_b_, std::move(om),
                          std::move(mm));
}

FinFunctor TwoVarFib::fibre_over_b(const std::string& b) const {
  CatPtr fib = fibre_category(p2_, b);
  std::map<std::string, std::string> om, mm;
  for (const std::string& ob : fib->objects()) om[ob] = p1_.on_obj(ob);
  for (const Mor& u : fib->morphisms()) mm[u.id] = p1_.on_mor(u.id);
  return FinFunctor::make(std::move(fib), base_a_, std::move(om),
                          std::move(mm));
}

TwoVarFib one_variable(CatPtr total, CatPtr base, const FinFunctor& p) {
  CatPtr point = terminal();
  FinFunctor to_point = constant_functor(total, point, "0");
  return TwoVarFib::make(std::move(total), std::move(base), std::move(point),
                         p, std::move(to_point));
}

// ---------------------------------------------------------------------------
// Taxonomy

namespace {

// Lifts of all base arrows whose named component is invertible.  cart picks
// cartesian lifts at objects over the target, cocartesian at the source.
std::optional<std::string> lift_over_witness(const TwoVarFib& p, bool cart,
                                             bool iso_second) {
  const FinCat& prod = *p.base_product();
  for (const Mor& m : prod.morphisms()) {
    if (prod.is_identity(m.id)) continue;
    auto [ca, cb] = split_pair_id(m.id);
    if (iso_second ? !p.base_b()->is_iso(cb) : !p.base_a()->is_iso(ca))
      continue;
    const std::string& anchor = cart ? m.tgt : m.src;
    for (const std::string& x0 : p.total()->objects()) {
      if (p.proj().on_obj(x0) != anchor) continue;
      std::optional<std::string> lift =
          cart ? find_cartesian_lift(p.proj(), x0, m.id)
               : find_cocartesian_lift(p.proj(), x0, m.id);
      if (!lift)
        return std::string("no ") + (cart ? "cartesian" : "cocartesian") +
               " lift of '" + m.id + "' at '" + x0 + "'";
    }
  }
  return std::nullopt;
}

// Every p1-(co)cartesian edge must project to an invertible arrow in B.
bool leg_edges_over_iso(const TwoVarFib& p, bool cart) {
  for (const Mor& u : p.total()->morphisms()) {
    bool flagged = cart ? cart_at(p.p1(), u) : cocart_at(p.p1(), u);
    if (flagged && !p.base_b()->is_iso(p.p2().on_mor(u.id))) return false;
  }
  return true;
}

// Dual leg: every p2-(co)cartesian edge projects to an invertible arrow in A.
bool leg2_edges_over_iso(const TwoVarFib& p, bool cart) {
  for (const Mor& u : p.total()->morphisms()) {
    bool flagged = cart ? cart_at(p.p2(), u) : cocart_at(p.p2(), u);
    if (flagged && !p.base_a()->is_iso(p.p1().on_mor(u.id))) return false;
  }
  return true;
}

bool all_fibres_over_a(const TwoVarFib& p, bool cart) {
  for (const std::string& a : p.base_a()->objects()) {
    FinFunctor f = p.fibre_over_a(a);
    if (cart ? !cartesian_fibration(f) : !cocartesian_fibration(f))
      return false;
  }
  return true;
}

bool all_fibres_over_b(const TwoVarFib& p, bool cart) {
  for (const std::string& b : p.base_b()->objects()) {
    FinFunctor f = p.fibre_over_b(b);
    if (cart ? !cartesian_fibration(f) : !cocartesian_fibration(f))
      return false;
  }
  return true;
}

bool discrete_core(const FinCat& c) {
  for (const Mor& u : c.morphisms())
    if (c.is_iso(u.id) && !c.is_identity(u.id)) return false;
  return true;
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

std::string route_list(const std::vector<std::pair<std::string, bool>>& rs) {
  std::string out;
  for (const auto& [name, value] : rs) {
    if (!out.empty()) out += ", ";
    out += name + "=" + bool_word(value);
  }
  return out;
}

// Records a multi-route disagreement: a hard error over iso-free bases,
// a witness entry otherwise (on-the-nose lifts over distinct invertible
// arrows need not be interconvertible).
void settle_routes(const TwoVarFib& p, FibTaxonomy& t, const std::string& flag,
                   const std::vector<std::pair<std::string, bool>>& routes) {
  bool first = routes.front().second;
  bool agree = true;
  for (const auto& r : routes) agree = agree && r.second == first;
  if (agree) return;
  std::string msg = flag + " routes disagree: " + route_list(routes);
  if (discrete_core(*p.base_a()) && discrete_core(*p.base_b()))
    throw CriteriaDisagree(msg);
  t.witnesses[flag].push_back(msg);
}

enum class Glue { pre, post };

// The unique v: from -> to over sigma with other . v = target (post) or
// v . other = target (pre).  Existence and uniqueness are consequences of
// the (co)cartesianness of `other`; both are still verified by scan.
std::string unique_filler(const FinCat& x, const FinFunctor& p,
                          const std::string& from, const std::string& to,
                          const std::string& sigma, const std::string& other,
                          const std::string& target, Glue glue) {
  std::vector<std::string> hits;
  for (const std::string& v : x.hom(from, to)) {
    if (p.on_mor(v) != sigma) continue;
    const std::string& got =
        glue == Glue::post ? x.compose(other, v) : x.compose(v, other);
    if (got == target) hits.push_back(v);
  }
  if (hits.empty())
    throw NoLift("no filler '" + from + "' -> '" + to + "' over '" + sigma +
                 "'");
  if (hits.size() > 1)
    throw NonUniqueFactorisation("filler '" + from + "' -> '" + to +
                                 "' over '" + sigma + "' is not unique");
  return hits.front();
}

InterpolationDiagram one_crvortho_diagram(const TwoVarFib& p,
                                          const CatPtr& shape, const Mor& al,
                                          const Mor& be,
                                          const std::string& seed) {
  const FinCat& x = *p.total();
  const FinCat& a = *p.base_a();
  const FinCat& b = *p.base_b();
  const FinFunctor& pr = p.proj();
  auto need = [](std::optional<std::string> lift, const std::string& what) {
    if (!lift) throw NoLift("missing " + what);
    return *lift;
  };

  // Corners: seed over (a', b); transports along the four boundary arrows.
  const std::string m1 =
      need(find_cartesian_lift(pr, seed, pair_id(al.id, b.identity(be.src))),
           "cartesian lift of '" + al.id + "' at '" + seed + "'");
  const std::string s10 = x.src(m1);
  const std::string m2 = need(
      find_cocartesian_lift(pr, seed, pair_id(a.identity(al.tgt), be.id)),
      "cocartesian lift of '" + be.id + "' at '" + seed + "'");
  const std::string t01 = x.tgt(m2);
  const std::string m3 = need(
      find_cocartesian_lift(pr, s10, pair_id(a.identity(al.src), be.id)),
      "cocartesian lift of '" + be.id + "' at '" + s10 + "'");
  const std::string t11p = x.tgt(m3);
  const std::string m4 =
      need(find_cartesian_lift(pr, t01, pair_id(al.id, b.identity(be.tgt))),
           "cartesian lift of '" + al.id + "' at '" + t01 + "'");
  const std::string s11 = x.src(m4);
  const std::string diag = x.compose(m2, m1);
  const std::string vertical = pr.cod()->identity(pair_id(al.src, be.tgt));

  // Two equivalent recipes for the comparison edge; they must agree.
  const std::string h =
      unique_filler(x, pr, s10, s11, pair_id(a.identity(al.src), be.id), m4,
                    diag, Glue::post);
  const std::string eps1 =
      unique_filler(x, pr, t11p, s11, vertical, m3, h, Glue::pre);
  const std::string k =
      unique_filler(x, pr, t11p, t01, pair_id(al.id, b.identity(be.tgt)), m3,
                    diag, Glue::pre);
  const std::string eps2 =
      unique_filler(x, pr, t11p, s11, vertical, m4, k, Glue::post);
  if (eps1 != eps2)
    throw CriteriaDisagree("interpolation recipes disagree over ('" + al.id +
                           "', '" + be.id + "') at '" + seed + "'");

  std::map<std::string, std::string> om{
      {"00", seed}, {"01", t01}, {"10", s10}, {"11", s11}, {"11p", t11p}};
  std::map<std::string, std::string> mm{{"id_00", x.identity(seed)},
                                        {"id_01", x.identity(t01)},
                                        {"id_10", x.identity(s10)},
                                        {"id_11", x.identity(s11)},
                                        {"id_11p", x.identity(t11p)},
                                        {"10<00", m1},
                                        {"00<01", m2},
                                        {"10<11p", m3},
                                        {"11<01", m4},
                                        {"11p<11", eps1},
                                        {"10<01", diag},
                                        {"10<11", h},
                                        {"11p<01", k}};
  FinFunctor image =
      FinFunctor::make(shape, p.total(), std::move(om), std::move(mm));
  return InterpolationDiagram{shape, std::move(image), eps1,
                              al.id, be.id,           seed};
}

std::vector<InterpolationDiagram> crvortho_diagrams(const TwoVarFib& p) {
  std::vector<InterpolationDiagram> out;
  CatPtr shape = interpolation_shape_crvortho();
  for (const Mor& al : p.base_a()->morphisms()) {
    if (p.base_a()->is_identity(al.id)) continue;
    for (const Mor& be : p.base_b()->morphisms()) {
      if (p.base_b()->is_identity(be.id)) continue;
      const std::string corner = pair_id(al.tgt, be.src);
      for (const std::string& seed : p.total()->objects())
        if (p.proj().on_obj(seed) == corner)
          out.push_back(one_crvortho_diagram(p, shape, al, be, seed));
    }
  }
  return out;
}

InterpolationDiagram one_gray_diagram(const TwoVarFib& p, const CatPtr& shape,
                                      const Mor& al, const Mor& be,
                                      const std::string& seed) {
  const FinCat& x = *p.total();
  const FinCat& a = *p.base_a();
  const FinCat& b = *p.base_b();
  const FinFunctor& pr = p.proj();
  auto need = [](std::optional<std::string> lift, const std::string& what) {
    if (!lift) throw NoLift("missing " + what);
    return *lift;
  };

  const std::string n1 =
      need(find_cocartesian_lift(pr, seed, pair_id(al.id, b.identity(be.src))),
           "cocartesian lift of '" + al.id + "' at '" + seed + "'");
  const std::string s10 = x.tgt(n1);
  const std::string n2 = need(
      find_cocartesian_lift(p.proj_r(), seed,
                            pair_id(a.identity(al.src), be.id)),
      "fibrewise cocartesian lift of '" + be.id + "' at '" + seed + "'");
  const std::string t01 = x.tgt(n2);
  const std::string n3 = need(
      find_cocartesian_lift(p.proj_r(), s10,
                            pair_id(a.identity(al.tgt), be.id)),
      "fibrewise cocartesian lift of '" + be.id + "' at '" + s10 + "'");
  const std::string t11p = x.tgt(n3);
  const std::string n4 =
      need(find_cocartesian_lift(pr, t01, pair_id(al.id, b.identity(be.tgt))),
           "cocartesian lift of '" + al.id + "' at '" + t01 + "'");
  const std::string t11 = x.tgt(n4);

  // The composite of the two chosen lifts is the locally cocartesian lift
  // of the diagonal; the comparison edge is its vertical factorisation
  // against the other composite.
  const std::string c = x.compose(n3, n1);
  if (!locally_cocart_at(pr, x.mor(c)))
    throw CriteriaDisagree("composite lift over ('" + al.id + "', '" + be.id +
                           "') at '" + seed + "' is not locally cocartesian");
  const std::string rhs = x.compose(n4, n2);
  const std::string vertical = pr.cod()->identity(pair_id(al.tgt, be.tgt));
  const std::string eps =
      unique_filler(x, pr, t11p, t11, vertical, c, rhs, Glue::pre);

  std::map<std::string, std::string> om{
      {"00", seed}, {"01", t01}, {"10", s10}, {"11", t11}, {"11p", t11p}};
  std::map<std::string, std::string> mm{{"id_00", x.identity(seed)},
                                        {"id_01", x.identity(t01)},
                                        {"id_10", x.identity(s10)},
                                        {"id_11", x.identity(t11)},
                                        {"id_11p", x.identity(t11p)},
                                        {"00<10", n1},
                                        {"00<01", n2},
                                        {"10<11p", n3},
                                        {"01<11", n4},
                                        {"11p<11", eps},
                                        {"00<11p", c},
                                        {"00<11", rhs},
                                        {"10<11", x.compose(eps, n3)}};
  FinFunctor image =
      FinFunctor::make(shape, p.total(), std::move(om), std::move(mm));
  return InterpolationDiagram{shape, std::move(image), eps,
                              al.id, be.id,           seed};
}

std::vector<InterpolationDiagram> gray_diagrams(const TwoVarFib& p) {
  std::vector<InterpolationDiagram> out;
  CatPtr shape = interpolation_shape_gray();
  for (const Mor& al : p.base_a()->morphisms()) {
    if (p.base_a()->is_identity(al.id)) continue;
    for (const Mor& be : p.base_b()->morphisms()) {
      if (p.base_b()->is_identity(be.id)) continue;
      const std::string corner = pair_id(al.src, be.src);
      for (const std::string& seed : p.total()->objects())
        if (p.proj().on_obj(seed) == corner)
          out.push_back(one_gray_diagram(p, shape, al, be, seed));
    }
  }
  return out;
}

}  // namespace

CatPtr interpolation_shape_crvortho() {
  return poset_category({"00", "01", "10", "11", "11p"},
                        {{"10", "00"},
                         {"00", "01"},
                         {"10", "11p"},
                         {"11p", "11"},
                         {"11", "01"}});
}

CatPtr interpolation_shape_gray() {
  return poset_category({"00", "01", "10", "11", "11p"},
                        {{"00", "10"},
                         {"00", "01"},
                         {"10", "11p"},
                         {"11p", "11"},
                         {"01", "11"}});
}

bool FibTaxonomy::flag(const std::string& name) const {
  for (const auto& [n, v] : flags())
    if (n == name) return v;
  throw UsageError("unknown taxonomy flag '" + name + "'");
}

std::vector<std::pair<std::string, bool>> FibTaxonomy::flags() const {
  return {{"cartesian_fib", cartesian_fib},
          {"cocartesian_fib", cocartesian_fib},
          {"locally_cocartesian_fib", locally_cocartesian_fib},
          {"locally_cartesian_fib", locally_cartesian_fib},
          {"left_fib", left_fib},
          {"right_fib", right_fib},
          {"bicartesian", bicartesian},
          {"cocart_over_A", cocart_over_a},
          {"cart_over_A", cart_over_a},
          {"cocart_over_B", cocart_over_b},
          {"cart_over_B", cart_over_b},
          {"curved_ortho", curved_ortho},
          {"gray", gray},
          {"op_gray", op_gray},
          {"ortho", ortho},
          {"bifib", bifib}};
}

FibTaxonomy classify(const TwoVarFib& p) {
  FibTaxonomy t;
  auto settle = [&t](const std::string& name, bool& slot,
                     std::optional<std::string> w) {
    slot = !w.has_value();
    if (w) t.witnesses[name].push_back(*w);
  };

  settle("cartesian_fib", t.cartesian_fib,
         cartesian_fibration_witness(p.proj()));
  settle("cocartesian_fib", t.cocartesian_fib,
         cocartesian_fibration_witness(p.proj()));
  settle("locally_cocartesian_fib", t.locally_cocartesian_fib,
         locally_cocartesian_fibration_witness(p.proj()));
  settle("locally_cartesian_fib", t.locally_cartesian_fib,
         locally_cartesian_fibration_witness(p.proj()));

  {
    std::optional<std::string> w;
    if (!t.cocartesian_fib)
      w = "not a cocartesian fibration";
    else
      for (const Mor& u : p.total()->morphisms())
        if (!cocart_at(p.proj(), u)) {
          w = "morphism '" + u.id + "' is not cocartesian";
          break;
        }
    settle("left_fib", t.left_fib, std::move(w));
  }
  {
    std::optional<std::string> w;
    if (!t.cartesian_fib)
      w = "not a cartesian fibration";
    else
      for (const Mor& u : p.total()->morphisms())
        if (!cart_at(p.proj(), u)) {
          w = "morphism '" + u.id + "' is not cartesian";
          break;
        }
    settle("right_fib", t.right_fib, std::move(w));
  }
  {
    std::optional<std::string> w;
    if (!t.cartesian_fib)
      w = "not a cartesian fibration";
    else if (!t.cocartesian_fib)
      w = "not a cocartesian fibration";
    settle("bicartesian", t.bicartesian, std::move(w));
  }

  settle("cocart_over_A", t.cocart_over_a, lift_over_witness(p, false, true));
  settle("cart_over_A", t.cart_over_a, lift_over_witness(p, true, true));
  settle("cocart_over_B", t.cocart_over_b, lift_over_witness(p, false, false));
  settle("cart_over_B", t.cart_over_b, lift_over_witness(p, true, false));

  // Curved orthofibration, along five equivalent routes.
  const bool co_def = t.cart_over_a && t.cocart_over_b;
  const bool co_leg1 = cartesian_fibration(p.p1()) &&
                       leg_edges_over_iso(p, true) && all_fibres_over_a(p, false);
  const bool co_right = t.cart_over_a && cocartesian_fibration(p.proj_r());
  const bool co_leg2 = cocartesian_fibration(p.p2()) &&
                       leg2_edges_over_iso(p, false) &&
                       all_fibres_over_b(p, true);
  const bool co_left = t.cocart_over_b && cartesian_fibration(p.proj_l());
  settle_routes(p, t, "curved_ortho",
                {{"definition", co_def},
                 {"first leg", co_leg1},
                 {"right part", co_right},
                 {"second leg", co_leg2},
                 {"left part", co_left}});
  t.curved_ortho = co_def;
  if (!co_def)
    t.witnesses["curved_ortho"].push_back(
        !t.cart_over_a ? "over A: " + t.witnesses["cart_over_A"].front()
                       : "over B: " + t.witnesses["cocart_over_B"].front());

  // Gray fibration: cocartesian over A with fibrewise cocartesian right
  // part; second route through the first leg.
  const bool gr_def = t.cocart_over_a && cocartesian_fibration(p.proj_r());
  const bool gr_leg = cocartesian_fibration(p.p1()) &&
                      leg_edges_over_iso(p, false) &&
                      all_fibres_over_a(p, false);
  settle_routes(p, t, "gray", {{"definition", gr_def}, {"first leg", gr_leg}});
  t.gray = gr_def;
  if (!gr_def)
    t.witnesses["gray"].push_back(
        !t.cocart_over_a
            ? "over A: " + t.witnesses["cocart_over_A"].front()
            : "right part: " + *cocartesian_fibration_witness(p.proj_r()));

  const bool og_def = t.cart_over_a && cartesian_fibration(p.proj_r());
  const bool og_leg = cartesian_fibration(p.p1()) &&
                      leg_edges_over_iso(p, true) && all_fibres_over_a(p, true);
  settle_routes(p, t, "op_gray",
                {{"definition", og_def}, {"first leg", og_leg}});
  t.op_gray = og_def;
  if (!og_def)
    t.witnesses["op_gray"].push_back(
        !t.cart_over_a
            ? "over A: " + t.witnesses["cart_over_A"].front()
            : "right part: " + *cartesian_fibration_witness(p.proj_r()));

  if (!t.curved_ortho) {
    t.ortho = false;
    t.witnesses["ortho"].push_back("not a curved orthofibration");
  } else {
    t.ortho = true;
    for (const InterpolationDiagram& d : crvortho_diagrams(p)) {
      if (p.total()->is_iso(d.interpolating_edge)) continue;
      t.ortho = false;
      t.witnesses["ortho"].push_back("interpolating edge '" +
                                     d.interpolating_edge + "' over ('" +
                                     d.alpha + "', '" + d.beta + "') at '" +
                                     d.seed + "' is not invertible");
      break;
    }
  }

  // Bifibration, along five equivalent routes.  The left part carries the
  // contravariant structure, so conservativity upgrades it to a right
  // fibration; the right part dually becomes a left fibration.
  const bool bi_def = t.curved_ortho && p.proj().is_conservative();
  const bool bi_grp = t.curved_ortho && groupoid_fibres(p.proj());
  const bool bi_left = t.curved_ortho && right_fibration(p.proj_l());
  const bool bi_right = t.curved_ortho && left_fibration(p.proj_r());
  bool bi_legs = cartesian_fibration(p.p1()) && cocartesian_fibration(p.p2());
  if (bi_legs)
    for (const Mor& u : p.total()->morphisms()) {
      if (cart_at(p.p1(), u) != p.base_b()->is_iso(p.p2().on_mor(u.id)) ||
          cocart_at(p.p2(), u) != p.base_a()->is_iso(p.p1().on_mor(u.id))) {
        bi_legs = false;
        break;
      }
    }
  settle_routes(p, t, "bifib",
                {{"definition", bi_def},
                 {"groupoid fibres", bi_grp},
                 {"left part", bi_left},
                 {"right part", bi_right},
                 {"legs", bi_legs}});
  t.bifib = bi_def;
  if (!bi_def) {
    if (!t.curved_ortho)
      t.witnesses["bifib"].push_back("not a curved orthofibration");
    else
      for (const Mor& u : p.total()->morphisms())
        if (p.base_product()->is_iso(p.proj().on_mor(u.id)) &&
            !p.total()->is_iso(u.id)) {
          t.witnesses["bifib"].push_back("morphism '" + u.id +
                                         "' lies over an isomorphism but is "
                                         "not invertible");
          break;
        }
  }

  return t;
}

std::vector<InterpolationDiagram> interpolating_edges(const TwoVarFib& p,
                                                      InterpolationMode mode) {
  FibTaxonomy t = classify(p);
  if (mode == InterpolationMode::crvortho) {
    if (!t.curved_ortho)
      throw NotAFibration("interpolation requires a curved orthofibration: " +
                          t.witnesses["curved_ortho"].front());
    return crvortho_diagrams(p);
  }
  if (!t.gray)
    throw NotAFibration("interpolation requires a Gray fibration: " +
                        t.witnesses["gray"].front());
  return gray_diagrams(p);
}

// ---------------------------------------------------------------------------
// Cross-checks

namespace {

void push(CrossCheckReport& r, std::string name, bool pass,
          std::string detail) {
  r.entries.push_back({std::move(name), pass, std::move(detail)});
}

// (Co)cartesianness from local (co)cartesianness: a functor with locally
// (co)cartesian lifts is a (co)cartesian fibration exactly when composites
// of locally (co)cartesian edges remain locally (co)cartesian.
void check_local_composites(const TwoVarFib& p, bool cart,
                            CrossCheckReport& out) {
  const FinFunctor& pr = p.proj();
  const FinCat& x = *p.total();
  std::map<std::string, bool> local;
  for (const Mor& u : x.morphisms())
    local[u.id] = cart ? locally_cart_at(pr, u) : locally_cocart_at(pr, u);
  bool closed = true;
  for (const Mor& g : x.morphisms()) {
    if (!local[g.id]) continue;
    for (const Mor& f : x.morphisms()) {
      if (!local[f.id] || f.tgt != g.src) continue;
      if (!local[x.compose(g.id, f.id)]) {
        closed = false;
        break;
      }
    }
    if (!closed) break;
  }
  const bool global = cart ? cartesian_fibration(pr) : cocartesian_fibration(pr);
  const bool local_fib = cart ? locally_cartesian_fibration(pr)
                              : locally_cocartesian_fibration(pr);
  const bool derived = local_fib && closed;
  push(out,
       cart ? "cartesian via locally cartesian composites"
            : "cocartesian via locally cocartesian composites",
       global == derived,
       std::string("fibration=") + bool_word(global) + " locally=" +
           bool_word(local_fib) + " composites_closed=" + bool_word(closed));
}

// Edges over an invertible arrow in one factor: the (co)cartesian flag
// relative to the pairing and relative to the other leg must agree.
void check_projection_to_iso(const TwoVarFib& p, CrossCheckReport& out) {
  const FinCat& x = *p.total();
  std::string bad;
  for (const Mor& u : x.morphisms()) {
    if (p.base_a()->is_iso(p.p1().on_mor(u.id))) {
      if (cocart_at(p.proj(), u) != cocart_at(p.p2(), u) ||
          cart_at(p.proj(), u) != cart_at(p.p2(), u)) {
        bad = "'" + u.id + "' (first component invertible)";
        break;
      }
    }
    if (p.base_b()->is_iso(p.p2().on_mor(u.id))) {
      if (cocart_at(p.proj(), u) != cocart_at(p.p1(), u) ||
          cart_at(p.proj(), u) != cart_at(p.p1(), u)) {
        bad = "'" + u.id + "' (second component invertible)";
        break;
      }
    }
  }
  push(out, "projection to invertibles", bad.empty(),
       bad.empty() ? "all edges over invertible components agree"
                   : "disagreement at " + bad);
}

// Lifts over A x (invertibles of B) in three forms: by direct search, via
// the first leg with image constraint, and via literally classified edges
// of the projection to the product.
void check_over_first_factor(const TwoVarFib& p, bool cart,
                             CrossCheckReport& out) {
  const bool direct = !lift_over_witness(p, cart, true);
  const bool leg = (cart ? cartesian_fibration(p.p1())
                         : cocartesian_fibration(p.p1())) &&
                   leg_edges_over_iso(p, cart);
  bool image_form = cart ? cartesian_fibration(p.p1())
                         : cocartesian_fibration(p.p1());
  if (image_form) {
    FinFunctor pr1 = proj1(p.base_a(), p.base_b());
    for (const Mor& u : p.total()->morphisms()) {
      const bool flagged = cart ? cart_at(p.p1(), u) : cocart_at(p.p1(), u);
      if (!flagged) continue;
      const Mor& m = pr1.dom()->mor(p.proj().on_mor(u.id));
      if (cart ? !cart_at(pr1, m) : !cocart_at(pr1, m)) {
        image_form = false;
        break;
      }
    }
  }
  push(out,
       cart ? "cartesian over first factor criteria"
            : "cocartesian over first factor criteria",
       direct == leg && leg == image_form,
       std::string("direct=") + bool_word(direct) + " leg=" + bool_word(leg) +
           " image=" + bool_word(image_form));
}

bool fibrewise_preserved(const FinFunctor& transport, const FinFunctor& from,
                         const FinFunctor& to, bool cart) {
  for (const Mor& u : from.dom()->morphisms()) {
    const bool flagged = cart ? cart_at(from, u) : cocart_at(from, u);
    if (!flagged) continue;
    const Mor& v = to.dom()->mor(transport.on_mor(u.id));
    if (cart ? !cart_at(to, v) : !cocart_at(to, v)) return false;
  }
  return true;
}

void check_ortho_triple(const TwoVarFib& p, const FibTaxonomy& t,
                        CrossCheckReport& out) {
  if (!t.curved_ortho) {
    push(out, "orthofibration criteria", true,
         "not applicable: not a curved orthofibration");
    return;
  }
  bool edges_invertible = true;
  for (const InterpolationDiagram& d : interpolating_edges(p, InterpolationMode::crvortho))
    edges_invertible =
        edges_invertible && p.total()->is_iso(d.interpolating_edge);

  // Contravariant transport over A preserves fibrewise cocartesian edges.
  bool contra = true;
  for (const Mor& al : p.base_a()->morphisms()) {
    if (p.base_a()->is_identity(al.id)) continue;
    FinFunctor tr = cartesian_transport(p.p1(), al.id);
    if (!fibrewise_preserved(tr, p.fibre_over_a(al.tgt),
                             p.fibre_over_a(al.src), false)) {
      contra = false;
      break;
    }
  }
  // Covariant transport over B preserves fibrewise cartesian edges.
  bool cov = true;
  for (const Mor& be : p.base_b()->morphisms()) {
    if (p.base_b()->is_identity(be.id)) continue;
    FinFunctor tr = cocartesian_transport(p.p2(), be.id);
    if (!fibrewise_preserved(tr, p.fibre_over_b(be.src),
                             p.fibre_over_b(be.tgt), true)) {
      cov = false;
      break;
    }
  }
  push(out, "orthofibration criteria",
       edges_invertible == contra && contra == cov,
       std::string("interpolation=") + bool_word(edges_invertible) +
           " contravariant_transport=" + bool_word(contra) +
           " covariant_transport=" + bool_word(cov));
}

void check_bifib_routes(const TwoVarFib& p, const FibTaxonomy& t,
                        CrossCheckReport& out) {
  const bool b1 = t.curved_ortho && p.proj().is_conservative();
  const bool b2 = t.curved_ortho && groupoid_fibres(p.proj());
  const bool b3 = t.curved_ortho && right_fibration(p.proj_l());
  const bool b4 = t.curved_ortho && left_fibration(p.proj_r());
  bool b5 = cartesian_fibration(p.p1()) && cocartesian_fibration(p.p2());
  if (b5)
    for (const Mor& u : p.total()->morphisms())
      if (cart_at(p.p1(), u) != p.base_b()->is_iso(p.p2().on_mor(u.id)) ||
          cocart_at(p.p2(), u) != p.base_a()->is_iso(p.p1().on_mor(u.id))) {
        b5 = false;
        break;
      }
  push(out, "bifibration criteria",
       b1 == b2 && b2 == b3 && b3 == b4 && b4 == b5,
       route_list({{"definition", b1},
                   {"groupoid fibres", b2},
                   {"left part", b3},
                   {"right part", b4},
                   {"legs", b5}}));
}

void check_gray_five(const TwoVarFib& p, const FibTaxonomy& t,
                     CrossCheckReport& out) {
  if (!t.gray) {
    push(out, "cocartesian via Gray criteria", true,
         "not applicable: not a Gray fibration");
    return;
  }
  const bool f1 = cocartesian_fibration(p.proj());

  // Restriction to every bent triangle through the second factor first.
  bool f2 = true;
  CatPtr two = simplex(2);
  for (const Mor& al : p.base_a()->morphisms()) {
    if (!f2) break;
    if (p.base_a()->is_identity(al.id)) continue;
    for (const Mor& be : p.base_b()->morphisms()) {
      if (p.base_b()->is_identity(be.id)) continue;
      std::map<std::string, std::string> om{
          {"0", pair_id(al.src, be.src)},
          {"1", pair_id(al.src, be.tgt)},
          {"2", pair_id(al.tgt, be.tgt)}};
      std::map<std::string, std::string> mm{
          {"id_0", p.base_product()->identity(om["0"])},
          {"id_1", p.base_product()->identity(om["1"])},
          {"id_2", p.base_product()->identity(om["2"])},
          {"0<1", pair_id(p.base_a()->identity(al.src), be.id)},
          {"1<2", pair_id(al.id, p.base_b()->identity(be.tgt))},
          {"0<2", pair_id(al.id, be.id)}};
      FinFunctor tau = FinFunctor::make(two, p.base_product(), std::move(om),
                                        std::move(mm));
      PullbackCat pb = pullback_category(tau, p.proj());
      if (!cocartesian_fibration(pb.to_dom_f)) {
        f2 = false;
        break;
      }
    }
  }

  bool f3 = true;
  for (const InterpolationDiagram& d : gray_diagrams(p))
    f3 = f3 && p.total()->is_iso(d.interpolating_edge);

  // Covariant transport over A preserves fibrewise cocartesian edges, and
  // is moreover a strict map of fibrations over B.
  bool f4 = true;
  bool f5 = true;
  for (const Mor& al : p.base_a()->morphisms()) {
    if (p.base_a()->is_identity(al.id)) continue;
    FinFunctor tr = cocartesian_transport(p.p1(), al.id);
    FinFunctor from = p.fibre_over_a(al.src);
    FinFunctor to = p.fibre_over_a(al.tgt);
    const bool preserved = fibrewise_preserved(tr, from, to, false);
    if (!preserved) f4 = false;
    if (!preserved) f5 = false;
    for (const std::string& ob : tr.dom()->objects())
      if (p.p2().on_obj(tr.on_obj(ob)) != p.p2().on_obj(ob)) f5 = false;
    for (const Mor& u : tr.dom()->morphisms())
      if (p.p2().on_mor(tr.on_mor(u.id)) != p.p2().on_mor(u.id)) f5 = false;
  }
  // Comparison between the transport of a composite and the composite of
  // transports must be an invertible vertical edge.
  for (const Mor& al : p.base_a()->morphisms()) {
    if (!f5) break;
    if (p.base_a()->is_identity(al.id)) continue;
    for (const Mor& al2 : p.base_a()->morphisms()) {
      if (p.base_a()->is_identity(al2.id) || al2.src != al.tgt) continue;
      const std::string whole = p.base_a()->compose(al2.id, al.id);
      for (const std::string& ob : p.total()->objects()) {
        if (p.p1().on_obj(ob) != al.src) continue;
        auto e1 = find_cocartesian_lift(p.p1(), ob, al.id);
        auto e12 = find_cocartesian_lift(p.p1(), ob, whole);
        if (!e1 || !e12) {
          f5 = false;
          break;
        }
        auto e2 = find_cocartesian_lift(p.p1(), p.total()->tgt(*e1), al2.id);
        if (!e2) {
          f5 = false;
          break;
        }
        const std::string step = p.total()->compose(*e2, *e1);
        const std::string cmp = unique_filler(
            *p.total(), p.p1(), p.total()->tgt(*e12), p.total()->tgt(*e2),
            p.base_a()->identity(al2.tgt), *e12, step, Glue::pre);
        if (!p.total()->is_iso(cmp)) {
          f5 = false;
          break;
        }
      }
      if (!f5) break;
    }
  }
  push(out, "cocartesian via Gray criteria",
       f1 == f2 && f2 == f3 && f3 == f4 && f4 == f5,
       route_list({{"fibration", f1},
                   {"triangles", f2},
                   {"interpolation", f3},
                   {"transport", f4},
                   {"strict functoriality", f5}}));
}

void check_left_family(const TwoVarFib& p, const FibTaxonomy& t,
                       CrossCheckReport& out) {
  if (!t.gray) {
    push(out, "left fibration via Gray criteria", true,
         "not applicable: not a Gray fibration");
    return;
  }
  const bool l1 = left_fibration(p.proj());
  const bool l2 = p.proj().is_conservative();
  const bool l3 = groupoid_fibres(p.proj());
  push(out, "left fibration via Gray criteria", l1 == l2 && l2 == l3,
       route_list(
           {{"left fibration", l1}, {"conservative", l2}, {"groupoid", l3}}));
}

void check_implications(const TwoVarFib& p, const FibTaxonomy& t,
                        CrossCheckReport& out) {
  std::vector<std::string> broken;
  auto implies = [&broken](const std::string& name, bool from, bool to) {
    if (from && !to) broken.push_back(name);
  };
  implies("bifib=>ortho", t.bifib, t.ortho);
  implies("ortho=>curved_ortho", t.ortho, t.curved_ortho);
  implies("cocartesian_fib=>gray", t.cocartesian_fib, t.gray);
  implies("gray=>locally_cocartesian_fib", t.gray, t.locally_cocartesian_fib);
  implies("cartesian_fib=>locally_cartesian_fib", t.cartesian_fib,
          t.locally_cartesian_fib);
  implies("left_fib=>cocartesian_fib", t.left_fib, t.cocartesian_fib);
  implies("right_fib=>cartesian_fib", t.right_fib, t.cartesian_fib);
  if (t.left_fib != (t.cocartesian_fib && p.proj().is_conservative()))
    broken.push_back("left_fib<=>cocartesian+conservative");
  if (t.right_fib != (t.cartesian_fib && p.proj().is_conservative()))
    broken.push_back("right_fib<=>cartesian+conservative");
  if (t.bifib != (t.ortho && p.proj().is_conservative()))
    broken.push_back("bifib<=>ortho+conservative");
  std::string detail;
  for (const std::string& b : broken)
    detail += (detail.empty() ? "" : ", ") + b;
  push(out, "taxonomy implications", broken.empty(),
       broken.empty() ? "all implications hold" : detail);
}

}  // namespace

bool CrossCheckReport::all_pass() const {
  for (const CheckEntry& e : entries)
    if (!e.pass) return false;
  return true;
}

CrossCheckReport cross_check(const TwoVarFib& p) {
  CrossCheckReport out;
  FibTaxonomy t = classify(p);
  // A check that cannot even be carried out (a missing lift or ambiguous
  // factorisation inside an auxiliary construction) counts as failed.
  auto guarded = [&out](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      push(out, name, false, std::string("aborted: ") + e.what());
    }
  };
  guarded("cartesian via locally cartesian composites",
          [&] { check_local_composites(p, true, out); });
  guarded("cocartesian via locally cocartesian composites",
          [&] { check_local_composites(p, false, out); });
  guarded("projection to invertibles", [&] { check_projection_to_iso(p, out); });
  guarded("cartesian over first factor criteria",
          [&] { check_over_first_factor(p, true, out); });
  guarded("cocartesian over first factor criteria",
          [&] { check_over_first_factor(p, false, out); });
  guarded("orthofibration criteria", [&] { check_ortho_triple(p, t, out); });
  guarded("bifibration criteria", [&] { check_bifib_routes(p, t, out); });
  guarded("cocartesian via Gray criteria", [&] { check_gray_five(p, t, out); });
  guarded("left fibration via Gray criteria",
          [&] { check_left_family(p, t, out); });
  guarded("taxonomy implications", [&] { check_implications(p, t, out); });
  return out;
}

}  // namespace fibcalc
