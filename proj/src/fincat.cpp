#include "fibcalc/fincat.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace fibcalc {

namespace {

std::string paren(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

template <typename T>
bool sorted_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

CatPtr FinCat::validate(
    std::vector<std::string> objects, std::vector<Mor> morphisms,
    std::map<std::string, std::string> identities,
    std::map<std::pair<std::string, std::string>, std::string> composition) {
  auto cat = std::shared_ptr<FinCat>(new FinCat());

  if (!sorted_unique(objects))
    throw MalformedCategory("duplicate object identifier");
  cat->objects_ = std::move(objects);
  for (std::size_t i = 0; i < cat->objects_.size(); ++i)
    cat->object_index_[cat->objects_[i]] = i;

  std::sort(morphisms.begin(), morphisms.end(),
            [](const Mor& a, const Mor& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < morphisms.size(); ++i)
    if (morphisms[i].id == morphisms[i + 1].id)
      throw MalformedCategory("duplicate morphism identifier '" +
                              morphisms[i].id + "'");
  cat->morphisms_ = std::move(morphisms);
  const std::size_t m = cat->morphisms_.size();
  if (m >= kNoComposite || m > 4096)
    throw CapExceeded("morphism count " + std::to_string(m) +
                      " exceeds the dense composition table guard");
  for (std::size_t i = 0; i < m; ++i) {
    const Mor& u = cat->morphisms_[i];
    if (!cat->object_index_.count(u.src))
      throw DanglingEndpoint("morphism '" + u.id + "' has unknown source '" +
                             u.src + "'");
    if (!cat->object_index_.count(u.tgt))
      throw DanglingEndpoint("morphism '" + u.id + "' has unknown target '" +
                             u.tgt + "'");
    cat->morphism_index_[u.id] = i;
  }

  cat->identity_of_.resize(cat->objects_.size());
  cat->is_identity_.assign(m, false);
  for (const auto& [x, e] : identities) {
    auto xi = cat->object_index_.find(x);
    if (xi == cat->object_index_.end())
      throw MalformedCategory("identity declared for unknown object '" + x +
                              "'");
    auto ei = cat->morphism_index_.find(e);
    if (ei == cat->morphism_index_.end())
      throw MissingIdentity("identity of '" + x +
                            "' names unknown morphism '" + e + "'");
    const Mor& u = cat->morphisms_[ei->second];
    if (u.src != x || u.tgt != x)
      throw MissingIdentity("identity of '" + x + "' is '" + e +
                            "', which is not an endomorphism of '" + x + "'");
    cat->identity_of_[xi->second] = e;
    cat->is_identity_[ei->second] = true;
  }
  for (std::size_t i = 0; i < cat->objects_.size(); ++i)
    if (cat->identity_of_[i].empty())
      throw MissingIdentity("object '" + cat->objects_[i] +
                            "' has no identity morphism");

  cat->comp_.assign(m * m, kNoComposite);
  for (const auto& [gf, h] : composition) {
    const auto& [g, f] = gf;
    auto gi = cat->morphism_index_.find(g);
    auto fi = cat->morphism_index_.find(f);
    auto hi = cat->morphism_index_.find(h);
    if (gi == cat->morphism_index_.end() || fi == cat->morphism_index_.end())
      throw UnknownMorphism("composition entry (" + g + "," + f +
                            ") names an unknown morphism");
    if (hi == cat->morphism_index_.end())
      throw UnknownMorphism("composite of (" + g + "," + f +
                            ") names unknown morphism '" + h + "'");
    const Mor& gm = cat->morphisms_[gi->second];
    const Mor& fm = cat->morphisms_[fi->second];
    const Mor& hm = cat->morphisms_[hi->second];
    if (gm.src != fm.tgt)
      throw MalformedCategory("composition entry (" + g + "," + f +
                              ") is not a composable pair");
    if (hm.src != fm.src || hm.tgt != gm.tgt)
      throw MalformedCategory("composite '" + h + "' of (" + g + "," + f +
                              ") has mismatched endpoints");
    cat->comp_[gi->second * m + fi->second] =
        static_cast<std::uint32_t>(hi->second);
  }

  // Totality on composable pairs.
  for (std::size_t gi = 0; gi < m; ++gi)
    for (std::size_t fi = 0; fi < m; ++fi)
      if (cat->morphisms_[gi].src == cat->morphisms_[fi].tgt &&
          cat->comp_[gi * m + fi] == kNoComposite)
        throw MissingComposite("composable pair (" + cat->morphisms_[gi].id +
                               "," + cat->morphisms_[fi].id +
                               ") has no declared composite");

  // Unit laws.
  for (std::size_t fi = 0; fi < m; ++fi) {
    const Mor& f = cat->morphisms_[fi];
    const std::size_t sid =
        cat->morphism_index_.at(cat->identity_of_[cat->object_index_.at(f.src)]);
    const std::size_t tid =
        cat->morphism_index_.at(cat->identity_of_[cat->object_index_.at(f.tgt)]);
    if (cat->comp_[fi * m + sid] != fi)
      throw MissingIdentity("right unit law fails for '" + f.id +
                            "' at object '" + f.src + "'");
    if (cat->comp_[tid * m + fi] != fi)
      throw MissingIdentity("left unit law fails for '" + f.id +
                            "' at object '" + f.tgt + "'");
  }

  // Associativity over all composable triples, via out-adjacency lists.
  std::vector<std::vector<std::uint32_t>> out(cat->objects_.size());
  for (std::size_t i = 0; i < m; ++i)
    out[cat->object_index_.at(cat->morphisms_[i].src)].push_back(
        static_cast<std::uint32_t>(i));
  for (std::size_t fi = 0; fi < m; ++fi) {
    const std::size_t fy = cat->object_index_.at(cat->morphisms_[fi].tgt);
    for (std::uint32_t gi : out[fy]) {
      const std::size_t gf = cat->comp_[gi * m + fi];
      const std::size_t gz = cat->object_index_.at(cat->morphisms_[gi].tgt);
      for (std::uint32_t hi : out[gz]) {
        const std::size_t hg = cat->comp_[hi * m + gi];
        if (cat->comp_[hi * m + gf] != cat->comp_[hg * m + fi])
          throw NonAssociative("associativity fails on (" +
                               cat->morphisms_[hi].id + "," +
                               cat->morphisms_[gi].id + "," +
                               cat->morphisms_[fi].id + ")");
      }
    }
  }

  // Isomorphism flags and inverses.
  cat->iso_.assign(m, false);
  cat->inverse_of_.assign(m, std::string());
  for (std::size_t ui = 0; ui < m; ++ui) {
    const Mor& u = cat->morphisms_[ui];
    const std::size_t idx =
        cat->morphism_index_.at(cat->identity_of_[cat->object_index_.at(u.src)]);
    const std::size_t idy =
        cat->morphism_index_.at(cat->identity_of_[cat->object_index_.at(u.tgt)]);
    for (std::size_t vi = 0; vi < m; ++vi) {
      const Mor& v = cat->morphisms_[vi];
      if (v.src != u.tgt || v.tgt != u.src) continue;
      if (cat->comp_[vi * m + ui] == idx && cat->comp_[ui * m + vi] == idy) {
        cat->iso_[ui] = true;
        cat->inverse_of_[ui] = v.id;
        break;
      }
    }
  }

  // Hom table.
  for (std::size_t i = 0; i < m; ++i) {
    const Mor& u = cat->morphisms_[i];
    cat->hom_[{u.src, u.tgt}].push_back(u.id);
  }
  for (const std::string& x : cat->objects_)
    for (const std::string& y : cat->objects_) cat->hom_[{x, y}];

  return cat;
}

bool FinCat::has_object(const std::string& x) const {
  return object_index_.count(x) != 0;
}

bool FinCat::has_morphism(const std::string& u) const {
  return morphism_index_.count(u) != 0;
}

const Mor& FinCat::mor(const std::string& u) const {
  auto it = morphism_index_.find(u);
  if (it == morphism_index_.end())
    throw UnknownMorphism("unknown morphism '" + u + "'");
  return morphisms_[it->second];
}

const std::string& FinCat::identity(const std::string& x) const {
  auto it = object_index_.find(x);
  if (it == object_index_.end())
    throw UnknownObject("unknown object '" + x + "'");
  return identity_of_[it->second];
}

bool FinCat::is_identity(const std::string& u) const {
  return is_identity_[morphism_index(u)];
}

const std::string& FinCat::compose(const std::string& g,
                                   const std::string& f) const {
  const std::size_t gi = morphism_index(g);
  const std::size_t fi = morphism_index(f);
  const std::uint32_t r = comp_[gi * morphisms_.size() + fi];
  if (r == kNoComposite)
    throw UnknownMorphism("morphisms (" + g + "," + f +
                          ") do not form a composable pair");
  return morphisms_[r].id;
}

const std::vector<std::string>& FinCat::hom(const std::string& x,
                                            const std::string& y) const {
  if (!has_object(x)) throw UnknownObject("unknown object '" + x + "'");
  if (!has_object(y)) throw UnknownObject("unknown object '" + y + "'");
  return hom_.at({x, y});
}

bool FinCat::is_iso(const std::string& u) const {
  return iso_[morphism_index(u)];
}

const std::string& FinCat::inverse(const std::string& u) const {
  const std::size_t i = morphism_index(u);
  if (!iso_[i])
    throw UnknownMorphism("morphism '" + u + "' is not an isomorphism");
  return inverse_of_[i];
}

bool FinCat::objects_isomorphic(const std::string& x,
                                const std::string& y) const {
  for (const std::string& u : hom(x, y))
    if (is_iso(u)) return true;
  return false;
}

bool FinCat::same_presentation(const FinCat& other) const {
  if (objects_ != other.objects_) return false;
  if (morphisms_.size() != other.morphisms_.size()) return false;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    if (morphisms_[i].id != other.morphisms_[i].id ||
        morphisms_[i].src != other.morphisms_[i].src ||
        morphisms_[i].tgt != other.morphisms_[i].tgt)
      return false;
  }
  if (identity_of_ != other.identity_of_) return false;
  return comp_ == other.comp_;
}

std::size_t FinCat::object_index(const std::string& x) const {
  auto it = object_index_.find(x);
  if (it == object_index_.end())
    throw UnknownObject("unknown object '" + x + "'");
  return it->second;
}

std::size_t FinCat::morphism_index(const std::string& u) const {
  auto it = morphism_index_.find(u);
  if (it == morphism_index_.end())
    throw UnknownMorphism("unknown morphism '" + u + "'");
  return it->second;
}

CatPtr RawCat::validate() && {
  return FinCat::validate(std::move(objects), std::move(morphisms),
                          std::move(identities), std::move(composition));
}

CatPtr poset_category(std::vector<std::string> elements,
                      std::vector<std::pair<std::string, std::string>> leq) {
  if (!sorted_unique(elements))
    throw MalformedCategory("duplicate poset element");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < elements.size(); ++i) idx[elements[i]] = i;
  const std::size_t n = elements.size();
  std::vector<bool> rel(n * n, false);
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = true;
  for (const auto& [a, b] : leq) {
    if (!idx.count(a) || !idx.count(b))
      throw MalformedCategory("order pair (" + a + "," + b +
                              ") names an unknown element");
    rel[idx[a] * n + idx[b]] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k * n + j]) rel[i * n + j] = true;

  RawCat raw;
  raw.objects = elements;
  auto arrow_id = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + elements[i] : elements[i] + "<" + elements[j];
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel[i * n + j]) continue;
      raw.morphisms.push_back({arrow_id(i, j), elements[i], elements[j]});
    }
    raw.identities[elements[i]] = "id_" + elements[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j])
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j * n + k])
            raw.composition[{arrow_id(j, k), arrow_id(i, j)}] = arrow_id(i, k);
  return std::move(raw).validate();
}

CatPtr simplex(int n) {
  if (n < 0) throw MalformedCategory("simplex dimension must be nonnegative");
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
  for (int i = 0; i <= n; ++i) elements.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    leq.push_back({std::to_string(i), std::to_string(i + 1)});
  return poset_category(std::move(elements), std::move(leq));
}

CatPtr terminal() { return simplex(0); }

CatPtr discrete(std::vector<std::string> elements) {
  return poset_category(std::move(elements), {});
}

CatPtr cyclic_group(int n) {
  if (n <= 0) throw MalformedCategory("group order must be positive");
  RawCat raw;
  raw.objects = {"*"};
  for (int i = 0; i < n; ++i)
    raw.morphisms.push_back({"r" + std::to_string(i), "*", "*"});
  raw.identities["*"] = "r0";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      raw.composition[{"r" + std::to_string(i), "r" + std::to_string(j)}] =
          "r" + std::to_string((i + j) % n);
  return std::move(raw).validate();
}

CatPtr walking_iso() {
  RawCat raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {
      {"a2b", "a", "b"}, {"b2a", "b", "a"}, {"id_a", "a", "a"},
      {"id_b", "b", "b"}};
  raw.identities = {{"a", "id_a"}, {"b", "id_b"}};
  raw.composition[{"b2a", "a2b"}] = "id_a";
  raw.composition[{"a2b", "b2a"}] = "id_b";
  raw.composition[{"id_a", "id_a"}] = "id_a";
  raw.composition[{"id_b", "id_b"}] = "id_b";
  raw.composition[{"a2b", "id_a"}] = "a2b";
  raw.composition[{"id_b", "a2b"}] = "a2b";
  raw.composition[{"b2a", "id_b"}] = "b2a";
  raw.composition[{"id_a", "b2a"}] = "b2a";
  return std::move(raw).validate();
}

CatPtr opposite(const CatPtr& c) {
  RawCat raw;
  raw.objects = c->objects();
  for (const Mor& u : c->morphisms())
    raw.morphisms.push_back({u.id, u.tgt, u.src});
  for (const std::string& x : c->objects())
    raw.identities[x] = c->identity(x);
  for (const Mor& g : c->morphisms())
    for (const Mor& f : c->morphisms())
      if (g.src == f.tgt)  // composable in c, yields (f,g) entry op-side
        raw.composition[{f.id, g.id}] = c->compose(g.id, f.id);
  return std::move(raw).validate();
}

CatPtr product(const CatPtr& c, const CatPtr& d) {
  RawCat raw;
  for (const std::string& x : c->objects())
    for (const std::string& y : d->objects()) {
      raw.objects.push_back(paren(x, y));
      raw.identities[paren(x, y)] = paren(c->identity(x), d->identity(y));
    }
  for (const Mor& u : c->morphisms())
    for (const Mor& v : d->morphisms())
      raw.morphisms.push_back(
          {paren(u.id, v.id), paren(u.src, v.src), paren(u.tgt, v.tgt)});
  for (const Mor& g : c->morphisms())
    for (const Mor& f : c->morphisms()) {
      if (g.src != f.tgt) continue;
      const std::string& gf = c->compose(g.id, f.id);
      for (const Mor& k : d->morphisms())
        for (const Mor& h : d->morphisms()) {
          if (k.src != h.tgt) continue;
          raw.composition[{paren(g.id, k.id), paren(f.id, h.id)}] =
              paren(gf, d->compose(k.id, h.id));
        }
    }
  return std::move(raw).validate();
}

CatPtr wide_subcategory(const CatPtr& c, const std::set<std::string>& mors) {
  RawCat raw;
  raw.objects = c->objects();
  for (const std::string& x : c->objects()) {
    if (!mors.count(c->identity(x)))
      throw MalformedCategory("wide subcategory omits the identity of '" + x +
                              "'");
    raw.identities[x] = c->identity(x);
  }
  for (const std::string& u : mors) {
    const Mor& mu = c->mor(u);
    raw.morphisms.push_back(mu);
  }
  for (const std::string& g : mors)
    for (const std::string& f : mors) {
      if (c->src(g) != c->tgt(f)) continue;
      const std::string& gf = c->compose(g, f);
      if (!mors.count(gf))
        throw MalformedCategory("morphism set is not closed under composition: "
                                "(" + g + "," + f + ") composes to '" + gf +
                                "'");
      raw.composition[{g, f}] = gf;
    }
  return std::move(raw).validate();
}

CatPtr core(const CatPtr& c) {
  std::set<std::string> isos;
  for (const Mor& u : c->morphisms())
    if (c->is_iso(u.id)) isos.insert(u.id);
  return wide_subcategory(c, isos);
}

CatPtr full_subcategory(const CatPtr& c, const std::vector<std::string>& objs) {
  RawCat raw;
  std::set<std::string> keep(objs.begin(), objs.end());
  for (const std::string& x : keep)
    if (!c->has_object(x))
      throw UnknownObject("full subcategory names unknown object '" + x + "'");
  raw.objects.assign(keep.begin(), keep.end());
  std::set<std::string> mors;
  for (const Mor& u : c->morphisms())
    if (keep.count(u.src) && keep.count(u.tgt)) {
      raw.morphisms.push_back(u);
      mors.insert(u.id);
    }
  for (const std::string& x : keep) raw.identities[x] = c->identity(x);
  for (const std::string& g : mors)
    for (const std::string& f : mors)
      if (c->src(g) == c->tgt(f)) raw.composition[{g, f}] = c->compose(g, f);
  return std::move(raw).validate();
}

FinFunctor FinFunctor::make(CatPtr dom, CatPtr cod,
                            std::map<std::string, std::string> object_map,
                            std::map<std::string, std::string> morphism_map) {
  if (!dom || !cod) throw NonFunctorial("functor endpoints must be non-null");
  for (const auto& [x, fx] : object_map) {
    if (!dom->has_object(x))
      throw NonFunctorial("object table mentions unknown object '" + x + "'");
    if (!cod->has_object(fx))
      throw NonFunctorial("object table sends '" + x +
                          "' to unknown object '" + fx + "'");
  }
  for (const std::string& x : dom->objects())
    if (!object_map.count(x))
      throw NonFunctorial("object table is missing '" + x + "'");
  for (const auto& [u, fu] : morphism_map) {
    if (!dom->has_morphism(u))
      throw NonFunctorial("morphism table mentions unknown morphism '" + u +
                          "'");
    if (!cod->has_morphism(fu))
      throw NonFunctorial("morphism table sends '" + u +
                          "' to unknown morphism '" + fu + "'");
  }
  for (const Mor& u : dom->morphisms()) {
    auto it = morphism_map.find(u.id);
    if (it == morphism_map.end())
      throw NonFunctorial("morphism table is missing '" + u.id + "'");
    const Mor& fu = cod->mor(it->second);
    if (fu.src != object_map.at(u.src) || fu.tgt != object_map.at(u.tgt))
      throw NonFunctorial("image of '" + u.id +
                          "' has wrong endpoints: got '" + fu.id + "'");
  }
  for (const std::string& x : dom->objects())
    if (morphism_map.at(dom->identity(x)) != cod->identity(object_map.at(x)))
      throw NonFunctorial("identity of '" + x + "' is not preserved");
  for (const Mor& g : dom->morphisms())
    for (const Mor& f : dom->morphisms()) {
      if (g.src != f.tgt) continue;
      const std::string& lhs = morphism_map.at(dom->compose(g.id, f.id));
      const std::string& rhs =
          cod->compose(morphism_map.at(g.id), morphism_map.at(f.id));
      if (lhs != rhs)
        throw NonFunctorial("composition of (" + g.id + "," + f.id +
                            ") is not preserved");
    }
  FinFunctor out;
  out.dom_ = std::move(dom);
  out.cod_ = std::move(cod);
  out.object_map_ = std::move(object_map);
  out.morphism_map_ = std::move(morphism_map);
  return out;
}

const std::string& FinFunctor::on_obj(const std::string& x) const {
  auto it = object_map_.find(x);
  if (it == object_map_.end())
    throw UnknownObject("functor has no value on object '" + x + "'");
  return it->second;
}

const std::string& FinFunctor::on_mor(const std::string& u) const {
  auto it = morphism_map_.find(u);
  if (it == morphism_map_.end())
    throw UnknownMorphism("functor has no value on morphism '" + u + "'");
  return it->second;
}

bool FinFunctor::is_fully_faithful() const {
  for (const std::string& x : dom_->objects())
    for (const std::string& y : dom_->objects()) {
      const auto& source = dom_->hom(x, y);
      const auto& target = cod_->hom(on_obj(x), on_obj(y));
      if (source.size() != target.size()) return false;
      std::set<std::string> images;
      for (const std::string& u : source) images.insert(on_mor(u));
      if (images.size() != source.size()) return false;
    }
  return true;
}

bool FinFunctor::is_essentially_surjective() const {
  for (const std::string& y : cod_->objects()) {
    bool hit = false;
    for (const std::string& x : dom_->objects())
      if (cod_->objects_isomorphic(on_obj(x), y)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool FinFunctor::is_conservative() const {
  for (const Mor& u : dom_->morphisms())
    if (cod_->is_iso(on_mor(u.id)) && !dom_->is_iso(u.id)) return false;
  return true;
}

bool FinFunctor::same_tables(const FinFunctor& other) const {
  return dom_->same_presentation(*other.dom_) &&
         cod_->same_presentation(*other.cod_) &&
         object_map_ == other.object_map_ &&
         morphism_map_ == other.morphism_map_;
}

FinFunctor identity_functor(const CatPtr& c) {
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : c->objects()) om[x] = x;
  for (const Mor& u : c->morphisms()) mm[u.id] = u.id;
  return FinFunctor::make(c, c, std::move(om), std::move(mm));
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (!f.cod()->same_presentation(*g.dom()))
    throw NonFunctorial("functors are not composable");
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : f.dom()->objects())
    om[x] = g.on_obj(f.on_obj(x));
  for (const Mor& u : f.dom()->morphisms())
    mm[u.id] = g.on_mor(f.on_mor(u.id));
  return FinFunctor::make(f.dom(), g.cod(), std::move(om), std::move(mm));
}

FinFunctor opposite_functor(const FinFunctor& f) {
  return FinFunctor::make(opposite(f.dom()), opposite(f.cod()),
                          f.object_map(), f.morphism_map());
}

FinFunctor constant_functor(const CatPtr& dom, const CatPtr& cod,
                            const std::string& obj) {
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : dom->objects()) om[x] = obj;
  for (const Mor& u : dom->morphisms()) mm[u.id] = cod->identity(obj);
  return FinFunctor::make(dom, cod, std::move(om), std::move(mm));
}

namespace {

// Splits "(a,b)" into its two components at the top-level comma, matching
// the naming scheme of product() and pullback_category().
std::pair<std::string, std::string> split_pair(const std::string& id) {
  if (id.size() < 3 || id.front() != '(' || id.back() != ')')
    throw MalformedCategory("identifier '" + id + "' is not a pair");
  int depth = 0;
  for (std::size_t i = 1; i + 1 < id.size(); ++i) {
    if (id[i] == '(') ++depth;
    if (id[i] == ')') --depth;
    if (id[i] == ',' && depth == 0)
      return {id.substr(1, i - 1), id.substr(i + 1, id.size() - i - 2)};
  }
  throw MalformedCategory("identifier '" + id + "' is not a pair");
}

}  // namespace

std::pair<std::string, std::string> split_pair_id(const std::string& id) {
  return split_pair(id);
}

std::string pair_id(const std::string& a, const std::string& b) {
  return paren(a, b);
}

FinFunctor proj1(const CatPtr& c, const CatPtr& d) {
  CatPtr prod = product(c, d);
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : prod->objects()) om[x] = split_pair(x).first;
  for (const Mor& u : prod->morphisms()) mm[u.id] = split_pair(u.id).first;
  return FinFunctor::make(prod, c, std::move(om), std::move(mm));
}

FinFunctor proj2(const CatPtr& c, const CatPtr& d) {
  CatPtr prod = product(c, d);
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : prod->objects()) om[x] = split_pair(x).second;
  for (const Mor& u : prod->morphisms()) mm[u.id] = split_pair(u.id).second;
  return FinFunctor::make(prod, d, std::move(om), std::move(mm));
}

FinFunctor pair_into_product(const FinFunctor& f, const FinFunctor& g) {
  if (!f.dom()->same_presentation(*g.dom()))
    throw NonFunctorial("paired functors must share their domain");
  CatPtr prod = product(f.cod(), g.cod());
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : f.dom()->objects())
    om[x] = paren(f.on_obj(x), g.on_obj(x));
  for (const Mor& u : f.dom()->morphisms())
    mm[u.id] = paren(f.on_mor(u.id), g.on_mor(u.id));
  return FinFunctor::make(f.dom(), prod, std::move(om), std::move(mm));
}

FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g) {
  CatPtr dom = product(f.dom(), g.dom());
  CatPtr cod = product(f.cod(), g.cod());
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : dom->objects()) {
    auto [a, b] = split_pair(x);
    om[x] = paren(f.on_obj(a), g.on_obj(b));
  }
  for (const Mor& u : dom->morphisms()) {
    auto [a, b] = split_pair(u.id);
    mm[u.id] = paren(f.on_mor(a), g.on_mor(b));
  }
  return FinFunctor::make(dom, cod, std::move(om), std::move(mm));
}

FinFunctor subcategory_inclusion(const CatPtr& sub, const CatPtr& ambient) {
  std::map<std::string, std::string> om, mm;
  for (const std::string& x : sub->objects()) om[x] = x;
  for (const Mor& u : sub->morphisms()) mm[u.id] = u.id;
  return FinFunctor::make(sub, ambient, std::move(om), std::move(mm));
}

PullbackCat pullback_category(const FinFunctor& f, const FinFunctor& g) {
  if (!f.cod()->same_presentation(*g.cod()))
    throw NonFunctorial("pullback legs must share their codomain");
  RawCat raw;
  std::map<std::string, std::string> om1, mm1, om2, mm2;
  for (const std::string& x : f.dom()->objects())
    for (const std::string& y : g.dom()->objects()) {
      if (f.on_obj(x) != g.on_obj(y)) continue;
      const std::string o = paren(x, y);
      raw.objects.push_back(o);
      raw.identities[o] =
          paren(f.dom()->identity(x), g.dom()->identity(y));
      om1[o] = x;
      om2[o] = y;
    }
  std::vector<std::pair<std::string, std::string>> mors;
  for (const Mor& u : f.dom()->morphisms())
    for (const Mor& v : g.dom()->morphisms()) {
      if (f.on_mor(u.id) != g.on_mor(v.id)) continue;
      const std::string id = paren(u.id, v.id);
      raw.morphisms.push_back({id, paren(u.src, v.src), paren(u.tgt, v.tgt)});
      mors.push_back({u.id, v.id});
      mm1[id] = u.id;
      mm2[id] = v.id;
    }
  for (const auto& [gu, gv] : mors)
    for (const auto& [fu, fv] : mors) {
      if (f.dom()->src(gu) != f.dom()->tgt(fu)) continue;
      if (g.dom()->src(gv) != g.dom()->tgt(fv)) continue;
      raw.composition[{paren(gu, gv), paren(fu, fv)}] =
          paren(f.dom()->compose(gu, fu), g.dom()->compose(gv, fv));
    }
  CatPtr total = std::move(raw).validate();
  return {total,
          FinFunctor::make(total, f.dom(), om1, mm1),
          FinFunctor::make(total, g.dom(), om2, mm2)};
}

NatTransf NatTransf::make(FinFunctor source, FinFunctor target,
                          std::map<std::string, std::string> components) {
  if (!source.dom()->same_presentation(*target.dom()) ||
      !source.cod()->same_presentation(*target.cod()))
    throw NonFunctorial("transformation endpoints are not parallel functors");
  const FinCat& cod = *source.cod();
  for (const std::string& x : source.dom()->objects()) {
    auto it = components.find(x);
    if (it == components.end())
      throw NonFunctorial("component missing at object '" + x + "'");
    const Mor& a = cod.mor(it->second);
    if (a.src != source.on_obj(x) || a.tgt != target.on_obj(x))
      throw NonFunctorial("component at '" + x + "' has wrong endpoints");
  }
  for (const Mor& u : source.dom()->morphisms()) {
    const std::string lhs =
        cod.compose(target.on_mor(u.id), components.at(u.src));
    const std::string rhs =
        cod.compose(components.at(u.tgt), source.on_mor(u.id));
    if (lhs != rhs)
      throw NonFunctorial("naturality square fails on morphism '" + u.id +
                          "'");
  }
  return NatTransf(std::move(source), std::move(target),
                   std::move(components));
}

const std::string& NatTransf::at(const std::string& x) const {
  auto it = components_.find(x);
  if (it == components_.end())
    throw UnknownObject("no component at object '" + x + "'");
  return it->second;
}

bool NatTransf::is_iso() const {
  for (const auto& [x, a] : components_)
    if (!source_.cod()->is_iso(a)) return false;
  return true;
}

NatTransf identity_transformation(const FinFunctor& f) {
  std::map<std::string, std::string> comps;
  for (const std::string& x : f.dom()->objects())
    comps[x] = f.cod()->identity(f.on_obj(x));
  return NatTransf::make(f, f, std::move(comps));
}

NatTransf vertical_compose(const NatTransf& second, const NatTransf& first) {
  if (!second.source().same_tables(first.target()))
    throw NonFunctorial("transformations are not vertically composable");
  std::map<std::string, std::string> comps;
  for (const std::string& x : first.source().dom()->objects())
    comps[x] = first.source().cod()->compose(second.at(x), first.at(x));
  return NatTransf::make(first.source(), second.target(), std::move(comps));
}

NatTransf whisker_left(const FinFunctor& h, const NatTransf& alpha) {
  std::map<std::string, std::string> comps;
  for (const std::string& x : alpha.source().dom()->objects())
    comps[x] = h.on_mor(alpha.at(x));
  return NatTransf::make(compose(h, alpha.source()),
                         compose(h, alpha.target()), std::move(comps));
}

NatTransf whisker_right(const NatTransf& alpha, const FinFunctor& k) {
  std::map<std::string, std::string> comps;
  for (const std::string& z : k.dom()->objects())
    comps[z] = alpha.at(k.on_obj(z));
  return NatTransf::make(compose(alpha.source(), k),
                         compose(alpha.target(), k), std::move(comps));
}

Adjunction Adjunction::make(FinFunctor left, FinFunctor right, NatTransf unit,
                            NatTransf counit) {
  const CatPtr& c = left.dom();
  const CatPtr& d = left.cod();
  if (!right.dom()->same_presentation(*d) ||
      !right.cod()->same_presentation(*c))
    throw NonFunctorial("adjoint pair endpoints do not match");
  if (!unit.source().same_tables(identity_functor(c)) ||
      !unit.target().same_tables(compose(right, left)))
    throw NonFunctorial("unit endpoints are not id and right-after-left");
  if (!counit.source().same_tables(compose(left, right)) ||
      !counit.target().same_tables(identity_functor(d)))
    throw NonFunctorial("counit endpoints are not left-after-right and id");
  for (const std::string& x : c->objects()) {
    const std::string& fx = left.on_obj(x);
    if (d->compose(counit.at(fx), left.on_mor(unit.at(x))) != d->identity(fx))
      throw NonFunctorial("left triangle identity fails at '" + x + "'");
  }
  for (const std::string& y : d->objects()) {
    const std::string& gy = right.on_obj(y);
    if (c->compose(right.on_mor(counit.at(y)), unit.at(gy)) != c->identity(gy))
      throw NonFunctorial("right triangle identity fails at '" + y + "'");
  }
  return Adjunction(std::move(left), std::move(right), std::move(unit),
                    std::move(counit));
}

std::string Adjunction::transpose_to_right(const std::string& x,
                                           const std::string& phi) const {
  const CatPtr& c = left_.dom();
  const CatPtr& d = left_.cod();
  if (d->src(phi) != left_.on_obj(x))
    throw UnknownMorphism("transpose source mismatch at '" + x + "'");
  return c->compose(right_.on_mor(phi), unit_.at(x));
}

std::string Adjunction::transpose_to_left(const std::string& y,
                                          const std::string& psi) const {
  const CatPtr& c = left_.dom();
  const CatPtr& d = left_.cod();
  if (c->tgt(psi) != right_.on_obj(y))
    throw UnknownMorphism("transpose target mismatch at '" + y + "'");
  return d->compose(counit_.at(y), left_.on_mor(psi));
}

namespace {

// Objects of the comma category (y down g) as (object of dom g, morphism).
struct CommaObj {
  std::string x;
  std::string phi;  // y -> g(x) in cod g
  bool operator<(const CommaObj& o) const {
    return std::tie(x, phi) < std::tie(o.x, o.phi);
  }
};

std::size_t comma_hom_count(const FinFunctor& g, const CommaObj& a,
                            const CommaObj& b) {
  const CatPtr& d = g.dom();
  const CatPtr& c = g.cod();
  std::size_t n = 0;
  for (const std::string& u : d->hom(a.x, b.x))
    if (c->compose(g.on_mor(u), a.phi) == b.phi) ++n;
  return n;
}

std::optional<Adjunction> find_left_adjoint(const FinFunctor& g) {
  const CatPtr& d = g.dom();
  const CatPtr& c = g.cod();
  std::map<std::string, std::string> f_obj, eta;
  for (const std::string& y : c->objects()) {
    std::vector<CommaObj> comma;
    for (const std::string& x : d->objects())
      for (const std::string& phi : c->hom(y, g.on_obj(x)))
        comma.push_back({x, phi});
    std::vector<CommaObj> initial;
    for (const CommaObj& cand : comma) {
      bool ok = true;
      for (const CommaObj& other : comma)
        if (comma_hom_count(g, cand, other) != 1) {
          ok = false;
          break;
        }
      if (ok) initial.push_back(cand);
    }
    if (initial.empty()) return std::nullopt;
    std::sort(initial.begin(), initial.end());
    // Distinct initial objects must compose to identities both ways; in a
    // valid category this cannot fail, so a failure means corrupted input.
    for (std::size_t i = 1; i < initial.size(); ++i) {
      for (const std::string& u : d->hom(initial[0].x, initial[i].x))
        for (const std::string& v : d->hom(initial[i].x, initial[0].x)) {
          if (c->compose(g.on_mor(u), initial[0].phi) != initial[i].phi)
            continue;
          if (c->compose(g.on_mor(v), initial[i].phi) != initial[0].phi)
            continue;
          if (d->compose(v, u) != d->identity(initial[0].x))
            throw AmbiguousInitial(
                "two non-isomorphic initial objects over '" + y + "'");
        }
    }
    f_obj[y] = initial[0].x;
    eta[y] = initial[0].phi;
  }

  // f on morphisms by the unique comma factorisation.
  std::map<std::string, std::string> f_mor;
  for (const Mor& v : c->morphisms()) {
    const std::string& fy = f_obj.at(v.src);
    const std::string& fy2 = f_obj.at(v.tgt);
    const std::string want = c->compose(eta.at(v.tgt), v.id);
    std::vector<std::string> hits;
    for (const std::string& u : d->hom(fy, fy2))
      if (c->compose(g.on_mor(u), eta.at(v.src)) == want) hits.push_back(u);
    if (hits.size() != 1)
      throw NonUniqueFactorisation(
          "comma factorisation for '" + v.id + "' yielded " +
          std::to_string(hits.size()) + " candidates");
    f_mor[v.id] = hits[0];
  }
  FinFunctor f = FinFunctor::make(c, d, f_obj, f_mor);

  std::map<std::string, std::string> eps;
  for (const std::string& x : d->objects()) {
    const std::string& gx = g.on_obj(x);
    std::vector<std::string> hits;
    for (const std::string& u : d->hom(f.on_obj(gx), x))
      if (c->compose(g.on_mor(u), eta.at(gx)) == c->identity(gx))
        hits.push_back(u);
    if (hits.size() != 1)
      throw NonUniqueFactorisation("counit factorisation at '" + x +
                                   "' yielded " +
                                   std::to_string(hits.size()) +
                                   " candidates");
    eps[x] = hits[0];
  }

  NatTransf unit = NatTransf::make(identity_functor(c), compose(g, f), eta);
  NatTransf counit =
      NatTransf::make(compose(f, g), identity_functor(d), eps);
  return Adjunction::make(f, g, unit, counit);
}

}  // namespace

std::optional<Adjunction> find_adjoint(const FinFunctor& g, AdjointSide side) {
  if (side == AdjointSide::left) return find_left_adjoint(g);
  // Right adjoints reduce to left adjoints of the opposite functor: from
  // f' -| g^op we read off g -| (f')^op with the coherence data reversed.
  auto op = find_left_adjoint(opposite_functor(g));
  if (!op) return std::nullopt;
  FinFunctor r = FinFunctor::make(g.cod(), g.dom(),
                                  op->left().object_map(),
                                  op->left().morphism_map());
  NatTransf unit = NatTransf::make(identity_functor(g.dom()), compose(r, g),
                                   op->counit().components());
  NatTransf counit = NatTransf::make(compose(g, r), identity_functor(g.cod()),
                                     op->unit().components());
  return Adjunction::make(g, r, unit, counit);
}

bool adjunction_bijection_natural(const Adjunction& adj) {
  const FinFunctor& f = adj.left();
  const FinFunctor& g = adj.right();
  const CatPtr& c = f.dom();
  const CatPtr& d = f.cod();
  for (const std::string& x : c->objects())
    for (const std::string& y : d->objects()) {
      const auto& down = d->hom(f.on_obj(x), y);
      const auto& up = c->hom(x, g.on_obj(y));
      if (down.size() != up.size()) return false;
      for (const std::string& phi : down)
        if (adj.transpose_to_left(y, adj.transpose_to_right(x, phi)) != phi)
          return false;
      for (const std::string& psi : up)
        if (adj.transpose_to_right(x, adj.transpose_to_left(y, psi)) != psi)
          return false;
      // Naturality in both variables.
      for (const std::string& phi : down) {
        for (const std::string& x2 : c->objects())
          for (const std::string& u : c->hom(x2, x)) {
            const std::string lhs = adj.transpose_to_right(
                x2, d->compose(phi, f.on_mor(u)));
            const std::string rhs =
                c->compose(adj.transpose_to_right(x, phi), u);
            if (lhs != rhs) return false;
          }
        for (const std::string& y2 : d->objects())
          for (const std::string& v : d->hom(y, y2)) {
            const std::string lhs =
                adj.transpose_to_right(x, d->compose(v, phi));
            const std::string rhs = c->compose(
                g.on_mor(v), adj.transpose_to_right(x, phi));
            if (lhs != rhs) return false;
          }
      }
    }
  return true;
}

LocalizationCertificate localization_certificate(
    const FinFunctor& f, const std::set<std::string>& w) {
  LocalizationCertificate cert;
  cert.inverts_w = true;
  for (const std::string& u : w) {
    if (!f.dom()->has_morphism(u))
      throw UnknownMorphism("localisation class names unknown morphism '" + u +
                            "'");
    if (!f.cod()->is_iso(f.on_mor(u))) cert.inverts_w = false;
  }
  if (auto adj = find_adjoint(f, AdjointSide::left))
    if (adj->left().is_fully_faithful()) {
      cert.reflective = true;
      return cert;
    }
  if (auto adj = find_adjoint(f, AdjointSide::right))
    if (adj->right().is_fully_faithful()) cert.reflective = true;
  return cert;
}

bool identity_assignment_isomorphism(const FinCat& c, const FinCat& d) {
  return c.same_presentation(d);
}

std::vector<NatTransf> enumerate_nat_transfs(const FinFunctor& f,
                                             const FinFunctor& g) {
  const std::vector<std::string>& objs = f.dom()->objects();
  const FinCat& cod = *f.cod();
  std::vector<NatTransf> out;
  std::map<std::string, std::string> comps;

  // Incremental naturality pruning: when assigning the component at objs[k],
  // every square whose two corners are already assigned is checked.
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == objs.size()) {
      out.push_back(NatTransf::make(f, g, comps));
      return;
    }
    const std::string& x = objs[k];
    for (const std::string& a : cod.hom(f.on_obj(x), g.on_obj(x))) {
      comps[x] = a;
      bool ok = true;
      for (const Mor& u : f.dom()->morphisms()) {
        if (!comps.count(u.src) || !comps.count(u.tgt)) continue;
        if (cod.compose(g.on_mor(u.id), comps.at(u.src)) !=
            cod.compose(comps.at(u.tgt), f.on_mor(u.id))) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
      comps.erase(x);
    }
  };
  rec(0);
  return out;
}

bool naturally_isomorphic(const FinFunctor& f, const FinFunctor& g) {
  if (!f.dom()->same_presentation(*g.dom()) ||
      !f.cod()->same_presentation(*g.cod()))
    return false;
  const std::vector<std::string>& objs = f.dom()->objects();
  const FinCat& cod = *f.cod();
  std::map<std::string, std::string> comps;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) {
    if (k == objs.size()) return true;
    const std::string& x = objs[k];
    for (const std::string& a : cod.hom(f.on_obj(x), g.on_obj(x))) {
      if (!cod.is_iso(a)) continue;
      comps[x] = a;
      bool ok = true;
      for (const Mor& u : f.dom()->morphisms()) {
        if (!comps.count(u.src) || !comps.count(u.tgt)) continue;
        if (cod.compose(g.on_mor(u.id), comps.at(u.src)) !=
            cod.compose(comps.at(u.tgt), f.on_mor(u.id))) {
          ok = false;
          break;
        }
      }
      if (ok && rec(k + 1)) return true;
      comps.erase(x);
    }
    return false;
  };
  return rec(0);
}

namespace {

// Isomorphism search between two categories by backtracking over object and
// morphism assignments, with hom-size pruning.  Returns object and morphism
// tables or nothing; counts nodes against the budget.
struct IsoSearch {
  const FinCat& a;
  const FinCat& b;
  std::size_t budget;
  std::size_t nodes = 0;
  std::map<std::string, std::string> obj;
  std::map<std::string, std::string> mor;
  std::set<std::string> used_obj;
  std::set<std::string> used_mor;

  bool hom_sizes_consistent(const std::string& x) {
    for (const auto& [y, fy] : obj) {
      if (a.hom(x, y).size() != b.hom(obj.at(x), fy).size()) return false;
      if (a.hom(y, x).size() != b.hom(fy, obj.at(x)).size()) return false;
    }
    return true;
  }

  bool assign_morphisms(std::size_t k) {
    if (++nodes > budget)
      throw SearchCapExceeded("equivalence search exceeded its node budget");
    const auto& mors = a.morphisms();
    if (k == mors.size()) return check_composition();
    const Mor& u = mors[k];
    const std::string& fs = obj.at(u.src);
    const std::string& ft = obj.at(u.tgt);
    for (const std::string& v : b.hom(fs, ft)) {
      if (used_mor.count(v)) continue;
      if (a.is_identity(u.id) != b.is_identity(v)) continue;
      if (a.is_iso(u.id) != b.is_iso(v)) continue;
      mor[u.id] = v;
      used_mor.insert(v);
      if (partial_composition_ok(u.id) && assign_morphisms(k + 1)) return true;
      used_mor.erase(v);
      mor.erase(u.id);
    }
    return false;
  }

  bool partial_composition_ok(const std::string& last) {
    for (const auto& [g, fg] : mor) {
      if (a.src(g) == a.tgt(last)) {
        auto it = mor.find(a.compose(g, last));
        if (it != mor.end() && b.compose(fg, mor.at(last)) != it->second)
          return false;
      }
      if (a.src(last) == a.tgt(g)) {
        auto it = mor.find(a.compose(last, g));
        if (it != mor.end() && b.compose(mor.at(last), fg) != it->second)
          return false;
      }
    }
    return true;
  }

  bool check_composition() {
    for (const Mor& g : a.morphisms())
      for (const Mor& f : a.morphisms()) {
        if (g.src != f.tgt) continue;
        if (b.compose(mor.at(g.id), mor.at(f.id)) != mor.at(a.compose(g.id, f.id)))
          return false;
      }
    return true;
  }

  bool assign_objects(std::size_t k) {
    if (++nodes > budget)
      throw SearchCapExceeded("equivalence search exceeded its node budget");
    const auto& objs = a.objects();
    if (k == objs.size()) return assign_morphisms(0);
    const std::string& x = objs[k];
    for (const std::string& y : b.objects()) {
      if (used_obj.count(y)) continue;
      obj[x] = y;
      used_obj.insert(y);
      if (hom_sizes_consistent(x) && assign_objects(k + 1)) return true;
      used_obj.erase(y);
      obj.erase(x);
    }
    return false;
  }
};

// Least representative of each object's isomorphism class.
std::map<std::string, std::string> iso_class_reps(const FinCat& c) {
  std::map<std::string, std::string> rep;
  for (const std::string& x : c.objects()) {
    std::string best = x;
    for (const std::string& y : c.objects())
      if (y < best && c.objects_isomorphic(x, y)) best = y;
    rep[x] = best;
  }
  return rep;
}

}  // namespace

std::optional<Equivalence> find_equivalence(const CatPtr& c, const CatPtr& d,
                                            const Caps& caps) {
  if (c->object_count() > caps.max_objects ||
      d->object_count() > caps.max_objects ||
      c->morphism_count() > caps.max_morphisms ||
      d->morphism_count() > caps.max_morphisms)
    throw SearchCapExceeded(
        "equivalence search input exceeds the size caps (" +
        std::to_string(c->object_count()) + " and " +
        std::to_string(d->object_count()) + " objects)");

  auto rep_c = iso_class_reps(*c);
  auto rep_d = iso_class_reps(*d);
  std::vector<std::string> sk_c, sk_d;
  for (const auto& [x, r] : rep_c)
    if (x == r) sk_c.push_back(x);
  for (const auto& [y, r] : rep_d)
    if (y == r) sk_d.push_back(y);
  if (sk_c.size() != sk_d.size()) return std::nullopt;
  CatPtr a = full_subcategory(c, sk_c);
  CatPtr b = full_subcategory(d, sk_d);
  if (a->morphism_count() != b->morphism_count()) return std::nullopt;

  IsoSearch search{*a, *b, caps.search_budget};
  if (!search.assign_objects(0)) return std::nullopt;

  // Chosen isomorphisms from each object to its class representative;
  // identity when the object is the representative.
  auto chosen_iso = [](const FinCat& cat, const std::string& x,
                       const std::string& r) -> std::string {
    if (x == r) return cat.identity(x);
    for (const std::string& u : cat.hom(x, r))
      if (cat.is_iso(u)) return u;
    throw Error("internal: representative not isomorphic");
  };

  std::map<std::string, std::string> inv_obj, inv_mor;
  for (const auto& [x, y] : search.obj) inv_obj[y] = x;
  for (const auto& [u, v] : search.mor) inv_mor[v] = u;

  std::map<std::string, std::string> f_obj, f_mor, g_obj, g_mor;
  std::map<std::string, std::string> unit_c;
  for (const std::string& x : c->objects()) {
    const std::string& r = rep_c.at(x);
    f_obj[x] = search.obj.at(r);
    unit_c[x] = chosen_iso(*c, x, r);
  }
  for (const Mor& u : c->morphisms()) {
    const std::string a1 = unit_c.at(u.src);
    const std::string a2 = unit_c.at(u.tgt);
    f_mor[u.id] =
        search.mor.at(c->compose(a2, c->compose(u.id, c->inverse(a1))));
  }
  for (const std::string& y : d->objects())
    g_obj[y] = inv_obj.at(rep_d.at(y));
  std::map<std::string, std::string> delta;
  for (const std::string& y : d->objects())
    delta[y] = chosen_iso(*d, y, rep_d.at(y));
  for (const Mor& v : d->morphisms()) {
    const std::string b1 = delta.at(v.src);
    const std::string b2 = delta.at(v.tgt);
    g_mor[v.id] =
        inv_mor.at(d->compose(b2, d->compose(v.id, d->inverse(b1))));
  }

  FinFunctor fwd = FinFunctor::make(c, d, f_obj, f_mor);
  FinFunctor bwd = FinFunctor::make(d, c, g_obj, g_mor);

  std::map<std::string, std::string> eta, eps;
  for (const std::string& x : c->objects()) eta[x] = unit_c.at(x);
  for (const std::string& y : d->objects()) eps[y] = d->inverse(delta.at(y));

  NatTransf unit =
      NatTransf::make(identity_functor(c), compose(bwd, fwd), eta);
  NatTransf counit =
      NatTransf::make(compose(fwd, bwd), identity_functor(d), eps);
  return Equivalence{fwd, bwd, unit, counit};
}

}  // namespace fibcalc
