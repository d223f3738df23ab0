#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibcalc/caps.hpp"
#include "fibcalc/errors.hpp"

namespace fibcalc {

/// A morphism record.  Morphisms and objects are identified by their string
/// identifiers everywhere in the library; two categories agree on a morphism
/// exactly when the identifiers coincide.
struct Mor {
  std::string id;
  std::string src;
  std::string tgt;
};

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

/// A finite category presented by a total composition table.
///
/// Construction happens only through validate(), which checks endpoints,
/// identities, totality of composition on composable pairs, unit laws, and
/// associativity, then derives the isomorphism flags and inverse table.
/// Instances are immutable; all queries are const and cheap.
class FinCat {
 public:
  /// Validates raw data into a category.  composition maps (g, f) with
  /// src(g) = tgt(f) to g after f.  Throws DanglingEndpoint, MissingIdentity,
  /// MissingComposite, or NonAssociative, naming the offending datum;
  /// MalformedCategory covers duplicates and sort mismatches.
  static CatPtr validate(
      std::vector<std::string> objects, std::vector<Mor> morphisms,
      std::map<std::string, std::string> identities,
      std::map<std::pair<std::string, std::string>, std::string> composition);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Mor>& morphisms() const { return morphisms_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  bool has_object(const std::string& x) const;
  bool has_morphism(const std::string& u) const;

  /// Throws UnknownMorphism / UnknownObject on bad identifiers.
  const Mor& mor(const std::string& u) const;
  const std::string& src(const std::string& u) const { return mor(u).src; }
  const std::string& tgt(const std::string& u) const { return mor(u).tgt; }
  const std::string& identity(const std::string& x) const;
  bool is_identity(const std::string& u) const;

  /// g after f; requires src(g) = tgt(f), else UnknownMorphism.
  const std::string& compose(const std::string& g, const std::string& f) const;

  /// Identifiers of all morphisms x -> y, sorted.
  const std::vector<std::string>& hom(const std::string& x,
                                      const std::string& y) const;

  bool is_iso(const std::string& u) const;
  /// Two-sided inverse; requires is_iso(u).
  const std::string& inverse(const std::string& u) const;
  bool objects_isomorphic(const std::string& x, const std::string& y) const;

  /// Structural equality: same objects, morphisms, identities, and
  /// composition table, identifier for identifier.
  bool same_presentation(const FinCat& other) const;

  /// Index helpers used by the dense algorithms; indices follow the sorted
  /// identifier order exposed by objects() and morphisms().
  std::size_t object_index(const std::string& x) const;
  std::size_t morphism_index(const std::string& u) const;

 private:
  FinCat() = default;

  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::map<std::string, std::size_t> object_index_;
  std::map<std::string, std::size_t> morphism_index_;
  std::vector<std::string> identity_of_;       // by object index
  std::vector<bool> is_identity_;              // by morphism index
  std::vector<std::uint32_t> comp_;            // [g][f], sentinel when absent
  std::vector<bool> iso_;                      // by morphism index
  std::vector<std::string> inverse_of_;        // empty when not iso
  mutable std::map<std::pair<std::string, std::string>,
                   std::vector<std::string>>
      hom_;                                    // built eagerly in validate

  static constexpr std::uint32_t kNoComposite = 0xffffffffu;
};

/// Raw presentation used by builders and the JSON layer before validation.
struct RawCat {
  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::map<std::string, std::string> identities;
  std::map<std::pair<std::string, std::string>, std::string> composition;

  CatPtr validate() &&;
};

/// The chain 0 -> 1 -> ... -> n as a category.  Objects "0".."n", identity
/// on i named "id_i", and the arrow i -> j named "i<j".
CatPtr simplex(int n);

/// One-object one-morphism category.
CatPtr terminal();

/// Discrete category on the given identifiers; identity on x is "id_x".
CatPtr discrete(std::vector<std::string> elements);

/// The thin category of a preorder: reflexive-transitive closure of the
/// given pairs.  Arrow a -> b (a != b) is named "a<b".  Antisymmetry is not
/// required; a symmetric pair yields a pair of mutually inverse arrows.
CatPtr poset_category(std::vector<std::string> elements,
                      std::vector<std::pair<std::string, std::string>> leq);

/// Cyclic group of order n as a one-object category.  Object "*", morphisms
/// "r0" (identity) .. "r{n-1}".
CatPtr cyclic_group(int n);

/// Two objects "a", "b" with a single isomorphism between them.
CatPtr walking_iso();

/// Same identifiers, endpoints swapped, composition reversed.  Involutive on
/// the nose: opposite(opposite(C)) has the identical presentation.
CatPtr opposite(const CatPtr& c);

/// Objects "(x,y)" and morphisms "(u,v)" with componentwise structure.
CatPtr product(const CatPtr& c, const CatPtr& d);

/// Wide subcategory of isomorphisms; identifiers survive unchanged.
CatPtr core(const CatPtr& c);

/// Wide subcategory on a morphism subset that contains all identities and is
/// closed under composition (validated, MalformedCategory otherwise).
CatPtr wide_subcategory(const CatPtr& c, const std::set<std::string>& mors);

/// Full subcategory on an object subset; identifiers survive unchanged.
CatPtr full_subcategory(const CatPtr& c, const std::vector<std::string>& objs);


/// A functor presented by its object and morphism tables.  make() checks
/// totality, endpoint preservation, identities, and composition, throwing
/// NonFunctorial with the offending pair on failure.
class FinFunctor {
 public:
  static FinFunctor make(CatPtr dom, CatPtr cod,
                         std::map<std::string, std::string> object_map,
                         std::map<std::string, std::string> morphism_map);

  const CatPtr& dom() const { return dom_; }
  const CatPtr& cod() const { return cod_; }
  const std::string& on_obj(const std::string& x) const;
  const std::string& on_mor(const std::string& u) const;
  const std::map<std::string, std::string>& object_map() const {
    return object_map_;
  }
  const std::map<std::string, std::string>& morphism_map() const {
    return morphism_map_;
  }

  bool is_fully_faithful() const;
  bool is_essentially_surjective() const;
  /// True when u iso follows from on_mor(u) iso, for every u.
  bool is_conservative() const;
  /// Identifier-level equality of tables and endpoint presentations.
  bool same_tables(const FinFunctor& other) const;

 private:
  FinFunctor() = default;
  CatPtr dom_;
  CatPtr cod_;
  std::map<std::string, std::string> object_map_;
  std::map<std::string, std::string> morphism_map_;
};

FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
/// Same tables read as a functor dom^op -> cod^op.
FinFunctor opposite_functor(const FinFunctor& f);
FinFunctor constant_functor(const CatPtr& dom, const CatPtr& cod,
                            const std::string& obj);
/// Projections of product(c, d) and pairing into it.
FinFunctor proj1(const CatPtr& c, const CatPtr& d);
FinFunctor proj2(const CatPtr& c, const CatPtr& d);
FinFunctor pair_into_product(const FinFunctor& f, const FinFunctor& g);
/// product(f, g) : product(dom f, dom g) -> product(cod f, cod g).
FinFunctor product_functor(const FinFunctor& f, const FinFunctor& g);
/// Inclusion of a wide or full subcategory built by the helpers above.
FinFunctor subcategory_inclusion(const CatPtr& sub, const CatPtr& ambient);

/// Literal pullback of f and g over their shared codomain.  Objects are
/// pairs "(x,y)" with f(x) = g(y), morphisms pairs "(u,v)" with f(u) = g(v);
/// to_dom_f and to_dom_g are the two projections.
struct PullbackCat {
  CatPtr total;
  FinFunctor to_dom_f;
  FinFunctor to_dom_g;
};
PullbackCat pullback_category(const FinFunctor& f, const FinFunctor& g);

/// Splits an identifier of the form "(a,b)" produced by product() or
/// pullback_category() at its top-level comma.
std::pair<std::string, std::string> split_pair_id(const std::string& id);
std::string pair_id(const std::string& a, const std::string& b);

/// A natural transformation with exhaustively checked naturality squares.
class NatTransf {
 public:
  /// components maps each object x of the shared domain to a morphism
  /// source(x) -> target(x) in the shared codomain.  Throws NonFunctorial
  /// when endpoints mismatch or a naturality square fails.
  static NatTransf make(FinFunctor source, FinFunctor target,
                        std::map<std::string, std::string> components);

  const FinFunctor& source() const { return source_; }
  const FinFunctor& target() const { return target_; }
  const std::string& at(const std::string& x) const;
  const std::map<std::string, std::string>& components() const {
    return components_;
  }
  bool is_iso() const;

 private:
  NatTransf(FinFunctor source, FinFunctor target,
            std::map<std::string, std::string> components)
      : source_(std::move(source)),
        target_(std::move(target)),
        components_(std::move(components)) {}
  FinFunctor source_;
  FinFunctor target_;
  std::map<std::string, std::string> components_;
};

NatTransf identity_transformation(const FinFunctor& f);
NatTransf vertical_compose(const NatTransf& second, const NatTransf& first);
/// h * alpha : h.source -> h.target pre- and post-composition whiskers.
NatTransf whisker_left(const FinFunctor& h, const NatTransf& alpha);
NatTransf whisker_right(const NatTransf& alpha, const FinFunctor& k);

/// An adjunction left -| right with validated triangle identities.
class Adjunction {
 public:
  /// unit: id => right after left; counit: left after right => id.
  /// Throws NonFunctorial when the triangles fail.
  static Adjunction make(FinFunctor left, FinFunctor right, NatTransf unit,
                         NatTransf counit);

  const FinFunctor& left() const { return left_; }
  const FinFunctor& right() const { return right_; }
  const NatTransf& unit() const { return unit_; }
  const NatTransf& counit() const { return counit_; }

  /// Image of phi : left(x) -> y under the hom bijection, and back.
  std::string transpose_to_right(const std::string& x,
                                 const std::string& phi) const;
  std::string transpose_to_left(const std::string& y,
                                const std::string& psi) const;

 private:
  Adjunction(FinFunctor left, FinFunctor right, NatTransf unit,
             NatTransf counit)
      : left_(std::move(left)),
        right_(std::move(right)),
        unit_(std::move(unit)),
        counit_(std::move(counit)) {}
  FinFunctor left_;
  FinFunctor right_;
  NatTransf unit_;
  NatTransf counit_;
};

enum class AdjointSide { left, right };

/// Searches for an adjoint of g on the requested side by initial (terminal)
/// objects of the relevant comma categories.  Returns nothing when some
/// comma category has no initial object.  Candidate ties are broken by least
/// identifier; AmbiguousInitial signals two non-isomorphic candidates, which
/// a valid category cannot produce.
std::optional<Adjunction> find_adjoint(const FinFunctor& g, AdjointSide side);

/// Exhaustive check of the hom bijection and its naturality in both
/// variables; used by tests on top of the triangle identities.
bool adjunction_bijection_natural(const Adjunction& adj);

struct LocalizationCertificate {
  bool inverts_w = false;
  bool reflective = false;
};

/// inverts_w: every member of w maps to an isomorphism.  reflective: f has a
/// fully faithful left or right adjoint.  Sufficient evidence for f being a
/// localisation at w; failure of the certificate refutes nothing.
LocalizationCertificate localization_certificate(
    const FinFunctor& f, const std::set<std::string>& w);

/// Bounded search for an equivalence between c and d: a functor with a
/// quasi-inverse, returned as (forward, backward, unit, counit) with unit
/// and counit natural isomorphisms.  Throws SearchCapExceeded past caps.
struct Equivalence {
  FinFunctor forward;
  FinFunctor backward;
  NatTransf unit;    // id_c => backward after forward
  NatTransf counit;  // forward after backward => id_d
};
std::optional<Equivalence> find_equivalence(const CatPtr& c, const CatPtr& d,
                                            const Caps& caps = {});

/// True when the assignment x -> x, u -> u is an isomorphism c -> d.
bool identity_assignment_isomorphism(const FinCat& c, const FinCat& d);

/// All natural transformations f => g between parallel functors, in a
/// deterministic order (components chosen objectwise by sorted identifier).
std::vector<NatTransf> enumerate_nat_transfs(const FinFunctor& f,
                                             const FinFunctor& g);

/// True when some natural isomorphism f => g exists.
bool naturally_isomorphic(const FinFunctor& f, const FinFunctor& g);

}  // namespace fibcalc
