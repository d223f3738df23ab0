#pragma once

// Calculus of mates for families of adjunctions indexed by a base
// category.  A fibred map whose fibres admit left adjoints is turned into
// the adjoint family on the opposite base together with the comparison
// two-cells relating transports on either side, and the classical
// exchange identities between those two-cells are checked rather than
// assumed.

#include "fibcalc/caps.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"
#include "fibcalc/grothendieck.hpp"
#include "fibcalc/twistfree.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fibcalc {

// A functor between two categories fibred over a common base, commuting
// with the projections on the nose.  The projections are stored with the
// map so later constructions never have to guess them.
struct FibredMap {
  FinFunctor dom_proj;
  FinFunctor cod_proj;
  FinFunctor map;

  // Requires the domain and codomain of map to carry the presentations of
  // the projection domains, the two projection codomains to share one
  // presentation, and cod_proj composed with map to equal dom_proj as
  // tables.  Throws BadInput otherwise.
  static FibredMap make(FinFunctor dom_proj, FinFunctor cod_proj,
                        FinFunctor map);
};

// Outcome of the two independent detection routes for fibrewise left
// adjoints of a fibred map.  fibrewise records the per fibre search,
// fibrational records the classification of the associated cylinder, and
// witness names the first base object whose fibre has no adjoint.
// per_fibre holds the adjunctions found before the first failure.
struct ParamRightAdjointReport {
  bool fibrewise = false;
  bool fibrational = false;
  bool param_right_adjoint = false;
  std::map<std::string, Adjunction> per_fibre;
  std::optional<std::string> witness;
};

// A fibred map together with its fibrewise left adjoints and the
// comparison cells between the two transport orders.
//
// The member left is the adjoint family extracted from dual_cylinder; it
// lives over the opposite base via left_dom_proj and left_cod_proj.  For
// a base arrow m the cell rho.at(m) compares transporting then applying
// the map against applying then transporting, and lambda.at(m) compares
// the two orders for the adjoint family.  Both tables are keyed by every
// base morphism identifier, identities included, and at identities both
// cells are invertible.
struct ParamAdjunction {
  CatPtr base;
  FibredMap right;
  TwoVarFib cylinder;
  TwoVarFib dual_cylinder;
  FinFunctor left;
  FinFunctor left_dom_proj;
  FinFunctor left_cod_proj;
  std::map<std::string, Adjunction> per_fibre;
  std::map<std::string, NatTransf> rho;
  std::map<std::string, NatTransf> lambda;
};

// Componentwise comparison between the stored comparison cells and the
// ones reconstructed from each other through the adjunction data.  Each
// failure appends one entry naming the base arrow and fibre object.
struct MateReport {
  bool lambda_matches = false;
  bool rho_matches = false;
  std::vector<std::string> mismatches;
};

// Result of comparing the two pullbacks of relative twisted arrow
// fibrations induced by an adjoint pair of fibred maps, together with the
// edge lemmas used along the way.  notes collects human readable
// diagnostics for any failed check.
struct CorrPullbackReport {
  TwoVarFib lhs;
  TwoVarFib rhs;
  std::optional<FibEquivalence> equivalence;
  bool pullbacks_equivalent = false;
  bool fibre_counts_match = false;
  bool left_fibration_legs = false;
  bool twisted_cartesian_lemma = false;
  bool fibre_cartesian_promotion = false;
  std::size_t twisted_edges_checked = 0;
  std::vector<std::string> notes;
};

// Right adjoint of a two variable functor in its first variable, with the
// underlying parametrised adjunction, the full adjunct dictionary, and
// the induced functor between twisted arrow pullbacks.  adjuncts is keyed
// by the pullback object name pairing a domain object with an arrow out
// of its image.
struct TwoVarAdjoint {
  FinFunctor right;
  ParamAdjunction pa;
  std::map<std::string, std::string> adjuncts;
  std::size_t checked_triples = 0;
  bool bijection_natural = false;
  FinFunctor tw_functor;
};

// Mapping cylinder of a fibred map, fibred over the interval in the first
// leg and the common base in the second.  Objects are tagged copies
// (0,y) of the codomain side and (1,x) of the domain side; arrows from
// degree 0 to degree 1 are pairs (x, phi) with phi an arrow from y to the
// image of x.  Lifting the interval arrow at (1,x) by the identity of
// the image exhibits the cylinder as cartesian in the interval direction.
TwoVarFib mapping_cylinder(const FibredMap& g);

// Runs both detection routes and insists they agree: every fibre map must
// have a left adjoint, and the cylinder must classify as a curved
// orthofibration whose restriction over invertible base arrows is
// cocartesian in the interval direction.  Throws CriteriaDisagree if the
// two routes return different verdicts and BadInput if either projection
// fails to be a cocartesian fibration.
ParamRightAdjointReport is_param_right_adjoint(const FibredMap& g);

// Builds the parametrised adjunction of a fibred map.  The adjoint family
// is read off from interval direction lifts in the dualised cylinder and
// cross checked against the fibrewise adjoints; a mismatch throws
// CriteriaDisagree.  rho components are the unique vertical factorisations
// of mapped cocartesian lifts through the codomain side cleavage, lambda
// components are extracted from the dual cylinder, and at identity base
// arrows both are verified to be invertible.  Throws BadInput when the
// map is not a parametrised right adjoint.
ParamAdjunction adj(const FibredMap& g);

// Exchange composite of a comparison cell across a pair of adjunctions:
// counit after adjoint image of the cell after adjoint image of the unit.
// transport_dom and transport_cod are the transports on the two sides of
// the square, at_src and at_tgt the adjunctions at its ends.  Components
// compose in the domain side fibre of the target.
NatTransf beck_chevalley(const NatTransf& rho_beta,
                         const FinFunctor& transport_dom,
                         const FinFunctor& transport_cod,
                         const Adjunction& at_src, const Adjunction& at_tgt);

// Checks, for every base arrow, that the stored lambda equals the
// exchange composite of the stored rho and that rho is recovered from
// lambda by the dual composite.  Never throws; failures are reported.
MateReport verify_mate(const ParamAdjunction& pa);

// Unit of the parametrised adjunction as one uncurried functor from the
// product of the unit apex with the interval to the codomain side total
// category.  The apex pairs a degree zero object of the dual cylinder
// with a base arrow out of its image; at each such pair the interval
// component is the mapped lambda cell followed by the fibrewise unit at
// the transported object.  Functoriality of the result is exactly the
// cocycle rule for the lambda table; components are checked to be
// vertical and to restrict to the fibrewise units over identity arrows,
// with NonFunctorial thrown on any violation.
FinFunctor param_unit(const ParamAdjunction& pa);

// Counit of the parametrised adjunction, dually: the apex pairs a domain
// side object with a base arrow out of its projection, and values land in
// the degree one fibre of the dual cylinder.  Restricting to identity
// base arrows recovers the fibrewise counits.
FinFunctor param_counit(const ParamAdjunction& pa);

// Universal property of the parametrised adjunction in one functor: on
// the free cocartesian fibration over the comparison functor out of the
// unit apex, an arrow phi out of a transported image is sent to the
// mapped phi composed with the unit component.  The result lands in the
// arrow category of the codomain side and commutes with the target
// projection over the fibred map; over identity base arrows it restricts
// to the fibrewise transposition bijections.
FinFunctor pass_to_adjoint(const ParamAdjunction& pa);

// Forms the relative twisted arrow fibrations of both sides of a
// parametrised adjunction, pulls each back along the comparison functor
// built from the other side, and searches for a fibred equivalence
// between the two pullbacks that preserves cocartesian edges.  Also
// checks the edge lemmas feeding the construction: twisted squares whose
// legs are cocartesian and cartesian are cartesian for the induced map of
// twisted arrow categories, and fibrewise cartesian arrows promote to
// cartesian arrows of the total map when the map preserves cocartesian
// edges.  Search sizes are bounded by caps.
CorrPullbackReport corr_pullback_checks(const ParamAdjunction& pa,
                                        const Caps& caps = {});

// Right adjoint in the first variable of a functor out of a product.
// Requires every partial functor in the first variable to be a left
// adjoint; otherwise throws NotFibrewiseLeftAdjoint naming the failing
// second variable object.  The adjoint is produced both through the
// parametrised adjunction of the opposite family and directly by
// transposition, with the two answers compared; the full adjunct
// dictionary is tabulated, its bijectivity and naturality in all three
// variables checked, and the induced functor between twisted arrow
// pullbacks constructed.
TwoVarAdjoint two_var_adjoint(const FinFunctor& f, const CatPtr& d,
                              const CatPtr& b);

}  // namespace fibcalc
