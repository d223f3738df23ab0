#pragma once

#include <map>
#include <string>
#include <utility>

#include "fibcalc/errors.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"
#include "fibcalc/grothendieck.hpp"

namespace fibcalc {

/// Twisted-arrow categories, arrow categories, free fibrations, and the
/// correspondence construction.  Objects of a twisted or arrow category are
/// the morphisms of the base; morphisms are squares stored by their two
/// non-trivial components.  Names are "(u,v)" pairs; when two squares would
/// collide, every square uniformly gains its source object as a prefix, and
/// the full endpoint pair as a second fallback.

enum class TwVariant { left, right };

/// Twisted-arrow category with its source-target projection.  The right
/// variant is fibred over (base, base^op); a square f -> f' is a pair (u, b)
/// with f = b . f' . u, composing as (u2, b2) . (u1, b1) = (u2 u1, b1 b2).
/// The left variant is the same data with morphism orientation reversed,
/// fibred over (base^op, base); its total category is by construction the
/// identifier-level opposite of the right variant's.
struct TwistedArrowCat {
  TwVariant variant;
  CatPtr base;
  TwoVarFib fibration;
  /// Square components: morphism name -> (u, b).
  std::map<std::string, std::pair<std::string, std::string>> squares;
};

TwistedArrowCat tw(const CatPtr& base, TwVariant variant);

/// Arrow category fibred over (base, base) by sources and targets.  A
/// morphism f -> f' is a commuting square (u, v) with v . f = f' . u,
/// composing componentwise.
TwoVarFib arrow_cat(const CatPtr& base);

/// Functoriality of tw: maps a square through f component by component.
/// The variants of dom_tw and cod_tw must agree and their bases must match
/// the endpoints of f (BadInput otherwise).
FinFunctor twisted_functor(const FinFunctor& f, const TwistedArrowCat& dom_tw,
                           const TwistedArrowCat& cod_tw);

/// Free fibration on phi : E -> B.  Covariant (free cocartesian): objects
/// are pairs (e, b : phi e -> x), morphisms (g, d) with d . b = b' . phi g,
/// projected to the target of b.  Contravariant (free cartesian): objects
/// (e, b : x -> phi e), morphisms (g, d) with phi g . b = b' . d, projected
/// to the source of b.  unit embeds E at the identity arrows.
struct FreeFibration {
  Variance variance;
  FinFunctor phi;
  FinFunctor projection;
  FinFunctor unit;
  /// Morphism name -> (g, d) components.
  std::map<std::string, std::pair<std::string, std::string>> squares;
};

FreeFibration free_fib(const FinFunctor& phi, Variance variance);

/// The extension of f along the unit of fr: the unique functor over the base
/// that restricts to f and sends fr-(co)cartesian edges to target-(co)cartesian
/// edges.  Objects go to transported images of f along the recorded arrow;
/// morphisms to the unique factorisation over their base component.  target
/// must classify as a fibration of the variance of fr (NotAFibration) and
/// satisfy target . f = fr.phi (BadInput).
FinFunctor extend_to_free(const FreeFibration& fr, const FinFunctor& f,
                          const FinFunctor& target);

/// Compares two constructions of the dual of a free cartesian fibration on
/// phi : E -> B: the cocartesian dual of free_fib(phi, contravariant), and
/// the pullback of the left-handed twisted projection of B along phi.  Both
/// are returned fibred over opposite(B) together with the witnessing
/// equivalence.  Throws SearchCapExceeded past caps and CriteriaDisagree if
/// no fibred equivalence exists.
struct DualFreeReport {
  TwoVarFib dual_side;
  TwoVarFib pullback_side;
  FibEquivalence equivalence;
};

DualFreeReport dual_of_free_check(const FinFunctor& phi,
                                  const Caps& caps = {});

/// A correspondence: a category of degree-crossing arrows with a certified
/// left-fibration projection.  For a plain family the projection lands in
/// product(opposite(E0), E1) for the two degree fibres E0, E1; for a family
/// parametrised by a second base it lands in the fibrewise product glued
/// over that base.
struct Correspondence {
  CatPtr total;
  CatPtr pair_base;
  FinFunctor projection;
  bool left_fibration_certificate = false;
};

/// Correspondence of e, whose first base must be the interval (BadInput).
/// Objects are the arrows crossing from degree 0 to degree 1; a morphism
/// V -> V' is a pair (a, c) with V' = c . V . a, where a is vertical in
/// degree 0 and c vertical in degree 1.  When the second base of e is not
/// the point, e must have cocartesian transports in that variable
/// (NotAFibration) and the construction is performed fibrewise and glued.
Correspondence corr(const TwoVarFib& e);

}  // namespace fibcalc
