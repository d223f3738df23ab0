#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "fibcalc/caps.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"

namespace fibcalc {

enum class Variance { covariant, contravariant };
enum class Side { A, B };

/// A pseudofunctor from a finite base into categories, presented by literal
/// fibre categories, transport functors, and explicit coherence data.
///
/// Conventions, for f: a -> b in the base:
///   - covariant:      transport(f): fibre(a) -> fibre(b),
///     comp_iso(g, f): T(g after f) => T(g) after T(f);
///   - contravariant:  transport(f): fibre(b) -> fibre(a),
///     comp_iso(g, f): T(g after f) => T(f) after T(g).
/// unit_iso(a): T(id_a) => id on fibre(a).  make() checks endpoints, that
/// every coherence component is invertible, the two unit triangles for every
/// arrow, and the associativity pentagon on every composable triple, and
/// throws NonFunctorial naming the first failure.
///
/// A pseudofunctor produced from a two-variable fibration additionally
/// carries the other base factor: over(a): fibre(a) -> over_base(), with
/// transports strictly over it and coherence components over identities.
/// side() records which factor of the original product was straightened.
class PseudoFunctor {
 public:
  using CompKey = std::pair<std::string, std::string>;

  static PseudoFunctor make(CatPtr base, Variance variance,
                            std::map<std::string, CatPtr> fibres,
                            std::map<std::string, FinFunctor> transport,
                            std::map<std::string, NatTransf> unit_isos,
                            std::map<CompKey, NatTransf> comp_isos);
  static PseudoFunctor make_over(CatPtr base, Variance variance,
                                 std::map<std::string, CatPtr> fibres,
                                 std::map<std::string, FinFunctor> transport,
                                 std::map<std::string, NatTransf> unit_isos,
                                 std::map<CompKey, NatTransf> comp_isos,
                                 CatPtr over_base,
                                 std::map<std::string, FinFunctor> over,
                                 Side side);

  const CatPtr& base() const { return base_; }
  Variance variance() const { return variance_; }
  Side side() const { return side_; }
  const CatPtr& fibre(const std::string& a) const;
  const FinFunctor& transport(const std::string& f) const;
  const NatTransf& unit_iso(const std::string& a) const;
  const NatTransf& comp_iso(const std::string& g, const std::string& f) const;

  bool has_over() const { return over_base_ != nullptr; }
  const CatPtr& over_base() const { return over_base_; }
  const FinFunctor& over(const std::string& a) const;

 private:
  PseudoFunctor() = default;

  CatPtr base_;
  Variance variance_ = Variance::covariant;
  Side side_ = Side::A;
  std::map<std::string, CatPtr> fibres_;
  std::map<std::string, FinFunctor> transport_;
  std::map<std::string, NatTransf> unit_isos_;
  std::map<CompKey, NatTransf> comp_isos_;
  CatPtr over_base_;
  std::map<std::string, FinFunctor> over_;
};

/// Straightens a fibration along the cleavage of find_cocartesian_lift
/// (covariant) or find_cartesian_lift (contravariant).  Fibres are the
/// literal fibre categories, transports come from the chosen lifts, and the
/// coherence isomorphisms are the unique comparison factorisations between a
/// chosen lift and a composite of chosen lifts.  Throws NotAFibration when
/// some object has no lift of the required kind.
PseudoFunctor straighten(const FinFunctor& p, Variance variance);

/// Two-variable form: straightens over the named factor only.  The fibres
/// become categories over the other factor and the transports functors over
/// it; lifts are taken over arrows that are the identity in the unnamed
/// coordinate.
PseudoFunctor straighten(const TwoVarFib& p, Variance variance, Side side);

/// Same data read over the opposite base with the opposite variance:
/// transports and units are reused identifier for identifier and the
/// composition witnesses swap their key order.  Involutive on the nose.
PseudoFunctor flip(const PseudoFunctor& f);

/// Grothendieck construction.  When variance differs from f.variance() the
/// pseudofunctor is flipped first, so the output base is the opposite of
/// f.base().  Objects are pairs of a base object and a fibre object;
/// morphisms pair a base arrow g with a fibre arrow u, from transport(g) of
/// the source (covariant) or into transport(g) of the target
/// (contravariant); composition is strictified through the coherence
/// witnesses.
///
/// Naming: when fibre identifiers are globally distinct and every identity
/// transport is strict, objects keep their bare fibre names and arrows over
/// base identities keep their bare fibre names, while the remaining arrows
/// are written "(g,u)"; otherwise objects are "(a,x)" and all arrows
/// "(g,u)".  A pair label shared by two arrows gains the endpoint the pair
/// leaves undetermined as a prefix.  The straightened-over base returns to
/// the side recorded by f.side(); a pseudofunctor without over-structure
/// unstraightens over a terminal second factor.
TwoVarFib unstraighten(const PseudoFunctor& f, Variance variance);

enum class DualDirection { ct, cc };

/// Dualisation in the named variable: straighten over that side, then
/// unstraighten with the opposite variance, which puts the opposite of that
/// base factor under the result.
///   side A, ct: a Gray fibration over (A, B) becomes a curved
///     orthofibration over (A^op, B); cc inverts this.
///   side B, ct: a curved orthofibration over (A, B) becomes an op-Gray
///     fibration over (A, B^op); cc inverts this.
/// Preconditions are checked through classify and violations throw
/// NotAFibration carrying the classify witness.  For side B, cc the input
/// must in addition be cartesian over B: the construction consumes lifts
/// that are cartesian in the whole total category, which an op-Gray
/// fibration only provides inside its right part.
TwoVarFib dualize(const TwoVarFib& p, Side side, DualDirection direction);

/// Edge classes a fibred equivalence is required to preserve in both
/// directions.
struct EdgeSpec {
  bool cartesian = false;
  bool cocartesian = false;
  bool locally_cartesian = false;
  bool locally_cocartesian = false;
};

/// An equivalence over a fixed base: both functors commute with the
/// projections on the nose, and unit and counit are natural isomorphisms
/// whose components are vertical.
struct FibEquivalence {
  FinFunctor forward;
  FinFunctor backward;
  NatTransf unit;    // id => backward after forward
  NatTransf counit;  // forward after backward => id
  EdgeSpec preserved_edges;  // the classes the search verified
};

/// Bounded search for a fibred equivalence between p and q, which must share
/// both base presentations (BadInput otherwise).  Functor candidates map
/// every object and arrow over its own projection image; candidates that
/// move a requested edge class off itself are discarded.  Returns the first
/// witness in lexicographic search order, or nothing.  Throws
/// SearchCapExceeded when a total exceeds caps.max_objects or
/// caps.max_morphisms, or when the backtracking budget caps.search_budget is
/// exhausted.
std::optional<FibEquivalence> fib_equivalent(const TwoVarFib& p,
                                             const TwoVarFib& q,
                                             const EdgeSpec& edges,
                                             const Caps& caps = {});

}  // namespace fibcalc
