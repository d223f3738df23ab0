// Classification of functors between finite categories by their lifting
// behaviour: (co)cartesian edges, fibration predicates, cleavages and
// transport, and the taxonomy of two-variable fibrations over a product
// base A x B.
//
// Conventions used throughout:
//   - An edge e: w -> x of p: X -> S is cartesian when for every z, every
//     v: z -> x and sigma: p(z) -> p(w) with p(e) . sigma = p(v) admit
//     exactly one u: z -> w such that e . u = v and p(u) = sigma.
//     Cocartesian is dual.
//   - Locally (co)cartesian means (co)cartesian in the pullback of p along
//     the base arrow [1] -> S picking p(e).
//   - All checks are literal: lifts must exist on the nose, not merely up
//     to equivalence.  A functor to a groupoid can therefore fail to be a
//     fibration here even though its homotopy-invariant refinement is one.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibcalc/fincat.hpp"

namespace fibcalc {

// ---------------------------------------------------------------------------
// Edge-level classification

struct EdgeClass {
  bool cartesian = false;
  bool cocartesian = false;
  bool locally_cartesian = false;
  bool locally_cocartesian = false;
};

/// Classifies the edge `e` of the total category of `p` by exhaustive
/// bijection counting.  Identities are cartesian and cocartesian.
EdgeClass edge_class(const FinFunctor& p, const std::string& e);

bool is_cartesian_edge(const FinFunctor& p, const std::string& e);
bool is_cocartesian_edge(const FinFunctor& p, const std::string& e);

// ---------------------------------------------------------------------------
// One-variable fibration predicates
//
// Each predicate takes the functor regarded as p: X -> S.  The *_witness
// variants return std::nullopt on success and a human-readable description
// of the first violation otherwise; the bool forms are wrappers.

std::optional<std::string> cartesian_fibration_witness(const FinFunctor& p);
std::optional<std::string> cocartesian_fibration_witness(const FinFunctor& p);
std::optional<std::string> locally_cartesian_fibration_witness(const FinFunctor& p);
std::optional<std::string> locally_cocartesian_fibration_witness(const FinFunctor& p);

bool cartesian_fibration(const FinFunctor& p);
bool cocartesian_fibration(const FinFunctor& p);
bool locally_cartesian_fibration(const FinFunctor& p);
bool locally_cocartesian_fibration(const FinFunctor& p);

/// Left fibration: every morphism of the total category is p-cocartesian
/// and cocartesian lifts exist.  Right fibration is dual.
bool left_fibration(const FinFunctor& p);
bool right_fibration(const FinFunctor& p);

/// True when every vertical morphism (image an identity) is invertible.
bool groupoid_fibres(const FinFunctor& p);

// ---------------------------------------------------------------------------
// Fibres and cleavages

/// The fibre of p over the base object s: all objects sent to s and all
/// morphisms sent to the identity of s, with their identifiers unchanged.
CatPtr fibre_category(const FinFunctor& p, const std::string& s);

/// Inclusion of fibre_category(p, s) into the total category.
FinFunctor fibre_inclusion(const FinFunctor& p, const std::string& s);

/// Least cocartesian edge out of x over the base arrow beta, ordered by
/// (target identifier, morphism identifier).  Identity base arrows always
/// receive the identity lift.  Returns std::nullopt when no lift exists.
std::optional<std::string> find_cocartesian_lift(const FinFunctor& p,
                                                 const std::string& x,
                                                 const std::string& beta);

/// Least cartesian edge into x over beta, ordered by (source identifier,
/// morphism identifier).  Identity base arrows receive the identity lift.
std::optional<std::string> find_cartesian_lift(const FinFunctor& p,
                                               const std::string& x,
                                               const std::string& beta);

std::optional<std::string> find_locally_cocartesian_lift(const FinFunctor& p,
                                                         const std::string& x,
                                                         const std::string& beta);
std::optional<std::string> find_locally_cartesian_lift(const FinFunctor& p,
                                                       const std::string& x,
                                                       const std::string& beta);

/// Covariant transport along beta: src(beta) fibre to tgt(beta) fibre,
/// built from the cleavage of find_cocartesian_lift.  Throws NoLift when
/// some object has no cocartesian lift.
FinFunctor cocartesian_transport(const FinFunctor& p, const std::string& beta);

/// Contravariant transport along beta: tgt(beta) fibre to src(beta) fibre.
FinFunctor cartesian_transport(const FinFunctor& p, const std::string& beta);

// ---------------------------------------------------------------------------
// Two-variable fibrations

/// A functor p = (p1, p2): X -> A x B presented by its two legs, together
/// with the derived data used by classification:
///   - proj: the induced functor into product(A, B);
///   - x_l / proj_l: the wide subcategory of morphisms whose p2-image is
///     invertible, over product(A, core(B));
///   - x_r / proj_r: dually, p1-image invertible, over product(core(A), B).
class TwoVarFib {
 public:
  static TwoVarFib make(CatPtr total, CatPtr base_a, CatPtr base_b,
                        FinFunctor p1, FinFunctor p2);

  const CatPtr& total() const { return total_; }
  const CatPtr& base_a() const { return base_a_; }
  const CatPtr& base_b() const { return base_b_; }
  const FinFunctor& p1() const { return p1_; }
  const FinFunctor& p2() const { return p2_; }

  const CatPtr& base_product() const { return prod_; }
  const FinFunctor& proj() const { return proj_; }

  const CatPtr& x_l() const { return x_l_; }
  const FinFunctor& proj_l() const { return proj_l_; }
  const CatPtr& x_r() const { return x_r_; }
  const FinFunctor& proj_r() const { return proj_r_; }

  /// Restriction of p2 to the objects and vertical morphisms over a in A,
  /// regarded as a functor fibre -> B.
  FinFunctor fibre_over_a(const std::string& a) const;
  /// Restriction of p1 to the fibre over b in B, as a functor fibre -> A.
  FinFunctor fibre_over_b(const std::string& b) const;

 private:
  TwoVarFib(CatPtr total, CatPtr base_a, CatPtr base_b, FinFunctor p1,
            FinFunctor p2, CatPtr prod, FinFunctor proj, CatPtr x_l,
            FinFunctor proj_l, CatPtr x_r, FinFunctor proj_r);

  CatPtr total_, base_a_, base_b_;
  FinFunctor p1_, p2_;
  CatPtr prod_;
  FinFunctor proj_;
  CatPtr x_l_;
  FinFunctor proj_l_;
  CatPtr x_r_;
  FinFunctor proj_r_;
};

/// Wraps a one-variable functor p: X -> S as a two-variable fibration with
/// terminal second base, so the taxonomy below applies to it.
TwoVarFib one_variable(CatPtr total, CatPtr base, const FinFunctor& p);

/// Taxonomy of a two-variable fibration.  Every flag is computed
/// independently; `witnesses` records, for each false flag (keyed by the
/// names returned by flags()), descriptions of violations found.
struct FibTaxonomy {
  bool cartesian_fib = false;
  bool cocartesian_fib = false;
  bool locally_cocartesian_fib = false;
  bool locally_cartesian_fib = false;
  bool left_fib = false;
  bool right_fib = false;
  bool bicartesian = false;
  bool cocart_over_a = false;
  bool cart_over_a = false;
  bool cocart_over_b = false;
  bool cart_over_b = false;
  bool curved_ortho = false;
  bool gray = false;
  bool op_gray = false;
  bool ortho = false;
  bool bifib = false;
  std::map<std::string, std::vector<std::string>> witnesses;

  bool flag(const std::string& name) const;
  /// All sixteen flags in a fixed order; the over-the-factor flags are
  /// spelled cocart_over_A, cart_over_A, cocart_over_B, cart_over_B.
  std::vector<std::pair<std::string, bool>> flags() const;
};

/// Computes the full taxonomy.  curved_ortho, gray and op_gray are each
/// evaluated through several independent equivalent characterisations.
/// When both bases have no non-identity isomorphisms a disagreement
/// indicates a bug and throws InconsistentCriteria; over bases with
/// non-trivial cores, where on-the-nose lifts over distinct invertible
/// arrows need not be interconvertible, a disagreement is recorded as a
/// witness instead.
FibTaxonomy classify(const TwoVarFib& p);

// ---------------------------------------------------------------------------
// Interpolating edges

enum class InterpolationMode { crvortho, gray };

/// One interpolation square: the shape poset, its image in the total
/// category (validated for commutativity), and the comparison edge between
/// the two composite transports of the chosen base arrows.
struct InterpolationDiagram {
  CatPtr shape;
  FinFunctor image;
  std::string interpolating_edge;
  std::string alpha;
  std::string beta;
  std::string seed;
};

/// Shape of a curved-orthofibration interpolation square: the poset on
/// 00, 01, 10, 11, 11p generated by 10 < 00 < 01, 10 < 11p < 11 < 01.
CatPtr interpolation_shape_crvortho();

/// Shape of a Gray interpolation square: the poset on 00, 01, 10, 11, 11p
/// generated by 00 < 10 < 11p < 11, 00 < 01 < 11, with 01 and 11p
/// incomparable.
CatPtr interpolation_shape_gray();

/// Enumerates all interpolation squares over pairs of non-identity base
/// arrows (alpha, beta).  In crvortho mode the seed object lies over
/// (tgt(alpha), src(beta)) and the edge compares the cartesian-then-
/// cocartesian transport with the cocartesian-then-cartesian one; the edge
/// is computed by two different universal-property recipes which must
/// agree.  In gray mode the seed lies over (src(alpha), src(beta)) and the
/// edge compares the two composite cocartesian transports.  Requires the
/// corresponding flag of classify(p); throws NotAFibration otherwise.
std::vector<InterpolationDiagram> interpolating_edges(const TwoVarFib& p,
                                                      InterpolationMode mode);

// ---------------------------------------------------------------------------
// Redundant cross-checks

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CrossCheckReport {
  std::vector<CheckEntry> entries;
  bool all_pass() const;
};

/// Re-derives classification facts along independent routes and reports
/// agreement:
///   - locally cartesian (resp. cocartesian) fibrations are cartesian
///     fibrations exactly when composites of locally (co)cartesian edges
///     stay locally (co)cartesian;
///   - for curved orthofibrations, invertibility of all interpolating
///     edges, preservation of fibrewise cocartesian edges by contravariant
///     transport, and preservation of fibrewise cartesian edges by
///     covariant transport coincide;
///   - for curved orthofibrations, the five characterisations of
///     bifibrations coincide;
///   - for Gray fibrations, the five characterisations of being globally
///     cocartesian coincide, and conservativity, groupoid fibres and being
///     a left fibration coincide.
CrossCheckReport cross_check(const TwoVarFib& p);

}  // namespace fibcalc
