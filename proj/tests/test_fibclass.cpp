#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "fibcalc/corpus.hpp"
#include "fibcalc/errors.hpp"
#include "fibcalc/fibration.hpp"
#include "fibcalc/fincat.hpp"

using namespace fibcalc;

namespace {

// First projection of the square, wrapped for two-variable classification.
TwoVarFib square_pr1() {
  CatPtr square = product(simplex(1), simplex(1));
  return one_variable(square, simplex(1), proj1(simplex(1), simplex(1)));
}

// The arrows of the walking arrow over source and target: the chain
// id_0 -> f -> id_1 presented as the poset [2] over [1] x [1].
TwoVarFib arrows_of_interval() {
  CatPtr total = simplex(2);
  FinFunctor p1 = FinFunctor::make(total, simplex(1),
                                   {{"0", "0"}, {"1", "0"}, {"2", "1"}},
                                   {{"id_0", "id_0"},
                                    {"id_1", "id_0"},
                                    {"id_2", "id_1"},
                                    {"0<1", "id_0"},
                                    {"1<2", "0<1"},
                                    {"0<2", "0<1"}});
  FinFunctor p2 = FinFunctor::make(total, simplex(1),
                                   {{"0", "0"}, {"1", "1"}, {"2", "1"}},
                                   {{"id_0", "id_0"},
                                    {"id_1", "id_1"},
                                    {"id_2", "id_1"},
                                    {"0<1", "0<1"},
                                    {"1<2", "id_1"},
                                    {"0<2", "0<1"}});
  return TwoVarFib::make(total, simplex(1), simplex(1), p1, p2);
}

// Two cocartesian lifts of the same arrow related by an isomorphism,
// exercising the cleavage tie-break.
FinFunctor two_lift_functor() {
  RawCat raw;
  raw.objects = {"x", "y1", "y2"};
  raw.morphisms = {{"id_x", "x", "x"},   {"id_y1", "y1", "y1"},
                   {"id_y2", "y2", "y2"}, {"i12", "y1", "y2"},
                   {"i21", "y2", "y1"},   {"e1", "x", "y1"},
                   {"e2", "x", "y2"}};
  raw.identities = {{"x", "id_x"}, {"y1", "id_y1"}, {"y2", "id_y2"}};
  auto& c = raw.composition;
  c[{"id_x", "id_x"}] = "id_x";
  c[{"id_y1", "id_y1"}] = "id_y1";
  c[{"id_y2", "id_y2"}] = "id_y2";
  c[{"e1", "id_x"}] = "e1";
  c[{"e2", "id_x"}] = "e2";
  c[{"id_y1", "e1"}] = "e1";
  c[{"id_y2", "e2"}] = "e2";
  c[{"i12", "id_y1"}] = "i12";
  c[{"i21", "id_y2"}] = "i21";
  c[{"id_y2", "i12"}] = "i12";
  c[{"id_y1", "i21"}] = "i21";
  c[{"i12", "i21"}] = "id_y2";
  c[{"i21", "i12"}] = "id_y1";
  c[{"i12", "e1"}] = "e2";
  c[{"i21", "e2"}] = "e1";
  CatPtr total = std::move(raw).validate();
  return FinFunctor::make(total, simplex(1),
                          {{"x", "0"}, {"y1", "1"}, {"y2", "1"}},
                          {{"id_x", "id_0"},
                           {"id_y1", "id_1"},
                           {"id_y2", "id_1"},
                           {"i12", "id_1"},
                           {"i21", "id_1"},
                           {"e1", "0<1"},
                           {"e2", "0<1"}});
}

TwoVarFib empty_fibration() {
  CatPtr total = poset_category({}, {});
  FinFunctor p1 = FinFunctor::make(total, simplex(1), {}, {});
  FinFunctor p2 = FinFunctor::make(total, simplex(1), {}, {});
  return TwoVarFib::make(total, simplex(1), simplex(1), p1, p2);
}

std::map<std::string, bool> flag_map(const FibTaxonomy& t) {
  std::map<std::string, bool> out;
  for (const auto& [name, value] : t.flags()) out[name] = value;
  return out;
}

std::vector<TwoVarFib> fib_corpus() {
  return {q_fibration(),
          q_prime_fibration(),
          arrows_of_interval(),
          square_pr1(),
          one_variable(simplex(2), simplex(2), identity_functor(simplex(2))),
          one_variable(simplex(2), simplex(1),
                       FinFunctor::make(simplex(2), simplex(1),
                                        {{"0", "0"}, {"1", "1"}, {"2", "1"}},
                                        {{"id_0", "id_0"},
                                         {"id_1", "id_1"},
                                         {"id_2", "id_1"},
                                         {"0<1", "0<1"},
                                         {"1<2", "id_1"},
                                         {"0<2", "0<1"}})),
          empty_fibration()};
}

}  // namespace

TEST_CASE("identity edges carry all four edge flags") {
  TwoVarFib q = q_fibration();
  for (const std::string& ob : q.total()->objects()) {
    EdgeClass c = edge_class(q.proj(), q.total()->identity(ob));
    CHECK(c.cartesian);
    CHECK(c.cocartesian);
    CHECK(c.locally_cartesian);
    CHECK(c.locally_cocartesian);
  }
}

TEST_CASE("isomorphisms carry all four edge flags") {
  FinFunctor p = two_lift_functor();
  for (const std::string& e : {"i12", "i21"}) {
    EdgeClass c = edge_class(p, e);
    CHECK(c.cartesian);
    CHECK(c.cocartesian);
    CHECK(c.locally_cartesian);
    CHECK(c.locally_cocartesian);
  }
}

TEST_CASE("horizontal edge of the square is cartesian and cocartesian "
          "for the first projection") {
  TwoVarFib p = square_pr1();
  EdgeClass c = edge_class(p.p1(), "(0<1,id_0)");
  CHECK(c.cartesian);
  CHECK(c.cocartesian);
  CHECK(c.locally_cartesian);
  CHECK(c.locally_cocartesian);
  // A vertical edge has no lifting property relative to the projection.
  EdgeClass v = edge_class(p.p1(), "(id_0,0<1)");
  CHECK_FALSE(v.cartesian);
  CHECK_FALSE(v.cocartesian);
}

TEST_CASE("the comparison edge of the curved example has no edge flags") {
  TwoVarFib q = q_fibration();
  EdgeClass c = edge_class(q.proj(), "11p<11");
  CHECK_FALSE(c.cartesian);
  CHECK_FALSE(c.cocartesian);
  CHECK_FALSE(c.locally_cartesian);
  CHECK_FALSE(c.locally_cocartesian);
}

TEST_CASE("edge_class rejects unknown identifiers") {
  TwoVarFib q = q_fibration();
  CHECK_THROWS_AS(edge_class(q.proj(), "nope"), UnknownMorphism);
}

TEST_CASE("cleavage picks the least target and lifts identities to "
          "identities") {
  FinFunctor p = two_lift_functor();
  CHECK(find_cocartesian_lift(p, "x", "0<1") == "e1");
  CHECK(find_cocartesian_lift(p, "x", "id_0") == "id_x");
  CHECK(find_cartesian_lift(p, "y1", "0<1") == "e1");
  CHECK(find_cartesian_lift(p, "y2", "0<1") == "e2");
  CHECK(find_locally_cocartesian_lift(p, "x", "0<1") == "e1");
  CHECK_THROWS_AS(find_cocartesian_lift(p, "y1", "0<1"), NoLift);
}

TEST_CASE("fibre categories restrict objects and vertical morphisms") {
  TwoVarFib q = q_fibration();
  CatPtr f1 = fibre_category(q.p1(), "1");
  CHECK(f1->object_count() == 3);
  CHECK(f1->morphism_count() == 6);
  CHECK(f1->has_morphism("10<11p"));
  CHECK(f1->has_morphism("11p<11"));
  CHECK_FALSE(f1->has_morphism("10<00"));
  CHECK_THROWS_AS(fibre_category(q.p1(), "7"), UnknownObject);
  FinFunctor inc = fibre_inclusion(q.p1(), "1");
  CHECK(inc.on_obj("10") == "10");
}

TEST_CASE("transports along the base arrows of the curved example") {
  TwoVarFib q = q_fibration();
  // Covariant transport in the second variable.
  FinFunctor up = cocartesian_transport(q.p2(), "0<1");
  CHECK(up.on_obj("00") == "01");
  CHECK(up.on_obj("10") == "11p");
  CHECK(up.on_mor("10<00") == "11p<01");
  // Contravariant transport in the first variable; the base arrow of the
  // opposite runs 1 -> 0, so the transport raises the fibre.
  FinFunctor back = cartesian_transport(q.p1(), "0<1");
  CHECK(back.on_obj("00") == "10");
  CHECK(back.on_obj("01") == "11");
  CHECK(back.on_mor("00<01") == "10<11");
}

TEST_CASE("derived parts of a two-variable fibration") {
  TwoVarFib q = q_fibration();
  CHECK(q.x_l()->morphism_count() == 9);
  CHECK(q.x_l()->has_morphism("10<00"));
  CHECK(q.x_l()->has_morphism("11p<01"));
  CHECK_FALSE(q.x_l()->has_morphism("10<11"));
  CHECK(q.x_r()->morphism_count() == 9);
  CHECK(q.x_r()->has_morphism("10<11"));
  CHECK_FALSE(q.x_r()->has_morphism("11p<01"));
  CHECK(q.proj().on_obj("11p") == "(1,1)");
  CHECK(q.fibre_over_a("1").dom()->morphism_count() == 6);
  CHECK(q.fibre_over_b("0").dom()->object_count() == 2);
}

TEST_CASE("taxonomy of the curved orthofibration example") {
  std::map<std::string, bool> f = flag_map(classify(q_fibration()));
  CHECK(f["curved_ortho"]);
  CHECK_FALSE(f["ortho"]);
  CHECK_FALSE(f["bifib"]);
  // The underlying projection is bicartesian: both composite transports
  // exist globally, they just fail to commute up to isomorphism.
  CHECK(f["cartesian_fib"]);
  CHECK(f["cocartesian_fib"]);
  CHECK(f["locally_cartesian_fib"]);
  CHECK(f["locally_cocartesian_fib"]);
  CHECK(f["bicartesian"]);
  CHECK_FALSE(f["left_fib"]);
  CHECK_FALSE(f["right_fib"]);
  CHECK(f["cocart_over_A"]);
  CHECK(f["cart_over_A"]);
  CHECK(f["cocart_over_B"]);
  CHECK(f["cart_over_B"]);
  CHECK(f["gray"]);
  CHECK(f["op_gray"]);

  FibTaxonomy t = classify(q_fibration());
  REQUIRE(t.witnesses.count("ortho") == 1);
  CHECK(t.witnesses["ortho"].front().find("11p<11") != std::string::npos);
  REQUIRE(t.witnesses.count("bifib") == 1);
  CHECK(t.witnesses["bifib"].front().find("11p<11") != std::string::npos);
}

TEST_CASE("taxonomy of the Gray fibration example") {
  FibTaxonomy t = classify(q_prime_fibration());
  std::map<std::string, bool> f = flag_map(t);
  CHECK(f["gray"]);
  CHECK_FALSE(f["cocartesian_fib"]);
  CHECK_FALSE(f["cartesian_fib"]);
  CHECK(f["locally_cocartesian_fib"]);
  CHECK_FALSE(f["locally_cartesian_fib"]);
  CHECK_FALSE(f["left_fib"]);
  CHECK_FALSE(f["right_fib"]);
  CHECK_FALSE(f["bicartesian"]);
  CHECK(f["cocart_over_A"]);
  CHECK_FALSE(f["cart_over_A"]);
  CHECK_FALSE(f["cocart_over_B"]);
  CHECK(f["cart_over_B"]);
  CHECK_FALSE(f["curved_ortho"]);
  CHECK_FALSE(f["op_gray"]);
  CHECK_FALSE(f["ortho"]);
  CHECK_FALSE(f["bifib"]);
  REQUIRE(t.witnesses.count("cocartesian_fib") == 1);
  CHECK(t.witnesses["cocartesian_fib"].front() ==
        "no cocartesian lift of '(id_0,0<1)' at '00'");
}

TEST_CASE("taking opposites everywhere exchanges the two Gray classes") {
  // The two classes are distinguished by which leg carries the strict
  // lifting structure, so this pins the orientation of both definitions.
  TwoVarFib q = q_prime_fibration();
  TwoVarFib o = TwoVarFib::make(opposite(q.total()), opposite(q.base_a()),
                                opposite(q.base_b()), opposite_functor(q.p1()),
                                opposite_functor(q.p2()));
  std::map<std::string, bool> f = flag_map(classify(o));
  CHECK(f["op_gray"]);
  CHECK_FALSE(f["gray"]);
  CHECK(f["curved_ortho"]);
  CHECK(f["cart_over_A"]);
  CHECK(f["cocart_over_B"]);
  CHECK_FALSE(f["cocart_over_A"]);
  CHECK_FALSE(f["cart_over_B"]);
  CHECK(f["locally_cartesian_fib"]);
  CHECK_FALSE(f["locally_cocartesian_fib"]);
  CHECK_FALSE(f["cartesian_fib"]);
  CHECK_FALSE(f["cocartesian_fib"]);
  // The interchange comparisons run from the corner fibre over (0,1) to the
  // singleton fibre over (1,0) and never touch the doubled fibre, so the
  // opposite is an orthofibration; the non-invertible vertical edge still
  // defeats conservativity.
  CHECK(f["ortho"]);
  CHECK_FALSE(f["bifib"]);
}

TEST_CASE("taxonomy of the arrows of the interval over source and target") {
  std::map<std::string, bool> f = flag_map(classify(arrows_of_interval()));
  CHECK(f["bifib"]);
  CHECK(f["ortho"]);
  CHECK(f["curved_ortho"]);
  CHECK(f["cart_over_A"]);
  CHECK(f["cocart_over_B"]);
  // Globally the projection lifts nothing over the unoccupied corner.
  CHECK_FALSE(f["cartesian_fib"]);
  CHECK_FALSE(f["cocartesian_fib"]);
  CHECK_FALSE(f["cocart_over_A"]);
  CHECK_FALSE(f["cart_over_B"]);
  CHECK_FALSE(f["gray"]);
  CHECK_FALSE(f["op_gray"]);
}

TEST_CASE("one-variable taxonomies") {
  // The identity is every kind of fibration.
  std::map<std::string, bool> id_flags = flag_map(
      classify(one_variable(simplex(2), simplex(2),
                            identity_functor(simplex(2)))));
  for (const auto& [name, value] : id_flags) {
    CAPTURE(name);
    CHECK(value);
  }

  // The chain collapsed onto the interval is bicartesian but its vertical
  // edge obstructs the conservative classes.
  std::map<std::string, bool> f = flag_map(classify(fib_corpus()[5]));
  CHECK(f["cartesian_fib"]);
  CHECK(f["cocartesian_fib"]);
  CHECK(f["bicartesian"]);
  CHECK_FALSE(f["left_fib"]);
  CHECK_FALSE(f["right_fib"]);
  CHECK(f["ortho"]);
  CHECK_FALSE(f["bifib"]);
  CHECK(f["gray"]);

  // The projection from a point has no lifts against the arrow direction.
  std::map<std::string, bool> pt = flag_map(
      classify(one_variable(simplex(1), terminal(),
                            constant_functor(simplex(1), terminal(), "0"))));
  CHECK(pt["cartesian_fib"]);
  CHECK(pt["cocartesian_fib"]);
  CHECK_FALSE(pt["left_fib"]);
  CHECK_FALSE(pt["right_fib"]);
  CHECK_FALSE(pt["bifib"]);
}

TEST_CASE("empty total category is every kind of fibration") {
  std::map<std::string, bool> f = flag_map(classify(empty_fibration()));
  for (const auto& [name, value] : f) {
    CAPTURE(name);
    CHECK(value);
  }
}

TEST_CASE("implication lattice holds on the corpus") {
  for (const TwoVarFib& p : fib_corpus()) {
    FibTaxonomy t = classify(p);
    CHECK((!t.bifib || t.ortho));
    CHECK((!t.ortho || t.curved_ortho));
    CHECK((!t.cocartesian_fib || t.gray));
    CHECK((!t.gray || t.locally_cocartesian_fib));
    CHECK((!t.cartesian_fib || t.locally_cartesian_fib));
    CHECK(t.left_fib ==
          (t.cocartesian_fib && p.proj().is_conservative()));
    CHECK(t.right_fib == (t.cartesian_fib && p.proj().is_conservative()));
    CHECK(t.bicartesian == (t.cartesian_fib && t.cocartesian_fib));
  }
}

TEST_CASE("projection flags against leg flags over invertible components") {
  for (const TwoVarFib& p : fib_corpus()) {
    for (const Mor& u : p.total()->morphisms()) {
      if (p.base_a()->is_iso(p.p1().on_mor(u.id))) {
        CHECK(is_cocartesian_edge(p.proj(), u.id) ==
              is_cocartesian_edge(p.p2(), u.id));
      }
      if (p.base_b()->is_iso(p.p2().on_mor(u.id))) {
        CHECK(is_cartesian_edge(p.proj(), u.id) ==
              is_cartesian_edge(p.p1(), u.id));
      }
    }
  }
}

TEST_CASE("interpolation for the curved orthofibration example") {
  TwoVarFib q = q_fibration();
  std::vector<InterpolationDiagram> ds =
      interpolating_edges(q, InterpolationMode::crvortho);
  REQUIRE(ds.size() == 1);
  const InterpolationDiagram& d = ds.front();
  CHECK(d.interpolating_edge == "11p<11");
  CHECK_FALSE(q.total()->is_iso(d.interpolating_edge));
  CHECK(d.alpha == "0<1");
  CHECK(d.beta == "0<1");
  CHECK(d.seed == "00");
  CHECK(d.image.on_obj("00") == "00");
  CHECK(d.image.on_obj("11p") == "11p");
  CHECK(d.image.on_mor("11p<11") == "11p<11");
  // Decorations: the boundary edges carry the expected flags.
  CHECK(is_cartesian_edge(q.proj(), d.image.on_mor("10<00")));
  CHECK(is_cocartesian_edge(q.proj(), d.image.on_mor("00<01")));
  CHECK(is_cocartesian_edge(q.proj(), d.image.on_mor("10<11p")));
  CHECK(is_cartesian_edge(q.proj(), d.image.on_mor("11<01")));
}

TEST_CASE("the curved example interpolates trivially in Gray mode") {
  TwoVarFib q = q_fibration();
  std::vector<InterpolationDiagram> ds =
      interpolating_edges(q, InterpolationMode::gray);
  REQUIRE(ds.size() == 1);
  CHECK(ds.front().interpolating_edge == "id_01");
  CHECK(q.total()->is_iso(ds.front().interpolating_edge));
}

TEST_CASE("interpolation for the Gray fibration example") {
  TwoVarFib qp = q_prime_fibration();
  std::vector<InterpolationDiagram> ds =
      interpolating_edges(qp, InterpolationMode::gray);
  REQUIRE(ds.size() == 1);
  const InterpolationDiagram& d = ds.front();
  CHECK(d.interpolating_edge == "11p<11");
  CHECK_FALSE(qp.total()->is_iso(d.interpolating_edge));
  CHECK(d.seed == "00");
  CHECK(d.image.on_mor("00<10") == "00<10");
  CHECK(d.image.on_mor("11p<11") == "11p<11");
  CHECK_THROWS_AS(interpolating_edges(qp, InterpolationMode::crvortho),
                  NotAFibration);
}

TEST_CASE("Gray interpolation is invertible exactly for cocartesian "
          "fibrations") {
  for (const TwoVarFib& p : fib_corpus()) {
    FibTaxonomy t = classify(p);
    if (!t.gray) continue;
    bool all_iso = true;
    for (const InterpolationDiagram& d :
         interpolating_edges(p, InterpolationMode::gray))
      all_iso = all_iso && p.total()->is_iso(d.interpolating_edge);
    CHECK(all_iso == t.cocartesian_fib);
  }
}

TEST_CASE("cross-checks agree on the whole corpus") {
  for (const TwoVarFib& p : fib_corpus()) {
    CrossCheckReport r = cross_check(p);
    CHECK(r.entries.size() == 10);
    for (const CheckEntry& e : r.entries) {
      CAPTURE(e.name);
      CAPTURE(e.detail);
      CHECK(e.pass);
    }
  }
}

TEST_CASE("transport criteria fail consistently on the curved example") {
  CrossCheckReport r = cross_check(q_fibration());
  bool seen = false;
  for (const CheckEntry& e : r.entries) {
    if (e.name != "orthofibration criteria") continue;
    seen = true;
    CHECK(e.pass);
    CHECK(e.detail ==
          "interpolation=false contravariant_transport=false "
          "covariant_transport=false");
  }
  CHECK(seen);
}

TEST_CASE("Gray criteria fail consistently on the Gray example") {
  CrossCheckReport r = cross_check(q_prime_fibration());
  for (const CheckEntry& e : r.entries) {
    if (e.name != "cocartesian via Gray criteria") continue;
    CHECK(e.pass);
    CHECK(e.detail.find("fibration=false") != std::string::npos);
    CHECK(e.detail.find("interpolation=false") != std::string::npos);
  }
}
