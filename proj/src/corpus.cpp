#include "fibcalc/corpus.hpp"

#include <map>
#include <string>

namespace fibcalc {

TwoVarFib q_fibration() {
  CatPtr total = interpolation_shape_crvortho();
  CatPtr a = opposite(simplex(1));
  CatPtr b = simplex(1);
  FinFunctor p1 = FinFunctor::make(
      total, a,
      {{"00", "0"}, {"01", "0"}, {"10", "1"}, {"11", "1"}, {"11p", "1"}},
      {{"id_00", "id_0"},
       {"id_01", "id_0"},
       {"id_10", "id_1"},
       {"id_11", "id_1"},
       {"id_11p", "id_1"},
       {"10<00", "0<1"},
       {"00<01", "id_0"},
       {"10<11p", "id_1"},
       {"11<01", "0<1"},
       {"11p<11", "id_1"},
       {"10<01", "0<1"},
       {"10<11", "id_1"},
       {"11p<01", "0<1"}});
  FinFunctor p2 = FinFunctor::make(
      total, b,
      {{"00", "0"}, {"01", "1"}, {"10", "0"}, {"11", "1"}, {"11p", "1"}},
      {{"id_00", "id_0"},
       {"id_01", "id_1"},
       {"id_10", "id_0"},
       {"id_11", "id_1"},
       {"id_11p", "id_1"},
       {"10<00", "id_0"},
       {"00<01", "0<1"},
       {"10<11p", "0<1"},
       {"11<01", "id_1"},
       {"11p<11", "id_1"},
       {"10<01", "0<1"},
       {"10<11", "0<1"},
       {"11p<01", "id_1"}});
  return TwoVarFib::make(total, a, b, std::move(p1), std::move(p2));
}

TwoVarFib q_prime_fibration() {
  CatPtr total = interpolation_shape_gray();
  CatPtr a = simplex(1);
  CatPtr b = simplex(1);
  FinFunctor p1 = FinFunctor::make(
      total, a,
      {{"00", "0"}, {"01", "0"}, {"10", "1"}, {"11", "1"}, {"11p", "1"}},
      {{"id_00", "id_0"},
       {"id_01", "id_0"},
       {"id_10", "id_1"},
       {"id_11", "id_1"},
       {"id_11p", "id_1"},
       {"00<10", "0<1"},
       {"00<01", "id_0"},
       {"10<11p", "id_1"},
       {"01<11", "0<1"},
       {"11p<11", "id_1"},
       {"00<11p", "0<1"},
       {"00<11", "0<1"},
       {"10<11", "id_1"}});
  FinFunctor p2 = FinFunctor::make(
      total, b,
      {{"00", "0"}, {"01", "1"}, {"10", "0"}, {"11", "1"}, {"11p", "1"}},
      {{"id_00", "id_0"},
       {"id_01", "id_1"},
       {"id_10", "id_0"},
       {"id_11", "id_1"},
       {"id_11p", "id_1"},
       {"00<10", "id_0"},
       {"00<01", "0<1"},
       {"10<11p", "0<1"},
       {"01<11", "id_1"},
       {"11p<11", "id_1"},
       {"00<11p", "0<1"},
       {"00<11", "0<1"},
       {"10<11", "0<1"}});
  return TwoVarFib::make(total, a, b, std::move(p1), std::move(p2));
}

}  // namespace fibcalc
