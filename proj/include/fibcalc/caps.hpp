#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace fibcalc {

/// Size limits for the bounded searches (equivalence search, adjoint
/// uniqueness sweeps) and for hard construction guards.  The defaults suit
/// hand-sized inputs; verify suites pass larger values where pullback totals
/// outgrow them.
struct Caps {
  /// Per-side limits for the category equivalence search.
  std::size_t max_objects = 6;
  std::size_t max_morphisms = 40;
  /// Largest simplex dimension accepted by the Gray tensor constructions.
  std::size_t max_grid = 3;
  /// Node budget for backtracking searches; guards against blowup on
  /// adversarial cleavage-free inputs rather than on the bundled corpus.
  std::size_t search_budget = 2000000;

  /// Parses the "objects:morphisms" or "objects:morphisms:grid" form used by
  /// the FIBCALC_CAPS environment variable and the --caps flag.  Returns
  /// nothing on malformed text; the caller decides whether that is fatal.
  static std::optional<Caps> parse(const std::string& text);

  /// Caps from FIBCALC_CAPS if set and well formed, defaults otherwise.
  static Caps from_environment();
};

}  // namespace fibcalc
