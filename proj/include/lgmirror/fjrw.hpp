#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgmirror/symmetry.hpp"

namespace lgm {

struct ModuliProfile {
  int genus = 0;
  std::size_t markings = 0;
  bool nonempty = false;
  std::vector<Rational> line_degrees;  // q_j(2g-2+n) - sum_i Theta^i_j
  Rational virtual_codim;              // (g-1) c + sum (age(h_i) - q)
  Rational cycle_degree;               // 2((c-3)(1-g) + n - sum (age(h_i) - q))
  Rational cover_degree;
};

// Throws UnstableCurve when 2g-2+n < 0, or 2g-2+n = 0 with markings;
// InvalidArgument when an insertion is outside G.
ModuliProfile moduli_profile(const Subgroup& g, int genus, const std::vector<SymmetryElement>& insertions);

// (g-1)(1-2/r) + sum (Theta_i - 1/r)
Rational r_spin_rank(int r, int genus, const std::vector<Rational>& thetas);

struct GRRRow {
  int coordinate = 0;
  unsigned h = 0;
  Rational kappa;                          // B_{h+1}(q_j)/(h+1)!
  std::vector<Rational> psi;               // -B_{h+1}(Theta^i_j)/(h+1)!
  std::map<Rational, Rational> boundary;   // Theta -> (delta/2) B_{h+1}(Theta)/(h+1)!
};

GRRRow grr_expansion(const Subgroup& g, int genus, const std::vector<SymmetryElement>& insertions, int coordinate,
                     unsigned h);
// kappa_0 = 2g-2+n, psi^0 = 1: the h = 0 row evaluated as a number.
Rational grr_euler_characteristic(const GRRRow& row, int genus, std::size_t markings);

struct CorrelatorOptions {
  bool allow_broad_nodes = false;  // use B_{h+1}(0) at nodes with a fixed coordinate
};

struct CorrelatorResult {
  std::string status;  // "ok" or "empty"
  Rational value;
  Rational normalization;  // |G|^g / deg, deg = 1/|G| in genus zero
  Rational raw;            // value / normalization
  Rational virtual_codim;
  std::optional<int> coordinate;  // j with h^1 = 1 in the four-point case
};

// Genus-zero concave correlator of 3 or 4 narrow insertions.
CorrelatorResult genus0_correlator(const Subgroup& g, const std::vector<SymmetryElement>& insertions,
                                   const CorrelatorOptions& options = {});

}  // namespace lgm
