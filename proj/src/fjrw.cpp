#include "lgmirror/fjrw.hpp"

#include <set>

namespace lgm {

namespace {

void check_stable(int genus, std::size_t n) {
  if (genus < 0) throw InvalidArgument("negative genus");
  long chi = 2L * genus - 2 + static_cast<long>(n);
  if (chi < 0 || (chi == 0 && n > 0))
    throw UnstableCurve("(g, n) = (" + std::to_string(genus) + ", " + std::to_string(n) + ") is not stable");
}

void check_members(const Subgroup& g, const std::vector<SymmetryElement>& insertions) {
  for (const auto& h : insertions)
    if (h.size() != g.host()->n_vars() || !g.contains(h)) throw InvalidArgument("insertion is not in G");
}

Rational pow_rational(const Rational& base, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

ModuliProfile moduli_profile(const Subgroup& g, int genus, const std::vector<SymmetryElement>& insertions) {
  const std::size_t n = insertions.size();
  check_stable(genus, n);
  check_members(g, insertions);
  const InvertiblePolynomial& p = g.host()->polynomial();
  ChargeVector q = charges(p);
  const std::size_t nv = p.n_vars();
  const long chi = 2L * genus - 2 + static_cast<long>(n);

  ModuliProfile m;
  m.genus = genus;
  m.markings = n;
  bool integral = true;
  for (std::size_t j = 0; j < nv; ++j) {
    Rational d = q.charges[j] * chi;
    for (const auto& h : insertions) d -= h.phase(j);
    integral = integral && is_integer(d);
    m.line_degrees.push_back(d);
  }
  if (n > 0)
    m.nonempty = integral;
  else
    m.nonempty = (2L * genus - 2) % q.degree.get_si() == 0;

  Rational shift = 0;
  for (const auto& h : insertions) shift += age(h) - q.sum();
  m.virtual_codim = Rational(genus - 1) * q.central_charge + shift;
  m.cycle_degree = 2 * ((q.central_charge - 3) * (1 - genus) + Rational(static_cast<long>(n)) - shift);
  const Rational aut(static_cast<long>(g.host()->order()));
  const long power = n > 0 ? 2L * genus - 1 + static_cast<long>(n) : 2L * genus;
  m.cover_degree = pow_rational(aut, power) / pow_rational(Rational(g.host()->exponent()), static_cast<long>(nv));
  return m;
}

Rational r_spin_rank(int r, int genus, const std::vector<Rational>& thetas) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  Rational out = Rational(genus - 1) * (1 - make_rational(2, r));
  for (const auto& t : thetas) out += t - make_rational(1, r);
  return out;
}

GRRRow grr_expansion(const Subgroup& g, int genus, const std::vector<SymmetryElement>& insertions, int coordinate,
                     unsigned h) {
  check_stable(genus, insertions.size());
  check_members(g, insertions);
  const InvertiblePolynomial& p = g.host()->polynomial();
  if (coordinate < 0 || static_cast<std::size_t>(coordinate) >= p.n_vars())
    throw InvalidArgument("coordinate out of range");
  ChargeVector q = charges(p);
  const Rational fact(factorial(h + 1));
  GRRRow row;
  row.coordinate = coordinate;
  row.h = h;
  row.kappa = bernoulli_eval(h + 1, q.charges[coordinate]) / fact;
  for (const auto& ins : insertions) row.psi.push_back(-bernoulli_eval(h + 1, ins.phase(coordinate)) / fact);
  if (h > 0) {
    const Rational half_delta = Rational(g.host()->exponent()) / 2;
    std::set<Rational> thetas;
    for (const auto& e : g.elements()) thetas.insert(e.phase(coordinate));
    for (const auto& t : thetas) {
      Rational c = half_delta * bernoulli_eval(h + 1, t) / fact;
      if (c != 0) row.boundary[t] = c;
    }
  }
  return row;
}

Rational grr_euler_characteristic(const GRRRow& row, int genus, std::size_t markings) {
  if (row.h != 0) throw InvalidArgument("Euler characteristic needs the h = 0 row");
  Rational out = row.kappa * (2L * genus - 2 + static_cast<long>(markings));
  for (const auto& x : row.psi) out += x;
  return out;
}

CorrelatorResult genus0_correlator(const Subgroup& g, const std::vector<SymmetryElement>& insertions,
                                   const CorrelatorOptions& options) {
  const std::size_t n = insertions.size();
  if (n != 3 && n != 4) throw InvalidArgument("genus-zero correlators take 3 or 4 insertions");
  ModuliProfile prof = moduli_profile(g, 0, insertions);
  CorrelatorResult res;
  res.normalization = Rational(static_cast<long>(g.order()));
  res.virtual_codim = prof.virtual_codim;
  if (!prof.nonempty) {
    res.status = "empty";
    return res;
  }
  for (const auto& h : insertions)
    if (!fixed_indices(h).empty()) throw NotConcave("broad insertion");
  for (const auto& d : prof.line_degrees)
    if (d > -1) throw NotConcave("line bundle of degree " + to_string(d));
  res.status = "ok";

  if (n == 3) {
    res.value = prof.virtual_codim == 0 ? 1 : 0;
  } else if (prof.virtual_codim == 1) {
    int star = -1;
    for (std::size_t j = 0; j < prof.line_degrees.size(); ++j)
      if (prof.line_degrees[j] == -2) star = static_cast<int>(j);
    if (star < 0) throw NotConcave("no coordinate carries the one-dimensional obstruction");
    res.coordinate = star;
    GRRRow row = grr_expansion(g, 0, insertions, star, 1);
    Rational v = row.kappa;
    for (const auto& x : row.psi) v += x;
    const ChargeVector q = charges(g.host()->polynomial());
    const Rational delta(g.host()->exponent());
    for (std::size_t partner = 1; partner < 4; ++partner) {
      bool broad = false;
      Rational node_star;
      for (std::size_t k = 0; k < q.charges.size(); ++k) {
        Rational t = frac(q.charges[k] - insertions[0].phase(k) - insertions[partner].phase(k));
        if (t == 0) broad = true;
        if (static_cast<int>(k) == star) node_star = t;
      }
      if (broad && !options.allow_broad_nodes)
        throw BroadNodeEncountered("degeneration {1," + std::to_string(partner + 1) + "} has a broad node");
      Rational b = delta / 2 * bernoulli_eval(2, node_star) / 2;
      // one branch labelling per side, each weighted 1/delta
      v += b * 2 / delta;
    }
    res.value = v;
  } else {
    res.value = 0;
  }
  res.raw = res.value / res.normalization;
  return res;
}

}  // namespace lgm
