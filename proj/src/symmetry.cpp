#include "lgmirror/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace lgm {

std::vector<Rational> SymmetryElement::phases() const {
  std::vector<Rational> out;
  out.reserve(num.size());
  for (std::size_t j = 0; j < num.size(); ++j) out.push_back(phase(j));
  return out;
}

bool SymmetryElement::is_identity() const {
  return std::all_of(num.begin(), num.end(), [](std::int64_t x) { return x == 0; });
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t to_i64(const Integer& x) {
  if (!x.fits_slong_p()) throw InvalidArgument("integer does not fit in 64 bits");
  return x.get_si();
}

}  // namespace

SymmetryElement element_from_phases(const std::vector<Rational>& phases, std::int64_t den) {
  SymmetryElement g;
  g.den = den;
  for (const auto& p : phases) {
    Rational x = frac(p) * den;
    if (!is_integer(x)) throw InvalidArgument("phase " + to_string(p) + " not a multiple of 1/" + std::to_string(den));
    g.num.push_back(to_i64(x.get_num()));
  }
  return g;
}

SymmetryElement multiply(const SymmetryElement& a, const SymmetryElement& b) {
  if (a.den != b.den || a.size() != b.size()) throw InvalidArgument("elements from different groups");
  SymmetryElement c = a;
  for (std::size_t j = 0; j < c.size(); ++j) c.num[j] = mod(a.num[j] + b.num[j], a.den);
  return c;
}

SymmetryElement inverse(const SymmetryElement& a) {
  SymmetryElement c = a;
  for (auto& x : c.num) x = mod(-x, a.den);
  return c;
}

SymmetryElement power(const SymmetryElement& a, std::int64_t k) {
  SymmetryElement c = a;
  for (std::size_t j = 0; j < c.size(); ++j) {
    __int128 v = static_cast<__int128>(a.num[j]) * k;
    c.num[j] = static_cast<std::int64_t>(((v % a.den) + a.den) % a.den);
  }
  return c;
}

std::int64_t element_order(const SymmetryElement& a) {
  std::int64_t o = 1;
  for (auto x : a.num) {
    std::int64_t g = std::gcd(x, a.den);
    o = std::lcm(o, a.den / g);
  }
  return o;
}

Rational age(const SymmetryElement& g) {
  std::int64_t s = 0;
  for (auto x : g.num) s += x;
  return make_rational(s, g.den);
}

std::vector<int> fixed_indices(const SymmetryElement& g) {
  std::vector<int> out;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.num[j] == 0) out.push_back(static_cast<int>(j));
  return out;
}

std::vector<Rational> phases_to_rationals(const SymmetryElement& g) { return g.phases(); }

// ---- SymmetryGroup ----

SymmetryGroup::SymmetryGroup(const InvertiblePolynomial& p) : poly_(p), e_(p.exponent_matrix()) {
  const std::size_t n = poly_.n_vars();
  inverse_ = invert(to_rational(e_));
  SmithDecomposition snf = smith_normal_form(e_);
  factors_ = snf.diagonal;
  Integer ord = 1;
  for (const auto& d : factors_) ord *= d;
  if (!ord.fits_ulong_p()) throw GroupTooLarge("|Aut(W)| too large");
  order_ = ord.get_ui();
  exponent_ = to_i64(factors_.back());

  left_.assign(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) left_[i][j] = to_i64(snf.left(i, j));

  for (std::size_t i = 0; i < n; ++i) {
    if (factors_[i] == 1) continue;
    std::int64_t d = to_i64(factors_[i]);
    radix_.push_back(d);
    radix_row_.push_back(i);
    std::vector<Rational> ph(n);
    for (std::size_t r = 0; r < n; ++r) ph[r] = Rational(snf.right(r, i)) / Rational(d);
    smith_basis_.push_back(element_from_phases(ph, exponent_));
  }
  for (std::size_t j = 0; j < n; ++j) rho_.push_back(element_from_phases(inverse_.col(j), exponent_));
}

SymmetryElement SymmetryGroup::identity() const {
  SymmetryElement g;
  g.den = exponent_;
  g.num.assign(n_vars(), 0);
  return g;
}

SymmetryElement SymmetryGroup::j_element() const {
  return from_k(std::vector<Integer>(n_vars(), Integer(1)));
}

bool SymmetryGroup::contains(const std::vector<Rational>& phases) const {
  if (phases.size() != n_vars()) return false;
  std::vector<Rational> k = to_rational(e_) * phases;
  return std::all_of(k.begin(), k.end(), [](const Rational& x) { return is_integer(x); });
}

SymmetryElement SymmetryGroup::from_phases(const std::vector<Rational>& phases) const {
  if (!contains(phases)) throw InvalidArgument("phase vector is not a symmetry of W");
  return element_from_phases(phases, exponent_);
}

std::vector<Integer> SymmetryGroup::k_coordinates(const SymmetryElement& g) const {
  const std::size_t n = n_vars();
  std::vector<Integer> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) s += e_(i, j) * g.num[j];
    if (s % g.den != 0) throw InvalidArgument("element is not a symmetry of W");
    k[i] = s / g.den;
  }
  return k;
}

SymmetryElement SymmetryGroup::from_k(const std::vector<Integer>& k) const {
  std::vector<Integer> kk = k;
  std::vector<Rational> kr(kk.begin(), kk.end());
  return element_from_phases(inverse_ * kr, exponent_);
}

SymmetryElement SymmetryGroup::element_at(std::uint64_t index) const {
  SymmetryElement g = identity();
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    std::int64_t c = static_cast<std::int64_t>(index % radix_[i]);
    index /= radix_[i];
    if (c) g = multiply(g, power(smith_basis_[i], c));
  }
  return g;
}

std::uint64_t SymmetryGroup::index_of(const SymmetryElement& g) const {
  const std::size_t n = n_vars();
  std::vector<std::int64_t> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s += e_(i, j).get_si() * g.num[j];
    if (s % g.den != 0) throw InvalidArgument("element is not a symmetry of W");
    k[i] = s / g.den;
  }
  std::uint64_t index = 0, stride = 1;
  for (std::size_t t = 0; t < radix_.size(); ++t) {
    const std::size_t row = radix_row_[t];
    __int128 u = 0;
    for (std::size_t j = 0; j < n; ++j) u += static_cast<__int128>(left_[row][j]) * k[j];
    std::int64_t c = static_cast<std::int64_t>(((u % radix_[t]) + radix_[t]) % radix_[t]);
    index += static_cast<std::uint64_t>(c) * stride;
    stride *= static_cast<std::uint64_t>(radix_[t]);
  }
  return index;
}

std::vector<SymmetryElement> SymmetryGroup::elements() const {
  std::vector<SymmetryElement> out;
  out.reserve(order_);
  for (std::uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

GroupPtr make_group(const InvertiblePolynomial& p) { return std::make_shared<const SymmetryGroup>(p); }

// ---- Subgroup ----

namespace {

std::vector<bool> closure(const SymmetryGroup& host, const std::vector<SymmetryElement>& gens) {
  std::vector<bool> mask(host.order(), false);
  std::vector<SymmetryElement> members{host.identity()};
  mask[0] = true;
  for (const auto& g : gens) {
    if (mask[host.index_of(g)]) continue;
    const std::vector<SymmetryElement> base = members;
    SymmetryElement step = g;
    while (!mask[host.index_of(step)]) {
      for (const auto& s : base) {
        SymmetryElement t = multiply(s, step);
        std::uint64_t idx = host.index_of(t);
        if (!mask[idx]) {
          mask[idx] = true;
          members.push_back(std::move(t));
        }
      }
      step = multiply(step, g);
    }
  }
  return mask;
}

}  // namespace

Subgroup::Subgroup(GroupPtr host, const std::vector<SymmetryElement>& generators) : host_(std::move(host)) {
  for (const auto& g : generators) {
    if (!host_->contains(g.phases())) throw InvalidArgument("generator is not a symmetry of W");
    SymmetryElement h = host_->from_phases(g.phases());
    if (!h.is_identity() && std::find(generators_.begin(), generators_.end(), h) == generators_.end())
      generators_.push_back(h);
  }
  mask_ = closure(*host_, generators_);
  finish();
}

Subgroup::Subgroup(GroupPtr host, std::vector<SymmetryElement> generators, std::vector<bool> mask)
    : host_(std::move(host)), generators_(std::move(generators)), mask_(std::move(mask)) {
  finish();
}

void Subgroup::finish() {
  members_.clear();
  for (std::uint64_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) members_.push_back(i);
  const std::size_t n = host_->n_vars();
  IntMatrix e = host_->polynomial().exponent_matrix();
  IntMatrix rows(generators_.size() + n, n);
  for (std::size_t r = 0; r < generators_.size(); ++r) {
    std::vector<Integer> k = host_->k_coordinates(generators_[r]);
    for (std::size_t j = 0; j < n; ++j) rows(r, j) = k[j];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows(generators_.size() + i, j) = e(j, i);
  basis_ = hermite_normal_form(rows);
}

Subgroup Subgroup::from_lattice(GroupPtr host, const IntMatrix& rows) {
  std::vector<SymmetryElement> gens;
  for (std::size_t r = 0; r < rows.rows(); ++r) gens.push_back(host->from_k(rows.row(r)));
  return Subgroup(std::move(host), gens);
}

std::vector<std::vector<Integer>> Subgroup::generator_k() const {
  std::vector<std::vector<Integer>> out;
  for (const auto& g : generators_) out.push_back(host_->k_coordinates(g));
  return out;
}

bool Subgroup::contains(const SymmetryElement& g) const {
  if (!host_->contains(g.phases())) return false;
  return mask_[host_->index_of(host_->from_phases(g.phases()))];
}

std::vector<SymmetryElement> Subgroup::elements() const {
  std::vector<SymmetryElement> out;
  out.reserve(members_.size());
  for (auto i : members_) out.push_back(host_->element_at(i));
  return out;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (mask_.size() != other.mask_.size()) return false;
  for (auto i : members_)
    if (!other.mask_[i]) return false;
  return true;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.host_->polynomial() == b.host_->polynomial() && a.basis_ == b.basis_;
}

Subgroup trivial_subgroup(GroupPtr host) { return Subgroup(std::move(host), {}); }

Subgroup full_subgroup(GroupPtr host) {
  std::vector<SymmetryElement> gens = host->generators();
  return Subgroup(std::move(host), gens);
}

Subgroup j_subgroup(GroupPtr host) {
  SymmetryElement j = host->j_element();
  return Subgroup(std::move(host), {j});
}

Subgroup sl_subgroup(GroupPtr host) {
  const std::size_t n = host->n_vars();
  // sum_j (E^{-1} k)_j = (column sums of E^{-1}) . k
  std::vector<Rational> row(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) row[j] += host->inverse_exponents()(i, j);
  IntMatrix lattice = rational_annihilator({row}, n);
  return Subgroup::from_lattice(std::move(host), lattice);
}

Admissibility admissibility(const Subgroup& g) {
  Admissibility a;
  a.a_admissible = g.contains(g.host()->j_element());
  a.b_admissible = true;
  for (const auto& h : g.generators())
    if (!is_integer(age(h))) a.b_admissible = false;
  return a;
}

bool is_calabi_yau_type(const Subgroup& g) {
  Admissibility a = admissibility(g);
  return a.a_admissible && a.b_admissible;
}

Subgroup dual_group(const Subgroup& g, GroupPtr dual_host) {
  const std::size_t n = g.host()->n_vars();
  if (!(dual_host->polynomial() == transpose(g.host()->polynomial())))
    throw InvalidArgument("dual host must be the transpose polynomial");
  std::vector<std::vector<Rational>> rows;
  for (const auto& h : g.generators()) rows.push_back(h.phases());
  IntMatrix lattice = rational_annihilator(rows, n);
  return Subgroup::from_lattice(std::move(dual_host), lattice);
}

std::uint64_t max_group_order() {
  const char* env = std::getenv("LGMIRROR_MAX_GROUP");
  if (env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 200;
}

std::vector<Subgroup> enumerate_subgroups(GroupPtr host, std::uint64_t cap) {
  if (host->order() > cap)
    throw GroupTooLarge("|Aut(W)| = " + std::to_string(host->order()) + " exceeds cap " + std::to_string(cap));
  const std::uint64_t n = host->order();
  std::vector<SymmetryElement> elems = host->elements();
  std::vector<std::vector<std::uint64_t>> table(n, std::vector<std::uint64_t>(n));
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) table[a][b] = host->index_of(multiply(elems[a], elems[b]));

  auto join = [&](const std::vector<bool>& mask, std::uint64_t g) {
    std::vector<bool> out = mask;
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 0; i < n; ++i)
      if (mask[i]) base.push_back(i);
    std::uint64_t step = g;
    while (!mask[step]) {
      for (auto s : base) out[table[s][step]] = true;
      step = table[step][g];
    }
    return out;
  };

  struct Found {
    std::vector<bool> mask;
    std::vector<std::uint64_t> gens;
  };
  std::map<std::vector<bool>, std::size_t> seen;
  std::vector<Found> found;
  std::vector<bool> trivial(n, false);
  trivial[0] = true;
  seen[trivial] = 0;
  found.push_back({trivial, {}});
  for (std::size_t cur = 0; cur < found.size(); ++cur) {
    for (std::uint64_t g = 1; g < n; ++g) {
      if (found[cur].mask[g]) continue;
      std::vector<bool> m = join(found[cur].mask, g);
      if (seen.count(m)) continue;
      seen[m] = found.size();
      std::vector<std::uint64_t> gens = found[cur].gens;
      gens.push_back(g);
      found.push_back({std::move(m), std::move(gens)});
    }
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  auto count = [&](std::size_t i) { return std::count(found[i].mask.begin(), found[i].mask.end(), true); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ca = count(a), cb = count(b);
    if (ca != cb) return ca < cb;
    return found[a].mask > found[b].mask;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto i : order) {
    std::vector<SymmetryElement> gens;
    for (auto g : found[i].gens) gens.push_back(elems[g]);
    out.push_back(Subgroup(host, gens));
  }
  return out;
}

}  // namespace lgm
