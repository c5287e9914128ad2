#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgmirror/frobenius.hpp"
#include "lgmirror/polynomial.hpp"

namespace lgm {

using Json = nlohmann::ordered_json;

struct CatalogEntry {
  std::string id;  // AtomDecomposition::canonical_id
  InvertiblePolynomial polynomial;
  ChargeVector charges;
  Predicates predicates;
  std::uint64_t aut_order = 0;
};

CatalogEntry make_entry(const InvertiblePolynomial& p);

// Every sum of Fermat, loop and chain atoms in n_vars variables with
// exponents in [2, max_exp], one entry per canonical id, in a fixed order.
// Loops are taken up to rotation.
std::vector<InvertiblePolynomial> enumerate_atom_sums(int n_vars, int max_exp);
std::vector<CatalogEntry> enumerate_catalog(int n_vars, int max_exp, bool cy_only, unsigned threads = 1);

Json entry_to_json(const CatalogEntry& e);

struct AlgebraLaws {
  bool unit = true;         // 1 * x = x * 1 = x on every class
  bool grading = true;      // bidegrees add on nonzero products of sector units
  bool associative = true;  // over all triples of sector units
  std::size_t triples = 0;
};
AlgebraLaws check_algebra_laws(const FrobeniusAlgebra& a);

struct VerifyOptions {
  std::uint64_t max_group = 200;       // exhaustive subgroup enumeration up to this |Aut|
  std::uint64_t frobenius_order = 60;  // largest |G| for the associativity check
  unsigned random_triples = 100;       // Frobenius property samples per Milnor ring
};

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "skipped"
  std::string detail;
  std::size_t cases = 0;
};

struct EntryReport {
  std::string id;
  bool pass = false;
  bool exhaustive = false;  // every subgroup of Aut(W) was visited
  std::size_t subgroups = 0;
  std::vector<CheckResult> checks;
  std::string error_kind;  // set when the entry was rejected before checking
  std::string error_message;
};

// Check names, in report order.
const std::vector<std::string>& check_names();

// Parses one catalog line and runs the battery. Never throws on bad input:
// rejection is reported through error_kind.
EntryReport verify_entry(const std::string& line, const VerifyOptions& options);
EntryReport verify_polynomial(const InvertiblePolynomial& p, const VerifyOptions& options,
                              const Json* stored = nullptr);

Json report_to_json(const EntryReport& r);

struct VerifySummary {
  std::size_t entries = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::map<std::string, std::size_t>> by_check;  // check -> status -> count
  void add(const EntryReport& r);
};

Json summary_to_json(const VerifySummary& s);

// Runs work(i) for i in [0, n) on up to `threads` workers and hands the
// results to sink in index order.
void ordered_parallel(std::size_t n, unsigned threads, const std::function<std::string(std::size_t)>& work,
                      const std::function<void(std::size_t, const std::string&)>& sink);

}  // namespace lgm
