#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgmirror/polynomial.hpp"
#include "lgmirror/symmetry.hpp"

namespace lgm {

// poly := term ('+' term)*; term := factor ('*' factor)*;
// factor := var ('^' natural)?; var := letter digits?
// Rows follow the source order of the monomials. Columns follow variable
// names sorted by letter, then by numeric suffix, so that parsing the output
// of to_dsl() gives back the same matrix.
// Throws SyntaxError, NotSquare, RepeatedMonomial (all located), SingularMatrix.
InvertiblePolynomial parse_polynomial(std::string_view text);

// [[a, b], [c, d]] or {"exponents": [[...]], "names": [...]}.
InvertiblePolynomial parse_exponent_json(std::string_view text);

std::optional<InvertiblePolynomial> preset(std::string_view name);
std::vector<std::string> preset_names();

// A preset name, "@path" (file holding DSL or JSON), JSON text, or DSL text.
InvertiblePolynomial load_polynomial(std::string_view source);

// "e", "j", "j^k", "rho<i>" (1-based), or a phase vector "a,b,..." with
// optional surrounding brackets. Throws InvalidArgument.
SymmetryElement parse_element(const SymmetryGroup& host, std::string_view token);

// Subgroup generated by the listed tokens. Besides element tokens accepts
// "trivial", "j", "sl" and "aut". A token may hold several items separated by ';'.
Subgroup parse_group(const GroupPtr& host, const std::vector<std::string>& tokens);

}  // namespace lgm
