#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdga/polynomial.hpp"

namespace pdga {

/// Parses an infix expression over integers, rationals `p/q`, ring variables,
/// `+ - * ^` and parentheses. Multiplication must be explicit. Division is
/// accepted only by nonzero constants.
Polynomial parse_polynomial(std::string_view text, const Ring& ring);

/// Canonical text form, e.g. `x^2*y - 1/2*z + 3`. The zero polynomial prints as `0`.
std::string to_string(const Polynomial& p);

/// Declarations read from a `.pdga` input file. One ring per file; every other
/// declaration is over that ring.
struct Declarations {
    Ring ring;
    std::map<std::string, std::vector<Polynomial>> ideals;
    /// Images listed per variable, in ring order.
    std::map<std::string, std::vector<Polynomial>> derivations;
    /// Entries (i, j) with i < j holding {x_i, x_j}; unlisted pairs are zero.
    std::map<std::string, std::map<std::pair<std::size_t, std::size_t>, Polynomial>> poisson;
    std::map<std::string, std::vector<Polynomial>> sections;
};

/// Parse errors carry the byte offset into `text`; `line_col` converts it.
Declarations parse_declarations(std::string_view text);

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset);

}  // namespace pdga
