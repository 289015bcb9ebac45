/* bnet: text format for delta-represented and dense matrices */

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bnet/dense_matrix.hpp"
#include "bnet/logical_matrix.hpp"

namespace bnet {

/// One stanza of the matrix text format. Stanzas are
///   delta <p> <q> [zeroext]
///   <q column indices>
/// or
///   dense <rows> <cols>
///   <rows*cols rationals, row-major, "a" or "a/b">
/// optionally preceded by a "name: <identifier>" line. '#' starts a comment.
struct matrix_stanza {
  std::string name;  // empty when unnamed
  std::variant<logical_matrix, zero_extended_matrix, dense_matrix> value;

  const logical_matrix& logical() const { return std::get<logical_matrix>(value); }
  const zero_extended_matrix& zero_extended() const { return std::get<zero_extended_matrix>(value); }
  const dense_matrix& dense() const { return std::get<dense_matrix>(value); }
  bool is_logical() const { return std::holds_alternative<logical_matrix>(value); }
};

std::vector<matrix_stanza> parse_stanzas(const std::string& text);

void write_stanza(std::ostream& os, const logical_matrix& m, const std::string& name = "");
void write_stanza(std::ostream& os, const zero_extended_matrix& m, const std::string& name = "");
void write_stanza(std::ostream& os, const dense_matrix& m, const std::string& name = "");

}  // namespace bnet
