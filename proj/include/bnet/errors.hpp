/* bnet: semi-tensor-product toolkit for Boolean (control) networks */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bnet {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Operand shapes do not fit the operation. */
struct dimension_error : error {
  using error::error;
};

/* Input text is malformed; position is 1-based. */
struct parse_error : error {
  int line = 0;
  int column = 0;
  parse_error(const std::string& msg, int line_, int column_)
      : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

/* A configurable resource cap (closure size, graph size, ...) was hit. */
struct cap_error : error {
  using error::error;
};

}  // namespace bnet
