#pragma once

// Tiny expression language for data functions of one variable:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('-' | '+') factor | power
//   power  := atom ('^' integer)?
//   atom   := number | pi | <var> | sin '(' expr ')' | '(' expr ')'

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace fracinv::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compiles `text` into a callable of the named variable ("x" or "t").
/// Throws ParseError with the offending position.
std::function<double(double)> parse_expression(const std::string& text,
                                               const std::string& var = "x");

}  // namespace fracinv::cli
