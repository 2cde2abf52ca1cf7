#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace eikograph {

/// Small arithmetic expression over named variables.
///
/// Grammar: numbers, variables, + - * / ^ (right-assoc), unary minus,
/// parentheses and the functions abs, sqrt, exp, log, sin, cos, min(a,b), max(a,b).
/// Parse errors throw InputError with the offending column.
class Expression {
 public:
  /// `variables` fixes the slot order used by evaluate().
  Expression(const std::string& text, std::vector<std::string> variables);

  double evaluate(const std::vector<double>& values) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::vector<std::string> variables_;
  std::shared_ptr<const Node> root_;
};

}  // namespace eikograph
