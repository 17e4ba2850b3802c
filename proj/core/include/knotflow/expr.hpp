#pragma once

#include <string>
#include <vector>

namespace knotflow {

// One scalar expression over x, y, z; parsed once into a small stack
// program, evaluated many times.
class Expr {
 public:
  double eval(double x, double y, double z) const;
  const std::string& text() const { return text_; }

  struct Instr {
    int op = 0;
    double value = 0.0;
  };

 private:
  friend Expr parse_expr(const std::string&);
  std::vector<Instr> prog_;
  std::string text_;
};

// Grammar: + - * / ^ (right associative), unary minus, sin, cos, exp, sqrt,
// decimal literals, parentheses, variables x y z. Errors report the
// offending token and its position.
Expr parse_expr(const std::string& text);

}  // namespace knotflow
