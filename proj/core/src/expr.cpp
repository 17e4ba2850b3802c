#include "knotflow/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace knotflow {

namespace {

enum Op {
  kConst,
  kVarX,
  kVarY,
  kVarZ,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kSin,
  kCos,
  kExp,
  kSqrt,
};

struct Token {
  enum Kind { Number, Ident, Symbol, End } kind = End;
  std::string text;
  double value = 0.0;
  std::size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) { advance(); }

  std::vector<Expr::Instr> run() {
    parse_sum();
    if (tok_.kind != Token::End) fail("unexpected token");
    return std::move(prog_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string shown = tok_.kind == Token::End ? "end of input" : "'" + tok_.text + "'";
    throw std::invalid_argument("expr: " + what + " at position " +
                                std::to_string(tok_.pos + 1) + ": " + shown);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = text_.c_str() + pos_;
      char* end = nullptr;
      tok_.value = std::strtod(start, &end);
      if (end == start) fail("bad number");
      tok_.kind = Token::Number;
      tok_.text = text_.substr(pos_, end - start);
      pos_ += end - start;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = pos_;
      while (j < text_.size() && std::isalnum(static_cast<unsigned char>(text_[j]))) ++j;
      tok_.kind = Token::Ident;
      tok_.text = text_.substr(pos_, j - pos_);
      pos_ = j;
      return;
    }
    tok_.kind = Token::Symbol;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  bool eat(const char* sym) {
    if (tok_.kind == Token::Symbol && tok_.text == sym) {
      advance();
      return true;
    }
    return false;
  }

  void emit(int op, double value = 0.0) { prog_.push_back({op, value}); }

  void parse_sum() {
    parse_term();
    while (true) {
      if (eat("+")) {
        parse_term();
        emit(kAdd);
      } else if (eat("-")) {
        parse_term();
        emit(kSub);
      } else {
        return;
      }
    }
  }

  void parse_term() {
    parse_factor();
    while (true) {
      if (eat("*")) {
        parse_factor();
        emit(kMul);
      } else if (eat("/")) {
        parse_factor();
        emit(kDiv);
      } else {
        return;
      }
    }
  }

  void parse_factor() {
    if (eat("-")) {
      parse_factor();
      emit(kNeg);
      return;
    }
    parse_power();
  }

  void parse_power() {
    parse_atom();
    if (eat("^")) {
      parse_factor();  // right associative, allows -exponents
      emit(kPow);
    }
  }

  void parse_atom() {
    if (tok_.kind == Token::Number) {
      emit(kConst, tok_.value);
      advance();
      return;
    }
    if (tok_.kind == Token::Ident) {
      std::string name = tok_.text;
      if (name == "x" || name == "y" || name == "z") {
        emit(name == "x" ? kVarX : name == "y" ? kVarY : kVarZ);
        advance();
        return;
      }
      int fn = name == "sin"    ? kSin
               : name == "cos"  ? kCos
               : name == "exp"  ? kExp
               : name == "sqrt" ? kSqrt
                                : -1;
      if (fn < 0) fail("unknown identifier");
      advance();
      if (!eat("(")) fail("expected '(' after function name");
      parse_sum();
      if (!eat(")")) fail("expected ')'");
      emit(fn);
      return;
    }
    if (eat("(")) {
      parse_sum();
      if (!eat(")")) fail("expected ')'");
      return;
    }
    fail("expected a value");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
  std::vector<Expr::Instr> prog_;
};

}  // namespace

Expr parse_expr(const std::string& text) {
  Expr e;
  e.prog_ = Parser(text).run();
  std::size_t a = text.find_first_not_of(" \t\r\n");
  std::size_t b = text.find_last_not_of(" \t\r\n");
  e.text_ = (a == std::string::npos) ? "" : text.substr(a, b - a + 1);
  return e;
}

double Expr::eval(double x, double y, double z) const {
  double stack[64];
  int top = -1;
  for (const Instr& in : prog_) {
    switch (in.op) {
      case kConst: stack[++top] = in.value; break;
      case kVarX: stack[++top] = x; break;
      case kVarY: stack[++top] = y; break;
      case kVarZ: stack[++top] = z; break;
      case kAdd: --top; stack[top] += stack[top + 1]; break;
      case kSub: --top; stack[top] -= stack[top + 1]; break;
      case kMul: --top; stack[top] *= stack[top + 1]; break;
      case kDiv: --top; stack[top] /= stack[top + 1]; break;
      case kPow: --top; stack[top] = std::pow(stack[top], stack[top + 1]); break;
      case kNeg: stack[top] = -stack[top]; break;
      case kSin: stack[top] = std::sin(stack[top]); break;
      case kCos: stack[top] = std::cos(stack[top]); break;
      case kExp: stack[top] = std::exp(stack[top]); break;
      case kSqrt: stack[top] = std::sqrt(stack[top]); break;
      default: throw std::logic_error("expr: bad opcode");
    }
    if (top >= 63) throw std::logic_error("expr: evaluation stack overflow");
  }
  if (top != 0) throw std::logic_error("expr: unbalanced program");
  return stack[0];
}

}  // namespace knotflow
