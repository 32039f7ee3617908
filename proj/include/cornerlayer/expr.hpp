#pragma once

// Minimal arithmetic expression language for problem coefficients.
//
// Grammar (EBNF):
//
//   expression ::= term { ("+" | "-") term }
//   term       ::= unary { ("*" | "/") unary }
//   unary      ::= ("-" | "+") unary | power
//   power      ::= primary { "^" [ "-" | "+" ] integer }
//   primary    ::= number
//                | identifier
//                | function "(" expression ")"
//                | "(" expression ")"
//   function   ::= "exp" | "sin" | "cos" | "sqrt" | "ln"
//   identifier ::= letter { letter | digit | "_" }     (a declared variable, "pi" or "e")
//   number     ::= digit { digit } [ "." { digit } ] [ ("e" | "E") [ "+" | "-" ] digit { digit } ]
//   integer    ::= digit { digit }
//
// "^" binds tighter than unary minus, so -x^2 == -(x^2). Exponents are
// integer literals only.

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cornerlayer {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownVariable : public std::runtime_error {
public:
    explicit UnknownVariable(std::string name)
        : std::runtime_error("unknown variable '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OpCode : unsigned char {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
    Exp,
    Sin,
    Cos,
    Sqrt,
    Ln,
};

struct Instruction {
    OpCode op;
    double value = 0.0;  // Constant
    int index = 0;       // Variable slot, or exponent for Pow
};

/// Parsed expression, stored as a postfix program. Immutable after parse.
class Expression {
public:
    Expression() = default;

    /// Evaluate with one value per declared variable, in declaration order.
    double evaluate(std::span<const double> slots) const;

    double evaluate(const std::map<std::string, double>& bindings) const;

    /// Fully parenthesised source that reparses to an identical program.
    std::string to_string() const;

    const std::vector<std::string>& variables() const noexcept { return vars_; }
    const std::vector<Instruction>& program() const noexcept { return program_; }

    /// True if the program references slot `index`.
    bool uses(std::size_t index) const;

    /// True for a program with no variable references.
    bool is_constant() const;

private:
    friend Expression parse(std::string_view, const std::vector<std::string>&);

    std::vector<Instruction> program_;
    std::vector<std::string> vars_;
    std::size_t max_depth_ = 0;
};

Expression parse(std::string_view source, const std::vector<std::string>& allowed_vars);

/// Convenience for one-shot evaluation with name bindings.
double eval(const Expression& e, const std::map<std::string, double>& bindings);

}  // namespace cornerlayer
