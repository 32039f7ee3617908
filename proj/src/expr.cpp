#include "cornerlayer/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace cornerlayer {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Recursive-descent parser emitting postfix code.
class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

    std::vector<Instruction> run() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("empty expression", pos_);
        expression();
        skip_ws();
        if (pos_ < src_.size()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return std::move(code_);
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    void emit(OpCode op, double value = 0.0, int index = 0) { code_.push_back({op, value, index}); }

    void expression() {
        term();
        for (;;) {
            if (accept('+')) {
                term();
                emit(OpCode::Add);
            } else if (accept('-')) {
                term();
                emit(OpCode::Sub);
            } else {
                return;
            }
        }
    }

    void term() {
        unary();
        for (;;) {
            if (accept('*')) {
                unary();
                emit(OpCode::Mul);
            } else if (accept('/')) {
                unary();
                emit(OpCode::Div);
            } else {
                return;
            }
        }
    }

    void unary() {
        if (accept('-')) {
            unary();
            emit(OpCode::Neg);
        } else if (accept('+')) {
            unary();
        } else {
            power();
        }
    }

    void power() {
        primary();
        while (accept('^')) {
            int sign = 1;
            if (accept('-')) sign = -1;
            else accept('+');
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            if (start == pos_) throw SyntaxError("expected integer exponent", start);
            int n = 0;
            auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, n);
            if (ec != std::errc() || ptr != src_.data() + pos_) throw SyntaxError("exponent out of range", start);
            emit(OpCode::Pow, 0.0, sign * n);
        }
    }

    void number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                while (p < src_.size() && is_digit(src_[p])) ++p;
                pos_ = p;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_) throw SyntaxError("malformed number", start);
        emit(OpCode::Constant, v);
    }

    void primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (is_digit(c) || c == '.') {
            number();
            return;
        }
        if (c == '(') {
            ++pos_;
            expression();
            expect(')');
            return;
        }
        if (!is_ident_start(c)) throw SyntaxError(std::string("unexpected '") + c + "'", pos_);

        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        const std::string name(src_.substr(start, pos_ - start));

        static constexpr std::array<std::pair<std::string_view, OpCode>, 5> functions{{
            {"exp", OpCode::Exp},
            {"sin", OpCode::Sin},
            {"cos", OpCode::Cos},
            {"sqrt", OpCode::Sqrt},
            {"ln", OpCode::Ln},
        }};
        for (const auto& [fname, op] : functions) {
            if (name == fname) {
                expect('(');
                expression();
                expect(')');
                emit(op);
                return;
            }
        }

        // Declared variables shadow the built-in constants.
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it != vars_.end()) {
            emit(OpCode::Variable, 0.0, static_cast<int>(it - vars_.begin()));
            return;
        }
        if (name == "pi") {
            emit(OpCode::Constant, std::numbers::pi);
            return;
        }
        if (name == "e") {
            emit(OpCode::Constant, std::numbers::e);
            return;
        }
        throw UnknownVariable(name);
    }

    std::string_view src_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
    std::vector<Instruction> code_;
};

std::size_t stack_depth(const std::vector<Instruction>& code) {
    std::size_t depth = 0, max_depth = 0;
    for (const auto& ins : code) {
        switch (ins.op) {
        case OpCode::Constant:
        case OpCode::Variable:
            max_depth = std::max(max_depth, ++depth);
            break;
        case OpCode::Add:
        case OpCode::Sub:
        case OpCode::Mul:
        case OpCode::Div:
            --depth;
            break;
        default:
            break;
        }
    }
    return max_depth;
}

double integer_power(double base, int n) {
    if (n < 0) {
        if (base == 0.0) throw EvalError("division by zero in negative power");
        return 1.0 / integer_power(base, -n);
    }
    double result = 1.0;
    double b = base;
    unsigned k = static_cast<unsigned>(n);
    while (k != 0) {
        if (k & 1u) result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

std::string format_constant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Expression parse(std::string_view source, const std::vector<std::string>& allowed_vars) {
    Parser parser(source, allowed_vars);
    Expression e;
    e.program_ = parser.run();
    e.vars_ = allowed_vars;
    e.max_depth_ = stack_depth(e.program_);
    return e;
}

double Expression::evaluate(std::span<const double> slots) const {
    if (slots.size() < vars_.size()) throw EvalError("missing variable bindings");

    constexpr std::size_t kInline = 32;
    std::array<double, kInline> inline_stack{};
    std::vector<double> heap_stack;
    double* stack = inline_stack.data();
    if (max_depth_ > kInline) {
        heap_stack.resize(max_depth_);
        stack = heap_stack.data();
    }

    std::size_t top = 0;
    for (const auto& ins : program_) {
        switch (ins.op) {
        case OpCode::Constant:
            stack[top++] = ins.value;
            break;
        case OpCode::Variable:
            stack[top++] = slots[static_cast<std::size_t>(ins.index)];
            break;
        case OpCode::Add:
            --top;
            stack[top - 1] += stack[top];
            break;
        case OpCode::Sub:
            --top;
            stack[top - 1] -= stack[top];
            break;
        case OpCode::Mul:
            --top;
            stack[top - 1] *= stack[top];
            break;
        case OpCode::Div:
            --top;
            if (stack[top] == 0.0) throw EvalError("division by zero");
            stack[top - 1] /= stack[top];
            break;
        case OpCode::Neg:
            stack[top - 1] = -stack[top - 1];
            break;
        case OpCode::Pow:
            stack[top - 1] = integer_power(stack[top - 1], ins.index);
            break;
        case OpCode::Exp:
            stack[top - 1] = std::exp(stack[top - 1]);
            break;
        case OpCode::Sin:
            stack[top - 1] = std::sin(stack[top - 1]);
            break;
        case OpCode::Cos:
            stack[top - 1] = std::cos(stack[top - 1]);
            break;
        case OpCode::Sqrt:
            if (stack[top - 1] < 0.0) throw EvalError("sqrt of negative value");
            stack[top - 1] = std::sqrt(stack[top - 1]);
            break;
        case OpCode::Ln:
            if (!(stack[top - 1] > 0.0)) throw EvalError("ln of nonpositive value");
            stack[top - 1] = std::log(stack[top - 1]);
            break;
        }
    }
    return stack[0];
}

double Expression::evaluate(const std::map<std::string, double>& bindings) const {
    std::vector<double> slots(vars_.size(), 0.0);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!uses(i)) continue;
        auto it = bindings.find(vars_[i]);
        if (it == bindings.end()) throw EvalError("no binding for variable '" + vars_[i] + "'");
        slots[i] = it->second;
    }
    return evaluate(slots);
}

bool Expression::uses(std::size_t index) const {
    return std::any_of(program_.begin(), program_.end(), [index](const Instruction& ins) {
        return ins.op == OpCode::Variable && static_cast<std::size_t>(ins.index) == index;
    });
}

bool Expression::is_constant() const {
    return std::none_of(program_.begin(), program_.end(),
                        [](const Instruction& ins) { return ins.op == OpCode::Variable; });
}

std::string Expression::to_string() const {
    std::vector<std::string> stack;
    for (const auto& ins : program_) {
        switch (ins.op) {
        case OpCode::Constant:
            stack.push_back(format_constant(ins.value));
            break;
        case OpCode::Variable:
            stack.push_back(vars_[static_cast<std::size_t>(ins.index)]);
            break;
        case OpCode::Add:
        case OpCode::Sub:
        case OpCode::Mul:
        case OpCode::Div: {
            std::string rhs = std::move(stack.back());
            stack.pop_back();
            const char sym = ins.op == OpCode::Add ? '+' : ins.op == OpCode::Sub ? '-' : ins.op == OpCode::Mul ? '*' : '/';
            stack.back() = "(" + stack.back() + " " + sym + " " + rhs + ")";
            break;
        }
        case OpCode::Neg:
            stack.back() = "(-" + stack.back() + ")";
            break;
        case OpCode::Pow:
            stack.back() = "(" + stack.back() + ")^" + std::to_string(ins.index);
            break;
        case OpCode::Exp:
            stack.back() = "exp(" + stack.back() + ")";
            break;
        case OpCode::Sin:
            stack.back() = "sin(" + stack.back() + ")";
            break;
        case OpCode::Cos:
            stack.back() = "cos(" + stack.back() + ")";
            break;
        case OpCode::Sqrt:
            stack.back() = "sqrt(" + stack.back() + ")";
            break;
        case OpCode::Ln:
            stack.back() = "ln(" + stack.back() + ")";
            break;
        }
    }
    return stack.empty() ? std::string() : stack.back();
}

double eval(const Expression& e, const std::map<std::string, double>& bindings) { return e.evaluate(bindings); }

}  // namespace cornerlayer
