#include "ruledricci/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"

namespace rr {

// Private enums are accessible here through the friend parser below.
class ExprParser {
public:
    ExprParser(std::string_view src, const std::map<std::string, double>& parameters,
               const std::string& variable)
        : src_(src), parameters_(parameters), variable_(variable) {}

    Expression run() {
        if (src_.empty()) throw ParseError("empty expression", 0);
        expr_.source_ = std::string(src_);
        expr_.variable_ = variable_;
        next_token();
        const int root = parse_expression();
        if (tok_.type != TokType::end) {
            throw ParseError("unexpected trailing input '" + tok_text() + "'", tok_.offset);
        }
        expr_.root_ = root;
        return std::move(expr_);
    }

private:
    using Node = Expression::Node;
    using Kind = Expression::Kind;
    using BinOp = Expression::BinOp;
    using Func = Expression::Func;

    enum class TokType { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

    struct Token {
        TokType type = TokType::end;
        std::size_t offset = 0;
        std::size_t length = 0;
        double value = 0.0;
    };

    std::string tok_text() const { return std::string(src_.substr(tok_.offset, tok_.length)); }

    void next_token() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {TokType::end, pos_, 0, 0.0};
            return;
        }
        const char c = src_[pos_];
        auto single = [&](TokType t) {
            tok_ = {t, pos_, 1, 0.0};
            ++pos_;
        };
        switch (c) {
            case '+': single(TokType::plus); return;
            case '-': single(TokType::minus); return;
            case '*': single(TokType::star); return;
            case '/': single(TokType::slash); return;
            case '^': single(TokType::caret); return;
            case '(': single(TokType::lparen); return;
            case ')': single(TokType::rparen); return;
            case ',': single(TokType::comma); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            scan_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
                ++end;
            }
            tok_ = {TokType::ident, pos_, end - pos_, 0.0};
            pos_ = end;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void scan_number() {
        std::size_t end = pos_;
        bool any_digit = false;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
            ++end;
            any_digit = true;
        }
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
                ++end;
                any_digit = true;
            }
        }
        if (!any_digit) throw ParseError("malformed number", pos_);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
            std::size_t digits = exp_end;
            while (digits < src_.size() && std::isdigit(static_cast<unsigned char>(src_[digits]))) {
                ++digits;
            }
            if (digits > exp_end) end = digits;  // exponent only if digits follow
        }
        double value = 0.0;
        const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, value);
        if (res.ec != std::errc{}) throw ParseError("malformed number", pos_);
        tok_ = {TokType::number, pos_, end - pos_, value};
        pos_ = end;
    }

    int add_node(Node n) {
        expr_.nodes_.push_back(n);
        return static_cast<int>(expr_.nodes_.size()) - 1;
    }

    // expression := term (('+'|'-') term)*
    int parse_expression() {
        int lhs = parse_term();
        while (tok_.type == TokType::plus || tok_.type == TokType::minus) {
            const BinOp op = tok_.type == TokType::plus ? BinOp::add : BinOp::sub;
            next_token();
            const int rhs = parse_term();
            Node n;
            n.kind = Kind::binary;
            n.op = op;
            n.lhs = lhs;
            n.rhs = rhs;
            n.span = {expr_.nodes_[lhs].span.begin, expr_.nodes_[rhs].span.end};
            lhs = add_node(n);
        }
        return lhs;
    }

    // term := unary (('*'|'/') unary)*
    int parse_term() {
        int lhs = parse_unary();
        while (tok_.type == TokType::star || tok_.type == TokType::slash) {
            const BinOp op = tok_.type == TokType::star ? BinOp::mul : BinOp::div;
            next_token();
            const int rhs = parse_unary();
            Node n;
            n.kind = Kind::binary;
            n.op = op;
            n.lhs = lhs;
            n.rhs = rhs;
            n.span = {expr_.nodes_[lhs].span.begin, expr_.nodes_[rhs].span.end};
            lhs = add_node(n);
        }
        return lhs;
    }

    // unary := '-' unary | power ;  '-' binds looser than '^'
    int parse_unary() {
        if (tok_.type == TokType::minus) {
            const std::size_t begin = tok_.offset;
            next_token();
            const int operand = parse_unary();
            Node n;
            n.kind = Kind::unary_neg;
            n.lhs = operand;
            n.span = {begin, expr_.nodes_[operand].span.end};
            return add_node(n);
        }
        return parse_power();
    }

    // power := primary ('^' unary)?   (right-associative; rhs may be signed)
    int parse_power() {
        const int base = parse_primary();
        if (tok_.type != TokType::caret) return base;
        next_token();
        const int expo = parse_unary();
        Node n;
        n.kind = Kind::binary;
        n.op = BinOp::pow;
        n.lhs = base;
        n.rhs = expo;
        n.span = {expr_.nodes_[base].span.begin, expr_.nodes_[expo].span.end};
        return add_node(n);
    }

    static std::optional<Func> function_by_name(std::string_view name) {
        static constexpr std::array<std::pair<std::string_view, Func>, 10> table = {{
            {"sin", Func::sin},
            {"cos", Func::cos},
            {"tan", Func::tan},
            {"tanh", Func::tanh},
            {"sech", Func::sech},
            {"sqrt", Func::sqrt},
            {"asin", Func::asin},
            {"atan", Func::atan},
            {"exp", Func::exp},
            {"log", Func::log},
        }};
        for (const auto& [key, func] : table) {
            if (name == key) return func;
        }
        return std::nullopt;
    }

    int parse_primary() {
        if (tok_.type == TokType::number) {
            Node n;
            n.kind = Kind::literal;
            n.literal = tok_.value;
            n.span = {tok_.offset, tok_.offset + tok_.length};
            next_token();
            return add_node(n);
        }
        if (tok_.type == TokType::lparen) {
            next_token();
            const int inner = parse_expression();
            expect_rparen();
            return inner;
        }
        if (tok_.type == TokType::ident) {
            const Token ident = tok_;
            const std::string name = tok_text();
            next_token();
            if (const auto func = function_by_name(name)) {
                if (tok_.type != TokType::lparen) {
                    throw ParseError("function '" + name + "' requires parenthesized argument",
                                     tok_.offset);
                }
                next_token();
                const int arg = parse_expression();
                if (tok_.type == TokType::comma) {
                    throw ParseError("arity mismatch: '" + name + "' takes one argument",
                                     tok_.offset);
                }
                expect_rparen();
                Node n;
                n.kind = Kind::call;
                n.func = *func;
                n.lhs = arg;
                n.span = {ident.offset, expr_.nodes_[arg].span.end + 1};
                return add_node(n);
            }
            if (name == variable_) {
                Node n;
                n.kind = Kind::variable;
                n.span = {ident.offset, ident.offset + ident.length};
                return add_node(n);
            }
            if (parameters_.count(name) > 0) {
                Node n;
                n.kind = Kind::parameter;
                n.param_slot = parameter_slot(name);
                n.span = {ident.offset, ident.offset + ident.length};
                return add_node(n);
            }
            throw ParseError("unknown identifier '" + name + "'", ident.offset);
        }
        if (tok_.type == TokType::end) throw ParseError("unexpected end of input", tok_.offset);
        throw ParseError("unexpected token '" + tok_text() + "'", tok_.offset);
    }

    void expect_rparen() {
        if (tok_.type != TokType::rparen) {
            throw ParseError("expected ')'", tok_.offset);
        }
        next_token();
    }

    int parameter_slot(const std::string& name) {
        for (std::size_t i = 0; i < expr_.referenced_.size(); ++i) {
            if (expr_.referenced_[i] == name) return static_cast<int>(i);
        }
        expr_.referenced_.push_back(name);
        return static_cast<int>(expr_.referenced_.size()) - 1;
    }

    std::string_view src_;
    const std::map<std::string, double>& parameters_;
    std::string variable_;
    std::size_t pos_ = 0;
    Token tok_;
    Expression expr_;
};

Expression Expression::parse(std::string_view source,
                             const std::map<std::string, double>& parameters,
                             const std::string& variable) {
    return ExprParser(source, parameters, variable).run();
}

Jet3 Expression::eval_node(int index, const Jet3& t, const std::vector<double>& slots) const {
    const Node& n = nodes_[static_cast<std::size_t>(index)];
    switch (n.kind) {
        case Kind::literal: return Jet3::constant(n.literal);
        case Kind::variable: return t;
        case Kind::parameter: return Jet3::constant(slots[static_cast<std::size_t>(n.param_slot)]);
        case Kind::unary_neg: return -eval_node(n.lhs, t, slots);
        case Kind::binary: {
            const Jet3 a = eval_node(n.lhs, t, slots);
            const Jet3 b = eval_node(n.rhs, t, slots);
            switch (n.op) {
                case BinOp::add: return a + b;
                case BinOp::sub: return a - b;
                case BinOp::mul: return a * b;
                case BinOp::div: return a / b;
                case BinOp::pow: return pow(a, b);
            }
            break;
        }
        case Kind::call: {
            const Jet3 a = eval_node(n.lhs, t, slots);
            switch (n.func) {
                case Func::sin: return sin(a);
                case Func::cos: return cos(a);
                case Func::tan: return tan(a);
                case Func::tanh: return tanh(a);
                case Func::sech: return sech(a);
                case Func::sqrt: return sqrt(a);
                case Func::asin: return asin(a);
                case Func::atan: return atan(a);
                case Func::exp: return exp(a);
                case Func::log: return log(a);
            }
            break;
        }
    }
    throw NumericError("corrupt expression node");
}

Jet3 Expression::eval_jet(double t, const std::map<std::string, double>& bindings) const {
    if (root_ < 0) throw ValidationError("evaluating empty expression");
    std::vector<double> slots(referenced_.size());
    for (std::size_t i = 0; i < referenced_.size(); ++i) {
        const auto it = bindings.find(referenced_[i]);
        if (it == bindings.end()) {
            throw ValidationError("unbound parameter '" + referenced_[i] + "'");
        }
        slots[i] = it->second;
    }
    return eval_node(root_, Jet3::variable(t), slots);
}

double Expression::eval(double t, const std::map<std::string, double>& bindings) const {
    return eval_jet(t, bindings).d0;
}

void Expression::print_node(int index, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(index)];
    switch (n.kind) {
        case Kind::literal:
            out += format_double(n.literal);
            return;
        case Kind::variable:
            out += variable_;
            return;
        case Kind::parameter:
            out += referenced_[static_cast<std::size_t>(n.param_slot)];
            return;
        case Kind::unary_neg:
            out += "(-";
            print_node(n.lhs, out);
            out += ")";
            return;
        case Kind::binary: {
            static constexpr const char* ops[] = {"+", "-", "*", "/", "^"};
            out += "(";
            print_node(n.lhs, out);
            out += ops[static_cast<int>(n.op)];
            print_node(n.rhs, out);
            out += ")";
            return;
        }
        case Kind::call: {
            static constexpr const char* names[] = {"sin",  "cos",  "tan",  "tanh", "sech",
                                                    "sqrt", "asin", "atan", "exp",  "log"};
            out += names[static_cast<int>(n.func)];
            out += "(";
            print_node(n.lhs, out);
            out += ")";
            return;
        }
    }
}

std::string Expression::print() const {
    if (root_ < 0) return "";
    std::string out;
    print_node(root_, out);
    return out;
}

}  // namespace rr
