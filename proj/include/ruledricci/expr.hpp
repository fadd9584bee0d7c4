#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ruledricci/jet.hpp"

namespace rr {

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Parsed mathematical expression of one variable plus named parameters.
///
/// Grammar: conventional infix precedence, '^' right-associative, unary
/// minus, one-argument functions sin cos tan tanh sech sqrt asin atan exp
/// log. No implicit multiplication. Unknown identifiers are rejected at
/// parse time. Immutable after parse; evaluation is reentrant.
class Expression {
public:
    Expression() = default;

    /// Parse `source`; free symbols must lie in {variable} plus the keys of
    /// `parameters`. Throws ParseError with a byte offset on failure.
    static Expression parse(std::string_view source,
                            const std::map<std::string, double>& parameters = {},
                            const std::string& variable = "t");

    /// Order-3 jet of the expression at t. All referenced parameters must be
    /// bound. Exact up to rounding; throws NumericError on domain errors.
    Jet3 eval_jet(double t, const std::map<std::string, double>& bindings = {}) const;

    double eval(double t, const std::map<std::string, double>& bindings = {}) const;

    /// Fully parenthesized rendering; parse(print()) is an equivalent AST.
    std::string print() const;

    const std::string& source() const { return source_; }
    const std::string& variable() const { return variable_; }
    /// Parameter names actually referenced by the expression.
    const std::vector<std::string>& referenced_parameters() const { return referenced_; }
    bool empty() const { return nodes_.empty(); }

private:
    enum class Kind : std::uint8_t { literal, variable, parameter, unary_neg, binary, call };
    enum class BinOp : std::uint8_t { add, sub, mul, div, pow };
    enum class Func : std::uint8_t { sin, cos, tan, tanh, sech, sqrt, asin, atan, exp, log };

    struct Node {
        Kind kind;
        BinOp op = BinOp::add;
        Func func = Func::sin;
        double literal = 0.0;
        int lhs = -1;   // also: operand of unary/call
        int rhs = -1;
        int param_slot = -1;
        SourceSpan span;
    };

    Jet3 eval_node(int index, const Jet3& t, const std::vector<double>& slots) const;
    void print_node(int index, std::string& out) const;

    friend class ExprParser;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;
    std::string variable_ = "t";
    std::vector<std::string> referenced_;  // slot order
};

}  // namespace rr
