#pragma once

#include "equiform/dictionary.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace equiform {

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { number, name, call, negate, add, subtract, multiply, divide, power };
    Kind kind;
    std::string text;  // name or callee
    mpq_class value;   // number literal
    std::vector<ExprPtr> args;
    std::size_t offset = 0;
};

ExprPtr parse_expression(const std::string& text);
std::string to_string(const ExprPtr& e);

/// Names and operations available while evaluating an expression.
class EvalContext {
public:
    EvalContext(const Alphabet* alphabet, RingPtr ring, SetupPtr setup);

    /// Adds a named definition; it is evaluated lazily and may refer to
    /// earlier definitions.
    void define(const std::string& name, const std::string& expression);
    /// Substitute a constant for a name that would otherwise be a parameter.
    void set_constant(const std::string& name, const KElem& value);

    Form evaluate(const std::string& text) const;
    Form evaluate(const ExprPtr& e) const;
    /// Evaluate to a constant of K (errors otherwise).
    KElem constant(const std::string& text) const;
    /// Evaluate to a polynomial scalar without denominators.
    Poly polynomial(const std::string& text) const;

    const RingPtr& ring() const { return ring_; }
    const SetupPtr& setup() const { return setup_; }

private:
    Form eval(const ExprPtr& e, int depth) const;
    Form scalar(const Scalar& s) const;
    Form call(const ExprPtr& e, int depth) const;
    Form power(const ExprPtr& e, int depth) const;
    mpq_class exponent(const ExprPtr& e, int depth) const;

    const Alphabet* alphabet_;
    RingPtr ring_;
    SetupPtr setup_;
    FramePtr scalar_frame_;
    std::vector<std::pair<std::string, ExprPtr>> definitions_;
    std::map<std::string, KElem> constants_;
};

/// A term of a linearized expression: scalar coefficient times a sequence of
/// syllables (contraction name, letter names).
struct LinearTerm {
    Scalar coefficient;
    std::vector<std::pair<std::string, std::vector<std::string>>> syllables;
};

/// Distribute products over sums; every leaf must be a scalar or a syllable call.
std::vector<LinearTerm> linearize(const ExprPtr& e, const EvalContext& ctx, const Alphabet& alphabet);

/// Map linear terms onto dictionary words: (coefficient with reorder sign, word).
std::vector<std::pair<Scalar, Word>> terms_to_words(const Dictionary& dict, const std::vector<LinearTerm>& terms);

}  // namespace equiform
