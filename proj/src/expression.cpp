#include "equiform/expression.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace equiform {

namespace {

enum class Tok { number, name, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
                ++i;
            out.push_back({Tok::number, s.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            out.push_back({Tok::name, s.substr(start, i - start), start});
            continue;
        }
        // U+2212 minus sign
        if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
            out.push_back({Tok::minus, "-", start});
            i += 3;
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '/': k = Tok::slash; break;
        case '^': k = Tok::caret; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case ',': k = Tok::comma; break;
        default:
            throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
        }
        out.push_back({k, std::string(1, s[i]), start});
        ++i;
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

mpq_class parse_number(const std::string& text, std::size_t offset)
{
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return mpq_class(text);
    if (text.find('.', dot + 1) != std::string::npos)
        throw ParseError("malformed number '" + text + "'", offset);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i)
        den *= 10;
    mpq_class q(mpz_class(digits.empty() ? "0" : digits), den);
    q.canonicalize();
    return q;
}

class Parser {
public:
    explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        if (peek().kind != Tok::end)
            throw ParseError("unexpected '" + peek().text + "'", peek().offset);
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k)
    {
        if (peek().kind != k)
            return false;
        ++pos_;
        return true;
    }
    void expect(Tok k, const char* what)
    {
        if (!accept(k))
            throw ParseError(std::string("expected ") + what, peek().offset);
    }

    static ExprPtr node(Expr::Kind k, std::size_t off, std::vector<ExprPtr> args, std::string text = {})
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->offset = off;
        e->args = std::move(args);
        e->text = std::move(text);
        return e;
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token& op = next();
            ExprPtr rhs = term();
            lhs = node(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::subtract, op.offset, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token& op = next();
            ExprPtr rhs = unary();
            lhs = node(op.kind == Tok::star ? Expr::Kind::multiply : Expr::Kind::divide, op.offset, {lhs, rhs});
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (peek().kind == Tok::minus) {
            std::size_t off = next().offset;
            return node(Expr::Kind::negate, off, {unary()});
        }
        if (accept(Tok::plus))
            return unary();
        return factor();
    }

    ExprPtr factor()
    {
        ExprPtr base = atom();
        if (peek().kind == Tok::caret) {
            std::size_t off = next().offset;
            ExprPtr ex;
            if (peek().kind == Tok::minus) {
                std::size_t moff = next().offset;
                ex = node(Expr::Kind::negate, moff, {atom()});
            } else {
                ex = atom();
            }
            return node(Expr::Kind::power, off, {base, ex});
        }
        return base;
    }

    ExprPtr atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            next();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::number;
            e->offset = t.offset;
            e->text = t.text;
            e->value = parse_number(t.text, t.offset);
            return e;
        }
        case Tok::name: {
            next();
            if (!accept(Tok::lparen))
                return node(Expr::Kind::name, t.offset, {}, t.text);
            std::vector<ExprPtr> args{expr()};
            while (accept(Tok::comma))
                args.push_back(expr());
            expect(Tok::rparen, "')'");
            return node(Expr::Kind::call, t.offset, std::move(args), t.text);
        }
        case Tok::lparen: {
            next();
            ExprPtr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::end:
            throw ParseError("unexpected end of expression", t.offset);
        default:
            throw ParseError("unexpected '" + t.text + "'", t.offset);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool contains_syllable(const ExprPtr& e, const Alphabet& alphabet)
{
    if (e->kind == Expr::Kind::call) {
        for (auto& c : alphabet.contractions)
            if (c.name == e->text)
                return true;
    }
    for (auto& a : e->args)
        if (contains_syllable(a, alphabet))
            return true;
    return false;
}

std::optional<int> form_degree(const Form& f)
{
    if (f.is_zero())
        return std::nullopt;
    return f.degree();
}

}  // namespace

ExprPtr parse_expression(const std::string& text)
{
    return Parser(text).parse();
}

std::string to_string(const ExprPtr& e)
{
    switch (e->kind) {
    case Expr::Kind::number:
        return e->text;
    case Expr::Kind::name:
        return e->text;
    case Expr::Kind::call: {
        std::string s = e->text + "(";
        for (std::size_t i = 0; i < e->args.size(); ++i)
            s += (i ? "," : "") + to_string(e->args[i]);
        return s + ")";
    }
    case Expr::Kind::negate:
        return "-(" + to_string(e->args[0]) + ")";
    case Expr::Kind::add:
        return "(" + to_string(e->args[0]) + " + " + to_string(e->args[1]) + ")";
    case Expr::Kind::subtract:
        return "(" + to_string(e->args[0]) + " - " + to_string(e->args[1]) + ")";
    case Expr::Kind::multiply:
        return "(" + to_string(e->args[0]) + "*" + to_string(e->args[1]) + ")";
    case Expr::Kind::divide:
        return "(" + to_string(e->args[0]) + "/" + to_string(e->args[1]) + ")";
    case Expr::Kind::power:
        return "(" + to_string(e->args[0]) + ")^(" + to_string(e->args[1]) + ")";
    }
    return "";
}

EvalContext::EvalContext(const Alphabet* alphabet, RingPtr ring, SetupPtr setup)
    : alphabet_(alphabet), ring_(std::move(ring)), setup_(std::move(setup))
{
    if (setup_ && !ring_)
        ring_ = setup_->ring();
    if (!ring_)
        throw Error("evaluation context needs a ring");
    scalar_frame_ = setup_ ? setup_->frame() : std::make_shared<const Frame>(ring_, std::vector<Generator>{});
}

void EvalContext::define(const std::string& name, const std::string& expression)
{
    try {
        definitions_.emplace_back(name, parse_expression(expression));
    } catch (const ParseError& e) {
        throw Error("in definition of '" + name + "': " + e.what());
    }
}

void EvalContext::set_constant(const std::string& name, const KElem& value)
{
    constants_[name] = value;
}

Form EvalContext::evaluate(const std::string& text) const
{
    return eval(parse_expression(text), 0);
}

Form EvalContext::evaluate(const ExprPtr& e) const
{
    return eval(e, 0);
}

KElem EvalContext::constant(const std::string& text) const
{
    Form f = evaluate(text);
    if (f.is_zero())
        return KElem(0);
    if (f.terms().size() != 1 || f.terms().begin()->first != 0 || !f.terms().begin()->second.is_constant())
        throw Error("'" + text + "' is not a constant");
    return f.terms().begin()->second.constant_value();
}

Poly EvalContext::polynomial(const std::string& text) const
{
    Form f = evaluate(text);
    if (f.is_zero())
        return Poly();
    if (f.terms().size() != 1 || f.terms().begin()->first != 0)
        throw Error("'" + text + "' is not a scalar");
    const Scalar& s = f.terms().begin()->second;
    if (s.has_denominator())
        throw Error("'" + text + "' is not a polynomial");
    return s.numerator();
}

Form EvalContext::scalar(const Scalar& s) const
{
    return scalar_form(scalar_frame_, s);
}

Form EvalContext::eval(const ExprPtr& e, int depth) const
{
    if (depth > 200)
        throw ParseError("definitions nest too deeply (recursive definition?)", e->offset);
    switch (e->kind) {
    case Expr::Kind::number:
        return scalar(Scalar(ring_, KElem(e->value)));
    case Expr::Kind::name: {
        const std::string& n = e->text;
        for (auto it = definitions_.rbegin(); it != definitions_.rend(); ++it)
            if (it->first == n)
                return eval(it->second, depth + 1);
        if (auto it = constants_.find(n); it != constants_.end())
            return scalar(Scalar(ring_, it->second));
        if (n == "aa" && ring_->fiber_count() > 0)
            return scalar(Scalar::from_poly(ring_, ring_->aa()));
        if (auto i = ring_->find_fiber(n))
            return scalar(Scalar::fiber(ring_, *i));
        if (auto i = ring_->find_param(n))
            return scalar(Scalar::param(ring_, *i));
        if (auto i = ring_->find_radical(n))
            return scalar(Scalar::radical(ring_, *i));
        if (setup_) {
            if (auto g = setup_->frame()->find(n)) {
                GenKind kind = setup_->frame()->generator(*g).kind;
                if (kind != GenKind::horizontal && kind != GenKind::vertical)
                    throw ParseError("generator '" + n + "' is not a basic one-form", e->offset);
                return generator_form(setup_->frame(), *g);
            }
        }
        if (alphabet_)
            for (auto& l : alphabet_->letters)
                if (l.name == n)
                    throw ParseError("letter '" + n + "' must appear inside a contraction", e->offset);
        throw ParseError("unknown name '" + n + "'", e->offset);
    }
    case Expr::Kind::call:
        return call(e, depth);
    case Expr::Kind::negate:
        return -eval(e->args[0], depth);
    case Expr::Kind::add:
    case Expr::Kind::subtract: {
        Form x = eval(e->args[0], depth);
        Form y = eval(e->args[1], depth);
        auto dx = form_degree(x), dy = form_degree(y);
        if (!x.is_zero() && !dx)
            throw ParseError("left operand is not of homogeneous degree", e->offset);
        if (!y.is_zero() && !dy)
            throw ParseError("right operand is not of homogeneous degree", e->offset);
        if (dx && dy && *dx != *dy)
            throw ParseError("degree mismatch: " + std::to_string(*dx) + "-form " +
                                 (e->kind == Expr::Kind::add ? "plus " : "minus ") + std::to_string(*dy) + "-form",
                             e->offset);
        return e->kind == Expr::Kind::add ? x + y : x - y;
    }
    case Expr::Kind::multiply: {
        Form x = eval(e->args[0], depth);
        Form y = eval(e->args[1], depth);
        if (x.frame() != y.frame()) {
            if (x.is_zero() || y.is_zero())
                return Form(scalar_frame_);
            throw ParseError("operands live on different frames", e->offset);
        }
        return x.wedge(y);
    }
    case Expr::Kind::divide: {
        Form x = eval(e->args[0], depth);
        Form y = eval(e->args[1], depth);
        if (y.is_zero())
            throw ParseError("division by zero", e->offset);
        if (y.terms().size() != 1 || y.terms().begin()->first != 0)
            throw ParseError("divisor must be a scalar", e->offset);
        Scalar inv;
        try {
            inv = y.terms().begin()->second.inverse();
        } catch (const Error& err) {
            throw ParseError(err.what(), e->offset);
        }
        return x.scaled(inv);
    }
    case Expr::Kind::power:
        return power(e, depth);
    }
    throw ParseError("unsupported expression", e->offset);
}

mpq_class EvalContext::exponent(const ExprPtr& e, int depth) const
{
    Form f = eval(e, depth);
    if (f.is_zero())
        return 0;
    if (f.terms().size() != 1 || f.terms().begin()->first != 0 || !f.terms().begin()->second.is_constant() ||
        !f.terms().begin()->second.constant_value().is_rational())
        throw ParseError("exponent must be a rational constant", e->offset);
    return f.terms().begin()->second.constant_value().rational();
}

Form EvalContext::power(const ExprPtr& e, int depth) const
{
    Form base = eval(e->args[0], depth);
    mpq_class q = exponent(e->args[1], depth);
    bool scalar_base = base.is_zero() || (base.terms().size() == 1 && base.terms().begin()->first == 0);
    if (q.get_den() == 1) {
        if (!q.get_num().fits_sint_p())
            throw ParseError("exponent too large", e->offset);
        int n = static_cast<int>(q.get_num().get_si());
        if (scalar_base) {
            Scalar s = base.is_zero() ? Scalar(ring_) : base.terms().begin()->second;
            try {
                return scalar(s.pow(n));
            } catch (const Error& err) {
                throw ParseError(err.what(), e->offset);
            }
        }
        if (n < 0)
            throw ParseError("negative power of a form", e->offset);
        return wedge_power(base, n);
    }
    if (q.get_den() != 2 || !scalar_base || base.is_zero())
        throw ParseError("fractional exponent without declared radical", e->offset);
    const Scalar& s = base.terms().begin()->second;
    if (s.has_denominator())
        throw ParseError("fractional exponent without declared radical", e->offset);
    auto r = ring_->radical_with_relation(s.numerator());
    if (!r)
        throw ParseError("fractional exponent without declared radical", e->offset);
    if (!q.get_num().fits_sint_p())
        throw ParseError("exponent too large", e->offset);
    try {
        return scalar(Scalar::radical(ring_, *r).pow(static_cast<int>(q.get_num().get_si())));
    } catch (const Error& err) {
        throw ParseError(err.what(), e->offset);
    }
}

Form EvalContext::call(const ExprPtr& e, int depth) const
{
    const std::string& f = e->text;
    if (f == "d") {
        if (e->args.size() != 1)
            throw ParseError("d takes one argument", e->offset);
        if (!setup_)
            throw ParseError("d needs a homogeneous setup", e->offset);
        Form x = eval(e->args[0], depth);
        if (x.is_zero())
            return x;
        try {
            return setup_->exterior_derivative(x);
        } catch (const Error& err) {
            throw ParseError(err.what(), e->offset);
        }
    }
    if (f == "sqrt") {
        if (e->args.size() != 1)
            throw ParseError("sqrt takes one argument", e->offset);
        mpq_class q = exponent(e->args[0], depth);
        if (q < 0)
            throw ParseError("sqrt of a negative number", e->offset);
        KElem v(q);
        if (auto r = v.sqrt())
            return scalar(Scalar(ring_, *r));
        if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
            long n = q.get_num().get_si();
            if (auto r = ring_->sqrt_of_integer(n))
                return scalar(Scalar(ring_, *r));
        }
        throw ParseError("sqrt(" + q.get_str() + ") is not in the declared number field", e->offset);
    }
    if (alphabet_) {
        for (auto& m : alphabet_->contractions) {
            if (m.name != f)
                continue;
            std::vector<const Letter*> letters;
            for (auto& a : e->args) {
                if (a->kind != Expr::Kind::name)
                    throw ParseError("arguments of '" + f + "' must be letter names", a->offset);
                const Letter* found = nullptr;
                for (auto& l : alphabet_->letters)
                    if (l.name == a->text)
                        found = &l;
                if (!found)
                    throw ParseError("unknown letter '" + a->text + "'", a->offset);
                letters.push_back(found);
            }
            try {
                return contract_syllable(m, letters);
            } catch (const Error& err) {
                throw ParseError(err.what(), e->offset);
            }
        }
    }
    throw ParseError("unknown function '" + f + "'", e->offset);
}

std::vector<LinearTerm> linearize(const ExprPtr& e, const EvalContext& ctx, const Alphabet& alphabet)
{
    auto as_scalar = [&](const ExprPtr& x) {
        Form f = ctx.evaluate(x);
        if (f.is_zero())
            return Scalar(ctx.ring());
        if (f.terms().size() != 1 || f.terms().begin()->first != 0)
            throw ParseError("term is neither a scalar nor a product of syllables", x->offset);
        return f.terms().begin()->second;
    };
    if (!contains_syllable(e, alphabet))
        return {LinearTerm{as_scalar(e), {}}};
    switch (e->kind) {
    case Expr::Kind::call: {
        LinearTerm t{Scalar(ctx.ring(), 1), {}};
        std::vector<std::string> letters;
        for (auto& a : e->args) {
            if (a->kind != Expr::Kind::name)
                throw ParseError("arguments of '" + e->text + "' must be letter names", a->offset);
            letters.push_back(a->text);
        }
        t.syllables.emplace_back(e->text, letters);
        return {t};
    }
    case Expr::Kind::negate: {
        auto r = linearize(e->args[0], ctx, alphabet);
        for (auto& t : r)
            t.coefficient = -t.coefficient;
        return r;
    }
    case Expr::Kind::add:
    case Expr::Kind::subtract: {
        auto r = linearize(e->args[0], ctx, alphabet);
        auto s = linearize(e->args[1], ctx, alphabet);
        for (auto& t : s) {
            if (e->kind == Expr::Kind::subtract)
                t.coefficient = -t.coefficient;
            r.push_back(std::move(t));
        }
        return r;
    }
    case Expr::Kind::multiply: {
        auto x = linearize(e->args[0], ctx, alphabet);
        auto y = linearize(e->args[1], ctx, alphabet);
        std::vector<LinearTerm> r;
        for (auto& tx : x)
            for (auto& ty : y) {
                LinearTerm t{tx.coefficient * ty.coefficient, tx.syllables};
                t.syllables.insert(t.syllables.end(), ty.syllables.begin(), ty.syllables.end());
                r.push_back(std::move(t));
            }
        return r;
    }
    case Expr::Kind::divide: {
        if (contains_syllable(e->args[1], alphabet))
            throw ParseError("cannot divide by a syllable", e->offset);
        Scalar inv = as_scalar(e->args[1]).inverse();
        auto r = linearize(e->args[0], ctx, alphabet);
        for (auto& t : r)
            t.coefficient = t.coefficient * inv;
        return r;
    }
    default:
        throw ParseError("expression cannot be linearized into syllable products", e->offset);
    }
}

std::vector<std::pair<Scalar, Word>> terms_to_words(const Dictionary& dict, const std::vector<LinearTerm>& terms)
{
    std::map<Word, Scalar> merged;
    for (auto& t : terms) {
        Word w;
        for (auto& [c, letters] : t.syllables) {
            auto idx = dict.find_syllable(c, letters);
            if (!idx) {
                std::string l;
                for (auto& x : letters)
                    l += (l.empty() ? "" : ",") + x;
                throw Error("unknown syllable " + c + "(" + l + ")");
            }
            w.push_back(*idx);
        }
        int sign = dict.normalize(w);
        Scalar c = sign < 0 ? -t.coefficient : t.coefficient;
        auto [it, ins] = merged.try_emplace(w, c);
        if (!ins)
            it->second += c;
    }
    std::vector<std::pair<Scalar, Word>> out;
    for (auto& [w, c] : merged)
        if (!c.is_zero())
            out.emplace_back(c, w);
    std::stable_sort(out.begin(), out.end(), [](auto& x, auto& y) { return word_less(x.second, y.second); });
    return out;
}

}  // namespace equiform
