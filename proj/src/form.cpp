#include "equiform/form.hpp"

#include <set>
#include <sstream>

namespace equiform {

std::string to_string(const Bidegree& b)
{
    return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

Frame::Frame(RingPtr ring, std::vector<Generator> generators) : ring_(std::move(ring)), gens_(std::move(generators))
{
    if (gens_.size() > 64)
        throw Error("frame has more than 64 generators");
    std::set<std::string> names;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!names.insert(gens_[i].name).second)
            throw Error("duplicate frame generator '" + gens_[i].name + "'");
        masks_[static_cast<int>(gens_[i].kind)] |= BasisWord{1} << i;
    }
}

std::optional<std::size_t> Frame::find(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

Bidegree Frame::bidegree(BasisWord w) const
{
    return {std::popcount(w & mask(GenKind::horizontal)), std::popcount(w & mask(GenKind::vertical))};
}

std::string Frame::render(BasisWord w) const
{
    if (w == 0)
        return "1";
    std::ostringstream out;
    bool first_group = true;
    std::size_t i = 0;
    while (i < gens_.size()) {
        if (!(w & (BasisWord{1} << i))) {
            ++i;
            continue;
        }
        GenKind kind = gens_[i].kind;
        std::vector<int> labels;
        while (i < gens_.size() && gens_[i].kind == kind) {
            if (w & (BasisWord{1} << i))
                labels.push_back(gens_[i].label);
            ++i;
        }
        bool wide = false;
        for (int l : labels)
            wide = wide || l >= 10;
        std::string body;
        for (std::size_t k = 0; k < labels.size(); ++k)
            body += (wide && k ? "," : "") + std::to_string(labels[k]);
        if (!first_group)
            out << " ";
        first_group = false;
        switch (kind) {
        case GenKind::horizontal:
        case GenKind::gauge:
            out << "e^{" << body << "}";
            break;
        case GenKind::vertical:
            out << "b_{" << body << "}";
            break;
        case GenKind::raw_vertical:
            out << "da_{" << body << "}";
            break;
        }
    }
    return out.str();
}

Form generator_form(const FramePtr& frame, std::size_t g)
{
    return Form(frame, BasisWord{1} << g, Scalar(frame->ring(), 1));
}

Form scalar_form(const FramePtr& frame, const Scalar& s)
{
    return Form(frame, 0, s);
}

Form word_form(const FramePtr& frame, BasisWord w)
{
    return Form(frame, w, Scalar(frame->ring(), 1));
}

ConstForm evaluate_form(const Form& x, const Point& pt)
{
    ConstForm r(x.frame());
    for (auto& [w, c] : x.terms())
        r.add_term(w, c.evaluate(pt));
    return r;
}

Form substitute(const Form& x, const std::vector<std::optional<Form>>& images)
{
    const FramePtr& frame = x.frame();
    Form r(frame);
    std::map<BasisWord, Form> cache;
    for (auto& [w, c] : x.terms()) {
        auto it = cache.find(w);
        if (it == cache.end()) {
            Form prod = scalar_form(frame, Scalar(frame->ring(), 1));
            BasisWord rest = w;
            while (rest) {
                int g = std::countr_zero(rest);
                rest &= rest - 1;
                if (g < static_cast<int>(images.size()) && images[g])
                    prod = prod.wedge(*images[g]);
                else
                    prod = prod.wedge(generator_form(frame, static_cast<std::size_t>(g)));
            }
            it = cache.emplace(w, std::move(prod)).first;
        }
        r += it->second.scaled(c);
    }
    return r;
}

Form apply_derivation(const Form& x, const std::function<Form(const Scalar&)>& on_coefficient,
                      const std::vector<std::optional<Form>>& on_generator, bool odd)
{
    const FramePtr& frame = x.frame();
    Form r(frame);
    for (auto& [w, c] : x.terms()) {
        if (on_coefficient) {
            Form dc = on_coefficient(c);
            if (!dc.is_zero())
                r += dc.wedge(word_form(frame, w));
        }
        BasisWord rest = w;
        while (rest) {
            int g = std::countr_zero(rest);
            rest &= rest - 1;
            if (g >= static_cast<int>(on_generator.size()) || !on_generator[g])
                continue;
            const Form& image = *on_generator[g];
            if (image.is_zero())
                continue;
            BasisWord bit = BasisWord{1} << g;
            BasisWord left = w & (bit - 1);
            BasisWord right = w & ~(bit | (bit - 1));
            int koszul = odd && (std::popcount(left) % 2) ? -1 : 1;
            for (auto& [u, cu] : image.terms()) {
                if ((u & left) || (u & right))
                    continue;
                int sign = koszul * wedge_sign(left, u) * wedge_sign(left | u, right);
                Scalar v = c * cu;
                r.add_term(left | u | right, sign < 0 ? -v : v);
            }
        }
    }
    return r;
}

namespace {

template <class C>
std::string render_terms(const FormOver<C>& x, const std::function<std::string(const C&, bool&, bool&)>& coeff)
{
    if (x.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [w, c] : x.terms()) {
        bool negative = false, unit = false;
        std::string s = coeff(c, negative, unit);
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        first = false;
        if (w == 0) {
            out << (unit ? "1" : s);
            continue;
        }
        if (!unit)
            out << s << "*";
        out << x.frame()->render(w);
    }
    return out.str();
}

}  // namespace

std::string render(const Form& x)
{
    return render_terms<Scalar>(x, [](const Scalar& c, bool& negative, bool& unit) {
        Scalar v = c;
        if (v.numerator().size() == 1 && v.numerator().terms().begin()->second.is_monomial() &&
            v.numerator().terms().begin()->second.sign() < 0) {
            negative = true;
            v = -v;
        }
        unit = v.is_one();
        std::string s = v.to_string();
        bool simple = v.numerator().size() == 1 && !v.has_denominator() &&
                      v.numerator().terms().begin()->second.is_monomial();
        return simple ? s : "(" + s + ")";
    });
}

std::string render(const ConstForm& x)
{
    return render_terms<KElem>(x, [](const KElem& c, bool& negative, bool& unit) {
        KElem v = c;
        if (v.is_monomial() && v.sign() < 0) {
            negative = true;
            v = -v;
        }
        unit = v.is_one();
        return v.is_monomial() ? v.to_string() : "(" + v.to_string() + ")";
    });
}

Form wedge_power(const Form& x, int n)
{
    if (n < 0)
        throw Error("negative wedge power");
    Form r = scalar_form(x.frame(), Scalar(x.frame()->ring(), 1));
    for (int i = 0; i < n; ++i)
        r = r.wedge(x);
    return r;
}

}  // namespace equiform
