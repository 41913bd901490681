#include "equiform/dictionary.hpp"

#include <algorithm>
#include <sstream>

namespace equiform {

const Letter& Alphabet::letter(const std::string& name) const
{
    for (auto& l : letters)
        if (l.name == name)
            return l;
    throw Error("unknown letter '" + name + "'");
}

const Contraction& Alphabet::contraction(const std::string& name) const
{
    for (auto& c : contractions)
        if (c.name == name)
            return c;
    throw Error("unknown contraction '" + name + "'");
}

std::string to_string(SyllableOrder o)
{
    return o == SyllableOrder::degree_contraction_letters ? "degree_contraction_letters" : "contraction_letters";
}

SyllableOrder syllable_order_from_string(const std::string& s)
{
    if (s == "degree_contraction_letters")
        return SyllableOrder::degree_contraction_letters;
    if (s == "contraction_letters")
        return SyllableOrder::contraction_letters;
    throw Error("unknown syllable order '" + s + "'");
}

std::string to_string(CandidateOutcome o)
{
    switch (o) {
    case CandidateOutcome::accepted:
        return "accepted";
    case CandidateOutcome::dependent:
        return "dependent";
    case CandidateOutcome::pruned:
        return "pruned";
    }
    return "dependent";
}

bool word_less(const Word& x, const Word& y)
{
    if (x.size() != y.size())
        return x.size() < y.size();
    return x < y;
}

namespace {

struct WordLess {
    bool operator()(const Word& x, const Word& y) const { return word_less(x, y); }
};

using WordSet = std::set<Word, WordLess>;

}  // namespace

std::vector<Syllable> build_syllables(const Alphabet& alphabet, SyllableOrder order)
{
    const HomogeneousSetup& setup = *alphabet.setup;
    std::vector<Syllable> out;
    for (auto& m : alphabet.contractions) {
        if (m.arity < 1)
            throw Error("contraction '" + m.name + "' has arity < 1");
        std::size_t n = alphabet.letters.size();
        if (n == 0)
            break;
        std::vector<std::size_t> tuple(static_cast<std::size_t>(m.arity), 0);
        while (true) {
            Syllable s;
            s.contraction = m.name;
            s.letters = tuple;
            std::vector<const Letter*> ls;
            s.label = m.name + "(";
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                ls.push_back(&alphabet.letters[tuple[i]]);
                s.label += (i ? "," : "") + alphabet.letters[tuple[i]].name;
                s.bidegree = s.bidegree + alphabet.letters[tuple[i]].bidegree;
            }
            s.label += ")";
            s.form = contract_syllable(m, ls);
            out.push_back(std::move(s));
            std::size_t pos = tuple.size();
            while (pos > 0 && ++tuple[pos - 1] == n)
                tuple[--pos] = 0;
            if (pos == 0)
                break;
        }
    }
    for (std::size_t i = 0; i < alphabet.invariant_forms.size(); ++i) {
        const NamedForm& f = alphabet.invariant_forms[i];
        auto bd = f.form.bidegree();
        if (!bd)
            throw Error("invariant form '" + f.name + "' must be nonzero and bidegree-homogeneous");
        if (!setup.is_invariant(f.form))
            throw Error("form '" + f.name + "' is not invariant");
        Syllable s;
        s.contraction = f.name;
        s.invariant_form = i;
        s.label = f.name;
        s.form = f.form;
        s.bidegree = *bd;
        out.push_back(std::move(s));
    }
    auto key_less = [order](const Syllable& x, const Syllable& y) {
        if (order == SyllableOrder::degree_contraction_letters && x.bidegree.total() != y.bidegree.total())
            return x.bidegree.total() < y.bidegree.total();
        if (x.contraction != y.contraction)
            return x.contraction < y.contraction;
        return x.letters < y.letters;
    };
    std::stable_sort(out.begin(), out.end(), key_less);
    return out;
}

Form translate_word(const std::vector<Syllable>& syllables, const Word& w)
{
    if (syllables.empty())
        throw Error("empty syllable set");
    const FramePtr& frame = syllables.front().form.frame();
    Form r = scalar_form(frame, Scalar(frame->ring(), 1));
    for (std::size_t s : w)
        r = r.wedge(syllables.at(s).form);
    return r;
}

std::string Dictionary::render(const Word& w) const
{
    if (w.empty())
        return "1";
    std::string r;
    for (std::size_t i = 0; i < w.size(); ++i)
        r += (i ? " " : "") + syllables.at(w[i]).label;
    return r;
}

Bidegree Dictionary::bidegree(const Word& w) const
{
    Bidegree b;
    for (std::size_t s : w)
        b = b + syllables.at(s).bidegree;
    return b;
}

std::optional<std::size_t> Dictionary::find_syllable(const std::string& contraction,
                                                     const std::vector<std::string>& letters) const
{
    for (std::size_t i = 0; i < syllables.size(); ++i) {
        const Syllable& s = syllables[i];
        if (s.contraction != contraction || s.letters.size() != letters.size())
            continue;
        bool same = true;
        for (std::size_t j = 0; j < letters.size() && same; ++j)
            same = alphabet.letters[s.letters[j]].name == letters[j];
        if (same)
            return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Dictionary::find_generator(const Word& w) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].word == w)
            return i;
    return std::nullopt;
}

int Dictionary::normalize(Word& w) const
{
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            if (syllables[w[j - 1]].odd() && syllables[w[j]].odd())
                sign = -sign;
            std::swap(w[j - 1], w[j]);
        }
    return sign;
}

std::size_t Dictionary::positive_degree_count() const
{
    std::size_t n = 0;
    for (auto& g : generators)
        n += g.bidegree.total() > 0;
    return n;
}

ConstForm Dictionary::evaluate_word(const Word& w, bool at_origin) const
{
    const auto& values = at_origin ? origin_values : generic_values;
    const FramePtr& frame = setup().frame();
    ConstForm r(frame, 0, KElem(1));
    for (std::size_t s : w) {
        r = r.wedge(values.at(s));
        if (r.is_zero())
            break;
    }
    return r;
}

namespace {

using Vec = std::map<BasisWord, KElem>;

Vec to_vec(const ConstForm& f)
{
    return Vec(f.terms().begin(), f.terms().end());
}

std::optional<std::string> prune_reason(const Dictionary& d, const Word& w)
{
    Bidegree b = d.bidegree(w);
    const HomogeneousSetup& s = d.setup();
    if (b.p > static_cast<int>(s.horizontal_count()) || b.q > static_cast<int>(s.fiber_dim()))
        return "degree exceeds dim T + dim V";
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && d.syllables[w[i]].odd())
            return "repeated odd syllable";
    return std::nullopt;
}

void check_transitive_sphere(Dictionary& d)
{
    const HomogeneousSetup& s = d.setup();
    const std::size_t k = s.fiber_dim();
    const int g = static_cast<int>(s.gauge_count());
    std::vector<std::vector<KElem>> samples{d.generic.fiber_values()};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<KElem> v(k, KElem(0));
        v[i] = KElem(1);
        samples.push_back(v);
    }
    samples.push_back(std::vector<KElem>(k, KElem(1)));
    std::set<int> dims{d.origin_stabilizer_dim};
    for (auto& v : samples) {
        int dim = static_cast<int>(s.stabilizer_algebra(Point(s.ring(), v)).size());
        dims.insert(dim);
        if (g - dim != static_cast<int>(k) - 1)
            throw Error("transitive-sphere hypothesis violated: orbit dimension " + std::to_string(g - dim) +
                        " differs from sphere dimension " + std::to_string(k - 1));
    }
    if (dims.size() != 2)
        throw Error("transitive-sphere hypothesis violated: found " + std::to_string(dims.size()) +
                    " stabilizer dimensions");
}

/// One elimination pass; returns the accepted words.
std::vector<Word> run_phase(Dictionary& d, int phase, const std::vector<Word>& c0)
{
    const bool at_origin = phase == 0;
    std::map<Bidegree, EchelonBasis<BasisWord>> bases;
    auto insert = [&](const Word& w) { return bases[d.bidegree(w)].insert(to_vec(d.evaluate_word(w, at_origin))); };
    WordSet c0set(c0.begin(), c0.end());
    std::vector<Word> accepted;
    if (phase == 0) {
        insert(Word{});
        accepted.push_back(Word{});
        d.transcript.push_back({phase, Word{}, CandidateOutcome::accepted, ""});
    } else {
        for (auto& w : c0)
            if (!insert(w))
                throw Error("independence at the origin not inherited at the generic point for " + d.render(w));
    }
    std::vector<Word> c1;
    WordSet prev{Word{}};
    for (std::size_t l = 1;; ++l) {
        if (d.options.max_length > 0 && static_cast<int>(l) > d.options.max_length)
            break;
        WordSet candidates;
        if (l == 1) {
            for (std::size_t s = 0; s < d.syllables.size(); ++s)
                candidates.insert(Word{s});
        } else {
            for (auto& w : prev)
                for (auto& b : c1) {
                    if (b[0] < w.back())
                        continue;
                    Word cand = w;
                    cand.push_back(b[0]);
                    bool ok = true;
                    for (std::size_t j = 0; j + 1 < cand.size() && ok; ++j) {
                        Word sub = cand;
                        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
                        ok = prev.count(sub) > 0;
                    }
                    if (ok)
                        candidates.insert(std::move(cand));
                }
        }
        WordSet layer;
        for (auto& cand : candidates) {
            if (c0set.count(cand))
                continue;
            if (auto reason = prune_reason(d, cand)) {
                d.transcript.push_back({phase, cand, CandidateOutcome::pruned, *reason});
                continue;
            }
            bool independent = insert(cand);
            d.transcript.push_back(
                {phase, cand, independent ? CandidateOutcome::accepted : CandidateOutcome::dependent, ""});
            if (independent) {
                accepted.push_back(cand);
                layer.insert(cand);
            }
        }
        for (auto& w : c0)
            if (w.size() == l)
                layer.insert(w);
        if (l == 1)
            c1.assign(layer.begin(), layer.end());
        if (layer.empty())
            break;
        prev = std::move(layer);
    }
    return accepted;
}

}  // namespace

Dictionary generate_dictionary(const Alphabet& alphabet, const DictionaryOptions& options)
{
    if (!alphabet.setup)
        throw Error("alphabet has no setup");
    Dictionary d;
    d.alphabet = alphabet;
    d.options = options;
    const HomogeneousSetup& s = *alphabet.setup;
    for (auto& m : alphabet.contractions)
        check_contraction(s, m);
    d.syllables = build_syllables(alphabet, options.order);

    const std::size_t k = s.fiber_dim();
    d.origin = s.origin();
    std::vector<KElem> v(k, KElem(0));
    if (options.generic_point) {
        if (options.generic_point->size() != k)
            throw Error("generic point must have " + std::to_string(k) + " coordinates");
        v = *options.generic_point;
    } else if (k > 0) {
        v[0] = KElem(1);
    }
    d.generic = Point(s.ring(), v);
    if (k > 0 && d.generic.is_origin())
        throw Error("generic point must be nonzero");
    d.origin_stabilizer = s.stabilizer_algebra(d.origin);
    d.generic_stabilizer = s.stabilizer_algebra(d.generic);
    d.origin_stabilizer_dim = static_cast<int>(d.origin_stabilizer.size());
    d.generic_stabilizer_dim = static_cast<int>(d.generic_stabilizer.size());
    if (k > 0)
        check_transitive_sphere(d);

    for (auto& syl : d.syllables) {
        for (auto& [w, c] : syl.form.terms())
            for (std::size_t p = 0; p < s.ring()->param_count(); ++p)
                if (c.depends_on(s.ring()->param_var(p)))
                    throw Error("syllable " + syl.label + " depends on a parameter");
        d.origin_values.push_back(evaluate_form(syl.form, d.origin));
        d.generic_values.push_back(evaluate_form(syl.form, d.generic));
    }

    std::vector<Word> c0 = run_phase(d, 0, {});
    std::vector<Word> cv = run_phase(d, 1, c0);
    for (auto& w : c0)
        d.generators.push_back({w, true, d.bidegree(w), Form()});
    for (auto& w : cv)
        d.generators.push_back({w, false, d.bidegree(w), Form()});
    std::stable_sort(d.generators.begin(), d.generators.end(),
                     [](const DictionaryEntry& x, const DictionaryEntry& y) { return word_less(x.word, y.word); });
    for (auto& g : d.generators)
        g.translation = d.syllables.empty() ? scalar_form(s.frame(), Scalar(s.ring(), 1))
                                            : translate_word(d.syllables, g.word);
    return d;
}

bool CompletenessReport::pass() const
{
    return std::all_of(cells.begin(), cells.end(), [](const CompletenessCell& c) { return c.pass(); });
}

int CompletenessReport::generic_total() const
{
    int n = 0;
    for (auto& c : cells)
        n += c.generic_span;
    return n;
}

int CompletenessReport::origin_total() const
{
    int n = 0;
    for (auto& c : cells)
        n += c.origin_span;
    return n;
}

CompletenessReport completeness_check(const Dictionary& dict, const std::vector<GroupElement>& extra,
                                      const std::set<std::size_t>& excluded)
{
    const HomogeneousSetup& s = dict.setup();
    std::map<Bidegree, EchelonBasis<BasisWord>> origin_bases, generic_bases;
    for (std::size_t i = 0; i < dict.generators.size(); ++i) {
        if (excluded.count(i))
            continue;
        const auto& g = dict.generators[i];
        origin_bases[g.bidegree].insert(to_vec(dict.evaluate_word(g.word, true)));
        generic_bases[g.bidegree].insert(to_vec(dict.evaluate_word(g.word, false)));
    }
    CompletenessReport r;
    for (int p = 0; p <= static_cast<int>(s.horizontal_count()); ++p)
        for (int q = 0; q <= static_cast<int>(s.fiber_dim()); ++q) {
            CompletenessCell c;
            c.bidegree = {p, q};
            c.origin_span = static_cast<int>(origin_bases[c.bidegree].size());
            c.generic_span = static_cast<int>(generic_bases[c.bidegree].size());
            c.origin_target = s.invariant_dimension(c.bidegree, dict.origin_stabilizer);
            c.generic_target = s.invariant_dimension(c.bidegree, dict.generic_stabilizer, extra);
            r.cells.push_back(c);
        }
    return r;
}

bool generator_is_necessary(const Dictionary& dict, std::size_t index)
{
    const auto& target = dict.generators.at(index);
    for (bool at_origin : {true, false}) {
        EchelonBasis<BasisWord> with, without;
        for (std::size_t i = 0; i < dict.generators.size(); ++i) {
            const auto& g = dict.generators[i];
            if (g.bidegree != target.bidegree)
                continue;
            Vec v = to_vec(dict.evaluate_word(g.word, at_origin));
            with.insert(v);
            if (i != index)
                without.insert(v);
        }
        if (with.size() > without.size())
            return true;
    }
    return false;
}

namespace {

struct RadialData {
    std::optional<std::size_t> radical;
    Scalar s_power(const RingPtr& ring, int n) const
    {
        if (radical)
            return Scalar::radical(ring, *radical).pow(n);
        if (n < 0 || n % 2)
            throw Error("power of the radial invariant needs a radical with square aa");
        return Scalar::from_poly(ring, ring->aa()).pow(n / 2);
    }
};

using RowKey = std::pair<BasisWord, Monomial>;

std::map<RowKey, KElem> to_rows(const Form& f)
{
    std::map<RowKey, KElem> r;
    for (auto& [w, c] : f.terms()) {
        if (c.has_denominator())
            throw Error("internal: column with denominator");
        for (auto& [m, x] : c.numerator().terms())
            r.emplace(RowKey{w, m}, x);
    }
    return r;
}

struct Column {
    std::size_t product;
    int power;
    Monomial params;
};

Monomial param_part(const Ring& ring, const Monomial& m)
{
    Monomial r;
    for (std::size_t i = 0; i < ring.param_count(); ++i)
        r.exp[ring.param_var(i)] = m.exp[ring.param_var(i)];
    return r;
}

bool solve_cell(const Dictionary& dict, const Bidegree& bd, const Form& comp, const ExpressOptions& opt,
                GeneratorCombination& out)
{
    const HomogeneousSetup& s = dict.setup();
    const RingPtr& ring = s.ring();
    RadialData radial{ring->radical_with_relation(ring->aa())};

    std::vector<int> rad_den(ring->radical_count(), 0), par_den(ring->param_count(), 0);
    for (auto& [w, c] : comp.terms()) {
        for (std::size_t j = 0; j < rad_den.size(); ++j)
            rad_den[j] = std::max(rad_den[j], c.radical_denominator().empty() ? 0 : c.radical_denominator()[j]);
        for (std::size_t i = 0; i < par_den.size(); ++i)
            par_den[i] = std::max(par_den[i], c.param_denominator().empty() ? 0 : c.param_denominator()[i]);
    }
    int radial_den = 0;
    for (std::size_t j = 0; j < rad_den.size(); ++j) {
        if (!rad_den[j])
            continue;
        if (!radial.radical || *radial.radical != j) {
            out.note = "denominator involves a radical other than the radial invariant";
            return false;
        }
        radial_den = rad_den[j];
    }
    Scalar param_den(ring, 1);
    for (std::size_t i = 0; i < par_den.size(); ++i)
        if (par_den[i])
            param_den = param_den * Scalar::param(ring, i).pow(par_den[i]);

    int lo = std::min(opt.min_power, 0);
    int hi = std::max(opt.max_power, lo);
    int step = 1;
    if (!radial.radical) {
        lo = 0;
        step = 2;
    }
    // Multiply through by s^(2 radial_den - lo) * param_den so that every coefficient is polynomial.
    int shift = 2 * radial_den - lo;
    Form n = comp.scaled(radial.s_power(ring, shift) * param_den);
    std::map<RowKey, KElem> target = to_rows(n);
    std::set<Monomial> param_monos;
    for (auto& [key, x] : target)
        param_monos.insert(param_part(*ring, key.second));

    std::vector<std::vector<std::size_t>> singles, products;
    for (std::size_t i = 0; i < dict.generators.size(); ++i)
        if (dict.generators[i].bidegree == bd)
            singles.push_back({i});
    auto attempt = [&](const std::vector<std::vector<std::size_t>>& prods) -> bool {
        std::vector<Form> translations;
        for (auto& p : prods) {
            Form t = scalar_form(s.frame(), Scalar(ring, 1));
            for (std::size_t g : p)
                t = t.wedge(dict.generators[g].translation);
            translations.push_back(std::move(t));
        }
        EchelonBasis<RowKey> basis;
        std::vector<Column> columns;
        for (std::size_t pi = 0; pi < prods.size(); ++pi) {
            if (translations[pi].is_zero())
                continue;
            for (int e = 0; e <= hi - lo; e += step)
                for (auto& mu : param_monos) {
                    Scalar factor = radial.s_power(ring, e) * Scalar::from_poly(ring, Poly::term(mu, KElem(1)));
                    basis.insert(to_rows(translations[pi].scaled(factor)));
                    columns.push_back({pi, e, mu});
                }
        }
        auto sol = basis.solve(target);
        if (!sol)
            return false;
        std::map<std::size_t, CombinationTerm> terms;
        for (auto& [idx, x] : *sol) {
            const Column& col = columns.at(idx);
            auto [it, ins] = terms.try_emplace(col.product);
            if (ins)
                it->second.generators = prods[col.product];
            Scalar c = Scalar::from_poly(ring, Poly::term(col.params, x)) / param_den;
            int power = col.power + lo - 2 * radial_den;
            auto [jt, jins] = it->second.laurent.try_emplace(power, Scalar(ring));
            jt->second += c;
        }
        for (auto& [pi, term] : terms) {
            term.coefficient = Scalar(ring);
            for (auto it = term.laurent.begin(); it != term.laurent.end();) {
                if (it->second.is_zero()) {
                    it = term.laurent.erase(it);
                    continue;
                }
                term.coefficient += it->second * radial.s_power(ring, it->first);
                ++it;
            }
            if (!term.laurent.empty())
                out.terms.push_back(std::move(term));
        }
        return true;
    };
    if (attempt(singles))
        return true;
    if (!opt.pairs && !opt.triples) {
        out.note = "no solution within the power bounds";
        return false;
    }
    products = singles;
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < dict.generators.size(); ++i)
        if (dict.generators[i].bidegree.total() > 0)
            positive.push_back(i);
    for (std::size_t x = 0; x < positive.size(); ++x)
        for (std::size_t y = x; y < positive.size(); ++y) {
            const auto& gx = dict.generators[positive[x]];
            const auto& gy = dict.generators[positive[y]];
            if (gx.bidegree + gy.bidegree == bd)
                products.push_back({positive[x], positive[y]});
            if (!opt.triples)
                continue;
            for (std::size_t z = y; z < positive.size(); ++z)
                if (gx.bidegree + gy.bidegree + dict.generators[positive[z]].bidegree == bd)
                    products.push_back({positive[x], positive[y], positive[z]});
        }
    if (attempt(products))
        return true;
    out.note = "no solution within the power bounds";
    return false;
}

std::string coefficient_string(const Scalar& c)
{
    std::string s = c.to_string();
    bool simple = c.is_constant() && c.constant_value().is_monomial();
    return simple ? s : "(" + s + ")";
}

}  // namespace

std::string render_laurent(const std::map<int, Scalar>& laurent)
{
    std::string out;
    bool first = true;
    for (auto it = laurent.rbegin(); it != laurent.rend(); ++it) {
        auto [power, c] = *it;
        Scalar v = c;
        bool negative = v.is_constant() && v.constant_value().is_monomial() && v.constant_value().sign() < 0;
        if (negative)
            v = -v;
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        first = false;
        std::string radial;
        if (power == 2)
            radial = "aa";
        else if (power % 2 == 0 && power != 0)
            radial = "aa^" + (power < 0 ? "(" + std::to_string(power / 2) + ")" : std::to_string(power / 2));
        else if (power != 0)
            radial = "aa^(" + std::to_string(power) + "/2)";
        if (radial.empty())
            out += v.to_string();
        else if (v.is_one())
            out += radial;
        else
            out += coefficient_string(v) + "*" + radial;
    }
    return out.empty() ? "0" : out;
}

std::string render_combination(const Dictionary& dict, const GeneratorCombination& c)
{
    if (c.terms.empty())
        return c.residual ? "(residual)" : "0";
    std::string out;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const CombinationTerm& t = c.terms[i];
        std::string coef = render_laurent(t.laurent);
        bool negative = !coef.empty() && coef[0] == '-' && t.laurent.size() == 1;
        if (negative)
            coef = coef.substr(1);
        std::string words;
        for (std::size_t j = 0; j < t.generators.size(); ++j)
            words += (j ? " * " : "") + dict.render(dict.generators[t.generators[j]].word);
        out += i == 0 ? (negative ? "-" : "") : (negative ? " - " : " + ");
        bool multi = t.laurent.size() > 1;
        if (coef == "1")
            out += words;
        else
            out += (multi ? "(" + coef + ")" : coef) + " " + words;
    }
    if (c.residual)
        out += " + (residual)";
    return out;
}

Form combination_form(const Dictionary& dict, const GeneratorCombination& c)
{
    const HomogeneousSetup& s = dict.setup();
    Form r(s.frame());
    for (auto& t : c.terms) {
        Form prod = scalar_form(s.frame(), t.coefficient);
        for (std::size_t g : t.generators)
            prod = prod.wedge(dict.generators[g].translation);
        r += prod;
    }
    return r;
}

GeneratorCombination express_in_generators(const Dictionary& dict, const Form& target, const ExpressOptions& options)
{
    GeneratorCombination out;
    if (target.is_zero())
        return out;
    for (auto& [bd, comp] : target.bidegree_split())
        if (!solve_cell(dict, bd, comp, options, out)) {
            out.residual = true;
            return out;
        }
    if (!(combination_form(dict, out) - target).is_zero()) {
        out.residual = true;
        out.note = "combination does not reproduce the target";
    }
    return out;
}

std::vector<DifferentialRow> differential_table(const Dictionary& dict, int max_degree, const ExpressOptions& options)
{
    const HomogeneousSetup& s = dict.setup();
    std::vector<DifferentialRow> rows;
    std::vector<std::string> failures;
    auto add = [&](std::string label, std::optional<std::size_t> gen, const Form& source) {
        DifferentialRow row{std::move(label), gen, source, s.exterior_derivative(source), {}};
        if (!s.is_invariant(row.differential))
            failures.push_back(row.label + " (differential not invariant)");
        row.combination = express_in_generators(dict, row.differential, options);
        if (row.combination.residual)
            failures.push_back(row.label);
        rows.push_back(std::move(row));
    };
    if (s.fiber_dim() > 0)
        add("aa", std::nullopt, scalar_form(s.frame(), s.aa()));
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < dict.generators.size(); ++i) {
        int deg = dict.generators[i].bidegree.total();
        if (deg > 0 && deg <= max_degree)
            order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return dict.generators[x].bidegree.total() < dict.generators[y].bidegree.total();
    });
    for (std::size_t i : order)
        add(dict.render(dict.generators[i].word), i, dict.generators[i].translation);
    if (!failures.empty()) {
        std::string msg = "differential not expressible for:";
        for (auto& f : failures)
            msg += " " + f + ";";
        throw Error(msg);
    }
    return rows;
}

}  // namespace equiform
