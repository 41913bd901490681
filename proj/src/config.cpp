#include "equiform/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace equiform {

ConfigError::ConfigError(const std::string& message, std::size_t line, std::size_t column, std::string pointer)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            (pointer.empty() ? "" : " (" + pointer + ")") + ": " + message),
      line_(line), column_(column), pointer_(std::move(pointer))
{
}

namespace {

std::string escape_token(const std::string& key)
{
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Walks text that nlohmann has already accepted, so the scanner can assume
// well-formed JSON.
class Scanner {
public:
    Scanner(const std::string& text, std::map<std::string, std::size_t>& out) : s_(text), out_(out) {}

    void run()
    {
        skip();
        value("");
    }

private:
    void skip()
    {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r'))
            ++i_;
    }

    std::string string_token()
    {
        std::string out;
        ++i_;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
                char e = s_[i_ + 1];
                if (e == 'u') {
                    out += '?';
                    i_ += 6;
                    continue;
                }
                out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
                i_ += 2;
                continue;
            }
            out += s_[i_++];
        }
        ++i_;
        return out;
    }

    void value(const std::string& ptr)
    {
        out_[ptr] = i_;
        if (i_ >= s_.size())
            return;
        char c = s_[i_];
        if (c == '{') {
            ++i_;
            skip();
            if (s_[i_] == '}') {
                ++i_;
                return;
            }
            while (true) {
                skip();
                std::string key = string_token();
                std::string child = ptr + "/" + escape_token(key);
                skip();
                ++i_;  // ':'
                skip();
                value(child);
                skip();
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                ++i_;  // '}'
                return;
            }
        }
        if (c == '[') {
            ++i_;
            skip();
            if (s_[i_] == ']') {
                ++i_;
                return;
            }
            for (std::size_t n = 0;; ++n) {
                skip();
                value(ptr + "/" + std::to_string(n));
                skip();
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                ++i_;  // ']'
                return;
            }
        }
        if (c == '"') {
            string_token();
            return;
        }
        while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' &&
               s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t')
            ++i_;
    }

    const std::string& s_;
    std::map<std::string, std::size_t>& out_;
    std::size_t i_ = 0;
};

std::string child(const std::string& ptr, const std::string& key)
{
    return ptr + "/" + escape_token(key);
}

std::string child(const std::string& ptr, std::size_t index)
{
    return ptr + "/" + std::to_string(index);
}

void check_keys(const Config& cfg, const Json& obj, const std::string& ptr, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        cfg.fail(ptr, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a)
                ok = true;
        if (!ok)
            cfg.fail(child(ptr, it.key()), "unknown key '" + it.key() + "'");
    }
}

const Json& require(const Config& cfg, const Json& obj, const std::string& ptr, const char* key)
{
    if (!obj.contains(key))
        cfg.fail(ptr, std::string("missing key '") + key + "'");
    return obj.at(key);
}

int as_int(const Config& cfg, const Json& v, const std::string& ptr)
{
    if (!v.is_number_integer())
        cfg.fail(ptr, "expected an integer");
    return v.get<int>();
}

std::string as_string(const Config& cfg, const Json& v, const std::string& ptr)
{
    if (!v.is_string())
        cfg.fail(ptr, "expected a string");
    return v.get<std::string>();
}

const Json& as_array(const Config& cfg, const Json& v, const std::string& ptr)
{
    if (!v.is_array())
        cfg.fail(ptr, "expected an array");
    return v;
}

template <class F>
auto located(const Config& cfg, const std::string& ptr, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const SetupError&) {
        throw;
    } catch (const Error& e) {
        cfg.fail(ptr, e.what());
    }
}

KElem constant_value(const Config& cfg, const EvalContext& ctx, const Json& v, const std::string& ptr)
{
    std::string text = value_text(v);
    if (text.empty())
        cfg.fail(ptr, "expected a number or an expression string");
    return located(cfg, ptr, [&] { return ctx.constant(text); });
}

KMatrix matrix_value(const Config& cfg, const EvalContext& ctx, const Json& v, const std::string& ptr, std::size_t n)
{
    as_array(cfg, v, ptr);
    if (v.size() != n)
        cfg.fail(ptr, "expected " + std::to_string(n) + " rows");
    KMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Json& row = as_array(cfg, v[i], child(ptr, i));
        if (row.size() != n)
            cfg.fail(child(ptr, i), "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = constant_value(cfg, ctx, row[j], child(child(ptr, i), j));
    }
    return m;
}

std::pair<int, int> index_pair(const Config& cfg, const Json& v, const std::string& ptr)
{
    if (v.is_array()) {
        if (v.size() != 2)
            cfg.fail(ptr, "expected two indices");
        return {as_int(cfg, v[0], child(ptr, 0)), as_int(cfg, v[1], child(ptr, 1))};
    }
    std::string s = as_string(cfg, v, ptr);
    auto comma = s.find(',');
    try {
        if (comma != std::string::npos)
            return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
        if (s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])) &&
            std::isdigit(static_cast<unsigned char>(s[1])))
            return {s[0] - '0', s[1] - '0'};
    } catch (const std::exception&) {
    }
    cfg.fail(ptr, "index pair must look like \"23\", \"2,3\" or [2, 3]");
}

struct RingParts {
    RingPtr ring;
    std::map<std::string, KElem> constants;
};

int representation_dimension(const Config& cfg, const Json& doc)
{
    const Json& rep = require(cfg, doc, "", "representation");
    if (rep.is_string())
        return static_cast<int>(require(cfg, require(cfg, doc, "", "splitting"), "/splitting", "horizontal").size());
    if (rep.contains("dimension"))
        return as_int(cfg, rep.at("dimension"), "/representation/dimension");
    if (rep.contains("matrices") && rep.at("matrices").is_object() && !rep.at("matrices").empty())
        return static_cast<int>(rep.at("matrices").begin().value().size());
    cfg.fail("/representation", "cannot determine the representation dimension");
}

RingParts build_ring(const Config& cfg, const std::map<std::string, std::string>& substitutions)
{
    const Json& doc = cfg.doc;
    const Json& r = require(cfg, doc, "", "ring");
    check_keys(cfg, r, "/ring", {"sqrt_constants", "fiber_vars", "params", "radicals", "max_laurent"});
    RingSpec spec;
    if (r.contains("sqrt_constants")) {
        const Json& sc = as_array(cfg, r.at("sqrt_constants"), "/ring/sqrt_constants");
        for (std::size_t i = 0; i < sc.size(); ++i)
            spec.sqrt_constants.push_back(as_int(cfg, sc[i], child("/ring/sqrt_constants", i)));
    }
    if (r.contains("fiber_vars")) {
        const Json& fv = as_array(cfg, r.at("fiber_vars"), "/ring/fiber_vars");
        for (std::size_t i = 0; i < fv.size(); ++i)
            spec.fiber_vars.push_back(as_string(cfg, fv[i], child("/ring/fiber_vars", i)));
    } else {
        int n = representation_dimension(cfg, doc);
        for (int i = 1; i <= n; ++i)
            spec.fiber_vars.push_back("a" + std::to_string(i));
    }
    std::vector<std::string> declared;
    if (r.contains("params")) {
        const Json& ps = as_array(cfg, r.at("params"), "/ring/params");
        for (std::size_t i = 0; i < ps.size(); ++i)
            declared.push_back(as_string(cfg, ps[i], child("/ring/params", i)));
    }
    for (auto& [name, value] : substitutions)
        if (std::find(declared.begin(), declared.end(), name) == declared.end())
            throw Error("cannot substitute '" + name + "': not a declared parameter");
    for (auto& p : declared)
        if (!substitutions.count(p))
            spec.params.push_back(p);
    if (r.contains("max_laurent"))
        spec.max_laurent = as_int(cfg, r.at("max_laurent"), "/ring/max_laurent");

    RingParts out;
    RingPtr base = located(cfg, "/ring", [&] { return Ring::create(spec); });
    EvalContext ctx(nullptr, base, nullptr);
    for (auto& [name, value] : substitutions) {
        try {
            out.constants[name] = ctx.constant(value);
        } catch (const Error& e) {
            throw Error("substitution for '" + name + "': " + e.what());
        }
        ctx.set_constant(name, out.constants[name]);
    }
    if (r.contains("radicals")) {
        const Json& rs = as_array(cfg, r.at("radicals"), "/ring/radicals");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string p = child("/ring/radicals", i);
            check_keys(cfg, rs[i], p, {"name", "square"});
            std::string name = as_string(cfg, require(cfg, rs[i], p, "name"), p + "/name");
            std::string square = as_string(cfg, require(cfg, rs[i], p, "square"), p + "/square");
            Poly rel = located(cfg, p + "/square", [&] { return ctx.polynomial(square); });
            spec.radicals.push_back({name, rel});
        }
    }
    out.ring = located(cfg, "/ring", [&] { return Ring::create(spec); });
    return out;
}

}  // namespace

JsonLocator::JsonLocator(const std::string& text) : text_(text)
{
    Scanner(text_, offsets_).run();
}

std::pair<std::size_t, std::size_t> JsonLocator::position_of_offset(std::size_t offset) const
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
        if (text_[i] == '\n') {
            ++line;
            col = 1;
        } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
            ++col;
        }
    }
    return {line, col};
}

std::pair<std::size_t, std::size_t> JsonLocator::position(const std::string& pointer) const
{
    std::string p = pointer;
    while (true) {
        if (auto it = offsets_.find(p); it != offsets_.end())
            return position_of_offset(it->second);
        auto slash = p.rfind('/');
        if (slash == std::string::npos)
            return {1, 1};
        p = p.substr(0, slash);
    }
}

void Config::fail(const std::string& pointer, const std::string& message) const
{
    auto [line, col] = locator.position(pointer);
    throw ConfigError(message, line, col, pointer.empty() ? "/" : pointer);
}

Config parse_config(const std::string& text, const std::string& source)
{
    Config cfg;
    cfg.source = source;
    try {
        cfg.doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw ConfigError(pos == std::string::npos ? what : what.substr(pos), line, col);
    }
    cfg.locator = JsonLocator(text);
    check_keys(cfg, cfg.doc, "",
               {"name", "description", "ring", "lie_algebra", "splitting", "representation", "letters",
                "contractions", "horizontal_invariants", "definitions", "options", "tasks", "notes"});
    if (cfg.doc.contains("notes")) {
        const Json& notes = cfg.doc.at("notes");
        if (!notes.is_array())
            cfg.fail("/notes", "expected a list of strings");
        for (std::size_t i = 0; i < notes.size(); ++i)
            if (!notes[i].is_string())
                cfg.fail("/notes/" + std::to_string(i), "expected a string");
    }
    return cfg;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string value_text(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number_float())
        return v.dump();
    return {};
}

namespace {

SetupPtr setup_from_ring(const Config& cfg, const RingParts& parts)
{
    const Json& doc = cfg.doc;
    EvalContext ctx(nullptr, parts.ring, nullptr);
    for (auto& [n, v] : parts.constants)
        ctx.set_constant(n, v);

    SetupInput in;
    in.ring = parts.ring;

    const Json& la = require(cfg, doc, "", "lie_algebra");
    check_keys(cfg, la, "/lie_algebra", {"dimension", "constants"});
    in.lie.dimension = as_int(cfg, require(cfg, la, "/lie_algebra", "dimension"), "/lie_algebra/dimension");
    int dim = in.lie.dimension;
    if (dim <= 0)
        cfg.fail("/lie_algebra/dimension", "dimension must be positive");
    const Json& cs = as_array(cfg, require(cfg, la, "/lie_algebra", "constants"), "/lie_algebra/constants");
    for (std::size_t n = 0; n < cs.size(); ++n) {
        std::string p = child("/lie_algebra/constants", n);
        const Json& t = as_array(cfg, cs[n], p);
        if (t.size() != 3)
            cfg.fail(p, "expected [i, \"jk\", value]");
        int i = as_int(cfg, t[0], child(p, 0));
        auto [j, k] = index_pair(cfg, t[1], child(p, 1));
        for (int x : {i, j, k})
            if (x < 1 || x > dim)
                cfg.fail(p, "index " + std::to_string(x) + " out of range 1.." + std::to_string(dim));
        if (j == k)
            cfg.fail(child(p, 1), "repeated index in e^" + std::to_string(j) + std::to_string(k));
        in.lie.constants.push_back({i, j, k, constant_value(cfg, ctx, t[2], child(p, 2))});
    }

    const Json& sp = require(cfg, doc, "", "splitting");
    check_keys(cfg, sp, "/splitting", {"horizontal", "gauge"});
    for (const char* key : {"horizontal", "gauge"}) {
        std::string p = std::string("/splitting/") + key;
        const Json& arr = as_array(cfg, require(cfg, sp, "/splitting", key), p);
        auto& target = std::string(key) == "horizontal" ? in.splitting.horizontal : in.splitting.gauge;
        for (std::size_t n = 0; n < arr.size(); ++n) {
            int x = as_int(cfg, arr[n], child(p, n));
            if (x < 1 || x > dim)
                cfg.fail(child(p, n), "index " + std::to_string(x) + " out of range 1.." + std::to_string(dim));
            target.push_back(x);
        }
    }
    {
        std::set<int> seen;
        for (int x : in.splitting.horizontal)
            seen.insert(x);
        for (int x : in.splitting.gauge)
            if (!seen.insert(x).second)
                cfg.fail("/splitting", "index " + std::to_string(x) + " appears twice");
        if (static_cast<int>(seen.size()) != dim)
            cfg.fail("/splitting", "horizontal and gauge indices do not partition 1.." + std::to_string(dim));
    }

    const Json& rep = require(cfg, doc, "", "representation");
    in.representation.dimension = representation_dimension(cfg, doc);
    if (static_cast<std::size_t>(in.representation.dimension) != parts.ring->fiber_count())
        cfg.fail("/representation", "representation dimension does not match the number of fiber variables");
    if (rep.is_string()) {
        if (rep.get<std::string>() != "isotropy")
            cfg.fail("/representation", "the only named representation is \"isotropy\"");
        std::size_t h = in.splitting.horizontal.size();
        for (int g : in.splitting.gauge) {
            KMatrix m(h, h);
            for (auto& sc : in.lie.constants) {
                // rho(A)_{ij} = -c^{t_i}_{A t_j}
                auto pos = [&](int label) {
                    auto it = std::find(in.splitting.horizontal.begin(), in.splitting.horizontal.end(), label);
                    return it == in.splitting.horizontal.end()
                               ? std::optional<std::size_t>()
                               : std::optional<std::size_t>(it - in.splitting.horizontal.begin());
                };
                auto ti = pos(sc.i);
                if (!ti)
                    continue;
                if (sc.j == g) {
                    if (auto tj = pos(sc.k))
                        m.at(*ti, *tj) -= sc.value;
                } else if (sc.k == g) {
                    if (auto tj = pos(sc.j))
                        m.at(*ti, *tj) += sc.value;
                }
            }
            in.representation.matrices.push_back(m);
        }
    } else {
        check_keys(cfg, rep, "/representation", {"dimension", "matrices"});
        const Json& ms = require(cfg, rep, "/representation", "matrices");
        if (!ms.is_object())
            cfg.fail("/representation/matrices", "expected an object keyed by gauge index");
        std::map<int, KMatrix> by_label;
        for (auto it = ms.begin(); it != ms.end(); ++it) {
            std::string p = child("/representation/matrices", it.key());
            int label = 0;
            try {
                label = std::stoi(it.key());
            } catch (const std::exception&) {
                cfg.fail(p, "matrix keys must be gauge indices");
            }
            if (std::find(in.splitting.gauge.begin(), in.splitting.gauge.end(), label) == in.splitting.gauge.end())
                cfg.fail(p, "index " + it.key() + " is not a gauge index");
            by_label[label] =
                matrix_value(cfg, ctx, it.value(), p, static_cast<std::size_t>(in.representation.dimension));
        }
        for (int g : in.splitting.gauge) {
            auto it = by_label.find(g);
            if (it == by_label.end())
                cfg.fail("/representation/matrices", "missing matrix for gauge index " + std::to_string(g));
            in.representation.matrices.push_back(it->second);
        }
    }
    return HomogeneousSetup::validate(std::move(in));
}

std::vector<Form> form_list(const Config& cfg, const EvalContext& ctx, const Json& v, const std::string& ptr)
{
    as_array(cfg, v, ptr);
    std::vector<Form> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::string text = value_text(v[i]);
        out.push_back(located(cfg, child(ptr, i), [&] { return ctx.evaluate(text); }));
    }
    return out;
}

Symmetry symmetry_from(const Config& cfg, const Json& v, const std::string& ptr)
{
    std::string s = as_string(cfg, v, ptr);
    if (s == "none")
        return Symmetry::none;
    if (s == "symmetric")
        return Symmetry::symmetric;
    if (s == "antisymmetric")
        return Symmetry::antisymmetric;
    cfg.fail(ptr, "symmetry must be none, symmetric or antisymmetric");
}

}  // namespace

SetupPtr build_setup(const Config& config, const std::map<std::string, std::string>& substitutions)
{
    return setup_from_ring(config, build_ring(config, substitutions));
}

EvalContext Model::context() const
{
    EvalContext ctx(&alphabet, setup->ring(), setup);
    for (auto& [n, v] : constants)
        ctx.set_constant(n, v);
    for (auto& [n, e] : definitions)
        ctx.define(n, e);
    return ctx;
}

Model build_model(const Config& cfg, const std::map<std::string, std::string>& substitutions)
{
    const Json& doc = cfg.doc;
    RingParts parts = build_ring(cfg, substitutions);
    Model m;
    m.name = doc.contains("name") ? as_string(cfg, doc.at("name"), "/name") : cfg.source;
    m.constants = parts.constants;
    m.setup = setup_from_ring(cfg, parts);
    const HomogeneousSetup& setup = *m.setup;
    m.alphabet.setup = m.setup;

    EvalContext ctx(nullptr, parts.ring, m.setup);
    for (auto& [n, v] : parts.constants)
        ctx.set_constant(n, v);

    std::set<std::string> names;
    auto claim = [&](const std::string& name, const std::string& ptr) {
        if (!names.insert(name).second)
            cfg.fail(ptr, "name '" + name + "' is already in use");
    };

    if (doc.contains("letters")) {
        const Json& ls = doc.at("letters");
        if (!ls.is_object())
            cfg.fail("/letters", "expected an object keyed by letter name");
        for (auto it = ls.begin(); it != ls.end(); ++it) {
            std::string p = child("/letters", it.key());
            const std::string& name = it.key();
            claim(name, p);
            const Json& spec = it.value();
            check_keys(cfg, spec, p, {"builtin", "t_valued", "bilinear", "components", "covariant_derivative"});
            if (spec.size() != 1)
                cfg.fail(p, "a letter needs exactly one of builtin, t_valued, bilinear, components, "
                            "covariant_derivative");
            auto key = spec.begin().key();
            std::string kp = child(p, key);
            const Json& v = spec.begin().value();
            Letter l;
            if (key == "builtin") {
                std::string b = as_string(cfg, v, kp);
                if (b == "a")
                    l = letter_a(setup, name);
                else if (b == "b")
                    l = letter_b(setup, name);
                else
                    cfg.fail(kp, "builtin letters are 'a' and 'b'");
            } else if (key == "t_valued") {
                auto comps = form_list(cfg, ctx, v, kp);
                l = located(cfg, kp, [&] { return letter_from_T_valued_map(setup, name, comps); });
            } else if (key == "bilinear") {
                as_array(cfg, v, kp);
                std::vector<std::vector<Form>> psi;
                for (std::size_t j = 0; j < v.size(); ++j)
                    psi.push_back(form_list(cfg, ctx, v[j], child(kp, j)));
                l = located(cfg, kp, [&] { return letter_from_bilinear_map(setup, name, psi); });
            } else if (key == "components") {
                auto comps = form_list(cfg, ctx, v, kp);
                l = located(cfg, kp, [&] { return make_letter(setup, name, comps); });
            } else {
                std::string of = as_string(cfg, v, kp);
                auto found = std::find_if(m.alphabet.letters.begin(), m.alphabet.letters.end(),
                                          [&](const Letter& x) { return x.name == of; });
                if (found == m.alphabet.letters.end())
                    cfg.fail(kp, "unknown letter '" + of + "' (letters must be declared before use)");
                Letter base = *found;
                l = located(cfg, kp, [&] { return covariant_derivative(setup, base, name); });
            }
            m.alphabet.letters.push_back(std::move(l));
        }
    }

    if (doc.contains("contractions")) {
        const Json& cs = doc.at("contractions");
        if (!cs.is_object())
            cfg.fail("/contractions", "expected an object keyed by contraction name");
        std::size_t n = setup.fiber_dim();
        for (auto it = cs.begin(); it != cs.end(); ++it) {
            std::string p = child("/contractions", it.key());
            const std::string& name = it.key();
            claim(name, p);
            if (name == "d" || name == "sqrt")
                cfg.fail(p, "'" + name + "' is reserved");
            const Json& spec = it.value();
            check_keys(cfg, spec, p, {"builtin", "arity", "entries", "symmetry"});
            Contraction c;
            if (spec.contains("builtin")) {
                std::string b = as_string(cfg, spec.at("builtin"), p + "/builtin");
                if (spec.size() != 1)
                    cfg.fail(p, "a builtin contraction takes no other keys");
                if (b == "dot")
                    c = contraction_dot(n, name);
                else if (b == "det")
                    c = contraction_det(n, name);
                else
                    cfg.fail(p + "/builtin", "builtin contractions are 'dot' and 'det'");
            } else {
                c.name = name;
                const Json& es = as_array(cfg, require(cfg, spec, p, "entries"), p + "/entries");
                c.arity = spec.contains("arity") ? as_int(cfg, spec.at("arity"), p + "/arity") : 0;
                if (spec.contains("symmetry"))
                    c.symmetry = symmetry_from(cfg, spec.at("symmetry"), p + "/symmetry");
                for (std::size_t e = 0; e < es.size(); ++e) {
                    std::string ep = child(p + "/entries", e);
                    const Json& ent = as_array(cfg, es[e], ep);
                    if (ent.size() != 2)
                        cfg.fail(ep, "expected [[indices], value]");
                    const Json& idx = as_array(cfg, ent[0], child(ep, 0));
                    if (c.arity == 0)
                        c.arity = static_cast<int>(idx.size());
                    if (static_cast<int>(idx.size()) != c.arity)
                        cfg.fail(child(ep, 0), "expected " + std::to_string(c.arity) + " indices");
                    std::vector<int> key;
                    for (std::size_t q = 0; q < idx.size(); ++q) {
                        int x = as_int(cfg, idx[q], child(child(ep, 0), q));
                        if (x < 1 || x > static_cast<int>(n))
                            cfg.fail(child(child(ep, 0), q),
                                     "index " + std::to_string(x) + " out of range 1.." + std::to_string(n));
                        key.push_back(x - 1);
                    }
                    KElem val = constant_value(cfg, ctx, ent[1], child(ep, 1));
                    if (c.entries.count(key))
                        cfg.fail(ep, "duplicate entry");
                    c.entries[key] = val;
                }
                if (c.arity == 2 && c.symmetry != Symmetry::none) {
                    auto copy = c.entries;
                    for (auto& [key, val] : copy) {
                        std::vector<int> swapped{key[1], key[0]};
                        KElem expect = c.symmetry == Symmetry::symmetric ? val : -val;
                        auto found = c.entries.find(swapped);
                        if (found == c.entries.end())
                            c.entries[swapped] = expect;
                        else if (found->second != expect)
                            cfg.fail(p + "/entries", "entries contradict the declared symmetry");
                    }
                }
            }
            located(cfg, p, [&] {
                check_contraction(setup, c);
                return 0;
            });
            m.alphabet.contractions.push_back(std::move(c));
        }
    }

    if (doc.contains("horizontal_invariants")) {
        const Json& hs = doc.at("horizontal_invariants");
        if (!hs.is_object())
            cfg.fail("/horizontal_invariants", "expected an object keyed by name");
        for (auto it = hs.begin(); it != hs.end(); ++it) {
            std::string p = child("/horizontal_invariants", it.key());
            claim(it.key(), p);
            std::string text = value_text(it.value());
            Form f = located(cfg, p, [&] { return ctx.evaluate(text); });
            if (!setup.is_invariant(f))
                cfg.fail(p, "form '" + it.key() + "' is not invariant");
            m.alphabet.invariant_forms.push_back({it.key(), f});
        }
    }

    if (doc.contains("definitions")) {
        const Json& ds = doc.at("definitions");
        if (!ds.is_object())
            cfg.fail("/definitions", "expected an object keyed by name");
        for (auto it = ds.begin(); it != ds.end(); ++it) {
            std::string p = child("/definitions", it.key());
            claim(it.key(), p);
            std::string text = as_string(cfg, it.value(), p);
            located(cfg, p, [&] {
                parse_expression(text);
                return 0;
            });
            m.definitions.emplace_back(it.key(), text);
        }
    }

    if (doc.contains("options")) {
        const Json& o = doc.at("options");
        check_keys(cfg, o, "/options",
                   {"syllable_order", "generic_point", "max_length", "laurent_bounds", "pairs", "triples",
                    "extra_group_elements"});
        if (o.contains("syllable_order")) {
            std::string s = as_string(cfg, o.at("syllable_order"), "/options/syllable_order");
            m.dictionary.order = located(cfg, "/options/syllable_order", [&] { return syllable_order_from_string(s); });
        }
        if (o.contains("generic_point")) {
            const Json& gp = as_array(cfg, o.at("generic_point"), "/options/generic_point");
            if (gp.size() != setup.fiber_dim())
                cfg.fail("/options/generic_point", "expected " + std::to_string(setup.fiber_dim()) + " coordinates");
            std::vector<KElem> pt;
            for (std::size_t i = 0; i < gp.size(); ++i)
                pt.push_back(constant_value(cfg, ctx, gp[i], child("/options/generic_point", i)));
            m.dictionary.generic_point = pt;
        }
        if (o.contains("max_length"))
            m.dictionary.max_length = as_int(cfg, o.at("max_length"), "/options/max_length");
        if (o.contains("laurent_bounds")) {
            const Json& lb = as_array(cfg, o.at("laurent_bounds"), "/options/laurent_bounds");
            if (lb.size() != 2)
                cfg.fail("/options/laurent_bounds", "expected [lo, hi]");
            m.express.min_power = as_int(cfg, lb[0], "/options/laurent_bounds/0");
            m.express.max_power = as_int(cfg, lb[1], "/options/laurent_bounds/1");
            if (m.express.min_power > m.express.max_power)
                cfg.fail("/options/laurent_bounds", "lo exceeds hi");
        }
        if (o.contains("pairs")) {
            if (!o.at("pairs").is_boolean())
                cfg.fail("/options/pairs", "expected a boolean");
            m.express.pairs = o.at("pairs").get<bool>();
        }
        if (o.contains("triples")) {
            if (!o.at("triples").is_boolean())
                cfg.fail("/options/triples", "expected a boolean");
            m.express.triples = o.at("triples").get<bool>();
        }
        if (o.contains("extra_group_elements")) {
            const Json& gs = as_array(cfg, o.at("extra_group_elements"), "/options/extra_group_elements");
            for (std::size_t i = 0; i < gs.size(); ++i) {
                std::string p = child("/options/extra_group_elements", i);
                check_keys(cfg, gs[i], p, {"on_horizontal", "on_vertical"});
                GroupElement g;
                g.on_horizontal = matrix_value(cfg, ctx, require(cfg, gs[i], p, "on_horizontal"),
                                               p + "/on_horizontal", setup.horizontal_count());
                g.on_vertical = matrix_value(cfg, ctx, require(cfg, gs[i], p, "on_vertical"), p + "/on_vertical",
                                             setup.fiber_dim());
                m.extra_group_elements.push_back(std::move(g));
            }
        }
    }
    return m;
}

}  // namespace equiform
