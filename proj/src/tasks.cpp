#include "equiform/tasks.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equiform {

namespace {

using Substitutions = std::map<std::string, std::string>;

std::string bidegree_key(const Bidegree& b)
{
    return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

Json item(const std::string& label, bool pass, const std::string& detail = {})
{
    Json j;
    j["label"] = label;
    j["verdict"] = pass ? "pass" : "fail";
    if (!detail.empty())
        j["detail"] = detail;
    return j;
}

struct TaskError : Error {
    using Error::Error;
};

void check_task_keys(const Json& task, std::initializer_list<const char*> extra)
{
    for (auto it = task.begin(); it != task.end(); ++it) {
        const std::string& k = it.key();
        if (k == "name" || k == "kind" || k == "description" || k == "let" || k == "substitute")
            continue;
        if (std::none_of(extra.begin(), extra.end(), [&](const char* e) { return k == e; }))
            throw TaskError("unknown key '" + k + "'");
    }
}

std::vector<std::string> string_list(const Json& v, const char* what)
{
    std::vector<std::string> out;
    if (v.is_string()) {
        out.push_back(v.get<std::string>());
        return out;
    }
    if (!v.is_array())
        throw TaskError(std::string("'") + what + "' must be a string or a list of strings");
    for (auto& x : v) {
        if (!x.is_string())
            throw TaskError(std::string("'") + what + "' must contain strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

bool flag(const Json& task, const char* key)
{
    if (!task.contains(key))
        return false;
    if (!task.at(key).is_boolean())
        throw TaskError(std::string("'") + key + "' must be a boolean");
    return task.at(key).get<bool>();
}

Json bidegree_json(const Bidegree& b)
{
    return Json::array({b.p, b.q});
}

}  // namespace

const std::vector<std::string>& task_kinds()
{
    static const std::vector<std::string> kinds{"generate",        "dim_table",     "d_table",       "verify_closed",
                                                "verify_equation", "verify_nonzero", "express"};
    return kinds;
}

bool vanishes_on_sphere(const HomogeneousSetup& setup, const Form& x)
{
    if (x.is_zero())
        return true;
    // The conormal of aa = 1 is spanned by sum_i a_i b_i.
    Form radial(setup.frame());
    for (std::size_t i = 0; i < setup.fiber_dim(); ++i)
        radial += setup.vertical(i).scaled(setup.fiber_coordinate(i));
    Form w = x.wedge(radial);
    for (auto& [word, c] : w.terms())
        if (!c.sphere_reduction().is_zero())
            return false;
    return true;
}

struct Session::Impl {
    std::map<Substitutions, std::unique_ptr<Model>> models;
    std::map<Substitutions, std::unique_ptr<Dictionary>> dictionaries;
};

Session::Session(const Config& config, RunOptions options)
    : config_(config), options_(std::move(options)), impl_(std::make_unique<Impl>())
{
}

Session::~Session() = default;

const Model& Session::model(const Substitutions& substitutions)
{
    auto& slot = impl_->models[substitutions];
    if (!slot) {
        slot = std::make_unique<Model>(build_model(config_, substitutions));
        if (options_.max_length)
            slot->dictionary.max_length = *options_.max_length;
        if (options_.laurent_bounds) {
            slot->express.min_power = options_.laurent_bounds->first;
            slot->express.max_power = options_.laurent_bounds->second;
        }
    }
    return *slot;
}

const Dictionary& Session::dictionary(const Substitutions& substitutions)
{
    auto& slot = impl_->dictionaries[substitutions];
    if (!slot) {
        const Model& m = model(substitutions);
        slot = std::make_unique<Dictionary>(generate_dictionary(m.alphabet, m.dictionary));
    }
    return *slot;
}

namespace {

struct TaskContext {
    Session& session;
    const Json& task;
    Substitutions subs;
    const Model* model = nullptr;
    std::unique_ptr<EvalContext> eval;
    Json items = Json::array();
    Json data = Json::object();

    TaskContext(Session& s, const Json& t) : session(s), task(t)
    {
        if (task.contains("substitute")) {
            const Json& sub = task.at("substitute");
            if (!sub.is_object())
                throw TaskError("'substitute' must map parameter names to values");
            for (auto it = sub.begin(); it != sub.end(); ++it) {
                std::string v = value_text(it.value());
                if (v.empty())
                    throw TaskError("substitution for '" + it.key() + "' must be a number or an expression");
                subs[it.key()] = v;
            }
        }
        model = &session.model(subs);
        eval = std::make_unique<EvalContext>(model->context());
        if (task.contains("let")) {
            const Json& let = task.at("let");
            if (!let.is_object())
                throw TaskError("'let' must map names to expressions");
            for (auto it = let.begin(); it != let.end(); ++it) {
                if (!it.value().is_string())
                    throw TaskError("definition of '" + it.key() + "' must be a string");
                eval->define(it.key(), it.value().get<std::string>());
            }
        }
    }

    Form form(const std::string& text) const { return eval->evaluate(text); }
    const HomogeneousSetup& setup() const { return *model->setup; }
    void add(Json j) { items.push_back(std::move(j)); }
};

void run_generate(TaskContext& t)
{
    check_task_keys(t.task, {"expect"});
    const Dictionary& dict = t.session.dictionary(t.subs);
    CompletenessReport rep = completeness_check(dict, t.model->extra_group_elements);

    Json gens = Json::array();
    std::map<Bidegree, int> counts;
    for (auto& g : dict.generators) {
        if (g.bidegree.total() > 0)
            ++counts[g.bidegree];
        Json e;
        e["word"] = dict.render(g.word);
        e["bidegree"] = bidegree_json(g.bidegree);
        e["vanishes_at_origin"] = !g.in_c0;
        gens.push_back(e);
    }
    Json count_json = Json::object();
    for (auto& [b, n] : counts)
        count_json[bidegree_key(b)] = n;
    Json cells = Json::array();
    for (auto& c : rep.cells) {
        Json e;
        e["bidegree"] = bidegree_json(c.bidegree);
        e["origin_span"] = c.origin_span;
        e["origin_target"] = c.origin_target;
        e["generic_span"] = c.generic_span;
        e["generic_target"] = c.generic_target;
        e["pass"] = c.pass();
        cells.push_back(e);
    }
    std::map<CandidateOutcome, int> outcomes;
    for (auto& e : dict.transcript)
        ++outcomes[e.outcome];
    Json trans = Json::object();
    for (auto& [o, n] : outcomes)
        trans[to_string(o)] = n;

    t.data["syllable_order"] = to_string(dict.options.order);
    t.data["syllables"] = dict.syllables.size();
    t.data["origin_stabilizer_dim"] = dict.origin_stabilizer_dim;
    t.data["generic_stabilizer_dim"] = dict.generic_stabilizer_dim;
    t.data["positive_generators"] = dict.positive_degree_count();
    t.data["counts"] = count_json;
    t.data["generators"] = gens;
    t.data["completeness"] = cells;
    t.data["origin_total"] = rep.origin_total();
    t.data["generic_total"] = rep.generic_total();
    t.data["candidates"] = trans;

    int failing = 0;
    for (auto& c : rep.cells)
        failing += c.pass() ? 0 : 1;
    t.add(item("completeness", rep.pass(),
               failing ? std::to_string(failing) + " cells fall short"
                       : std::to_string(rep.cells.size()) + " cells at both stabilizers"));
    if (t.task.contains("expect")) {
        const Json& ex = t.task.at("expect");
        for (auto it = ex.begin(); it != ex.end(); ++it) {
            if (it.key() == "positive_generators" || it.key() == "generic_total" || it.key() == "origin_total") {
                long want = it.value().get<long>();
                long got = static_cast<long>(t.data[it.key()].get<long>());
                t.add(item(it.key(), want == got, "expected " + std::to_string(want) + ", got " + std::to_string(got)));
            } else if (it.key() == "counts") {
                for (auto c = it.value().begin(); c != it.value().end(); ++c) {
                    long got = count_json.contains(c.key()) ? count_json[c.key()].get<long>() : 0;
                    long want = c.value().get<long>();
                    t.add(item("count " + c.key(), got == want,
                               "expected " + std::to_string(want) + ", got " + std::to_string(got)));
                }
            } else {
                throw TaskError("unknown expectation '" + it.key() + "'");
            }
        }
    }
}

void run_dim_table(TaskContext& t)
{
    check_task_keys(t.task, {"classes", "expect"});
    const HomogeneousSetup& s = t.setup();
    int pmax = static_cast<int>(s.horizontal_count());
    int qmax = static_cast<int>(s.fiber_dim());
    std::vector<std::vector<int>> pclasses, qclasses;
    if (t.task.contains("classes")) {
        for (auto& c : t.task.at("classes")) {
            std::vector<int> cls = c.get<std::vector<int>>();
            if (cls.empty())
                throw TaskError("empty degree class");
            pclasses.push_back(cls);
        }
        qclasses = pclasses;
    } else {
        for (int p = 0; p <= pmax; ++p)
            pclasses.push_back({p});
        for (int q = 0; q <= qmax; ++q)
            qclasses.push_back({q});
    }
    Point generic(s.ring(), t.model->dictionary.generic_point.value_or([&] {
        std::vector<KElem> v(s.fiber_dim(), KElem(0));
        v[0] = KElem(1);
        return v;
    }()));
    struct Site {
        const char* name;
        Point point;
        bool extra;
    };
    std::vector<Site> sites{{"origin", s.origin(), false}, {"generic", generic, true}};
    Json class_json = Json::array();
    for (auto& c : pclasses)
        class_json.push_back(c);
    t.data["classes"] = class_json;
    for (auto& site : sites) {
        auto stab = s.stabilizer_algebra(site.point);
        const std::vector<GroupElement> none;
        const auto& extra = site.extra ? t.model->extra_group_elements : none;
        Json table = Json::array();
        bool constant = true;
        std::string nonconstant;
        for (auto& pc : pclasses) {
            Json row = Json::array();
            for (auto& qc : qclasses) {
                std::optional<int> value;
                for (int p : pc)
                    for (int q : qc) {
                        if (p > pmax || q > qmax || p < 0 || q < 0)
                            throw TaskError("degree " + std::to_string(p) + "," + std::to_string(q) + " out of range");
                        int d = s.invariant_dimension({p, q}, stab, extra);
                        if (value && *value != d) {
                            constant = false;
                            if (nonconstant.empty())
                                nonconstant = "bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")";
                        }
                        if (!value)
                            value = d;
                    }
                row.push_back(*value);
            }
            table.push_back(row);
        }
        Json e;
        e["stabilizer_dim"] = stab.size();
        e["table"] = table;
        e["constant_on_classes"] = constant;
        int total = 0;
        for (int p = 0; p <= pmax; ++p)
            for (int q = 0; q <= qmax; ++q)
                total += s.invariant_dimension({p, q}, stab, extra);
        e["total"] = total;
        t.data[site.name] = e;
        if (!t.task.contains("expect"))
            t.add(item(std::string(site.name) + " dimensions computed", true,
                       "total " + std::to_string(total) + " over all bidegrees"));
        if (t.task.contains("classes"))
            t.add(item(std::string(site.name) + " constant on classes", constant,
                       constant ? "" : "differs within the class of " + nonconstant));
        if (t.task.contains("expect") && t.task.at("expect").contains(site.name)) {
            const Json& want = t.task.at("expect").at(site.name);
            t.add(item(std::string(site.name) + " table", want == table, "computed " + table.dump()));
        }
    }
}

void run_d_table(TaskContext& t)
{
    check_task_keys(t.task, {"max_degree"});
    int max_degree = t.task.contains("max_degree") ? t.task.at("max_degree").get<int>() : 3;
    if (t.session.options().max_degree)
        max_degree = *t.session.options().max_degree;
    const Dictionary& dict = t.session.dictionary(t.subs);
    auto rows = differential_table(dict, max_degree, t.model->express);
    Json out = Json::array();
    int bad = 0;
    for (auto& r : rows) {
        Json e;
        e["form"] = r.label;
        e["d"] = render_combination(dict, r.combination);
        e["residual"] = r.combination.residual;
        bool exact = !r.combination.residual && combination_form(dict, r.combination) == r.differential;
        e["verified"] = exact;
        if (!exact)
            ++bad;
        out.push_back(e);
    }
    t.data["max_degree"] = max_degree;
    t.data["rows"] = out;
    t.add(item("rows expressed exactly", bad == 0,
               std::to_string(rows.size() - static_cast<std::size_t>(bad)) + " of " + std::to_string(rows.size())));
}

std::string closedness(TaskContext& t, const Form& x, bool on_sphere, bool& pass)
{
    if (x.is_zero()) {
        pass = true;
        return "identically zero";
    }
    pass = on_sphere ? vanishes_on_sphere(t.setup(), x) : false;
    if (pass)
        return "vanishes on the unit sphere bundle";
    std::string r = render(x);
    if (r.size() > 200)
        r = r.substr(0, 200) + "...";
    return "nonzero: " + r;
}

void run_verify_closed(TaskContext& t)
{
    check_task_keys(t.task, {"forms", "on_sphere"});
    bool on_sphere = flag(t.task, "on_sphere");
    if (!t.task.contains("forms"))
        throw TaskError("missing 'forms'");
    for (auto& text : string_list(t.task.at("forms"), "forms")) {
        Form f = t.form(text);
        if (f.is_zero()) {
            t.add(item("d(" + text + ") = 0", false, "the form itself is zero"));
            continue;
        }
        if (!t.setup().is_invariant(f)) {
            t.add(item("d(" + text + ") = 0", false, "not an invariant form"));
            continue;
        }
        bool pass = false;
        std::string detail = closedness(t, t.setup().exterior_derivative(f), on_sphere, pass);
        t.add(item("d(" + text + ") = 0", pass, detail));
    }
    t.data["on_sphere"] = on_sphere;
}

void run_verify_equation(TaskContext& t)
{
    check_task_keys(t.task, {"lhs", "rhs", "on_sphere"});
    bool on_sphere = flag(t.task, "on_sphere");
    if (!t.task.contains("lhs") || !t.task.contains("rhs"))
        throw TaskError("verify_equation needs 'lhs' and 'rhs'");
    std::string l = t.task.at("lhs").get<std::string>();
    std::string r = t.task.at("rhs").get<std::string>();
    Form lf = t.form(l), rf = t.form(r);
    auto dl = lf.degree(), dr = rf.degree();
    if (dl && dr && *dl != *dr)
        throw TaskError("degree mismatch: " + std::to_string(*dl) + "-form against " + std::to_string(*dr) + "-form");
    bool pass = false;
    std::string detail = closedness(t, lf - rf, on_sphere, pass);
    if (lf.is_zero() && rf.is_zero()) {
        pass = false;
        detail = "both sides are zero";
    }
    t.add(item(l + " = " + r, pass, detail));
    t.data["on_sphere"] = on_sphere;
}

void run_verify_nonzero(TaskContext& t)
{
    check_task_keys(t.task, {"form", "point", "params"});
    if (!t.task.contains("form") || !t.task.contains("point"))
        throw TaskError("verify_nonzero needs 'form' and 'point'");
    std::string text = t.task.at("form").get<std::string>();
    const RingPtr& ring = t.setup().ring();
    std::vector<KElem> coords;
    for (auto& v : t.task.at("point"))
        coords.push_back(t.eval->constant(value_text(v)));
    if (coords.size() != t.setup().fiber_dim())
        throw TaskError("point needs " + std::to_string(t.setup().fiber_dim()) + " coordinates");
    std::map<std::string, KElem> params;
    if (t.task.contains("params"))
        for (auto it = t.task.at("params").begin(); it != t.task.at("params").end(); ++it) {
            if (!ring->find_param(it.key()))
                throw TaskError("'" + it.key() + "' is not a parameter");
            params[it.key()] = t.eval->constant(value_text(it.value()));
        }
    Form f = t.form(text);
    ConstForm v = evaluate_form(f, Point(ring, coords, params));
    std::string where;
    for (auto& c : coords)
        where += (where.empty() ? "" : ",") + c.to_string();
    for (auto& [n, c] : params)
        where += ", " + n + "=" + c.to_string();
    t.add(item(text + " != 0 at (" + where + ")", !v.is_zero(), v.is_zero() ? "vanishes" : render(v)));
}

void run_express(TaskContext& t)
{
    check_task_keys(t.task, {"form"});
    if (!t.task.contains("form"))
        throw TaskError("express needs 'form'");
    const Dictionary& dict = t.session.dictionary(t.subs);
    Json rows = Json::array();
    for (auto& text : string_list(t.task.at("form"), "form")) {
        Form f = t.form(text);
        GeneratorCombination c = express_in_generators(dict, f, t.model->express);
        bool exact = !c.residual && combination_form(dict, c) == f;
        Json e;
        e["form"] = text;
        e["combination"] = render_combination(dict, c);
        e["residual"] = c.residual;
        if (!c.note.empty())
            e["note"] = c.note;
        rows.push_back(e);
        t.add(item(text, exact, exact ? render_combination(dict, c) : "not expressed: " + c.note));
    }
    t.data["expressions"] = rows;
}

}  // namespace

Json Session::run_task(const Json& task, std::size_t index)
{
    Json out;
    std::string ptr = "/tasks/" + std::to_string(index);
    out["name"] = task.contains("name") && task.at("name").is_string() ? task.at("name").get<std::string>()
                                                                        : "task" + std::to_string(index + 1);
    std::string kind = task.contains("kind") && task.at("kind").is_string() ? task.at("kind").get<std::string>() : "";
    out["kind"] = kind;
    try {
        if (!task.is_object())
            config_.fail(ptr, "a task must be an object");
        if (std::find(task_kinds().begin(), task_kinds().end(), kind) == task_kinds().end())
            config_.fail(ptr + "/kind", "unknown task kind '" + kind + "'");
        TaskContext t(*this, task);
        if (kind == "generate")
            run_generate(t);
        else if (kind == "dim_table")
            run_dim_table(t);
        else if (kind == "d_table")
            run_d_table(t);
        else if (kind == "verify_closed")
            run_verify_closed(t);
        else if (kind == "verify_equation")
            run_verify_equation(t);
        else if (kind == "verify_nonzero")
            run_verify_nonzero(t);
        else
            run_express(t);
        bool pass = !t.items.empty() &&
                    std::all_of(t.items.begin(), t.items.end(), [](const Json& j) { return j["verdict"] == "pass"; });
        out["status"] = pass ? "pass" : "fail";
        if (!t.subs.empty()) {
            Json s = Json::object();
            for (auto& [k, v] : t.subs)
                s[k] = v;
            out["substitute"] = s;
        }
        out["items"] = t.items;
        out["data"] = t.data;
    } catch (const ConfigError& e) {
        out["status"] = "error";
        out["error"] = e.what();
    } catch (const TaskError& e) {
        auto [line, col] = config_.locator.position(ptr);
        out["status"] = "error";
        out["error"] = "line " + std::to_string(line) + ", column " + std::to_string(col) + " (" + ptr + "): " + e.what();
    } catch (const SetupError& e) {
        out["status"] = "error";
        std::string msg = "setup is invalid:";
        for (auto& v : e.violations())
            msg += " " + v + ";";
        out["error"] = msg;
    } catch (const Error& e) {
        out["status"] = "error";
        out["error"] = e.what();
    }
    return out;
}

namespace {

Json report_header(const Config& cfg)
{
    Json r;
    r["schema_version"] = kReportSchemaVersion;
    r["config"] = cfg.doc.contains("name") && cfg.doc.at("name").is_string() ? cfg.doc.at("name").get<std::string>()
                                                                             : cfg.source;
    return r;
}

Json setup_notes(const Config& cfg, const HomogeneousSetup& s)
{
    Json notes = Json::array();
    if (cfg.doc.contains("notes"))
        for (auto& n : cfg.doc.at("notes"))
            notes.push_back(n);
    notes.push_back("vertical frame convention: " + s.vertical_convention());
    for (auto& w : s.warnings())
        notes.push_back("warning: " + w);
    return notes;
}

}  // namespace

Json Session::run()
{
    Json r = report_header(config_);
    Json tasks = Json::array();
    Json notes = Json::array();
    bool ok = true;
    try {
        notes = setup_notes(config_, *model().setup);
    } catch (const Error& e) {
        ok = false;
        notes.push_back(std::string("model failed to build: ") + e.what());
    }
    if (ok && config_.doc.contains("tasks")) {
        const Json& ts = config_.doc.at("tasks");
        if (!ts.is_array())
            config_.fail("/tasks", "expected a list of tasks");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Json& t = ts[i];
            if (options_.task && !(t.contains("name") && t.at("name") == *options_.task))
                continue;
            if (options_.kind && !(t.contains("kind") && t.at("kind") == *options_.kind))
                continue;
            tasks.push_back(run_task(t, i));
        }
    }
    if (ok && tasks.empty()) {
        ok = false;
        notes.push_back("no task matched the selection");
    }
    for (auto& t : tasks)
        ok = ok && t["status"] == "pass";
    r["status"] = ok ? "pass" : "fail";
    r["notes"] = notes;
    r["tasks"] = tasks;
    return r;
}

Json Session::validate()
{
    Json r = report_header(config_);
    Json items = Json::array();
    Json notes = Json::array();
    try {
        SetupPtr s = build_setup(config_);
        items.push_back(item("Jacobi identity (d^2 = 0 on every generator)", true));
        items.push_back(item("reductive splitting", true));
        items.push_back(item("representation is an orthogonal homomorphism", true));
        notes = setup_notes(config_, *s);
        try {
            const Model& m = model();
            items.push_back(item("letters", true, std::to_string(m.alphabet.letters.size()) + " equivariant letters"));
            items.push_back(
                item("contractions", true, std::to_string(m.alphabet.contractions.size()) + " invariant contractions"));
        } catch (const Error& e) {
            items.push_back(item("letters and contractions", false, e.what()));
        }
    } catch (const SetupError& e) {
        for (auto& v : e.violations())
            items.push_back(item("setup", false, v));
    } catch (const Error& e) {
        items.push_back(item("setup", false, e.what()));
    }
    bool ok = std::all_of(items.begin(), items.end(), [](const Json& j) { return j["verdict"] == "pass"; });
    Json task;
    task["name"] = "validate";
    task["kind"] = "validate";
    task["status"] = ok ? "pass" : "fail";
    task["items"] = items;
    task["data"] = Json::object();
    r["status"] = ok ? "pass" : "fail";
    r["notes"] = notes;
    r["tasks"] = Json::array({task});
    return r;
}

bool report_passed(const Json& report)
{
    return report.contains("status") && report.at("status") == "pass";
}

namespace {

std::string upper(const std::string& s)
{
    std::string r = s;
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return r;
}

std::string pad(const std::string& s, std::size_t w)
{
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void render_generate(std::ostream& os, const Json& d)
{
    os << "  stabilizer dimensions: origin " << d["origin_stabilizer_dim"] << ", generic "
       << d["generic_stabilizer_dim"] << "\n";
    os << "  generators of positive degree: " << d["positive_generators"] << "\n";
    std::vector<Json> sorted(d["generators"].begin(), d["generators"].end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const Json& x, const Json& y) {
        auto bx = std::make_pair(x["bidegree"][0].get<int>() + x["bidegree"][1].get<int>(), x["bidegree"][0].get<int>());
        auto by = std::make_pair(y["bidegree"][0].get<int>() + y["bidegree"][1].get<int>(), y["bidegree"][0].get<int>());
        return bx < by;
    });
    std::string last;
    for (auto& g : sorted) {
        std::string key = "(" + std::to_string(g["bidegree"][0].get<int>()) + "," +
                          std::to_string(g["bidegree"][1].get<int>()) + ")";
        os << "    " << pad(key == last ? "" : key, 8) << (g["vanishes_at_origin"].get<bool>() ? "  " : "* ")
           << g["word"].get<std::string>() << "\n";
        last = key;
    }
    os << "    (* marks generators that are nonzero at the origin)\n";
    os << "  completeness (span/target at origin, at generic point):\n";
    for (auto& c : d["completeness"]) {
        std::string key = "(" + std::to_string(c["bidegree"][0].get<int>()) + "," +
                          std::to_string(c["bidegree"][1].get<int>()) + ")";
        os << "    " << pad(key, 8) << c["origin_span"] << "/" << c["origin_target"] << "  " << c["generic_span"] << "/"
           << c["generic_target"] << (c["pass"].get<bool>() ? "" : "  SHORT") << "\n";
    }
    os << "  totals: origin " << d["origin_total"] << ", generic " << d["generic_total"] << "\n";
}

void render_dim_table(std::ostream& os, const Json& d)
{
    std::vector<std::string> labels;
    for (auto& c : d["classes"]) {
        std::string l;
        for (auto& x : c)
            l += (l.empty() ? "" : ",") + std::to_string(x.get<int>());
        labels.push_back(l);
    }
    for (const char* site : {"origin", "generic"}) {
        const Json& s = d[site];
        os << "  " << site << " (stabilizer dimension " << s["stabilizer_dim"] << ", total " << s["total"] << ")\n";
        std::size_t rows = s["table"].size();
        std::size_t cols = rows ? s["table"][0].size() : 0;
        auto label = [&](std::size_t i) { return labels.empty() ? std::to_string(i) : labels.at(i); };
        os << "    " << pad("p\\q", 6);
        for (std::size_t j = 0; j < cols; ++j)
            os << pad(labels.empty() || labels.size() != cols ? std::to_string(j) : label(j), 6);
        os << "\n";
        for (std::size_t i = 0; i < rows; ++i) {
            os << "    " << pad(labels.empty() || labels.size() != rows ? std::to_string(i) : label(i), 6);
            for (auto& v : s["table"][i])
                os << pad(std::to_string(v.get<int>()), 6);
            os << "\n";
        }
    }
}

}  // namespace

std::string render_text(const Json& report)
{
    std::ostringstream os;
    os << "report for " << report.value("config", std::string("?")) << " (schema " << report.value("schema_version", 0)
       << "): " << upper(report.value("status", std::string("fail"))) << "\n";
    if (report.contains("notes"))
        for (auto& n : report["notes"])
            os << "note: " << n.get<std::string>() << "\n";
    for (auto& t : report["tasks"]) {
        os << "\n== " << t["name"].get<std::string>() << " [" << t["kind"].get<std::string>()
           << "]: " << upper(t["status"].get<std::string>()) << "\n";
        if (t.contains("substitute"))
            for (auto it = t["substitute"].begin(); it != t["substitute"].end(); ++it)
                os << "  with " << it.key() << " = " << it.value().get<std::string>() << "\n";
        if (t.contains("error")) {
            os << "  error: " << t["error"].get<std::string>() << "\n";
            continue;
        }
        const Json& d = t["data"];
        const std::string kind = t["kind"];
        if (kind == "generate")
            render_generate(os, d);
        else if (kind == "dim_table")
            render_dim_table(os, d);
        else if (kind == "d_table") {
            std::size_t w = 0;
            for (auto& r : d["rows"])
                w = std::max(w, r["form"].get<std::string>().size());
            for (auto& r : d["rows"])
                os << "    d " << pad(r["form"].get<std::string>(), w) << "  =  " << r["d"].get<std::string>()
                   << (r["verified"].get<bool>() ? "" : "   [UNVERIFIED]") << "\n";
        }
        for (auto& i : t["items"]) {
            os << "  [" << upper(i["verdict"].get<std::string>()) << "] " << i["label"].get<std::string>();
            if (i.contains("detail"))
                os << "  (" << i["detail"].get<std::string>() << ")";
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace equiform
