#include "equiform/tasks.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace equiform;

namespace {

const std::string kConfigDir = EQUIFORM_CONFIG_DIR;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json s2_doc()
{
    return Json::parse(read_file(kConfigDir + "/su2_ts2.json"));
}

std::size_t line_of(const std::string& text, const std::string& needle)
{
    auto pos = text.find(needle);
    if (pos == std::string::npos)
        return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

/// Builds the model from a mutated document and returns the error raised.
ConfigError config_error(const Json& doc)
{
    std::string text = doc.dump(2);
    try {
        Config cfg = parse_config(text, "mutated.json");
        Session(cfg, {}).model();
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "config accepted:\n" << text;
    return ConfigError("", 0, 0);
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Config, BundledConfigsValidate)
{
    for (const char* name : {"su3_tcp2.json", "su2_ts2.json"}) {
        Config cfg = load_config(kConfigDir + "/" + name);
        Json report = Session(cfg, {}).validate();
        EXPECT_TRUE(report_passed(report)) << name << "\n" << report.dump(2);
    }
}

TEST(Config, SyntaxErrorsCarryPosition)
{
    try {
        parse_config("{\n  \"name\": \"x\",\n  \"ring\": {,}\n}", "broken.json");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 0u);
    }
}

TEST(Config, SplittingMustPartition)
{
    Json doc = s2_doc();
    doc["splitting"]["horizontal"] = {1};
    ConfigError e = config_error(doc);
    EXPECT_TRUE(contains(e.what(), "partition")) << e.what();
    EXPECT_EQ(e.line(), line_of(doc.dump(2), "\"splitting\""));
    EXPECT_GT(e.column(), 0u);
}

TEST(Config, UnknownKeysAreRejected)
{
    Json doc = s2_doc();
    doc["ring"]["radicalz"] = Json::array();
    ConfigError e = config_error(doc);
    EXPECT_TRUE(contains(e.what(), "radicalz")) << e.what();
    EXPECT_EQ(e.pointer(), "/ring/radicalz");
    EXPECT_EQ(e.line(), line_of(doc.dump(2), "\"radicalz\""));
}

TEST(Config, ContractionIndexOutOfRange)
{
    Json doc = s2_doc();
    doc["contractions"]["bad"] = {{"entries", {{{1, 3}, 1}}}};
    ConfigError e = config_error(doc);
    EXPECT_TRUE(contains(e.what(), "range")) << e.what();
    EXPECT_TRUE(contains(e.pointer(), "/contractions/bad")) << e.pointer();
}

TEST(Config, NonInvariantContractionIsRejected)
{
    Json doc = s2_doc();
    doc["contractions"]["bad"] = {{"entries", {{{1, 1}, 1}}}, {"symmetry", "symmetric"}};
    ConfigError e = config_error(doc);
    EXPECT_TRUE(contains(e.pointer(), "/contractions/bad")) << e.pointer();
}

TEST(Config, RingLiteralsMustParse)
{
    Json doc = s2_doc();
    doc["ring"]["radicals"][0]["square"] = "k+aa+";
    ConfigError e = config_error(doc);
    EXPECT_EQ(e.pointer(), "/ring/radicals/0/square");
    EXPECT_EQ(e.line(), line_of(doc.dump(2), "\"k+aa+\""));
}

TEST(Config, StructureConstantsAreChecked)
{
    Json doc = Json::parse(read_file(kConfigDir + "/su3_tcp2.json"));
    doc["lie_algebra"]["constants"][0][2] = 7;
    Config cfg = parse_config(doc.dump(2));
    EXPECT_THROW(build_setup(cfg), SetupError);
    Json report = Session(cfg, {}).validate();
    EXPECT_EQ(report["status"], "fail");
    bool jacobi = false;
    for (auto& item : report["tasks"][0]["items"])
        jacobi = jacobi || (item["verdict"] == "fail" && contains(item["detail"].get<std::string>(), "Jacobi"));
    EXPECT_TRUE(jacobi) << report.dump(2);
}

TEST(Config, LettersMustBeEquivariant)
{
    Json doc = s2_doc();
    doc["letters"]["beta"]["t_valued"] = {"e1", "e1"};
    ConfigError e = config_error(doc);
    EXPECT_TRUE(contains(e.pointer(), "/letters/beta")) << e.pointer();
}

TEST(Config, UnknownTaskKeyIsAnError)
{
    Json doc = s2_doc();
    doc["tasks"] = Json::array({{{"name", "x"}, {"kind", "generate"}, {"expekt", 1}}});
    Config cfg = parse_config(doc.dump(2));
    Json report = Session(cfg, {}).run();
    EXPECT_EQ(report["tasks"][0]["status"], "error");
    EXPECT_FALSE(report_passed(report));
}

TEST(Config, SubstitutionRemovesParameter)
{
    Config cfg = load_config(kConfigDir + "/su2_ts2.json");
    Model m = build_model(cfg, {{"k", "0"}});
    EXPECT_FALSE(m.setup->ring()->find_param("k").has_value());
    EXPECT_EQ(m.constants.count("k"), 1u);
    EvalContext ctx = m.context();
    EXPECT_TRUE(m.setup->exterior_derivative(ctx.evaluate("omega1")).is_zero());
}

TEST(Reports, JsonRoundTripAndDeterminism)
{
    Config cfg = load_config(kConfigDir + "/su2_ts2.json");
    Json first = Session(cfg, {}).run();
    Json second = Session(cfg, {}).run();
    EXPECT_EQ(first.dump(2), second.dump(2));
    EXPECT_EQ(Json::parse(first.dump(2)), first);
    EXPECT_EQ(first["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(first["status"], "pass");
    for (auto& t : first["tasks"]) {
        EXPECT_TRUE(t.contains("name") && t.contains("kind") && t.contains("items"));
        for (auto& item : t["items"])
            EXPECT_TRUE(item.contains("label") && item.contains("verdict") && item.contains("detail"));
    }
    EXPECT_FALSE(render_text(first).empty());
}

TEST(Reports, TaskFilters)
{
    Config cfg = load_config(kConfigDir + "/su2_ts2.json");
    RunOptions opts;
    opts.kind = "verify_closed";
    Json report = Session(cfg, opts).run();
    ASSERT_EQ(report["tasks"].size(), 2u);
    for (auto& t : report["tasks"])
        EXPECT_EQ(t["kind"], "verify_closed");
    opts = {};
    opts.task = "flat_member";
    EXPECT_EQ(Session(cfg, opts).run()["tasks"].size(), 1u);
}

TEST(Reports, FailingClaimIsReported)
{
    Json doc = s2_doc();
    doc["tasks"] = Json::array(
        {{{"name", "wrong"}, {"kind", "verify_closed"}, {"forms", {"e1*b1", "det(a,b)", "dot(a,b)"}}}});
    Json report = Session(parse_config(doc.dump(2)), {}).run();
    EXPECT_EQ(report["tasks"][0]["status"], "fail");
    const Json& items = report["tasks"][0]["items"];
    ASSERT_EQ(items.size(), 3u);
    EXPECT_EQ(items[0]["detail"], "not an invariant form");
    EXPECT_EQ(items[1]["verdict"], "fail");
    EXPECT_EQ(items[2]["verdict"], "pass");
    EXPECT_EQ(report["status"], "fail");
}
