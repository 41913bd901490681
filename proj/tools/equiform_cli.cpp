#include "equiform/tasks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::pair<int, int> parse_bounds(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--laurent-bounds", "expected lo,hi");
    try {
        int lo = std::stoi(s.substr(0, comma));
        int hi = std::stoi(s.substr(comma + 1));
        if (lo > hi)
            throw CLI::ValidationError("--laurent-bounds", "lo exceeds hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--laurent-bounds", "expected two integers lo,hi");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"equiform: invariant differential forms on associated bundles over homogeneous spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string task_name;
    int max_length = -1;
    int max_degree = -1;
    std::string bounds;
    std::string output;
    std::string format = "text";
    std::vector<std::string> forms;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--output", output, "write the report here instead of standard output");
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check the Lie algebra, splitting, representation and letters");
    add_common(validate);

    std::vector<CLI::App*> runners;
    CLI::App* run = app.add_subcommand("run", "run every task in the config");
    runners.push_back(run);
    for (const auto& kind : equiform::task_kinds())
        runners.push_back(app.add_subcommand(kind, "run the config's " + kind + " tasks"));
    for (CLI::App* sub : runners) {
        add_common(sub);
        sub->add_option("--task", task_name, "run only the task with this name");
        sub->add_option("--max-length", max_length, "bound on dictionary word length (0 = none)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--max-degree", max_degree, "largest degree in the differential table")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--laurent-bounds", bounds, "range lo,hi of radial powers when expressing forms");
        if (sub->get_name() == "verify_closed" || sub->get_name() == "express")
            sub->add_option("--form", forms, "expression to check instead of the config's tasks");
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    equiform::Json report;
    try {
        equiform::Config config = equiform::load_config(config_path);
        equiform::RunOptions opts;
        if (max_length >= 0)
            opts.max_length = max_length;
        if (max_degree >= 0)
            opts.max_degree = max_degree;
        if (!bounds.empty())
            opts.laurent_bounds = parse_bounds(bounds);
        if (!task_name.empty())
            opts.task = task_name;
        std::string kind = chosen->get_name();
        if (kind != "run" && kind != "validate")
            opts.kind = kind;
        if (!forms.empty()) {
            equiform::Json task;
            task["name"] = "command_line";
            task["kind"] = kind;
            if (kind == "express")
                task["form"] = forms;
            else
                task["forms"] = forms;
            config.doc["tasks"] = equiform::Json::array({task});
            opts.task.reset();
        }
        equiform::Session session(config, opts);
        report = kind == "validate" ? session.validate() : session.run();
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "equiform: " << e.what() << "\n";
        return 2;
    }

    std::string text = format == "json" ? report.dump(2) + "\n" : equiform::render_text(report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "equiform: cannot write '" << output << "'\n";
            return 2;
        }
        out << text;
    }
    return equiform::report_passed(report) ? 0 : 1;
}
