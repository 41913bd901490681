#pragma once

#include "equiform/config.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace equiform {

inline constexpr int kReportSchemaVersion = 1;

/// Command-line overrides applied on top of the config options.
struct RunOptions {
    std::optional<int> max_length;
    std::optional<int> max_degree;
    std::optional<std::pair<int, int>> laurent_bounds;
    /// Run only tasks with this name.
    std::optional<std::string> task;
    /// Run only tasks of this kind.
    std::optional<std::string> kind;
};

const std::vector<std::string>& task_kinds();

/// Does the pullback of x to the unit sphere bundle aa = 1 vanish?
bool vanishes_on_sphere(const HomogeneousSetup& setup, const Form& x);

/// Builds models and dictionaries on demand and caches them per parameter
/// substitution.
class Session {
public:
    Session(const Config& config, RunOptions options);
    ~Session();

    const Model& model(const std::map<std::string, std::string>& substitutions = {});
    const Dictionary& dictionary(const std::map<std::string, std::string>& substitutions = {});

    Json run_task(const Json& task, std::size_t index);
    Json run();
    Json validate();

    const Config& config() const { return config_; }
    const RunOptions& options() const { return options_; }

private:
    struct Impl;
    const Config& config_;
    RunOptions options_;
    std::unique_ptr<Impl> impl_;
};

bool report_passed(const Json& report);
std::string render_text(const Json& report);

}  // namespace equiform
