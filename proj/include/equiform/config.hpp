#pragma once

#include "equiform/expression.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace equiform {

using Json = nlohmann::ordered_json;

class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::size_t line, std::size_t column, std::string pointer = {});
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& pointer() const { return pointer_; }

private:
    std::size_t line_, column_;
    std::string pointer_;
};

/// Byte offsets of every value in a JSON text, keyed by JSON pointer.
class JsonLocator {
public:
    JsonLocator() = default;
    explicit JsonLocator(const std::string& text);

    /// 1-based line and column of the value at the pointer, or of its nearest
    /// located ancestor.
    std::pair<std::size_t, std::size_t> position(const std::string& pointer) const;
    std::pair<std::size_t, std::size_t> position_of_offset(std::size_t offset) const;

private:
    std::string text_;
    std::map<std::string, std::size_t> offsets_;
};

struct Config {
    std::string source;
    Json doc;
    JsonLocator locator;

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;
};

Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::string& path);

/// Everything a task needs, built from a config document.
struct Model {
    std::string name;
    SetupPtr setup;
    Alphabet alphabet;
    std::vector<std::pair<std::string, std::string>> definitions;
    DictionaryOptions dictionary;
    ExpressOptions express;
    std::vector<GroupElement> extra_group_elements;
    /// Parameters replaced by constants; they are absent from the ring.
    std::map<std::string, KElem> constants;

    EvalContext context() const;
};

/// Build the model; `substitutions` maps parameter names to constant
/// expressions and removes those parameters from the ring.
Model build_model(const Config& config, const std::map<std::string, std::string>& substitutions = {});

/// Setup only: ring, Lie algebra, splitting and representation.
SetupPtr build_setup(const Config& config, const std::map<std::string, std::string>& substitutions = {});

/// A value given either as a JSON number or as an expression string.
std::string value_text(const Json& v);

}  // namespace equiform
