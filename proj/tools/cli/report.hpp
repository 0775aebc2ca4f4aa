#pragma once

#include <json.hpp>

#include <string>

namespace polya::cli {

// Reports are built as ordered JSON so --json output is byte-stable; the
// human rendering is derived from the same object, so it can never show a
// number the machine output lacks. Big integers are decimal strings.
using Json = nlohmann::ordered_json;

struct Report {
    Json body;
    std::string csv; // populated only by batch verify commands
};

std::string render_human(const Json& j);
std::string render_json(const Json& j);

} // namespace polya::cli
