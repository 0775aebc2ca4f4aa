#include "cli/report.hpp"

#include <sstream>

namespace polya::cli {

namespace {

void render_node(std::ostream& os, const Json& j, const std::string& key, int depth) {
    std::string pad(std::size_t(depth) * 2, ' ');
    if (j.is_object()) {
        if (!key.empty()) os << pad << key << ":\n";
        for (auto it = j.begin(); it != j.end(); ++it)
            render_node(os, it.value(), it.key(), key.empty() ? depth : depth + 1);
    } else if (j.is_array()) {
        if (j.empty()) {
            os << pad << key << ": []\n";
            return;
        }
        bool scalars = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalars = false;
        if (scalars) {
            os << pad << key << ": [";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                if (j[i].is_string()) os << j[i].get<std::string>();
                else os << j[i].dump();
            }
            os << "]\n";
        } else {
            os << pad << key << ":\n";
            for (std::size_t i = 0; i < j.size(); ++i)
                render_node(os, j[i], "- [" + std::to_string(i) + "]", depth + 1);
        }
    } else if (j.is_string()) {
        os << pad << key << ": " << j.get<std::string>() << "\n";
    } else {
        os << pad << key << ": " << j.dump() << "\n";
    }
}

} // namespace

std::string render_human(const Json& j) {
    std::ostringstream os;
    render_node(os, j, "", 0);
    return os.str();
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace polya::cli
