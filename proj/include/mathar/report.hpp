#pragma once

// Outcome of one CLI command, renderable as text or JSON. Both renderings
// carry the same status; elapsed time lives in its own "timing" object so
// the rest of the JSON is stable across runs.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mathar {

enum class status { pass, fail, error };

inline const char* to_string(status s) {
    switch (s) {
        case status::pass:
            return "pass";
        case status::fail:
            return "fail";
        case status::error:
            return "error";
    }
    return "error";
}

struct report {
    std::string command;
    status result = status::pass;
    std::size_t checks_run = 0;
    std::vector<std::pair<std::string, std::string>> details;
    std::vector<std::string> lines;
    std::vector<report> children;
    double elapsed_ms = 0;

    bool passed() const noexcept { return result == status::pass; }

    /// 0 pass, 1 fail, 2 error.
    int exit_code() const noexcept {
        switch (result) {
            case status::pass:
                return 0;
            case status::fail:
                return 1;
            case status::error:
                return 2;
        }
        return 2;
    }

    void set(std::string key, std::string value) {
        for (auto& [k, v] : details) {
            if (k == key) {
                v = std::move(value);
                return;
            }
        }
        details.emplace_back(std::move(key), std::move(value));
    }

    const std::string* get(const std::string& key) const {
        for (const auto& [k, v] : details) {
            if (k == key) {
                return &v;
            }
        }
        return nullptr;
    }

    void fail(std::string key, std::string value) {
        if (result == status::pass) {
            result = status::fail;
        }
        set(std::move(key), std::move(value));
    }
};

inline nlohmann::ordered_json to_json(const report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["status"] = to_string(r.result);
    j["checks_run"] = r.checks_run;
    auto& details = j["details"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.details) {
        details[k] = v;
    }
    j["lines"] = r.lines;
    if (!r.children.empty()) {
        auto& children = j["reports"] = nlohmann::ordered_json::array();
        for (const auto& c : r.children) {
            children.push_back(to_json(c));
        }
    }
    j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
    return j;
}

inline std::string to_text(const report& r, const std::string& indent = "") {
    std::string out;
    for (const auto& line : r.lines) {
        out += indent + line + "\n";
    }
    for (const auto& c : r.children) {
        out += to_text(c, indent + "  ");
    }
    std::string head = r.command + ": " + (r.result == status::pass   ? "PASS"
                                           : r.result == status::fail ? "FAIL"
                                                                      : "ERROR");
    head += " (" + std::to_string(r.checks_run) + " checks)";
    out += indent + head + "\n";
    for (const auto& [k, v] : r.details) {
        out += indent + "  " + k + ": " + v + "\n";
    }
    out += indent + "  elapsed_ms: " + std::to_string(static_cast<long long>(r.elapsed_ms)) + "\n";
    return out;
}

}  // namespace mathar
