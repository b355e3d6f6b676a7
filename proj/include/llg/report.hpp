#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "rational.hpp"

namespace llg {

using Json = nlohmann::ordered_json;

/// One named check inside a report.  The identity string names the fact the
/// check exercises; every identity used here is listed in docs/identities.md.
struct CheckRecord {
    std::string name;
    std::string identity;
    bool ok = false;
    std::string witness;
    double ms = 0.0;
};

struct Report {
    std::string command;
    std::string input;
    std::string mode = "exact";
    unsigned long long seed = 0;
    int trials = 0;
    double tol = 0.0;
    bool timings = false;
    Json payload = Json::object();
    std::vector<CheckRecord> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckRecord& c) { return c.ok; });
    }

    /// Ordering is part of the output contract: checks sort by name so runs
    /// with the same input produce byte-identical JSON.
    void sort_checks() {
        std::sort(checks.begin(), checks.end(),
                  [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    }

    Json to_json() const {
        Json j;
        j["schema"] = 1;
        j["command"] = command;
        j["input"] = input;
        j["mode"] = mode;
        j["seed"] = seed;
        j["trials"] = trials;
        if (mode == "float") j["tol"] = tol;
        for (const auto& [k, v] : payload.items()) j[k] = v;
        if (!checks.empty()) {
            Json arr = Json::array();
            for (const auto& c : checks) {
                Json rec;
                rec["name"] = c.name;
                rec["identity"] = c.identity;
                rec["verdict"] = c.ok ? "pass" : "fail";
                if (!c.witness.empty()) rec["witness"] = c.witness;
                if (timings) rec["ms"] = c.ms;
                arr.push_back(std::move(rec));
            }
            j["checks"] = std::move(arr);
        }
        j["pass"] = pass();
        return j;
    }

    std::string to_markdown() const {
        std::string out;
        out += "# " + command + " report\n\n";
        out += "- input: `" + input + "`\n";
        out += "- mode: " + mode + ", seed " + std::to_string(seed) + ", trials " +
               std::to_string(trials) + "\n";
        for (const auto& [k, v] : payload.items()) {
            if (k == "betti" && v.is_object()) {
                out += "\n## cohomology\n\n";
                out += "complex `" + v.value("complex", "") + "`, coefficients `" +
                       v.value("coefficients", "") + "`\n\n";
                out += "| degree | dimension |\n|---|---|\n";
                int deg = 0;
                for (const auto& d : v["dims"])
                    out += "| " + std::to_string(deg++) + " | " + d.dump() + " |\n";
            } else {
                out += "\n## " + k + "\n\n```json\n" + v.dump(2) + "\n```\n";
            }
        }
        if (!checks.empty()) {
            out += "\n## checks\n\n| check | identity | verdict |\n|---|---|---|\n";
            for (const auto& c : checks) {
                out += "| " + c.name + " | " + c.identity + " | " +
                       (c.ok ? std::string("pass") : "**fail**") + " |\n";
                if (!c.witness.empty()) out += "| | witness | " + c.witness + " |\n";
            }
        }
        out += "\n**" + std::string(pass() ? "all checks passed" : "some checks FAILED") + "**\n";
        return out;
    }
};

/// Stable per-check seed: folds the check name into the base seed so adding
/// or removing checks does not reshuffle the samples other checks see.
inline unsigned long long derived_seed(unsigned long long base, const std::string& name) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h ^ base;
}

}  // namespace llg
