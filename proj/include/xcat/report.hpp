#pragma once

// Pass/fail reports produced by every verifier.

#include "json.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace xcat {

struct CheckRecord {
    std::string check;     ///< e.g. "X2", "adjointness", "serre"
    std::string location;  ///< weight and indices of the instance
    bool pass = true;
    std::string detail;
};

/**
 * Result of one verifier run. Passing instances are counted but not recorded
 * individually; every failure is kept with its location.
 */
struct TheoremReport {
    TheoremReport() = default;
    TheoremReport(std::string t, std::string in) : tag(std::move(t)), inputs(std::move(in)) {}

    std::string tag;
    std::string inputs;
    std::size_t checked = 0;
    std::vector<CheckRecord> failures;
    std::map<std::string, std::size_t> counts;  ///< instances checked per check name

    bool pass() const { return failures.empty(); }

    void record(const std::string& check, const std::string& location, bool ok, const std::string& detail = {}) {
        ++checked;
        ++counts[check];
        if (!ok) failures.push_back({check, location, false, detail});
    }

    void merge(const TheoremReport& other) {
        checked += other.checked;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        for (const auto& [name, n] : other.counts) counts[name] += n;
    }

    /// Structured text: a header line, then one line per failure.
    std::string to_text() const {
        std::string s = tag + " [" + inputs + "]: " + (pass() ? "PASS" : "FAIL") + " (" + std::to_string(checked) +
                        " checks, " + std::to_string(failures.size()) + " failures)\n";
        for (const auto& [name, n] : counts) s += "  " + name + ": " + std::to_string(n) + "\n";
        for (const auto& f : failures) {
            s += "  FAIL " + f.check + " at " + f.location;
            if (!f.detail.empty()) s += ": " + f.detail;
            s += "\n";
        }
        return s;
    }

    /// One JSON object per line: a summary record followed by each failure record.
    std::string to_json_lines() const {
        nlohmann::ordered_json head;
        head["tag"] = tag;
        head["inputs"] = inputs;
        head["pass"] = pass();
        head["checked"] = checked;
        head["failures"] = failures.size();
        head["counts"] = counts;
        std::string s = head.dump() + "\n";
        for (const auto& f : failures) {
            nlohmann::ordered_json rec;
            rec["tag"] = tag;
            rec["check"] = f.check;
            rec["location"] = f.location;
            rec["pass"] = false;
            rec["detail"] = f.detail;
            s += rec.dump() + "\n";
        }
        return s;
    }
};

}  // namespace xcat
