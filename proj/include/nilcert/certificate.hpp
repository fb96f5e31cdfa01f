#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace nilcert {

/* One verified (or refuted) claim inside a certificate.  `statement` is the
 * mathematical assertion in plain text; `coverage` says how it was checked
 * ("exhaustive", "sampled", "matrix identity", ...); `witness` is empty on
 * pass and otherwise pins down a concrete failure. */
struct CheckRecord {
    std::string name;
    std::string statement;
    std::string inputs;
    bool pass = false;
    std::string witness;
    std::string coverage;
};

enum class Verdict { Passed, Refuted, Exhausted };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Passed: return "all checks passed";
        case Verdict::Refuted: return "refuted hypothesis or bug";
        case Verdict::Exhausted: return "budget or bounds exhausted";
    }
    return "unknown";
}

inline int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::Passed: return 0;
        case Verdict::Refuted: return 1;
        case Verdict::Exhausted: return 2;
    }
    return 3;
}

/* Full machine-readable run record.  Serialization is deterministic: field
 * order is fixed, maps are ordered, and no timestamps or environment data are
 * included, so byte-identical reruns are expected. */
struct Certificate {
    std::string instance;  // instance name or source
    std::string pipeline;  // which certifier produced this
    std::vector<CheckRecord> checks;
    std::map<std::string, std::string> quantities;  // named derived quantities
    bool sampled = false;               // some law check was sampled, not exhaustive
    std::string section_coverage;       // "full" | "standard-family" | "" (n/a)
    bool p2_variant = false;            // prime-2 strengthening was required
    Verdict verdict = Verdict::Passed;

    bool all_passed() const {
        for (const CheckRecord& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(CheckRecord rec) { checks.push_back(std::move(rec)); }

    void set_quantity(const std::string& key, const std::string& value) {
        quantities[key] = value;
    }

    int exit_code() const { return verdict_exit_code(verdict); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["instance"] = instance;
        j["pipeline"] = pipeline;
        j["verdict"] = verdict_str(verdict);
        nlohmann::ordered_json flags;
        flags["sampled"] = sampled;
        flags["section_coverage"] = section_coverage;
        flags["p2_variant"] = p2_variant;
        j["flags"] = flags;
        nlohmann::ordered_json q;
        for (const auto& [k, v] : quantities) q[k] = v;
        j["quantities"] = q;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const CheckRecord& c : checks) {
            nlohmann::ordered_json rec;
            rec["name"] = c.name;
            rec["statement"] = c.statement;
            rec["inputs"] = c.inputs;
            rec["pass"] = c.pass;
            rec["witness"] = c.witness;
            rec["coverage"] = c.coverage;
            arr.push_back(std::move(rec));
        }
        j["checks"] = std::move(arr);
        return j;
    }

    std::string to_json_string() const { return to_json().dump(2) + "\n"; }
};

} // namespace nilcert
