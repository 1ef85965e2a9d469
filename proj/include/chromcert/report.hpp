#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chromcert/certificate.hpp"

namespace chromcert {

#ifndef CHROMCERT_VERSION
#define CHROMCERT_VERSION "0.1.0"
#endif

inline constexpr const char* kToolVersion = CHROMCERT_VERSION;

/// Documented process exit codes.
enum ExitCode : int {
    exit_true = 0,       // certified-true or plain success
    exit_false = 1,      // certified-false
    exit_undecided = 2,  // undecided / precision exhausted
    exit_size_cap = 3,   // a size cap was exceeded
    exit_usage = 64,     // bad flags, invalid input, unreadable files
};

inline int exit_code_for(Verdict v) {
    switch (v) {
        case Verdict::certified_true: return exit_true;
        case Verdict::certified_false: return exit_false;
        case Verdict::undecided: return exit_undecided;
    }
    return exit_undecided;
}

/// Machine-readable record of one CLI run.
///
/// `argv` holds the arguments that determine the result (output destination,
/// timing and thread count are excluded), so replaying `argv` must reproduce
/// `verdict`, `result` and `exit_code` exactly. Timing is recorded only on
/// request, which keeps reports byte-for-byte reproducible by default.
struct RunReport {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::optional<Verdict> verdict;
    nlohmann::json result = nlohmann::json::object();
    int exit_code = exit_true;
    std::optional<double> seconds;
    std::string version = kToolVersion;

    nlohmann::json to_json() const {
        nlohmann::json j = {{"tool", "chromcert"},
                            {"version", version},
                            {"command", command},
                            {"argv", argv},
                            {"parameters", parameters},
                            {"result", result},
                            {"exit_code", exit_code}};
        j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json();
        j["verdict"] = verdict ? nlohmann::json(std::string(to_string(*verdict))) : nlohmann::json();
        if (seconds) j["timing"] = {{"seconds", *seconds}};
        return j;
    }

    static RunReport from_json(const nlohmann::json& j) {
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.argv = j.at("argv").get<std::vector<std::string>>();
        r.parameters = j.at("parameters");
        if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("verdict").is_null()) r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        r.result = j.at("result");
        r.exit_code = j.at("exit_code").get<int>();
        r.version = j.at("version").get<std::string>();
        if (j.contains("timing")) r.seconds = j.at("timing").at("seconds").get<double>();
        return r;
    }

    /// Same outcome: command, verdict, result and exit code agree.
    bool same_outcome(const RunReport& o) const {
        return command == o.command && verdict == o.verdict && result == o.result && exit_code == o.exit_code;
    }
};

}  // namespace chromcert
