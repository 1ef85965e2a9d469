#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chromcert/exact.hpp"

namespace chromcert {

enum class Verdict { certified_true, certified_false, undecided };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_true: return "certified-true";
        case Verdict::certified_false: return "certified-false";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

inline Verdict verdict_from_string(std::string_view s) {
    if (s == "certified-true") return Verdict::certified_true;
    if (s == "certified-false") return Verdict::certified_false;
    if (s == "undecided") return Verdict::undecided;
    throw Error("unknown verdict: " + std::string(s));
}

/// One comparison in a certificate transcript. lhs/rhs are decimal strings
/// (integers for exact steps, interval endpoints for interval steps).
struct TranscriptStep {
    std::string label;
    std::string lhs;
    std::string relation;  // ">=", "<", "<=", ">", "=="
    std::string rhs;
    bool holds = false;

    nlohmann::json to_json() const {
        return {{"label", label}, {"lhs", lhs}, {"relation", relation}, {"rhs", rhs}, {"holds", holds}};
    }

    static TranscriptStep from_json(const nlohmann::json& j) {
        return {j.at("label").get<std::string>(), j.at("lhs").get<std::string>(), j.at("relation").get<std::string>(),
                j.at("rhs").get<std::string>(), j.at("holds").get<bool>()};
    }
};

/// Machine-checkable verdict record.
struct Certificate {
    std::string claim;
    nlohmann::json params = nlohmann::json::object();
    Verdict verdict = Verdict::undecided;
    nlohmann::json witness = nlohmann::json::object();
    std::string method = "exact-rational";
    std::vector<TranscriptStep> transcript;
    std::vector<Certificate> parts;

    bool is_true() const { return verdict == Verdict::certified_true; }
    bool is_false() const { return verdict == Verdict::certified_false; }

    void add_step(std::string label, std::string lhs, std::string relation, std::string rhs, bool holds) {
        transcript.push_back({std::move(label), std::move(lhs), std::move(relation), std::move(rhs), holds});
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["claim"] = claim;
        j["params"] = params;
        j["verdict"] = std::string(to_string(verdict));
        j["method"] = method;
        j["witness"] = witness;
        auto steps = nlohmann::json::array();
        for (const auto& s : transcript) steps.push_back(s.to_json());
        j["transcript"] = std::move(steps);
        if (!parts.empty()) {
            auto ps = nlohmann::json::array();
            for (const auto& p : parts) ps.push_back(p.to_json());
            j["parts"] = std::move(ps);
        }
        return j;
    }

    static Certificate from_json(const nlohmann::json& j) {
        Certificate c;
        c.claim = j.at("claim").get<std::string>();
        c.params = j.at("params");
        c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        c.method = j.value("method", "exact-rational");
        c.witness = j.value("witness", nlohmann::json::object());
        for (const auto& s : j.at("transcript")) c.transcript.push_back(TranscriptStep::from_json(s));
        if (j.contains("parts")) {
            for (const auto& p : j.at("parts")) c.parts.push_back(from_json(p));
        }
        return c;
    }
};

/// Conjunction: true iff all parts true; false iff any part false; else undecided.
inline Verdict conjunction(const std::vector<Certificate>& parts) {
    bool undecided = false;
    for (const auto& p : parts) {
        if (p.is_false()) return Verdict::certified_false;
        if (p.verdict == Verdict::undecided) undecided = true;
    }
    return undecided ? Verdict::undecided : Verdict::certified_true;
}

inline std::string relation_of(std::strong_ordering o) {
    if (o == std::strong_ordering::less) return "<";
    if (o == std::strong_ordering::greater) return ">";
    return "==";
}

}  // namespace chromcert
