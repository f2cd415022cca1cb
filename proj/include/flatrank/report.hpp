#pragma once

#include <flatrank/verify.hpp>

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace flatrank {

inline constexpr int kReportVersion = 1;

inline nlohmann::json to_json(const RankResult& r) {
    return {{"rank", r.rank},
            {"field", r.field.to_string()},
            {"method", to_string(r.method)},
            {"certified", r.certified},
            {"justification", r.justification},
            {"primes", r.primes},
            {"rows", r.rows},
            {"cols", r.cols}};
}

inline nlohmann::json to_json(const FlatteningReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"asserted", c.asserted}, {"passed", c.passed}, {"detail", c.detail}});
    }
    nlohmann::json j = {{"subject", rep.subject},
                        {"m", rep.m},
                        {"q", rep.q},
                        {"variant", rep.variant},
                        {"rows", rep.rows},
                        {"cols", rep.cols},
                        {"rank", to_json(rep.rank)},
                        {"lo_bound", rep.lo_bound},
                        {"checks", checks},
                        {"passed", rep.passed()},
                        {"primes", rep.primes},
                        {"seed", rep.seed},
                        {"seconds", rep.seconds},
                        {"in_theorem_range", rep.in_theorem_range},
                        {"notes", rep.notes}};
    j["expected"] = rep.expected ? nlohmann::json(*rep.expected) : nlohmann::json(nullptr);
    if (rep.rank_prev) j["rank_prev"] = to_json(*rep.rank_prev);
    if (rep.rank_diff) j["rank_diff"] = to_json(*rep.rank_diff);
    if (rep.expected_diff) j["expected_diff"] = *rep.expected_diff;
    return j;
}

/// {version, command, params, reports[], environment{primes, seed}}.
/// With `timings` off, wall times are zeroed so documents are reproducible.
inline nlohmann::json report_document(const std::string& command, const nlohmann::json& params,
                                      const std::vector<FlatteningReport>& reports, std::vector<std::uint64_t> primes,
                                      std::uint64_t seed, bool timings = true) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        auto j = to_json(r);
        if (!timings) j["seconds"] = 0.0;
        arr.push_back(std::move(j));
    }
    return {{"version", kReportVersion},
            {"command", command},
            {"params", params},
            {"reports", arr},
            {"environment", {{"primes", primes}, {"seed", seed}}}};
}

inline void write_csv(std::ostream& out, const std::vector<FlatteningReport>& reports) {
    out << "m,q,rows,cols,rank,expected,rank_prev,rank_diff,expected_diff,lo_bound,certified,justification,passed,seconds\n";
    for (const auto& r : reports) {
        out << r.m << ',' << r.q << ',' << r.rows << ',' << r.cols << ',' << r.rank.rank << ','
            << (r.expected ? std::to_string(*r.expected) : "") << ','
            << (r.rank_prev ? std::to_string(r.rank_prev->rank) : "") << ','
            << (r.rank_diff ? std::to_string(r.rank_diff->rank) : "") << ','
            << (r.expected_diff ? std::to_string(*r.expected_diff) : "") << ',' << r.lo_bound << ','
            << (r.rank.certified ? "true" : "false") << ',' << r.rank.justification << ','
            << (r.passed() ? "true" : "false") << ',' << r.seconds << '\n';
    }
}

} // namespace flatrank
