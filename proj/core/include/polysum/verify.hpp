#pragma once

#include "polysum/generator.hpp"
#include "polysum/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polysum {

/// One lemma suite run against one instance. A failed record carries a
/// machine-readable witness sufficient to replay the failure.
struct CheckRecord {
    std::string check_id;
    std::string lemma; ///< wire tag of the distance argument checked
    bool pass = true;
    std::size_t cases = 0;
    std::string detail;
    Json witness; ///< null unless failed
    std::optional<std::size_t> max_len;   ///< longest walk observed
    std::optional<std::size_t> max_bound; ///< its bound
    std::string ratio;                    ///< worst len/bound, decimal string

    CheckRecord() = default;
    CheckRecord(std::string id, std::string lem)
        : check_id(std::move(id)), lemma(std::move(lem)) {}

    void fail(Json w, const std::string& why) {
        if (pass) {
            pass = false;
            witness = std::move(w);
            detail = why;
        }
    }
    void observe(std::size_t len, std::size_t bound);
};

struct Report {
    std::string instance_hash;
    std::string kind;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> records;

    bool all_pass() const;
};

inline const std::vector<std::string> kAllChecks = {
    "L1.1-iff", "L1.2-shape",   "L2.1",           "L2.2",       "L2.3", "T2.1",
    "U2.1",     "L3.1",         "L3.3",           "band-polygon",
    "product-identity",         "walk-validity"};

bool check_selected(const std::vector<std::string>& sel, const std::string& id);

Report verify_two_sum(const TwoSum& inst, const std::vector<std::string>& checks,
                      std::size_t cap = kDefaultEnumCap);
Report verify_unit(const System& p_abar, const std::vector<std::string>& checks,
                   std::size_t cap = kDefaultEnumCap);
Report verify_three_sum(const ThreeSum& inst, const std::vector<std::string>& checks,
                        std::size_t cap = kDefaultEnumCap);
/// Plain systems support the product-identity check (diagonal blocks
/// are detected from the nonzero pattern).
Report verify_system(const System& s, const std::vector<std::string>& checks,
                     std::size_t cap = kDefaultEnumCap);
/// Replays an exported walk against its embedded instance.
Report verify_walk(const WalkDocument& doc, std::size_t cap = kDefaultEnumCap);

/// Dispatch on a parsed file of any supported schema.
Report verify_file(const Json& j, const std::vector<std::string>& checks,
                   std::size_t cap = kDefaultEnumCap);

struct CampaignConfig {
    std::uint64_t seed = 42;
    std::size_t two_sum_count = 200;
    std::size_t three_sum_count = 100;
    std::size_t unit_count = 200;
    std::size_t product_count = 50;
    std::size_t cap = kDefaultEnumCap;
    std::size_t jobs = 0; ///< 0 = hardware concurrency
};

struct Campaign {
    std::vector<Report> reports; ///< sorted by (hash, kind, seed)

    std::size_t failures() const;
    bool all_pass(const std::string& check_id) const;
    std::string jsonl() const;
    std::string csv() const;
};

/// Generates and verifies every instance kind; instance verifications
/// run in a worker pool and the report order is independent of the
/// scheduling (sorted by instance hash).
Campaign run_campaign(const CampaignConfig& cfg);

} // namespace polysum
