// Acceptance suite: runs the full verification campaign plus the fixture
// identities and prints one PASS/FAIL line per criterion. Exit code 0
// only when every criterion holds.

#include "polysum/fixtures.hpp"
#include "polysum/oracle.hpp"
#include "polysum/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>

using namespace polysum;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& note = "") {
    std::printf("%s  C%-2d %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string case_count(const Campaign& camp, const std::string& check) {
    std::size_t cases = 0, instances = 0;
    for (const auto& r : camp.reports)
        for (const auto& c : r.records)
            if (c.check_id == check) {
                cases += c.cases;
                ++instances;
            }
    return std::to_string(cases) + " cases over " + std::to_string(instances) + " instances";
}

// Every instance of the kind must have produced a passing record; an
// instance that errored out of its suite counts as a failure.
bool complete_pass(const Campaign& camp, const std::string& check, std::size_t expected) {
    std::size_t instances = 0;
    for (const auto& r : camp.reports)
        for (const auto& c : r.records)
            if (c.check_id == check) {
                if (!c.pass) return false;
                ++instances;
            }
    return instances == expected;
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();

    CampaignConfig cfg; // seed 42, 200/100/200/50, per-summand columns <= 5
    std::printf("running campaign (seed %llu): %zu two-sum, %zu three-sum, %zu unit, %zu product\n",
                static_cast<unsigned long long>(cfg.seed), cfg.two_sum_count,
                cfg.three_sum_count, cfg.unit_count, cfg.product_count);
    Campaign camp = run_campaign(cfg);

    const std::size_t n2 = cfg.two_sum_count, n3 = cfg.three_sum_count;
    report(1, "lift criterion iff (band vs oracle adjacency)",
           complete_pass(camp, "L1.1-iff", n2), case_count(camp, "L1.1-iff"));
    report(2, "termination shape (segment point, edge endpoint, balance)",
           complete_pass(camp, "L1.2-shape", n2), case_count(camp, "L1.2-shape"));
    report(3, "same-coordinate walks within face diameters",
           complete_pass(camp, "L2.1", n2) && complete_pass(camp, "L3.3", n3),
           case_count(camp, "L2.1") + "; 3-sum " + case_count(camp, "L3.3"));
    report(4, "connect walks valid and within the instance bound",
           complete_pass(camp, "T2.1", n2), case_count(camp, "T2.1"));
    report(5, "unit-column walks within d(P_A) + d(P) + 2",
           complete_pass(camp, "U2.1", cfg.unit_count), case_count(camp, "U2.1"));

    bool pyr_ok = false;
    std::string pyr_note;
    try {
        std::size_t d_pyr = oracle::diameter(fixtures::fix_pyramid(8)).value;
        std::size_t d_slice = oracle::diameter(fixtures::fix_pyramid_slice(8)).value;
        pyr_ok = d_pyr == 2 && d_slice == 4;
        pyr_note = "pyramid " + std::to_string(d_pyr) + ", slice " + std::to_string(d_slice);
    } catch (const std::exception& e) {
        pyr_note = e.what();
    }
    report(6, "octagon pyramid diameter 2, mid slice 4", pyr_ok, pyr_note);

    report(7, "product diameter equals the sum of block diameters",
           complete_pass(camp, "product-identity", cfg.product_count),
           case_count(camp, "product-identity"));
    report(8, "3-sum lift criterion iff", complete_pass(camp, "L3.1", n3),
           case_count(camp, "L3.1"));
    report(9, "band polygons equal projected face hulls", complete_pass(camp, "band-polygon", n3),
           case_count(camp, "band-polygon"));

    std::printf("re-running the campaign for the determinism criterion...\n");
    std::fflush(stdout);
    Campaign again = run_campaign(cfg);
    report(10, "byte-identical reports across runs", camp.jsonl() == again.jsonl());

    // Companion checks that ride along with the campaign.
    bool clean = camp.failures() == 0;
    if (!clean) {
        std::printf("note: %zu failing records in the campaign report\n", camp.failures());
        for (const auto& r : camp.reports)
            for (const auto& c : r.records)
                if (!c.pass)
                    std::printf("  %s %s seed=%llu: %s\n", r.kind.c_str(), c.check_id.c_str(),
                                static_cast<unsigned long long>(r.seed), c.detail.c_str());
    }

    auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("%s (%d criterion failures, %lds)\n", failures == 0 ? "ACCEPTED" : "REJECTED",
                failures, static_cast<long>(dt));
    return failures == 0 ? 0 : 1;
}
