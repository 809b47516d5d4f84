// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in the suite implementations. Exits nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/suites.hpp"

using namespace qcoh;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool passed, const std::string& detail) {
    std::printf("[%s] %2d. %s — %s\n", passed ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    if (!passed) ++failures;
}

void report_suites(int number, const std::string& label,
                   const std::vector<SuiteReport>& reports) {
    bool passed = true;
    std::string detail;
    for (const auto& r : reports) {
        passed = passed && r.passed;
        if (!detail.empty()) detail += "; ";
        detail += r.suite + ": " + std::to_string(r.samples) + " samples, " +
                  std::to_string(r.violations.size()) + " violations, max_defect=" +
                  std::to_string(r.max_defect);
    }
    report(number, label, passed, detail);
}

std::string run_verify_capture(const std::string& extra_args, const std::string& tag) {
    namespace fs = std::filesystem;
    const auto out_path = fs::temp_directory_path() / ("qcoh_acceptance_" + tag + ".txt");
    const std::string cmd = std::string(QCOH_CLI_PATH) + " verify --seed 0 " + extra_args +
                            " > " + out_path.string() + " 2>&1";
    std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out_path);
    return ss.str();
}

} // namespace

int main() {
    SuiteOptions opts;
    opts.seed = 0;

    report_suites(1, "normalization of C_c^(k) at the extremes", {normalization_suite(opts)});
    report_suites(2, "ordering chain for C_c^(k) and E_c^(k)", {ordering_suite(opts)});
    report_suites(3, "general-basis route agrees with the Schmidt route", {eq6_cross_suite(opts)});
    report_suites(4, "conversion identity (pure exact, mixed within 2e-4)",
                  {conversion_pure_suite(opts), conversion_mixed_suite(opts)});
    report_suites(5, "coherence-number witness", {rank_witness_suite(opts)});
    report_suites(6, "C_c^(2) vs C_c bounds (pure and cross-seeded mixed)",
                  {theorem4_pure_suite(opts), theorem4_mixed_suite(opts)});
    report_suites(7, "C_c equals C_l1 under the phase condition", {theorem5_suite(opts)});
    report_suites(8, "strong monotonicity under incoherent Kraus sets",
                  {strong_monotonicity_all_suite(opts)});
    report_suites(9, "convexity with certificate seeding", {convexity_suite(opts)});
    report_suites(10, "multislit distinguishability", {multislit_suite(opts)});

    {
        const std::string a = run_verify_capture("", "a");
        const std::string b = run_verify_capture("", "b");
        const bool identical = !a.empty() && a == b;
        report(11, "verify --seed 0 is byte-identical across runs", identical,
               identical ? std::to_string(a.size()) + " bytes matched"
                         : "outputs differ");
    }

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
