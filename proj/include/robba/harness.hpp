#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace robba {

/// Reproducible run parameters; identical manifests give bit-identical
/// reports.
struct RunManifest {
    long p = 3;
    long prec = 20;
    long trunc_T = 48;
    long trunc_t = 12;
    long level = 2;     // highest cyclotomic level exercised
    long tail = 8;      // principal-part bound B
    long samples = -1;  // -1: per-suite default
    unsigned long seed = 12345;
    long threads = 0;  // 0: hardware concurrency

    std::string to_json() const;
};

struct CaseResult {
    long index = 0;
    std::string digest;        // input digest
    long residual_valuation = 0;
    long floor = 0;
    bool pass = false;
    std::string note;
    double ms = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    double wall_ms = 0.0;
    double min_pass_fraction = 1.0;

    long passed() const;
    bool pass() const;
    /// One JSON object per case, then a summary object.
    void write_jsonl(std::ostream& os) const;
};

/// Registered suite names (one per acceptance criterion, plus ring checks).
std::vector<std::string> suite_names();

/// Run a named suite; throws Error with the suite listing on unknown names.
SuiteReport run_suite(const std::string& name, const RunManifest& manifest);

/// FNV-1a digest of a string, for input digests in reports.
std::string digest_of(const std::string& s);

}  // namespace robba
