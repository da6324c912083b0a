#pragma once

#include "rmt/oracle.hpp"
#include "rmt/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rmt::catalog {

enum class Provenance { paper, trivial, derived };

struct ParamRange {
    double lo, hi;
};

// One worked example: a built-in coefficient family plus parameters,
// the rule that evaluates it, and the oracle route that checks it.
struct CatalogEntry {
    std::string id;
    std::string description;
    std::string spec_key;
    std::string rule;
    std::map<std::string, double> params;
    std::map<std::string, ParamRange> ranges;      // hard; violations error
    std::map<std::string, ParamRange> soft_ranges; // flagged, still computed
    std::optional<double> expected;
    Provenance expected_provenance = Provenance::derived;
    std::string oracle_route; // empty when no oracle applies
    double tolerance = 1e-6;  // default verify tolerance (relative)
};

// Closed-form side of a run, shape-independent of which module the rule
// lives in (mellin rules, transform series, sum identities).
struct ClosedSide {
    double value = 0.0;
    std::string rule;
    std::vector<std::string> trace;
    bool ok = false;
    std::string error;           // reason when not ok (pole, ...)
    double error_estimate = 0.0; // nonzero for truncated asymptotic series
};

enum class RunStatus {
    ok,
    unknown_id,
    unknown_param,
    param_out_of_range,
    closed_form_error,
    oracle_failure,
};

struct RunReport {
    RunStatus status = RunStatus::ok;
    CatalogEntry entry; // resolved entry with merged params
    ClosedSide closed;
    std::optional<oracle::OracleResult> oracle_result;
    std::optional<double> rel_gap;
    std::vector<std::string> notes;
    std::string message; // failure detail
};

// Built-in entries, stable order.
const std::vector<CatalogEntry>& list_entries();

// Built-ins plus the user extension file named by RMT_CATALOG_PATH.
// A load problem is reported through *load_error; built-ins still run.
std::vector<CatalogEntry> all_entries(std::string* load_error = nullptr);

// Evaluate an entry: closed form via its rule, optionally the oracle
// route, and the relative gap. oracle_tol is the verify tolerance the
// oracle accuracy is derived from (<= 0 means the entry default).
RunReport run_entry(const std::string& id,
                    const std::map<std::string, double>& overrides,
                    bool with_oracle, double oracle_tol = -1.0);

// Names of every rule operation the catalog can dispatch (coverage lint
// enumerates these).
std::vector<std::string> known_rules();

// SeriesSpec for a built-in family key and parameter set.
bool build_spec(const std::string& spec_key,
                const std::map<std::string, double>& params,
                series::SeriesSpec* out, std::string* err);

// Strict parse of a user catalog document (JSON array of entries);
// unknown fields, ids, rules, or spec keys are rejected.
bool parse_user_catalog(const std::string& text,
                        std::vector<CatalogEntry>* out, std::string* err);

} // namespace rmt::catalog
