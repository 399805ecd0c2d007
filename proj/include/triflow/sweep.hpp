#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "triflow/families.hpp"
#include "triflow/solver.hpp"

namespace triflow {

struct SweepRecord {
    int n = 0;
    int m = 0;
    std::uint64_t code = 0;
    int signature = 0;
    std::string signs;               // one +/- per edge
    bool admissible = false;
    bool condition2 = false;
    bool condition3 = false;
    int best_k = 0;                  // smallest k <= 6 with a k-NZF, 0 if none
    SearchStatus k4 = SearchStatus::gated;
    std::string construct;           // route, "skipped" or "error"
    bool construct_verified = false;
    bool exception = false;
    bool eulerian = false;
    std::optional<bool> two_nzf_criterion;
    std::optional<bool> two_nzf_search;
    std::string note;

    /// Admissible, not the exception, and no verified 4-NZF.
    bool falsifies() const;
    bool bouchet_mismatch() const;
    bool eulerian_mismatch() const;
};

struct SweepSummary {
    std::size_t instances = 0;
    std::size_t admissible = 0;
    std::size_t exceptions = 0;
    std::size_t falsifications = 0;
    std::size_t bouchet_mismatches = 0;
    std::size_t eulerian_instances = 0;
    std::size_t eulerian_mismatches = 0;
    std::size_t gated = 0;
};

struct SweepReport {
    std::vector<SweepRecord> records;   // enumeration order
    SweepSummary summary;
};

SweepRecord sweep_instance(const Instance & inst, std::uint64_t budget = default_search_budget);

/// jobs = 0 uses the available hardware threads.
SweepReport run_sweep(int n_max, unsigned jobs = 0, bool force = false, std::uint64_t budget = default_search_budget);

void write_sweep_tsv(std::ostream & out, const SweepReport & report);
void write_sweep_summary(std::ostream & out, const SweepSummary & s);

}  // namespace triflow
