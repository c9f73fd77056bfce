#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfqec/codes.hpp"
#include "mfqec/noise.hpp"
#include "mfqec/protocols.hpp"
#include "mfqec/tableau.hpp"

namespace mfqec {

enum class LogicalInput { Zero, Plus };  // |0>_L tracks Z_L, |+>_L tracks X_L

struct TrajectoryResult {
    bool failed = false;
    bool aborted = false;
    std::string abort_reason;
};

struct FtFailure {
    size_t op_index;
    FaultClass fault_class;
    size_t variant;
    LogicalInput input;
};

struct FtReport {
    size_t total_locations = 0;
    size_t total_runs = 0;
    std::vector<FtFailure> failures;
    bool certified() const { return failures.empty(); }
    std::string to_json(const Protocol& p) const;
};

struct RateEstimate {
    double rate = 0, ci_low = 0, ci_high = 0;
    uint64_t shots = 0, failures = 0, aborts = 0;
    std::string to_json() const;
};

struct SweepRow {
    double p;
    LogicalInput input;
    RateEstimate estimate;
};

enum class PairClass { TwoTwo, TwoToff, ToffToff };

struct CountReport {
    PairClass pair_class;
    uint64_t raw_failures = 0;
    uint64_t total_pairs = 0;   // location pairs x variant combinations
    double normalized = 0;      // raw / 15^(#two-qubit members)
    LogicalInput input;
    std::string to_json() const;
};

// Executes one noisy trajectory and applies ideal decoding: noiseless
// end-of-run syndrome readout, table lookup correction, logical comparison.
TrajectoryResult run_trajectory(const Protocol& proto, const NoiseModel& model,
                                LogicalInput input, TrajectoryRng& rng);

RateEstimate estimate_failure_rate(const Protocol& proto, const NoiseModel& model,
                                   uint64_t shots, LogicalInput input, uint64_t seed,
                                   unsigned workers = 0);

// Average over logical |0> and |+> inputs (the reported figure-of-merit).
RateEstimate estimate_failure_rate_averaged(const Protocol& proto, const NoiseModel& model,
                                            uint64_t shots, uint64_t seed, unsigned workers = 0);

// Exhaustive single-fault sweep: every location, every error variant, both
// logical inputs, deterministic trajectories. FT-certified iff no failures.
FtReport ft_check_single_faults(const Protocol& proto);

// Deterministic weight-2 fault-path counting with the divide-by-15 rule.
CountReport count_weight2_faults(const Protocol& proto, PairClass pair_class,
                                 LogicalInput input, unsigned workers = 0);

// Shared plumbing, also used by tests: run with an explicit list of injected
// faults (op_index, variant) and no stochastic noise.
TrajectoryResult run_with_faults(const Protocol& proto,
                                 const std::vector<std::pair<size_t, size_t>>& faults,
                                 LogicalInput input, bool alt_branch = false);

unsigned default_worker_count();

}  // namespace mfqec
