#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfqec/circuit.hpp"
#include "mfqec/pauli.hpp"

namespace mfqec {

struct NoiseModel {
    double p1 = 0, p2 = 0, p_toff = 0, p_init = 0, p_meas = 0, p_idle_meas = 0;

    double rate(FaultClass c) const;
    bool is_zero() const;
    std::string to_json() const;
};

// p := p_2 = 10*p_1 = 10*p_init = 10*p_meas, p_idle_meas = 0, p_toff = 2.88*p.
NoiseModel single_param_model(double p, double toffoli_slope = 2.88);

// Counter-based stream: identical (seed, trajectory) always yields the same
// sequence, independent of worker scheduling.
class TrajectoryRng {
  public:
    TrajectoryRng(uint64_t seed, uint64_t trajectory);
    uint64_t next_u64();
    double next_u01();
    bool next_bit() { return next_u64() & 1; }
    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n);

  private:
    uint64_t state_;
};

// Draws the fault Pauli for one location, or nullopt for "no fault".
std::optional<PauliString> sample_fault(const NoiseModel& model, const Circuit& c,
                                        const FaultLocation& loc, TrajectoryRng& rng);

struct ToffoliCalibration {
    double slope = 0;           // averaged over basis inputs
    double stderr_slope = 0;
    std::vector<double> per_input_slopes;
    std::string to_json() const;
};

// Monte Carlo calibration of the decomposed Toffoli target-flip rate.
// Simulates the 15-component single/two-qubit decomposition on all basis
// inputs over a grid of p values and fits flip probability = slope * p.
ToffoliCalibration calibrate_toffoli(double p_max, uint64_t shots_per_point, uint64_t seed,
                                     bool reduced = false);
// Two consecutive Toffoli gates sharing one control and the target.
ToffoliCalibration calibrate_two_toffolis(double p_max, uint64_t shots_per_point, uint64_t seed);

// The decomposition itself, exposed for tests and export.
Circuit decomposed_toffoli_circuit(bool reduced, bool second_gate = false);

}  // namespace mfqec
