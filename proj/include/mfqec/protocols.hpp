#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfqec/circuit.hpp"
#include "mfqec/codes.hpp"
#include "mfqec/luts.hpp"

namespace mfqec {

// A built protocol: circuit plus input/output code bindings and the expected
// logical action. Fault-free runs map input codestates into the output
// codespace with logicals preserved (or swapped, for transversal H).
struct Protocol {
    std::string name;
    Circuit circuit;
    std::string input_code;   // "steane", "tetra", "code832" or "none"
    std::string output_code;
    std::vector<uint32_t> in_data;   // circuit qubits carrying the input code
    std::vector<uint32_t> out_data;  // circuit qubits carrying the output code
    bool ft = true;
    bool swaps_xz = false;  // logical action H: X_L <-> Z_L
    // Cube axis read by the switch from a [[8,3,2]] block; weight-2 X residual
    // classes aligned across this axis flip no extracted parity and are benign.
    int read_axis = 2;

    // Measurement-based protocols: syndrome bits are formed from measured
    // outcomes and the LUT feedback is applied classically by the engine.
    bool measurement_based = false;
    SwitchDirection mb_direction = SwitchDirection::From15To7;
    // Two extraction rounds, each: op indices of the 3 syndrome measurements
    // and of the flag measurements.
    struct MbRound {
        std::array<std::vector<size_t>, 3> syndrome_meas;
        std::vector<size_t> flag_meas;
    };
    std::vector<MbRound> mb_rounds;
};

Protocol build_switch_15_to_7(bool ft);
Protocol build_switch_7_to_15(bool ft);
Protocol build_init_steane_zero();
Protocol build_init_833_plus();
// [[8,3,2]] |+++> re-initialization targeted at the yellow cell of the
// tetrahedral register (qubits 7..14), as the front of a 7->15 switch.
Protocol build_yellow_reinit();
Protocol build_full_cycle(bool ft);
Protocol build_mb_switch(SwitchDirection dir);

enum class TransversalGate { H, CNOT, TPattern };
Protocol build_transversal(const std::string& code_label, TransversalGate gate);

// Lookup by CLI name, e.g. "switch-15-7", "init-steane-zero".
std::optional<Protocol> build_protocol_by_name(const std::string& name, bool ft);
std::vector<std::string> protocol_names();

// Cube-vertex index (bits b1,b2,b3) -> tetrahedral yellow-cell qubit label.
std::array<uint32_t, 8> yellow_cube_map();

}  // namespace mfqec
