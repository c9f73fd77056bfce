#pragma once

#include <array>
#include <cstdint>

#include "mfqec/pauli.hpp"

namespace mfqec {

enum class SwitchDirection {
    From15To7,  // tetrahedral -> Steane, Z-type feedback
    From7To15,  // Steane -> tetrahedral, X-type feedback
};

// Feedback operation for a 3-bit switching syndrome. Bit 0 of the tuple is the
// red entry, bit 1 blue, bit 2 green. Entries compose by XOR of syndromes.
class SwitchLUT {
  public:
    explicit SwitchLUT(SwitchDirection dir);

    SwitchDirection direction() const { return dir_; }
    // Full 15-qubit operator from the published table.
    PauliString entry(uint8_t syndrome) const;
    // Support restricted to the 2D code qubits 0..6 (yellow cell untouched).
    PauliString data_restricted_entry(uint8_t syndrome) const;

  private:
    SwitchDirection dir_;
    std::array<PauliString, 8> full_;
    std::array<PauliString, 8> restricted_;
};

PauliString feedback_lut(SwitchDirection dir, uint8_t syndrome);

}  // namespace mfqec
