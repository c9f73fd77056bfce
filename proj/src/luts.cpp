#include "mfqec/luts.hpp"

#include "mfqec/codes.hpp"

namespace mfqec {

SwitchLUT::SwitchLUT(SwitchDirection dir) : dir_(dir) {
    // Single-bit entries; composite syndromes are XOR products of these.
    std::array<PauliString, 3> base;
    if (dir == SwitchDirection::From15To7) {
        base = {PauliString::z_on(15, tetra::kFaceBG),   // red syndrome bit
                PauliString::z_on(15, tetra::kFaceRG),   // blue
                PauliString::z_on(15, tetra::kFaceRB)};  // green
    } else {
        base = {PauliString::x_on(15, tetra::kRedPlaquette),
                PauliString::x_on(15, tetra::kBluePlaquette),
                PauliString::x_on(15, tetra::kGreenPlaquette)};
    }
    for (uint8_t s = 0; s < 8; s++) {
        PauliString p = PauliString::identity(15);
        for (int b = 0; b < 3; b++)
            if ((s >> b) & 1) p.mul(base[b]);
        full_[s] = p;
        PauliString r(15);
        for (size_t q = 0; q < 7; q++) {
            r.set_x(q, p.x(q));
            r.set_z(q, p.z(q));
        }
        restricted_[s] = r;
    }
}

PauliString SwitchLUT::entry(uint8_t syndrome) const { return full_[syndrome & 7]; }

PauliString SwitchLUT::data_restricted_entry(uint8_t syndrome) const {
    return restricted_[syndrome & 7];
}

PauliString feedback_lut(SwitchDirection dir, uint8_t syndrome) {
    return SwitchLUT(dir).entry(syndrome);
}

}  // namespace mfqec
