#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfqec/pauli.hpp"

namespace mfqec {

struct CodeSpec {
    std::string label;
    uint32_t n = 0, k = 0, d = 0;
    std::vector<PauliString> x_generators;
    std::vector<PauliString> z_generators;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;

    std::vector<PauliString> generators() const;
    std::string to_json() const;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_json() const;
};

// Syndrome-indexed minimum-weight corrections, CSS-split: X errors are decoded
// from Z-generator syndromes and Z errors from X-generator syndromes.
struct DecoderTable {
    uint32_t n = 0;
    std::vector<uint32_t> x_correction;  // index: syndrome vs z_generators -> X support mask
    std::vector<uint32_t> z_correction;  // index: syndrome vs x_generators -> Z support mask

    // Ideal decode of a CSS residual; returns the correction Pauli.
    PauliString correct(const CodeSpec& code, const std::vector<bool>& x_gen_syndrome,
                        const std::vector<bool>& z_gen_syndrome) const;
};

CodeSpec steane_spec();
CodeSpec tetrahedral_spec();
CodeSpec code832_spec();

// Derives the tetrahedral qubit labeling from the published feedback table
// and plaquette constraints; first solution in lexicographic order.
// Returns standard-construction-index -> final label.
std::array<uint32_t, 15> solve_tetra_labeling();

ValidationReport validate_code(const CodeSpec& spec);
uint32_t code_distance(const CodeSpec& spec);
DecoderTable build_decoder_table(const CodeSpec& spec);
ValidationReport verify_subsystem_relation(const CodeSpec& steane, const CodeSpec& tetra);

// GF(2) helpers shared by validation and the engines.
// Rows are Paulis as 2n-bit (x|z) vectors; returns rank.
size_t gf2_rank(std::vector<std::vector<uint64_t>> rows, size_t bits);
// Is p (ignoring sign) in the group generated by gens (ignoring signs)?
bool in_pauli_group(const PauliString& p, const std::vector<PauliString>& gens);

// Fixed register geometry of the pinned tetrahedral labeling.
namespace tetra {
inline constexpr std::array<uint32_t, 4> kRedPlaquette{0, 1, 2, 3};
inline constexpr std::array<uint32_t, 4> kBluePlaquette{1, 2, 4, 5};
inline constexpr std::array<uint32_t, 4> kGreenPlaquette{2, 3, 5, 6};
inline constexpr std::array<uint32_t, 8> kRedCell{0, 1, 2, 3, 8, 12, 13, 14};
inline constexpr std::array<uint32_t, 8> kBlueCell{1, 2, 4, 5, 9, 11, 13, 14};
inline constexpr std::array<uint32_t, 8> kGreenCell{2, 3, 5, 6, 10, 11, 12, 13};
inline constexpr std::array<uint32_t, 8> kYellowCell{7, 8, 9, 10, 11, 12, 13, 14};
// Interfaces between pairs of cells (r=1,b=2,g=3,y=4).
inline constexpr std::array<uint32_t, 4> kFaceRB{1, 2, 13, 14};
inline constexpr std::array<uint32_t, 4> kFaceRG{2, 3, 12, 13};
inline constexpr std::array<uint32_t, 4> kFaceBG{2, 5, 11, 13};
inline constexpr std::array<uint32_t, 4> kFaceRY{8, 12, 13, 14};
inline constexpr std::array<uint32_t, 4> kFaceBY{9, 11, 13, 14};
inline constexpr std::array<uint32_t, 4> kFaceGY{10, 11, 12, 13};
}  // namespace tetra

}  // namespace mfqec
