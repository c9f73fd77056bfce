#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfqec/pauli.hpp"

namespace mfqec {

enum class GateKind {
    Init0,   // prepare |0> (fresh qubit)
    H, S, Sdg, X, Y, Z, T, Tdg,
    CNOT, CZ,
    TOFFOLI,
    MEASZ,
    RESET,
    IDLE,    // idle-during-measurement marker
};

enum class FaultClass {
    None,
    SingleQubit,    // depolarizing E1, 3 variants
    TwoQubit,       // depolarizing E2, 15 variants
    Toffoli,        // X flip on target, 1 variant
    Init,           // X after, 1 variant
    Meas,           // X before, 1 variant
    IdleMeas,       // Z, 1 variant
};

const char* gate_name(GateKind k);
size_t gate_arity(GateKind k);
FaultClass default_fault_class(GateKind k);
const char* fault_class_name(FaultClass c);
std::optional<FaultClass> fault_class_from_name(const std::string& s);
size_t fault_class_variants(FaultClass c);

struct GateOp {
    GateKind kind;
    std::vector<uint32_t> qubits;
    FaultClass fault_class;
};

struct Register {
    std::string name;
    uint32_t offset;
    uint32_t size;
};

struct FaultLocation {
    size_t op_index;
    FaultClass fault_class;
};

struct ParseError : std::runtime_error {
    ParseError(size_t line, size_t column, const std::string& message);
    size_t line;
    size_t column;
};

// Ordered gate list over named qubit registers, with ordered unique markers.
class Circuit {
  public:
    uint32_t add_register(const std::string& name, uint32_t size);
    std::optional<Register> find_register(const std::string& name) const;
    const std::vector<Register>& registers() const { return regs_; }
    uint32_t num_qubits() const { return n_; }

    // Validates arity, range and qubit distinctness; returns op index.
    size_t append(GateKind kind, std::vector<uint32_t> qubits);
    size_t append(GateKind kind, std::vector<uint32_t> qubits, FaultClass fc);
    void add_marker(const std::string& name);  // attaches before the next op

    const std::vector<GateOp>& ops() const { return ops_; }
    const std::map<size_t, std::vector<std::string>>& markers() const { return markers_; }

    // Complete, duplicate-free, deterministic enumeration for the named classes.
    std::vector<FaultLocation> enumerate_fault_locations(
        const std::vector<FaultClass>& classes) const;

    // Pauli applied for (location, variant); variant < fault_class_variants.
    PauliString fault_pauli(const FaultLocation& loc, size_t variant) const;

    struct Stats {
        size_t cnot = 0, cz = 0, toffoli = 0, t = 0, single_qubit = 0;
        size_t init = 0, resets = 0, measz = 0, idle = 0;
        size_t qubits_with_reset = 0, qubits_without_reset = 0;
    };
    Stats stats() const;
    std::string stats_json() const;

  private:
    uint32_t n_ = 0;
    std::vector<Register> regs_;
    std::vector<GateOp> ops_;
    std::map<size_t, std::vector<std::string>> markers_;  // op index -> names
};

// Line-oriented text format:
//   # comment
//   qubits <name> <size>
//   marker <name>
//   <mnemonic> <reg><idx> ...
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace mfqec
