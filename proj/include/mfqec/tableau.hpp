#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mfqec/pauli.hpp"

namespace mfqec {

// Deterministic(bit) or Random outcome of a Z / Pauli expectation query.
struct ZValue {
    bool deterministic = false;
    bool value = false;  // meaningful only when deterministic

    static ZValue det(bool v) { return {true, v}; }
    static ZValue random() { return {false, false}; }
    bool operator==(const ZValue& o) const {
        return deterministic == o.deterministic && (!deterministic || value == o.value);
    }
};

// Raised when a Toffoli is applied with a control whose Z value is not
// deterministic. Signals a protocol construction bug, never coerced.
struct NonDeterministicToffoliControl : std::runtime_error {
    explicit NonDeterministicToffoliControl(const std::string& what)
        : std::runtime_error(what) {}
};

// Aaronson-Gottesman style stabilizer tableau with destabilizer rows.
// Supports the restricted Toffoli used by the measurement-free protocols:
// both controls must be Z-deterministic, making the gate a classical
// controlled-controlled-X on the stabilizer state.
class StabilizerTableau {
  public:
    explicit StabilizerTableau(size_t n_qubits);  // |0...0>

    size_t num_qubits() const { return n_; }

    void h(size_t q);
    void s(size_t q);
    void sdg(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cnot(size_t c, size_t t);
    void cz(size_t a, size_t b);
    void apply_pauli(const PauliString& p);

    // Exact truth-table Toffoli; requires Z-deterministic controls.
    void toffoli(size_t c1, size_t c2, size_t target);

    ZValue z_value(size_t q) const;
    ZValue pauli_expectation(const PauliString& p) const;

    // Gottesman-Knill Z measurement. rand_bit supplies the outcome when the
    // result is not deterministic.
    bool measure_z(size_t q, const std::function<bool()>& rand_bit);
    void reset(size_t q, const std::function<bool()>& rand_bit);

    PauliString stabilizer_row(size_t i) const;

  private:
    struct Row {
        std::vector<uint64_t> x, z;
        bool r = false;  // sign bit: true = -1
    };

    size_t n_ = 0;
    size_t words_ = 0;
    std::vector<Row> rows_;  // rows 0..n-1 destabilizers, n..2n-1 stabilizers

    bool xbit(const Row& row, size_t q) const { return (row.x[q >> 6] >> (q & 63)) & 1; }
    bool zbit(const Row& row, size_t q) const { return (row.z[q >> 6] >> (q & 63)) & 1; }
    // row_h <- row_h * row_i with exact sign tracking
    void rowsum(Row& h, const Row& i) const;
    bool anticommutes(const Row& row, const PauliString& p) const;
};

}  // namespace mfqec
