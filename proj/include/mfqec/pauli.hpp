#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mfqec {

// An n-qubit Pauli operator with a real sign. Phases +/-i never appear in
// stored operators; multiplication asserts the product stays real.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(size_t n_qubits);

    static PauliString identity(size_t n_qubits);
    // Accepts "XIZY", "+XIZY" or "-XIZY".
    static PauliString from_str(const std::string& s);
    static PauliString x_on(size_t n_qubits, std::span<const uint32_t> qubits);
    static PauliString z_on(size_t n_qubits, std::span<const uint32_t> qubits);
    static PauliString single(size_t n_qubits, uint32_t qubit, char letter);

    size_t num_qubits() const { return n_; }
    bool x(size_t q) const;
    bool z(size_t q) const;
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    // 'I', 'X', 'Y' or 'Z'
    char letter(size_t q) const;

    bool negative() const { return neg_; }
    void set_negative(bool v) { neg_ = v; }

    size_t weight() const;
    bool is_identity() const;  // ignores sign

    // Symplectic commutation test.
    bool commutes_with(const PauliString& other) const;

    // In-place product this <- this * other, tracking the real sign.
    // Throws std::logic_error if the product picks up an imaginary phase.
    PauliString& mul(const PauliString& other);

    std::vector<uint32_t> support() const;
    std::string str() const;

    bool operator==(const PauliString& other) const;
    bool operator!=(const PauliString& other) const { return !(*this == other); }

    // Raw word access for the tableau hot path.
    size_t num_words() const { return x_.size(); }
    uint64_t x_word(size_t w) const { return x_[w]; }
    uint64_t z_word(size_t w) const { return z_[w]; }

  private:
    friend class StabilizerTableau;
    size_t n_ = 0;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    bool neg_ = false;
};

}  // namespace mfqec
