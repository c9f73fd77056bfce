#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "mfqec/pauli.hpp"

namespace mfqec {

// Small exact state-vector simulator (n <= 12). Hosts T/Tdg for the Toffoli
// calibration and serves as the cross-check oracle for the tableau path.
class DenseState {
  public:
    explicit DenseState(size_t n_qubits);  // |0...0>

    size_t num_qubits() const { return n_; }

    void h(size_t q);
    void s(size_t q);
    void sdg(size_t q);
    void t(size_t q);
    void tdg(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cnot(size_t c, size_t t);
    void cz(size_t a, size_t b);
    void toffoli(size_t c1, size_t c2, size_t t);
    void apply_pauli(const PauliString& p);

    double prob_one(size_t q) const;
    bool measure_z(size_t q, const std::function<double()>& rand_u01);
    void reset(size_t q, const std::function<double()>& rand_u01);

    // <psi| P |psi>, real part (P Hermitian).
    double expectation(const PauliString& p) const;
    // Probability of computational basis outcome.
    double basis_prob(uint64_t basis_state) const;
    double norm() const;

    std::vector<std::complex<double>>& amplitudes() { return amp_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

  private:
    size_t n_;
    std::vector<std::complex<double>> amp_;

    void single_qubit(size_t q, std::complex<double> m00, std::complex<double> m01,
                      std::complex<double> m10, std::complex<double> m11);
};

}  // namespace mfqec
