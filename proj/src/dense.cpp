#include "mfqec/dense.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfqec {

namespace {
constexpr size_t kMaxDenseQubits = 12;
}

DenseState::DenseState(size_t n_qubits) : n_(n_qubits) {
    if (n_ == 0 || n_ > kMaxDenseQubits)
        throw std::invalid_argument("dense simulator supports 1..12 qubits");
    amp_.assign(size_t{1} << n_, {0.0, 0.0});
    amp_[0] = {1.0, 0.0};
}

void DenseState::single_qubit(size_t q, std::complex<double> m00, std::complex<double> m01,
                              std::complex<double> m10, std::complex<double> m11) {
    size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) continue;
        auto a0 = amp_[i], a1 = amp_[i | bit];
        amp_[i] = m00 * a0 + m01 * a1;
        amp_[i | bit] = m10 * a0 + m11 * a1;
    }
}

void DenseState::h(size_t q) {
    double r = 1.0 / std::sqrt(2.0);
    single_qubit(q, r, r, r, -r);
}

void DenseState::s(size_t q) { single_qubit(q, 1, 0, 0, {0, 1}); }
void DenseState::sdg(size_t q) { single_qubit(q, 1, 0, 0, {0, -1}); }

void DenseState::t(size_t q) {
    single_qubit(q, 1, 0, 0, std::polar(1.0, std::numbers::pi / 4));
}

void DenseState::tdg(size_t q) {
    single_qubit(q, 1, 0, 0, std::polar(1.0, -std::numbers::pi / 4));
}

void DenseState::x(size_t q) { single_qubit(q, 0, 1, 1, 0); }
void DenseState::y(size_t q) { single_qubit(q, 0, {0, -1}, {0, 1}, 0); }
void DenseState::z(size_t q) { single_qubit(q, 1, 0, 0, -1); }

void DenseState::cnot(size_t c, size_t t) {
    size_t cb = size_t{1} << c, tb = size_t{1} << t;
    for (size_t i = 0; i < amp_.size(); i++)
        if ((i & cb) && !(i & tb)) std::swap(amp_[i], amp_[i | tb]);
}

void DenseState::cz(size_t a, size_t b) {
    size_t ab = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amp_.size(); i++)
        if ((i & ab) == ab) amp_[i] = -amp_[i];
}

void DenseState::toffoli(size_t c1, size_t c2, size_t t) {
    size_t cb = (size_t{1} << c1) | (size_t{1} << c2);
    size_t tb = size_t{1} << t;
    for (size_t i = 0; i < amp_.size(); i++)
        if (((i & cb) == cb) && !(i & tb)) std::swap(amp_[i], amp_[i | tb]);
}

void DenseState::apply_pauli(const PauliString& p) {
    for (size_t q = 0; q < n_; q++) {
        if (p.x(q) && p.z(q)) y(q);
        else if (p.x(q)) x(q);
        else if (p.z(q)) z(q);
    }
}

double DenseState::prob_one(size_t q) const {
    size_t bit = size_t{1} << q;
    double p = 0;
    for (size_t i = 0; i < amp_.size(); i++)
        if (i & bit) p += std::norm(amp_[i]);
    return p;
}

bool DenseState::measure_z(size_t q, const std::function<double()>& rand_u01) {
    double p1 = prob_one(q);
    bool one = rand_u01() < p1;
    size_t bit = size_t{1} << q;
    double keep = one ? p1 : 1.0 - p1;
    double scale = keep > 0 ? 1.0 / std::sqrt(keep) : 0.0;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (bool(i & bit) == one) amp_[i] *= scale;
        else amp_[i] = 0;
    }
    return one;
}

void DenseState::reset(size_t q, const std::function<double()>& rand_u01) {
    if (measure_z(q, rand_u01)) x(q);
}

double DenseState::expectation(const PauliString& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("pauli size mismatch");
    // P|i> = phase * |j> where j = i ^ xmask and phase from z bits / Y count
    size_t xmask = 0, zmask = 0;
    int ycount = 0;
    for (size_t q = 0; q < n_; q++) {
        if (p.x(q)) xmask |= size_t{1} << q;
        if (p.z(q)) zmask |= size_t{1} << q;
        if (p.x(q) && p.z(q)) ycount++;
    }
    std::complex<double> acc = 0;
    std::complex<double> yphase = 1;
    switch (ycount & 3) {  // each Y contributes factor i applied as Y = i X Z
        case 1: yphase = {0, 1}; break;
        case 2: yphase = -1; break;
        case 3: yphase = {0, -1}; break;
        default: break;
    }
    for (size_t i = 0; i < amp_.size(); i++) {
        size_t j = i ^ xmask;
        // Z part acts on |i> before X flips
        double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
        acc += std::conj(amp_[j]) * amp_[i] * sign;
    }
    acc *= yphase;
    if (p.negative()) acc = -acc;
    return acc.real();
}

double DenseState::basis_prob(uint64_t basis_state) const {
    return std::norm(amp_[basis_state]);
}

double DenseState::norm() const {
    double s = 0;
    for (auto& a : amp_) s += std::norm(a);
    return s;
}

}  // namespace mfqec
