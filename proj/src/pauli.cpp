#include "mfqec/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace mfqec {

namespace {
size_t words_for(size_t n) { return (n + 63) / 64; }
}  // namespace

PauliString::PauliString(size_t n_qubits)
    : n_(n_qubits), x_(words_for(n_qubits), 0), z_(words_for(n_qubits), 0) {}

PauliString PauliString::identity(size_t n_qubits) { return PauliString(n_qubits); }

PauliString PauliString::from_str(const std::string& s) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    PauliString p(body.size());
    p.neg_ = neg;
    for (size_t q = 0; q < body.size(); q++) {
        switch (body[q]) {
            case 'I': case '_': break;
            case 'X': p.set_x(q, true); break;
            case 'Y': p.set_x(q, true); p.set_z(q, true); break;
            case 'Z': p.set_z(q, true); break;
            default: throw std::invalid_argument("bad pauli letter in \"" + s + "\"");
        }
    }
    return p;
}

PauliString PauliString::x_on(size_t n_qubits, std::span<const uint32_t> qubits) {
    PauliString p(n_qubits);
    for (uint32_t q : qubits) p.set_x(q, true);
    return p;
}

PauliString PauliString::z_on(size_t n_qubits, std::span<const uint32_t> qubits) {
    PauliString p(n_qubits);
    for (uint32_t q : qubits) p.set_z(q, true);
    return p;
}

PauliString PauliString::single(size_t n_qubits, uint32_t qubit, char letter) {
    PauliString p(n_qubits);
    if (letter == 'X' || letter == 'Y') p.set_x(qubit, true);
    if (letter == 'Z' || letter == 'Y') p.set_z(qubit, true);
    if (letter != 'X' && letter != 'Y' && letter != 'Z' && letter != 'I')
        throw std::invalid_argument("bad pauli letter");
    return p;
}

bool PauliString::x(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
bool PauliString::z(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }

void PauliString::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (v) x_[q >> 6] |= m; else x_[q >> 6] &= ~m;
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (v) z_[q >> 6] |= m; else z_[q >> 6] &= ~m;
}

char PauliString::letter(size_t q) const {
    bool xb = x(q), zb = z(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x_.size(); i++) w += std::popcount(x_[i] | z_[i]);
    return w;
}

bool PauliString::is_identity() const {
    for (size_t i = 0; i < x_.size(); i++)
        if ((x_[i] | z_[i]) != 0) return false;
    return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("size mismatch");
    int par = 0;
    for (size_t i = 0; i < x_.size(); i++)
        par ^= std::popcount(x_[i] & other.z_[i]) ^ std::popcount(z_[i] & other.x_[i]);
    return (par & 1) == 0;
}

PauliString& PauliString::mul(const PauliString& other) {
    if (n_ != other.n_) throw std::invalid_argument("size mismatch");
    // Per-qubit i-exponent of this*other: +1 for XY, YZ, ZX; -1 for YX, ZY, XZ.
    long plus = 0, minus = 0;
    for (size_t i = 0; i < x_.size(); i++) {
        uint64_t x1 = x_[i], z1 = z_[i], x2 = other.x_[i], z2 = other.z_[i];
        plus += std::popcount((x1 & ~z1) & (x2 & z2));   // X*Y
        plus += std::popcount((x1 & z1) & (~x2 & z2));   // Y*Z
        plus += std::popcount((~x1 & z1) & (x2 & ~z2));  // Z*X
        minus += std::popcount((x1 & z1) & (x2 & ~z2));  // Y*X
        minus += std::popcount((~x1 & z1) & (x2 & z2));  // Z*Y
        minus += std::popcount((x1 & ~z1) & (~x2 & z2)); // X*Z
        x_[i] ^= x2;
        z_[i] ^= z2;
    }
    long e = ((plus - minus) % 4 + 4) % 4;
    if (e == 1 || e == 3) throw std::logic_error("pauli product has imaginary phase");
    if (e == 2) neg_ = !neg_;
    if (other.neg_) neg_ = !neg_;
    return *this;
}

std::vector<uint32_t> PauliString::support() const {
    std::vector<uint32_t> s;
    for (size_t q = 0; q < n_; q++)
        if (x(q) || z(q)) s.push_back(static_cast<uint32_t>(q));
    return s;
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(n_ + 1);
    s.push_back(neg_ ? '-' : '+');
    for (size_t q = 0; q < n_; q++) s.push_back(letter(q));
    return s;
}

bool PauliString::operator==(const PauliString& other) const {
    return n_ == other.n_ && neg_ == other.neg_ && x_ == other.x_ && z_ == other.z_;
}

}  // namespace mfqec
