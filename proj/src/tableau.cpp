#include "mfqec/tableau.hpp"

#include <bit>

namespace mfqec {

StabilizerTableau::StabilizerTableau(size_t n_qubits) : n_(n_qubits) {
    if (n_ == 0) throw std::invalid_argument("tableau needs at least one qubit");
    words_ = (n_ + 63) / 64;
    rows_.assign(2 * n_, Row{std::vector<uint64_t>(words_, 0), std::vector<uint64_t>(words_, 0), false});
    for (size_t i = 0; i < n_; i++) {
        rows_[i].x[i >> 6] |= uint64_t{1} << (i & 63);          // destabilizer X_i
        rows_[n_ + i].z[i >> 6] |= uint64_t{1} << (i & 63);     // stabilizer Z_i
    }
}

void StabilizerTableau::rowsum(Row& h, const Row& i) const {
    long plus = 0, minus = 0;
    for (size_t w = 0; w < words_; w++) {
        uint64_t x1 = h.x[w], z1 = h.z[w], x2 = i.x[w], z2 = i.z[w];
        plus += std::popcount((x1 & ~z1) & (x2 & z2));
        plus += std::popcount((x1 & z1) & (~x2 & z2));
        plus += std::popcount((~x1 & z1) & (x2 & ~z2));
        minus += std::popcount((x1 & z1) & (x2 & ~z2));
        minus += std::popcount((~x1 & z1) & (x2 & z2));
        minus += std::popcount((x1 & ~z1) & (~x2 & z2));
        h.x[w] ^= x2;
        h.z[w] ^= z2;
    }
    long e = ((plus - minus) % 4 + 4) % 4;
    if (e == 1 || e == 3) throw std::logic_error("tableau rowsum produced imaginary phase");
    if (e == 2) h.r = !h.r;
    if (i.r) h.r = !h.r;
}

void StabilizerTableau::h(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_) {
        uint64_t xb = row.x[w] & m, zb = row.z[w] & m;
        if (xb && zb) row.r = !row.r;
        row.x[w] ^= xb ^ zb;
        row.z[w] ^= xb ^ zb;
    }
}

void StabilizerTableau::s(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_) {
        uint64_t xb = row.x[w] & m, zb = row.z[w] & m;
        if (xb && zb) row.r = !row.r;
        row.z[w] ^= xb;
    }
}

void StabilizerTableau::sdg(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_) {
        uint64_t xb = row.x[w] & m, zb = row.z[w] & m;
        if (xb && !zb) row.r = !row.r;  // X -> -Y
        row.z[w] ^= xb;
    }
}

void StabilizerTableau::x(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_)
        if (row.z[w] & m) row.r = !row.r;
}

void StabilizerTableau::z(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_)
        if (row.x[w] & m) row.r = !row.r;
}

void StabilizerTableau::y(size_t q) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (auto& row : rows_)
        if (bool(row.x[w] & m) != bool(row.z[w] & m)) row.r = !row.r;
}

void StabilizerTableau::cnot(size_t c, size_t t) {
    if (c == t) throw std::invalid_argument("cnot needs distinct qubits");
    size_t wc = c >> 6, wt = t >> 6;
    uint64_t mc = uint64_t{1} << (c & 63), mt = uint64_t{1} << (t & 63);
    for (auto& row : rows_) {
        bool xc = row.x[wc] & mc, zc = row.z[wc] & mc;
        bool xt = row.x[wt] & mt, zt = row.z[wt] & mt;
        if (xc && zt && (xt == zc)) row.r = !row.r;
        if (xc) row.x[wt] ^= mt;
        if (zt) row.z[wc] ^= mc;
    }
}

void StabilizerTableau::cz(size_t a, size_t b) {
    if (a == b) throw std::invalid_argument("cz needs distinct qubits");
    size_t wa = a >> 6, wb = b >> 6;
    uint64_t ma = uint64_t{1} << (a & 63), mb = uint64_t{1} << (b & 63);
    for (auto& row : rows_) {
        bool xa = row.x[wa] & ma, za = row.z[wa] & ma;
        bool xb = row.x[wb] & mb, zb = row.z[wb] & mb;
        if (xa && xb && !(za && zb)) row.r = !row.r;
        if (xb) row.z[wa] ^= ma;
        if (xa) row.z[wb] ^= mb;
    }
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
    if (p.num_qubits() != n_) throw std::invalid_argument("pauli size mismatch");
    for (size_t q = 0; q < n_; q++) {
        bool px = p.x(q), pz = p.z(q);
        if (px && pz) y(q);
        else if (px) x(q);
        else if (pz) z(q);
    }
}

ZValue StabilizerTableau::z_value(size_t q) const {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t i = n_; i < 2 * n_; i++)
        if (rows_[i].x[w] & m) return ZValue::random();
    Row scratch{std::vector<uint64_t>(words_, 0), std::vector<uint64_t>(words_, 0), false};
    for (size_t i = 0; i < n_; i++)
        if (rows_[i].x[w] & m) rowsum(scratch, rows_[n_ + i]);
    return ZValue::det(scratch.r);
}

bool StabilizerTableau::anticommutes(const Row& row, const PauliString& p) const {
    int par = 0;
    for (size_t w = 0; w < words_; w++)
        par ^= std::popcount(row.x[w] & p.z_word(w)) ^ std::popcount(row.z[w] & p.x_word(w));
    return par & 1;
}

ZValue StabilizerTableau::pauli_expectation(const PauliString& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("pauli size mismatch");
    for (size_t i = n_; i < 2 * n_; i++)
        if (anticommutes(rows_[i], p)) return ZValue::random();
    Row scratch{std::vector<uint64_t>(words_, 0), std::vector<uint64_t>(words_, 0), false};
    for (size_t i = 0; i < n_; i++)
        if (anticommutes(rows_[i], p)) rowsum(scratch, rows_[n_ + i]);
    // scratch must equal +/- p up to sign; verify support to catch misuse
    for (size_t w = 0; w < words_; w++)
        if (scratch.x[w] != p.x_word(w) || scratch.z[w] != p.z_word(w))
            throw std::logic_error("pauli_expectation: operator not in +/- stabilizer group span");
    return ZValue::det(scratch.r != p.negative());
}

void StabilizerTableau::toffoli(size_t c1, size_t c2, size_t target) {
    ZValue v1 = z_value(c1), v2 = z_value(c2);
    if (!v1.deterministic || !v2.deterministic)
        throw NonDeterministicToffoliControl(
            "toffoli control(s) not Z-deterministic: c1=" + std::to_string(c1) +
            " c2=" + std::to_string(c2));
    if (v1.value && v2.value) x(target);
}

bool StabilizerTableau::measure_z(size_t q, const std::function<bool()>& rand_bit) {
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    size_t p = 2 * n_;
    for (size_t i = n_; i < 2 * n_; i++) {
        if (rows_[i].x[w] & m) { p = i; break; }
    }
    if (p == 2 * n_) {
        return z_value(q).value;  // deterministic, state unchanged
    }
    bool outcome = rand_bit();
    for (size_t i = 0; i < 2 * n_; i++) {
        if (i != p && (rows_[i].x[w] & m)) rowsum(rows_[i], rows_[p]);
    }
    rows_[p - n_] = rows_[p];
    Row fresh{std::vector<uint64_t>(words_, 0), std::vector<uint64_t>(words_, 0), outcome};
    fresh.z[w] |= m;
    rows_[p] = fresh;
    return outcome;
}

void StabilizerTableau::reset(size_t q, const std::function<bool()>& rand_bit) {
    if (measure_z(q, rand_bit)) x(q);
}

PauliString StabilizerTableau::stabilizer_row(size_t i) const {
    PauliString p(n_);
    const Row& row = rows_[n_ + i];
    for (size_t q = 0; q < n_; q++) {
        p.set_x(q, xbit(row, q));
        p.set_z(q, zbit(row, q));
    }
    p.set_negative(row.r);
    return p;
}

}  // namespace mfqec
