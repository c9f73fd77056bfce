#include "mfqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mfqec {

namespace {

template <size_t N>
PauliString xs(uint32_t n, const std::array<uint32_t, N>& qs) {
    return PauliString::x_on(n, std::span<const uint32_t>(qs.data(), qs.size()));
}
template <size_t N>
PauliString zs(uint32_t n, const std::array<uint32_t, N>& qs) {
    return PauliString::z_on(n, std::span<const uint32_t>(qs.data(), qs.size()));
}

std::vector<uint64_t> pauli_bits(const PauliString& p) {
    size_t n = p.num_qubits();
    size_t words = (2 * n + 63) / 64;
    std::vector<uint64_t> v(words, 0);
    for (size_t q = 0; q < n; q++) {
        if (p.x(q)) v[q >> 6] |= uint64_t{1} << (q & 63);
        if (p.z(q)) v[(n + q) >> 6] |= uint64_t{1} << ((n + q) & 63);
    }
    return v;
}

}  // namespace

std::vector<PauliString> CodeSpec::generators() const {
    std::vector<PauliString> g = x_generators;
    g.insert(g.end(), z_generators.begin(), z_generators.end());
    return g;
}

std::string CodeSpec::to_json() const {
    auto supports = [](const std::vector<PauliString>& ps) {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < ps.size(); i++) {
            if (i) os << ",";
            os << "{\"sign\":" << (ps[i].negative() ? -1 : 1) << ",\"support\":[";
            auto s = ps[i].support();
            for (size_t j = 0; j < s.size(); j++) {
                if (j) os << ",";
                os << s[j];
            }
            os << "]}";
        }
        os << "]";
        return os.str();
    };
    std::ostringstream os;
    os << "{\"label\":\"" << label << "\",\"n\":" << n << ",\"k\":" << k << ",\"d\":" << d
       << ",\"x_generators\":" << supports(x_generators)
       << ",\"z_generators\":" << supports(z_generators)
       << ",\"logical_x\":" << supports(logical_x)
       << ",\"logical_z\":" << supports(logical_z) << "}";
    return os.str();
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ValidationReport::to_json() const {
    std::ostringstream os;
    os << "{\"all_pass\":" << (all_pass() ? "true" : "false") << ",\"checks\":[";
    for (size_t i = 0; i < checks.size(); i++) {
        if (i) os << ",";
        os << "{\"name\":\"" << checks[i].name << "\",\"pass\":" << (checks[i].pass ? "true" : "false")
           << ",\"detail\":\"" << checks[i].detail << "\"}";
    }
    os << "]}";
    return os.str();
}

CodeSpec steane_spec() {
    CodeSpec c;
    c.label = "steane";
    c.n = 7; c.k = 1; c.d = 3;
    c.x_generators = {xs(7, tetra::kRedPlaquette), xs(7, tetra::kBluePlaquette),
                      xs(7, tetra::kGreenPlaquette)};
    c.z_generators = {zs(7, tetra::kRedPlaquette), zs(7, tetra::kBluePlaquette),
                      zs(7, tetra::kGreenPlaquette)};
    c.logical_x = {PauliString::from_str("XXXXXXX")};
    c.logical_z = {PauliString::from_str("ZZZZZZZ")};
    return c;
}

std::array<uint32_t, 15> solve_tetra_labeling() {
    // Standard construction: qubit per nonzero v in F_2^4, index(v) = value-1
    // with value = v1 + 2 v2 + 4 v3 + 8 v4. Cells are {v_i = 1}.
    auto bit = [](uint32_t value, int i) { return (value >> (i - 1)) & 1u; };

    // Constraint targets in final labels.
    const std::set<uint32_t> plaq[3] = {{0, 1, 2, 3}, {1, 2, 4, 5}, {2, 3, 5, 6}};
    const std::set<uint32_t> lut_faces[3] = {{2, 5, 11, 13}, {2, 3, 12, 13}, {1, 2, 13, 14}};

    std::array<std::set<uint32_t>, 16> cand;  // by value 1..15
    for (uint32_t v = 1; v <= 15; v++) {
        if (bit(v, 4)) for (uint32_t l = 7; l <= 14; l++) cand[v].insert(l);
        else for (uint32_t l = 0; l <= 6; l++) cand[v].insert(l);
    }
    // Face part: membership of v in cell_i (i=1..3) must match membership in
    // the corresponding plaquette. LUT faces pin the cross-cell interfaces:
    // face_{23} -> {2,5,11,13}, face_{13} -> {2,3,12,13}, face_{12} -> {1,2,13,14}.
    const int face_pairs[3][2] = {{2, 3}, {1, 3}, {1, 2}};
    for (uint32_t v = 1; v <= 15; v++) {
        std::set<uint32_t> keep;
        for (uint32_t l : cand[v]) {
            bool ok = true;
            if (!bit(v, 4)) {
                for (int i = 0; i < 3 && ok; i++)
                    if (bool(bit(v, i + 1)) != bool(plaq[i].count(l))) ok = false;
            }
            for (int f = 0; f < 3 && ok; f++) {
                bool in_face = bit(v, face_pairs[f][0]) && bit(v, face_pairs[f][1]);
                if (in_face != bool(lut_faces[f].count(l))) ok = false;
            }
            if (ok) keep.insert(l);
        }
        if (keep.empty()) throw std::runtime_error("tetra labeling constraints unsatisfiable");
        cand[v] = keep;
    }
    // Backtracking over values in ascending order, labels in ascending order;
    // first complete assignment is the lexicographically smallest.
    std::array<uint32_t, 15> out{};
    std::array<bool, 15> used{};
    std::vector<uint32_t> order;
    for (uint32_t v = 1; v <= 15; v++) order.push_back(v);
    std::function<bool(size_t)> rec = [&](size_t pos) {
        if (pos == order.size()) return true;
        uint32_t v = order[pos];
        for (uint32_t l : cand[v]) {
            if (used[l]) continue;
            used[l] = true;
            out[v - 1] = l;
            if (rec(pos + 1)) return true;
            used[l] = false;
        }
        return false;
    };
    if (!rec(0)) throw std::runtime_error("no tetra labeling found");
    return out;
}

CodeSpec tetrahedral_spec() {
    CodeSpec c;
    c.label = "tetra";
    c.n = 15; c.k = 1; c.d = 3;
    c.x_generators = {xs(15, tetra::kRedCell), xs(15, tetra::kBlueCell),
                      xs(15, tetra::kGreenCell), xs(15, tetra::kYellowCell)};
    c.z_generators = {zs(15, tetra::kRedCell), zs(15, tetra::kBlueCell),
                      zs(15, tetra::kGreenCell), zs(15, tetra::kYellowCell),
                      zs(15, tetra::kFaceRB), zs(15, tetra::kFaceRG), zs(15, tetra::kFaceBG),
                      zs(15, tetra::kFaceRY), zs(15, tetra::kFaceBY), zs(15, tetra::kFaceGY)};
    std::array<uint32_t, 7> face07{0, 1, 2, 3, 4, 5, 6};
    c.logical_x = {xs(15, face07)};
    c.logical_z = {zs(15, face07)};
    return c;
}

CodeSpec code832_spec() {
    // Cube vertices 0..7 with coordinate bits (b1,b2,b3) = (i&1, i>>1&1, i>>2&1).
    CodeSpec c;
    c.label = "code832";
    c.n = 8; c.k = 3; c.d = 2;
    std::array<uint32_t, 8> all{0, 1, 2, 3, 4, 5, 6, 7};
    std::array<uint32_t, 4> f1{1, 3, 5, 7}, f2{2, 3, 6, 7}, f3{4, 5, 6, 7};
    c.x_generators = {xs(8, all)};
    c.z_generators = {zs(8, all), zs(8, f1), zs(8, f2), zs(8, f3)};
    c.logical_x = {xs(8, f1), xs(8, f2), xs(8, f3)};
    std::array<uint32_t, 2> e1{0, 1}, e2{0, 2}, e3{0, 4};
    c.logical_z = {zs(8, e1), zs(8, e2), zs(8, e3)};
    return c;
}

size_t gf2_rank(std::vector<std::vector<uint64_t>> rows, size_t bits) {
    size_t rank = 0;
    size_t words = (bits + 63) / 64;
    for (size_t col = 0; col < bits; col++) {
        size_t w = col >> 6;
        uint64_t m = uint64_t{1} << (col & 63);
        size_t pivot = rows.size();
        for (size_t r = rank; r < rows.size(); r++)
            if (rows[r].size() > w && (rows[r][w] & m)) { pivot = r; break; }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r].size() > w && (rows[r][w] & m))
                for (size_t i = 0; i < words; i++) rows[r][i] ^= rows[rank][i];
        }
        rank++;
        if (rank == rows.size()) break;
    }
    return rank;
}

bool in_pauli_group(const PauliString& p, const std::vector<PauliString>& gens) {
    size_t bits = 2 * p.num_qubits();
    std::vector<std::vector<uint64_t>> rows;
    for (const auto& g : gens) rows.push_back(pauli_bits(g));
    size_t base = gf2_rank(rows, bits);
    rows.push_back(pauli_bits(p));
    return gf2_rank(rows, bits) == base;
}

ValidationReport validate_code(const CodeSpec& spec) {
    ValidationReport rep;
    auto gens = spec.generators();
    bool comm = true;
    for (size_t i = 0; i < gens.size() && comm; i++)
        for (size_t j = i + 1; j < gens.size(); j++)
            if (!gens[i].commutes_with(gens[j])) { comm = false; break; }
    rep.checks.push_back({"generators_commute", comm, ""});

    std::vector<std::vector<uint64_t>> rows;
    for (const auto& g : gens) rows.push_back(pauli_bits(g));
    size_t rank = gf2_rank(rows, 2 * spec.n);
    rep.checks.push_back({"generator_rank", rank == spec.n - spec.k,
                          "rank=" + std::to_string(rank)});

    bool logicals_ok = spec.logical_x.size() == spec.k && spec.logical_z.size() == spec.k;
    if (logicals_ok) {
        for (size_t i = 0; i < spec.k; i++) {
            for (const auto& g : gens) {
                if (!spec.logical_x[i].commutes_with(g) || !spec.logical_z[i].commutes_with(g))
                    logicals_ok = false;
            }
            for (size_t j = 0; j < spec.k; j++) {
                bool want_anti = (i == j);
                if (spec.logical_x[i].commutes_with(spec.logical_z[j]) == want_anti)
                    logicals_ok = false;
                if (i != j) {
                    if (!spec.logical_x[i].commutes_with(spec.logical_x[j])) logicals_ok = false;
                    if (!spec.logical_z[i].commutes_with(spec.logical_z[j])) logicals_ok = false;
                }
            }
            if (in_pauli_group(spec.logical_x[i], gens)) logicals_ok = false;
            if (in_pauli_group(spec.logical_z[i], gens)) logicals_ok = false;
        }
    }
    rep.checks.push_back({"logical_pairs", logicals_ok, ""});

    uint32_t d = code_distance(spec);
    rep.checks.push_back({"distance", d == spec.d, "d=" + std::to_string(d)});
    return rep;
}

uint32_t code_distance(const CodeSpec& spec) {
    if (spec.n > 16) throw std::invalid_argument("code_distance limited to n <= 16");
    auto gens = spec.generators();
    // Minimum weight of a Pauli commuting with all generators but outside the group.
    for (uint32_t w = 1; w <= spec.n; w++) {
        // enumerate supports of weight w, letters X/Y/Z on each
        std::vector<uint32_t> idx(w);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            size_t combos = 1;
            for (uint32_t i = 0; i < w; i++) combos *= 3;
            for (size_t pat = 0; pat < combos; pat++) {
                PauliString p(spec.n);
                size_t t = pat;
                for (uint32_t i = 0; i < w; i++) {
                    static const char L[3] = {'X', 'Y', 'Z'};
                    char letter = L[t % 3];
                    t /= 3;
                    p.set_x(idx[i], letter != 'Z');
                    p.set_z(idx[i], letter != 'X');
                }
                bool commutes = true;
                for (const auto& g : gens)
                    if (!p.commutes_with(g)) { commutes = false; break; }
                if (!commutes) continue;
                if (!in_pauli_group(p, gens)) return w;
            }
            // next combination
            int i = static_cast<int>(w) - 1;
            while (i >= 0 && idx[i] == spec.n - w + i) i--;
            if (i < 0) break;
            idx[i]++;
            for (uint32_t j = i + 1; j < w; j++) idx[j] = idx[j - 1] + 1;
        }
    }
    return spec.n;
}

DecoderTable build_decoder_table(const CodeSpec& spec) {
    if (spec.n > 20) throw std::invalid_argument("decoder table limited to n <= 20");
    DecoderTable t;
    t.n = spec.n;
    auto build_side = [&](const std::vector<PauliString>& detectors, bool x_errors) {
        size_t bits = detectors.size();
        std::vector<uint32_t> table(size_t{1} << bits, UINT32_MAX);
        std::vector<uint32_t> weight(size_t{1} << bits, UINT32_MAX);
        // enumerate error masks in (weight, value) order via counting sort by weight
        for (uint32_t w = 0; w <= spec.n; w++) {
            for (uint64_t mask = 0; mask < (uint64_t{1} << spec.n); mask++) {
                if (std::popcount(mask) != static_cast<int>(w)) continue;
                size_t syn = 0;
                for (size_t b = 0; b < bits; b++) {
                    // anticommutation of error (pure X or pure Z on mask) with detector
                    const PauliString& det = detectors[b];
                    int par = 0;
                    for (uint32_t q = 0; q < spec.n; q++) {
                        if (!((mask >> q) & 1)) continue;
                        par ^= x_errors ? det.z(q) : det.x(q);
                    }
                    if (par) syn |= size_t{1} << b;
                }
                if (weight[syn] == UINT32_MAX) {
                    weight[syn] = w;
                    table[syn] = static_cast<uint32_t>(mask);
                }
            }
            if (std::all_of(weight.begin(), weight.end(),
                            [](uint32_t v) { return v != UINT32_MAX; }))
                break;
        }
        return table;
    };
    t.x_correction = build_side(spec.z_generators, true);
    t.z_correction = build_side(spec.x_generators, false);
    return t;
}

PauliString DecoderTable::correct(const CodeSpec& code, const std::vector<bool>& x_gen_syndrome,
                                  const std::vector<bool>& z_gen_syndrome) const {
    size_t sx = 0, sz = 0;
    for (size_t i = 0; i < z_gen_syndrome.size(); i++)
        if (z_gen_syndrome[i]) sx |= size_t{1} << i;
    for (size_t i = 0; i < x_gen_syndrome.size(); i++)
        if (x_gen_syndrome[i]) sz |= size_t{1} << i;
    PauliString p(code.n);
    uint32_t xmask = x_correction[sx];
    uint32_t zmask = z_correction[sz];
    for (uint32_t q = 0; q < code.n; q++) {
        if ((xmask >> q) & 1) p.set_x(q, true);
        if ((zmask >> q) & 1) p.set_z(q, true);
    }
    return p;
}

ValidationReport verify_subsystem_relation(const CodeSpec& steane, const CodeSpec& tetra) {
    ValidationReport rep;
    // Face operators of the gauge group: the six cell interfaces plus the three
    // boundary plaquettes, in both Pauli types.
    std::vector<std::vector<uint32_t>> faces = {
        {tetra::kFaceRB.begin(), tetra::kFaceRB.end()},
        {tetra::kFaceRG.begin(), tetra::kFaceRG.end()},
        {tetra::kFaceBG.begin(), tetra::kFaceBG.end()},
        {tetra::kFaceRY.begin(), tetra::kFaceRY.end()},
        {tetra::kFaceBY.begin(), tetra::kFaceBY.end()},
        {tetra::kFaceGY.begin(), tetra::kFaceGY.end()},
        {tetra::kRedPlaquette.begin(), tetra::kRedPlaquette.end()},
        {tetra::kBluePlaquette.begin(), tetra::kBluePlaquette.end()},
        {tetra::kGreenPlaquette.begin(), tetra::kGreenPlaquette.end()},
    };
    std::vector<PauliString> cells;
    for (const auto& cell : {tetra::kRedCell, tetra::kBlueCell, tetra::kGreenCell,
                             tetra::kYellowCell}) {
        cells.push_back(xs(15, cell));
        cells.push_back(zs(15, cell));
    }
    bool central = true;
    for (const auto& f : faces) {
        PauliString fx = PauliString::x_on(15, f);
        PauliString fz = PauliString::z_on(15, f);
        for (const auto& c : cells)
            if (!c.commutes_with(fx) || !c.commutes_with(fz)) central = false;
    }
    rep.checks.push_back({"cells_central_in_gauge_group", central, ""});

    // Both codes' stabilizer groups contain the cell group. The 2D code lives
    // on qubits 0..6; embed its generators by padding identity on 7..14.
    auto embed = [](const PauliString& p) {
        PauliString q(15);
        for (size_t i = 0; i < 7; i++) {
            q.set_x(i, p.x(i));
            q.set_z(i, p.z(i));
        }
        return q;
    };
    std::vector<PauliString> steane_gens15;
    for (const auto& g : steane.generators()) steane_gens15.push_back(embed(g));
    // Embedded 2D code additionally fixes the yellow cell ancilla block; the
    // cell group restricted to the 2D gauge is plaquettes times yellow ops, so
    // containment is checked against tetra directly and against steane with the
    // yellow cell generators adjoined (the 2D gauge presumes a fresh yellow cell).
    std::vector<PauliString> steane_plus_yellow = steane_gens15;
    steane_plus_yellow.push_back(xs(15, tetra::kYellowCell));
    steane_plus_yellow.push_back(zs(15, tetra::kYellowCell));
    std::array<uint32_t, 4> yf1{8, 12, 13, 14}, yf2{9, 11, 13, 14}, yf3{10, 11, 12, 13};
    steane_plus_yellow.push_back(xs(15, yf1));
    steane_plus_yellow.push_back(xs(15, yf2));
    steane_plus_yellow.push_back(xs(15, yf3));
    steane_plus_yellow.push_back(zs(15, yf1));
    steane_plus_yellow.push_back(zs(15, yf2));
    steane_plus_yellow.push_back(zs(15, yf3));
    bool tetra_contains = true, steane_contains = true;
    for (const auto& c : cells) {
        if (!in_pauli_group(c, tetra.generators())) tetra_contains = false;
        if (!in_pauli_group(c, steane_plus_yellow)) steane_contains = false;
    }
    rep.checks.push_back({"tetra_group_contains_cells", tetra_contains, ""});
    rep.checks.push_back({"steane_gauge_contains_cells", steane_contains, ""});

    // Steane X-plaquettes must NOT be in the 3D stabilizer group.
    bool not_member = true;
    for (const auto& plq : {tetra::kRedPlaquette, tetra::kBluePlaquette, tetra::kGreenPlaquette})
        if (in_pauli_group(xs(15, plq), tetra.generators())) not_member = false;
    rep.checks.push_back({"steane_x_plaquettes_outside_tetra_group", not_member, ""});

    // Logical operators agree on qubits 0..6.
    bool logicals_agree = embed(steane.logical_x[0]) == tetra.logical_x[0] &&
                          embed(steane.logical_z[0]) == tetra.logical_z[0];
    rep.checks.push_back({"logicals_agree_on_2d_support", logicals_agree, ""});
    return rep;
}

}  // namespace mfqec
