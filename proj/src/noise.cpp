#include "mfqec/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mfqec/dense.hpp"

namespace mfqec {

double NoiseModel::rate(FaultClass c) const {
    switch (c) {
        case FaultClass::SingleQubit: return p1;
        case FaultClass::TwoQubit: return p2;
        case FaultClass::Toffoli: return p_toff;
        case FaultClass::Init: return p_init;
        case FaultClass::Meas: return p_meas;
        case FaultClass::IdleMeas: return p_idle_meas;
        case FaultClass::None: return 0;
    }
    return 0;
}

bool NoiseModel::is_zero() const {
    return p1 == 0 && p2 == 0 && p_toff == 0 && p_init == 0 && p_meas == 0 && p_idle_meas == 0;
}

std::string NoiseModel::to_json() const {
    std::ostringstream os;
    os << "{\"p1\":" << p1 << ",\"p2\":" << p2 << ",\"p_toff\":" << p_toff
       << ",\"p_init\":" << p_init << ",\"p_meas\":" << p_meas
       << ",\"p_idle_meas\":" << p_idle_meas << "}";
    return os.str();
}

NoiseModel single_param_model(double p, double toffoli_slope) {
    if (p < 0 || p > 0.5) throw std::invalid_argument("p out of range [0, 0.5]");
    NoiseModel m;
    m.p2 = p;
    m.p1 = p / 10;
    m.p_init = p / 10;
    m.p_meas = p / 10;
    m.p_idle_meas = 0;
    m.p_toff = toffoli_slope * p;
    return m;
}

namespace {
uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

TrajectoryRng::TrajectoryRng(uint64_t seed, uint64_t trajectory)
    : state_(splitmix64(splitmix64(seed) ^ splitmix64(trajectory * 0xd1342543de82ef95ULL + 1))) {}

uint64_t TrajectoryRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double TrajectoryRng::next_u01() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

uint64_t TrajectoryRng::next_below(uint64_t n) {
    return static_cast<uint64_t>(next_u01() * static_cast<double>(n)) % n;
}

std::optional<PauliString> sample_fault(const NoiseModel& model, const Circuit& c,
                                        const FaultLocation& loc, TrajectoryRng& rng) {
    double p = model.rate(loc.fault_class);
    if (p <= 0) return std::nullopt;
    if (rng.next_u01() >= p) return std::nullopt;
    size_t variants = fault_class_variants(loc.fault_class);
    size_t v = variants == 1 ? 0 : rng.next_below(variants);
    return c.fault_pauli(loc, v);
}

Circuit decomposed_toffoli_circuit(bool reduced, bool second_gate) {
    // Standard 7-T decomposition; qubits: c1=0, c2=1, t=2 (+ c2'=3 when a
    // second gate sharing c1 and t follows).
    Circuit c;
    c.add_register("q", second_gate ? 4 : 3);
    auto add_one = [&](uint32_t c1, uint32_t c2, uint32_t t, bool red) {
        c.append(GateKind::H, {t});
        c.append(GateKind::CNOT, {c2, t});
        c.append(GateKind::Tdg, {t});
        c.append(GateKind::CNOT, {c1, t});
        c.append(GateKind::T, {t});
        c.append(GateKind::CNOT, {c2, t});
        c.append(GateKind::Tdg, {t});
        c.append(GateKind::CNOT, {c1, t});
        c.append(GateKind::T, {t});
        c.append(GateKind::H, {t});
        if (!red) {
            // control phase fixup, skippable when the controls are reset
            c.append(GateKind::T, {c2});
            c.append(GateKind::CNOT, {c1, c2});
            c.append(GateKind::T, {c1});
            c.append(GateKind::Tdg, {c2});
            c.append(GateKind::CNOT, {c1, c2});
        }
    };
    add_one(0, 1, 2, reduced);
    if (second_gate) add_one(0, 3, 2, reduced);
    return c;
}

namespace {

// One noisy dense run; returns final target bit.
bool run_dense_toffoli(const Circuit& circ, uint32_t n, uint64_t input, const NoiseModel& model,
                       TrajectoryRng& rng) {
    DenseState st(n);
    for (uint32_t q = 0; q < n; q++)
        if ((input >> q) & 1) st.x(q);
    auto u01 = [&]() { return rng.next_u01(); };
    for (size_t i = 0; i < circ.ops().size(); i++) {
        const GateOp& op = circ.ops()[i];
        switch (op.kind) {
            case GateKind::H: st.h(op.qubits[0]); break;
            case GateKind::S: st.s(op.qubits[0]); break;
            case GateKind::Sdg: st.sdg(op.qubits[0]); break;
            case GateKind::T: st.t(op.qubits[0]); break;
            case GateKind::Tdg: st.tdg(op.qubits[0]); break;
            case GateKind::X: st.x(op.qubits[0]); break;
            case GateKind::Y: st.y(op.qubits[0]); break;
            case GateKind::Z: st.z(op.qubits[0]); break;
            case GateKind::CNOT: st.cnot(op.qubits[0], op.qubits[1]); break;
            case GateKind::CZ: st.cz(op.qubits[0], op.qubits[1]); break;
            case GateKind::TOFFOLI: st.toffoli(op.qubits[0], op.qubits[1], op.qubits[2]); break;
            default: throw std::logic_error("unsupported gate in dense toffoli run");
        }
        FaultLocation loc{i, op.fault_class};
        if (auto f = sample_fault(model, circ, loc, rng)) st.apply_pauli(*f);
    }
    return st.measure_z(2, u01);
}

ToffoliCalibration calibrate_circuit(const Circuit& circ, uint32_t n, uint32_t n_controls,
                                     double p_max, uint64_t shots, uint64_t seed) {
    if (p_max <= 0 || p_max > 1e-2)
        throw std::invalid_argument("calibration wants the linear regime, p_max in (0, 1e-2]");
    std::vector<double> grid;
    for (int i = 1; i <= 4; i++) grid.push_back(p_max * i / 4.0);

    ToffoliCalibration out;
    uint64_t traj = 0;
    size_t inputs = size_t{1} << (n_controls + 1);
    for (uint64_t input = 0; input < inputs; input++) {
        // map input bits: controls + target onto qubit indices 0..n-1
        // (for the 2-toffoli case qubit 3 is the extra control)
        // least-significant bits: c1, c2, t, [c2']
        bool ideal_flip;
        {
            // noiseless expectation of the final target bit
            bool c1 = input & 1, c2 = (input >> 1) & 1, t = (input >> 2) & 1;
            bool target = t ^ (c1 && c2);
            if (n == 4) {
                bool c2b = (input >> 3) & 1;
                target = target ^ (c1 && c2b);
            }
            ideal_flip = target;
        }
        // least squares through origin: slope = sum(p*y)/sum(p^2)
        double spy = 0, spp = 0;
        for (double p : grid) {
            NoiseModel m = single_param_model(p, 0.0);
            m.p_toff = 0;
            uint64_t flips = 0;
            for (uint64_t s = 0; s < shots; s++) {
                TrajectoryRng rng(seed, traj++);
                bool bit = run_dense_toffoli(circ, n, input, m, rng);
                if (bit != ideal_flip) flips++;
            }
            double y = double(flips) / double(shots);
            spy += p * y;
            spp += p * p;
        }
        out.per_input_slopes.push_back(spy / spp);
    }
    double mean = 0;
    for (double s : out.per_input_slopes) mean += s;
    mean /= double(out.per_input_slopes.size());
    double var = 0;
    for (double s : out.per_input_slopes) var += (s - mean) * (s - mean);
    var /= double(out.per_input_slopes.size());
    out.slope = mean;
    out.stderr_slope = std::sqrt(var / double(out.per_input_slopes.size()));
    return out;
}

}  // namespace

ToffoliCalibration calibrate_toffoli(double p_max, uint64_t shots_per_point, uint64_t seed,
                                     bool reduced) {
    Circuit circ = decomposed_toffoli_circuit(reduced, false);
    return calibrate_circuit(circ, 3, 2, p_max, shots_per_point, seed);
}

ToffoliCalibration calibrate_two_toffolis(double p_max, uint64_t shots_per_point, uint64_t seed) {
    Circuit circ = decomposed_toffoli_circuit(false, true);
    return calibrate_circuit(circ, 4, 3, p_max, shots_per_point, seed);
}

std::string ToffoliCalibration::to_json() const {
    std::ostringstream os;
    os << "{\"slope\":" << slope << ",\"stderr\":" << stderr_slope << ",\"per_input\":[";
    for (size_t i = 0; i < per_input_slopes.size(); i++) {
        if (i) os << ",";
        os << per_input_slopes[i];
    }
    os << "]}";
    return os.str();
}

}  // namespace mfqec
