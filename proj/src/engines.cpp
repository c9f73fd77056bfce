#include "mfqec/engines.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace mfqec {

namespace {

const CodeSpec& code_by_label(const std::string& label) {
    static const CodeSpec steane = steane_spec();
    static const CodeSpec tetra = tetrahedral_spec();
    static const CodeSpec c832 = code832_spec();
    if (label == "steane") return steane;
    if (label == "tetra") return tetra;
    if (label == "code832") return c832;
    throw std::invalid_argument("unknown code label " + label);
}

const DecoderTable& decoder_by_label(const std::string& label) {
    static const DecoderTable steane = build_decoder_table(code_by_label("steane"));
    static const DecoderTable tetra = build_decoder_table(code_by_label("tetra"));
    static const DecoderTable c832 = build_decoder_table(code_by_label("code832"));
    if (label == "steane") return steane;
    if (label == "tetra") return tetra;
    if (label == "code832") return c832;
    throw std::invalid_argument("unknown code label " + label);
}

PauliString embed(const PauliString& p, const std::vector<uint32_t>& map, size_t n_total) {
    PauliString q(n_total);
    for (size_t i = 0; i < p.num_qubits(); i++) {
        if (p.x(i)) q.set_x(map[i], true);
        if (p.z(i)) q.set_z(map[i], true);
    }
    q.set_negative(p.negative());
    return q;
}

// Gaussian-elimination CSS encoder: H on pivots of the RREF'd X rows, then
// CNOT fanouts. Produces the +1 joint eigenstate of the X rows and of every
// Z operator orthogonal to them.
void prepare_css_state(StabilizerTableau& tab, const std::vector<PauliString>& x_rows,
                       const std::vector<uint32_t>& map) {
    size_t n = x_rows.empty() ? 0 : x_rows[0].num_qubits();
    std::vector<std::vector<bool>> rows;
    for (const auto& r : x_rows) {
        std::vector<bool> v(n, false);
        for (size_t q = 0; q < n; q++) v[q] = r.x(q);
        rows.push_back(v);
    }
    // RREF
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < rows.size(); col++) {
        size_t pivot = rows.size();
        for (size_t r = rank; r < rows.size(); r++)
            if (rows[r][col]) { pivot = r; break; }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r][col])
                for (size_t q = 0; q < n; q++) rows[r][q] = rows[r][q] != rows[rank][q];
        }
        pivots.push_back(col);
        rank++;
    }
    rows.resize(rank);
    for (size_t r = 0; r < rank; r++) {
        tab.h(map[pivots[r]]);
        for (size_t q = 0; q < n; q++)
            if (q != pivots[r] && rows[r][q]) tab.cnot(map[pivots[r]], map[q]);
    }
}

void prepare_input(StabilizerTableau& tab, const Protocol& proto, LogicalInput input) {
    if (proto.input_code == "none") return;
    const CodeSpec& code = code_by_label(proto.input_code);
    std::vector<PauliString> x_rows = code.x_generators;
    if (input == LogicalInput::Plus)
        for (const auto& lx : code.logical_x) x_rows.push_back(lx);
    prepare_css_state(tab, x_rows, proto.in_data);
}

struct FaultPlan {
    // explicit mode
    const std::vector<std::pair<size_t, size_t>>* explicit_faults = nullptr;
    // stochastic mode
    const NoiseModel* model = nullptr;
    TrajectoryRng* rng = nullptr;
};

struct ExecOutcome {
    std::map<size_t, bool> meas;  // MEASZ results by op index
    bool aborted = false;
    std::string abort_reason;
};

ExecOutcome execute_circuit(StabilizerTableau& tab, const Protocol& proto, const FaultPlan& plan,
                            bool alt_branch, TrajectoryRng* mrng) {
    ExecOutcome out;
    const Circuit& c = proto.circuit;
    auto rand_bit = [&]() -> bool {
        if (mrng) return mrng->next_bit();
        return alt_branch;  // canonical branch choice for deterministic runs
    };
    for (size_t i = 0; i < c.ops().size(); i++) {
        const GateOp& op = c.ops()[i];
        // faults for this op
        PauliString fault = PauliString::identity(c.num_qubits());
        bool have_fault = false;
        if (plan.explicit_faults) {
            for (auto [idx, variant] : *plan.explicit_faults) {
                if (idx == i) {
                    fault.mul(c.fault_pauli({i, op.fault_class}, variant));
                    have_fault = true;
                }
            }
        } else if (plan.model && plan.rng) {
            if (auto f = sample_fault(*plan.model, c, {i, op.fault_class}, *plan.rng)) {
                fault = *f;
                have_fault = true;
            }
        }
        bool fault_before = op.kind == GateKind::MEASZ;  // meas faults flip before readout
        if (have_fault && fault_before) tab.apply_pauli(fault);
        try {
            switch (op.kind) {
                case GateKind::Init0: tab.reset(op.qubits[0], rand_bit); break;
                case GateKind::RESET: tab.reset(op.qubits[0], rand_bit); break;
                case GateKind::H: tab.h(op.qubits[0]); break;
                case GateKind::S: tab.s(op.qubits[0]); break;
                case GateKind::Sdg: tab.sdg(op.qubits[0]); break;
                case GateKind::X: tab.x(op.qubits[0]); break;
                case GateKind::Y: tab.y(op.qubits[0]); break;
                case GateKind::Z: tab.z(op.qubits[0]); break;
                case GateKind::T: case GateKind::Tdg:
                    throw std::logic_error("T gates are not tableau-simulable");
                case GateKind::CNOT: tab.cnot(op.qubits[0], op.qubits[1]); break;
                case GateKind::CZ: tab.cz(op.qubits[0], op.qubits[1]); break;
                case GateKind::TOFFOLI:
                    tab.toffoli(op.qubits[0], op.qubits[1], op.qubits[2]);
                    break;
                case GateKind::MEASZ:
                    out.meas[i] = tab.measure_z(op.qubits[0], rand_bit);
                    break;
                case GateKind::IDLE: break;
            }
        } catch (const NonDeterministicToffoliControl& e) {
            out.aborted = true;
            out.abort_reason = e.what();
            return out;
        }
        if (have_fault && !fault_before) tab.apply_pauli(fault);
    }
    return out;
}

uint8_t mb_syndrome_from_rounds(const Protocol& proto, const ExecOutcome& exec) {
    // Majority vote per bit over the extraction rounds; rounds whose flags
    // fired are excluded for all bits (falling back to the remaining rounds,
    // last round on ties).
    std::vector<bool> usable;
    for (const auto& round : proto.mb_rounds) {
        bool flagged = false;
        for (size_t f : round.flag_meas)
            if (exec.meas.count(f) && exec.meas.at(f)) flagged = true;
        usable.push_back(!flagged);
    }
    uint8_t syn = 0;
    for (int bit = 0; bit < 3; bit++) {
        int ones = 0, total = 0;
        int last = 0;
        for (size_t r = 0; r < proto.mb_rounds.size(); r++) {
            if (!usable[r]) continue;
            int v = 0;
            for (size_t m : proto.mb_rounds[r].syndrome_meas[bit])
                if (exec.meas.count(m)) v ^= exec.meas.at(m) ? 1 : 0;
            ones += v;
            total++;
            last = v;
        }
        int value;
        if (total == 0) {
            // all rounds flagged; use the final round regardless
            int v = 0;
            for (size_t m : proto.mb_rounds.back().syndrome_meas[bit])
                if (exec.meas.count(m)) v ^= exec.meas.at(m) ? 1 : 0;
            value = v;
        } else if (2 * ones == total) {
            value = last;
        } else {
            value = (2 * ones > total) ? 1 : 0;
        }
        if (value) syn |= 1 << bit;
    }
    return syn;
}

// Residual classification against the ideal output state for distance-2
// outputs: the init is sound if the leftover error is equivalent to weight
// <= 1 separately in X and Z, or is an X class aligned with the read axis.
bool residual_check_832(StabilizerTableau& tab, const Protocol& proto) {
    const CodeSpec& code = code_by_label("code832");
    std::vector<PauliString> state_gens;  // stabilizers of ideal |+++>_L
    for (const auto& g : code.x_generators) state_gens.push_back(g);
    for (const auto& g : code.logical_x) state_gens.push_back(g);
    for (const auto& g : code.z_generators) state_gens.push_back(g);
    std::vector<bool> flipped;
    for (const auto& g : state_gens) {
        ZValue v = tab.pauli_expectation(embed(g, proto.out_data, tab.num_qubits()));
        if (!v.deterministic) return false;
        flipped.push_back(v.value);
    }
    // X-type state stabilizers (first 4) detect Z residuals; Z-type detect X.
    auto min_class = [&](bool x_residual) {
        uint32_t best = 9;
        uint32_t best_mask = 0;
        for (uint32_t mask = 0; mask < 256; mask++) {
            bool ok = true;
            for (size_t gi = 0; gi < state_gens.size() && ok; gi++) {
                const PauliString& g = state_gens[gi];
                bool g_is_x = gi < 4;
                if (g_is_x == x_residual) continue;  // same type commutes
                int par = 0;
                for (uint32_t q = 0; q < 8; q++)
                    if ((mask >> q) & 1) par ^= x_residual ? g.z(q) : g.x(q);
                if (bool(par) != flipped[gi]) ok = false;
            }
            if (ok && uint32_t(std::popcount(mask)) < best) {
                best = std::popcount(mask);
                best_mask = mask;
            }
        }
        return std::pair<uint32_t, uint32_t>(best, best_mask);
    };
    auto [zw, zmask] = min_class(false);
    auto [xw, xmask] = min_class(true);
    if (zw > 1) return false;
    if (xw <= 1) return true;
    if (xw == 2) {
        // benign iff the pair does not straddle the read axis of this block
        uint32_t a = std::countr_zero(xmask);
        uint32_t b = 31 - std::countl_zero(xmask);
        uint32_t delta = a ^ b;
        return ((delta >> proto.read_axis) & 1) == 0;
    }
    return false;
}

TrajectoryResult finish_trajectory(StabilizerTableau& tab, const Protocol& proto,
                                   LogicalInput input, const ExecOutcome& exec) {
    TrajectoryResult res;
    if (exec.aborted) {
        res.aborted = true;
        res.abort_reason = exec.abort_reason;
        return res;
    }
    // Classical LUT feedback for measurement-based protocols.
    if (proto.measurement_based) {
        uint8_t syn = mb_syndrome_from_rounds(proto, exec);
        SwitchLUT lut(proto.mb_direction);
        PauliString fb = lut.data_restricted_entry(syn);
        // LUT operators live on the 15-qubit tetra layout; both directions
        // restrict to qubits 0..6, which in_data/out_data share.
        PauliString fb7(7);
        for (size_t q = 0; q < 7; q++) {
            fb7.set_x(q, fb.x(q));
            fb7.set_z(q, fb.z(q));
        }
        std::vector<uint32_t> face(proto.out_data.begin(), proto.out_data.begin() + 7);
        tab.apply_pauli(embed(fb7, face, tab.num_qubits()));
    }
    if (proto.output_code == "code832") {
        res.failed = !residual_check_832(tab, proto);
        return res;
    }
    const CodeSpec& code = code_by_label(proto.output_code);
    const DecoderTable& dec = decoder_by_label(proto.output_code);
    std::vector<bool> x_syn, z_syn;
    for (const auto& g : code.x_generators) {
        ZValue v = tab.pauli_expectation(embed(g, proto.out_data, tab.num_qubits()));
        if (!v.deterministic) {
            res.failed = true;
            return res;
        }
        x_syn.push_back(v.value);
    }
    for (const auto& g : code.z_generators) {
        ZValue v = tab.pauli_expectation(embed(g, proto.out_data, tab.num_qubits()));
        if (!v.deterministic) {
            res.failed = true;
            return res;
        }
        z_syn.push_back(v.value);
    }
    PauliString corr = dec.correct(code, x_syn, z_syn);
    tab.apply_pauli(embed(corr, proto.out_data, tab.num_qubits()));
    bool track_x = (input == LogicalInput::Plus) != proto.swaps_xz;
    const PauliString& logical = track_x ? code.logical_x[0] : code.logical_z[0];
    ZValue v = tab.pauli_expectation(embed(logical, proto.out_data, tab.num_qubits()));
    res.failed = !(v.deterministic && v.value == false);
    return res;
}

}  // namespace

TrajectoryResult run_with_faults(const Protocol& proto,
                                 const std::vector<std::pair<size_t, size_t>>& faults,
                                 LogicalInput input, bool alt_branch) {
    StabilizerTableau tab(proto.circuit.num_qubits());
    prepare_input(tab, proto, input);
    FaultPlan plan;
    plan.explicit_faults = &faults;
    ExecOutcome exec = execute_circuit(tab, proto, plan, alt_branch, nullptr);
    return finish_trajectory(tab, proto, input, exec);
}

TrajectoryResult run_trajectory(const Protocol& proto, const NoiseModel& model,
                                LogicalInput input, TrajectoryRng& rng) {
    StabilizerTableau tab(proto.circuit.num_qubits());
    prepare_input(tab, proto, input);
    FaultPlan plan;
    plan.model = &model;
    plan.rng = &rng;
    ExecOutcome exec = execute_circuit(tab, proto, plan, false, &rng);
    return finish_trajectory(tab, proto, input, exec);
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("MFQEC_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

namespace {

RateEstimate wilson(uint64_t shots, uint64_t failures, uint64_t aborts) {
    RateEstimate e;
    e.shots = shots;
    e.failures = failures;
    e.aborts = aborts;
    if (shots == 0) return e;
    double n = double(shots), f = double(failures);
    double p = f / n;
    double z = 1.959963984540054;  // 95%
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    e.rate = p;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    return e;
}

}  // namespace

RateEstimate estimate_failure_rate(const Protocol& proto, const NoiseModel& model,
                                   uint64_t shots, LogicalInput input, uint64_t seed,
                                   unsigned workers) {
    if (workers == 0) workers = default_worker_count();
    // Fault-free trajectories cannot fail (codespace contract, tested), so
    // sample the fault plan first and only simulate when something fired.
    const Circuit& c = proto.circuit;
    std::vector<double> rates(c.ops().size());
    bool any_rate = false;
    for (size_t i = 0; i < c.ops().size(); i++) {
        rates[i] = model.rate(c.ops()[i].fault_class);
        if (rates[i] > 0) any_rate = true;
    }
    std::atomic<uint64_t> fail_count{0}, abort_count{0};
    auto work = [&](unsigned w) {
        uint64_t local_fail = 0, local_abort = 0;
        for (uint64_t t = w; t < shots; t += workers) {
            TrajectoryRng rng(seed, t);
            if (!any_rate) continue;
            bool fired = false;
            std::vector<std::pair<size_t, size_t>> faults;
            for (size_t i = 0; i < c.ops().size(); i++) {
                if (rates[i] <= 0) continue;
                if (rng.next_u01() < rates[i]) {
                    size_t variants = fault_class_variants(c.ops()[i].fault_class);
                    size_t v = variants == 1 ? 0 : rng.next_below(variants);
                    faults.push_back({i, v});
                    fired = true;
                }
            }
            if (!fired) continue;
            StabilizerTableau tab(c.num_qubits());
            prepare_input(tab, proto, input);
            FaultPlan plan;
            plan.explicit_faults = &faults;
            ExecOutcome exec = execute_circuit(tab, proto, plan, false, &rng);
            TrajectoryResult r = finish_trajectory(tab, proto, input, exec);
            if (r.aborted) local_abort++;
            else if (r.failed) local_fail++;
        }
        fail_count += local_fail;
        abort_count += local_abort;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    return wilson(shots, fail_count.load(), abort_count.load());
}

RateEstimate estimate_failure_rate_averaged(const Protocol& proto, const NoiseModel& model,
                                            uint64_t shots, uint64_t seed, unsigned workers) {
    RateEstimate a = estimate_failure_rate(proto, model, shots / 2, LogicalInput::Zero, seed, workers);
    RateEstimate b = estimate_failure_rate(proto, model, shots - shots / 2, LogicalInput::Plus,
                                           seed ^ 0x517cc1b727220a95ULL, workers);
    uint64_t shots_total = a.shots + b.shots;
    uint64_t fails = a.failures + b.failures;
    RateEstimate e = wilson(shots_total, fails, a.aborts + b.aborts);
    return e;
}

FtReport ft_check_single_faults(const Protocol& proto) {
    FtReport rep;
    auto locs = proto.circuit.enumerate_fault_locations(
        {FaultClass::SingleQubit, FaultClass::TwoQubit, FaultClass::Toffoli, FaultClass::Init,
         FaultClass::Meas, FaultClass::IdleMeas});
    rep.total_locations = locs.size();
    std::vector<LogicalInput> inputs;
    if (proto.input_code == "none") inputs = {LogicalInput::Zero};
    else inputs = {LogicalInput::Zero, LogicalInput::Plus};
    for (const auto& loc : locs) {
        size_t variants = fault_class_variants(loc.fault_class);
        for (size_t v = 0; v < variants; v++) {
            for (LogicalInput in : inputs) {
                for (bool branch : {false, true}) {
                    rep.total_runs++;
                    std::vector<std::pair<size_t, size_t>> faults{{loc.op_index, v}};
                    TrajectoryResult r = run_with_faults(proto, faults, in, branch);
                    if (r.failed || r.aborted) {
                        rep.failures.push_back({loc.op_index, loc.fault_class, v, in});
                        break;  // one branch failing is enough to record
                    }
                }
            }
        }
    }
    return rep;
}

CountReport count_weight2_faults(const Protocol& proto, PairClass pair_class, LogicalInput input,
                                 unsigned workers) {
    if (workers == 0) workers = default_worker_count();
    std::vector<FaultLocation> first, second;
    bool unordered;
    switch (pair_class) {
        case PairClass::TwoTwo:
            first = proto.circuit.enumerate_fault_locations({FaultClass::TwoQubit});
            second = first;
            unordered = true;
            break;
        case PairClass::TwoToff:
            first = proto.circuit.enumerate_fault_locations({FaultClass::TwoQubit});
            second = proto.circuit.enumerate_fault_locations({FaultClass::Toffoli});
            unordered = false;
            break;
        case PairClass::ToffToff:
            first = proto.circuit.enumerate_fault_locations({FaultClass::Toffoli});
            second = first;
            unordered = true;
            break;
    }
    std::atomic<uint64_t> raw{0}, total{0};
    auto work = [&](unsigned w) {
        uint64_t local_raw = 0, local_total = 0;
        for (size_t i = w; i < first.size(); i += workers) {
            size_t jstart = unordered ? i + 1 : 0;
            for (size_t j = jstart; j < second.size(); j++) {
                size_t va = fault_class_variants(first[i].fault_class);
                size_t vb = fault_class_variants(second[j].fault_class);
                for (size_t a = 0; a < va; a++) {
                    for (size_t b = 0; b < vb; b++) {
                        local_total++;
                        std::vector<std::pair<size_t, size_t>> faults{
                            {first[i].op_index, a}, {second[j].op_index, b}};
                        TrajectoryResult r = run_with_faults(proto, faults, input, false);
                        if (r.failed || r.aborted) local_raw++;
                    }
                }
            }
        }
        raw += local_raw;
        total += local_total;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
    CountReport rep;
    rep.pair_class = pair_class;
    rep.input = input;
    rep.raw_failures = raw.load();
    rep.total_pairs = total.load();
    double denom = 1;
    if (pair_class == PairClass::TwoTwo) denom = 225;
    else if (pair_class == PairClass::TwoToff) denom = 15;
    rep.normalized = double(rep.raw_failures) / denom;
    return rep;
}

std::string FtReport::to_json(const Protocol& p) const {
    std::ostringstream os;
    os << "{\"protocol\":\"" << p.name << "\",\"total_locations\":" << total_locations
       << ",\"total_runs\":" << total_runs << ",\"certified\":" << (certified() ? "true" : "false")
       << ",\"failures\":[";
    for (size_t i = 0; i < failures.size(); i++) {
        if (i) os << ",";
        os << "{\"op\":" << failures[i].op_index << ",\"class\":\""
           << fault_class_name(failures[i].fault_class) << "\",\"variant\":" << failures[i].variant
           << ",\"input\":\"" << (failures[i].input == LogicalInput::Zero ? "zero" : "plus")
           << "\"}";
    }
    os << "]}";
    return os.str();
}

std::string RateEstimate::to_json() const {
    std::ostringstream os;
    os << "{\"rate\":" << rate << ",\"ci_low\":" << ci_low << ",\"ci_high\":" << ci_high
       << ",\"shots\":" << shots << ",\"failures\":" << failures << ",\"aborts\":" << aborts << "}";
    return os.str();
}

std::string CountReport::to_json() const {
    const char* cls = pair_class == PairClass::TwoTwo ? "2,2"
                      : pair_class == PairClass::TwoToff ? "2,toff" : "toff,toff";
    std::ostringstream os;
    os << "{\"pair_class\":\"" << cls << "\",\"raw_failures\":" << raw_failures
       << ",\"total_pairs\":" << total_pairs << ",\"normalized\":" << normalized
       << ",\"input\":\"" << (input == LogicalInput::Zero ? "zero" : "plus") << "\"}";
    return os.str();
}

}  // namespace mfqec
