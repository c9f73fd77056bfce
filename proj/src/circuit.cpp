#include "mfqec/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace mfqec {

namespace {

struct GateInfo {
    GateKind kind;
    const char* name;
    size_t arity;
    FaultClass fc;
};

constexpr std::array<GateInfo, 15> kGates{{
    {GateKind::Init0, "init0", 1, FaultClass::Init},
    {GateKind::H, "h", 1, FaultClass::SingleQubit},
    {GateKind::S, "s", 1, FaultClass::SingleQubit},
    {GateKind::Sdg, "sdg", 1, FaultClass::SingleQubit},
    {GateKind::X, "x", 1, FaultClass::SingleQubit},
    {GateKind::Y, "y", 1, FaultClass::SingleQubit},
    {GateKind::Z, "z", 1, FaultClass::SingleQubit},
    {GateKind::T, "t", 1, FaultClass::SingleQubit},
    {GateKind::Tdg, "tdg", 1, FaultClass::SingleQubit},
    {GateKind::CNOT, "cnot", 2, FaultClass::TwoQubit},
    {GateKind::CZ, "cz", 2, FaultClass::TwoQubit},
    {GateKind::TOFFOLI, "toffoli", 3, FaultClass::Toffoli},
    {GateKind::MEASZ, "measz", 1, FaultClass::Meas},
    {GateKind::RESET, "reset", 1, FaultClass::Init},
    {GateKind::IDLE, "idle", 1, FaultClass::IdleMeas},
}};

const GateInfo& info(GateKind k) {
    for (const auto& g : kGates)
        if (g.kind == k) return g;
    throw std::logic_error("unknown gate kind");
}

// E2 in the fixed order used throughout: index = 4*a + b - 1 where a,b encode
// I=0, X=1, Y=2, Z=3 on the two legs (identity pair excluded).
char leg_letter(size_t code) {
    static const char L[4] = {'I', 'X', 'Y', 'Z'};
    return L[code];
}

}  // namespace

const char* gate_name(GateKind k) { return info(k).name; }
size_t gate_arity(GateKind k) { return info(k).arity; }
FaultClass default_fault_class(GateKind k) { return info(k).fc; }

const char* fault_class_name(FaultClass c) {
    switch (c) {
        case FaultClass::None: return "none";
        case FaultClass::SingleQubit: return "single-qubit";
        case FaultClass::TwoQubit: return "two-qubit";
        case FaultClass::Toffoli: return "toffoli";
        case FaultClass::Init: return "init";
        case FaultClass::Meas: return "meas";
        case FaultClass::IdleMeas: return "idle-during-meas";
    }
    return "?";
}

std::optional<FaultClass> fault_class_from_name(const std::string& s) {
    for (FaultClass c : {FaultClass::None, FaultClass::SingleQubit, FaultClass::TwoQubit,
                         FaultClass::Toffoli, FaultClass::Init, FaultClass::Meas,
                         FaultClass::IdleMeas})
        if (s == fault_class_name(c)) return c;
    return std::nullopt;
}

size_t fault_class_variants(FaultClass c) {
    switch (c) {
        case FaultClass::None: return 0;
        case FaultClass::SingleQubit: return 3;
        case FaultClass::TwoQubit: return 15;
        default: return 1;
    }
}

ParseError::ParseError(size_t line_, size_t column_, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(column_) +
                         ": " + message),
      line(line_), column(column_) {}

uint32_t Circuit::add_register(const std::string& name, uint32_t size) {
    if (size == 0) throw std::invalid_argument("register size must be positive");
    if (find_register(name)) throw std::invalid_argument("duplicate register " + name);
    regs_.push_back({name, n_, size});
    uint32_t off = n_;
    n_ += size;
    return off;
}

std::optional<Register> Circuit::find_register(const std::string& name) const {
    for (const auto& r : regs_)
        if (r.name == name) return r;
    return std::nullopt;
}

size_t Circuit::append(GateKind kind, std::vector<uint32_t> qubits) {
    return append(kind, std::move(qubits), default_fault_class(kind));
}

size_t Circuit::append(GateKind kind, std::vector<uint32_t> qubits, FaultClass fc) {
    if (qubits.size() != gate_arity(kind))
        throw std::invalid_argument(std::string("arity mismatch for ") + gate_name(kind));
    std::set<uint32_t> uniq(qubits.begin(), qubits.end());
    if (uniq.size() != qubits.size())
        throw std::invalid_argument(std::string("repeated qubit in ") + gate_name(kind));
    for (uint32_t q : qubits)
        if (q >= n_) throw std::invalid_argument("qubit index out of range");
    ops_.push_back({kind, std::move(qubits), fc});
    return ops_.size() - 1;
}

void Circuit::add_marker(const std::string& name) {
    for (const auto& [idx, names] : markers_)
        for (const auto& m : names)
            if (m == name) throw std::invalid_argument("duplicate marker " + name);
    markers_[ops_.size()].push_back(name);
}

std::vector<FaultLocation> Circuit::enumerate_fault_locations(
    const std::vector<FaultClass>& classes) const {
    std::vector<FaultLocation> out;
    for (size_t i = 0; i < ops_.size(); i++) {
        for (FaultClass c : classes) {
            if (ops_[i].fault_class == c && c != FaultClass::None) {
                out.push_back({i, c});
                break;
            }
        }
    }
    return out;
}

PauliString Circuit::fault_pauli(const FaultLocation& loc, size_t variant) const {
    const GateOp& op = ops_[loc.op_index];
    PauliString p(n_);
    switch (loc.fault_class) {
        case FaultClass::SingleQubit: {
            static const char L[3] = {'X', 'Y', 'Z'};
            return PauliString::single(n_, op.qubits[0], L[variant]);
        }
        case FaultClass::TwoQubit: {
            size_t code = variant + 1;  // 1..15
            size_t a = code >> 2, b = code & 3;
            if (leg_letter(a) != 'I') p.mul(PauliString::single(n_, op.qubits[0], leg_letter(a)));
            if (leg_letter(b) != 'I') p.mul(PauliString::single(n_, op.qubits[1], leg_letter(b)));
            return p;
        }
        case FaultClass::Toffoli:
            return PauliString::single(n_, op.qubits[2], 'X');
        case FaultClass::Init:
        case FaultClass::Meas:
            return PauliString::single(n_, op.qubits[0], 'X');
        case FaultClass::IdleMeas:
            return PauliString::single(n_, op.qubits[0], 'Z');
        case FaultClass::None:
            break;
    }
    throw std::logic_error("fault_pauli on class none");
}

Circuit::Stats Circuit::stats() const {
    Stats s;
    std::set<uint32_t> reset_qubits;
    for (const auto& op : ops_) {
        switch (op.kind) {
            case GateKind::CNOT: s.cnot++; break;
            case GateKind::CZ: s.cz++; break;
            case GateKind::TOFFOLI: s.toffoli++; break;
            case GateKind::T: case GateKind::Tdg: s.t++; s.single_qubit++; break;
            case GateKind::H: case GateKind::S: case GateKind::Sdg:
            case GateKind::X: case GateKind::Y: case GateKind::Z:
                s.single_qubit++; break;
            case GateKind::Init0: s.init++; break;
            case GateKind::RESET: s.resets++; reset_qubits.insert(op.qubits[0]); break;
            case GateKind::MEASZ: s.measz++; break;
            case GateKind::IDLE: s.idle++; break;
        }
    }
    s.qubits_with_reset = n_;
    s.qubits_without_reset = n_ + s.resets;
    return s;
}

std::string Circuit::stats_json() const {
    Stats s = stats();
    std::ostringstream os;
    os << "{\"cnot\":" << s.cnot << ",\"cz\":" << s.cz << ",\"toffoli\":" << s.toffoli
       << ",\"t\":" << s.t << ",\"resets\":" << s.resets
       << ",\"qubits_with_reset\":" << s.qubits_with_reset
       << ",\"qubits_without_reset\":" << s.qubits_without_reset << "}";
    return os.str();
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream os;
    for (const auto& r : c.registers())
        os << "qubits " << r.name << " " << r.size << "\n";
    auto emit_markers = [&](size_t idx) {
        auto it = c.markers().find(idx);
        if (it == c.markers().end()) return;
        for (const auto& m : it->second) os << "marker " << m << "\n";
    };
    auto qubit_name = [&](uint32_t q) {
        for (const auto& r : c.registers())
            if (q >= r.offset && q < r.offset + r.size)
                return r.name + std::to_string(q - r.offset);
        return std::string("q") + std::to_string(q);
    };
    for (size_t i = 0; i < c.ops().size(); i++) {
        emit_markers(i);
        const auto& op = c.ops()[i];
        os << gate_name(op.kind);
        for (uint32_t q : op.qubits) os << " " << qubit_name(q);
        if (op.fault_class != default_fault_class(op.kind))
            os << " !" << fault_class_name(op.fault_class);
        os << "\n";
    }
    emit_markers(c.ops().size());
    return os.str();
}

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    std::istringstream is(text);
    std::string line;
    size_t lineno = 0;
    bool saw_op = false;
    while (std::getline(is, line)) {
        lineno++;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "qubits") {
            if (saw_op) throw ParseError(lineno, 1, "registers must be declared before ops");
            if (tok.size() != 3) throw ParseError(lineno, 1, "expected: qubits <name> <size>");
            uint32_t size = 0;
            try {
                size = static_cast<uint32_t>(std::stoul(tok[2]));
            } catch (...) {
                throw ParseError(lineno, 1, "bad register size " + tok[2]);
            }
            if (size == 0) throw ParseError(lineno, 1, "register size must be positive");
            if (c.find_register(tok[1])) throw ParseError(lineno, 1, "duplicate register " + tok[1]);
            c.add_register(tok[1], size);
            continue;
        }
        if (tok[0] == "marker") {
            if (tok.size() != 2) throw ParseError(lineno, 1, "expected: marker <name>");
            try {
                c.add_marker(tok[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, 1, e.what());
            }
            continue;
        }
        // gate line
        const GateInfo* gi = nullptr;
        for (const auto& g : kGates)
            if (tok[0] == g.name) { gi = &g; break; }
        if (!gi) throw ParseError(lineno, 1, "unknown mnemonic " + tok[0]);
        std::vector<uint32_t> qubits;
        FaultClass fc = gi->fc;
        for (size_t i = 1; i < tok.size(); i++) {
            if (tok[i][0] == '!') {
                auto cls = fault_class_from_name(tok[i].substr(1));
                if (!cls) throw ParseError(lineno, 1, "unknown fault class " + tok[i]);
                fc = *cls;
                continue;
            }
            // split trailing digits
            size_t d = tok[i].size();
            while (d > 0 && isdigit(static_cast<unsigned char>(tok[i][d - 1]))) d--;
            if (d == 0 || d == tok[i].size())
                throw ParseError(lineno, 1, "bad qubit reference " + tok[i]);
            std::string reg = tok[i].substr(0, d);
            uint32_t idx = 0;
            try {
                idx = static_cast<uint32_t>(std::stoul(tok[i].substr(d)));
            } catch (...) {
                throw ParseError(lineno, 1, "bad qubit index in " + tok[i]);
            }
            auto r = c.find_register(reg);
            if (!r) throw ParseError(lineno, 1, "undeclared register " + reg);
            if (idx >= r->size) throw ParseError(lineno, 1, "qubit index out of range in " + tok[i]);
            qubits.push_back(r->offset + idx);
        }
        if (qubits.size() != gi->arity)
            throw ParseError(lineno, 1, std::string("arity mismatch for ") + gi->name);
        try {
            c.append(gi->kind, std::move(qubits), fc);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, 1, e.what());
        }
        saw_op = true;
    }
    return c;
}

}  // namespace mfqec
