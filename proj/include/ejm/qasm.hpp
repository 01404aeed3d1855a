// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ejm/gates.hpp"
#include "ejm/qmath.hpp"
#include "ejm/rng.hpp"
#include "ejm/sim.hpp"
#include "ejm/teleport.hpp"

namespace ejm {

/// Mid-circuit measurement of one qubit into the next classical bit; an
/// optional postselect value marks the branch the protocol keeps.
struct MeasureOp {
    int qubit = 0;
    std::optional<int> postselect;
};

using CircuitItem = std::variant<GateSpec, MeasureOp>;

/// A register-sized circuit: the unit of serialization.
struct Circuit {
    int n_qubits = 0;
    std::vector<CircuitItem> items;

    void add(GateSpec g) { items.emplace_back(std::move(g)); }
    void add_measure(int qubit, std::optional<int> postselect = std::nullopt) {
        items.emplace_back(MeasureOp{qubit, postselect});
    }
};

/// Statement vocabulary of the emitted OpenQASM 3 subset. Gate statements
/// follow stdgates.inc semantics (rz is exp(-i t Z/2) here, unlike the
/// phase-carrying GateKind::kRz, which lowers to gphase + rz).
enum class QasmOp {
    kH,
    kS,
    kX,
    kY,
    kZ,
    kRy,
    kRz,
    kCx,
    kCrz,
    kCu,       // cu(theta, phi, lambda, gamma)
    kGphase,
    kMeasure,
    kPostselect,  // serialized as a `// postselect c[k] == v` comment
};

struct QasmStmt {
    QasmOp op = QasmOp::kH;
    std::vector<double> params;
    std::vector<int> qubits;
    int bit = -1;    // kMeasure: destination bit; kPostselect: examined bit
    int value = 0;   // kPostselect: required value
};

struct QasmProgram {
    int declared_qubits = 0;
    int declared_bits = 0;
    std::vector<QasmStmt> statements;
    std::string source_text;
    int gate_count = 0;  // gate statements only; measures and postselects excluded
};

/// Parse failure with 1-based source position.
class QasmParseError : public std::runtime_error {
public:
    QasmParseError(std::string message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Lowers a circuit to subset statements and renders the deterministic text.
/// Unsupported constructs (a nonprojective N(d), a nonunitary custom gate)
/// raise std::invalid_argument naming the gate.
QasmProgram emit_qasm(const Circuit& circuit);

/// Re-renders parsed statements; emit(parse(emit(c))) round-trips textually.
QasmProgram emit_qasm(const QasmProgram& parsed);

QasmProgram parse_qasm_subset(const std::string& text);

/// Gate-list view of a measurement-free program, in simulator vocabulary.
std::vector<GateSpec> to_gates(const QasmProgram& program);

/// Composite unitary of a measurement-free program.
Matrix program_unitary(const QasmProgram& program);

/// Composite operator with every measurement resolved by its postselect
/// annotation (projector insertion). Requires each measure to carry one.
Matrix program_kraus(const QasmProgram& program);

/// Seeded execution from |0...0>; returns the measured bits in declaration
/// order. Postselect annotations are not enforced, so the caller sees the raw
/// sampled outcomes.
std::vector<int> run_program(const QasmProgram& program, SeedStream& stream);

// Export builders for the protocol circuits.
Circuit singlet_circuit();
Circuit ejm_export_circuit(double theta);
Circuit correction_export_circuit(double theta, Branch label);
/// Self-contained four-qubit run for one kept branch: state preparation from
/// |0000>, measurement stage postselected on the branch bits, correction
/// stage postselected on the ancilla.
Circuit full_teleport_circuit(const InputState& input, double theta, Branch label);

}  // namespace ejm
