// SPDX-License-Identifier: Apache-2.0
#include "ejm/qasm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

namespace ejm {

QasmParseError::QasmParseError(std::string message, int line, int column)
    : std::runtime_error(std::move(message) + " at line " + std::to_string(line) +
                         ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0.0
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

const char* stmt_name(QasmOp op) {
    switch (op) {
        case QasmOp::kH: return "h";
        case QasmOp::kS: return "s";
        case QasmOp::kX: return "x";
        case QasmOp::kY: return "y";
        case QasmOp::kZ: return "z";
        case QasmOp::kRy: return "ry";
        case QasmOp::kRz: return "rz";
        case QasmOp::kCx: return "cx";
        case QasmOp::kCrz: return "crz";
        case QasmOp::kCu: return "cu";
        case QasmOp::kGphase: return "gphase";
        case QasmOp::kMeasure: return "measure";
        case QasmOp::kPostselect: return "postselect";
    }
    return "?";
}

QasmStmt make_stmt(QasmOp op, std::vector<double> params, std::vector<int> qubits) {
    QasmStmt s;
    s.op = op;
    s.params = std::move(params);
    s.qubits = std::move(qubits);
    return s;
}

// Lowers one gate into subset statements. The phase-carrying rz/crz
// conventions split into stdgates rz/crz plus explicit global phases;
// custom unitaries go through the ZYZ decomposition.
void lower_gate(const GateSpec& g, std::vector<QasmStmt>& out, int& bit_counter) {
    const auto push_if = [&out](QasmOp op, double angle, std::vector<int> qubits) {
        if (angle != 0.0) out.push_back(make_stmt(op, {angle}, std::move(qubits)));
    };
    switch (g.kind) {
        case GateKind::kH:
            out.push_back(make_stmt(QasmOp::kH, {}, {g.target}));
            return;
        case GateKind::kS:
            out.push_back(make_stmt(QasmOp::kS, {}, {g.target}));
            return;
        case GateKind::kX:
            out.push_back(make_stmt(QasmOp::kX, {}, {g.target}));
            return;
        case GateKind::kY:
            out.push_back(make_stmt(QasmOp::kY, {}, {g.target}));
            return;
        case GateKind::kZ:
            out.push_back(make_stmt(QasmOp::kZ, {}, {g.target}));
            return;
        case GateKind::kRy:
            out.push_back(make_stmt(QasmOp::kRy, {g.angle}, {g.target}));
            return;
        case GateKind::kRz:
            // diag(1, e^{i t}) = e^{i t/2} rz(t)
            push_if(QasmOp::kGphase, g.angle / 2.0, {});
            out.push_back(make_stmt(QasmOp::kRz, {g.angle}, {g.target}));
            return;
        case GateKind::kCnot:
            out.push_back(make_stmt(QasmOp::kCx, {}, {g.control, g.target}));
            return;
        case GateKind::kCrz:
            // diag(1,1,1,e^{i t}) = e^{i t/4} [rz(t/2) on control] crz(t)
            push_if(QasmOp::kGphase, g.angle / 4.0, {});
            push_if(QasmOp::kRz, g.angle / 2.0, {g.control});
            out.push_back(make_stmt(QasmOp::kCrz, {g.angle}, {g.control, g.target}));
            return;
        case GateKind::kCu: {
            const ZyzAngles a = zyz_decompose(g.unitary);
            const double gamma4 = a.alpha - (a.beta + a.delta) / 2.0;
            out.push_back(make_stmt(QasmOp::kCu, {a.gamma, a.beta, a.delta, gamma4},
                                    {g.control, g.target}));
            return;
        }
        case GateKind::kCustom: {
            if (classify_unitarity(g.unitary) != Unitarity::kUnitary) {
                throw std::invalid_argument(
                    "emit_qasm: custom gate is not unitary and has no subset form");
            }
            const ZyzAngles a = zyz_decompose(g.unitary);
            push_if(QasmOp::kRz, a.delta, {g.target});
            push_if(QasmOp::kRy, a.gamma, {g.target});
            push_if(QasmOp::kRz, a.beta, {g.target});
            push_if(QasmOp::kGphase, a.alpha, {});
            return;
        }
        case GateKind::kN: {
            if (g.damping == 1.0) return;  // identity
            if (g.damping != 0.0) {
                throw std::invalid_argument(
                    "emit_qasm: gate n(d) with 0 < d < 1 has no subset form; export its "
                    "controlled-ancilla realization instead");
            }
            QasmStmt m;
            m.op = QasmOp::kMeasure;
            m.qubits = {g.target};
            m.bit = bit_counter++;
            out.push_back(m);
            QasmStmt p;
            p.op = QasmOp::kPostselect;
            p.bit = m.bit;
            p.value = 0;
            out.push_back(p);
            return;
        }
        case GateKind::kGphase:
            push_if(QasmOp::kGphase, g.angle, {});
            return;
    }
    throw std::logic_error("lower_gate: unhandled gate kind");
}

std::string render_source(int n_qubits, int n_bits, const std::vector<QasmStmt>& statements) {
    std::ostringstream os;
    os << "OPENQASM 3.0;\n";
    os << "include \"stdgates.inc\";\n";
    os << "qubit[" << n_qubits << "] q;\n";
    if (n_bits > 0) os << "bit[" << n_bits << "] c;\n";
    for (const QasmStmt& s : statements) {
        switch (s.op) {
            case QasmOp::kMeasure:
                os << "c[" << s.bit << "] = measure q[" << s.qubits[0] << "];\n";
                break;
            case QasmOp::kPostselect:
                os << "// postselect c[" << s.bit << "] == " << s.value << "\n";
                break;
            default: {
                os << stmt_name(s.op);
                if (!s.params.empty()) {
                    os << "(";
                    for (std::size_t i = 0; i < s.params.size(); ++i) {
                        if (i) os << ", ";
                        os << fmt_double(s.params[i]);
                    }
                    os << ")";
                }
                for (std::size_t i = 0; i < s.qubits.size(); ++i) {
                    os << (i ? ", " : " ") << "q[" << s.qubits[i] << "]";
                }
                os << ";\n";
            }
        }
    }
    return os.str();
}

int count_gates(const std::vector<QasmStmt>& statements) {
    int n = 0;
    for (const QasmStmt& s : statements) {
        if (s.op != QasmOp::kMeasure && s.op != QasmOp::kPostselect) ++n;
    }
    return n;
}

}  // namespace

QasmProgram emit_qasm(const Circuit& circuit) {
    if (circuit.n_qubits < 1) {
        throw std::invalid_argument("emit_qasm: circuit declares no qubits");
    }
    QasmProgram prog;
    prog.declared_qubits = circuit.n_qubits;
    int bit_counter = 0;
    for (const CircuitItem& item : circuit.items) {
        if (const GateSpec* g = std::get_if<GateSpec>(&item)) {
            for (int q : gate_qubits(*g)) {
                if (q < 0 || q >= circuit.n_qubits) {
                    throw std::invalid_argument("emit_qasm: gate qubit index out of range");
                }
            }
            lower_gate(*g, prog.statements, bit_counter);
        } else {
            const MeasureOp& m = std::get<MeasureOp>(item);
            if (m.qubit < 0 || m.qubit >= circuit.n_qubits) {
                throw std::invalid_argument("emit_qasm: measured qubit index out of range");
            }
            QasmStmt stmt;
            stmt.op = QasmOp::kMeasure;
            stmt.qubits = {m.qubit};
            stmt.bit = bit_counter++;
            prog.statements.push_back(stmt);
            if (m.postselect) {
                QasmStmt p;
                p.op = QasmOp::kPostselect;
                p.bit = stmt.bit;
                p.value = *m.postselect;
                prog.statements.push_back(p);
            }
        }
    }
    prog.declared_bits = bit_counter;
    prog.gate_count = count_gates(prog.statements);
    prog.source_text = render_source(prog.declared_qubits, prog.declared_bits, prog.statements);
    return prog;
}

QasmProgram emit_qasm(const QasmProgram& parsed) {
    QasmProgram prog = parsed;
    prog.gate_count = count_gates(prog.statements);
    prog.source_text = render_source(prog.declared_qubits, prog.declared_bits, prog.statements);
    return prog;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct GateSignature {
    QasmOp op;
    int n_params;
    int n_qubits;
};

const std::map<std::string, GateSignature>& gate_table() {
    static const std::map<std::string, GateSignature> table{
        {"h", {QasmOp::kH, 0, 1}},     {"s", {QasmOp::kS, 0, 1}},
        {"x", {QasmOp::kX, 0, 1}},     {"y", {QasmOp::kY, 0, 1}},
        {"z", {QasmOp::kZ, 0, 1}},     {"ry", {QasmOp::kRy, 1, 1}},
        {"rz", {QasmOp::kRz, 1, 1}},   {"cx", {QasmOp::kCx, 0, 2}},
        {"crz", {QasmOp::kCrz, 1, 2}}, {"cu", {QasmOp::kCu, 4, 2}},
        {"gphase", {QasmOp::kGphase, 1, 0}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    QasmProgram parse() {
        QasmProgram prog;
        skip_space_and_comments(&prog);
        while (pos_ < text_.size()) {
            parse_statement(prog);
            skip_space_and_comments(&prog);
        }
        if (qubit_reg_.empty()) {
            fail("no qubit register declared", line_, col_);
        }
        prog.gate_count = count_gates(prog.statements);
        prog.source_text = text_;
        return prog;
    }

private:
    [[noreturn]] void fail(const std::string& msg, int line, int col) const {
        throw QasmParseError(msg, line, col);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    // Skips whitespace and comments; `// postselect ...` comments become
    // statements when a program pointer is given.
    void skip_space_and_comments(QasmProgram* prog) {
        while (!at_end()) {
            const char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                const int cline = line_;
                const int ccol = col_;
                std::string body;
                while (!at_end() && peek() != '\n') {
                    body.push_back(peek());
                    advance();
                }
                if (prog != nullptr) {
                    maybe_parse_postselect(body, cline, ccol, *prog);
                }
            } else {
                break;
            }
        }
    }

    void maybe_parse_postselect(const std::string& comment, int cline, int ccol,
                                QasmProgram& prog) {
        // Recognized form: "// postselect c[K] == V"; other comments are
        // ignored.
        std::istringstream in(comment.substr(2));
        std::string word;
        if (!(in >> word) || word != "postselect") return;
        std::string operand, eq;
        int value = -1;
        if (!(in >> operand >> eq >> value) || eq != "==" || (value != 0 && value != 1)) {
            fail("malformed postselect comment", cline, ccol);
        }
        if (operand.size() < 4 || operand.back() != ']') {
            fail("malformed postselect comment", cline, ccol);
        }
        const auto bracket = operand.find('[');
        if (bracket == std::string::npos) {
            fail("malformed postselect comment", cline, ccol);
        }
        const std::string reg = operand.substr(0, bracket);
        if (reg != bit_reg_) {
            fail("undeclared register '" + reg + "'", cline, ccol);
        }
        int bit = 0;
        const std::string idx = operand.substr(bracket + 1, operand.size() - bracket - 2);
        const auto res = std::from_chars(idx.data(), idx.data() + idx.size(), bit);
        if (res.ec != std::errc{} || res.ptr != idx.data() + idx.size() || bit < 0 ||
            bit >= n_bits_) {
            fail("postselect bit index out of range", cline, ccol);
        }
        QasmStmt stmt;
        stmt.op = QasmOp::kPostselect;
        stmt.bit = bit;
        stmt.value = value;
        prog.statements.push_back(stmt);
    }

    std::string read_identifier() {
        skip_space_and_comments(nullptr);
        const int sline = line_, scol = col_;
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
            fail("expected identifier", sline, scol);
        }
        std::string out;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            out.push_back(peek());
            advance();
        }
        return out;
    }

    double read_number() {
        skip_space_and_comments(nullptr);
        const int sline = line_, scol = col_;
        std::string tok;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            tok.push_back(peek());
            advance();
        }
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
                             peek() == 'e' || peek() == 'E' ||
                             ((peek() == '-' || peek() == '+') && !tok.empty() &&
                              (tok.back() == 'e' || tok.back() == 'E')))) {
            tok.push_back(peek());
            advance();
        }
        double value = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            fail("malformed numeric literal '" + tok + "'", sline, scol);
        }
        return value;
    }

    int read_int() {
        skip_space_and_comments(nullptr);
        const int sline = line_, scol = col_;
        std::string tok;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            tok.push_back(peek());
            advance();
        }
        int value = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            fail("malformed integer literal '" + tok + "'", sline, scol);
        }
        return value;
    }

    void expect(char c) {
        skip_space_and_comments(nullptr);
        if (at_end() || peek() != c) {
            fail(std::string("expected '") + c + "'", line_, col_);
        }
        advance();
    }

    bool try_consume(char c) {
        skip_space_and_comments(nullptr);
        if (!at_end() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    // reg[index] with declaration and bounds checks; is_qubit selects which
    // register the operand must come from.
    int read_operand(bool is_qubit) {
        skip_space_and_comments(nullptr);
        const int sline = line_, scol = col_;
        const std::string name = read_identifier();
        const std::string& expected = is_qubit ? qubit_reg_ : bit_reg_;
        const int size = is_qubit ? n_qubits_ : n_bits_;
        if (name != expected || expected.empty()) {
            fail("undeclared register '" + name + "'", sline, scol);
        }
        expect('[');
        const int idx = read_int();
        expect(']');
        if (idx < 0 || idx >= size) {
            fail("index " + std::to_string(idx) + " out of range for register '" + name +
                     "' of size " + std::to_string(size),
                 sline, scol);
        }
        return idx;
    }

    void parse_statement(QasmProgram& prog) {
        skip_space_and_comments(&prog);
        if (at_end()) return;
        const int sline = line_, scol = col_;
        const std::string head = read_identifier();

        if (head == "OPENQASM") {
            read_number();
            expect(';');
            return;
        }
        if (head == "include") {
            skip_space_and_comments(nullptr);
            if (at_end() || peek() != '"') fail("expected include path string", line_, col_);
            advance();
            while (!at_end() && peek() != '"') advance();
            if (at_end()) fail("unterminated include path", sline, scol);
            advance();
            expect(';');
            return;
        }
        if (head == "qubit" || head == "bit") {
            expect('[');
            const int size = read_int();
            expect(']');
            const std::string name = read_identifier();
            expect(';');
            if (size < 1) fail("register size must be positive", sline, scol);
            if (head == "qubit") {
                if (!qubit_reg_.empty()) fail("duplicate qubit declaration", sline, scol);
                qubit_reg_ = name;
                n_qubits_ = size;
                prog.declared_qubits = size;
            } else {
                if (!bit_reg_.empty()) fail("duplicate bit declaration", sline, scol);
                bit_reg_ = name;
                n_bits_ = size;
                prog.declared_bits = size;
            }
            return;
        }

        const auto it = gate_table().find(head);
        if (it != gate_table().end()) {
            const GateSignature& sig = it->second;
            QasmStmt stmt;
            stmt.op = sig.op;
            if (try_consume('(')) {
                if (sig.n_params == 0) {
                    fail("gate '" + head + "' takes no parameters", sline, scol);
                }
                stmt.params.push_back(read_number());
                while (try_consume(',')) stmt.params.push_back(read_number());
                expect(')');
            }
            if (static_cast<int>(stmt.params.size()) != sig.n_params) {
                fail("gate '" + head + "' expects " + std::to_string(sig.n_params) +
                         " parameter(s), found " + std::to_string(stmt.params.size()),
                     sline, scol);
            }
            if (sig.n_qubits > 0) {
                stmt.qubits.push_back(read_operand(true));
                while (try_consume(',')) stmt.qubits.push_back(read_operand(true));
            }
            if (static_cast<int>(stmt.qubits.size()) != sig.n_qubits) {
                fail("gate '" + head + "' expects " + std::to_string(sig.n_qubits) +
                         " operand(s), found " + std::to_string(stmt.qubits.size()),
                     sline, scol);
            }
            if (sig.n_qubits == 2 && stmt.qubits[0] == stmt.qubits[1]) {
                fail("gate '" + head + "' requires distinct qubits", sline, scol);
            }
            expect(';');
            prog.statements.push_back(std::move(stmt));
            return;
        }

        // Measure assignment: c[k] = measure q[i];
        if (!bit_reg_.empty() && head == bit_reg_) {
            expect('[');
            const int bit = read_int();
            expect(']');
            if (bit < 0 || bit >= n_bits_) {
                fail("index " + std::to_string(bit) + " out of range for register '" +
                         bit_reg_ + "' of size " + std::to_string(n_bits_),
                     sline, scol);
            }
            expect('=');
            skip_space_and_comments(nullptr);
            const int mline = line_, mcol = col_;
            const std::string kw = read_identifier();
            if (kw != "measure") fail("expected 'measure', found '" + kw + "'", mline, mcol);
            QasmStmt stmt;
            stmt.op = QasmOp::kMeasure;
            stmt.bit = bit;
            stmt.qubits.push_back(read_operand(true));
            expect(';');
            prog.statements.push_back(std::move(stmt));
            return;
        }

        fail("unknown gate '" + head + "'", sline, scol);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string qubit_reg_;
    std::string bit_reg_;
    int n_qubits_ = 0;
    int n_bits_ = 0;
};

}  // namespace

QasmProgram parse_qasm_subset(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Program evaluation
// ---------------------------------------------------------------------------

namespace {

// [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
Matrix u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return Matrix::from_rows({{c, -std::polar(1.0, lambda) * s},
                              {std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c}},
                             Unitarity::kUnitary);
}

GateSpec stmt_to_gate(const QasmStmt& s) {
    switch (s.op) {
        case QasmOp::kH: return gate::h(s.qubits[0]);
        case QasmOp::kS: return gate::s(s.qubits[0]);
        case QasmOp::kX: return gate::x(s.qubits[0]);
        case QasmOp::kY: return gate::y(s.qubits[0]);
        case QasmOp::kZ: return gate::z(s.qubits[0]);
        case QasmOp::kRy: return gate::ry(s.qubits[0], s.params[0]);
        case QasmOp::kRz: return gate::custom(s.qubits[0], rotation_z(s.params[0]));
        case QasmOp::kCx: return gate::cnot(s.qubits[0], s.qubits[1]);
        case QasmOp::kCrz: return gate::cu(s.qubits[0], s.qubits[1], rotation_z(s.params[0]));
        case QasmOp::kCu: {
            Matrix w = std::polar(1.0, s.params[3]) *
                       u3_matrix(s.params[0], s.params[1], s.params[2]);
            w.set_unitarity(Unitarity::kUnitary);
            return gate::cu(s.qubits[0], s.qubits[1], std::move(w));
        }
        case QasmOp::kGphase: return gate::gphase(s.params[0]);
        case QasmOp::kMeasure:
        case QasmOp::kPostselect:
            break;
    }
    throw std::invalid_argument("statement has no gate form");
}

Matrix full_stmt_matrix(const QasmStmt& s, int n_qubits) {
    const GateSpec g = stmt_to_gate(s);
    if (g.kind == GateKind::kGphase) {
        Matrix m = Matrix::identity(1 << n_qubits);
        return std::polar(1.0, g.angle) * m;
    }
    const std::vector<int> qubits = gate_qubits(g);
    return expand_gate(matrix_of(g), qubits, n_qubits);
}

}  // namespace

std::vector<GateSpec> to_gates(const QasmProgram& program) {
    std::vector<GateSpec> gates;
    gates.reserve(program.statements.size());
    for (const QasmStmt& s : program.statements) {
        if (s.op == QasmOp::kMeasure || s.op == QasmOp::kPostselect) {
            throw std::invalid_argument(
                "to_gates: program contains measurements; use run_program or program_kraus");
        }
        gates.push_back(stmt_to_gate(s));
    }
    return gates;
}

Matrix program_unitary(const QasmProgram& program) {
    Matrix composite = Matrix::identity(1 << program.declared_qubits);
    for (const QasmStmt& s : program.statements) {
        if (s.op == QasmOp::kMeasure || s.op == QasmOp::kPostselect) {
            throw std::invalid_argument("program_unitary: program contains measurements");
        }
        composite = full_stmt_matrix(s, program.declared_qubits) * composite;
    }
    return composite;
}

Matrix program_kraus(const QasmProgram& program) {
    const int n = program.declared_qubits;
    Matrix composite = Matrix::identity(1 << n);
    const auto& stmts = program.statements;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        const QasmStmt& s = stmts[i];
        if (s.op == QasmOp::kPostselect) continue;  // consumed by its measure
        if (s.op == QasmOp::kMeasure) {
            const QasmStmt* post = nullptr;
            if (i + 1 < stmts.size() && stmts[i + 1].op == QasmOp::kPostselect &&
                stmts[i + 1].bit == s.bit) {
                post = &stmts[i + 1];
            }
            if (post == nullptr) {
                throw std::invalid_argument(
                    "program_kraus: measurement without a postselect annotation");
            }
            GateSpec projector = gate::n(s.qubits[0], 0.0);
            Matrix local = matrix_of(projector);
            if (post->value == 1) {
                local = Matrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
                local.set_unitarity(Unitarity::kNonunitary);
            }
            const std::array<int, 1> qs{s.qubits[0]};
            composite = expand_gate(local, qs, n) * composite;
            continue;
        }
        composite = full_stmt_matrix(s, n) * composite;
    }
    return composite;
}

std::vector<int> run_program(const QasmProgram& program, SeedStream& stream) {
    Register reg(program.declared_qubits);
    std::vector<int> bits(static_cast<std::size_t>(std::max(program.declared_bits, 0)), 0);
    for (const QasmStmt& s : program.statements) {
        if (s.op == QasmOp::kPostselect) continue;
        if (s.op == QasmOp::kMeasure) {
            const std::array<int, 1> qs{s.qubits[0]};
            const MeasureResult r = reg.measure(qs, stream);
            bits[static_cast<std::size_t>(s.bit)] = r.bits[0];
            continue;
        }
        reg.apply(stmt_to_gate(s));
    }
    return bits;
}

// ---------------------------------------------------------------------------
// Export builders
// ---------------------------------------------------------------------------

Circuit singlet_circuit() {
    Circuit c;
    c.n_qubits = 2;
    c.add(gate::h(0));
    c.add(gate::cnot(0, 1));
    return c;
}

Circuit ejm_export_circuit(double theta) {
    Circuit c;
    c.n_qubits = 2;
    for (GateSpec& g : ejm_circuit(theta)) c.add(std::move(g));
    return c;
}

Circuit correction_export_circuit(double theta, Branch label) {
    const CorrectionPlan plan = correction_plan(theta, label);
    const NonunitaryRealization r = realize_nonunitary(plan.svd, theta, 0, 1);
    Circuit c;
    c.n_qubits = 2;
    c.add(r.pre_rotation);
    c.add(r.controlled_step);
    c.add(r.post_projection);
    c.add(r.post_rotation);
    return c;
}

Circuit full_teleport_circuit(const InputState& input, double theta, Branch label) {
    Circuit c;
    c.n_qubits = 4;
    // Fig. layout starts qubits 1 and 2 in |1>; from |0000> that is two X
    // gates.
    c.add(gate::x(1));
    c.add(gate::x(2));
    for (GateSpec& g : preparation_circuit(input)) c.add(std::move(g));
    for (GateSpec& g : ejm_circuit(theta)) c.add(std::move(g));
    c.add_measure(0, branch_m1(label));
    c.add_measure(1, branch_m2(label));

    const CorrectionPlan plan = correction_plan(theta, label);
    const NonunitaryRealization r = realize_nonunitary(plan.svd, theta, 2, 3);
    c.add(r.pre_rotation);
    c.add(r.controlled_step);
    c.add(r.post_projection);
    c.add(r.post_rotation);
    return c;
}

}  // namespace ejm
