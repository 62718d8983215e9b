#include "retro/mixedradix.hpp"

#include "retro/error.hpp"

#include "line_lexer.hpp"

#include <fstream>
#include <sstream>

namespace retro {

void QutritCircuit::validate() const {
    auto check_span = [&](const Span& s, const char* name) {
        if (s.count > 0 && s.hi() > width) {
            throw ValidationError(std::string(name) + " register exceeds width " +
                                  std::to_string(width));
        }
    };
    check_span(input, "input");
    check_span(output, "output");
    check_span(ancilla, "ancilla");
    for (size_t gi = 0; gi < gates.size(); ++gi) {
        const QutritGate& g = gates[gi];
        auto fail = [&](const std::string& why) {
            throw ValidationError("qutrit gate " + std::to_string(gi) + ": " + why);
        };
        if (g.target >= width) fail("target out of range");
        if (g.kind != QutritKind::x) {
            if (g.control >= width) fail("control out of range");
            if (g.control == g.target) fail("control and target share a wire");
        }
    }
}

std::vector<uint8_t> eval_qutrit(const QutritCircuit& c, const std::vector<uint8_t>& trits) {
    c.validate();
    if (trits.size() != c.width) {
        throw ValidationError("state has " + std::to_string(trits.size()) +
                              " trits, circuit width is " + std::to_string(c.width));
    }
    std::vector<uint8_t> t = trits;
    for (uint8_t v : t) {
        if (v > 2) throw ValidationError("trit values must be 0, 1, or 2");
    }
    for (const QutritGate& g : c.gates) {
        switch (g.kind) {
        case QutritKind::x:
            t[g.target] = static_cast<uint8_t>((t[g.target] + 1) % 3);
            break;
        case QutritKind::sum:
            t[g.target] = static_cast<uint8_t>((t[g.target] + t[g.control]) % 3);
            break;
        case QutritKind::cx:
            if (t[g.control] == 2) t[g.target] = static_cast<uint8_t>((t[g.target] + 1) % 3);
            break;
        }
    }
    return t;
}

QutritPeriod qutrit_period(const QutritCircuit& c, const std::vector<uint8_t>& observed) {
    c.validate();
    if (observed.size() != c.output.count) {
        throw ValidationError("observed trits must match the output register size");
    }
    if (c.input.count > 8) {
        throw ValidationError("period enumeration capped at 8 input trits");
    }
    uint64_t domain = 1;
    for (uint32_t i = 0; i < c.input.count; ++i) domain *= 3;
    QutritPeriod result;
    for (uint64_t x = 0; x < domain; ++x) {
        std::vector<uint8_t> state(c.width, 0);
        std::vector<uint8_t> in = trits_of(x, c.input.count);
        for (uint32_t i = 0; i < c.input.count; ++i) state[c.input.lo + i] = in[i];
        std::vector<uint8_t> final_trits = eval_qutrit(c, state);
        bool match = true;
        for (uint32_t i = 0; i < c.output.count; ++i) {
            if (final_trits[c.output.lo + i] != observed[i]) {
                match = false;
                break;
            }
        }
        if (match) result.solutions.push_back(x);
    }
    if (result.solutions.empty() || result.solutions[0] != 0) {
        throw PromiseViolation("observed value is not the image of input 0; no period to read");
    }
    if (result.solutions.size() == domain) {
        throw PromiseViolation("every input matches: period degenerate (unconstrained output)");
    }
    if (result.solutions.size() < 2) {
        throw PromiseViolation("no nonzero solution within the input range");
    }
    uint64_t r = result.solutions[1];
    for (size_t i = 0; i < result.solutions.size(); ++i) {
        if (result.solutions[i] != i * r) {
            throw PromiseViolation("solution set is not an arithmetic progression");
        }
    }
    if (result.solutions.size() != (domain - 1) / r + 1) {
        throw PromiseViolation("solution set is not an arithmetic progression");
    }
    result.period = r;
    return result;
}

std::vector<uint8_t> trits_of(uint64_t value, uint32_t count) {
    std::vector<uint8_t> trits(count);
    for (uint32_t i = 0; i < count; ++i) {
        trits[i] = static_cast<uint8_t>(value % 3);
        value /= 3;
    }
    if (value != 0) throw ValidationError("value does not fit in the trit register");
    return trits;
}

uint64_t value_of_trits(const std::vector<uint8_t>& trits) {
    uint64_t v = 0;
    uint64_t scale = 1;
    for (uint8_t t : trits) {
        if (t > 2) throw ValidationError("trit values must be 0, 1, or 2");
        v += t * scale;
        scale *= 3;
    }
    return v;
}

namespace {

std::string span_text(const Span& s) {
    if (s.count == 0) return "none";
    return std::to_string(s.lo) + ".." + std::to_string(s.hi() - 1);
}

} // namespace

std::string print_qutrit(const QutritCircuit& c) {
    std::string out;
    out += "qwidth " + std::to_string(c.width) + "\n";
    out += "qregisters input " + span_text(c.input) + " output " + span_text(c.output) +
           " ancilla " + span_text(c.ancilla) + "\n";
    for (const QutritGate& g : c.gates) {
        switch (g.kind) {
        case QutritKind::x:
            out += "qgate X " + std::to_string(g.target) + "\n";
            break;
        case QutritKind::sum:
            out += "qgate SUM " + std::to_string(g.control) + " " + std::to_string(g.target) + "\n";
            break;
        case QutritKind::cx:
            out += "qgate CX " + std::to_string(g.control) + " " + std::to_string(g.target) + "\n";
            break;
        }
    }
    return out;
}

QutritCircuit parse_qutrit(std::string_view text) {
    QutritCircuit c;
    bool saw_width = false;
    bool saw_registers = false;
    detail::for_each_line(text, [&](detail::LineLexer& lex) {
        std::string_view key = lex.word();
        if (key == "qwidth") {
            if (saw_width) lex.fail("duplicate qwidth line");
            c.width = lex.number();
            saw_width = true;
        } else if (key == "qregisters") {
            if (!saw_width) lex.fail("qregisters before qwidth");
            if (saw_registers) lex.fail("duplicate qregisters line");
            for (int k = 0; k < 3; ++k) {
                std::string_view which = lex.word();
                Span s = lex.span();
                if (which == "input") c.input = s;
                else if (which == "output") c.output = s;
                else if (which == "ancilla") c.ancilla = s;
                else lex.fail("unknown register \"" + std::string(which) + "\"");
            }
            saw_registers = true;
        } else if (key == "qgate") {
            if (!saw_width) lex.fail("qgate before qwidth");
            std::string_view kind = lex.word();
            QutritGate g;
            if (kind == "X") {
                g.kind = QutritKind::x;
                g.target = lex.number();
            } else if (kind == "SUM") {
                g.kind = QutritKind::sum;
                g.control = lex.number();
                g.target = lex.number();
            } else if (kind == "CX") {
                g.kind = QutritKind::cx;
                g.control = lex.number();
                g.target = lex.number();
            } else {
                lex.fail("unknown qutrit gate \"" + std::string(kind) + "\"");
            }
            c.gates.push_back(g);
        } else {
            lex.fail("unknown directive \"" + std::string(key) + "\"");
        }
        if (!lex.at_end()) lex.fail("trailing text");
    });
    if (!saw_width) throw ParseError("qutrit parse error: missing qwidth line");
    if (!saw_registers) throw ParseError("qutrit parse error: missing qregisters line");
    c.validate();
    return c;
}

QutritCircuit read_qutrit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open qutrit circuit file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qutrit(buf.str());
}

} // namespace retro
