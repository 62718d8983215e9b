#include "retro/circuit.hpp"

#include "retro/anf.hpp"
#include "retro/error.hpp"

#include "line_lexer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace retro {

Circuit Circuit::reversed() const {
    Circuit r = *this;
    std::reverse(r.gates.begin(), r.gates.end());
    return r;
}

void Circuit::validate() const {
    auto check_span = [&](const Span& s, const char* name) {
        if (s.count > 0 && s.hi() > width) {
            throw ValidationError(std::string(name) + " register [" + std::to_string(s.lo) +
                                  ".." + std::to_string(s.hi() - 1) + "] exceeds width " +
                                  std::to_string(width));
        }
    };
    check_span(input, "input");
    check_span(output, "output");
    check_span(ancilla, "ancilla");
    for (size_t gi = 0; gi < gates.size(); ++gi) {
        const Gate& g = gates[gi];
        auto fail = [&](const std::string& why) {
            throw ValidationError("gate " + std::to_string(gi) + ": " + why);
        };
        if (g.target >= width) fail("target wire " + std::to_string(g.target) + " out of range");
        std::vector<uint32_t> seen;
        for (const Control& c : g.controls) {
            if (c.wire >= width) fail("control wire " + std::to_string(c.wire) + " out of range");
            if (c.wire == g.target) fail("control and target share wire " + std::to_string(c.wire));
            seen.push_back(c.wire);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            fail("duplicate control wire");
        }
    }
}

GateHistogram histogram(const Circuit& c) {
    GateHistogram h;
    for (const Gate& g : c.gates) ++h[g.arity()];
    return h;
}

Circuit oracle_from_function(uint32_t n_in, uint32_t n_out,
                             const std::vector<uint64_t>& table) {
    if (n_in > 20) throw ValidationError("oracle_from_function limited to 20 input bits");
    if (table.size() != (size_t{1} << n_in)) {
        throw ValidationError("table must have 2^" + std::to_string(n_in) + " entries, got " +
                              std::to_string(table.size()));
    }
    for (uint64_t v : table) {
        if (n_out < 64 && (v >> n_out) != 0) {
            throw ValidationError("table entry " + std::to_string(v) + " exceeds " +
                                  std::to_string(n_out) + " output bits");
        }
    }
    Circuit c;
    c.width = n_in + n_out;
    c.input = Span{0, n_in};
    c.output = Span{n_in, n_out};
    c.ancilla = Span{};
    for (uint32_t j = 0; j < n_out; ++j) {
        std::vector<uint8_t> bit_table(table.size());
        for (size_t x = 0; x < table.size(); ++x) bit_table[x] = (table[x] >> j) & 1;
        Formula f = mobius(bit_table);
        for (const Monomial& m : f.monomials()) {
            Gate g;
            for (uint32_t i : m.indices) g.controls.push_back(Control{i, Polarity::positive});
            g.target = n_in + j;
            c.gates.push_back(std::move(g));
        }
    }
    c.validate();
    return c;
}

Circuit grover_oracle(uint32_t n, const std::vector<uint8_t>& u_bits) {
    if (n == 0) throw ValidationError("grover_oracle needs at least 1 input wire");
    if (u_bits.size() != n) {
        throw ValidationError("marked-element bits must have length n");
    }
    Circuit c;
    c.width = n + 1;
    c.input = Span{0, n};
    c.output = Span{n, 1};
    c.ancilla = Span{};
    Gate g;
    g.target = n;
    for (uint32_t i = 0; i < n; ++i) {
        if (u_bits[i] > 1) throw ValidationError("marked-element bits must be 0 or 1");
        g.controls.push_back(Control{i, u_bits[i] ? Polarity::positive : Polarity::negative});
    }
    c.gates.push_back(std::move(g));
    c.validate();
    return c;
}

Circuit grover_oracle(uint32_t n, uint64_t u) {
    if (n > 63 || u >= (uint64_t{1} << n)) {
        throw ValidationError("marked element " + std::to_string(u) + " out of range for n=" +
                              std::to_string(n));
    }
    std::vector<uint8_t> bits(n);
    for (uint32_t i = 0; i < n; ++i) bits[i] = (u >> i) & 1;
    return grover_oracle(n, bits);
}

Circuit bv_oracle(uint32_t n, uint64_t s) {
    if (n > 63 || s >= (uint64_t{1} << n)) {
        throw ValidationError("secret " + std::to_string(s) + " out of range for n=" +
                              std::to_string(n));
    }
    Circuit c;
    c.width = n + 1;
    c.input = Span{0, n};
    c.output = Span{n, 1};
    c.ancilla = Span{};
    for (uint32_t i = 0; i < n; ++i) {
        if ((s >> i) & 1) {
            c.gates.push_back(Gate{{Control{i, Polarity::positive}}, n});
        }
    }
    c.validate();
    return c;
}

// ---- text format ------------------------------------------------------------

namespace {

std::string span_text(const Span& s) {
    if (s.count == 0) return "none";
    return std::to_string(s.lo) + ".." + std::to_string(s.hi() - 1);
}

} // namespace

std::string print_circuit(const Circuit& c) {
    std::string out;
    out += "width " + std::to_string(c.width) + "\n";
    out += "registers input " + span_text(c.input) + " output " + span_text(c.output) +
           " ancilla " + span_text(c.ancilla) + "\n";
    for (const Gate& g : c.gates) {
        out += "gate [";
        bool first = true;
        for (const Control& ctl : g.controls) {
            if (!first) out += ' ';
            out += (ctl.polarity == Polarity::positive) ? '+' : '-';
            out += std::to_string(ctl.wire);
            first = false;
        }
        out += "] " + std::to_string(g.target) + "\n";
    }
    return out;
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool saw_width = false;
    bool saw_registers = false;
    detail::for_each_line(text, [&](detail::LineLexer& lex) {
        std::string_view line = lex.line;
        std::string_view key = lex.word();
        if (key == "width") {
            if (saw_width) lex.fail("duplicate width line");
            c.width = lex.number();
            saw_width = true;
        } else if (key == "registers") {
            if (!saw_width) lex.fail("registers before width");
            if (saw_registers) lex.fail("duplicate registers line");
            for (int k = 0; k < 3; ++k) {
                std::string_view which = lex.word();
                Span s = lex.span();
                if (which == "input") c.input = s;
                else if (which == "output") c.output = s;
                else if (which == "ancilla") c.ancilla = s;
                else lex.fail("unknown register \"" + std::string(which) + "\"");
            }
            saw_registers = true;
        } else if (key == "gate") {
            if (!saw_width) lex.fail("gate before width");
            lex.skip_ws();
            if (lex.pos >= line.size() || line[lex.pos] != '[') lex.fail("expected '['");
            ++lex.pos;
            Gate g;
            while (true) {
                lex.skip_ws();
                if (lex.pos >= line.size()) lex.fail("unterminated control list");
                if (line[lex.pos] == ']') {
                    ++lex.pos;
                    break;
                }
                char sign = line[lex.pos];
                if (sign != '+' && sign != '-') lex.fail("control must start with '+' or '-'");
                ++lex.pos;
                uint32_t wire = 0;
                auto [next, ec] =
                    std::from_chars(line.data() + lex.pos, line.data() + line.size(), wire);
                if (ec != std::errc() || next == line.data() + lex.pos) {
                    lex.fail("expected a wire number after control sign");
                }
                lex.pos = static_cast<size_t>(next - line.data());
                g.controls.push_back(
                    Control{wire, sign == '+' ? Polarity::positive : Polarity::negative});
            }
            g.target = lex.number();
            if (!lex.at_end()) lex.fail("trailing text after gate");
            c.gates.push_back(std::move(g));
        } else {
            lex.fail("unknown directive \"" + std::string(key) + "\"");
        }
        if (key != "gate" && !lex.at_end()) lex.fail("trailing text");
    });
    if (!saw_width) throw ParseError("circuit parse error: missing width line");
    if (!saw_registers) throw ParseError("circuit parse error: missing registers line");
    c.validate();
    return c;
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open circuit file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

void write_circuit_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write circuit file: " + path);
    out << print_circuit(c);
    out.flush();
    if (!out) throw ValidationError("write failed: " + path);
}

} // namespace retro
