#include "retro/algorithms.hpp"
#include "retro/anf.hpp"
#include "retro/arith.hpp"
#include "retro/circuit.hpp"
#include "retro/error.hpp"
#include "retro/eval.hpp"
#include "retro/mixedradix.hpp"
#include "retro/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace retro;

namespace {

struct GlobalOpts {
    bool json_out = false;
    uint64_t seed = 12345;
    std::string out_path;
};

GlobalOpts g_opts;

// One record per benchmark measurement; rows are emitted as CSV.
struct BenchRecord {
    std::string experiment;
    uint64_t parameter = 0;  // n or N
    std::string detail;      // u kind, or the base a
    uint64_t gate_count = 0;
    double wall_ms = 0.0;
};

class Output {
public:
    Output() {
        if (!g_opts.out_path.empty()) {
            file_.open(g_opts.out_path, std::ios::binary);
            if (!file_) throw ValidationError("cannot write to " + g_opts.out_path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    ~Output() {
        if (file_.is_open()) file_.flush();
    }

private:
    std::ofstream file_;
};

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

// Register-value tokens: a token made only of 0/1 whose length equals the
// register size is an MSB-first bitstring; anything else is decimal.
std::vector<uint8_t> parse_bits_token(const std::string& token, uint32_t count) {
    bool bitstring = token.size() == count && !token.empty();
    if (bitstring) {
        for (char ch : token) {
            if (ch != '0' && ch != '1') {
                bitstring = false;
                break;
            }
        }
    }
    if (bitstring) {
        std::vector<uint8_t> bits(count);
        for (uint32_t i = 0; i < count; ++i) {
            bits[count - 1 - i] = token[i] == '1' ? 1 : 0; // token is MSB first
        }
        return bits;
    }
    uint64_t value = 0;
    try {
        size_t used = 0;
        value = std::stoull(token, &used, 10);
        if (used != token.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw ValidationError("cannot read \"" + token + "\" as a register value");
    }
    return bits_of(value, count);
}

std::vector<uint8_t> parse_trits_token(const std::string& token, uint32_t count) {
    bool tritstring = token.size() == count && !token.empty();
    if (tritstring) {
        for (char ch : token) {
            if (ch < '0' || ch > '2') {
                tritstring = false;
                break;
            }
        }
    }
    if (tritstring) {
        std::vector<uint8_t> trits(count);
        for (uint32_t i = 0; i < count; ++i) {
            trits[count - 1 - i] = static_cast<uint8_t>(token[i] - '0');
        }
        return trits;
    }
    uint64_t value = 0;
    try {
        size_t used = 0;
        value = std::stoull(token, &used, 10);
        if (used != token.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw ValidationError("cannot read \"" + token + "\" as a register value");
    }
    return trits_of(value, count);
}

std::string bits_to_msb_string(const std::vector<uint8_t>& bits) {
    std::string s;
    for (size_t i = bits.size(); i-- > 0;) s += bits[i] ? '1' : '0';
    return s;
}

json equations_json(const std::vector<Equation>& eqs) {
    json arr = json::array();
    for (const Equation& e : dedup_equations(eqs)) arr.push_back(e.to_string());
    return arr;
}

void emit_algo_json(const json& result) {
    Output out;
    out.stream() << result.dump(2) << "\n";
}

// ---- synth -------------------------------------------------------------------

void cmd_synth(uint64_t a, uint64_t N, uint32_t exp_bits) {
    ModExpSpec spec = make_modexp_spec(a, N, exp_bits);
    Circuit c = modexp_circuit(spec);
    GateHistogram h = histogram(c);
    if (g_opts.json_out) {
        json j;
        j["a"] = spec.base;
        j["N"] = spec.modulus;
        j["exp_bits"] = spec.exp_bits;
        j["val_bits"] = spec.val_bits;
        j["width"] = c.width;
        j["gate_total"] = c.gate_count();
        json hist = json::object();
        for (auto& [arity, count] : h) hist[std::to_string(arity)] = count;
        j["histogram"] = hist;
        if (!g_opts.out_path.empty()) {
            write_circuit_file(c, g_opts.out_path);
            j["file"] = g_opts.out_path;
        } else {
            j["circuit"] = print_circuit(c);
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (!g_opts.out_path.empty()) {
        write_circuit_file(c, g_opts.out_path);
        std::cout << "wrote " << g_opts.out_path << "\n";
    } else {
        std::cout << print_circuit(c);
    }
    std::ostream& info = g_opts.out_path.empty() ? std::cerr : std::cout;
    info << "width " << c.width << ", gates " << c.gate_count() << "\n";
    for (auto& [arity, count] : h) {
        info << "  " << arity << " controls: " << count << "\n";
    }
}

// ---- run ---------------------------------------------------------------------

void cmd_run(const std::string& path, const std::string& input_token,
             const std::string& seed_token) {
    Circuit c = read_circuit_file(path);
    std::vector<uint8_t> state(c.width, 0);
    std::vector<uint8_t> in_bits = parse_bits_token(input_token, c.input.count);
    for (uint32_t i = 0; i < c.input.count; ++i) state[c.input.lo + i] = in_bits[i];
    std::vector<uint8_t> out_bits = parse_bits_token(seed_token, c.output.count);
    for (uint32_t i = 0; i < c.output.count; ++i) state[c.output.lo + i] = out_bits[i];
    std::vector<uint8_t> final_bits = simulate_concrete(c, state);
    std::vector<uint8_t> out(final_bits.begin() + c.output.lo,
                             final_bits.begin() + c.output.lo + c.output.count);
    Output o;
    if (g_opts.json_out) {
        json j;
        j["output"] = value_of(out);
        j["output_bits"] = bits_to_msb_string(out);
        j["state_bits"] = bits_to_msb_string(final_bits);
        o.stream() << j.dump(2) << "\n";
    } else {
        o.stream() << "output = " << value_of(out) << " (bits " << bits_to_msb_string(out)
                   << ")\n";
    }
}

// ---- retro -------------------------------------------------------------------

void cmd_retro(const std::string& path, const std::string& observed_token,
               const std::string& initial_token) {
    Circuit c = read_circuit_file(path);
    std::vector<uint8_t> observed = parse_bits_token(observed_token, c.output.count);
    std::vector<uint8_t> initial;
    if (initial_token.empty()) {
        // Default: the forward run started from the observed value (the
        // modular-exponentiation convention) and zeroed ancillas.
        initial = observed;
        initial.resize(c.output.count + c.ancilla.count, 0);
    } else if (initial_token.size() == c.output.count + c.ancilla.count &&
               initial_token.find_first_not_of("01") == std::string::npos &&
               c.ancilla.count > 0) {
        initial = parse_bits_token(initial_token, c.output.count + c.ancilla.count);
    } else {
        initial = parse_bits_token(initial_token, c.output.count);
        initial.resize(c.output.count + c.ancilla.count, 0);
    }
    RetroResult r = retrodictive_equations(c, observed, initial);
    Output o;
    if (g_opts.json_out) {
        json j;
        j["equations"] = equations_json(r.equations);
        j["gates_applied"] = r.gates_applied;
        o.stream() << j.dump(2) << "\n";
    } else {
        for (const Equation& e : dedup_equations(r.equations)) {
            o.stream() << e.to_string() << "\n";
        }
    }
}

// ---- algo --------------------------------------------------------------------

std::vector<uint8_t> load_bit_table(const std::string& bits_inline, const std::string& path) {
    std::vector<uint8_t> table;
    if (!bits_inline.empty()) {
        for (char ch : bits_inline) {
            if (ch != '0' && ch != '1') {
                throw ValidationError("--bits must be a string of 0/1");
            }
            table.push_back(ch == '1' ? 1 : 0);
        }
        return table;
    }
    if (path.empty()) throw ValidationError("provide --bits or --table");
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open table file: " + path);
    int v = 0;
    while (in >> v) {
        if (v != 0 && v != 1) throw ValidationError("table entries must be 0 or 1");
        table.push_back(static_cast<uint8_t>(v));
    }
    return table;
}

void cmd_algo_dj(const std::string& bits_inline, const std::string& table_path) {
    std::vector<uint8_t> table = load_bit_table(bits_inline, table_path);
    auto start = std::chrono::steady_clock::now();
    DJResult r = deutsch_jozsa(table);
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "dj";
    j["inputs"] = {{"n", static_cast<uint32_t>(std::bit_width(table.size()) - 1)},
                   {"table_entries", table.size()}};
    j["equations"] = r.formula.is_zero() ? json::array()
                                         : json::array({r.formula.to_string() + " = 0"});
    j["answer"] = r.constant ? "constant" : "balanced";
    j["solved_by"] = nullptr;
    j["gate_count"] = r.gate_count;
    j["wall_time_ms"] = ms;
    j["formula"] = r.formula.to_string();
    emit_algo_json(j);
}

void cmd_algo_bv(const std::string& circuit_path, uint32_t n, uint64_t s, bool have_s) {
    Circuit oracle;
    json inputs;
    if (!circuit_path.empty()) {
        oracle = read_circuit_file(circuit_path);
        n = oracle.input.count;
        inputs["circuit"] = circuit_path;
    } else {
        if (!have_s) throw ValidationError("provide --circuit or both --n and --s");
        oracle = bv_oracle(n, s);
        inputs["n"] = n;
        inputs["s"] = s;
    }
    auto start = std::chrono::steady_clock::now();
    uint64_t secret = bernstein_vazirani(oracle, n);
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "bv";
    j["inputs"] = inputs;
    json eqs = json::array();
    for (uint32_t i = 0; i < 64; ++i) {
        if ((secret >> i) & 1) eqs.push_back("x" + std::to_string(i) + " = 1");
    }
    j["equations"] = eqs;
    j["answer"] = secret;
    j["solved_by"] = nullptr;
    j["gate_count"] = oracle.gate_count();
    j["wall_time_ms"] = ms;
    emit_algo_json(j);
}

void cmd_algo_simon(const std::string& circuit_path, uint32_t n, uint64_t a, bool have_a) {
    Circuit oracle;
    json inputs;
    if (!circuit_path.empty()) {
        oracle = read_circuit_file(circuit_path);
        n = oracle.input.count;
        inputs["circuit"] = circuit_path;
    } else {
        if (!have_a) throw ValidationError("provide --circuit or both --n and --a");
        oracle = oracle_from_function(n, n, simon_table(n, a));
        inputs["n"] = n;
        inputs["a"] = a;
    }
    auto start = std::chrono::steady_clock::now();
    SimonResult r = simon(oracle, n);
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "simon";
    j["inputs"] = inputs;
    j["equations"] = equations_json(r.equations);
    j["answer"] = r.mask;
    j["solved_by"] = nullptr;
    j["gate_count"] = r.gate_count;
    j["wall_time_ms"] = ms;
    emit_algo_json(j);
}

void cmd_algo_grover(const std::string& circuit_path, uint32_t n, uint64_t u, bool have_u) {
    Circuit oracle;
    json inputs;
    if (!circuit_path.empty()) {
        oracle = read_circuit_file(circuit_path);
        n = oracle.input.count;
        inputs["circuit"] = circuit_path;
    } else {
        if (!have_u) throw ValidationError("provide --circuit or both --n and --u");
        oracle = grover_oracle(n, u);
        inputs["n"] = n;
        inputs["u"] = u;
    }
    auto start = std::chrono::steady_clock::now();
    GroverResult r = grover_search(n, oracle);
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "grover";
    j["inputs"] = inputs;
    j["equations"] = json::array({r.formula.to_string() + " = 1"});
    j["answer"] = r.value();
    j["solved_by"] = nullptr;
    j["gate_count"] = r.gate_count;
    j["wall_time_ms"] = ms;
    emit_algo_json(j);
}

void cmd_algo_shor(uint64_t a, uint64_t N, uint32_t exp_bits) {
    auto start = std::chrono::steady_clock::now();
    PeriodResult r = shor_period(a, N, exp_bits);
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "shor";
    j["inputs"] = {{"a", a}, {"N", N}, {"exp_bits", r.exp_bits}};
    j["equations"] = equations_json(r.equations);
    j["answer"] = r.period;
    j["solved_by"] = to_string(r.solved_by);
    j["gate_count"] = r.gate_count;
    j["wall_time_ms"] = ms;
    emit_algo_json(j);
}

void cmd_algo_factor(uint64_t N, uint64_t a, uint32_t exp_bits) {
    auto start = std::chrono::steady_clock::now();
    FactorResult r = [&] {
        if (exp_bits != 0) {
            FactorResult f;
            f.period = shor_period(a, N, exp_bits);
            uint64_t rr = f.period.period;
            if (rr % 2 != 0) return f;
            uint64_t h = powmod(a, rr / 2, N);
            if (h == N - 1) return f;
            f.p = std::gcd(h - 1, N);
            f.q = std::gcd(h + 1, N);
            f.ok = true;
            return f;
        }
        return factor(N, a);
    }();
    double ms = ms_since(start);
    json j;
    j["algorithm"] = "factor";
    j["inputs"] = {{"N", N}, {"a", a}, {"exp_bits", r.period.exp_bits}};
    j["equations"] = equations_json(r.period.equations);
    if (r.ok) {
        j["answer"] = {{"p", r.p}, {"q", r.q}};
    } else {
        j["answer"] = "retry";
    }
    j["solved_by"] = to_string(r.period.solved_by);
    j["gate_count"] = r.period.gate_count;
    j["wall_time_ms"] = ms;
    j["period"] = r.period.period;
    emit_algo_json(j);
}

// ---- verify ------------------------------------------------------------------

std::vector<Equation> load_equations_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open equations file: " + path);
    std::vector<Equation> eqs;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        eqs.push_back(parse_equation(std::string_view(line).substr(b, e - b + 1)));
    }
    return eqs;
}

void cmd_verify(const std::string& eq_path, uint64_t a, uint64_t N, bool have_modexp,
                const std::string& table_path, uint64_t w, uint32_t n, int& exit_code) {
    std::vector<Equation> eqs = load_equations_file(eq_path);
    IntFunction f;
    if (have_modexp) {
        f = [a, N](uint64_t x) { return powmod(a, x, N); };
    } else if (!table_path.empty()) {
        std::ifstream in(table_path);
        if (!in) throw ValidationError("cannot open table file: " + table_path);
        auto table = std::make_shared<std::vector<uint64_t>>();
        uint64_t v = 0;
        while (in >> v) table->push_back(v);
        if (table->size() != (size_t{1} << n)) {
            throw ValidationError("table must have 2^n entries");
        }
        f = [table](uint64_t x) { return (*table)[x]; };
    } else {
        throw ValidationError("provide --a/--N or --table");
    }
    bool match = verify_equations(eqs, f, w, n);
    Output o;
    if (g_opts.json_out) {
        json j;
        j["match"] = match;
        o.stream() << j.dump(2) << "\n";
    } else {
        o.stream() << "match: " << (match ? "true" : "false") << "\n";
    }
    exit_code = match ? 0 : 1;
}

// ---- bench -------------------------------------------------------------------

void cmd_bench_grover(uint32_t min_n, uint32_t max_n, const std::string& kinds_csv,
                      uint32_t big_n) {
    std::vector<std::string> kinds;
    std::stringstream ss(kinds_csv);
    std::string kind;
    while (std::getline(ss, kind, ',')) {
        if (kind != "all-ones" && kind != "zero" && kind != "random") {
            throw ValidationError("unknown u kind: " + kind + " (use all-ones, zero, random)");
        }
        kinds.push_back(kind);
    }
    if (min_n < 1 || max_n < min_n) throw ValidationError("need 1 <= min-n <= max-n");
    for (const std::string& k : kinds) {
        if (k != "all-ones" && max_n > 26) {
            throw ValidationError("zero/random sweeps are capped at n = 26 (formula size "
                                  "doubles per variable)");
        }
    }
    std::mt19937_64 rng(g_opts.seed);
    std::vector<BenchRecord> records;
    auto timed_search = [&](uint32_t n, const std::vector<uint8_t>& u_bits,
                            const std::string& label) {
        Circuit oracle = grover_oracle(n, u_bits);
        auto start = std::chrono::steady_clock::now();
        GroverResult r = grover_search(n, oracle);
        double ms = ms_since(start);
        // The marked element must round-trip; a benchmark that computes the
        // wrong answer would be meaningless.
        std::vector<uint8_t> got(n, 0);
        for (uint32_t i : r.marked_indices) got[i] = 1;
        if (got != u_bits) throw Error("grover benchmark returned a wrong marked element");
        records.push_back(BenchRecord{"grover-timing", n, label, oracle.gate_count(), ms});
    };
    for (const std::string& k : kinds) {
        for (uint32_t n = min_n; n <= max_n; ++n) {
            std::vector<uint8_t> u_bits(n, 0);
            if (k == "all-ones") {
                u_bits.assign(n, 1);
            } else if (k == "random") {
                for (auto& b : u_bits) b = static_cast<uint8_t>(rng() & 1);
            }
            timed_search(n, u_bits, k);
        }
    }
    if (big_n != 0) {
        timed_search(big_n, std::vector<uint8_t>(big_n, 1), "all-ones");
    }
    Output o;
    o.stream() << "n,u_kind,wall_ms\n";
    for (const BenchRecord& r : records) {
        o.stream() << r.parameter << "," << r.detail << "," << r.wall_ms << "\n";
    }
}

void cmd_bench_gates(const std::string& n_csv, uint64_t a) {
    std::vector<uint64_t> moduli;
    std::stringstream ss(n_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            moduli.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw ValidationError("bad modulus in list: " + tok);
        }
    }
    if (moduli.empty()) throw ValidationError("need at least one modulus");
    std::vector<BenchRecord> records;
    std::vector<std::string> rows;
    for (uint64_t N : moduli) {
        ModExpSpec spec = make_modexp_spec(a, N, 0);
        auto start = std::chrono::steady_clock::now();
        Circuit c = modexp_circuit(spec);
        double ms = ms_since(start);
        GateHistogram h = histogram(c);
        uint64_t a1 = 0, a2 = 0, a3p = 0;
        for (auto& [arity, count] : h) {
            if (arity == 1) a1 += count;
            else if (arity == 2) a2 += count;
            else if (arity >= 3) a3p += count;
        }
        records.push_back(BenchRecord{"gate-counts", N, std::to_string(a), c.gate_count(), ms});
        rows.push_back(std::to_string(N) + "," + std::to_string(a) + "," +
                       std::to_string(c.width) + "," + std::to_string(c.gate_count()) + "," +
                       std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3p));
    }
    Output o;
    o.stream() << "N,a,total_wires,gate_total,arity1,arity2,arity3plus\n";
    for (const std::string& row : rows) o.stream() << row << "\n";
}

// ---- qutrit ------------------------------------------------------------------

void cmd_qutrit_eval(const std::string& path, const std::string& input_token) {
    QutritCircuit c = read_qutrit_file(path);
    std::vector<uint8_t> state(c.width, 0);
    std::vector<uint8_t> in = parse_trits_token(input_token, c.input.count);
    for (uint32_t i = 0; i < c.input.count; ++i) state[c.input.lo + i] = in[i];
    std::vector<uint8_t> final_trits = eval_qutrit(c, state);
    std::vector<uint8_t> out(final_trits.begin() + c.output.lo,
                             final_trits.begin() + c.output.lo + c.output.count);
    std::string msb;
    for (size_t i = out.size(); i-- > 0;) msb += static_cast<char>('0' + out[i]);
    Output o;
    if (g_opts.json_out) {
        json j;
        j["output"] = value_of_trits(out);
        j["output_trits"] = msb;
        o.stream() << j.dump(2) << "\n";
    } else {
        o.stream() << "output = " << value_of_trits(out) << " (trits " << msb << ")\n";
    }
}

void cmd_qutrit_period(const std::string& path, const std::string& observed_token) {
    QutritCircuit c = read_qutrit_file(path);
    std::vector<uint8_t> observed = parse_trits_token(observed_token, c.output.count);
    QutritPeriod r = qutrit_period(c, observed);
    Output o;
    if (g_opts.json_out) {
        json j;
        j["period"] = r.period;
        j["solutions"] = r.solutions;
        o.stream() << j.dump(2) << "\n";
    } else {
        o.stream() << "period = " << r.period << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic partial evaluation of reversible circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_opts.json_out, "emit JSON instead of plain text");
    app.add_option("--seed", g_opts.seed, "seed for randomized sweeps");
    app.add_option("--out", g_opts.out_path, "write primary output to this file");

    int exit_code = 0;

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a modular exponentiation circuit");
    uint64_t synth_a = 0, synth_N = 0;
    uint32_t synth_exp = 0;
    synth->add_option("--a", synth_a, "base")->required();
    synth->add_option("--N", synth_N, "modulus")->required();
    synth->add_option("--exp-bits", synth_exp, "exponent register width (default ceil(log2 N^2))");
    synth->callback([&] { cmd_synth(synth_a, synth_N, synth_exp); });

    // run
    auto* run_cmd = app.add_subcommand("run", "concrete forward simulation");
    std::string run_path, run_input{"0"}, run_seed{"0"};
    run_cmd->add_option("circuit", run_path, "circuit file")->required();
    run_cmd->add_option("--input", run_input, "input register value (decimal or MSB-first bits)");
    run_cmd->add_option("--output-seed", run_seed, "initial output register value");
    run_cmd->callback([&] { cmd_run(run_path, run_input, run_seed); });

    // retro
    auto* retro = app.add_subcommand("retro", "retrodictive symbolic run; prints equations");
    std::string retro_path, retro_observed, retro_initial;
    retro->add_option("circuit", retro_path, "circuit file")->required();
    retro->add_option("--observed", retro_observed, "observed output register value")->required();
    retro->add_option("--initial", retro_initial,
                      "initial output register value (default: the observed value); a full-width "
                      "bitstring also covers the ancillas");
    retro->callback([&] { cmd_retro(retro_path, retro_observed, retro_initial); });

    // algo
    auto* algo = app.add_subcommand("algo", "de-quantized algorithm drivers");
    algo->require_subcommand(1);
    algo->fallthrough();

    auto* dj = algo->add_subcommand("dj", "Deutsch-Jozsa: classify constant vs balanced");
    std::string dj_bits, dj_table;
    dj->add_option("--bits", dj_bits, "truth table as a 0/1 string, f(0) first");
    dj->add_option("--table", dj_table, "file of whitespace-separated 0/1 entries");
    dj->callback([&] { cmd_algo_dj(dj_bits, dj_table); });

    auto* bv = algo->add_subcommand("bv", "Bernstein-Vazirani: recover the parity secret");
    std::string bv_circuit;
    uint32_t bv_n = 0;
    uint64_t bv_s = 0;
    bv->add_option("--circuit", bv_circuit, "oracle circuit file");
    bv->add_option("--n", bv_n, "input bits");
    auto* bv_s_opt = bv->add_option("--s", bv_s, "secret to build the oracle from");
    bv->callback([&] { cmd_algo_bv(bv_circuit, bv_n, bv_s, bv_s_opt->count() > 0); });

    auto* simon_cmd = algo->add_subcommand("simon", "Simon: recover the XOR mask");
    std::string simon_circuit;
    uint32_t simon_n = 0;
    uint64_t simon_a = 0;
    simon_cmd->add_option("--circuit", simon_circuit, "oracle circuit file");
    simon_cmd->add_option("--n", simon_n, "input bits");
    auto* simon_a_opt = simon_cmd->add_option("--a", simon_a, "mask to build the oracle from");
    simon_cmd->callback(
        [&] { cmd_algo_simon(simon_circuit, simon_n, simon_a, simon_a_opt->count() > 0); });

    auto* grover = algo->add_subcommand("grover", "Grover: read the marked element");
    std::string grover_circuit;
    uint32_t grover_n = 0;
    uint64_t grover_u = 0;
    grover->add_option("--circuit", grover_circuit, "oracle circuit file");
    grover->add_option("--n", grover_n, "input bits");
    auto* grover_u_opt = grover->add_option("--u", grover_u, "marked element to build the oracle");
    grover->callback(
        [&] { cmd_algo_grover(grover_circuit, grover_n, grover_u, grover_u_opt->count() > 0); });

    auto* shor = algo->add_subcommand("shor", "order finding from retrodictive equations");
    uint64_t shor_a = 0, shor_N = 0;
    uint32_t shor_exp = 0;
    shor->add_option("--a", shor_a, "base")->required();
    shor->add_option("--N", shor_N, "modulus")->required();
    shor->add_option("--exp-bits", shor_exp, "exponent register width");
    shor->callback([&] { cmd_algo_shor(shor_a, shor_N, shor_exp); });

    auto* factor_cmd = algo->add_subcommand("factor", "factor N via the period of a");
    uint64_t factor_N = 0, factor_a = 0;
    uint32_t factor_exp = 0;
    factor_cmd->add_option("--N", factor_N, "odd composite to factor")->required();
    factor_cmd->add_option("--a", factor_a, "coprime base")->required();
    factor_cmd->add_option("--exp-bits", factor_exp, "exponent register width");
    factor_cmd->callback([&] { cmd_algo_factor(factor_N, factor_a, factor_exp); });

    // verify
    auto* verify = app.add_subcommand("verify", "check equations against brute-force enumeration");
    std::string verify_eqs, verify_table;
    uint64_t verify_a = 0, verify_N = 0, verify_w = 0;
    uint32_t verify_n = 0;
    verify->add_option("--equations", verify_eqs, "equations file, one per line")->required();
    auto* va = verify->add_option("--a", verify_a, "modexp base");
    verify->add_option("--N", verify_N, "modexp modulus");
    verify->add_option("--table", verify_table, "file of f(x) values, one per line");
    verify->add_option("--w", verify_w, "expected output value")->required();
    verify->add_option("--n", verify_n, "input bits to enumerate")->required();
    verify->callback([&] {
        cmd_verify(verify_eqs, verify_a, verify_N, va->count() > 0, verify_table, verify_w,
                   verify_n, exit_code);
    });

    // bench
    auto* bench = app.add_subcommand("bench", "timing and size sweeps, CSV output");
    bench->require_subcommand(1);
    bench->fallthrough();

    auto* bg = bench->add_subcommand("grover-timing", "time grover_search across n");
    uint32_t bg_min = 16, bg_max = 24, bg_big = 0;
    std::string bg_kinds = "all-ones,zero,random";
    bg->add_option("--min-n", bg_min, "smallest n");
    bg->add_option("--max-n", bg_max, "largest n");
    bg->add_option("--kinds", bg_kinds, "comma list of all-ones, zero, random");
    bg->add_option("--big-n", bg_big, "extra all-ones run at this n (0 = skip)");
    bg->callback([&] { cmd_bench_grover(bg_min, bg_max, bg_kinds, bg_big); });

    auto* bgc = bench->add_subcommand("gate-counts", "modular exponentiation circuit sizes");
    std::string bgc_list = "15,21,51,85,771";
    uint64_t bgc_a = 2;
    bgc->add_option("--moduli", bgc_list, "comma list of moduli");
    bgc->add_option("--a", bgc_a, "base used for every modulus");
    bgc->callback([&] { cmd_bench_gates(bgc_list, bgc_a); });

    // qutrit
    auto* qutrit = app.add_subcommand("qutrit", "base-3 circuit tools");
    qutrit->require_subcommand(1);
    qutrit->fallthrough();

    auto* qe = qutrit->add_subcommand("eval", "concrete forward evaluation");
    std::string qe_path, qe_input{"0"};
    qe->add_option("circuit", qe_path, "qutrit circuit file")->required();
    qe->add_option("--input", qe_input, "input register value (decimal or MSB-first trits)");
    qe->callback([&] { cmd_qutrit_eval(qe_path, qe_input); });

    auto* qp = qutrit->add_subcommand("period", "period of the computed function");
    std::string qp_path, qp_observed;
    qp->add_option("circuit", qp_path, "qutrit circuit file")->required();
    qp->add_option("--observed", qp_observed, "observed output register value")->required();
    qp->callback([&] { cmd_qutrit_period(qp_path, qp_observed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const PromiseViolation& e) {
        if (g_opts.json_out || algo->parsed()) {
            json j;
            j["error"] = e.what();
            j["kind"] = "promise-violation";
            std::cout << j.dump(2) << "\n";
        }
        std::cerr << "promise violation: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
