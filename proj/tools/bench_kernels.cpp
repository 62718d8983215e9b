// Compares the OpenMP enumeration kernels against their serial reference
// implementations, checking agreement and reporting wall times.
#include "retro/anf.hpp"
#include "retro/arith.hpp"
#include "retro/eval.hpp"
#include "retro/oracle.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace retro;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct Row {
    std::string kernel;
    uint32_t n_bits;
    double serial_ms;
    double parallel_ms;
    bool agree;
};

Row bench_preimage(uint32_t n_bits) {
    // A mildly irregular function so preimages are scattered.
    IntFunction f = [](uint64_t x) { return (x * 2654435769ULL) & 0xff; };
    uint64_t y = 0x2a;

    auto t0 = std::chrono::steady_clock::now();
    std::vector<uint64_t> serial = preimage_serial(f, y, n_bits);
    double serial_ms = ms_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    std::vector<uint64_t> parallel = preimage(f, y, n_bits);
    double parallel_ms = ms_since(t1);

    return Row{"preimage", n_bits, serial_ms, parallel_ms, serial == parallel};
}

Row bench_verify(uint32_t n_bits) {
    // Real workload: the retrodictive equations of 7^x mod 15 at observed 1.
    ModExpSpec spec = make_modexp_spec(7, 15, n_bits);
    Circuit c = modexp_circuit(spec);
    std::vector<uint8_t> observed = bits_of(1, c.output.count);
    std::vector<uint8_t> initial = observed;
    initial.resize(c.output.count + c.ancilla.count, 0);
    RetroResult r = retrodictive_equations(c, observed, initial);

    IntFunction f = [](uint64_t x) { return powmod(7, x, 15); };

    auto t0 = std::chrono::steady_clock::now();
    bool serial = verify_equations_serial(r.equations, f, 1, n_bits);
    double serial_ms = ms_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    bool parallel = verify_equations(r.equations, f, 1, n_bits);
    double parallel_ms = ms_since(t1);

    return Row{"verify_equations", n_bits, serial_ms, parallel_ms,
               serial == parallel && serial};
}

} // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;
    }

#ifdef _OPENMP
    std::cout << "OpenMP enabled, max threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not available; both columns run the serial code path\n";
#endif

    std::vector<Row> rows;
    if (smoke) {
        rows.push_back(bench_preimage(16));
        rows.push_back(bench_verify(12));
    } else {
        for (uint32_t n : {20u, 22u, 24u}) rows.push_back(bench_preimage(n));
        for (uint32_t n : {14u, 16u, 18u}) rows.push_back(bench_verify(n));
    }

    std::cout << "kernel,n_bits,serial_ms,parallel_ms,speedup,agree\n";
    bool all_agree = true;
    for (const Row& r : rows) {
        double speedup = r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0;
        std::cout << r.kernel << "," << r.n_bits << "," << r.serial_ms << "," << r.parallel_ms
                  << "," << speedup << "," << (r.agree ? "yes" : "NO") << "\n";
        all_agree = all_agree && r.agree;
    }
    if (!all_agree) {
        std::cerr << "kernel disagreement detected\n";
        return 1;
    }
    std::cout << (smoke ? "smoke ok\n" : "done\n");
    return 0;
}
