// Compares the OpenMP kernels against their serial reference implementations
// and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "branescope/modp.hpp"
#include "branescope/polytope.hpp"
#include "branescope/sheafcoh.hpp"
#include "branescope/toric.hpp"

namespace {

using namespace branescope;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* label, double serial, double parallel, const char* detail) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", label, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0, detail);
}

poly::LatticePolytope simplex3() {
    return poly::LatticePolytope::from_vertices(
        {{-1, -1, -1}, {3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}}, "p3");
}

void bench_lattice_points() {
    auto big = poly::dilate(simplex3(), 16);
    auto t0 = Clock::now();
    auto serial = poly::lattice_points_serial(big);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = poly::lattice_points(big);
    const double tp = seconds_since(t0);
    if (serial != parallel) throw std::runtime_error("lattice point kernels disagree");
    char detail[64];
    std::snprintf(detail, sizeof detail, "(%zu points)", serial.size());
    report("lattice points", ts, tp, detail);
}

void bench_rank() {
    const std::size_t n = 1500;
    modp::DenseMatrix m(n, n);
    std::mt19937_64 gen(12345);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = gen() % modp::P;
    auto t0 = Clock::now();
    const std::size_t rs = modp::rank_serial(m);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const std::size_t rp = modp::rank(m);
    const double tp = seconds_since(t0);
    if (rs != rp) throw std::runtime_error("rank kernels disagree");
    char detail[64];
    std::snprintf(detail, sizeof detail, "(%zux%zu, rank %zu)", n, n, rs);
    report("prime-field rank", ts, tp, detail);
}

void bench_divisor_cohomology() {
    auto f = toric::normal_fan(simplex3());
    toric::TorusDivisor d{{-9, 7, 6, -8}};
    auto t0 = Clock::now();
    auto serial = sheafcoh::divisor_cohomology_serial(f, d);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = sheafcoh::divisor_cohomology(f, d);
    const double tp = seconds_since(t0);
    if (serial.totals != parallel.totals || serial.pieces != parallel.pieces)
        throw std::runtime_error("divisor cohomology kernels disagree");
    char detail[64];
    std::snprintf(detail, sizeof detail, "(h = %zu,%zu,%zu,%zu)", serial.totals[0],
                  serial.totals[1], serial.totals[2], serial.totals[3]);
    report("divisor cohomology", ts, tp, detail);
}

} // namespace

int main() {
    bench_lattice_points();
    bench_rank();
    bench_divisor_cohomology();
    return 0;
}
