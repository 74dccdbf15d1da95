/* Compares the serial reference kernels against their OpenMP versions:
 * exhaustive subspace scans, classification sweeps, and the certification
 * grid behind the isomorphism test.  Outputs agree entry for entry; only
 * the wall time differs. */

#include <chrono>
#include <iostream>

#include "lamq/parallel.hpp"
#include "lamq/verify.hpp"

using namespace lamq;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

void bench_scan(const char* field, const char* q, std::size_t d) {
    Field f = Field::make(field, q);
    LambdaContext ctx(f);
    const Module& reg = ctx.regular(Side::left);
    auto t0 = clk::now();
    SubspaceScan serial = enumerate_submodules_serial(reg, d, 100'000'000ULL);
    auto t1 = clk::now();
    SubspaceScan par = enumerate_submodules(reg, d, 100'000'000ULL);
    auto t2 = clk::now();
    bool same = serial.submodule_bases.size() == par.submodule_bases.size();
    for (std::size_t i = 0; same && i < serial.submodule_bases.size(); ++i)
        same = serial.submodule_bases[i] == par.submodule_bases[i];
    std::cout << "subspace scan " << field << " d=" << d << ": "
              << serial.inspected << " candidates, " << serial.submodule_bases.size()
              << " submodules | serial " << seconds(t0, t1) << "s, parallel "
              << seconds(t1, t2) << "s, match=" << (same ? "yes" : "NO") << "\n";
}

void bench_classification(const char* field, const char* q) {
    Field f = Field::make(field, q);
    LambdaContext ctx(f);
    std::vector<ProjPoint> grid = default_grid(f);
    std::vector<ClassificationReport> serial(grid.size(), ClassificationReport{});
    auto t0 = clk::now();
    for (std::size_t i = 0; i < grid.size(); ++i)
        serial[i] = classify_computational(ctx, grid[i], Side::left, 6);
    auto t1 = clk::now();
    std::vector<ClassificationReport> par(grid.size(), ClassificationReport{});
    parallel_for(grid.size(), [&](std::size_t i) {
        par[i] = classify_computational(ctx, grid[i], Side::left, 6);
    }, 1);
    auto t2 = clk::now();
    bool same = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string why;
        same = same && reports_consistent(serial[i], par[i], &why);
    }
    std::cout << "classification sweep " << field << " q=" << q << ": " << grid.size()
              << " points | serial " << seconds(t0, t1) << "s, parallel "
              << seconds(t1, t2) << "s, match=" << (same ? "yes" : "NO") << "\n";
}

}  // namespace

int main() {
    std::cout << "threads: " << hardware_threads() << "\n";
    bench_scan("Fp:3", "2", 2);
    bench_scan("Fp:3", "2", 3);
    bench_scan("Fp:2", "1", 3);
    bench_classification("Q", "2");
    bench_classification("Fp:5", "2");
    return 0;
}
