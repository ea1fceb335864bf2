// Timings for the parallel kernels against their serial reference paths.
// Both paths must produce identical results; the checksum column makes a
// silent divergence visible.

#include "classrank/classgroup.hpp"
#include "classrank/jacobian.hpp"
#include "classrank/specialize.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace classrank;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Row {
    const char* name;
    double serial, parallel;
    long checksum_serial, checksum_parallel;
};

void print_row(const Row& r) {
    std::printf("%-28s %9.3fs %9.3fs %7.2fx  checksum %ld/%ld %s\n", r.name, r.serial,
                r.parallel, r.parallel > 0 ? r.serial / r.parallel : 0.0, r.checksum_serial,
                r.checksum_parallel, r.checksum_serial == r.checksum_parallel ? "ok" : "MISMATCH");
}

Row bench_class_numbers() {
    Row r{"class_number_sweep -1e4..0", 0, 0, 0, 0};
    auto t0 = clock_type::now();
    auto ser = class_number_sweep(-10'000, -3, Exec::serial);
    r.serial = seconds_since(t0);
    t0 = clock_type::now();
    auto par = class_number_sweep(-10'000, -3, Exec::parallel);
    r.parallel = seconds_since(t0);
    for (auto& [D, h] : ser) r.checksum_serial += h;
    for (auto& [D, h] : par) r.checksum_parallel += h;
    return r;
}

Row bench_count_points() {
    Row r{"count_points g=1, p~2e6", 0, 0, 0, 0};
    PolyQ h;
    h.coeff(0) = 1;
    h.coeff(3) = -1;
    auto C = make_curve(h);
    long p = 1'999'993;
    auto t0 = clock_type::now();
    r.checksum_serial = count_points(C, p, 1, Exec::serial);
    r.serial = seconds_since(t0);
    t0 = clock_type::now();
    r.checksum_parallel = count_points(C, p, 1, Exec::parallel);
    r.parallel = seconds_since(t0);
    return r;
}

Row bench_torsion_profile() {
    Row r{"torsion_profile g=1, p=1999", 0, 0, 0, 0};
    PolyQ h;
    h.coeff(0) = 1;
    h.coeff(3) = -1;
    auto C = reduce_curve(make_curve(h), 1999, 1);
    auto t0 = clock_type::now();
    r.checksum_serial = torsion_profile(C, 3, Exec::serial);
    r.serial = seconds_since(t0);
    t0 = clock_type::now();
    r.checksum_parallel = torsion_profile(C, 3, Exec::parallel);
    r.parallel = seconds_since(t0);
    return r;
}

Row bench_search() {
    Row r{"run_search toy m=3, 60 fibers", 0, 0, 0, 0};
    auto fam = toy_family(3);
    SearchBudgets budgets;
    budgets.measure_budget = 4'000'000;
    auto t0 = clock_type::now();
    auto ser = run_search(fam, 1, 60, budgets, Exec::serial);
    r.serial = seconds_since(t0);
    t0 = clock_type::now();
    auto par = run_search(fam, 1, 60, budgets, Exec::parallel);
    r.parallel = seconds_since(t0);
    for (auto& rec : ser) r.checksum_serial += rec.certified_bound + (rec.measured_rank ? *rec.measured_rank : 0);
    for (auto& rec : par) r.checksum_parallel += rec.certified_bound + (rec.measured_rank ? *rec.measured_rank : 0);
    return r;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");
    print_row(bench_class_numbers());
    print_row(bench_count_points());
    print_row(bench_torsion_profile());
    print_row(bench_search());
    return 0;
}
