// Compares the serial reference verification sweep against the OpenMP
// fan-out and confirms the reports agree byte for byte.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kbsym/report.hpp"

using namespace kbsym;

int main(int argc, char** argv) {
    RunConfig cfg;
    cfg.scope = argc > 1 ? argv[1] : "catalog";
    cfg.trials = 12;
    auto checks = checks_in_scope(cfg.scope);
    if (checks.empty()) {
        std::fprintf(stderr, "unknown scope %s\n", cfg.scope.c_str());
        return 2;
    }
    std::printf("scope %s: %zu checks\n", cfg.scope.c_str(), checks.size());

    cfg.jobs = 1;
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport serial = run_checks_serial(checks, cfg);
    auto t1 = std::chrono::steady_clock::now();
    double serial_s = std::chrono::duration<double>(t1 - t0).count();
    std::printf("serial reference: %6.2f s  (%d pass, %d fail)\n", serial_s, serial.n_pass,
                serial.n_fail);

    int max_jobs = 2;
#ifdef _OPENMP
    max_jobs = omp_get_max_threads();
#endif
    for (int jobs : {2, 4, max_jobs}) {
        if (jobs > max_jobs || jobs < 2) continue;
        RunConfig c = cfg;
        c.jobs = jobs;
        auto t2 = std::chrono::steady_clock::now();
        VerificationReport par = run_checks(checks, c);
        auto t3 = std::chrono::steady_clock::now();
        double par_s = std::chrono::duration<double>(t3 - t2).count();
        // the serialized reports must agree apart from the jobs echo
        RunConfig cc = c;
        cc.jobs = 1;
        VerificationReport norm = par;
        norm.cfg = cc;
        bool same = norm.to_json() == serial.to_json();
        std::printf("omp jobs=%-2d      %6.2f s  speedup %4.2fx  report %s\n", jobs, par_s,
                    serial_s / par_s, same ? "identical" : "DIFFERS");
        if (!same) return 1;
        if (jobs == max_jobs) break;
    }
    std::printf("note: the sweep is allocation-bound (shared expression trees); speedup\n"
                "tracks the memory subsystem rather than core count on small machines.\n");
    return serial.n_fail == 0 ? 0 : 1;
}
