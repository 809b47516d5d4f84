// Benchmark comparing the serial reference path against the OpenMP path for
// the two data-parallel kernels: convex-roof restarts and suite sampling.
// Also asserts that both paths agree exactly, which is the determinism
// contract the parallel code must keep.

#include <chrono>
#include <cstdio>

#include "qcoh/roof.hpp"
#include "qcoh/suites.hpp"

using namespace qcoh;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0);
}

} // namespace

int main() {
    std::printf("openmp: %s\n", openmp_enabled() ? "enabled" : "disabled (serial build)");

    {
        const DensityMatrix rho = random_mixed(4, 3, 2024);
        RoofOptions opts;
        opts.restarts = 64;

        MonotoneEstimate serial_est, parallel_est;
        opts.exec = Exec::serial;
        const double t_serial = timed([&] {
            serial_est = coherence_k_concurrence_mixed(rho, 2, opts);
        });
        opts.exec = Exec::parallel;
        const double t_parallel = timed([&] {
            parallel_est = coherence_k_concurrence_mixed(rho, 2, opts);
        });

        const bool identical = serial_est.value == parallel_est.value &&
                               serial_est.restart_values == parallel_est.restart_values;
        std::printf("roof restarts (d=4, rank 3, 64 restarts):\n");
        std::printf("  serial   %8.3f s   value %.12f\n", t_serial, serial_est.value);
        std::printf("  parallel %8.3f s   value %.12f   speedup %.2fx   identical %s\n",
                    t_parallel, parallel_est.value, t_serial / t_parallel,
                    identical ? "yes" : "NO");
        if (!identical) return 1;
    }

    {
        SuiteOptions opts;
        opts.samples = 400;

        SuiteReport serial_rep, parallel_rep;
        opts.exec = Exec::serial;
        const double t_serial = timed([&] { serial_rep = ordering_suite(opts); });
        opts.exec = Exec::parallel;
        const double t_parallel = timed([&] { parallel_rep = ordering_suite(opts); });

        const bool identical = serial_rep.max_defect == parallel_rep.max_defect &&
                               serial_rep.violations.size() == parallel_rep.violations.size();
        std::printf("ordering suite (400 samples per d):\n");
        std::printf("  serial   %8.3f s   max_defect %.3e\n", t_serial, serial_rep.max_defect);
        std::printf("  parallel %8.3f s   max_defect %.3e   speedup %.2fx   identical %s\n",
                    t_parallel, parallel_rep.max_defect, t_serial / t_parallel,
                    identical ? "yes" : "NO");
        if (!identical) return 1;
    }

    {
        SuiteOptions opts;
        opts.samples = 40;

        SuiteReport serial_rep, parallel_rep;
        opts.exec = Exec::serial;
        const double t_serial = timed([&] { serial_rep = theorem4_mixed_suite(opts); });
        opts.exec = Exec::parallel;
        const double t_parallel = timed([&] { parallel_rep = theorem4_mixed_suite(opts); });

        const bool identical = serial_rep.max_defect == parallel_rep.max_defect;
        std::printf("theorem4_mixed suite (40 samples, 4 roof runs each):\n");
        std::printf("  serial   %8.3f s   max_defect %.3e\n", t_serial, serial_rep.max_defect);
        std::printf("  parallel %8.3f s   max_defect %.3e   speedup %.2fx   identical %s\n",
                    t_parallel, parallel_rep.max_defect, t_serial / t_parallel,
                    identical ? "yes" : "NO");
        if (!identical) return 1;
    }

    return 0;
}
