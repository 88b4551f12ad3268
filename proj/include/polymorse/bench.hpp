#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace polymorse {

struct BenchOptions {
    std::vector<std::size_t> sizes{100, 1000, 10000};
    int repetitions = 5;
    std::uint64_t seed = 7;
    /// Each timed repetition loops until at least this long and reports the
    /// mean, so that tiny inputs are not dominated by clock resolution.
    double min_rep_ms = 2.0;
};

struct BenchRow {
    std::size_t requested = 0;
    std::size_t vertices = 0;
    std::size_t faces = 0;
    std::uint64_t seed = 0;
    double steps_1_3_ms = 0.0;  // median
    double steps_4_5_ms = 0.0;  // median
};

struct BenchReport {
    std::vector<BenchRow> rows;
    /// Largest over smallest per-vertex time of edge classification and
    /// equilibrium search.
    double linear_ratio = 0.0;
    /// Least-squares log-log slope of tracing and stitching time.
    double tracing_slope = 0.0;
    double largest_total_ms = 0.0;

    bool linear_ok() const { return linear_ratio <= 2.0; }
    bool quadratic_ok() const { return tracing_slope <= 2.2; }
    bool time_ok() const { return largest_total_ms < 10000.0; }
};

/// Random hulls of each size; a seed whose hull turns out non-generic is
/// skipped in favour of the next one.
BenchReport run_bench(const BenchOptions& options = {});

void print_bench(const BenchReport& report, std::ostream& out);

}  // namespace polymorse
