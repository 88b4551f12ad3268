#include "polymorse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "polymorse/fixtures.hpp"
#include "polymorse/mscomplex.hpp"

namespace polymorse {
namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double mean_ms(Fn&& fn, double min_ms) {
    int runs = 0;
    const auto start = Clock::now();
    double elapsed = 0.0;
    do {
        fn();
        ++runs;
        elapsed = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    } while (elapsed < min_ms);
    return elapsed / runs;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

BenchReport run_bench(const BenchOptions& options) {
    constexpr int kSeedAttempts = 16;
    BenchReport report;
    for (std::size_t n : options.sizes) {
        BenchRow row;
        row.requested = n;
        for (int attempt = 0;; ++attempt) {
            if (attempt == kSeedAttempts)
                throw InconclusiveError("no generic random hull of size " + std::to_string(n));
            row.seed = options.seed + static_cast<std::uint64_t>(attempt);
            const ReferencedPolyhedron rp = with_centroid(make_random_hull(n, row.seed));
            const Equilibria eq = find_equilibria(rp);
            if (eq.report.degenerate()) continue;
            try {
                (void)build_ms_complex(rp, eq);
            } catch (const NonGenericError&) {
                continue;
            }
            row.vertices = rp.polyhedron().vertex_count();
            row.faces = rp.polyhedron().face_count();

            std::vector<double> early, late;
            for (int r = 0; r < options.repetitions; ++r) {
                early.push_back(mean_ms([&] { (void)find_equilibria(rp); }, options.min_rep_ms));
                late.push_back(mean_ms([&] { (void)build_ms_complex(rp, eq); }, options.min_rep_ms));
            }
            row.steps_1_3_ms = median(early);
            row.steps_4_5_ms = median(late);
            break;
        }
        report.rows.push_back(row);
    }

    if (!report.rows.empty()) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const BenchRow& r : report.rows) {
            const double per = r.steps_1_3_ms / static_cast<double>(r.vertices);
            lo = std::min(lo, per);
            hi = std::max(hi, per);
        }
        report.linear_ratio = hi / lo;

        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(report.rows.size());
        for (const BenchRow& r : report.rows) {
            const double x = std::log(static_cast<double>(r.vertices));
            const double y = std::log(r.steps_4_5_ms);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = m * sxx - sx * sx;
        report.tracing_slope = denom > 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
        const BenchRow& big = *std::max_element(report.rows.begin(), report.rows.end(),
                                                [](const BenchRow& a, const BenchRow& b) { return a.vertices < b.vertices; });
        report.largest_total_ms = big.steps_1_3_ms + big.steps_4_5_ms;
    }
    return report;
}

void print_bench(const BenchReport& report, std::ostream& out) {
    out << std::fixed << std::setprecision(3);
    out << std::setw(8) << "n" << std::setw(10) << "V" << std::setw(10) << "F" << std::setw(14) << "steps1-3 ms"
        << std::setw(14) << "steps4-5 ms" << '\n';
    for (const BenchRow& r : report.rows)
        out << std::setw(8) << r.requested << std::setw(10) << r.vertices << std::setw(10) << r.faces << std::setw(14)
            << r.steps_1_3_ms << std::setw(14) << r.steps_4_5_ms << '\n';
    out << "steps 1-3 per-vertex spread: " << report.linear_ratio << (report.linear_ok() ? " (linear)" : " (NOT linear)")
        << '\n';
    out << "steps 4-5 log-log slope: " << report.tracing_slope
        << (report.quadratic_ok() ? " (within quadratic)" : " (ABOVE quadratic)") << '\n';
    out << "largest total: " << report.largest_total_ms << " ms" << '\n';
}

}  // namespace polymorse
