#pragma once

// The shared Monte Carlo estimation engine.  Samples are produced in fixed
// chunks, each chunk on its own derived stream, and chunk statistics are
// merged by pairwise (tree) combination in index order -- so a result is
// bit-identical for a given stream no matter how many workers ran it.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cup/batch.hpp"
#include "cup/errors.hpp"
#include "cup/parallel.hpp"
#include "cup/rng.hpp"

namespace cup::verify {

/// A Monte Carlo mean with standard error; exact (closed-form) values travel
/// through the same type with exact = true and std_error = 0.
struct MCEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t count = 0;
    bool exact = false;
    RngStream stream{};

    static MCEstimate exact_value(double v) {
        MCEstimate e;
        e.mean = v;
        e.exact = true;
        return e;
    }

    /// Estimate of a*X + b for a known constant a, b.
    MCEstimate affine(double a, double b = 0) const {
        MCEstimate e = *this;
        e.mean = a * mean + b;
        e.std_error = std::fabs(a) * std_error;
        return e;
    }
};

namespace detail {

struct ChunkStats {
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;  // sum of squared deviations

    static ChunkStats merge(const ChunkStats& a, const ChunkStats& b) {
        if (a.n == 0) return b;
        if (b.n == 0) return a;
        ChunkStats r;
        r.n = a.n + b.n;
        const double delta = b.mean - a.mean;
        r.mean = a.mean + delta * (static_cast<double>(b.n) / r.n);
        r.m2 = a.m2 + b.m2 +
               delta * delta * (static_cast<double>(a.n) * static_cast<double>(b.n) / r.n);
        return r;
    }
};

/// Pairwise tree merge in index order.
inline ChunkStats merge_all(std::vector<ChunkStats> stats) {
    if (stats.empty()) return {};
    while (stats.size() > 1) {
        std::vector<ChunkStats> next;
        next.reserve((stats.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < stats.size(); i += 2)
            next.push_back(ChunkStats::merge(stats[i], stats[i + 1]));
        if (stats.size() % 2) next.push_back(stats.back());
        stats.swap(next);
    }
    return stats.front();
}

inline constexpr std::size_t kChunk = 1 << 16;

}  // namespace detail

/// Chunked, deterministic-by-stream mean of integrand(point) over draws from
/// sampler(count, stream).  Integrand: double(std::span<const double>);
/// sampler: PointBatch(std::size_t, RngStream).  A non-finite integrand value
/// aborts the estimate and names the offending point.
template <class Integrand, class Sampler>
MCEstimate mc_estimate(Integrand&& integrand, Sampler&& sampler, std::size_t count,
                       RngStream stream) {
    require_domain(count >= 1000, "mc_estimate requires count >= 1000");
    const std::size_t chunks = (count + detail::kChunk - 1) / detail::kChunk;
    std::vector<detail::ChunkStats> stats(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t lo = c * detail::kChunk;
        const std::size_t n = std::min(detail::kChunk, count - lo);
        const PointBatch batch = sampler(n, substream(stream, c));
        detail::ChunkStats s;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = integrand(batch.point(i));
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "mc_estimate: integrand returned " << v << " at point (";
                auto p = batch.point(i);
                for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
                os << ") [chunk " << c << ", index " << i << "]";
                throw domain_error(os.str());
            }
            ++s.n;
            const double delta = v - s.mean;
            s.mean += delta / s.n;
            s.m2 += delta * (v - s.mean);
        }
        stats[c] = s;
    });
    const detail::ChunkStats total = detail::merge_all(std::move(stats));
    MCEstimate e;
    e.count = total.n;
    e.mean = total.mean;
    e.std_error = total.n > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n) : 0.0;
    e.stream = stream;
    return e;
}

}  // namespace cup::verify
