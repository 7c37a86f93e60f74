#include "lpflow/profile.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lpflow/sampler.hpp"
#include "lpflow/special.hpp"

namespace lpflow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr long long kChunk = 1 << 15;

int g_threads = static_cast<int>(std::thread::hardware_concurrency());

/// Per-chunk plain sums; chunks are reduced in index order so the result is
/// independent of the thread count.
struct ChunkStats {
    std::vector<double> sum, sumsq;      // per direction
    std::vector<double> dsum, dsumsq;    // per consecutive gap
    long long count = 0;
};

template <typename PerSample>
std::vector<ChunkStats> run_chunks(long long budget, int stats_dirs, int stats_gaps,
                                   RngStream stream, const PerSample& body) {
    const long long nchunks = (budget + kChunk - 1) / kChunk;
    std::vector<ChunkStats> stats(nchunks);
    std::atomic<long long> next{0};
    auto worker = [&]() {
        std::vector<double> z(stats_dirs);
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= nchunks) return;
            ChunkStats& s = stats[c];
            s.sum.assign(stats_dirs, 0.0);
            s.sumsq.assign(stats_dirs, 0.0);
            s.dsum.assign(stats_gaps, 0.0);
            s.dsumsq.assign(stats_gaps, 0.0);
            RngEngine rng(stream.substream(c));
            const long long lo = c * kChunk;
            const long long hi = std::min(budget, lo + kChunk);
            for (long long i = lo; i < hi; ++i) {
                body(rng, z);
                for (int k = 0; k < stats_dirs; ++k) {
                    s.sum[k] += z[k];
                    s.sumsq[k] += z[k] * z[k];
                }
                for (int k = 0; k < stats_gaps; ++k) {
                    const double d = z[k] - z[k + 1];
                    s.dsum[k] += d;
                    s.dsumsq[k] += d * d;
                }
                ++s.count;
            }
        }
    };
    const int nt = static_cast<int>(std::max<long long>(1, std::min<long long>(g_threads, nchunks)));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return stats;
}

ChainEstimate reduce(const std::vector<ChunkStats>& stats, int dirs, int gaps) {
    std::vector<double> sum(dirs, 0.0), sumsq(dirs, 0.0), dsum(gaps, 0.0), dsumsq(gaps, 0.0);
    long long n = 0;
    for (const ChunkStats& s : stats) {
        for (int k = 0; k < dirs; ++k) {
            sum[k] += s.sum[k];
            sumsq[k] += s.sumsq[k];
        }
        for (int k = 0; k < gaps; ++k) {
            dsum[k] += s.dsum[k];
            dsumsq[k] += s.dsumsq[k];
        }
        n += s.count;
    }
    ChainEstimate out;
    out.samples = n;
    for (int k = 0; k < dirs; ++k) {
        const double mean = sum[k] / n;
        const double var = std::max(0.0, sumsq[k] / n - mean * mean);
        out.values.push_back(mean);
        out.ses.push_back(std::sqrt(var / n));
    }
    for (int k = 0; k < gaps; ++k) {
        const double mean = dsum[k] / n;
        const double var = std::max(0.0, dsumsq[k] / n - mean * mean);
        out.gap_means.push_back(mean);
        out.gap_ses.push_back(std::sqrt(var / n));
    }
    return out;
}

}  // namespace

Direction::Direction(std::vector<double> v) : theta(std::move(v)) {
    if (theta.empty()) throw std::domain_error("Direction: empty vector");
    double nrm = 0.0;
    for (double x : theta) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0)) throw std::domain_error("Direction: zero vector");
    squared.resize(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] /= nrm;
        squared[i] = theta[i] * theta[i];
    }
}

Direction Direction::e1(int n) {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return Direction(std::move(v));
}

Direction Direction::diagonal(int n) { return canonical(n, n); }

Direction Direction::canonical(int k, int n) {
    if (k < 1 || k > n) throw std::domain_error("Direction::canonical: k out of [1,n]");
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < k; ++i) v[i] = 1.0;
    return Direction(std::move(v));
}

void set_mc_threads(int threads) { g_threads = std::max(1, threads); }
int mc_threads() { return g_threads; }

ChainEstimate laplace_m_chain(const BallParams& params, double t,
                              const std::vector<Direction>& dirs, long long budget,
                              RngStream stream) {
    if (!(t > 0.0)) throw std::domain_error("laplace_m: requires t > 0");
    if (budget <= 0) throw std::invalid_argument("laplace_m: zero sample budget");
    if (dirs.empty()) throw std::invalid_argument("laplace_m: no directions");
    for (const Direction& d : dirs)
        if (d.dim() != params.n) throw std::domain_error("laplace_m: direction dimension mismatch");
    const int nd = static_cast<int>(dirs.size());
    const int n = params.n;
    const double inv2t = 1.0 / (2.0 * t);

    // When a direction spreads its mass evenly over k coordinates, the ball
    // law is invariant under signed coordinate permutations, so the estimate
    // can be averaged over the direction's whole orbit: all k-subsets times
    // all sign patterns (half, by evenness). That collapses the angular
    // variance of the consecutive gaps by orders of magnitude.
    std::vector<int> support(nd, -1);
    long long orbit_work = 0;
    for (int k = 0; k < nd; ++k) {
        int cnt = 0;
        for (double v : dirs[k].theta)
            if (v != 0.0) ++cnt;
        const double mag = 1.0 / std::sqrt(static_cast<double>(cnt));
        bool even = cnt > 0;
        for (double v : dirs[k].theta)
            if (v != 0.0 && std::abs(std::abs(v) - mag) > 1e-12) even = false;
        if (!even) {
            support.clear();
            break;
        }
        support[k] = cnt;
        double terms = 1.0;
        for (int i = 0; i < cnt; ++i) terms *= 2.0 * (n - i) / (i + 1);
        orbit_work += static_cast<long long>(std::min(terms, 1e9)) / 2;
    }
    const bool symmetrized = !support.empty() && n <= 20 && orbit_work <= 30000;

    std::vector<std::vector<std::uint32_t>> masks(nd);
    if (symmetrized)
        for (int k = 0; k < nd; ++k)
            for (std::uint32_t s = 0; s < (1u << n); ++s)
                if (__builtin_popcount(s) == support[k]) masks[k].push_back(s);

    auto body = [&](RngEngine& rng, std::vector<double>& z) {
        const std::vector<double> x = sample_ball_raw(params.p, params.n, rng);
        if (!symmetrized) {
            for (int k = 0; k < nd; ++k) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += dirs[k].theta[i] * x[i];
                z[k] = std::exp(-dot * dot * inv2t);
            }
            return;
        }
        double xs[32];
        for (int k = 0; k < nd; ++k) {
            const int kk = support[k];
            const double scale = inv2t / kk;
            double acc = 0.0;
            for (std::uint32_t s : masks[k]) {
                int b = 0;
                for (int i = 0; i < n; ++i)
                    if (s >> i & 1u) xs[b++] = x[i];
                for (std::uint32_t eps = 0; eps < (1u << (kk - 1)); ++eps) {
                    double dot = xs[0];
                    for (int i = 1; i < kk; ++i) dot += (eps >> (i - 1) & 1u) ? -xs[i] : xs[i];
                    acc += std::exp(-dot * dot * scale);
                }
            }
            z[k] = acc / (masks[k].size() * (1u << (kk - 1)));
        }
    };
    const auto stats = run_chunks(budget, nd, nd - 1, stream, body);
    return reduce(stats, nd, nd - 1);
}

ProfileEstimate laplace_m(const BallParams& params, double t, const Direction& dir,
                          long long budget, RngStream stream) {
    const ChainEstimate c = laplace_m_chain(params, t, {dir}, budget, stream);
    return {c.values[0], c.ses[0], EstimateMethod::MonteCarlo, c.samples};
}

ProfileEstimate profile_a(const BallParams& params, double t, const Direction& dir,
                          long long budget, RngStream stream) {
    ProfileEstimate e = laplace_m(params, t, dir, budget, stream);
    const double f = 1.0 / std::sqrt(kTwoPi * t);
    e.value *= f;
    e.err *= f;
    return e;
}

ProfileEstimate profile_a_tilde(const BallParams& params, double t, const Direction& dir,
                                long long budget, RngStream stream) {
    ProfileEstimate e = laplace_m(params, t, dir, budget, stream);
    const double v = coordinate_moment(params, 2.0);
    const double f = std::sqrt(v + t) / std::sqrt(kTwoPi * t);
    e.value *= f;
    e.err *= f;
    return e;
}

ProfileEstimate coordinate_profile_phi(const BallParams& params, double t,
                                       const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw std::domain_error("coordinate_profile_phi: requires t > 0");
    const MomentSet m = moment_set(params);
    const double pw = (params.n - 1) * params.alpha;
    const double p = params.p;
    const double tp2 = std::pow(t, 0.5 * p);
    // substitution u = sqrt(t) y keeps the integrand O(1) for small t
    const double ylim = std::min(1.0 / std::sqrt(t), 42.0);
    auto f = [&](double y) {
        const double r = tp2 * std::pow(y, p);
        if (r >= 1.0) return 0.0;
        return std::pow(1.0 - r, pw) * std::exp(-0.5 * y * y);
    };
    const QuadResult q = integrate_adaptive(f, 0.0, ylim, spec);
    const double pref = std::sqrt(m.v + t) * 2.0 * m.c_norm / std::sqrt(kTwoPi);
    ProfileEstimate e;
    e.value = pref * q.value;
    e.err = pref * q.err;
    e.method = EstimateMethod::Quadrature;
    e.samples_or_panels = spec.max_subdivisions;
    return e;
}

}  // namespace lpflow
