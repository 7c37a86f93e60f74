#include "lpflow/order_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lpflow/sampler.hpp"

namespace lpflow {

namespace {

constexpr long long kChunk = 1 << 15;

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

// Indices of v in decreasing value order (stable).
std::vector<int> desc_order(const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
    return idx;
}

bool strictly_majorizes(const std::vector<double>& s, const std::vector<double>& r, double tol) {
    if (!majorizes(s, r, tol)) return false;
    const std::vector<double> sd = sorted_desc(s), rd = sorted_desc(r);
    for (std::size_t i = 0; i < sd.size(); ++i)
        if (std::abs(sd[i] - rd[i]) > tol) return true;
    return false;
}

// Fixed-chunk deterministic parallel sweep; per-sample body fills z, chunk
// sums are combined in chunk order so the thread count never matters.
template <typename Body>
void chunked_sweep(long long budget, int width, RngStream stream, const Body& body,
                   std::vector<double>& sum, std::vector<double>& sumsq, long long& count) {
    const long long nchunks = (budget + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> csum(nchunks), csumsq(nchunks);
    std::atomic<long long> next{0};
    auto worker = [&]() {
        std::vector<double> z(width);
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= nchunks) return;
            csum[c].assign(width, 0.0);
            csumsq[c].assign(width, 0.0);
            RngEngine rng(stream.substream(c));
            const long long lo = c * kChunk;
            const long long hi = std::min(budget, lo + kChunk);
            for (long long i = lo; i < hi; ++i) {
                body(rng, z);
                for (int k = 0; k < width; ++k) {
                    csum[c][k] += z[k];
                    csumsq[c][k] += z[k] * z[k];
                }
            }
        }
    };
    const int nt = static_cast<int>(std::max<long long>(1, std::min<long long>(mc_threads(), nchunks)));
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    sum.assign(width, 0.0);
    sumsq.assign(width, 0.0);
    for (long long c = 0; c < nchunks; ++c)
        for (int k = 0; k < width; ++k) {
            sum[k] += csum[c][k];
            sumsq[k] += csumsq[c][k];
        }
    count = budget;
}

}  // namespace

bool majorizes(const std::vector<double>& s, const std::vector<double>& r, double tol) {
    if (s.size() != r.size()) throw std::domain_error("majorizes: length mismatch");
    const std::vector<double> sd = sorted_desc(s), rd = sorted_desc(r);
    double cs = 0.0, cr = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        cs += sd[i];
        cr += rd[i];
        if (i + 1 < sd.size() && cs < cr - tol) return false;
    }
    if (std::abs(cs - cr) > tol) throw std::domain_error("majorizes: totals differ beyond tol");
    return true;
}

std::vector<double> apply_transfers(std::vector<double> s, const std::vector<TTransfer>& chain) {
    for (const TTransfer& t : chain) {
        const double a = s[t.i], b = s[t.j];
        s[t.i] = t.lambda * a + (1.0 - t.lambda) * b;
        s[t.j] = (1.0 - t.lambda) * a + t.lambda * b;
    }
    return s;
}

std::vector<TTransfer> t_transform_chain(const std::vector<double>& from,
                                         const std::vector<double>& to, double tol) {
    if (!majorizes(from, to, tol)) throw std::domain_error("t_transform_chain: from must majorize to");
    const int n = static_cast<int>(from.size());
    std::vector<TTransfer> chain;
    std::vector<double> x = from;
    const std::vector<double> target = sorted_desc(to);

    // Value shaping between sorted ranks: donate from the first rank in
    // surplus to the next rank in deficit; each step zeroes one surplus or
    // deficit, but re-sorting can revisit a rank, so allow n^2 steps.
    for (int step = 0; step < n * n; ++step) {
        const std::vector<int> ord = desc_order(x);
        int j = -1, k = -1;
        for (int m = 0; m < n; ++m) {
            const double d = x[ord[m]] - target[m];
            if (j < 0 && d > tol) j = m;
            if (j >= 0 && d < -tol) {
                k = m;
                break;
            }
        }
        if (j < 0 || k < 0) break;
        const int oj = ord[j], ok = ord[k];
        const double surplus = x[oj] - target[j];
        const double deficit = target[k] - x[ok];
        const double delta = std::min(surplus, deficit);
        const double a = x[oj], b = x[ok];
        chain.push_back({oj, ok, (a - delta - b) / (a - b)});
        x[oj] = a - delta;
        x[ok] = b + delta;
    }

    // Arrangement: lambda = 0 swaps put equal values in their target slots.
    for (int i = 0; i < n; ++i) {
        if (std::abs(x[i] - to[i]) <= tol) continue;
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(x[j] - to[i]) <= tol) {
                chain.push_back({i, j, 0.0});
                std::swap(x[i], x[j]);
                break;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (std::abs(x[i] - to[i]) > 10 * tol)
            throw std::runtime_error("t_transform_chain: replay mismatch");
    return chain;
}

std::pair<std::vector<double>, std::vector<double>> stop_loss_curve(
    const std::vector<double>& squared_samples, const std::vector<double>& thresholds) {
    if (squared_samples.empty()) throw std::invalid_argument("stop_loss_curve: no samples");
    const double n = static_cast<double>(squared_samples.size());
    std::vector<double> means, ses;
    for (double a : thresholds) {
        if (a < 0.0) throw std::domain_error("stop_loss_curve: negative threshold");
        double sum = 0.0, sumsq = 0.0;
        for (double u : squared_samples) {
            const double v = std::max(a - u, 0.0);
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / n;
        means.push_back(mean);
        ses.push_back(std::sqrt(std::max(0.0, sumsq / n - mean * mean) / n));
    }
    return {means, ses};
}

StopLossReport convex_order_test(const BallParams& params, const Direction& theta,
                                 const Direction& eta, const std::vector<double>& grid,
                                 long long budget, RngStream stream) {
    if (params.p >= 2.0)
        throw std::domain_error("convex_order_test: requires p < 2");
    if (theta.dim() != params.n || eta.dim() != params.n)
        throw std::domain_error("convex_order_test: direction dimension mismatch");
    if (!majorizes(theta.squared, eta.squared, 1e-9))
        throw std::domain_error("convex_order_test: s(theta) must majorize s(eta)");
    if (budget <= 0) throw std::invalid_argument("convex_order_test: zero sample budget");
    const int ng = static_cast<int>(grid.size());
    for (double a : grid)
        if (a < 0.0) throw std::domain_error("convex_order_test: negative threshold");

    // Per sample: U, V, the paired mean gap U - V, then for each grid a the
    // stop-loss value (a-U)_+ and the paired difference D(a) = (a-U)_+ - (a-V)_+.
    const int width = 3 + 2 * ng;
    auto body = [&](RngEngine& rng, std::vector<double>& z) {
        const std::vector<double> x = sample_uniform_ball(params, rng);
        double du = 0.0, dv = 0.0;
        for (int i = 0; i < params.n; ++i) {
            du += eta.theta[i] * x[i];
            dv += theta.theta[i] * x[i];
        }
        const double u = du * du, v = dv * dv;
        z[0] = u;
        z[1] = v;
        z[2] = u - v;
        for (int g = 0; g < ng; ++g) {
            const double su = std::max(grid[g] - u, 0.0);
            z[3 + g] = su;
            z[3 + ng + g] = su - std::max(grid[g] - v, 0.0);
        }
    };
    std::vector<double> sum, sumsq;
    long long count = 0;
    chunked_sweep(budget, width, stream, body, sum, sumsq, count);

    StopLossReport rep;
    rep.thresholds = grid;
    rep.samples = count;
    const double n = static_cast<double>(count);
    rep.mean_u = sum[0] / n;
    rep.mean_v = sum[1] / n;
    const double gap_mean = sum[2] / n;
    rep.mean_diff_se = std::sqrt(std::max(0.0, sumsq[2] / n - gap_mean * gap_mean) / n);

    bool violation = false;
    for (int g = 0; g < ng; ++g) {
        const double dmean = sum[3 + ng + g] / n;
        const double dse =
            std::sqrt(std::max(0.0, sumsq[3 + ng + g] / n - dmean * dmean) / n);
        rep.lhs.push_back(sum[3 + g] / n);
        rep.rhs.push_back(sum[3 + g] / n - dmean);
        rep.se.push_back(dse);
        if (dmean > 3.0 * dse && dmean > 1e-14) violation = true;
    }

    const bool means_ok = std::abs(gap_mean) <= 4.0 * rep.mean_diff_se + 1e-14;
    if (violation)
        rep.verdict = OrderVerdict::Violation;
    else if (means_ok)
        rep.verdict = OrderVerdict::ConsistentWithOrder;
    else
        rep.verdict = OrderVerdict::Inconclusive;
    return rep;
}

SchurScanReport schur_scan(const BallParams& params, double t,
                           const std::vector<Direction>& chain, long long budget,
                           RngStream stream) {
    if (params.p >= 2.0) throw std::domain_error("schur_scan: requires p < 2");
    if (!(t > 0.0)) throw std::domain_error("schur_scan: requires t > 0");
    if (chain.size() < 2) throw std::domain_error("schur_scan: chain needs at least two directions");
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        if (!strictly_majorizes(chain[k].squared, chain[k + 1].squared, 1e-9))
            throw std::domain_error("schur_scan: consecutive pairs must be strictly ordered");

    const ChainEstimate est = laplace_m_chain(params, t, chain, budget, stream);
    SchurScanReport rep;
    rep.values = est.values;
    rep.ses = est.ses;
    rep.gap_means = est.gap_means;
    rep.gap_ses = est.gap_ses;
    rep.samples = est.samples;
    rep.monotone = true;
    for (std::size_t k = 0; k < rep.gap_means.size(); ++k) {
        if (!(rep.gap_means[k] > 3.0 * rep.gap_ses[k])) {
            rep.monotone = false;
            rep.failing_pair = static_cast<int>(k);
            break;
        }
    }
    return rep;
}

CounterexampleReport p_gt_2_counterexample(double p, int n, long long budget, RngStream stream) {
    if (!(p > 2.0)) throw std::domain_error("p_gt_2_counterexample: requires p > 2");
    if (n < 2) throw std::domain_error("p_gt_2_counterexample: requires n >= 2");
    if (budget <= 0) throw std::invalid_argument("p_gt_2_counterexample: zero sample budget");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto body = [&](RngEngine& rng, std::vector<double>& z) {
        const std::vector<double> x = sample_ball_raw(p, n, rng);
        const double w = (x[0] + x[1]) * inv_sqrt2;
        const double sq = w * w;
        z[0] = sq > 1.0 ? 1.0 : 0.0;
        z[1] = std::max(sq - 1.0, 0.0);
    };
    std::vector<double> sum, sumsq;
    long long count = 0;
    chunked_sweep(budget, 2, stream, body, sum, sumsq, count);

    CounterexampleReport rep;
    rep.samples = count;
    const double m = static_cast<double>(count);
    rep.prob_exceed = sum[0] / m;
    rep.prob_se = std::sqrt(std::max(0.0, sumsq[0] / m - rep.prob_exceed * rep.prob_exceed) / m);
    rep.excess_mean = sum[1] / m;
    rep.excess_se = std::sqrt(std::max(0.0, sumsq[1] / m - rep.excess_mean * rep.excess_mean) / m);
    const double q = p / (p - 1.0);
    rep.support_bound = std::pow(2.0, 1.0 / q - 0.5);
    return rep;
}

}  // namespace lpflow
