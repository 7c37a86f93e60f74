#pragma once

#include <utility>
#include <vector>

#include "lpflow/lp_model.hpp"
#include "lpflow/profile.hpp"
#include "lpflow/rng.hpp"

namespace lpflow {

/// Robin-Hood transfer: (s_i, s_j) -> (l s_i + (1-l) s_j, (1-l) s_i + l s_j).
/// lambda = 0 is a plain swap.
struct TTransfer {
    int i;
    int j;
    double lambda;
};

enum class OrderVerdict { ConsistentWithOrder, Violation, Inconclusive };

struct StopLossReport {
    std::vector<double> thresholds;
    std::vector<double> lhs;    // E (a - U)_+ with U = <eta,X>^2
    std::vector<double> rhs;    // E (a - V)_+ with V = <theta,X>^2
    std::vector<double> se;     // SE of the paired difference lhs - rhs
    OrderVerdict verdict = OrderVerdict::Inconclusive;
    double mean_u = 0.0;
    double mean_v = 0.0;
    double mean_diff_se = 0.0;  // SE of the paired mean difference
    long long samples = 0;
};

struct SchurScanReport {
    std::vector<double> values;
    std::vector<double> ses;
    std::vector<double> gap_means;
    std::vector<double> gap_ses;
    bool monotone = false;
    int failing_pair = -1;  // index k of the first gap not resolved above 3 SE
    long long samples = 0;
};

struct CounterexampleReport {
    double prob_exceed = 0.0;  // P(<eta,X>^2 > 1)
    double prob_se = 0.0;
    double excess_mean = 0.0;  // E (<eta,X>^2 - 1)_+
    double excess_se = 0.0;
    double support_bound = 0.0;  // ||eta||_q = 2^{1/q - 1/2}
    long long samples = 0;
};

/// True iff every partial sum of the decreasing rearrangement of s dominates
/// the one of r, within tol. Totals must agree within tol.
bool majorizes(const std::vector<double>& s, const std::vector<double>& r, double tol = 1e-9);

std::vector<double> apply_transfers(std::vector<double> s, const std::vector<TTransfer>& chain);

/// Constructive transfer chain from `from` to `to` (requires from >maj to).
/// Value-shaping transfers act between sorted ranks; trailing lambda = 0
/// swaps fix the final arrangement. For similarly sorted inputs the chain
/// has at most n-1 steps.
std::vector<TTransfer> t_transform_chain(const std::vector<double>& from,
                                         const std::vector<double>& to, double tol = 1e-9);

/// Empirical lower stop-loss curve a -> E (a - u)_+ with standard errors.
std::pair<std::vector<double>, std::vector<double>> stop_loss_curve(
    const std::vector<double>& squared_samples, const std::vector<double>& thresholds);

/// Tests <eta,X>^2 <=_cx <theta,X>^2 through paired lower stop-loss curves
/// on common random numbers. Requires s(theta) >maj s(eta) and p < 2.
StopLossReport convex_order_test(const BallParams& params, const Direction& theta,
                                 const Direction& eta, const std::vector<double>& grid,
                                 long long budget, RngStream stream);

/// Checks that M strictly decreases along a chain of directions ordered by
/// strict majorization of the squared coordinates (gap > 3 combined SE).
SchurScanReport schur_scan(const BallParams& params, double t,
                           const std::vector<Direction>& chain, long long budget,
                           RngStream stream);

/// The p > 2 failure of the convex-order comparison: for eta = (e1+e2)/sqrt2
/// the squared projection exceeds 1 with positive probability even though
/// s(e1) >maj s(eta).
CounterexampleReport p_gt_2_counterexample(double p, int n, long long budget, RngStream stream);

}  // namespace lpflow
