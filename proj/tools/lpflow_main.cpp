#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpflow/appendix.hpp"
#include "lpflow/chain.hpp"
#include "lpflow/flow_classifier.hpp"
#include "lpflow/lp_model.hpp"
#include "lpflow/order_lab.hpp"
#include "lpflow/profile.hpp"
#include "lpflow/sampler.hpp"
#include "lpflow/special.hpp"

namespace {

using namespace lpflow;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Minimal ordered JSON writer so numeric fields serialize with exactly
// 17 significant digits, byte-identically across runs.
class JsonWriter {
public:
    void open_obj(const std::string& key = "") { item(key, "{"); stack_.push_back('}'); first_ = true; }
    void open_arr(const std::string& key = "") { item(key, "["); stack_.push_back(']'); first_ = true; }
    void close() {
        out_ << stack_.back();
        stack_.pop_back();
        first_ = false;
    }
    void put(const std::string& key, double v) { item(key, fmt17(v)); }
    void put(const std::string& key, long long v) { item(key, std::to_string(v)); }
    void put(const std::string& key, int v) { item(key, std::to_string(v)); }
    void put(const std::string& key, bool v) { item(key, v ? "true" : "false"); }
    void put(const std::string& key, const std::string& v) { item(key, "\"" + v + "\""); }
    void put(const std::string& key, const char* v) { put(key, std::string(v)); }
    std::string str() const { return out_.str(); }

private:
    void item(const std::string& key, const std::string& raw) {
        if (!first_) out_ << ",";
        first_ = false;
        if (!key.empty()) out_ << "\"" << key << "\":";
        out_ << raw;
    }
    std::ostringstream out_;
    std::vector<char> stack_;
    bool first_ = true;
};

// SHA-1, used for the git-style content hash of the echoed config.
std::string sha1_hex(const std::string& msg) {
    auto rol = [](std::uint32_t v, int s) { return (v << s) | (v >> (32 - s)); };
    std::uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    std::string data = msg;
    const std::uint64_t bits = static_cast<std::uint64_t>(data.size()) * 8;
    data.push_back(static_cast<char>(0x80));
    while (data.size() % 64 != 56) data.push_back('\0');
    for (int i = 7; i >= 0; --i) data.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    for (std::size_t off = 0; off < data.size(); off += 64) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (static_cast<std::uint32_t>(static_cast<unsigned char>(data[off + 4 * i])) << 24) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(data[off + 4 * i + 1])) << 16) |
                   (static_cast<std::uint32_t>(static_cast<unsigned char>(data[off + 4 * i + 2])) << 8) |
                   static_cast<std::uint32_t>(static_cast<unsigned char>(data[off + 4 * i + 3]));
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) { f = (b & c) | (~b & d); k = 0x5A827999u; }
            else if (i < 40) { f = b ^ c ^ d; k = 0x6ED9EBA1u; }
            else if (i < 60) { f = (b & c) | (b & d) | (c & d); k = 0x8F1BBCDCu; }
            else { f = b ^ c ^ d; k = 0xCA62C1D6u; }
            const std::uint32_t tmp = rol(a, 5) + f + e + k + w[i];
            e = d; d = c; c = rol(b, 30); b = a; a = tmp;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e;
    }
    char out[41];
    std::snprintf(out, sizeof(out), "%08x%08x%08x%08x%08x", h[0], h[1], h[2], h[3], h[4]);
    return out;
}

std::string git_blob_hash(const std::string& content) {
    return sha1_hex("blob " + std::to_string(content.size()) + '\0' + content);
}

struct Options {
    double p = 1.0;
    int n = 2;
    double t = 0.0;
    int k = 1;
    std::string dir = "e1";
    long long budget = 100000;
    long long seed = 0;
    double tol = 1e-10;
    std::string format = "json";
    std::string out = "-";
    int threads = 0;
};

Direction parse_direction(const std::string& s, int n) {
    if (s == "e1") return Direction::e1(n);
    if (s == "diag") return Direction::diagonal(n);
    if (s.rfind("u:", 0) == 0) return Direction::canonical(std::stoi(s.substr(2)), n);
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (static_cast<int>(v.size()) != n)
        throw std::domain_error("direction vector length must equal n");
    return Direction(v);
}

std::string config_echo(const std::string& sub, const Options& o) {
    JsonWriter w;
    w.open_obj();
    w.put("subcommand", sub);
    w.put("p", o.p);
    w.put("n", o.n);
    w.put("t", o.t);
    w.put("k", o.k);
    w.put("dir", o.dir);
    w.put("budget", o.budget);
    w.put("seed", o.seed);
    w.put("tol", o.tol);
    w.put("format", o.format);
    w.close();
    return w.str();
}

struct Row {
    double value;
    double err;
    std::string method;
};

void write_out(const Options& o, const std::string& text) {
    if (o.out == "-" || o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::domain_error("cannot open output path: " + o.out);
    f << text;
}

std::string csv_document(const std::vector<Row>& rows) {
    std::string s = "value,err,method\n";
    for (const Row& r : rows) s += fmt17(r.value) + "," + fmt17(r.err) + "," + r.method + "\n";
    return s;
}

// shared JSON skeleton: config echo + content hash + results object
void begin_json(JsonWriter& w, const std::string& sub, const Options& o) {
    const std::string echo = config_echo(sub, o);
    w.open_obj();
    w.put("config_hash", git_blob_hash(echo));
    w.open_obj("config");
    w.put("subcommand", sub);
    w.put("p", o.p);
    w.put("n", o.n);
    w.put("t", o.t);
    w.put("k", o.k);
    w.put("dir", o.dir);
    w.put("budget", o.budget);
    w.put("seed", o.seed);
    w.put("tol", o.tol);
    w.put("format", o.format);
    w.close();
}

void put_estimate(JsonWriter& w, const std::string& key, double value, double err,
                  const std::string& method) {
    w.open_obj(key);
    w.put("value", value);
    if (method == "exact") {
        w.put("exact", true);
    } else {
        w.put("err", err);
    }
    w.put("method", method);
    w.close();
}

int run_moments(const Options& o) {
    const BallParams params(o.p, o.n);
    const MomentSet ms = moment_set(params);
    if (o.format == "csv") {
        std::vector<Row> rows = {{ms.volume, 0.0, "closed-form"}, {ms.v, 0.0, "closed-form"},
                                 {ms.m4, 0.0, "closed-form"},     {ms.delta, 0.0, "closed-form"},
                                 {ms.big_r, 0.0, "closed-form"},  {ms.c_norm, 0.0, "closed-form"}};
        write_out(o, csv_document(rows));
        return 0;
    }
    JsonWriter w;
    begin_json(w, "moments", o);
    w.open_obj("results");
    put_estimate(w, "volume", ms.volume, 0.0, "exact");
    put_estimate(w, "v", ms.v, 0.0, "exact");
    put_estimate(w, "m4", ms.m4, 0.0, "exact");
    put_estimate(w, "delta", ms.delta, 0.0, "exact");
    put_estimate(w, "big_r", ms.big_r, 0.0, "exact");
    put_estimate(w, "c_norm", ms.c_norm, 0.0, "exact");
    w.put("delta_sign", ms.delta > 0.0 ? 1 : (ms.delta < 0.0 ? -1 : 0));
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return 0;
}

int run_sample(const Options& o) {
    const BallParams params(o.p, o.n);
    if (o.budget < 1) throw std::domain_error("sample: budget must be >= 1");
    RngEngine rng(RngStream{static_cast<std::uint64_t>(o.seed), 0});
    double s2 = 0.0, s4 = 0.0, cross = 0.0, max_norm = 0.0;
    for (long long i = 0; i < o.budget; ++i) {
        const std::vector<double> x = sample_uniform_ball(params, rng);
        s2 += x[0] * x[0];
        s4 += x[0] * x[0] * x[0] * x[0];
        if (o.n >= 2) cross += x[0] * x[0] * x[1] * x[1];
        double nrm = 0.0;
        for (double c : x) nrm += std::pow(std::abs(c), o.p);
        max_norm = std::max(max_norm, nrm);
    }
    const double m = static_cast<double>(o.budget);
    const double v_hat = s2 / m, m4_hat = s4 / m, cross_hat = cross / m;
    const double v_se = std::sqrt(std::max(s4 / m - v_hat * v_hat, 0.0) / m);
    std::vector<Row> rows = {{v_hat, v_se, "monte-carlo"},
                             {m4_hat, 0.0, "monte-carlo"},
                             {cross_hat, 0.0, "monte-carlo"},
                             {max_norm, 0.0, "monte-carlo"}};
    if (o.format == "csv") {
        write_out(o, csv_document(rows));
        return 0;
    }
    JsonWriter w;
    begin_json(w, "sample", o);
    w.open_obj("results");
    put_estimate(w, "v_hat", v_hat, v_se, "monte-carlo");
    put_estimate(w, "m4_hat", m4_hat, 0.0, "monte-carlo");
    put_estimate(w, "cross_hat", cross_hat, 0.0, "monte-carlo");
    put_estimate(w, "max_p_norm", max_norm, 0.0, "monte-carlo");
    w.put("samples", o.budget);
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return 0;
}

int run_profile(const Options& o) {
    const BallParams params(o.p, o.n);
    const Direction dir = parse_direction(o.dir, o.n);
    QuadratureSpec spec;
    spec.abs_tol = o.tol;
    std::vector<Row> rows;
    JsonWriter w;
    begin_json(w, "profile", o);
    w.open_obj("results");
    if (o.t > 0.0) {
        const ProfileEstimate mc = profile_a_tilde(params, o.t, dir, o.budget,
                                                   RngStream{static_cast<std::uint64_t>(o.seed), 0});
        rows.push_back({mc.value, mc.err, "monte-carlo"});
        put_estimate(w, "a_tilde_mc", mc.value, mc.err, "monte-carlo");
        if (o.dir == "e1" || o.dir == "u:1") {
            const ProfileEstimate q = coordinate_profile_phi(params, o.t, spec);
            rows.push_back({q.value, q.err, "quadrature"});
            put_estimate(w, "phi_quadrature", q.value, q.err, "quadrature");
        }
    } else {
        // t = 0: deterministic endpoint route for canonical directions
        int k = o.k;
        if (o.dir == "e1") k = 1;
        else if (o.dir == "diag") k = o.n;
        else if (o.dir.rfind("u:", 0) == 0) k = std::stoi(o.dir.substr(2));
        const double val = endpoint_a0(params, k, spec);
        const EndpointConstants ec = b_constant(o.p, k, spec);
        const double pref = gamma_ratio(1.0 + o.n / o.p, 1.0 + (o.n - 1) / o.p);
        rows.push_back({val, pref * ec.err, "quadrature"});
        put_estimate(w, "a_zero", val, pref * ec.err, "quadrature");
        put_estimate(w, "b_constant", ec.b, ec.err,
                     ec.method == EndpointMethod::ClosedForm ? "exact" : "quadrature");
    }
    w.put("samples", o.t > 0.0 ? o.budget : 0ll);
    w.close();
    w.close();
    if (o.format == "csv") write_out(o, csv_document(rows));
    else write_out(o, w.str() + "\n");
    return 0;
}

int run_scan_schur(const Options& o) {
    const BallParams params(o.p, o.n);
    std::vector<Direction> chain;
    for (int k = 1; k <= o.n; ++k) chain.push_back(Direction::canonical(k, o.n));
    const SchurScanReport rep =
        schur_scan(params, o.t, chain, o.budget, RngStream{static_cast<std::uint64_t>(o.seed), 0});
    if (o.format == "csv") {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < rep.values.size(); ++i)
            rows.push_back({rep.values[i], rep.ses[i], "monte-carlo"});
        write_out(o, csv_document(rows));
        return rep.monotone ? 0 : kExitViolation;
    }
    JsonWriter w;
    begin_json(w, "scan-schur", o);
    w.open_obj("results");
    w.open_arr("values");
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        w.open_obj();
        w.put("k", static_cast<int>(i + 1));
        w.put("value", rep.values[i]);
        w.put("err", rep.ses[i]);
        w.put("method", "monte-carlo");
        w.close();
    }
    w.close();
    w.open_arr("pair_margins_se");
    for (std::size_t i = 0; i < rep.gap_means.size(); ++i)
        w.put("", rep.gap_ses[i] > 0.0 ? rep.gap_means[i] / rep.gap_ses[i] : 0.0);
    w.close();
    w.put("monotone", rep.monotone);
    w.put("failing_pair", rep.failing_pair);
    w.put("samples", rep.samples);
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return rep.monotone ? 0 : kExitViolation;
}

// random instance theta > eta via T-transforms, reproducible from the seed
void random_cx_instance(double p, int n, RngStream stream, Direction& theta, Direction& eta) {
    RngEngine rng(stream);
    std::vector<double> s(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        s[i] = -std::log(rng.next_double());
        total += s[i];
    }
    for (double& x : s) x /= total;
    std::vector<TTransfer> chain;
    const int steps = 1 + static_cast<int>(rng.next_u64() % (n > 1 ? n - 1 : 1));
    for (int c = 0; c < steps; ++c) {
        int i = static_cast<int>(rng.next_u64() % n);
        int j = static_cast<int>(rng.next_u64() % n);
        if (i == j) j = (j + 1) % n;
        chain.push_back({i, j, 0.5 + 0.4 * rng.next_double()});
    }
    const std::vector<double> r = apply_transfers(s, chain);
    std::vector<double> tv(n), ev(n);
    for (int i = 0; i < n; ++i) {
        tv[i] = std::sqrt(s[i]);
        ev[i] = std::sqrt(r[i]);
    }
    theta = Direction(tv);
    eta = Direction(ev);
}

int run_convex_order(const Options& o) {
    const BallParams params(o.p, o.n);
    Direction theta = Direction::e1(o.n), eta = Direction::e1(o.n);
    random_cx_instance(o.p, o.n, RngStream{static_cast<std::uint64_t>(o.seed), 1}, theta, eta);
    const double v = moment_set(params).v;
    const std::vector<double> grid = {0.25 * v, 0.5 * v, v, 2.0 * v, 4.0 * v};
    const StopLossReport rep = convex_order_test(params, theta, eta, grid, o.budget,
                                                 RngStream{static_cast<std::uint64_t>(o.seed), 0});
    if (o.format == "csv") {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < rep.thresholds.size(); ++i)
            rows.push_back({rep.rhs[i] - rep.lhs[i], rep.se[i], "monte-carlo"});
        write_out(o, csv_document(rows));
        return rep.verdict == OrderVerdict::Violation ? kExitViolation : 0;
    }
    JsonWriter w;
    begin_json(w, "convex-order", o);
    w.open_obj("results");
    w.open_arr("theta");
    for (double x : theta.theta) w.put("", x);
    w.close();
    w.open_arr("eta");
    for (double x : eta.theta) w.put("", x);
    w.close();
    w.open_arr("stop_loss");
    for (std::size_t i = 0; i < rep.thresholds.size(); ++i) {
        w.open_obj();
        w.put("a", rep.thresholds[i]);
        w.put("lhs", rep.lhs[i]);
        w.put("rhs", rep.rhs[i]);
        w.put("err", rep.se[i]);
        w.put("method", "monte-carlo");
        w.close();
    }
    w.close();
    const char* verdict = rep.verdict == OrderVerdict::ConsistentWithOrder
                              ? "consistent-with-order"
                              : (rep.verdict == OrderVerdict::Violation ? "violation"
                                                                        : "inconclusive");
    w.put("verdict", verdict);
    put_estimate(w, "mean_gap", rep.mean_u - rep.mean_v, rep.mean_diff_se, "monte-carlo");
    w.put("samples", rep.samples);
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return rep.verdict == OrderVerdict::Violation ? kExitViolation : 0;
}

int run_chain(const Options& o) {
    const BallParams params(o.p, o.n);
    QuadratureSpec spec;
    spec.abs_tol = o.tol;
    const ChainReport rep = chain_check(params, o.t, o.budget,
                                        RngStream{static_cast<std::uint64_t>(o.seed), 0}, spec);
    if (o.format == "csv") {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < rep.values.size(); ++i)
            rows.push_back({rep.values[i], rep.errs[i],
                            rep.deterministic ? "quadrature" : "monte-carlo"});
        write_out(o, csv_document(rows));
        return rep.strictly_decreasing ? 0 : kExitViolation;
    }
    JsonWriter w;
    begin_json(w, "chain", o);
    w.open_obj("results");
    w.open_arr("values");
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        w.open_obj();
        w.put("k", static_cast<int>(i + 1));
        w.put("value", rep.values[i]);
        w.put("err", rep.errs[i]);
        w.put("method", rep.deterministic ? "quadrature" : "monte-carlo");
        w.close();
    }
    w.close();
    w.put("strictly_decreasing", rep.strictly_decreasing);
    w.put("failing_index", rep.failing_index);
    w.put("deterministic", rep.deterministic);
    w.put("samples", rep.samples);
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return rep.strictly_decreasing ? 0 : kExitViolation;
}

int run_classify(const Options& o) {
    const BallParams params(o.p, o.n);
    QuadratureSpec spec;
    spec.abs_tol = o.tol;
    const FlowClassification fc = classify(params, spec);
    if (o.format == "csv") {
        std::vector<Row> rows = {{fc.delta, 0.0, "closed-form"}, {fc.big_r, 0.0, "closed-form"}};
        if (fc.has_witness) {
            rows.push_back({fc.dphi_neg, 0.0, "quadrature"});
            rows.push_back({fc.dphi_pos, 0.0, "quadrature"});
        }
        write_out(o, csv_document(rows));
        return 0;
    }
    JsonWriter w;
    begin_json(w, "classify", o);
    w.open_obj("results");
    put_estimate(w, "delta", fc.delta, 0.0, "exact");
    put_estimate(w, "big_r", fc.big_r, 0.0, "exact");
    w.put("verdict", fc.verdict == FlowVerdict::StrictlyDecreasing ? "strictly-decreasing"
                                                                   : "nonmonotone");
    w.put("has_witness", fc.has_witness);
    if (fc.has_witness) {
        w.put("t_neg", fc.t_neg);
        w.put("dphi_neg", fc.dphi_neg);
        w.put("t_pos", fc.t_pos);
        w.put("dphi_pos", fc.dphi_pos);
    }
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return 0;
}

int run_threshold(const Options& o) {
    const int nn = threshold_n(o.p);
    if (o.format == "csv") {
        write_out(o, csv_document({{static_cast<double>(nn), 0.0, "exact"}}));
        return 0;
    }
    JsonWriter w;
    begin_json(w, "threshold", o);
    w.open_obj("results");
    w.put("threshold_n", nn);
    put_estimate(w, "r_limit", r_limit(o.p), 0.0, "exact");
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return 0;
}

int run_verify_appendix(const Options& o) {
    QuadratureSpec spec;
    spec.abs_tol = o.tol;
    const RngStream base{static_cast<std::uint64_t>(o.seed), 0};
    const PolyIneqReport pi =
        verify_poly_inequality(std::max<long long>(1, o.budget), base.substream(1));
    RngEngine rng(base.substream(2));

    long long wcl_pass = 0, wcl_total = 40, dlt_pass = 0, dlt_total = 20;
    for (long long i = 0; i < wcl_total; ++i) {
        LayerScenario sc;
        sc.alpha = 0.55 + 0.4 * rng.next_double();
        sc.exponent = 3.0 * sc.alpha + 2.0 * rng.next_double();
        sc.coefficient = 0.2 + 2.0 * rng.next_double();
        sc.level = 0.2 + 1.5 * rng.next_double();
        sc = layer_roots(sc);
        if (sc.tangency) {
            sc.level *= 1.0 + 1e-8;
            sc = layer_roots(sc);
        }
        if (wcl_check(sc, spec).holds) ++wcl_pass;
    }
    double worst_route_gap = 0.0;
    for (long long i = 0; i < dlt_total; ++i) {
        const double alpha = 0.55 + 0.4 * rng.next_double();
        const double beta = 1.0 + 2.0 * alpha + 2.0 * rng.next_double();
        const double a_coef = 0.3 + 2.0 * rng.next_double();
        const double x_level = 0.2 + 1.2 * rng.next_double();
        const DltReport dr = dlt_check(alpha, beta, a_coef, x_level, spec);
        if (dr.holds) ++dlt_pass;
        worst_route_gap = std::max(worst_route_gap, dr.route_gap);
    }
    const BaseCaseReport bc = base_case_check(1.5, {0.1, 0.3, 0.5, 0.7}, 0.6, spec);
    const bool all_ok = pi.bernstein_lists_match && pi.boundary_identity && pi.negatives == 0 &&
                        wcl_pass == wcl_total && dlt_pass == dlt_total && bc.monotone &&
                        bc.boundary_nonnegative && bc.consistent;
    if (o.format == "csv") {
        std::vector<Row> rows = {
            {static_cast<double>(pi.negatives), 0.0, "exact"},
            {static_cast<double>(wcl_total - wcl_pass), 0.0, "quadrature"},
            {static_cast<double>(dlt_total - dlt_pass), 0.0, "quadrature"},
            {bc.max_fd_gap, 0.0, "quadrature"}};
        write_out(o, csv_document(rows));
        return all_ok ? 0 : kExitViolation;
    }
    JsonWriter w;
    begin_json(w, "verify-appendix", o);
    w.open_obj("results");
    w.put("bernstein_lists_match", pi.bernstein_lists_match);
    w.put("boundary_identity", pi.boundary_identity);
    w.put("poly_samples", pi.samples);
    w.put("poly_negatives", pi.negatives);
    w.put("poly_min_value", pi.min_value);
    w.put("wcl_pass", wcl_pass);
    w.put("wcl_total", wcl_total);
    w.put("dlt_pass", dlt_pass);
    w.put("dlt_total", dlt_total);
    w.put("dlt_worst_route_gap", worst_route_gap);
    w.put("base_case_monotone", bc.monotone);
    w.put("base_case_boundary_nonnegative", bc.boundary_nonnegative)
        ;
    w.put("base_case_consistent", bc.consistent);
    w.put("base_case_max_fd_gap", bc.max_fd_gap);
    w.put("all_ok", all_ok);
    w.close();
    w.close();
    write_out(o, w.str() + "\n");
    return all_ok ? 0 : kExitViolation;
}

int dispatch(const std::string& sub, const Options& o) {
    if (o.threads > 0) set_mc_threads(o.threads);
    if (o.format != "json" && o.format != "csv")
        throw std::domain_error("format must be json or csv");
    if (sub == "moments") return run_moments(o);
    if (sub == "sample") return run_sample(o);
    if (sub == "profile") return run_profile(o);
    if (sub == "scan-schur") return run_scan_schur(o);
    if (sub == "convex-order") return run_convex_order(o);
    if (sub == "chain") return run_chain(o);
    if (sub == "classify") return run_classify(o);
    if (sub == "threshold") return run_threshold(o);
    if (sub == "verify-appendix") return run_verify_appendix(o);
    throw std::domain_error("unknown subcommand: " + sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for lp-ball projection profiles"};
    app.require_subcommand(1);
    Options o;
    std::vector<CLI::App*> subs;
    for (const char* name : {"moments", "sample", "profile", "scan-schur", "convex-order",
                             "chain", "classify", "threshold", "verify-appendix"}) {
        CLI::App* s = app.add_subcommand(name);
        s->add_option("--p", o.p, "ball exponent");
        s->add_option("--n", o.n, "dimension");
        s->add_option("--t", o.t, "smoothing time");
        s->add_option("--k", o.k, "canonical direction index");
        s->add_option("--dir", o.dir, "direction: e1, diag, u:k, or comma-separated vector");
        s->add_option("--budget", o.budget, "Monte Carlo sample budget");
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--tol", o.tol, "quadrature tolerance");
        s->add_option("--format", o.format, "json or csv");
        s->add_option("--out", o.out, "output path, - for stdout");
        s->add_option("--threads", o.threads, "worker threads (0 = machine parallelism)");
        subs.push_back(s);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return dispatch(subs[i]->get_name(), o);
        return kExitUsage;
    } catch (const lpflow::QuadConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
