#include "ers/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ers/kernels.hpp"
#include "ers/rng.hpp"
#include "ers/transform.hpp"

namespace ers {

double noise_variance(double snr_db, double rate) {
    if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("rate must be in (0, 1]");
    return 1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0));
}

double ga_phi(double x) {
    if (x < 1e-300) return 1.0;
    if (x < 10.0) return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
    return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

double ga_phi_inv(double y) {
    // phi is strictly decreasing; bisect to 1e-12 relative width
    double lo = 1e-300, hi = 1e9;
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

int log2_of(int N) {
    if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("N must be a power of two >= 2");
    int n = 0;
    while ((1 << n) < N) ++n;
    return n;
}

}  // namespace

SubchannelProfile ga_profile(int N, double snr_db, double rate) {
    const int n = log2_of(N);
    const double sigma2 = noise_variance(snr_db, rate);
    std::vector<double> mean{2.0 / sigma2};
    for (int s = 0; s < n; ++s) {
        std::vector<double> next(mean.size() * 2);
        for (std::size_t i = 0; i < mean.size(); ++i) {
            const double m = mean[i];
            // even child: check-node degradation, odd child: variable-node gain.
            // 1 - (1-p)^2 is written as p(2-p) to survive p < 1e-17, and once
            // phi itself underflows, phi_inv(2 phi(m)) ~ m - 4 ln 2 from the
            // exponential tail; either failure mode otherwise sends the
            // bisection to its upper bracket.
            const double p = ga_phi(m);
            if (p < 1e-280)
                next[2 * i] = m - 4.0 * M_LN2;
            else
                next[2 * i] = ga_phi_inv(p * (2.0 - p));
            next[2 * i + 1] = 2.0 * m;
        }
        mean = std::move(next);
    }
    SubchannelProfile prof;
    prof.method = ProfileMethod::gaussian_approx;
    prof.snr_db = snr_db;
    prof.rate = rate;
    prof.noise_var = sigma2;
    prof.pe.resize(N);
    for (int i = 0; i < N; ++i) prof.pe[i] = q_func(std::sqrt(mean[i] / 2.0));
    return prof;
}

SubchannelProfile mc_profile(int N, double snr_db, double rate, std::uint64_t frames,
                             std::uint64_t seed, int threads) {
    const int n = log2_of(N);
    const double sigma2 = noise_variance(snr_db, rate);
    const double sigma = std::sqrt(sigma2);
    const double scale = 2.0 / sigma2;
    if (threads < 1) threads = 1;

    const auto& k = kern::ops();
    std::vector<std::vector<std::uint64_t>> partial(threads,
                                                    std::vector<std::uint64_t>(N, 0));
    auto worker = [&](int tid) {
        std::vector<double> y(N), llr(N);
        auto& errs = partial[tid];
        for (std::uint64_t fr = tid; fr < frames; fr += std::uint64_t(threads)) {
            FrameRng rng(seed, fr, /*stream=*/0x6e6f697365ull);
            rng.fill_gaussian(y, 1.0, sigma);  // all-zero codeword, BPSK 0 -> +1
            k.bpsk_llr(y.data(), scale, 1e300, llr.data(), N);
            for (int s = n - 1; s >= 0; --s) {
                const int half = 1 << s;
                for (int base = 0; base < N; base += 2 * half)
                    k.fg0_stage(llr.data() + base, llr.data() + base + half, half);
            }
            for (int i = 0; i < N; ++i)
                if (llr[i] < 0.0) ++errs[i];
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    SubchannelProfile prof;
    prof.method = ProfileMethod::monte_carlo;
    prof.snr_db = snr_db;
    prof.rate = rate;
    prof.noise_var = sigma2;
    prof.frames = frames;
    prof.seed = seed;
    prof.pe.resize(N);
    prof.stderr_pe.resize(N);
    for (int i = 0; i < N; ++i) {
        std::uint64_t e = 0;
        for (int t = 0; t < threads; ++t) e += partial[t][i];
        const double p = double(e) / double(frames);
        prof.pe[i] = p;
        prof.stderr_pe[i] = std::sqrt(std::max(p * (1.0 - p), 0.0) / double(frames));
    }
    return prof;
}

double sc_error_prob(const SubchannelProfile& profile, std::span<const int> index_set,
                     int planes) {
    double log_ok = 0.0;
    for (int i : index_set) {
        const double p = std::min(profile.pe[i], 1.0);
        if (p >= 1.0) return 1.0;
        log_ok += double(planes) * std::log1p(-p);
    }
    return -std::expm1(log_ok);
}

double sc_error_prob_stderr(const SubchannelProfile& profile, std::span<const int> index_set,
                            int planes) {
    if (profile.method != ProfileMethod::monte_carlo || profile.stderr_pe.empty()) return 0.0;
    // first-order propagation: d/dpe_i of the product form
    double ok = 1.0;
    for (int i : index_set) ok *= std::pow(1.0 - profile.pe[i], planes);
    double var = 0.0;
    for (int i : index_set) {
        const double pi = profile.pe[i];
        if (pi >= 1.0) continue;
        const double d = ok * double(planes) / (1.0 - pi);
        var += d * d * profile.stderr_pe[i] * profile.stderr_pe[i];
    }
    return std::sqrt(var);
}

BoundResult lower_bound(const SubchannelProfile& profile, int N, int K) {
    if (profile.N() != N) throw std::invalid_argument("profile length mismatch");
    const int n = log2_of(N);
    auto d = d_set(N, K);
    BoundResult r;
    r.a = d.a;
    r.d = std::move(d.indices);
    r.prob = sc_error_prob(profile, r.d, n);
    return r;
}

DegradationReport degradation_check(const SubchannelProfile& profile, int a) {
    const int N = profile.N();
    const int n = log2_of(N);
    if (a < 0 || a > n) throw std::invalid_argument("0 <= a <= n required");
    DegradationReport report;
    const int block = 1 << a;
    const bool mc = profile.method == ProfileMethod::monte_carlo;
    for (int theta = 1; theta <= (N >> a); ++theta) {
        const int last = theta * block - 1;
        for (int delta = 2; delta <= block; ++delta) {
            const int other = theta * block - delta;
            ++report.comparisons;
            if (profile.pe[last] <= profile.pe[other]) continue;
            DegradationReport::Entry e;
            e.theta = theta;
            e.delta = delta;
            e.pe_last = profile.pe[last];
            e.pe_other = profile.pe[other];
            if (mc) {
                const double se = std::hypot(profile.stderr_pe[last], profile.stderr_pe[other]);
                e.z = se > 0.0 ? (e.pe_last - e.pe_other) / se : HUGE_VAL;
                e.significant = e.z >= 2.0;
            } else {
                e.z = HUGE_VAL;
                e.significant = true;
            }
            report.violations.push_back(e);
        }
    }
    return report;
}

std::string profile_to_json(const SubchannelProfile& profile) {
    nlohmann::json j;
    j["pe"] = profile.pe;
    j["method"] = profile.method == ProfileMethod::gaussian_approx ? "gaussian_approx" : "monte_carlo";
    j["snr_db"] = profile.snr_db;
    j["rate"] = profile.rate;
    j["noise_var"] = profile.noise_var;
    j["noise_convention"] = "sigma2 = 1/(2*rate*10^(snr_db/10))";
    if (profile.method == ProfileMethod::monte_carlo) {
        j["frames"] = profile.frames;
        j["seed"] = profile.seed;
        j["stderr_pe"] = profile.stderr_pe;
    } else {
        j["phi"] = "chung-two-piece";
    }
    return j.dump(2);
}

SubchannelProfile profile_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SubchannelProfile p;
    p.pe = j.at("pe").get<std::vector<double>>();
    p.method = j.at("method").get<std::string>() == "monte_carlo" ? ProfileMethod::monte_carlo
                                                                  : ProfileMethod::gaussian_approx;
    p.snr_db = j.at("snr_db").get<double>();
    p.rate = j.at("rate").get<double>();
    p.noise_var = j.at("noise_var").get<double>();
    if (j.contains("frames")) p.frames = j["frames"].get<std::uint64_t>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("stderr_pe")) p.stderr_pe = j["stderr_pe"].get<std::vector<double>>();
    return p;
}

}  // namespace ers
