#include "ers/sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ers/analysis.hpp"
#include "ers/rng.hpp"

namespace ers {

namespace {
constexpr std::uint64_t kMessageStream = 0x6d657373ull;
constexpr std::uint64_t kNoiseStream = 0x6e6f6973ull;
}  // namespace

ChannelConfig ChannelConfig::make(double snr_db, double rate, std::uint64_t seed) {
    ChannelConfig cfg;
    cfg.snr_db = snr_db;
    cfg.rate = rate;
    cfg.seed = seed;
    cfg.noise_var = noise_variance(snr_db, rate);
    return cfg;
}

void transmit(std::span<const Symbol> codeword, int planes, const ChannelConfig& cfg,
              std::uint64_t frame, std::span<double> y_out) {
    const int N = static_cast<int>(codeword.size());
    if (static_cast<int>(y_out.size()) != N * planes)
        throw std::invalid_argument("output length must be N*n");
    FrameRng rng(cfg.seed, frame, kNoiseStream);
    const double sigma = std::sqrt(cfg.noise_var);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < planes; ++j) {
            const int b = (codeword[i] >> j) & 1;
            y_out[std::size_t(i) * planes + j] = (1.0 - 2.0 * b) + sigma * rng.gaussian();
        }
}

WilsonInterval wilson_ci95(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double nn = double(trials);
    const double p = double(errors) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (errors == 0) ci.lo = 0.0;  // center - half cancels only up to rounding
    if (errors == trials) ci.hi = 1.0;
    return ci;
}

std::string DecoderSpec::name() const {
    if (kind == Kind::sc) return "SC";
    return "SCL(" + std::to_string(list_size) + ")";
}

FerResult run_fer(const ErsCode& code, const PreTransform& pt, DecoderSpec dec,
                  const ChannelConfig& cfg, const StopRule& stop, int threads,
                  double llr_max) {
    if (stop.min_errors < 1) throw std::invalid_argument("min_errors must be >= 1");
    if (threads < 1) threads = 1;
    const int N = code.N;
    const int K = code.K;
    const int n = code.field.n();

    struct Tally {
        std::uint64_t errors = 0;
        std::uint64_t gf_ops = 0;
        std::uint64_t flops = 0;
    };

    auto run_frame = [&](std::uint64_t fr, Tally& t) {
        FrameRng msg_rng(cfg.seed, fr, kMessageStream);
        std::vector<Symbol> msg(K);
        for (auto& s : msg) s = static_cast<Symbol>(msg_rng.next_below(std::uint64_t(N)));
        const std::vector<Symbol> cw = encode_poly(code, msg);
        std::vector<double> y(std::size_t(N) * n);
        transmit(cw, n, cfg, fr, y);
        const LlrFrame frame = llr_from_channel(y, cfg.noise_var, pt.perm, n, llr_max);
        const DecodeResult r = dec.kind == DecoderSpec::Kind::sc
                                   ? sc_decode(pt, code, frame)
                                   : scl_decode(pt, code, frame, dec.list_size);
        if (r.message != msg) ++t.errors;
        t.gf_ops += r.counters.gf_ops;
        t.flops += r.counters.flops;
    };

    Tally total;
    std::uint64_t done = 0;
    const std::uint64_t batch = std::max<std::uint64_t>(stop.batch, 1);
    while (done < stop.max_frames) {
        const std::uint64_t this_batch = std::min(batch, stop.max_frames - done);
        if (threads == 1) {
            for (std::uint64_t f = 0; f < this_batch; ++f) run_frame(done + f, total);
        } else {
            std::vector<Tally> partial(threads);
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    for (std::uint64_t f = t; f < this_batch; f += std::uint64_t(threads))
                        run_frame(done + f, partial[t]);
                });
            for (auto& th : pool) th.join();
            for (const auto& p : partial) {
                total.errors += p.errors;
                total.gf_ops += p.gf_ops;
                total.flops += p.flops;
            }
        }
        done += this_batch;
        if (total.errors >= stop.min_errors) break;
    }

    FerResult res;
    res.frames = done;
    res.frame_errors = total.errors;
    res.fer = done ? double(total.errors) / double(done) : 0.0;
    res.ci95 = wilson_ci95(total.errors, done);
    res.decoder = dec.name();
    res.N = N;
    res.K = K;
    res.L = dec.kind == DecoderSpec::Kind::sc ? 1 : dec.list_size;
    res.snr_db = cfg.snr_db;
    res.gf_ops_mean = done ? double(total.gf_ops) / double(done) : 0.0;
    res.flops_mean = done ? double(total.flops) / double(done) : 0.0;
    res.seed = cfg.seed;
    return res;
}

std::string fer_csv_header() {
    return "snr_db,N,K,decoder,L,frames,errors,fer,ci_lo,ci_hi,gf_ops_mean,flops_mean";
}

std::string fer_csv_row(const FerResult& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.snr_db << ',' << r.N << ',' << r.K << ',' << r.decoder << ',' << r.L << ','
       << r.frames << ',' << r.frame_errors << ',' << r.fer << ',' << r.ci95.lo << ','
       << r.ci95.hi << ',' << r.gf_ops_mean << ',' << r.flops_mean;
    return os.str();
}

std::string fer_to_json(const FerResult& r, const ErsCode& code, const PreTransform& pt,
                        const ChannelConfig& cfg, double llr_max) {
    nlohmann::json j;
    j["snr_db"] = r.snr_db;
    j["N"] = r.N;
    j["K"] = r.K;
    j["decoder"] = r.decoder;
    j["L"] = r.L;
    j["frames"] = r.frames;
    j["errors"] = r.frame_errors;
    j["fer"] = r.fer;
    j["ci_lo"] = r.ci95.lo;
    j["ci_hi"] = r.ci95.hi;
    j["gf_ops_mean"] = r.gf_ops_mean;
    j["flops_mean"] = r.flops_mean;
    j["config"]["prim_poly"] = code.field.prim_poly();
    j["config"]["perm_digest"] = pt.perm.digest();
    j["config"]["llr_max"] = llr_max;
    j["config"]["seed"] = cfg.seed;
    j["config"]["noise_var"] = cfg.noise_var;
    j["config"]["noise_convention"] = "sigma2 = 1/(2*rate*10^(snr_db/10))";
    return j.dump(2);
}

void write_observation_frame(std::ostream& os, std::span<const double> y) {
    os.precision(17);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i) os << ' ';
        os << y[i];
    }
    os << '\n';
}

std::vector<std::vector<double>> read_observations(std::istream& is, int expected_len) {
    std::vector<std::vector<double>> frames;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> y;
        double v;
        while (ls >> v) y.push_back(v);
        if (static_cast<int>(y.size()) != expected_len)
            throw std::runtime_error("observation frame has wrong length");
        frames.push_back(std::move(y));
    }
    return frames;
}

}  // namespace ers
