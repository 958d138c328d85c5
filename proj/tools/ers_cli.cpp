// Command-line front end: encoding, decoding, transform inspection,
// subchannel profiling, lower-bound grids, and FER sweeps.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ers/analysis.hpp"
#include "ers/decoder.hpp"
#include "ers/ers_code.hpp"
#include "ers/kernels.hpp"
#include "ers/rng.hpp"
#include "ers/sim.hpp"
#include "ers/transform.hpp"

namespace {

struct GlobalOpts {
    int n = 5;
    int k = 16;
    std::string perm = "natural";
    std::string prim_poly;
    std::uint64_t seed = 1;
    std::string out = "text";  // text|csv|json
    double llr_max = 40.0;
    int threads = 1;
    int greedy_iters = 500;
};

std::optional<std::uint32_t> parse_poly(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return static_cast<std::uint32_t>(std::stoul(s, nullptr, 0));
}

ers::ErsCode build_code(const GlobalOpts& g) {
    auto field = ers::FieldSpec::make(g.n, parse_poly(g.prim_poly));
    return ers::code_new(std::move(field), g.k);
}

ers::Permutation build_perm(const GlobalOpts& g, const ers::ErsCode& code, double snr_db) {
    if (g.perm == "identity") return ers::Permutation::identity(code.N);
    if (g.perm == "bit_reversal" || g.perm == "bitrev")
        return ers::Permutation::bit_reversal(code.N);
    if (g.perm == "natural" || g.perm == "natural_locator")
        return ers::Permutation::natural_locator(code);
    if (g.perm == "greedy" || g.perm == "greedy_search") {
        auto prof = ers::ga_profile(code.N, snr_db, code.rate());
        return ers::greedy_search_permutation(code, prof.pe, g.greedy_iters, g.seed);
    }
    std::ifstream in(g.perm);
    if (!in) throw CLI::ValidationError("--perm", "unknown strategy or unreadable file: " + g.perm);
    std::stringstream buf;
    buf << in.rdbuf();
    return ers::permutation_from_json(buf.str());
}

std::string hex_symbols(const std::vector<ers::Symbol>& v, int n) {
    const int width = (n + 3) / 4;
    std::ostringstream os;
    os << std::hex << std::uppercase << std::setfill('0');
    for (auto s : v) os << std::setw(width) << int(s);
    return os.str();
}

std::vector<ers::Symbol> parse_symbols(const std::string& text, int expect, int q) {
    std::vector<ers::Symbol> out;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        const long v = std::stol(tok, nullptr, 0);
        if (v < 0 || v >= q) throw CLI::ValidationError("--msg", "symbol out of field range");
        out.push_back(static_cast<ers::Symbol>(v));
    }
    if (expect >= 0 && static_cast<int>(out.size()) != expect)
        throw CLI::ValidationError("--msg", "expected " + std::to_string(expect) + " symbols");
    return out;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (double d : parse_doubles(text)) out.push_back(static_cast<int>(d));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended Reed-Solomon codes over GF(2^n) via binary polar decoding"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--n", g.n, "field order exponent (N = 2^n)")->check(CLI::Range(2, 10));
    app.add_option("--k", g.k, "code dimension K");
    app.add_option("--perm", g.perm,
                   "permutation: natural|identity|bit_reversal|greedy or a JSON file");
    app.add_option("--prim-poly", g.prim_poly, "primitive polynomial mask, e.g. 0x25");
    app.add_option("--seed", g.seed, "base seed for all randomness");
    app.add_option("--out", g.out, "output format: text|csv|json");
    app.add_option("--llr-max", g.llr_max, "LLR clip magnitude");
    app.add_option("--threads", g.threads, "worker threads (never changes results)");
    app.add_option("--greedy-iters", g.greedy_iters, "transposition budget for greedy search");

    // ---- encode ----
    auto* sc_encode = app.add_subcommand("encode", "encode a message to a codeword");
    std::string msg_text;
    bool random_msg = false;
    sc_encode->add_option("--msg", msg_text, "comma-separated message symbols");
    sc_encode->add_flag("--random", random_msg, "draw the message from --seed");

    // ---- decode ----
    auto* sc_decode_cmd = app.add_subcommand("decode", "decode observation frames from a file");
    std::string obs_file;
    double dec_snr = 11.0;
    int dec_list = 1;
    bool use_sc = false;
    sc_decode_cmd->add_option("--obs", obs_file, "observations file, one frame per line")
        ->required();
    sc_decode_cmd->add_option("--snr", dec_snr, "E_b/N_0 in dB used for LLR scaling");
    sc_decode_cmd->add_option("--list", dec_list, "list size (SCL)");
    sc_decode_cmd->add_flag("--sc", use_sc, "use plain SC decoding");

    // ---- transform-info ----
    auto* sc_tinfo = app.add_subcommand("transform-info", "pivot profile and frozen classes");
    std::string export_file;
    double tinfo_snr = 11.0;
    sc_tinfo->add_option("--export", export_file, "write the full pre-transform as JSON");
    sc_tinfo->add_option("--snr", tinfo_snr, "design SNR for greedy search");

    // ---- profile ----
    auto* sc_profile = app.add_subcommand("profile", "subchannel error probabilities");
    std::string prof_method = "ga";
    double prof_snr = 11.0;
    std::uint64_t prof_frames = 1'000'000;
    double prof_rate = -1.0;
    sc_profile->add_option("--method", prof_method, "ga|mc");
    sc_profile->add_option("--snr", prof_snr, "E_b/N_0 in dB")->required();
    sc_profile->add_option("--frames", prof_frames, "Monte-Carlo frames");
    sc_profile->add_option("--rate", prof_rate, "rate for noise scaling (default K/N)");

    // ---- bound ----
    auto* sc_bound = app.add_subcommand("bound", "SC performance lower-bound grid");
    std::string bound_rates = "0.5";
    std::string bound_snrs = "11";
    std::string bound_ns;
    std::string bound_method = "ga";
    std::uint64_t bound_frames = 1'000'000;
    sc_bound->add_option("--rate", bound_rates, "comma list of rates");
    sc_bound->add_option("--snr", bound_snrs, "comma list of E_b/N_0 in dB");
    sc_bound->add_option("--n-list", bound_ns, "comma list of order exponents (default --n)");
    sc_bound->add_option("--method", bound_method, "ga|mc");
    sc_bound->add_option("--frames", bound_frames, "Monte-Carlo frames per cell");

    // ---- fer ----
    auto* sc_fer = app.add_subcommand("fer", "Monte-Carlo frame error rate sweep");
    std::string fer_snrs = "6";
    std::string fer_lists = "1";
    bool fer_sc = false;
    std::uint64_t fer_min_errors = 100;
    std::uint64_t fer_max_frames = 10'000'000;
    sc_fer->add_option("--snr", fer_snrs, "comma list of E_b/N_0 in dB");
    sc_fer->add_option("--list", fer_lists, "comma list of SCL list sizes");
    sc_fer->add_flag("--sc", fer_sc, "run plain SC instead of SCL");
    sc_fer->add_option("--min-errors", fer_min_errors, "stop after this many frame errors");
    sc_fer->add_option("--max-frames", fer_max_frames, "hard frame cap");

    CLI11_PARSE(app, argc, argv);

    try {
        ers::ErsCode code = build_code(g);
        const int n = code.field.n();

        if (*sc_encode) {
            std::vector<ers::Symbol> msg;
            if (random_msg) {
                ers::FrameRng rng(g.seed, 0, 0x6d657373ull);
                msg.resize(code.K);
                for (auto& s : msg) s = static_cast<ers::Symbol>(rng.next_below(code.N));
            } else {
                msg = parse_symbols(msg_text, code.K, code.field.q());
            }
            auto cw = ers::encode_poly(code, msg);
            if (g.out == "json") {
                nlohmann::json j;
                j["message"] = msg;
                j["codeword"] = cw;
                j["codeword_hex"] = hex_symbols(cw, n);
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "message  " << hex_symbols(msg, n) << '\n';
                std::cout << "codeword " << hex_symbols(cw, n) << '\n';
            }
            return 0;
        }

        const double design_snr = *sc_decode_cmd   ? dec_snr
                                  : *sc_profile    ? prof_snr
                                  : *sc_tinfo      ? tinfo_snr
                                                   : 11.0;
        ers::Permutation perm = build_perm(g, code, design_snr);
        ers::PreTransform pt = ers::pretransform(code, perm);

        if (*sc_decode_cmd) {
            std::ifstream in(obs_file);
            if (!in) throw std::runtime_error("cannot open " + obs_file);
            auto frames = ers::read_observations(in, code.N * n);
            const double nv = ers::noise_variance(dec_snr, code.rate());
            nlohmann::json out = nlohmann::json::array();
            for (const auto& y : frames) {
                auto llr = ers::llr_from_channel(y, nv, perm, n, g.llr_max);
                ers::DecodeResult r = use_sc ? ers::sc_decode(pt, code, llr)
                                             : ers::scl_decode(pt, code, llr, dec_list);
                if (g.out == "json") {
                    nlohmann::json j;
                    j["message"] = r.message;
                    j["message_hex"] = hex_symbols(r.message, n);
                    j["metric"] = r.metric;
                    j["gf_ops"] = r.counters.gf_ops;
                    j["flops"] = r.counters.flops;
                    out.push_back(j);
                } else {
                    std::cout << hex_symbols(r.message, n) << '\n';
                }
            }
            if (g.out == "json") std::cout << out.dump(2) << '\n';
            return 0;
        }

        if (*sc_tinfo) {
            if (!export_file.empty()) {
                std::ofstream out(export_file);
                out << ers::pretransform_to_json(pt, code);
            }
            auto d = ers::d_set(code.N, code.K);
            int stat = 0, dyn = 0;
            for (auto c : pt.cls) {
                stat += c == ers::FrozenClass::static_frozen;
                dyn += c == ers::FrozenClass::dynamic_frozen;
            }
            bool d_covered = true;
            for (int i : d.indices)
                if (pt.cls[i] == ers::FrozenClass::static_frozen) d_covered = false;
            std::cout << "code (" << code.N << ", " << code.K << ") over GF(2^" << n
                      << "), prim_poly 0x" << std::hex << code.field.prim_poly() << std::dec
                      << '\n';
            std::cout << "perm digest 0x" << std::hex << perm.digest() << std::dec << '\n';
            std::cout << "pivots:";
            for (int p : pt.pivots) std::cout << ' ' << p;
            std::cout << "\nstatic frozen: " << stat << ", dynamic frozen: " << dyn << '\n';
            std::cout << "a = " << d.a << ", |D| = " << d.indices.size()
                      << ", D covered by non-static positions: " << (d_covered ? "yes" : "NO")
                      << '\n';
            int in_d = 0;
            for (int i : d.indices)
                if (pt.cls[i] == ers::FrozenClass::info) ++in_d;
            std::cout << "pivots inside D: " << in_d << "/" << d.indices.size() << '\n';
            return 0;
        }

        if (*sc_profile) {
            const double rate = prof_rate > 0 ? prof_rate : code.rate();
            ers::SubchannelProfile prof =
                prof_method == "mc"
                    ? ers::mc_profile(code.N, prof_snr, rate, prof_frames, g.seed, g.threads)
                    : ers::ga_profile(code.N, prof_snr, rate);
            std::cout << ers::profile_to_json(prof) << '\n';
            return 0;
        }

        if (*sc_bound) {
            std::vector<int> ns = bound_ns.empty() ? std::vector<int>{g.n} : parse_ints(bound_ns);
            std::cout << "N,rate,snr_db,a,d_size,method,bound,frames\n";
            for (int nn : ns) {
                const int N = 1 << nn;
                for (double rate : parse_doubles(bound_rates)) {
                    const int K = static_cast<int>(rate * N + 0.5);
                    for (double snr : parse_doubles(bound_snrs)) {
                        ers::SubchannelProfile prof =
                            bound_method == "mc"
                                ? ers::mc_profile(N, snr, rate, bound_frames, g.seed, g.threads)
                                : ers::ga_profile(N, snr, rate);
                        auto b = ers::lower_bound(prof, N, K);
                        std::cout << N << ',' << rate << ',' << snr << ',' << b.a << ','
                                  << b.d.size() << ',' << bound_method << ','
                                  << std::setprecision(6) << b.prob << ','
                                  << (bound_method == "mc" ? bound_frames : 0) << '\n';
                    }
                }
            }
            return 0;
        }

        if (*sc_fer) {
            const bool json_out = g.out == "json";
            nlohmann::json rows = nlohmann::json::array();
            if (!json_out) std::cout << ers::fer_csv_header() << '\n';
            for (double snr : parse_doubles(fer_snrs)) {
                auto cfg = ers::ChannelConfig::make(snr, code.rate(), g.seed);
                ers::StopRule stop;
                stop.min_errors = fer_min_errors;
                stop.max_frames = fer_max_frames;
                std::vector<ers::DecoderSpec> decs;
                if (fer_sc)
                    decs.push_back(ers::DecoderSpec::sc());
                else
                    for (int L : parse_ints(fer_lists)) decs.push_back(ers::DecoderSpec::scl(L));
                for (auto dec : decs) {
                    auto r = ers::run_fer(code, pt, dec, cfg, stop, g.threads, g.llr_max);
                    if (json_out)
                        rows.push_back(nlohmann::json::parse(
                            ers::fer_to_json(r, code, pt, cfg, g.llr_max)));
                    else
                        std::cout << ers::fer_csv_row(r) << '\n';
                }
            }
            if (json_out) std::cout << rows.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
