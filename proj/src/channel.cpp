#include "pod/channel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "pod/errors.hpp"

namespace pod {

ChannelPoint ChannelPoint::make(double eb_n0_db, double rate) {
    if (rate <= 0.0) throw ValidationError("ChannelPoint: rate must be positive");
    ChannelPoint p;
    p.eb_n0_db = eb_n0_db;
    p.rate = rate;
    p.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, eb_n0_db / 10.0));
    return p;
}

namespace {
std::uint64_t splitmix_fin(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    state_ = splitmix_fin(splitmix_fin(splitmix_fin(seed) ^ point) ^ trial);
}

std::uint64_t TrialRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double TrialRng::next_unit() {
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double TrialRng::next_gauss() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_unit(), u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::vector<double> transmit(const std::vector<std::uint8_t>& c, const ChannelPoint& point,
                             TrialRng& rng) {
    const double sigma = std::sqrt(point.sigma2);
    const double scale = 2.0 / point.sigma2;
    std::vector<double> llr(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double x = c[j] ? -1.0 : 1.0;
        llr[j] = scale * (x + sigma * rng.next_gauss());
    }
    return llr;
}

std::vector<std::uint8_t> ml_decode(const CodeSpec& code, const std::vector<double>& llr) {
    if (llr.size() != code.n) throw ShapeError("ml_decode: LLR length mismatch");
    if (code.k > 20) throw CapacityError("ml_decode: codebook beyond the 2^20 guard");
    const std::size_t words = code.g.words_per_row();
    std::vector<std::uint64_t> cw(words, 0);
    double corr = 0.0;
    for (double v : llr) corr += v;  // all-zero codeword
    double best_corr = corr;
    std::uint64_t best_msg = 0;
    const std::uint64_t total = std::uint64_t(1) << code.k;
    for (std::uint64_t i = 1; i < total; ++i) {
        const unsigned flip = unsigned(__builtin_ctzll(i));  // Gray-code step
        const std::uint64_t* row = code.g.row(flip);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                const unsigned off = unsigned(__builtin_ctzll(bits));
                bits &= bits - 1;
                const std::size_t j = w * 64 + off;
                corr -= 2.0 * (((cw[w] >> off) & 1) ? -llr[j] : llr[j]);
            }
            cw[w] ^= row[w];
        }
        if (corr > best_corr) {
            best_corr = corr;
            best_msg = i ^ (i >> 1);
        }
    }
    std::vector<std::uint8_t> msg(code.k);
    for (std::size_t b = 0; b < code.k; ++b) msg[b] = (best_msg >> b) & 1;
    return mul_vec_mat(msg, code.g);
}

double hd_theoretical_bler(std::size_t n, std::size_t k, std::size_t t, double eb_n0_db) {
    const double arg = std::sqrt(2.0 * (double(k) / double(n)) * std::pow(10.0, eb_n0_db / 10.0));
    const double p = 0.5 * std::erfc(arg / std::sqrt(2.0));
    double prob_ok = 0.0, term = std::pow(1.0 - p, double(n));
    for (std::size_t i = 0; i <= std::min(t, n); ++i) {
        prob_ok += term;
        term *= double(n - i) / double(i + 1) * (p / (1.0 - p));
    }
    return std::max(0.0, 1.0 - prob_ok);
}

namespace {

class PodBlockDecoder final : public BlockDecoder {
public:
    explicit PodBlockDecoder(std::shared_ptr<const PodConfig> cfg)
        : cfg_(std::move(cfg)), dec_(*cfg_) {}
    std::vector<std::uint8_t> decode_message(const std::vector<double>& llr) override {
        return dec_.decode(llr).message;
    }

private:
    std::shared_ptr<const PodConfig> cfg_;
    PodDecoder dec_;
};

class MlBlockDecoder final : public BlockDecoder {
public:
    explicit MlBlockDecoder(CodeSpec code) : code_(std::move(code)) {}
    std::vector<std::uint8_t> decode_message(const std::vector<double>& llr) override {
        const std::vector<std::uint8_t> cw = ml_decode(code_, llr);
        const auto msg = solve_right(code_.g, cw);
        return *msg;  // codeword is in the span by construction
    }

private:
    CodeSpec code_;
};

}  // namespace

DecoderFactory make_pod_factory(std::shared_ptr<const PodConfig> cfg) {
    return [cfg] { return std::make_unique<PodBlockDecoder>(cfg); };
}

DecoderFactory make_ml_factory(const CodeSpec& code) {
    return [code] { return std::make_unique<MlBlockDecoder>(code); };
}

namespace {

constexpr std::uint64_t kBatch = 512;  // fixed so thread count cannot shift results

void run_trials(const CodeSpec& code, const ChannelPoint& point, std::size_t point_index,
                std::uint64_t first, std::uint64_t count, std::uint64_t seed,
                std::vector<BlockDecoder*>& decoders, std::vector<std::uint64_t>& errors,
                std::vector<std::vector<std::uint8_t>>* flags) {
    std::vector<std::uint8_t> msg(code.k);
    for (std::uint64_t t = first; t < first + count; ++t) {
        TrialRng rng(seed, point_index, t);
        for (std::size_t b = 0; b < code.k; ++b) msg[b] = std::uint8_t(rng.next_u64() & 1);
        const std::vector<std::uint8_t> cw = mul_vec_mat(msg, code.g);
        const std::vector<double> llr = transmit(cw, point, rng);
        for (std::size_t d = 0; d < decoders.size(); ++d) {
            const std::vector<std::uint8_t> got = decoders[d]->decode_message(llr);
            const bool err = got != msg;
            errors[d] += err;
            if (flags) (*flags)[d][t] = err;
        }
    }
}

}  // namespace

PairedPointResult run_paired(const CodeSpec& code, const std::vector<DecoderFactory>& factories,
                             const ChannelPoint& point, std::size_t point_index,
                             std::uint64_t min_errors, std::uint64_t max_trials,
                             std::uint64_t seed, unsigned threads, bool keep_flags) {
    const auto t0 = std::chrono::steady_clock::now();
    if (threads == 0) threads = 1;
    PairedPointResult out;
    out.errors.assign(factories.size(), 0);
    if (keep_flags) out.flags.assign(factories.size(), std::vector<std::uint8_t>(max_trials, 0));

    // one decoder instance per (thread, decoder)
    std::vector<std::vector<std::unique_ptr<BlockDecoder>>> instances(threads);
    for (unsigned th = 0; th < threads; ++th)
        for (const DecoderFactory& f : factories) instances[th].push_back(f());

    std::uint64_t done = 0;
    while (done < max_trials) {
        const std::uint64_t batch = std::min(kBatch, max_trials - done);
        if (threads == 1) {
            std::vector<BlockDecoder*> decs;
            for (auto& d : instances[0]) decs.push_back(d.get());
            run_trials(code, point, point_index, done, batch, seed, decs, out.errors,
                       keep_flags ? &out.flags : nullptr);
        } else {
            std::vector<std::vector<std::uint64_t>> errs(threads,
                                                         std::vector<std::uint64_t>(factories.size(), 0));
            std::vector<std::thread> pool;
            for (unsigned th = 0; th < threads; ++th) {
                const std::uint64_t lo = done + batch * th / threads;
                const std::uint64_t hi = done + batch * (th + 1) / threads;
                if (lo == hi) continue;
                pool.emplace_back([&, th, lo, hi] {
                    std::vector<BlockDecoder*> decs;
                    for (auto& d : instances[th]) decs.push_back(d.get());
                    run_trials(code, point, point_index, lo, hi - lo, seed, decs, errs[th],
                               keep_flags ? &out.flags : nullptr);
                });
            }
            for (auto& t : pool) t.join();
            for (unsigned th = 0; th < threads; ++th)
                for (std::size_t d = 0; d < factories.size(); ++d)
                    out.errors[d] += errs[th][d];
        }
        done += batch;
        if (min_errors > 0) {
            bool all = true;
            for (std::uint64_t e : out.errors)
                if (e < min_errors) all = false;
            if (all) break;
        }
    }
    out.trials = done;
    if (keep_flags)
        for (auto& f : out.flags) f.resize(done);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<BlerRecord> run_bler(const CodeSpec& code, const DecoderFactory& factory,
                                 const std::string& label, const std::vector<ChannelPoint>& points,
                                 std::uint64_t min_errors, std::uint64_t max_trials,
                                 std::uint64_t seed, unsigned threads) {
    if (min_errors < 1) throw ValidationError("run_bler: min_errors must be at least 1");
    std::vector<BlerRecord> records;
    records.reserve(points.size());
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const PairedPointResult res =
            run_paired(code, {factory}, points[pi], pi, min_errors, max_trials, seed, threads);
        BlerRecord rec;
        rec.eb_n0_db = points[pi].eb_n0_db;
        rec.trials = res.trials;
        rec.block_errors = res.errors[0];
        rec.bler = res.trials ? double(res.errors[0]) / double(res.trials) : 0.0;
        rec.decoder = label;
        rec.seconds = res.seconds;
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace pod
