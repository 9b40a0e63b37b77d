#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pod/codes.hpp"
#include "pod/pod_decoder.hpp"

namespace pod {

// BPSK over AWGN at Eb/N0: sigma^2 = 1 / (2 * rate * 10^(EbN0/10)).
struct ChannelPoint {
    double eb_n0_db = 0.0;
    double rate = 0.0;
    double sigma2 = 0.0;

    static ChannelPoint make(double eb_n0_db, double rate);
};

struct BlerRecord {
    double eb_n0_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t block_errors = 0;
    double bler = 0.0;
    std::string decoder;
    double seconds = 0.0;
};

// Deterministic per-trial stream: a SplitMix64 counter generator keyed by
// (seed, point, trial), with Box-Muller gaussians. The same key always
// replays the same message and noise, independent of threading.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t point, std::uint64_t trial);

    std::uint64_t next_u64();
    double next_unit();   // (0,1]
    double next_gauss();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// x_j = 1-2c_j, y_j = x_j + N(0, sigma2), LLR_j = 2 y_j / sigma2.
std::vector<double> transmit(const std::vector<std::uint8_t>& c, const ChannelPoint& point,
                             TrialRng& rng);

// Brute-force soft ML over all 2^k codewords via Gray-coded message
// enumeration; guarded at 2^20.
std::vector<std::uint8_t> ml_decode(const CodeSpec& code, const std::vector<double>& llr);

// Bounded-distance hard-decision reference: p = Q(sqrt(2 R Eb/N0)),
// BLER = 1 - sum_{i<=t} C(n,i) p^i (1-p)^(n-i).
double hd_theoretical_bler(std::size_t n, std::size_t k, std::size_t t, double eb_n0_db);

// Per-thread block decoder handed a fresh instance by its factory.
class BlockDecoder {
public:
    virtual ~BlockDecoder() = default;
    virtual std::vector<std::uint8_t> decode_message(const std::vector<double>& llr) = 0;
};

using DecoderFactory = std::function<std::unique_ptr<BlockDecoder>()>;

DecoderFactory make_pod_factory(std::shared_ptr<const PodConfig> cfg);
DecoderFactory make_ml_factory(const CodeSpec& code);

// Monte-Carlo BLER until min_errors block errors or max_trials, whichever
// comes first, checked at fixed batch boundaries so results do not depend on
// the thread count.
std::vector<BlerRecord> run_bler(const CodeSpec& code, const DecoderFactory& factory,
                                 const std::string& label, const std::vector<ChannelPoint>& points,
                                 std::uint64_t min_errors, std::uint64_t max_trials,
                                 std::uint64_t seed, unsigned threads = 1);

struct PairedPointResult {
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> errors;               // per decoder
    std::vector<std::vector<std::uint8_t>> flags;    // [decoder][trial], when kept
    double seconds = 0.0;
};

// Runs several decoders against identical noise realizations. Stops when all
// decoders reached min_errors (or max_trials); min_errors == 0 runs exactly
// max_trials trials.
PairedPointResult run_paired(const CodeSpec& code,
                             const std::vector<DecoderFactory>& factories,
                             const ChannelPoint& point, std::size_t point_index,
                             std::uint64_t min_errors, std::uint64_t max_trials,
                             std::uint64_t seed, unsigned threads = 1, bool keep_flags = false);

} // namespace pod
