#pragma once

#include <cstdint>
#include <vector>

#include "pod/bsgs.hpp"
#include "pod/codes.hpp"
#include "pod/polar.hpp"
#include "pod/transform.hpp"

namespace pod {

// One decoding trajectory: the permutation P*h_i and its elimination matrix.
struct PodBranch {
    Permutation perm;  // on the (padded) polar blocklength
    BitMatrix e;
};

enum class CombinerMode { BestMetric, MlAmongValid };
enum class BranchSelection { Enumerate, Sample };

struct PodDecoderSettings {
    std::size_t list_size = 1;  // 1 selects plain SC branches
    PolarDecodeOptions polar;
};

// Immutable ensemble description shared by all branches: one dynamic frozen
// matrix, M permutations from the automorphism orbit. Codes whose length is
// not a power of two are zero-padded up to the next one; the padded
// coordinates carry saturated LLRs at decode time.
struct PodConfig {
    CodeSpec code;
    PolarSpec spec;       // padded blocklength
    BitMatrix m_p;        // shared dynamic frozen matrix
    DynamicFrozenSpec df;
    std::vector<PodBranch> branches;
    PodDecoderSettings decoder;
    CombinerMode combiner = CombinerMode::MlAmongValid;

    std::size_t pad() const { return spec.n - code.n; }
};

// Branch 0 always uses h = identity; further branches come from the orbit,
// either the deterministic enumeration prefix or uniform sampling (both give
// prefix-nested branch sets as m_branches grows for a fixed seed). Every
// branch is checked against the base transform through branch_dress.
PodConfig build_pod(const CodeSpec& code, const Permutation& base, const Bsgs& group,
                    std::size_t m_branches, BranchSelection selection, std::uint64_t seed,
                    PodDecoderSettings settings = {},
                    CombinerMode combiner = CombinerMode::MlAmongValid);

struct PodCandidate {
    std::vector<std::uint8_t> codeword;  // code.n coordinates
    double metric;
};

struct CombineChoice {
    std::size_t branch = 0;
    std::size_t rank = 0;
    bool fallback = false;  // ml-among-valid found no valid candidate
};

// Picks the winning (branch, candidate). best-metric: global minimum path
// metric; ml-among-valid: maximum correlation with the channel LLRs among
// parity-clean candidates, falling back to best-metric when none pass.
// Duplicate codewords are ignored after their first (branch, rank) sighting.
CombineChoice combine(const std::vector<std::vector<PodCandidate>>& per_branch,
                      const std::vector<double>& llr, const BitMatrix& h_check,
                      CombinerMode mode);

struct BranchDiag {
    double best_metric = 0.0;
    bool valid = false;
};

struct PodDiagnostics {
    std::vector<BranchDiag> branches;
    std::size_t winner_branch = 0;
    std::size_t winner_rank = 0;
    bool fallback = false;
};

struct PodResult {
    std::vector<std::uint8_t> message;
    std::vector<std::uint8_t> codeword;
    PodDiagnostics diag;
};

// Per-thread decoder instance with reusable scratch.
class PodDecoder {
public:
    explicit PodDecoder(const PodConfig& cfg);

    PodResult decode(const std::vector<double>& llr);  // llr length = code.n

    // lifted candidate lists of the last decode, for diagnostics/tests
    const std::vector<std::vector<PodCandidate>>& last_candidates() const { return cands_; }

private:
    const PodConfig* cfg_;
    PolarDecoder polar_;
    std::vector<Permutation> inv_perms_;
    std::vector<double> padded_, branch_llr_;
    std::vector<std::vector<PodCandidate>> cands_;
    std::vector<std::vector<std::vector<std::uint8_t>>> u_hats_;
};

PodResult pod_decode(const PodConfig& cfg, const std::vector<double>& llr);

} // namespace pod
