#include "pod/pod_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pod/errors.hpp"

namespace pod {

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

Permutation pad_perm(const Permutation& p, std::size_t n_pad) {
    if (p.size() == n_pad) return p;
    std::vector<std::uint32_t> img(n_pad);
    for (std::size_t i = 0; i < p.size(); ++i) img[i] = p(i);
    for (std::size_t i = p.size(); i < n_pad; ++i) img[i] = std::uint32_t(i);
    return Permutation(std::move(img));
}

BitMatrix pad_generator(const BitMatrix& g, std::size_t n_pad) {
    if (g.cols() == n_pad) return g;
    BitMatrix out(g.rows(), n_pad);
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (g.get(r, c)) out.set(r, c, true);
    return out;
}

}  // namespace

PodConfig build_pod(const CodeSpec& code, const Permutation& base, const Bsgs& group,
                    std::size_t m_branches, BranchSelection selection, std::uint64_t seed,
                    PodDecoderSettings settings, CombinerMode combiner) {
    if (m_branches < 1) throw ValidationError("build_pod: need at least one branch");
    if (group.n() != code.n) throw ShapeError("build_pod: group degree != code length");
    const auto order = group.order_u64();
    if (order && *order < m_branches)
        throw CapacityError("build_pod: more branches than orbit elements");

    PodConfig cfg;
    cfg.code = code;
    const std::size_t n_pad = next_pow2(code.n);
    unsigned m = 0;
    while ((std::size_t(1) << m) < n_pad) ++m;
    cfg.spec = PolarSpec::make(m);
    cfg.decoder = settings;
    cfg.combiner = combiner;

    Permutation base_pad;
    if (base.size() == code.n) base_pad = pad_perm(base, n_pad);
    else if (base.size() == n_pad) base_pad = base;
    else throw ShapeError("build_pod: base permutation degree mismatch");

    const BitMatrix g_pad = pad_generator(code.g, n_pad);
    const TransformResult base_tr = polar_transform(g_pad, base_pad, cfg.spec);
    cfg.m_p = base_tr.m_p;
    cfg.df = base_tr.df;

    // h = identity first, then distinct orbit elements; both selection modes
    // yield prefix-nested branch lists for a fixed seed
    std::vector<Permutation> hs;
    hs.push_back(Permutation::identity(code.n));
    if (selection == BranchSelection::Enumerate) {
        // the identity occupies slot 0 whether or not it sits inside the
        // enumeration prefix, so the first m_branches elements always suffice
        for (const Permutation& h : group.first_elements(m_branches)) {
            if (hs.size() == m_branches) break;
            if (!h.is_identity()) hs.push_back(h);
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uint64_t guard = 0;
        while (hs.size() < m_branches) {
            if (++guard > 10000000ull)
                throw CapacityError("build_pod: sampling failed to find distinct orbit elements");
            Permutation h = group.sample_uniform(rng);
            if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));
        }
    }
    if (hs.size() != m_branches)
        throw CapacityError("build_pod: could not collect the requested branches");

    for (const Permutation& h : hs) {
        const TransformResult dressed = branch_dress(base_tr, pad_perm(h, n_pad), cfg.spec);
        cfg.branches.push_back({dressed.perm, dressed.e_p});
    }
    return cfg;
}

CombineChoice combine(const std::vector<std::vector<PodCandidate>>& per_branch,
                      const std::vector<double>& llr, const BitMatrix& h_check,
                      CombinerMode mode) {
    bool any = false;
    for (const auto& list : per_branch)
        if (!list.empty()) any = true;
    if (!any) throw ValidationError("combine: empty candidate set");

    std::set<std::vector<std::uint8_t>> seen;
    bool have_metric = false, have_valid = false;
    CombineChoice best_metric, best_valid;
    double best_pm = 0.0, best_corr = 0.0;
    for (std::size_t b = 0; b < per_branch.size(); ++b) {
        for (std::size_t r = 0; r < per_branch[b].size(); ++r) {
            const PodCandidate& cand = per_branch[b][r];
            if (!seen.insert(cand.codeword).second) continue;
            if (!have_metric || cand.metric < best_pm) {
                have_metric = true;
                best_pm = cand.metric;
                best_metric = {b, r, false};
            }
            if (mode == CombinerMode::MlAmongValid) {
                const std::vector<std::uint8_t> syn = mul_mat_vec(h_check, cand.codeword);
                bool valid = true;
                for (std::uint8_t s : syn)
                    if (s) { valid = false; break; }
                if (!valid) continue;
                double corr = 0.0;
                for (std::size_t j = 0; j < llr.size(); ++j)
                    corr += (cand.codeword[j] ? -1.0 : 1.0) * llr[j];
                if (!have_valid || corr > best_corr) {
                    have_valid = true;
                    best_corr = corr;
                    best_valid = {b, r, false};
                }
            }
        }
    }
    if (mode == CombinerMode::BestMetric) return best_metric;
    if (have_valid) return best_valid;
    best_metric.fallback = true;
    return best_metric;
}

PodDecoder::PodDecoder(const PodConfig& cfg)
    : cfg_(&cfg), polar_(cfg.spec, cfg.df, cfg.decoder.polar) {
    inv_perms_.reserve(cfg.branches.size());
    for (const PodBranch& b : cfg.branches) inv_perms_.push_back(b.perm.inverse());
    padded_.resize(cfg.spec.n);
    branch_llr_.resize(cfg.spec.n);
}

PodResult PodDecoder::decode(const std::vector<double>& llr) {
    const PodConfig& cfg = *cfg_;
    const std::size_t n_code = cfg.code.n, n_pad = cfg.spec.n;
    if (llr.size() != n_code) throw ShapeError("pod decode: LLR length mismatch");
    for (double v : llr)
        if (!std::isfinite(v)) throw ValidationError("pod decode: non-finite LLR");

    std::copy(llr.begin(), llr.end(), padded_.begin());
    // padded coordinates are known zeros: fully reliable positive LLR
    std::fill(padded_.begin() + n_code, padded_.end(), cfg.decoder.polar.llr_clamp);

    const std::size_t m_branches = cfg.branches.size();
    cands_.assign(m_branches, {});
    u_hats_.assign(m_branches, {});
    for (std::size_t b = 0; b < m_branches; ++b) {
        for (std::size_t i = 0; i < n_pad; ++i)
            branch_llr_[inv_perms_[b](i)] = padded_[i];
        std::vector<DecodePath> paths;
        if (cfg.decoder.list_size <= 1)
            paths.push_back(polar_.sc(branch_llr_));
        else
            paths = polar_.scl(branch_llr_, cfg.decoder.list_size);
        for (DecodePath& path : paths) {
            std::vector<std::uint8_t> lifted =
                cfg.branches[b].perm.apply(polar_encode(cfg.spec, path.u_hat));
            lifted.resize(n_code);
            cands_[b].push_back({std::move(lifted), path.metric});
            u_hats_[b].push_back(std::move(path.u_hat));
        }
    }

    const CombineChoice choice = combine(cands_, llr, cfg.code.h, cfg.combiner);

    PodResult out;
    out.codeword = cands_[choice.branch][choice.rank].codeword;
    out.message = recover_message(cfg.df, cfg.branches[choice.branch].e,
                                  u_hats_[choice.branch][choice.rank]);
    out.diag.branches.resize(m_branches);
    for (std::size_t b = 0; b < m_branches; ++b) {
        out.diag.branches[b].best_metric = cands_[b].front().metric;
        const std::vector<std::uint8_t> syn = mul_mat_vec(cfg.code.h, cands_[b].front().codeword);
        out.diag.branches[b].valid = true;
        for (std::uint8_t s : syn)
            if (s) out.diag.branches[b].valid = false;
    }
    out.diag.winner_branch = choice.branch;
    out.diag.winner_rank = choice.rank;
    out.diag.fallback = choice.fallback;
    return out;
}

PodResult pod_decode(const PodConfig& cfg, const std::vector<double>& llr) {
    PodDecoder dec(cfg);
    return dec.decode(llr);
}

} // namespace pod
