#include "pod/polar.hpp"

#include <algorithm>
#include <cmath>

#include "pod/errors.hpp"

namespace pod {

PolarSpec PolarSpec::make(unsigned m) {
    PolarSpec spec;
    spec.m = m;
    spec.n = std::size_t(1) << m;
    spec.generator = BitMatrix(spec.n, spec.n);
    // F^{(x)m}[i][j] = 1 iff the support of j is contained in the support of i
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if ((i & j) == j) spec.generator.set(i, j, true);
    return spec;
}

std::vector<std::uint8_t> polar_encode(const PolarSpec& spec, const std::vector<std::uint8_t>& u) {
    if (u.size() != spec.n) throw ShapeError("polar_encode: length mismatch");
    std::vector<std::uint8_t> c = u;
    for (std::size_t half = 1; half < spec.n; half <<= 1)
        for (std::size_t blk = 0; blk < spec.n; blk += 2 * half)
            for (std::size_t i = 0; i < half; ++i)
                c[blk + i] ^= c[blk + half + i];
    return c;
}

namespace {

double softplus(double x) {
    return x > 30.0 ? x : std::log1p(std::exp(x));
}

// exact check-node rule, numerically stable form of
// 2*atanh(tanh(a/2)*tanh(b/2))
double f_exact(double a, double b) {
    const double sa = std::fabs(a), sb = std::fabs(b);
    const double mn = std::min(sa, sb), mx = std::max(sa, sb);
    const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sgn * mn + std::log1p(std::exp(-(sa + sb))) - std::log1p(std::exp(-(mx - mn)));
}

double f_minsum(double a, double b) {
    const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sgn * std::min(std::fabs(a), std::fabs(b));
}

double g_rule(double a, double b, std::uint8_t u_left) {
    return u_left ? b - a : b + a;
}

double penalty(std::uint8_t bit, double llr, bool approx) {
    if (approx) {
        const bool mismatch = bit ? (llr > 0.0) : (llr < 0.0);
        return mismatch ? std::fabs(llr) : 0.0;
    }
    return softplus(-(bit ? -llr : llr));
}

} // namespace

PolarDecoder::PolarDecoder(const PolarSpec& spec, DynamicFrozenSpec df, PolarDecodeOptions opts)
    : m_(spec.m), n_(spec.n), df_(std::move(df)), opts_(opts) {
    if (df_.n != n_) throw ShapeError("PolarDecoder: frozen spec length mismatch");
    sc_path_.llr.resize(m_ + 1);
    sc_path_.left.resize(m_ + 1);
    sc_path_.node.resize(m_ + 1);
    for (unsigned d = 0; d <= m_; ++d) {
        sc_path_.llr[d].resize(n_ >> d);
        sc_path_.left[d].resize((n_ >> d) / 2 + 1);
        sc_path_.node[d].resize(n_ >> d);
    }
    sc_path_.u.resize(n_);
}

void PolarDecoder::check_input(const std::vector<double>& llr) const {
    if (llr.size() != n_) throw ShapeError("decode: LLR length mismatch");
    for (double v : llr)
        if (!std::isfinite(v)) throw ValidationError("decode: non-finite LLR");
}

double PolarDecoder::frozen_bit_penalty(Path& path, std::size_t leaf, double llr) const {
    std::uint8_t bit = 0;
    for (std::uint32_t rank : df_.constraints[leaf]) bit ^= path.u[df_.pivots[rank]];
    path.u[leaf] = bit;
    path.node[m_][0] = bit;
    return penalty(bit, llr, opts_.approx_metric);
}

void PolarDecoder::sc_node(unsigned depth) {
    const std::size_t len = n_ >> depth;
    Path& p = sc_path_;
    if (len == 1) {
        const double llr = p.llr[depth][0];
        const std::size_t j = leaf_++;
        if (df_.pivot_rank[j] >= 0) {
            const std::uint8_t bit = llr < 0.0 ? 1 : 0;
            p.u[j] = bit;
            p.node[depth][0] = bit;
            p.metric += penalty(bit, llr, opts_.approx_metric);
        } else {
            p.metric += frozen_bit_penalty(p, j, llr);
        }
        return;
    }
    const std::size_t half = len >> 1;
    const auto& in = p.llr[depth];
    auto& out = p.llr[depth + 1];
    for (std::size_t i = 0; i < half; ++i)
        out[i] = opts_.min_sum ? f_minsum(in[i], in[i + half]) : f_exact(in[i], in[i + half]);
    sc_node(depth + 1);
    std::copy_n(p.node[depth + 1].begin(), half, p.left[depth].begin());
    for (std::size_t i = 0; i < half; ++i)
        out[i] = g_rule(in[i], in[i + half], p.left[depth][i]);
    sc_node(depth + 1);
    for (std::size_t i = 0; i < half; ++i) {
        p.node[depth][i] = p.left[depth][i] ^ p.node[depth + 1][i];
        p.node[depth][i + half] = p.node[depth + 1][i];
    }
}

DecodePath PolarDecoder::sc(const std::vector<double>& llr) {
    check_input(llr);
    for (std::size_t i = 0; i < n_; ++i)
        sc_path_.llr[0][i] = std::clamp(llr[i], -opts_.llr_clamp, opts_.llr_clamp);
    sc_path_.metric = 0.0;
    leaf_ = 0;
    sc_node(0);
    return {sc_path_.u, sc_path_.metric};
}

void PolarDecoder::leaf_fork(std::size_t list_size) {
    const std::size_t j = leaf_++;
    if (df_.pivot_rank[j] < 0) {
        for (Path& p : paths_) p.metric += frozen_bit_penalty(p, j, p.llr[m_][0]);
        return;
    }
    struct Cand {
        double metric;
        std::uint32_t path;
        std::uint8_t bit;
    };
    std::vector<Cand> cands;
    cands.reserve(paths_.size() * 2);
    for (std::size_t pi = 0; pi < paths_.size(); ++pi) {
        const double llr = paths_[pi].llr[m_][0];
        for (std::uint8_t bit = 0; bit < 2; ++bit)
            cands.push_back({paths_[pi].metric + penalty(bit, llr, opts_.approx_metric),
                             std::uint32_t(pi), bit});
    }
    // survivors: smallest metrics; ties keep the lower path index, then bit 0
    std::vector<std::uint8_t> keep(cands.size(), 1);
    if (cands.size() > list_size) {
        std::vector<std::size_t> idx(cands.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (cands[a].metric != cands[b].metric) return cands[a].metric < cands[b].metric;
            if (cands[a].path != cands[b].path) return cands[a].path < cands[b].path;
            return cands[a].bit < cands[b].bit;
        });
        keep.assign(cands.size(), 0);
        for (std::size_t i = 0; i < list_size; ++i) keep[idx[i]] = 1;
    }
    std::vector<Path> next;
    next.reserve(std::min(cands.size(), list_size));
    for (std::size_t pi = 0; pi < paths_.size(); ++pi) {
        const bool keep0 = keep[2 * pi], keep1 = keep[2 * pi + 1];
        if (keep0) {
            Path p = keep1 ? paths_[pi] : std::move(paths_[pi]);
            p.metric = cands[2 * pi].metric;
            p.u[j] = 0;
            p.node[m_][0] = 0;
            next.push_back(std::move(p));
        }
        if (keep1) {
            Path p = std::move(paths_[pi]);
            p.metric = cands[2 * pi + 1].metric;
            p.u[j] = 1;
            p.node[m_][0] = 1;
            next.push_back(std::move(p));
        }
    }
    paths_ = std::move(next);
}

void PolarDecoder::scl_node(unsigned depth, std::size_t list_size) {
    const std::size_t len = n_ >> depth;
    if (len == 1) {
        leaf_fork(list_size);
        return;
    }
    const std::size_t half = len >> 1;
    for (Path& p : paths_) {
        const auto& in = p.llr[depth];
        auto& out = p.llr[depth + 1];
        for (std::size_t i = 0; i < half; ++i)
            out[i] = opts_.min_sum ? f_minsum(in[i], in[i + half]) : f_exact(in[i], in[i + half]);
    }
    scl_node(depth + 1, list_size);
    for (Path& p : paths_) {
        std::copy_n(p.node[depth + 1].begin(), half, p.left[depth].begin());
        const auto& in = p.llr[depth];
        auto& out = p.llr[depth + 1];
        for (std::size_t i = 0; i < half; ++i)
            out[i] = g_rule(in[i], in[i + half], p.left[depth][i]);
    }
    scl_node(depth + 1, list_size);
    for (Path& p : paths_) {
        for (std::size_t i = 0; i < half; ++i) {
            p.node[depth][i] = p.left[depth][i] ^ p.node[depth + 1][i];
            p.node[depth][i + half] = p.node[depth + 1][i];
        }
    }
}

std::vector<DecodePath> PolarDecoder::scl(const std::vector<double>& llr, std::size_t list_size) {
    if (list_size < 1) throw ValidationError("scl: list size must be positive");
    check_input(llr);
    paths_.clear();
    paths_.push_back(sc_path_);  // reuse the preallocated buffer shape
    for (std::size_t i = 0; i < n_; ++i)
        paths_[0].llr[0][i] = std::clamp(llr[i], -opts_.llr_clamp, opts_.llr_clamp);
    paths_[0].metric = 0.0;
    std::fill(paths_[0].u.begin(), paths_[0].u.end(), 0);
    leaf_ = 0;
    scl_node(0, list_size);
    std::vector<std::size_t> idx(paths_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return paths_[a].metric < paths_[b].metric; });
    std::vector<DecodePath> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back({paths_[i].u, paths_[i].metric});
    paths_.clear();
    return out;
}

DecodePath sc_decode(const PolarSpec& spec, const DynamicFrozenSpec& df,
                     const std::vector<double>& llr, PolarDecodeOptions opts) {
    PolarDecoder dec(spec, df, opts);
    return dec.sc(llr);
}

std::vector<DecodePath> scl_decode(const PolarSpec& spec, const DynamicFrozenSpec& df,
                                   const std::vector<double>& llr, std::size_t list_size,
                                   PolarDecodeOptions opts) {
    PolarDecoder dec(spec, df, opts);
    return dec.scl(llr, list_size);
}

} // namespace pod
