#include "pod/bsgs.hpp"

#include <algorithm>

#include "pod/errors.hpp"

namespace pod {

BigUint::BigUint(std::uint64_t v) {
    while (v) {
        limbs_.push_back(std::uint32_t(v % 1000000000ull));
        v /= 1000000000ull;
    }
    if (limbs_.empty()) limbs_.push_back(0);
}

void BigUint::mul(std::uint64_t f) {
    unsigned __int128 carry = 0;
    for (auto& limb : limbs_) {
        unsigned __int128 t = (unsigned __int128)limb * f + carry;
        limb = std::uint32_t(t % 1000000000u);
        carry = t / 1000000000u;
    }
    while (carry) {
        limbs_.push_back(std::uint32_t(carry % 1000000000u));
        carry /= 1000000000u;
    }
}

std::string BigUint::to_string() const {
    std::string s = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

std::optional<std::uint64_t> BigUint::to_u64() const {
    unsigned __int128 v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        v = v * 1000000000u + limbs_[i];
        if (v > std::uint64_t(-1)) return std::nullopt;
    }
    return std::uint64_t(v);
}

void Bsgs::Level::rebuild(std::size_t n) {
    orbit.clear();
    reps.clear();
    slot.assign(n, -1);
    orbit.push_back(base_point);
    reps.push_back(Permutation::identity(n));
    slot[base_point] = 0;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        const std::uint32_t p = orbit[head];
        for (const Permutation& g : gens) {
            const std::uint32_t q = g(p);
            if (slot[q] < 0) {
                slot[q] = std::int32_t(orbit.size());
                orbit.push_back(q);
                reps.push_back(compose(reps[head], g));
            }
        }
    }
}

std::pair<Permutation, std::size_t> Bsgs::sift(Permutation p, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
        const Level& lv = levels_[i];
        const std::uint32_t image = p(lv.base_point);
        if (lv.slot[image] < 0) return {std::move(p), i};
        p = compose(p, lv.reps[std::size_t(lv.slot[image])].inverse());
    }
    return {std::move(p), levels_.size()};
}

Bsgs Bsgs::schreier_sims(std::size_t n, const std::vector<Permutation>& generators) {
    Bsgs g;
    g.n_ = n;
    std::vector<Permutation> start;
    for (const Permutation& p : generators) {
        if (p.size() != n) throw ValidationError("schreier_sims: generator degree mismatch");
        if (!p.is_identity()) start.push_back(p);
    }
    if (start.empty()) return g;  // trivial group

    std::uint32_t first_base = std::uint32_t(n);
    for (const Permutation& p : start) first_base = std::min(first_base, p.smallest_moved_point());
    g.levels_.push_back(Level{first_base, std::move(start), {}, {}, {}});
    g.levels_[0].rebuild(n);

    // Down-up verification: level i is processed until every Schreier
    // generator sifts to the identity through the levels below it.
    std::size_t i = 0;
    while (true) {
        // Find the first Schreier generator of level i that fails to sift.
        Permutation residue;
        std::size_t drop = 0;
        bool found = false;
        {
            const Level& lv = g.levels_[i];
            for (std::size_t oi = 0; oi < lv.orbit.size() && !found; ++oi) {
                for (std::size_t si = 0; si < lv.gens.size() && !found; ++si) {
                    const Permutation& s = lv.gens[si];
                    const std::uint32_t to = s(lv.orbit[oi]);
                    Permutation schreier = compose(compose(lv.reps[oi], s),
                                                   lv.reps[std::size_t(lv.slot[to])].inverse());
                    if (schreier.is_identity()) continue;
                    auto [res, j] = g.sift(std::move(schreier), i + 1);
                    if (res.is_identity()) continue;
                    residue = std::move(res);
                    drop = j;
                    found = true;
                }
            }
        }
        if (!found) {
            if (i == 0) break;
            --i;
            continue;
        }
        if (drop == g.levels_.size())
            g.levels_.push_back(Level{residue.smallest_moved_point(), {}, {}, {}, {}});
        // the residue fixes the base points of all levels above drop
        for (std::size_t t = i + 1; t <= drop; ++t) {
            g.levels_[t].gens.push_back(residue);
            g.levels_[t].rebuild(n);
        }
        i = drop;
    }
    return g;
}

std::vector<std::uint32_t> Bsgs::base() const {
    std::vector<std::uint32_t> b;
    b.reserve(levels_.size());
    for (const Level& lv : levels_) b.push_back(lv.base_point);
    return b;
}

std::vector<std::size_t> Bsgs::transversal_sizes() const {
    std::vector<std::size_t> s;
    s.reserve(levels_.size());
    for (const Level& lv : levels_) s.push_back(lv.orbit.size());
    return s;
}

const std::vector<Permutation>& Bsgs::level_generators(std::size_t level) const {
    return levels_.at(level).gens;
}

BigUint Bsgs::order() const {
    BigUint o(1);
    for (const Level& lv : levels_) o.mul(lv.orbit.size());
    return o;
}

std::optional<std::uint64_t> Bsgs::order_u64() const { return order().to_u64(); }

bool Bsgs::contains(const Permutation& p) const {
    if (p.size() != n_) return false;
    auto [residue, level] = sift(p, 0);
    return level == levels_.size() && residue.is_identity();
}

namespace {
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t m) {
    // rejection sampling keeps the draw exactly uniform
    const std::uint64_t lim = std::uint64_t(-1) - std::uint64_t(-1) % m;
    std::uint64_t x;
    do { x = rng(); } while (x >= lim);
    return x % m;
}
}  // namespace

Permutation Bsgs::sample_uniform(std::mt19937_64& rng) const {
    Permutation acc = Permutation::identity(n_);
    for (const Level& lv : levels_) {
        const std::size_t idx = std::size_t(bounded_uniform(rng, lv.orbit.size()));
        acc = compose(lv.reps[idx], acc);
    }
    return acc;
}

void Bsgs::enumerate_rec(std::size_t level, const Permutation& acc,
                         std::vector<Permutation>& out, std::size_t cap) const {
    if (out.size() >= cap) return;
    if (level == levels_.size()) {
        out.push_back(acc);
        return;
    }
    const Level& lv = levels_[level];
    std::vector<std::size_t> idx(lv.orbit.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return lv.orbit[a] < lv.orbit[b]; });
    for (std::size_t i : idx) {
        if (out.size() >= cap) return;
        enumerate_rec(level + 1, compose(lv.reps[i], acc), out, cap);
    }
}

std::vector<Permutation> Bsgs::enumerate(std::size_t limit) const {
    BigUint o = order();
    auto v = o.to_u64();
    if (!v || *v > limit)
        throw CapacityError("enumerate: group order " + o.to_string() + " exceeds limit");
    std::vector<Permutation> out;
    out.reserve(std::size_t(*v));
    enumerate_rec(0, Permutation::identity(n_), out, std::size_t(*v));
    return out;
}

std::vector<Permutation> Bsgs::first_elements(std::size_t count) const {
    auto v = order_u64();
    if (v && *v < count)
        throw CapacityError("first_elements: fewer group elements than requested");
    std::vector<Permutation> out;
    out.reserve(count);
    enumerate_rec(0, Permutation::identity(n_), out, count);
    return out;
}

} // namespace pod
