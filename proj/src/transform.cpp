#include "pod/transform.hpp"

#include <sstream>

#include "pod/errors.hpp"

namespace pod {

BitMatrix permute_columns(const BitMatrix& g, const Permutation& h) {
    if (g.cols() != h.size()) throw ShapeError("permute_columns: size mismatch");
    BitMatrix out(g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (g.get(r, h(j))) out.set(r, j, true);
    return out;
}

TransformResult polar_transform(const BitMatrix& g, const Permutation& p, const PolarSpec& spec) {
    if (g.cols() != spec.n) throw ShapeError("polar_transform: generator width != blocklength");
    if (p.size() != spec.n) throw ShapeError("polar_transform: permutation degree != blocklength");
    if (gf2_rank(g) != g.rows())
        throw ValidationError("polar_transform: generator is rank-deficient");
    // G * P^-1 * G_n^-1; G_n is self-inverse in natural order
    const BitMatrix a = matmul(permute_columns(g, p), spec.generator);
    RrefResult rr = rref_with_transform(a);
    TransformResult out;
    out.m_p = std::move(rr.rref);
    out.e_p = std::move(rr.elim);
    out.pivots = std::move(rr.pivots);
    out.df = df_spec_from_m(out.m_p);
    out.perm = p;
    return out;
}

DynamicFrozenSpec df_spec_from_m(const BitMatrix& m_p) {
    DynamicFrozenSpec df;
    df.n = m_p.cols();
    df.k = m_p.rows();
    df.pivot_rank.assign(df.n, -1);
    df.constraints.assign(df.n, {});
    // locate pivots and insist on canonical RREF shape
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t r = 0; r < m_p.rows(); ++r) {
        std::size_t lead = df.n;
        for (std::size_t c = 0; c < df.n; ++c)
            if (m_p.get(r, c)) { lead = c; break; }
        if (lead == df.n)
            throw ValidationError("df_spec_from_m: zero row, matrix is not full-rank RREF");
        if (!first && lead <= prev)
            throw ValidationError("df_spec_from_m: pivot columns not increasing");
        for (std::size_t r2 = 0; r2 < m_p.rows(); ++r2)
            if (r2 != r && m_p.get(r2, lead))
                throw ValidationError("df_spec_from_m: pivot column is not a unit vector");
        df.pivots.push_back(std::uint32_t(lead));
        df.pivot_rank[lead] = std::int32_t(r);
        prev = lead;
        first = false;
    }
    for (std::size_t j = 0; j < df.n; ++j) {
        if (df.pivot_rank[j] >= 0) continue;
        for (std::size_t r = 0; r < m_p.rows(); ++r) {
            if (!m_p.get(r, j)) continue;
            // RREF puts every referenced pivot strictly left of j
            if (df.pivots[r] >= j)
                throw ValidationError("df_spec_from_m: constraint references a later pivot");
            df.constraints[j].push_back(std::uint32_t(r));
        }
    }
    return df;
}

TransformResult branch_dress(const TransformResult& base, const Permutation& h,
                             const PolarSpec& spec) {
    if (h.size() != base.perm.size()) throw ShapeError("branch_dress: permutation size mismatch");
    // reconstruct G = E^-1 * M * G_n * P, then run the transform for P*h
    const BitMatrix mg = matmul(matmul(invert(base.e_p), base.m_p), spec.generator);
    BitMatrix g(mg.rows(), mg.cols());
    for (std::size_t r = 0; r < mg.rows(); ++r)
        for (std::size_t j = 0; j < mg.cols(); ++j)
            if (mg.get(r, j)) g.set(r, base.perm(j), true);
    TransformResult dressed = polar_transform(g, compose(base.perm, h), spec);
    if (!(dressed.m_p == base.m_p))
        throw AutomorphismViolation("branch_dress: dynamic frozen matrix changed; "
                                    "permutation is not an automorphism");
    return dressed;
}

bool verify_automorphism(const BitMatrix& g, const Permutation& h) {
    if (g.cols() != h.size()) throw ShapeError("verify_automorphism: size mismatch");
    return rowspan_equal(g, permute_columns(g, h));
}

std::vector<std::uint8_t> recover_message(const DynamicFrozenSpec& df, const BitMatrix& e_p,
                                          const std::vector<std::uint8_t>& u_hat) {
    if (u_hat.size() != df.n) throw ShapeError("recover_message: length mismatch");
    for (std::size_t j = 0; j < df.n; ++j) {
        if (df.pivot_rank[j] >= 0) continue;
        std::uint8_t expect = 0;
        for (std::uint32_t rank : df.constraints[j]) expect ^= u_hat[df.pivots[rank]];
        if ((u_hat[j] & 1) != expect)
            throw ValidationError("recover_message: u_hat violates a frozen constraint");
    }
    std::vector<std::uint8_t> m_p(df.k);
    for (std::size_t r = 0; r < df.k; ++r) m_p[r] = u_hat[df.pivots[r]] & 1;
    return mul_vec_mat(m_p, e_p);
}

std::vector<std::uint8_t> recover_message(const TransformResult& result,
                                          const std::vector<std::uint8_t>& u_hat) {
    return recover_message(result.df, result.e_p, u_hat);
}

std::vector<std::uint8_t> encode_through(const TransformResult& result, const PolarSpec& spec,
                                         const std::vector<std::uint8_t>& message) {
    const std::vector<std::uint8_t> m_p = mul_vec_mat(message, invert(result.e_p));
    const std::vector<std::uint8_t> u = mul_vec_mat(m_p, result.m_p);
    return result.perm.apply(polar_encode(spec, u));
}

std::string TransformResult::dump() const {
    std::ostringstream os;
    os << "n " << m_p.cols() << "\nk " << m_p.rows() << "\npivots";
    for (std::size_t p : pivots) os << ' ' << p;
    std::size_t dynamic = 0;
    for (std::size_t j = 0; j < df.n; ++j)
        if (df.pivot_rank[j] < 0 && !df.constraints[j].empty()) ++dynamic;
    os << "\ndynamic_frozen " << dynamic << '\n';
    os << "perm " << perm.to_text() << '\n';
    os << "m_p\n" << m_p.to_text();
    os << "e_p\n" << e_p.to_text();
    return os.str();
}

} // namespace pod
