#include "soergel/bsbim.hpp"

#include <algorithm>

#include "soergel/errors.hpp"
#include "soergel/linsolve.hpp"

namespace soergel {

MorphismMatrix& MorphismMatrix::operator+=(const MorphismMatrix& o) {
    if (src != o.src || tgt != o.tgt)
        throw ShapeMismatch("sum of morphisms with different shapes");
    for (int j = 0; j < src_rank(); ++j)
        for (auto& [i, p] : o.cols[j]) add_entry(i, j, p);
    return *this;
}

MorphismMatrix& MorphismMatrix::operator-=(const MorphismMatrix& o) {
    if (src != o.src || tgt != o.tgt)
        throw ShapeMismatch("difference of morphisms with different shapes");
    for (int j = 0; j < src_rank(); ++j)
        for (auto& [i, p] : o.cols[j]) add_entry(i, j, -p);
    return *this;
}

std::map<int, Poly> push_through(const RingContext& ctx, const Word& word, const Poly& f,
                                 int mask) {
    std::map<int, Poly> states;
    states[0] = f;
    for (std::size_t i = 0; i < word.size(); ++i) {
        int s = word[i];
        int e = (mask >> i) & 1;
        std::map<int, Poly> next;
        for (auto& [m, g] : states) {
            Poly h = e ? g * Poly::variable(s) : g;
            auto [p, d] = ctx.split(s, h);
            if (!p.is_zero()) {
                auto& slot = next[m];
                slot += p;
                if (slot.is_zero()) next.erase(m);
            }
            if (!d.is_zero()) {
                auto& slot = next[m | (1 << i)];
                slot += d;
                if (slot.is_zero()) next.erase(m | (1 << i));
            }
        }
        states = std::move(next);
    }
    return states;
}

MorphismMatrix left_mult_operator(const RingContext& ctx, const Word& word, const Poly& f) {
    MorphismMatrix m = MorphismMatrix::zero(word, word, f.degree());
    for (int j = 0; j < m.src_rank(); ++j)
        for (auto& [i, p] : push_through(ctx, word, f, j)) m.add_entry(i, j, p);
    return m;
}

bool is_bimodule_morphism(const RingContext& ctx, const MorphismMatrix& M) {
    int nsrc = int(M.src.size()), ntgt = int(M.tgt.size());
    for (int j = 0; j < M.src_rank(); ++j)
        for (auto& [i, p] : M.cols[j]) {
            int want = M.degree + basis_degree(nsrc, j) - basis_degree(ntgt, i);
            if (want < 0 || !p.is_homogeneous(want) || p.is_zero()) return false;
        }
    for (int t = 0; t < ctx.rank(); ++t) {
        Poly xt = Poly::variable(t);
        MorphismMatrix lhs = compose(M, left_mult_operator(ctx, M.src, xt));
        MorphismMatrix rhs = compose(left_mult_operator(ctx, M.tgt, xt), M);
        if (!(lhs -= rhs).is_zero()) return false;
    }
    return true;
}

MorphismMatrix elementary_m(int s) {
    MorphismMatrix m = MorphismMatrix::zero({s}, {}, 1);
    m.cols[0][0] = Poly(1);
    m.cols[1][0] = Poly::variable(s);
    return m;
}

MorphismMatrix elementary_j(int s) {
    // j_s(1 @ p @ 1) = demazure_s(p) @ 1, extended by left linearity.
    MorphismMatrix m = MorphismMatrix::zero({s, s}, {s}, -1);
    m.cols[2][0] = Poly(1);  // 1 @ x_s @ 1 -> 1 @ 1
    m.cols[3][1] = Poly(1);  // x_s @ x_s @ 1 -> x_s @ 1
    return m;
}

MorphismMatrix elementary_eps(int s) {
    MorphismMatrix m = MorphismMatrix::zero({}, {s}, 1);
    m.cols[0][1] = Poly(1);               // x_s @ 1 summand
    m.cols[0][0] = Poly::variable(s);     // 1 @ x_s = (1 @ 1) x_s
    return m;
}

MorphismMatrix elementary_p(int s) {
    MorphismMatrix m = MorphismMatrix::zero({s}, {s, s}, -1);
    m.cols[0][0] = Poly(1);  // 1 @ 1 -> 1 @ 1 @ 1
    m.cols[1][1] = Poly(1);  // x_s @ 1 -> x_s @ 1 @ 1
    return m;
}

MorphismMatrix compose(const MorphismMatrix& m2, const MorphismMatrix& m1) {
    if (m1.tgt != m2.src)
        throw ShapeMismatch("compose: inner words differ (" + word_str(m1.tgt) + " vs " +
                            word_str(m2.src) + ")");
    MorphismMatrix out = MorphismMatrix::zero(m1.src, m2.tgt, m1.degree + m2.degree);
    for (int j = 0; j < m1.src_rank(); ++j)
        for (auto& [k, p] : m1.cols[j])
            for (auto& [i, q] : m2.cols[k]) out.add_entry(i, j, q * p);
    return out;
}

MorphismMatrix tensor_id(const RingContext& ctx, const Word& left, const MorphismMatrix& M,
                         const Word& right) {
    int nl = int(left.size());
    int nmid_src = int(M.src.size());
    int nmid_tgt = int(M.tgt.size());
    Word src = left, tgt = left;
    src.insert(src.end(), M.src.begin(), M.src.end());
    src.insert(src.end(), right.begin(), right.end());
    tgt.insert(tgt.end(), M.tgt.begin(), M.tgt.end());
    tgt.insert(tgt.end(), right.begin(), right.end());
    MorphismMatrix out = MorphismMatrix::zero(src, tgt, M.degree);

    for (int el = 0; el < (1 << nl); ++el)
        for (int em = 0; em < (1 << nmid_src); ++em)
            for (int er = 0; er < (1 << int(right.size())); ++er) {
                int j = el | (em << nl) | (er << (nl + nmid_src));
                for (auto& [i, p] : M.cols[em]) {
                    // p lands between the middle block and the right block;
                    // push it through the right identity slots.
                    for (auto& [er2, q] : push_through(ctx, right, p, er)) {
                        int row = el | (i << nl) | (er2 << (nl + nmid_tgt));
                        out.add_entry(row, j, q);
                    }
                }
            }
    return out;
}

namespace {

Word alternating(int s, int r, int count) {
    Word w;
    for (int i = 0; i < count; ++i) w.push_back(i % 2 == 0 ? s : r);
    return w;
}

}  // namespace

MorphismMatrix solve_fsr(const RingContext& ctx, int s, int r) {
    int m = ctx.system().order(s, r);
    if (m < 2 || m > 6)
        throw UnsupportedOrder("f_sr requires finite m_sr <= 6, got m = " +
                               std::to_string(m));
    Word src = alternating(s, r, m);
    Word tgt = alternating(r, s, m);
    int rank = ctx.rank();
    int dim = 1 << m;

    // Unknowns: per admissible entry (i, j), the coefficients of the
    // monomials of the degree forced by homogeneity.
    struct Slot {
        int i, j;
        Mono mono;
    };
    std::vector<Slot> unknowns;
    std::map<std::pair<int, int>, std::pair<int, std::vector<Mono>>> entry_unknowns;
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
            int d = basis_degree(m, j) - basis_degree(m, i);
            if (d < 0) continue;
            std::vector<Mono> monos = monomials_of_total_exp(rank, d / 2);
            entry_unknowns[{i, j}] = {int(unknowns.size()), monos};
            for (Mono mo : monos) unknowns.push_back({i, j, mo});
        }

    // Equation keys are interned (t, i, j, monomial) tuples.
    std::map<std::array<std::uint64_t, 2>, std::uint64_t> keys;
    auto key_of = [&](int t, int i, int j, Mono mo) {
        std::array<std::uint64_t, 2> k{(std::uint64_t(t) << 40) |
                                           (std::uint64_t(i) << 20) | std::uint64_t(j),
                                       mo};
        auto it = keys.find(k);
        if (it == keys.end()) it = keys.emplace(k, keys.size()).first;
        return it->second;
    };

    SparseLinearSystem sys(int(unknowns.size()));
    std::vector<MorphismMatrix> lsrc, ltgt;
    for (int t = 0; t < rank; ++t) {
        lsrc.push_back(left_mult_operator(ctx, src, Poly::variable(t)));
        ltgt.push_back(left_mult_operator(ctx, tgt, Poly::variable(t)));
    }
    for (int t = 0; t < rank; ++t) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                // Coefficients of (M * Lsrc_t - Ltgt_t * M)[i][j] per monomial.
                // M[i][k] * Lsrc[k][j]:
                for (int k = 0; k < dim; ++k) {
                    auto mit = entry_unknowns.find({i, k});
                    if (mit != entry_unknowns.end()) {
                        Poly l = lsrc[t].entry(k, j);
                        auto& [base, monos] = mit->second;
                        int u = base;
                        for (Mono mo : monos) {
                            for (auto& [lm, lc] : l.terms())
                                sys.add_entry(key_of(t, i, j, mo + lm), u, lc);
                            ++u;
                        }
                    }
                    auto mit2 = entry_unknowns.find({k, j});
                    if (mit2 != entry_unknowns.end()) {
                        Poly l = ltgt[t].entry(i, k);
                        auto& [base, monos] = mit2->second;
                        int u = base;
                        for (Mono mo : monos) {
                            for (auto& [lm, lc] : l.terms())
                                sys.add_entry(key_of(t, i, j, mo + lm), u, -lc);
                            ++u;
                        }
                    }
                }
            }
    }
    // Normalization: the (0,0) entry is the constant 1.
    std::uint64_t norm_key = key_of(rank, 0, 0, 0);
    sys.add_entry(norm_key, entry_unknowns.at({0, 0}).first, Scalar(1));

    sys.factorize();
    if (!sys.unique())
        throw NonUniqueSolution("f_sr system has free unknowns for m = " +
                                std::to_string(m));
    std::map<std::uint64_t, Scalar> b;
    b[norm_key] = Scalar(1);
    std::vector<Scalar> x = sys.solve(b);

    MorphismMatrix out = MorphismMatrix::zero(src, tgt, 0);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        if (!x[u].is_zero())
            out.add_entry(unknowns[u].i, unknowns[u].j,
                          Poly::monomial(unknowns[u].mono, x[u]));
    if (out.entry(0, 0) != Poly(1) || !is_bimodule_morphism(ctx, out))
        throw NoSolution("f_sr solve produced no valid morphism for m = " +
                         std::to_string(m));
    return out;
}

const MorphismMatrix& FsrCache::get(int s, int r) {
    auto it = cache_.find({s, r});
    if (it == cache_.end()) it = cache_.emplace(std::make_pair(s, r), solve_fsr(*ctx_, s, r)).first;
    return it->second;
}

StandardMorphism beta(const RingContext& ctx, const Word& x_word) {
    StandardMorphism b;
    b.twist = x_word;
    b.src = x_word;
    b.degree = 0;
    int dim = 1 << x_word.size();
    b.row.resize(dim);
    for (int e = 0; e < dim; ++e) {
        Poly val(1);
        for (std::size_t i = 0; i < x_word.size(); ++i) {
            if (!((e >> i) & 1)) continue;
            Word prefix(x_word.begin(), x_word.begin() + i);
            val *= ctx.act(prefix, Poly::variable(x_word[i]));
        }
        b.row[e] = std::move(val);
    }
    return b;
}

StandardMorphism compose_standard(const RingContext& ctx, const StandardMorphism& B,
                                  const MorphismMatrix& M) {
    if (M.tgt != B.src)
        throw ShapeMismatch("compose_standard: inner words differ");
    StandardMorphism out;
    out.twist = B.twist;
    out.src = M.src;
    out.degree = B.degree + M.degree;
    out.row.assign(M.src_rank(), Poly());
    for (int j = 0; j < M.src_rank(); ++j)
        for (auto& [i, p] : M.cols[j]) out.row[j] += B.row[i] * ctx.act(B.twist, p);
    return out;
}

}  // namespace soergel
