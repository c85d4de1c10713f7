#include "soergel/leaves.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "soergel/errors.hpp"

namespace soergel {

ChoiceLedger::ChoiceLedger(const GroupUniverse& uni, unsigned seed)
    : uni_(&uni), seed_(seed), words_(uni.size()) {
    priority_.resize(uni.system().rank());
    std::iota(priority_.begin(), priority_.end(), 0);
    if (seed != 0) {
        std::mt19937 rng(seed);
        std::shuffle(priority_.begin(), priority_.end(), rng);
        reverse_ = true;
    }
}

const Word& ChoiceLedger::canonical_word(ElementId id) const {
    if (words_[id]) return *words_[id];
    Word w;
    if (seed_ == 0) {
        w = uni_->canonical_word(id);
    } else {
        // ShortLex-least reduced word under the permuted generator priority:
        // repeatedly take the highest-priority left descent.
        ElementId cur = id;
        while (uni_->length(cur) > 0) {
            for (int s : priority_) {
                if (uni_->is_left_descent(cur, s)) {
                    w.push_back(s);
                    cur = uni_->left_mult(cur, s);
                    break;
                }
            }
        }
    }
    words_[id] = std::move(w);
    return *words_[id];
}

namespace {

struct Node {
    Word u;
    ElementId id = 0;
    std::vector<LeafStep> prog;
    std::vector<int> i_seq, j_seq;
    int degree = 0;
};

void grow(const ChoiceLedger& led, const Word& word, std::size_t k, Node node,
          std::vector<Leaf>& out) {
    const GroupUniverse& uni = led.universe();
    if (k == word.size()) {
        Leaf leaf;
        leaf.source_word = word;
        leaf.target = node.id;
        leaf.i_seq = std::move(node.i_seq);
        leaf.j_seq = std::move(node.j_seq);
        leaf.degree = node.degree;
        leaf.program = std::move(node.prog);
        if (leaf.is_identity()) {
            // Reduced all-identity branch: keep the source word as target
            // word and skip the final normalization.
            leaf.target_word = node.u;
        } else {
            leaf.target_word = led.canonical_word(node.id);
            for (const BraidMove& mv : led.path(node.u, leaf.target_word))
                leaf.program.push_back({LeafStep::F, mv.pos, mv.s, mv.t, mv.count});
        }
        out.push_back(std::move(leaf));
        return;
    }

    int s = word[k];
    ElementId us = uni.right_mult(node.id, s);
    if (us == kOutsideBall) throw BallExceeded("light-leaves tree leaves the ball");

    if (uni.length(us) > uni.length(node.id)) {
        // Case (a): the prefix grows.
        {
            Node keep = node;
            keep.prog.push_back({LeafStep::Append, 0, s, 0, 0});
            keep.u.push_back(s);
            keep.id = us;
            keep.i_seq.push_back(0);
            keep.j_seq.push_back(0);
            grow(led, word, k + 1, std::move(keep), out);
        }
        {
            Node drop = std::move(node);
            drop.prog.push_back({LeafStep::Append, 0, s, 0, 0});
            drop.prog.push_back({LeafStep::M, int(drop.u.size()), s, 0, 0});
            drop.i_seq.push_back(1);
            drop.j_seq.push_back(0);
            drop.degree += 1;
            grow(led, word, k + 1, std::move(drop), out);
        }
    } else {
        // Case (b): normalize the prefix to end with s, then apply j.
        Word uprime = led.canonical_word(us);
        uprime.push_back(s);
        Node base = std::move(node);
        base.prog.push_back({LeafStep::Append, 0, s, 0, 0});
        for (const BraidMove& mv : led.path(base.u, uprime))
            base.prog.push_back({LeafStep::F, mv.pos, mv.s, mv.t, mv.count});
        int pos = int(uprime.size()) - 1;
        base.prog.push_back({LeafStep::J, pos, s, 0, 0});
        base.u = Word(uprime.begin(), uprime.end());  // now ends with s; j merges the pair
        {
            Node keep = base;
            keep.i_seq.push_back(0);
            keep.j_seq.push_back(1);
            keep.degree -= 1;
            grow(led, word, k + 1, std::move(keep), out);
        }
        {
            Node drop = std::move(base);
            drop.prog.push_back({LeafStep::M, pos, s, 0, 0});
            drop.u.pop_back();
            drop.id = us;
            drop.i_seq.push_back(1);
            drop.j_seq.push_back(1);
            grow(led, word, k + 1, std::move(drop), out);
        }
    }
}

}  // namespace

LeafTree build_tree(const ChoiceLedger& led, const Word& word) {
    LeafTree tree;
    tree.word = word;
    Node root;
    root.id = led.universe().identity();
    grow(led, word, 0, std::move(root), tree.leaves);
    if (tree.leaves.size() != (std::size_t(1) << word.size()))
        throw CrossCheckFailed("light-leaves tree does not have 2^n leaves");
    return tree;
}

std::map<ElementId, LaurentPoly> leaf_character(const ChoiceLedger& led, const Word& word) {
    std::map<ElementId, LaurentPoly> out;
    for (const Leaf& l : build_tree(led, word).leaves)
        out[l.target] += LaurentPoly::v_power(l.degree);
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

const MorphismMatrix& MorphismFactory::matrix(const Leaf& leaf) {
    auto key = std::make_pair(leaf.source_word, leaf.i_seq);
    auto it = mat_cache_.find(key);
    if (it == mat_cache_.end())
        it = mat_cache_.emplace(std::move(key), replay(leaf, false)).first;
    return it->second;
}

const MorphismMatrix& MorphismFactory::adjoint(const Leaf& leaf) {
    auto key = std::make_pair(leaf.source_word, leaf.i_seq);
    auto it = adj_cache_.find(key);
    if (it == adj_cache_.end())
        it = adj_cache_.emplace(std::move(key), replay(leaf, true)).first;
    return it->second;
}

MorphismMatrix MorphismFactory::replay(const Leaf& leaf, bool adjoint_side) {
    return adjoint_side ? replay_adjoint(leaf) : replay_forward(leaf);
}

MorphismMatrix MorphismFactory::replay_forward(const Leaf& leaf) {
    MorphismMatrix m = MorphismMatrix::identity({});
    Word cur;
    for (const LeafStep& st : leaf.program) {
        switch (st.kind) {
            case LeafStep::Append:
                m = tensor_id(*ctx_, {}, m, {st.s});
                cur.push_back(st.s);
                break;
            case LeafStep::M: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + 1, cur.end());
                m = compose(tensor_id(*ctx_, pre, elementary_m(st.s), suf), m);
                cur.erase(cur.begin() + st.pos);
                break;
            }
            case LeafStep::J: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + 2, cur.end());
                m = compose(tensor_id(*ctx_, pre, elementary_j(st.s), suf), m);
                cur.erase(cur.begin() + st.pos);
                break;
            }
            case LeafStep::F: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + st.count, cur.end());
                m = compose(tensor_id(*ctx_, pre, fsr_.get(st.s, st.t), suf), m);
                BraidMove mv{st.pos, st.s, st.t, st.count};
                cur = apply_braid_move(cur, mv);
                break;
            }
        }
    }
    if (cur != leaf.target_word)
        throw CrossCheckFailed("leaf program does not land on its target word");
    if (m.degree != leaf.degree)
        throw CrossCheckFailed("leaf matrix degree disagrees with step count");
    return m;
}

MorphismMatrix MorphismFactory::replay_adjoint(const Leaf& leaf) {
    MorphismMatrix m = MorphismMatrix::identity({});
    Word cur;
    for (const LeafStep& st : leaf.program) {
        switch (st.kind) {
            case LeafStep::Append:
                m = tensor_id(*ctx_, {}, m, {st.s});
                cur.push_back(st.s);
                break;
            case LeafStep::M: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + 1, cur.end());
                m = compose(m, tensor_id(*ctx_, pre, elementary_eps(st.s), suf));
                cur.erase(cur.begin() + st.pos);
                break;
            }
            case LeafStep::J: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + 2, cur.end());
                m = compose(m, tensor_id(*ctx_, pre, elementary_p(st.s), suf));
                cur.erase(cur.begin() + st.pos);
                break;
            }
            case LeafStep::F: {
                Word pre(cur.begin(), cur.begin() + st.pos);
                Word suf(cur.begin() + st.pos + st.count, cur.end());
                m = compose(m, tensor_id(*ctx_, pre, fsr_.get(st.t, st.s), suf));
                BraidMove mv{st.pos, st.s, st.t, st.count};
                cur = apply_braid_move(cur, mv);
                break;
            }
        }
    }
    if (cur != leaf.target_word)
        throw CrossCheckFailed("adjoint program does not start from the target word");
    if (m.degree != leaf.degree)
        throw CrossCheckFailed("adjoint degree disagrees with the leaf degree");
    return m;
}

MorphismMatrix MorphismFactory::braid_morphism(const Word& from, const Word& to) {
    MorphismMatrix m = MorphismMatrix::identity(from);
    Word cur = from;
    for (const BraidMove& mv : led_->path(from, to)) {
        Word pre(cur.begin(), cur.begin() + mv.pos);
        Word suf(cur.begin() + mv.pos + mv.count, cur.end());
        m = compose(tensor_id(*ctx_, pre, fsr_.get(mv.s, mv.t), suf), m);
        cur = apply_braid_move(cur, mv);
    }
    return m;
}

DoubleLeafBasis double_leaves(MorphismFactory& fac, const Word& w_word, const Word& v_word) {
    const GroupUniverse& uni = fac.ledger().universe();
    DoubleLeafBasis out;
    out.w_word = w_word;
    out.v_word = v_word;
    out.lower_tree = build_tree(fac.ledger(), w_word);
    out.upper_tree = build_tree(fac.ledger(), v_word);

    // Deterministic order: through-elements by (length, id), then leaf indices.
    std::vector<ElementId> throughs;
    for (const Leaf& l : out.lower_tree.leaves)
        if (std::find(throughs.begin(), throughs.end(), l.target) == throughs.end())
            throughs.push_back(l.target);
    std::sort(throughs.begin(), throughs.end(), [&](ElementId a, ElementId b) {
        return std::make_pair(uni.length(a), a) < std::make_pair(uni.length(b), b);
    });

    std::vector<std::optional<MorphismMatrix>> lower_mats(out.lower_tree.leaves.size());
    std::vector<std::optional<MorphismMatrix>> upper_adj(out.upper_tree.leaves.size());
    for (ElementId x : throughs) {
        for (std::size_t a = 0; a < out.lower_tree.leaves.size(); ++a) {
            const Leaf& lo = out.lower_tree.leaves[a];
            if (lo.target != x) continue;
            for (std::size_t b = 0; b < out.upper_tree.leaves.size(); ++b) {
                const Leaf& up = out.upper_tree.leaves[b];
                if (up.target != x) continue;
                if (!lower_mats[a]) lower_mats[a] = fac.matrix(lo);
                if (!upper_adj[b]) upper_adj[b] = fac.adjoint(up);
                MorphismMatrix mm = *lower_mats[a];
                if (lo.target_word != up.target_word)
                    mm = compose(fac.braid_morphism(lo.target_word, up.target_word), mm);
                mm = compose(*upper_adj[b], mm);
                out.basis.push_back({int(a), int(b), x, lo.degree + up.degree});
                out.matrices.push_back(std::move(mm));
            }
        }
    }
    return out;
}

std::map<int, Poly> eval_leaf(const MorphismMatrix& leaf_matrix, int jprime) {
    return leaf_matrix.cols[jprime];
}

std::vector<StandardMorphism> standard_leaves(MorphismFactory& fac, const LeafTree& tree,
                                              ElementId x) {
    std::vector<StandardMorphism> out;
    for (const Leaf& l : tree.leaves) {
        if (l.target != x) continue;
        StandardMorphism sm =
            compose_standard(fac.ctx(), beta(fac.ctx(), l.target_word), fac.matrix(l));
        sm.degree = l.degree;
        out.push_back(std::move(sm));
    }
    return out;
}

DoubleLeafExpander::DoubleLeafExpander(const RingContext& ctx, DoubleLeafBasis basis)
    : ctx_(&ctx), basis_(std::move(basis)) {}

DoubleLeafExpander::Layer& DoubleLeafExpander::layer(int delta) {
    auto it = layers_.find(delta);
    if (it != layers_.end()) return it->second;
    Layer& lay = layers_[delta];

    int rank = ctx_->rank();
    for (std::size_t k = 0; k < basis_.basis.size(); ++k) {
        int gap = delta - basis_.basis[k].degree;
        if (gap < 0 || gap % 2 != 0) continue;
        for (Mono mu : monomials_of_total_exp(rank, gap / 2))
            lay.slots.push_back({int(k), mu});
    }
    lay.sys = SparseLinearSystem(int(lay.slots.size()));
    auto key_of = [&lay](int i, int j, Mono m) {
        std::array<std::uint64_t, 2> k{(std::uint64_t(i) << 24) | std::uint64_t(j), m};
        auto kit = lay.keys.find(k);
        if (kit == lay.keys.end()) kit = lay.keys.emplace(k, lay.keys.size()).first;
        return kit->second;
    };
    for (std::size_t u = 0; u < lay.slots.size(); ++u) {
        auto [k, mu] = lay.slots[u];
        const MorphismMatrix& D = basis_.matrices[k];
        for (int j = 0; j < D.src_rank(); ++j)
            for (auto& [i, p] : D.cols[j])
                for (auto& [nu, c] : p.terms())
                    lay.sys.add_entry(key_of(i, j, nu + mu), int(u), c);
    }
    lay.sys.factorize();
    if (!lay.sys.unique())
        throw CrossCheckFailed("double-leaves layer system has free unknowns (degree " +
                               std::to_string(delta) + ")");
    return lay;
}

std::vector<Poly> DoubleLeafExpander::expand(const MorphismMatrix& M) {
    if (M.src != basis_.w_word || M.tgt != basis_.v_word)
        throw ShapeMismatch("expansion target does not match the basis Hom space");
    int nsrc = int(M.src.size()), ntgt = int(M.tgt.size());

    // Split the morphism into homogeneous layers.
    std::map<int, std::vector<std::tuple<int, int, Mono, Scalar>>> per_delta;
    for (int j = 0; j < M.src_rank(); ++j)
        for (auto& [i, p] : M.cols[j])
            for (auto& [nu, c] : p.terms()) {
                int delta =
                    2 * mono_total_exp(nu) - basis_degree(nsrc, j) + basis_degree(ntgt, i);
                per_delta[delta].push_back({i, j, nu, c});
            }

    std::vector<Poly> result(basis_.basis.size());
    for (auto& [delta, entries] : per_delta) {
        Layer& lay = layer(delta);
        std::map<std::uint64_t, Scalar> b;
        for (auto& [i, j, nu, c] : entries) {
            std::array<std::uint64_t, 2> key{(std::uint64_t(i) << 24) | std::uint64_t(j),
                                             nu};
            auto kit = lay.keys.find(key);
            if (kit == lay.keys.end())
                throw NotInSpan("morphism has a coordinate outside the basis support");
            b[kit->second] = c;
        }
        std::vector<Scalar> x = lay.sys.solve(b);
        for (std::size_t u = 0; u < lay.slots.size(); ++u)
            if (!x[u].is_zero())
                result[lay.slots[u].first].add_term(lay.slots[u].second, x[u]);
    }

    // Full reconstruction is the correctness gate.
    MorphismMatrix recon = MorphismMatrix::zero(M.src, M.tgt, M.degree);
    for (std::size_t k = 0; k < result.size(); ++k) {
        if (result[k].is_zero()) continue;
        MorphismMatrix term = basis_.matrices[k].scaled_right(result[k]);
        for (int j = 0; j < term.src_rank(); ++j)
            for (auto& [i, p] : term.cols[j]) recon.add_entry(i, j, p);
    }
    if (!recon.same_entries(MorphismMatrix{M.src, M.tgt, recon.degree, M.cols}))
        throw NotInSpan("double-leaves expansion does not reconstruct the morphism");
    return result;
}

FiberMatrix fiber_of(const MorphismMatrix& m) {
    FiberMatrix out(m.src_rank());
    for (int j = 0; j < m.src_rank(); ++j)
        for (auto& [i, p] : m.cols[j]) {
            Scalar c = p.constant_term();
            if (!c.is_zero()) out[j][i] = c;
        }
    return out;
}

FiberMatrix fiber_compose(const FiberMatrix& a, const FiberMatrix& b) {
    FiberMatrix out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        for (auto& [m, cb] : b[j])
            for (auto& [i, ca] : a[m]) {
                Scalar& e = out[j][i];
                e += ca * cb;
                if (e.is_zero()) out[j].erase(i);
            }
    return out;
}

void DoubleLeafExpander::build_fiber() {
    fiber_ = SparseLinearSystem(int(basis_.basis.size()));
    fiber_basis_.clear();
    for (std::size_t k = 0; k < basis_.matrices.size(); ++k) {
        fiber_basis_.push_back(fiber_of(basis_.matrices[k]));
        for (std::size_t j = 0; j < fiber_basis_[k].size(); ++j)
            for (auto& [i, c] : fiber_basis_[k][j])
                fiber_.add_entry((std::uint64_t(i) << 24) | std::uint64_t(j), int(k), c);
    }
    fiber_.factorize();
    if (!fiber_.unique())
        throw CrossCheckFailed(
            "double-leaves basis is degenerate in the zero fiber");
    fiber_built_ = true;
}

const FiberMatrix& DoubleLeafExpander::fiber_matrix(int k) {
    if (!fiber_built_) build_fiber();
    return fiber_basis_[k];
}

std::vector<Scalar> DoubleLeafExpander::fiber_expand(const FiberMatrix& M) {
    if (!fiber_built_) build_fiber();
    if (int(M.size()) != 1 << basis_.w_word.size())
        throw ShapeMismatch("fiber expansion target does not match the basis Hom space");
    std::map<std::uint64_t, Scalar> b;
    for (std::size_t j = 0; j < M.size(); ++j)
        for (auto& [i, c] : M[j])
            b[(std::uint64_t(i) << 24) | std::uint64_t(j)] = c;
    std::vector<Scalar> x = fiber_.solve(b);

    // Exact numeric reconstruction is the correctness gate.
    std::map<std::uint64_t, Scalar> recon;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].is_zero()) continue;
        for (std::size_t j = 0; j < fiber_basis_[k].size(); ++j)
            for (auto& [i, c] : fiber_basis_[k][j]) {
                std::uint64_t key = (std::uint64_t(i) << 24) | std::uint64_t(j);
                Scalar& e = recon[key];
                e += x[k] * c;
                if (e.is_zero()) recon.erase(key);
            }
    }
    if (recon != b)
        throw NotInSpan("fiber expansion does not reconstruct the evaluated morphism");
    return x;
}

}  // namespace soergel
