#include "soergel/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

namespace soergel {

std::string word_str(const Word& w) {
    static const char* letters = "stuabcdefgh";
    std::string out;
    for (int s : w) out += (s >= 0 && s < 11) ? letters[s] : '?';
    return out.empty() ? "e" : out;
}

void CoxeterMatrix::validate() const {
    if (rank < 1 || rank > 8) throw Error("rank must be between 1 and 8");
    if (int(m.size()) != rank) throw Error("Coxeter matrix has wrong number of rows");
    for (int i = 0; i < rank; ++i) {
        if (int(m[i].size()) != rank) throw Error("Coxeter matrix row has wrong size");
        if (m[i][i] != 1) throw Error("Coxeter matrix diagonal must be 1");
        for (int j = 0; j < rank; ++j) {
            if (m[i][j] != m[j][i]) throw Error("Coxeter matrix must be symmetric");
            if (i != j && m[i][j] != 0 && m[i][j] < 2)
                throw Error("off-diagonal entries must be >= 2 (0 for infinity)");
        }
    }
}

CoxeterMatrix CoxeterMatrix::preset(const std::string& name) {
    auto dihedral = [](int m) {
        return CoxeterMatrix{2, {{1, m}, {m, 1}}};
    };
    if (name == "A2") return dihedral(3);
    if (name == "B2") return dihedral(4);
    if (name == "G2") return dihedral(6);
    if (name == "Dinf") return dihedral(0);
    if (name == "A3") return CoxeterMatrix{3, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}};
    if (name == "B3") return CoxeterMatrix{3, {{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}};
    if (name == "H3") return CoxeterMatrix{3, {{1, 5, 2}, {5, 1, 3}, {2, 3, 1}}};
    if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(3, name.size() - 4);
        int m = inner == "inf" ? 0 : std::stoi(inner);
        return dihedral(m);
    }
    throw Error("unknown group preset: " + name);
}

CoxeterMatrix CoxeterMatrix::from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CoxeterMatrix cm;
    cm.rank = j.at("rank").get<int>();
    cm.m = j.at("m").get<std::vector<std::vector<int>>>();
    cm.validate();
    return cm;
}

namespace {

int scalar_sign(const Scalar& x) {
    if (x.is_zero()) return 0;
    int sa = x.rat_part() == 0 ? 0 : (x.rat_part() > 0 ? 1 : -1);
    int sb = x.surd_part() == 0 ? 0 : (x.surd_part() > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational cmp = x.rat_part() * x.rat_part() -
                   Rational(x.surd_index()) * x.surd_part() * x.surd_part();
    if (cmp > 0) return sa;
    if (cmp < 0) return sb;
    return 0;
}

// Sign of the determinant of a symmetric matrix block, by Gaussian
// elimination over the exact field.
int det_sign(std::vector<std::vector<Scalar>> a) {
    int n = int(a.size());
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            sign = -sign;
        }
        sign *= scalar_sign(a[col][col]);
        Scalar inv = a[col][col].inverse();
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            Scalar f = a[r][col] * inv;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return sign;
}

}  // namespace

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix) : m_(std::move(matrix)) {
    m_.validate();
    int n = m_.rank;
    cartan_.assign(n, std::vector<Scalar>(n, Scalar(0)));
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            Scalar c = s == t ? Scalar(1) : -cos_pi_over(m_.m[s][t]);
            if (c.surd_index() != 0) {
                if (surd_ != 0 && surd_ != c.surd_index())
                    throw FieldTowerUnsupported(
                        "Coxeter matrix requires two distinct quadratic extensions");
                surd_ = c.surd_index();
            }
            cartan_[s][t] = std::move(c);
        }
    }
    // Rank <= 2 groups and finite groups (positive definite form) use a
    // reflection-faithful geometric representation.
    if (n <= 2) {
        whitelisted_ = true;
    } else {
        bool pos_def = true;
        for (int k = 1; k <= n && pos_def; ++k) {
            std::vector<std::vector<Scalar>> block(k, std::vector<Scalar>(k, Scalar(0)));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) block[i][j] = cartan_[i][j];
            pos_def = det_sign(block) > 0;
        }
        whitelisted_ = pos_def;
    }
}

std::vector<Scalar> CoxeterSystem::reflect(int s, const std::vector<Scalar>& vec) const {
    Scalar b(0);
    for (int t = 0; t < rank(); ++t) b += cartan_[s][t] * vec[t];
    std::vector<Scalar> out = vec;
    out[s] -= Scalar(2) * b;
    return out;
}

std::vector<std::vector<Scalar>> CoxeterSystem::reflection_matrix(int s) const {
    int n = rank();
    std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n, Scalar(0)));
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> col(n, Scalar(0));
        col[j] = Scalar(1);
        col = reflect(s, col);
        for (int i = 0; i < n; ++i) mat[i][j] = col[i];
    }
    return mat;
}

namespace {

using Mat = std::vector<Scalar>;  // row-major rank x rank

Mat mat_identity(int n) {
    Mat m(n * n, Scalar(0));
    for (int i = 0; i < n; ++i) m[i * n + i] = Scalar(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b, int n) {
    Mat out(n * n, Scalar(0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i * n + k].is_zero()) continue;
            for (int j = 0; j < n; ++j) out[i * n + j] += a[i * n + k] * b[k * n + j];
        }
    return out;
}

}  // namespace

GroupUniverse::GroupUniverse(const CoxeterSystem& system, int max_length,
                             std::size_t element_cap)
    : sys_(&system), max_length_(max_length) {
    if (max_length < 0) throw Error("max_length must be nonnegative");
    int n = sys_->rank();
    std::vector<Mat> gen(n);
    for (int s = 0; s < n; ++s) {
        auto rm = sys_->reflection_matrix(s);
        Mat flat(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat[i * n + j] = rm[i][j];
        gen[s] = std::move(flat);
    }

    std::vector<Mat> mats;
    std::map<Mat, ElementId> index;
    mats.push_back(mat_identity(n));
    index[mats[0]] = 0;
    canonical_.push_back({});
    length_.push_back(0);
    right_.push_back(std::vector<ElementId>(n, kOutsideBall));

    // Level-by-level BFS.  Elements of each length are visited in ShortLex
    // order of their canonical words and generators in increasing order, so
    // the first discovery of an element provides its ShortLex-least reduced
    // word.
    std::size_t level_begin = 0;
    for (int len = 0; len < max_length_; ++len) {
        std::size_t level_end = canonical_.size();
        if (level_begin == level_end) break;
        for (std::size_t u = level_begin; u < level_end; ++u) {
            for (int s = 0; s < n; ++s) {
                Mat prod = mat_mul(mats[u], gen[s], n);
                auto it = index.find(prod);
                if (it != index.end()) {
                    right_[u][s] = it->second;
                    continue;
                }
                ElementId id = ElementId(canonical_.size());
                if (std::size_t(id) >= element_cap)
                    throw CapExceeded("group ball exceeds configured element cap");
                index.emplace(std::move(prod), id);
                mats.push_back(mat_mul(mats[u], gen[s], n));
                Word w = canonical_[u];
                w.push_back(s);
                canonical_.push_back(std::move(w));
                length_.push_back(len + 1);
                right_.push_back(std::vector<ElementId>(n, kOutsideBall));
                right_[u][s] = id;
            }
        }
        level_begin = level_end;
    }
    // Resolve products within the final level (they may point to elements of
    // length max_length discovered later, or leave the ball).
    for (std::size_t u = level_begin; u < canonical_.size(); ++u) {
        for (int s = 0; s < n; ++s) {
            Mat prod = mat_mul(mats[u], gen[s], n);
            auto it = index.find(prod);
            right_[u][s] = it != index.end() ? it->second : kOutsideBall;
        }
    }

    left_.assign(canonical_.size(), std::vector<ElementId>(n, kOutsideBall));
    for (std::size_t u = 0; u < canonical_.size(); ++u) {
        for (int s = 0; s < n; ++s) {
            Mat prod = mat_mul(gen[s], mats[u], n);
            auto it = index.find(prod);
            left_[u][s] = it != index.end() ? it->second : kOutsideBall;
        }
    }

    complete_ = true;
    for (auto& row : right_)
        for (ElementId id : row) complete_ = complete_ && id != kOutsideBall;
}

ElementId GroupUniverse::product_id(const Word& w) const {
    ElementId id = 0;
    for (int s : w) {
        if (s < 0 || s >= sys_->rank()) throw Error("generator index out of range");
        id = right_[id][s];
        if (id == kOutsideBall)
            throw BallExceeded("word leaves the enumerated ball of length " +
                               std::to_string(max_length_));
    }
    return id;
}

Element GroupUniverse::normal_form(const Word& w) const { return element(product_id(w)); }

ElementId GroupUniverse::inverse(ElementId id) const {
    Word rev = canonical_[id];
    std::reverse(rev.begin(), rev.end());
    return product_id(rev);
}

bool GroupUniverse::bruhat_leq(ElementId u, ElementId w) const {
    if (u == 0) return true;
    if (u == w) return true;
    if (length_[u] >= length_[w]) return false;
    std::uint64_t key = (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(w);
    auto it = bruhat_memo_.find(key);
    if (it != bruhat_memo_.end()) return it->second;

    int s = -1;
    for (int g = 0; g < sys_->rank(); ++g)
        if (is_left_descent(w, g)) {
            s = g;
            break;
        }
    ElementId sw = left_[w][s];
    ElementId su = left_[u][s];
    bool res;
    if (su != kOutsideBall && length_[su] < length_[u])
        res = bruhat_leq(su, sw);
    else
        res = bruhat_leq(u, sw);
    bruhat_memo_[key] = res;
    return res;
}

bool GroupUniverse::bruhat_leq_subword(ElementId u, ElementId w) const {
    const Word& ww = canonical_[w];
    int n = int(ww.size());
    if (length_[u] > n) return false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (int(std::popcount(mask)) != length_[u]) continue;
        Word sub;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(ww[i]);
        if (product_id(sub) == u) return true;
    }
    return false;
}

std::vector<ElementId> GroupUniverse::bruhat_interval_below(ElementId w) const {
    std::vector<ElementId> out;
    for (ElementId id = 0; id < ElementId(canonical_.size()); ++id)
        if (length_[id] <= length_[w] && bruhat_leq(id, w)) out.push_back(id);
    return out;
}

std::vector<Word> GroupUniverse::reduced_expressions(ElementId id) const {
    std::set<Word> seen{canonical_[id]};
    std::deque<Word> queue{canonical_[id]};
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        for (const BraidMove& mv : braid_moves(*sys_, w)) {
            Word next = apply_braid_move(w, mv);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return {seen.begin(), seen.end()};
}

Word apply_braid_move(const Word& w, const BraidMove& mv) {
    Word out = w;
    for (int i = 0; i < mv.count; ++i) out[mv.pos + i] = (i % 2 == 0) ? mv.t : mv.s;
    return out;
}

std::vector<BraidMove> braid_moves(const CoxeterSystem& sys, const Word& w) {
    std::vector<BraidMove> out;
    int n = int(w.size());
    for (int p = 0; p + 1 < n; ++p) {
        int a = w[p], b = w[p + 1];
        if (a == b) continue;
        int m = sys.order(a, b);
        if (m == 0 || p + m > n) continue;
        bool ok = true;
        for (int i = 0; i < m; ++i) ok = ok && w[p + i] == ((i % 2 == 0) ? a : b);
        if (ok) out.push_back({p, a, b, m});
    }
    return out;
}

std::vector<BraidMove> braid_path(const GroupUniverse& uni, const Word& w1, const Word& w2,
                                  bool reverse_tie_break) {
    if (uni.product_id(w1) != uni.product_id(w2))
        throw NotSameElement("braid path requested between different elements");
    if (w1.size() != w2.size())
        throw NotSameElement("braid path requires reduced expressions of equal length");
    if (w1 == w2) return {};

    std::map<Word, std::pair<Word, BraidMove>> parent;
    std::deque<Word> queue{w1};
    parent[w1] = {w1, BraidMove{}};
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        auto moves = braid_moves(uni.system(), w);
        if (reverse_tie_break) std::reverse(moves.begin(), moves.end());
        for (const BraidMove& mv : moves) {
            Word next = apply_braid_move(w, mv);
            if (parent.count(next)) continue;
            parent[next] = {w, mv};
            if (next == w2) {
                std::vector<BraidMove> path;
                Word cur = next;
                while (cur != w1) {
                    auto& [prev, pmv] = parent[cur];
                    path.push_back(pmv);
                    cur = prev;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(next);
        }
    }
    throw NotSameElement("reduced expressions not connected by braid moves");
}

}  // namespace soergel
