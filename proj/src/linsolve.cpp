#include "soergel/linsolve.hpp"

#include <algorithm>

namespace soergel {

void SparseLinearSystem::add_entry(std::uint64_t row_key, int col, const Scalar& value) {
    if (value.is_zero()) return;
    auto& cols = pending_[row_key];
    auto it = cols.find(col);
    if (it == cols.end()) {
        cols.emplace(col, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) cols.erase(it);
    }
}

void SparseLinearSystem::factorize() {
    for (auto& [key, cols] : pending_) {
        if (cols.empty()) continue;
        key_index_.emplace(key, int(rows_.size()));
        rows_.push_back(std::move(cols));
    }
    pending_.clear();
    const int nrows = int(rows_.size());

    std::vector<char> active(nrows, 1);
    std::vector<int> colcnt(num_cols_, 0);
    for (const auto& r : rows_)
        for (auto& [c, v] : r) ++colcnt[c];

    while (true) {
        // Sparsest active row; within it pivot on the column that appears in
        // the fewest rows (cheap Markowitz, bounds fill-in).
        int bi = -1;
        for (int r = 0; r < nrows; ++r)
            if (active[r] && !rows_[r].empty() &&
                (bi < 0 || rows_[r].size() < rows_[bi].size()))
                bi = r;
        if (bi < 0) break;

        int pcol = rows_[bi].begin()->first;
        for (auto& [c, v] : rows_[bi])
            if (colcnt[c] < colcnt[pcol]) pcol = c;

        const std::map<int, Scalar>& piv = rows_[bi];
        Scalar pinv = piv.at(pcol).inverse();
        for (int r = 0; r < nrows; ++r) {
            if (!active[r] || r == bi) continue;
            auto hit = rows_[r].find(pcol);
            if (hit == rows_[r].end()) continue;
            Scalar f = hit->second * pinv;
            rows_[r].erase(hit);
            --colcnt[pcol];
            for (auto& [c, v] : piv) {
                if (c == pcol) continue;
                auto it2 = rows_[r].find(c);
                if (it2 == rows_[r].end()) {
                    rows_[r].emplace(c, -(f * v));
                    ++colcnt[c];
                } else {
                    it2->second -= f * v;
                    if (it2->second.is_zero()) {
                        rows_[r].erase(it2);
                        --colcnt[c];
                    }
                }
            }
            ops_.emplace_back(r, bi, std::move(f));
        }

        active[bi] = 0;
        for (auto& [c, v] : piv) --colcnt[c];
        pivot_row_.push_back(bi);
        pivot_col_.push_back(pcol);
        pivot_inv_.push_back(std::move(pinv));
    }

    std::vector<char> pivoted(num_cols_, 0);
    for (int c : pivot_col_) pivoted[c] = 1;
    for (int c = 0; c < num_cols_; ++c)
        if (!pivoted[c]) free_cols_.push_back(c);
    factorized_ = true;
}

std::vector<Scalar> SparseLinearSystem::solve(
    const std::map<std::uint64_t, Scalar>& b) const {
    std::vector<Scalar> y(rows_.size(), Scalar(0));
    for (auto& [key, value] : b) {
        auto it = key_index_.find(key);
        if (it != key_index_.end()) y[it->second] = value;
    }
    for (auto& [t, s, f] : ops_)
        if (!y[s].is_zero()) y[t] -= f * y[s];

    // A pivot row frozen at step i only involves its own pivot column,
    // columns pivoted at later steps, and free columns (set to zero), so a
    // single reverse pass solves the triangular subsystem.
    std::vector<Scalar> x(num_cols_, Scalar(0));
    for (int i = int(pivot_row_.size()) - 1; i >= 0; --i) {
        Scalar acc = y[pivot_row_[i]];
        for (auto& [c, v] : rows_[pivot_row_[i]]) {
            if (c == pivot_col_[i]) continue;
            if (!x[c].is_zero()) acc -= v * x[c];
        }
        x[pivot_col_[i]] = acc * pivot_inv_[i];
    }
    return x;
}

int dense_rank(std::vector<std::vector<Scalar>> m) {
    if (m.empty()) return 0;
    int rows = int(m.size()), cols = int(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        Scalar inv = m[rank][c].inverse();
        for (int cc = c; cc < cols; ++cc) m[rank][cc] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            Scalar f = m[r][c];
            for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace soergel
