#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "soergel/scalar.hpp"

namespace soergel {

// Exact sparse linear system A x = b over the scalar field.  Rows are keyed
// by caller-chosen 64-bit keys so that right-hand sides can be assembled
// independently of factorization.  Factorization is sparse forward
// elimination with a cheap Markowitz pivot rule; the row operations are
// recorded and replayed on each right-hand side, followed by back
// substitution over the frozen pivot rows.  Solutions returned by solve()
// satisfy the pivot subsystem exactly; callers that need a consistency
// guarantee verify the full residual themselves.
class SparseLinearSystem {
  public:
    explicit SparseLinearSystem(int num_cols) : num_cols_(num_cols) {}

    void add_entry(std::uint64_t row_key, int col, const Scalar& value);
    void factorize();

    bool factorized() const { return factorized_; }
    int num_cols() const { return num_cols_; }
    const std::vector<int>& free_columns() const { return free_cols_; }
    bool unique() const { return free_cols_.empty(); }

    // Solve for the given right-hand side (missing keys are zero).  Free
    // columns are set to zero.
    std::vector<Scalar> solve(const std::map<std::uint64_t, Scalar>& b) const;

  private:
    int num_cols_;
    bool factorized_ = false;
    std::map<std::uint64_t, std::map<int, Scalar>> pending_;  // key -> row

    std::map<std::uint64_t, int> key_index_;             // original key -> row
    std::vector<std::map<int, Scalar>> rows_;            // frozen pivot rows (U)
    std::vector<std::tuple<int, int, Scalar>> ops_;      // y[t] -= f * y[s] (L)
    std::vector<int> pivot_row_, pivot_col_;
    std::vector<Scalar> pivot_inv_;                      // 1 / diagonal entry
    std::vector<int> free_cols_;
};

// Rank of a dense matrix over the scalar field.
int dense_rank(std::vector<std::vector<Scalar>> m);

}  // namespace soergel
