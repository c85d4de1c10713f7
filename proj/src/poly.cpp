#include "soergel/poly.hpp"

#include <sstream>

namespace soergel {

std::string Poly::str(int rank) const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [m, c] : t_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (int v = 0; v < rank; ++v) {
            int e = mono_exp(m, v);
            if (e == 0) continue;
            out << "*x" << v;
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

static void collect_monos(int rank, int var, int remaining, Mono acc,
                          std::vector<Mono>& out) {
    if (var == rank - 1) {
        out.push_back(acc + mono_of_var(var, remaining));
        return;
    }
    for (int e = 0; e <= remaining; ++e)
        collect_monos(rank, var + 1, remaining - e, acc + mono_of_var(var, e), out);
}

std::vector<Mono> monomials_of_total_exp(int rank, int total) {
    std::vector<Mono> out;
    if (total < 0) return out;
    if (rank == 0) {
        if (total == 0) out.push_back(0);
        return out;
    }
    collect_monos(rank, 0, total, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace soergel
