#include "ghostvac/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gv {

namespace {

// Reduced row echelon basis: pivot column -> row (normalized, pivot = 1,
// and fully reduced against every other stored pivot).
class Rref {
  public:
    // Reduces `row` against the basis in place; returns true if nonzero.
    bool reduce(SparseRow& row) const {
        // Repeatedly cancel the lowest reducible entry.
        for (auto it = row.begin(); it != row.end();) {
            auto hit = pivots_.find(it->first);
            if (hit == pivots_.end()) {
                ++it;
                continue;
            }
            const Rat factor = it->second;
            it = row.erase(it);
            for (const auto& [c, v] : hit->second) {
                if (c == hit->first) continue;
                auto [jt, fresh] = row.try_emplace(c, 0);
                jt->second -= factor * v;
                if (jt->second == 0) row.erase(jt);
            }
            it = row.lower_bound(hit->first);
        }
        return !row.empty();
    }

    void insert(SparseRow row) {
        const std::int64_t p = row.begin()->first;
        const Rat inv = Rat(1) / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        // Back-substitute into existing rows to keep the basis fully reduced.
        for (auto& [pc, r] : pivots_) {
            auto it = r.find(p);
            if (it == r.end()) continue;
            const Rat factor = it->second;
            r.erase(it);
            for (const auto& [c, v] : row) {
                if (c == p) continue;
                auto [jt, fresh] = r.try_emplace(c, 0);
                jt->second -= factor * v;
                if (jt->second == 0) r.erase(jt);
            }
        }
        pivots_.emplace(p, std::move(row));
    }

    const std::map<std::int64_t, SparseRow>& pivots() const { return pivots_; }

  private:
    std::map<std::int64_t, SparseRow> pivots_;
};

}  // namespace

std::vector<std::vector<Rat>> sparse_kernel(const std::vector<SparseRow>& rows, std::int64_t num_cols) {
    Rref rref;
    for (const auto& r : rows) {
        SparseRow copy = r;
        if (rref.reduce(copy)) rref.insert(std::move(copy));
    }
    std::vector<std::vector<Rat>> kernel;
    const auto& pivots = rref.pivots();
    for (std::int64_t free_col = 0; free_col < num_cols; ++free_col) {
        if (pivots.count(free_col)) continue;
        std::vector<Rat> vec(num_cols, Rat(0));
        vec[free_col] = 1;
        for (const auto& [p, row] : pivots) {
            auto it = row.find(free_col);
            if (it != row.end()) vec[p] = -it->second;
        }
        kernel.push_back(std::move(vec));
    }
    return kernel;
}

LinearSolveResult sparse_solve(const std::vector<SparseRow>& rows, const std::vector<Rat>& rhs,
                               std::int64_t num_cols) {
    if (rows.size() != rhs.size()) throw std::invalid_argument("sparse_solve: shape mismatch");
    // Augment with the rhs as column num_cols and reduce.
    Rref rref;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseRow copy = rows[i];
        if (rhs[i] != 0) copy[num_cols] = rhs[i];
        if (rref.reduce(copy)) rref.insert(std::move(copy));
    }
    LinearSolveResult out;
    if (rref.pivots().count(num_cols)) return out;  // 0 = 1 row: inconsistent
    out.consistent = true;
    out.solution.assign(num_cols, Rat(0));
    for (const auto& [p, row] : rref.pivots()) {
        auto it = row.find(num_cols);
        out.solution[p] = (it == row.end()) ? Rat(0) : it->second;
    }
    return out;
}

}  // namespace gv
