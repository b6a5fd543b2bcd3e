#include "ghostvac/maya.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gv {

namespace {

void check_strictly_increasing_negative(const std::vector<HalfInt>& v, const char* name) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].negative()) throw std::invalid_argument(std::string("MayaDiagram: ") + name + " must be negative");
        if (i > 0 && !(v[i - 1] < v[i]))
            throw std::invalid_argument(std::string("MayaDiagram: ") + name + " must be strictly increasing");
    }
}

}  // namespace

MayaDiagram::MayaDiagram(std::vector<HalfInt> mus, std::vector<HalfInt> nus)
    : mus_(std::move(mus)), nus_(std::move(nus)) {
    check_strictly_increasing_negative(mus_, "mus");
    check_strictly_increasing_negative(nus_, "nus");
}

MayaDiagram MayaDiagram::charged_vacuum(std::int64_t p) {
    std::vector<HalfInt> mus, nus;
    if (p > 0) {
        // |p> = psibar_{-p+1/2} ... psibar_{-1/2} |0>, mus = (-p+1/2 < ... < -1/2)
        for (std::int64_t k = p; k >= 1; --k) mus.push_back(HalfInt(-2 * k + 1));
    } else if (p < 0) {
        for (std::int64_t k = -p; k >= 1; --k) nus.push_back(HalfInt(-2 * k + 1));
    }
    return MayaDiagram(std::move(mus), std::move(nus));
}

std::int64_t MayaDiagram::charge() const {
    return static_cast<std::int64_t>(mus_.size()) - static_cast<std::int64_t>(nus_.size());
}

std::int64_t MayaDiagram::degree() const {
    // d = -sum(mu) - sum(nu) - p^2/2, computed in twice-units.
    std::int64_t twice_sum = 0;
    for (const auto& m : mus_) twice_sum -= m.twice;
    for (const auto& n : nus_) twice_sum -= n.twice;
    const std::int64_t p = charge();
    twice_sum -= p * p;
    if (twice_sum % 2 != 0 || twice_sum < 0) throw std::logic_error("MayaDiagram: malformed degree");
    return twice_sum / 2;
}

bool MayaDiagram::is_charged_vacuum() const { return *this == charged_vacuum(charge()); }

bool MayaDiagram::occupies(HalfInt s) const {
    if (s.positive()) return std::binary_search(mus_.begin(), mus_.end(), -s);
    return !std::binary_search(nus_.begin(), nus_.end(), s);
}

std::vector<std::pair<HalfInt, HalfInt>> MayaDiagram::characteristic_moves() const {
    // mu maps the slots p-1/2 > p-3/2 > ... onto S(M) in decreasing order.
    // Walk both from the top until they agree with the identity tail.
    const std::int64_t p = charge();
    std::vector<std::pair<HalfInt, HalfInt>> moves;
    HalfInt slot = HalfInt(2 * p - 1);
    // Collect S(M) entries above the deepest deviation.
    std::int64_t low = 0;  // twice-value below which S(M) is all negatives
    for (const auto& m : mus_) low = std::min(low, m.twice);
    for (const auto& n : nus_) low = std::min(low, n.twice);
    low -= 2;
    std::vector<HalfInt> top;  // S(M) down to low, decreasing
    for (const auto& m : mus_) top.push_back(-m);
    std::sort(top.begin(), top.end(), std::greater<HalfInt>());
    for (std::int64_t t = -1; t >= low; t -= 2) {
        HalfInt s(t);
        if (!std::binary_search(nus_.begin(), nus_.end(), s)) top.push_back(s);
    }
    for (const auto& s : top) {
        if (s != slot) moves.emplace_back(slot, s);
        slot = slot - 1;
    }
    return moves;
}

MayaDiagram MayaDiagram::from_characteristic_moves(std::int64_t charge,
                                                   const std::vector<std::pair<HalfInt, HalfInt>>& moves) {
    std::map<HalfInt, HalfInt> mu;  // slot -> value
    for (const auto& [from, to] : moves) {
        if (from.twice >= 2 * charge) throw std::invalid_argument("characteristic move: slot must be < charge");
        if (!mu.emplace(from, to).second) throw std::invalid_argument("characteristic move: duplicate slot");
    }
    // S(M) = identity below the moves, mu-values at the moved slots.
    std::set<HalfInt> occupied;
    std::int64_t low = -1;
    for (const auto& [from, to] : moves) low = std::min({low, from.twice, to.twice});
    for (std::int64_t t = 2 * charge - 1; t >= low - 2; t -= 2) {
        HalfInt slot(t);
        auto it = mu.find(slot);
        HalfInt value = (it != mu.end()) ? it->second : slot;
        if (!occupied.insert(value).second) throw std::invalid_argument("characteristic function not injective");
    }
    std::vector<HalfInt> mus, nus;
    for (const auto& s : occupied)
        if (s.positive()) mus.push_back(-s);
    std::sort(mus.begin(), mus.end());
    for (std::int64_t t = -1; t >= low - 2; t -= 2) {
        HalfInt s(t);
        if (!occupied.count(s)) nus.push_back(s);
    }
    std::sort(nus.begin(), nus.end());
    MayaDiagram result(std::move(mus), std::move(nus));
    if (result.charge() != charge) throw std::invalid_argument("characteristic moves violate the stated charge");
    return result;
}

int MayaDiagram::word_sign() const {
    // (-1)^{sum nu_i + s/2}; the exponent (sum 2nu_i + s)/2 is an integer.
    std::int64_t twice_exp = static_cast<std::int64_t>(nus_.size());
    for (const auto& n : nus_) twice_exp += n.twice;
    if (twice_exp % 2 != 0) throw std::logic_error("word_sign: exponent not an integer");
    return (twice_exp / 2) % 2 == 0 ? 1 : -1;
}

MayaDiagram MayaDiagram::reflect() const { return MayaDiagram(nus_, mus_); }

MayaDiagram MayaDiagram::shift(std::int64_t amount) const {
    if (amount == 0) return *this;
    // S(M) -> S(M) + amount. Particles/holes near zero migrate across. Work
    // with the deviation window directly.
    std::int64_t low = -1;
    for (const auto& m : mus_) low = std::min(low, m.twice);
    for (const auto& n : nus_) low = std::min(low, n.twice);
    low -= 2 * (std::abs(amount) + 1);
    std::set<HalfInt> occupied_high;  // shifted S entries with twice >= low
    for (const auto& m : mus_) occupied_high.insert(HalfInt((-m).twice + 2 * amount));
    for (std::int64_t t = -1; t >= low; t -= 2) {
        HalfInt s(t);
        if (!std::binary_search(nus_.begin(), nus_.end(), s)) occupied_high.insert(HalfInt(t + 2 * amount));
    }
    std::vector<HalfInt> mus, nus;
    for (const auto& s : occupied_high)
        if (s.positive()) mus.push_back(-s);
    std::sort(mus.begin(), mus.end());
    for (std::int64_t t = -1; t >= low + 2 * amount; t -= 2) {
        HalfInt s(t);
        if (!occupied_high.count(s)) nus.push_back(s);
    }
    std::sort(nus.begin(), nus.end());
    return MayaDiagram(std::move(mus), std::move(nus));
}

namespace {

// Strictly decreasing sequences of positive half-integers with a given sum
// (in twice-units), used for both particle and hole sides.
void strict_sequences(std::int64_t twice_sum, std::int64_t count, std::int64_t min_twice,
                      std::vector<std::int64_t>& current, std::vector<std::vector<std::int64_t>>& out) {
    if (count == 0) {
        if (twice_sum == 0) out.push_back(current);
        return;
    }
    // Remaining entries are distinct odd values >= min_twice; minimal possible sum:
    std::int64_t min_sum = count * min_twice + count * (count - 1);  // min, min+2, ...
    if (twice_sum < min_sum) return;
    for (std::int64_t t = min_twice; count * t + count * (count - 1) <= twice_sum; t += 2) {
        current.push_back(t);
        strict_sequences(twice_sum - t, count - 1, t + 2, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<MayaDiagram> enumerate_basis(std::int64_t charge, std::int64_t degree) {
    if (degree < 0) throw std::invalid_argument("enumerate_basis: degree must be >= 0");
    std::vector<MayaDiagram> out;
    // d = sum(-mu) + sum(-nu) - p^2/2 with r-s = p; in twice-units:
    // 2d + p^2 = sum(2*(-mu)) + sum(2*(-nu)).
    const std::int64_t total = 2 * degree + charge * charge;
    for (std::int64_t r = std::max<std::int64_t>(charge, 0);; ++r) {
        const std::int64_t s = r - charge;
        // Minimal twice-sum of r distinct positive odds is r^2; likewise s^2.
        if (r * r + s * s > total) break;
        for (std::int64_t mu_sum = r * r; mu_sum <= total - s * s; mu_sum += 2) {
            std::vector<std::vector<std::int64_t>> mu_seqs, nu_seqs;
            std::vector<std::int64_t> cur;
            strict_sequences(mu_sum, r, 1, cur, mu_seqs);
            if (mu_seqs.empty()) continue;
            strict_sequences(total - mu_sum, s, 1, cur, nu_seqs);
            if (nu_seqs.empty()) continue;
            for (const auto& ms : mu_seqs)
                for (const auto& ns : nu_seqs) {
                    std::vector<HalfInt> mus, nus;
                    for (auto it = ms.rbegin(); it != ms.rend(); ++it) mus.push_back(HalfInt(-*it));
                    for (auto it = ns.rbegin(); it != ns.rend(); ++it) nus.push_back(HalfInt(-*it));
                    out.emplace_back(std::move(mus), std::move(nus));
                }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t partition_count(std::int64_t d) {
    if (d < 0) return 0;
    std::vector<std::int64_t> p(d + 1, 0);
    p[0] = 1;
    for (std::int64_t k = 1; k <= d; ++k)
        for (std::int64_t n = k; n <= d; ++n) p[n] += p[n - k];
    return p[d];
}

}  // namespace gv
