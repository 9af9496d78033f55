#include "hhw/character.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hhw {

namespace {

std::mutex g_memo_mutex;
std::map<std::pair<std::vector<int>, std::vector<int>>, Int> g_memo;

// Beta-set of lambda: strictly decreasing first-column hook lengths
// b_i = lambda_i + (k-1-i). Border strips of length L correspond to moves
// b -> b-L landing outside the set; the sign is (-1)^{#betas jumped over}.
std::vector<int> beta_set(const std::vector<int>& parts) {
    int k = static_cast<int>(parts.size());
    std::vector<int> b(k);
    for (int i = 0; i < k; ++i) b[i] = parts[i] + (k - 1 - i);
    return b;  // strictly decreasing
}

std::vector<int> parts_from_beta(std::vector<int> b) {
    std::sort(b.rbegin(), b.rend());
    int k = static_cast<int>(b.size());
    std::vector<int> parts;
    for (int i = 0; i < k; ++i) {
        int p = b[i] - (k - 1 - i);
        if (p > 0) parts.push_back(p);
    }
    return parts;
}

// mu consumed front-to-back (non-increasing order fixes the memo key).
Int chi_rec(const std::vector<int>& lparts, const std::vector<int>& mu, size_t mi) {
    if (mi == mu.size()) return 1;  // empty diagram, empty class
    auto key = std::make_pair(lparts, std::vector<int>(mu.begin() + mi, mu.end()));
    {
        std::lock_guard<std::mutex> lk(g_memo_mutex);
        auto it = g_memo.find(key);
        if (it != g_memo.end()) return it->second;
    }
    int L = mu[mi];
    std::vector<int> betas = beta_set(lparts);
    Int acc = 0;
    for (size_t i = 0; i < betas.size(); ++i) {
        int b = betas[i];
        if (b < L) continue;
        int t = b - L;
        if (std::find(betas.begin(), betas.end(), t) != betas.end()) continue;
        int height = 0;
        for (int v : betas)
            if (v > t && v < b) ++height;
        std::vector<int> nb = betas;
        nb[i] = t;
        Int term = chi_rec(parts_from_beta(std::move(nb)), mu, mi + 1);
        if (height & 1) acc -= term;
        else acc += term;
    }
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    g_memo.emplace(std::move(key), acc);
    return acc;
}

}  // namespace

Int character(const Partition& lambda, const Partition& mu) {
    if (lambda.degree() != mu.degree())
        throw std::invalid_argument("profile degree mismatch");
    return chi_rec(lambda.parts(), mu.parts(), 0);
}

Int dimension(const Partition& lambda) {
    auto hc = hooks_and_contents(lambda);
    Int prod = 1;
    for (int h : hc.hooks) prod *= h;
    return factorial(lambda.degree()) / prod;
}

void clear_character_cache() {
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    g_memo.clear();
}

}  // namespace hhw
