#include "hhw/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hhw {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    std::sort(parts_.rbegin(), parts_.rend());
    for (int p : parts_) {
        if (p < 1) throw std::invalid_argument("Partition: parts must be positive");
    }
    d_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::multiplicities() const {
    std::vector<int> m(d_ + 1, 0);
    for (int p : parts_) ++m[p];
    return m;
}

bool Partition::operator<(const Partition& o) const {
    // reverse-lexicographic enumeration order: larger leading parts first
    return std::lexicographical_compare(parts_.begin(), parts_.end(), o.parts_.begin(),
                                        o.parts_.end(), std::greater<int>());
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ']';
    return os.str();
}

std::vector<Partition> partitions_of(int d) {
    if (d < 0) throw std::invalid_argument("partitions_of: d must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    // descending-first recursion emits reverse-lexicographic order directly
    std::function<void(int, int)> rec = [&](int rem, int max_part) {
        if (rem == 0) {
            out.emplace_back(Partition(cur));
            return;
        }
        for (int p = std::min(rem, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

Int z_factor(const Partition& mu) {
    Int z = 1;
    auto m = mu.multiplicities();
    for (int i = 1; i < static_cast<int>(m.size()); ++i) {
        if (m[i] == 0) continue;
        z *= int_pow(Int(i), m[i]);
        z *= factorial(m[i]);
    }
    return z;
}

Int class_size(const Partition& mu) { return factorial(mu.degree()) / z_factor(mu); }

HooksContents hooks_and_contents(const Partition& lambda) {
    const auto& rows = lambda.parts();
    int nrows = lambda.length();
    // column lengths (conjugate partition)
    std::vector<int> col(nrows == 0 ? 0 : rows[0], 0);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < rows[i]; ++j) ++col[j];
    HooksContents hc;
    for (int i = 0; i < nrows; ++i) {
        for (int j = 0; j < rows[i]; ++j) {
            hc.hooks.push_back(rows[i] - j + col[j] - i - 1);
            hc.contents.push_back(j - i);
        }
    }
    return hc;
}

}  // namespace hhw
