#pragma once

#include <string>
#include <vector>

#include "hhw/rational.hpp"

namespace hhw {

// Integer partition with non-increasing positive parts. The empty partition
// is the unique partition of 0. Values are immutable after construction.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int degree() const { return d_; }
    int length() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }

    // multiplicity of part i, for i in [0, d]; index 0 unused
    std::vector<int> multiplicities() const;

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Partition& o) const { return parts_ != o.parts_; }

    // Canonical enumeration order (reverse-lexicographic): [4] < [3,1] <
    // [2,2] < [2,1,1] < [1,1,1,1]. Keeps golden files deterministic.
    bool operator<(const Partition& o) const;

    std::string to_string() const;  // "[2,1]"

private:
    std::vector<int> parts_;
    int d_ = 0;
};

// All partitions of d, each exactly once, in reverse-lexicographic order.
std::vector<Partition> partitions_of(int d);

// Centralizer order z_mu = prod_i i^{m_i} m_i!.
Int z_factor(const Partition& mu);

// d! / z_mu: the number of permutations in S_d with cycle type mu.
Int class_size(const Partition& mu);

struct HooksContents {
    std::vector<int> hooks;     // row-major over cells of the Young diagram
    std::vector<int> contents;  // content c = column - row, same order
};

HooksContents hooks_and_contents(const Partition& lambda);

}  // namespace hhw
