#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "hhw/character.hpp"
#include "hhw/partition.hpp"

using namespace hhw;

TEST_CASE("trivial and sign representations") {
    for (int d = 1; d <= 6; ++d) {
        Partition triv({d});
        for (const auto& mu : partitions_of(d)) CHECK(character(triv, mu) == 1);
    }
    // sign rep on a transposition class of S_3
    CHECK(character(Partition({1, 1, 1}), Partition({2, 1})) == -1);
}

TEST_CASE("degree mismatch throws") {
    CHECK_THROWS_WITH(character(Partition({2}), Partition({2, 1})),
                      "profile degree mismatch");
}

TEST_CASE("dimension examples") {
    CHECK(dimension(Partition({2, 1})) == 2);
    CHECK(dimension(Partition({2, 2})) == 2);  // hooks {3,2,2,1}, 4!/12
    for (int d = 1; d <= 6; ++d) CHECK(dimension(Partition({d})) == 1);
    CHECK(character(Partition({2, 1}), Partition({1, 1, 1})) == 2);
}

TEST_CASE("character at identity equals dimension, d <= 8") {
    for (int d = 0; d <= 8; ++d) {
        Partition id(std::vector<int>(d, 1));
        for (const auto& lambda : partitions_of(d))
            CHECK(character(lambda, id) == dimension(lambda));
    }
}

TEST_CASE("sum of squared dimensions is d!, d <= 8") {
    for (int d = 0; d <= 8; ++d) {
        Int total = 0;
        for (const auto& lambda : partitions_of(d)) {
            Int dim = dimension(lambda);
            total += dim * dim;
        }
        CHECK(total == factorial(d));
    }
}

TEST_CASE("column orthogonality, d <= 6") {
    for (int d = 1; d <= 6; ++d) {
        auto ps = partitions_of(d);
        for (const auto& mu : ps) {
            for (const auto& nu : ps) {
                Int s = 0;
                for (const auto& lambda : ps) s += character(lambda, mu) * character(lambda, nu);
                CHECK(s == (mu == nu ? z_factor(mu) : Int(0)));
            }
        }
    }
}

TEST_CASE("memo table is safe under parallel evaluation") {
    clear_character_cache();
    auto ps = partitions_of(7);
    std::vector<Int> a(ps.size()), b(ps.size());
    auto worker = [&](std::vector<Int>& out) {
        for (size_t i = 0; i < ps.size(); ++i)
            out[i] = character(ps[i], Partition({3, 2, 1, 1}));
    };
    std::thread t1(worker, std::ref(a)), t2(worker, std::ref(b));
    t1.join();
    t2.join();
    CHECK(a == b);
}
