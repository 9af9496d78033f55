#pragma once

#include "hhw/partition.hpp"
#include "hhw/rational.hpp"

namespace hhw {

// Irreducible character chi^lambda(mu) of S_d, by recursive border-strip
// removal. Memoized internally; the table is guarded by a mutex so parallel
// callers are safe. Throws std::invalid_argument on degree mismatch.
Int character(const Partition& lambda, const Partition& mu);

// d! / prod(hook lengths); equals character(lambda, [1,...,1]).
Int dimension(const Partition& lambda);

// Drops the memo table (mainly for tests measuring cold behaviour).
void clear_character_cache();

}  // namespace hhw
