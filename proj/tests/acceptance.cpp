// Acceptance suite: runs every criterion of the self-test battery and prints
// one pass/fail line per criterion.  ORBITLAB_SEED overrides the corpus seed.

#include <cstdlib>
#include <iostream>

#include "orbitlab/selftest.hpp"

int main() {
    std::uint64_t seed = 0;
    if (const char* env = std::getenv("ORBITLAB_SEED"))
        seed = std::strtoull(env, nullptr, 10);

    auto results = orbitlab::run_acceptance(seed, &std::cout);
    bool all = true;
    for (const auto& r : results) all &= r.pass;
    std::cout << (all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all ? 0 : 1;
}
