// Optional long-running reproduction of the rank-5 catalogued polynomials.
// Wired as `ctest -C extended`.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "nilorbit/counter.hpp"
#include "nilorbit/tables.hpp"

using namespace nilorbit;

TEST_CASE("rank-5 class numbers match the catalogue") {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 5}, {'B', 5}, {'C', 5}, {'D', 5}}) {
    RootDatum d = build_root_system(t, r);
    BracketTable tb = build_bracket_table(d);
    Parametrization p = parametrize(tb);
    CountReport rep = assemble_k(p, d, CountStrategy::SymbolicFirst);
    REQUIRE(rep.total.has_value());
    auto want = tables::class_number(t, r);
    REQUIRE(want.has_value());
    CHECK(*rep.total == *want);
    std::printf("%c%d: %s (%zu cells)\n", t, r, rep.total->str().c_str(), p.cells.size());
    // excluded primes stay inside the bad primes here too
    for (auto& prime : p.excluded_primes)
      CHECK(d.bad_primes.count(static_cast<int>(prime)) > 0);
  }
}
