#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covalg/ratmap.hpp"

namespace covalg {

struct CorpusEntry {
  std::string name;
  RationalMap map;
};

// The shipped reference maps: z^n for n = 2..6, the dihedral family
// (z^{2n}+1)/(2 z^n) for n = 2..5, and the polynomials z^3 - 3z, z^4 - 2z^2,
// z^4 + z^3, z^4 - 4z. All coefficients are plain rationals.
const std::vector<CorpusEntry>& corpus();

// Property suites over the corpus; one deterministic line per suite, then a
// closing verdict line. quick trims the suites to a fast subset. Returns
// true when every suite passed.
bool corpus_check(bool quick, std::ostream& os);

}  // namespace covalg
