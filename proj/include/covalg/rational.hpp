#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covalg {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy mirrored by the CLI exit codes: InputError -> 2,
// VerificationError -> 1, UndeterminedError -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : Error {
  using Error::Error;
};
struct VerificationError : Error {
  using Error::Error;
};
struct UndeterminedError : Error {
  using Error::Error;
};
// Invariant breakage inside the library; never a statement about the input.
struct InternalError : Error {
  using Error::Error;
};

// Accepts "p", "-p", "p/q"; canonicalizes sign and gcd.
Rat parse_rat(const std::string& s);

// Inverse of parse_rat: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& q);

// Exact value of a decimal literal like "-1.25" or "3e-2".
Rat parse_decimal(const std::string& s);

std::size_t hash_int(const Int& z);
std::size_t hash_rat(const Rat& q);

inline std::size_t hash_mix(std::size_t h, std::size_t k) {
  return h ^ (k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline Int rat_num(const Rat& q) { return q.get_num(); }
inline Int rat_den(const Rat& q) { return q.get_den(); }

}  // namespace covalg
