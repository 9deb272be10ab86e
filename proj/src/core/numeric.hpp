#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spherica {

using Int = mpz_class;
using Rat = mpq_class;

using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;
using MatZ = std::vector<VecZ>;
using MatQ = std::vector<VecQ>;

// Library-level error. `kind` distinguishes bad input from mathematical
// impossibility so the C API can map it to an exit code.
struct Error : std::runtime_error {
  enum class Kind { input, math };
  Kind kind;
  explicit Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Error input_error(const std::string& msg) { return Error(Error::Kind::input, msg); }
inline Error math_error(const std::string& msg) { return Error(Error::Kind::math, msg); }

inline Rat to_rat(const Int& z) { return Rat(z); }

// q = p^k for some k >= 0?  p = 1 admits only q = 1.
inline bool is_p_power(const Int& q, const Int& p) {
  if (q <= 0) return false;
  if (q == 1) return true;
  if (p == 1) return false;
  Int r = q;
  while (r % p == 0) r /= p;
  return r == 1;
}

// Largest p-power dividing n (n > 0).  For p = 1 returns 1.
inline Int p_part(Int n, const Int& p) {
  if (n < 0) n = -n;
  if (n == 0 || p == 1) return Int(1);
  Int q(1);
  while (n % p == 0) { n /= p; q *= p; }
  return q;
}

// Is the reduced rational r in Z[1/p]?  (denominator a p-power)
inline bool in_z_localized(const Rat& r, const Int& p) {
  Rat c = r;
  c.canonicalize();
  return is_p_power(Int(c.get_den()), p);
}

inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw input_error("not an exact rational: '" + s + "'");
  if (Int(r.get_den()) == 0) throw input_error("zero denominator in rational '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace spherica
