#include "covalg/field.hpp"

#include <cctype>
#include <sstream>

#include "covalg/factor_q.hpp"
#include "covalg/roots.hpp"

namespace covalg {

// ---------------------------------------------------------------------------
// Rational string and hash helpers (declared in rational.hpp)

Rat parse_rat(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty number");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    return parse_decimal(s);
  const size_t slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!check_int(num) || !check_int(den)) throw InputError("bad rational: " + s0);
  // mpz_set_str rejects a leading '+' that check_int allows.
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw InputError("zero denominator: " + s0);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

Rat parse_decimal(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty number");
  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  long exponent = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      std::string e = s.substr(i + 1);
      if (e.empty()) throw InputError("bad number: " + s0);
      size_t j = (e[0] == '+' || e[0] == '-') ? 1 : 0;
      if (j == e.size()) throw InputError("bad number: " + s0);
      for (size_t k = j; k < e.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(e[k]))) throw InputError("bad number: " + s0);
      exponent = std::stol(e);
      i = s.size() - 1;
    } else {
      throw InputError("bad number: " + s0);
    }
  }
  if (!seen_digit) throw InputError("bad number: " + s0);
  Int n(digits.empty() ? "0" : digits);
  if (neg) n = -n;
  long e10 = exponent - frac_digits;
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
  Rat q = (e10 >= 0) ? Rat(n * p10) : Rat(n, p10);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::size_t hash_int(const Int& n) {
  std::size_t h = 1469598103934665603ULL;
  const mpz_srcptr z = n.get_mpz_t();
  h = hash_mix(h, static_cast<std::size_t>(mpz_sgn(z) + 2));
  const size_t limbs = mpz_size(z);
  for (size_t i = 0; i < limbs; ++i)
    h = hash_mix(h, static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
  return h;
}

std::size_t hash_rat(const Rat& q) {
  return hash_mix(hash_int(Int(q.get_num())), hash_int(Int(q.get_den())));
}

// ---------------------------------------------------------------------------
// FieldSpec

namespace {

struct FieldSpecAccess : FieldSpec {
  FieldSpecAccess(FieldKind k, Poly<Rat> mp, ComplexBall iso)
      : FieldSpec(k, std::move(mp), std::move(iso)) {}
};

FieldPtr make_spec(FieldKind kind, Poly<Rat> mp, ComplexBall iso) {
  return std::make_shared<const FieldSpecAccess>(kind, std::move(mp), std::move(iso));
}

}  // namespace

const FieldPtr& FieldSpec::rationals() {
  static const FieldPtr f =
      make_spec(FieldKind::Rationals, Poly<Rat>{}, ComplexBall::from_long(0, 64));
  return f;
}

const FieldPtr& FieldSpec::gaussian() {
  static const FieldPtr f = [] {
    Poly<Rat> mp(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});  // t^2 + 1
    ComplexBall iso = ComplexBall::from_rat(Rat(0), Rat(1), 96);
    iso.set_rad(Rat(1, 2));  // isolates i from -i
    return make_spec(FieldKind::GaussianRationals, std::move(mp), std::move(iso));
  }();
  return f;
}

FieldPtr FieldSpec::simple_extension(Poly<Rat> min_poly, const ComplexBall& hint,
                                     mpfr_prec_t prec_cap) {
  if (min_poly.degree() < 1) throw InputError("extension: constant polynomial");
  min_poly = make_monic(min_poly);
  if (min_poly.degree() == 1) return rationals();
  if (!irreducible_over_q(min_poly)) throw InputError("extension: reducible polynomial");

  const int deg = min_poly.degree();
  auto provider = rat_poly_provider(min_poly);
  RootIsolation iso = isolate_roots(provider, deg, -40, 128, prec_cap);
  std::vector<size_t> overlap;
  for (size_t i = 0; i < iso.roots.size(); ++i)
    if (!hint.disjoint(iso.roots[i])) overlap.push_back(i);
  long e = -80;
  for (int round = 0; overlap.size() > 1 && round < 16; ++round) {
    std::vector<size_t> keep;
    for (size_t i : overlap) {
      iso.roots[i] = refine_root(provider, deg, iso.roots[i], e, 128, 8192);
      if (!hint.disjoint(iso.roots[i])) keep.push_back(i);
    }
    overlap = std::move(keep);
    e *= 2;
  }
  if (overlap.size() != 1)
    throw InputError("extension: the hint ball does not isolate one root");
  ComplexBall root = iso.roots[overlap[0]];

  // Recognize Q(i) so ad-hoc t^2+1 towers unify with the built-in field.
  if (min_poly.coeffs == std::vector<Rat>{Rat(1), Rat(0), Rat(1)}) {
    if (gaussian()->isolating_ball().contains_ball(root)) return gaussian();
  }
  return make_spec(FieldKind::SimpleExtension, std::move(min_poly), std::move(root));
}

ComplexBall FieldSpec::generator_ball(mpfr_prec_t prec) const {
  if (kind_ == FieldKind::Rationals)
    throw InternalError("generator_ball on the rational field");
  if (kind_ == FieldKind::GaussianRationals) return ComplexBall::from_rat(Rat(0), Rat(1), prec);
  std::lock_guard<std::mutex> lock(mu_);
  if (cache_ && cache_->prec() >= prec && ball_rad_below_2exp(*cache_, -static_cast<long>(prec)))
    return *cache_;
  auto provider = rat_poly_provider(min_poly_);
  ComplexBall refined = refine_root(provider, min_poly_.degree(), cache_ ? *cache_ : isolate_,
                                    -static_cast<long>(prec) - 8, prec + 32, 4 * prec + 256);
  cache_ = refined;
  return refined;
}

bool FieldSpec::same_field(const FieldSpec& o) const {
  if (this == &o) return true;
  const bool rat_a = kind_ == FieldKind::Rationals;
  const bool rat_b = o.kind_ == FieldKind::Rationals;
  if (rat_a || rat_b) return rat_a && rat_b;
  if (min_poly_ != o.min_poly_) return false;
  // Same minimal polynomial; decide whether the chosen roots agree. The
  // construction-time ball holds exactly one root, so refine the other
  // side's root until it nests inside ours or separates from ours.
  auto provider = rat_poly_provider(min_poly_);
  ComplexBall probe = o.isolate_;
  long e = -64;
  for (int round = 0; round < 24; ++round) {
    if (isolate_.contains_ball(probe)) return true;
    if (isolate_.disjoint(probe)) return false;
    probe = refine_root(provider, min_poly_.degree(), probe, e, probe.prec(), 16384);
    e *= 2;
  }
  throw UndeterminedError("field identity: root comparison did not converge");
}

std::string FieldSpec::describe() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::GaussianRationals:
      return "Q(i)";
    default:
      break;
  }
  std::ostringstream os;
  os << "Q[t]/(";
  bool first = true;
  for (int i = min_poly_.degree(); i >= 0; --i) {
    Rat c = min_poly_.coeff(i);
    if (c == 0) continue;
    if (!first && c > 0) os << "+";
    if (i == 0) {
      os << rat_str(c);
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << rat_str(c) << "*";
      os << (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    first = false;
  }
  os << ") near " << isolate_.str(8);
  return os.str();
}

// ---------------------------------------------------------------------------
// ExactScalar

ExactScalar::ExactScalar(FieldPtr spec, std::vector<Rat> coords)
    : spec_(std::move(spec)), co_(std::move(coords)) {
  for (Rat& c : co_) c.canonicalize();
  if (!spec_ || spec_->kind() == FieldKind::Rationals) {
    spec_.reset();
    if (co_.empty()) co_.assign(1, Rat(0));
    if (co_.size() != 1) throw InputError("rational scalar with extra coordinates");
    return;
  }
  const size_t n = static_cast<size_t>(spec_->degree());
  if (co_.size() > n) throw InputError("scalar coordinates exceed field degree");
  co_.resize(n, Rat(0));
}

ExactScalar ExactScalar::gaussian(Rat re, Rat im) {
  return ExactScalar(FieldSpec::gaussian(), {std::move(re), std::move(im)});
}

bool ExactScalar::is_zero() const {
  for (const Rat& c : co_)
    if (c != 0) return false;
  return true;
}

bool ExactScalar::is_rational() const {
  for (size_t i = 1; i < co_.size(); ++i)
    if (co_[i] != 0) return false;
  return true;
}

Rat ExactScalar::rational_value() const {
  if (!is_rational()) throw InternalError("rational_value on a non-rational scalar");
  return co_[0];
}

ExactScalar ExactScalar::promoted_to(const FieldPtr& spec) const {
  if (!spec || spec->kind() == FieldKind::Rationals) {
    if (!spec_) return *this;
    if (!is_rational()) throw InputError("cannot demote scalar to Q");
    return ExactScalar(co_[0]);
  }
  if (spec_) {
    if (spec_->same_field(*spec)) {
      ExactScalar r = *this;
      r.spec_ = spec;
      return r;
    }
    if (!is_rational()) throw InputError("scalar belongs to a different field");
  }
  std::vector<Rat> co(static_cast<size_t>(spec->degree()), Rat(0));
  co[0] = co_[0];
  return ExactScalar(spec, std::move(co));
}

void align_fields(ExactScalar& a, ExactScalar& b) {
  if (!a.spec() && !b.spec()) return;
  if (!a.spec()) {
    a = a.promoted_to(b.spec());
    return;
  }
  if (!b.spec()) {
    b = b.promoted_to(a.spec());
    return;
  }
  if (a.spec().get() == b.spec().get()) return;
  if (!a.spec()->same_field(*b.spec())) throw InputError("scalars from different fields");
  b = b.promoted_to(a.spec());
}

FieldPtr common_field(const std::vector<ExactScalar>& xs) {
  FieldPtr f;
  for (const ExactScalar& x : xs) {
    if (!x.spec()) continue;
    if (!f) {
      f = x.spec();
    } else if (f.get() != x.spec().get() && !f->same_field(*x.spec())) {
      throw InputError("scalars from different fields");
    }
  }
  return f;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar x = a, y = b;
  align_fields(x, y);
  for (size_t i = 0; i < x.co_.size(); ++i) {
    x.co_[i] += y.co_[i];
    x.co_[i].canonicalize();
  }
  return x;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar x = a, y = b;
  align_fields(x, y);
  for (size_t i = 0; i < x.co_.size(); ++i) {
    x.co_[i] -= y.co_[i];
    x.co_[i].canonicalize();
  }
  return x;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar x = a, y = b;
  align_fields(x, y);
  if (!x.spec_) {
    x.co_[0] *= y.co_[0];
    x.co_[0].canonicalize();
    return x;
  }
  Poly<Rat> prod = Poly<Rat>(x.co_) * Poly<Rat>(y.co_);
  prod = prod % x.spec_->min_poly();
  std::vector<Rat> co = std::move(prod.coeffs);
  co.resize(static_cast<size_t>(x.spec_->degree()), Rat(0));
  x.co_ = std::move(co);
  return x;
}

ExactScalar ExactScalar::inv() const {
  if (is_zero()) throw InternalError("inverse of zero");
  if (!spec_ || is_rational()) {
    ExactScalar r = *this;
    r.co_.assign(r.co_.size(), Rat(0));
    r.co_[0] = Rat(1) / co_[0];
    return r;
  }
  Poly<Rat> g, s, t;
  xgcd(Poly<Rat>(co_), spec_->min_poly(), g, s, t);
  if (g.degree() != 0) throw InternalError("inverse: gcd with min_poly not constant");
  Poly<Rat> r = s % spec_->min_poly();
  std::vector<Rat> co = std::move(r.coeffs);
  co.resize(static_cast<size_t>(spec_->degree()), Rat(0));
  return ExactScalar(spec_, std::move(co));
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inv(); }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (!a.spec_ && !b.spec_) return a.co_[0] == b.co_[0];
  ExactScalar x = a, y = b;
  align_fields(x, y);
  return x.co_ == y.co_;
}

int ExactScalar::cmp(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar x = a, y = b;
  align_fields(x, y);
  for (size_t i = 0; i < x.co_.size(); ++i) {
    int c = ::cmp(x.co_[i], y.co_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::size_t ExactScalar::hash() const {
  // Rational-valued elements hash like plain rationals so promotion never
  // changes the hash.
  if (is_rational()) return hash_rat(co_[0]);
  std::size_t h = hash_rat(co_[0]);
  for (size_t i = 1; i < co_.size(); ++i) h = hash_mix(h, hash_rat(co_[i]));
  return h;
}

std::string ExactScalar::str() const {
  if (is_rational()) return rat_str(co_[0]);
  std::ostringstream os;
  const bool gauss = spec_ && spec_->kind() == FieldKind::GaussianRationals;
  const char* gen = gauss ? "i" : "g";
  bool first = true;
  for (size_t i = 0; i < co_.size(); ++i) {
    if (co_[i] == 0) continue;
    Rat c = co_[i];
    if (!first) {
      os << (c > 0 ? " + " : " - ");
      if (c < 0) c = -c;
    }
    if (i == 0) {
      os << rat_str(c);
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << rat_str(c) << "*";
      os << gen;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

ComplexBall ExactScalar::embed(mpfr_prec_t prec, mpfr_prec_t prec_cap) const {
  Mpfr thresh(32);
  mpfr_set_ui_2exp(thresh.get(), 1, static_cast<mpfr_exp_t>(-prec + 2), MPFR_RNDU);
  mpfr_prec_t w = prec + 16;
  const mpfr_prec_t cap = std::max<mpfr_prec_t>(prec_cap, 8 * prec + 64);
  while (true) {
    ComplexBall acc;
    if (is_rational()) {
      acc = ComplexBall::from_rat(co_[0], Rat(0), w);
    } else {
      ComplexBall g = spec_->generator_ball(w);
      acc = ComplexBall::from_rat(co_.back(), Rat(0), w);
      for (size_t i = co_.size() - 1; i-- > 0;)
        acc = ball_add(ball_mul(acc, g), ComplexBall::from_rat(co_[i], Rat(0), w));
    }
    if (mpfr_cmp(acc.rad(), thresh.get()) <= 0) return acc;
    if (w >= cap)
      throw UndeterminedError("embedding did not reach the requested radius at the precision cap");
    w = std::min<mpfr_prec_t>(w * 2, cap);
  }
}

}  // namespace covalg
