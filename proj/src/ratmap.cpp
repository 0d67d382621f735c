#include "covalg/ratmap.hpp"

#include <algorithm>

#include "covalg/factor_k.hpp"

namespace covalg {

std::string poly_str(const Poly<ExactScalar>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const ExactScalar& c = p.coeffs[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (out.empty()) {
      if (neg) {
        out += "-";
        cs = cs.substr(1);
      }
    } else {
      out += neg ? " - " : " + ";
      if (neg) cs = cs.substr(1);
    }
    bool composite = cs.find_first_of("+-") != std::string::npos ||
                     cs.find('*') != std::string::npos;
    if (i == 0) {
      out += composite ? "(" + cs + ")" : cs;
    } else {
      if (cs != "1") out += (composite ? "(" + cs + ")" : cs) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SpherePoint

int SpherePoint::cmp(const SpherePoint& a, const SpherePoint& b) {
  if (a.inf_ || b.inf_) {
    if (a.inf_ && b.inf_) return 0;
    return a.inf_ ? 1 : -1;  // finite points first
  }
  return ExactScalar::cmp(a.v_, b.v_);
}

std::size_t SpherePoint::hash() const {
  if (inf_) return 0x9e3779b97f4a7c15ull;
  return v_.hash();
}

std::string SpherePoint::str() const { return inf_ ? "inf" : v_.str(); }

// ---------------------------------------------------------------------------
// RationalMap

RationalMap::RationalMap(Poly<ExactScalar> num, Poly<ExactScalar> den) {
  num.normalize();
  den.normalize();
  if (den.is_zero()) throw InputError("rational map: zero denominator");
  if (num.is_zero()) throw InputError("rational map: constant map (zero)");
  Poly<ExactScalar> g = gcd_k(num, den);
  if (g.degree() > 0) {
    num = divexact(num, g);
    den = divexact(den, g);
  }
  ExactScalar dl = den.lc();
  if (!(dl == ExactScalar(1))) {
    ExactScalar s = dl.inv();
    for (auto& c : num.coeffs) c = c * s;
    for (auto& c : den.coeffs) c = c * s;
  }
  num_ = std::move(num);
  den_ = std::move(den);
  if (std::max(num_.degree(), den_.degree()) < 1)
    throw InputError("rational map: constant map");
  std::vector<ExactScalar> all = num_.coeffs;
  all.insert(all.end(), den_.coeffs.begin(), den_.coeffs.end());
  field_ = common_field(all);
}

RationalMap RationalMap::from_poly(Poly<ExactScalar> p) {
  return RationalMap(std::move(p), Poly<ExactScalar>::constant(ExactScalar(1)));
}

RationalMap RationalMap::power(int n) {
  if (n == 0) throw InputError("power map: exponent must be nonzero");
  Poly<ExactScalar> mono;
  mono.coeffs.assign(static_cast<size_t>(std::abs(n)) + 1, ExactScalar(0));
  mono.coeffs.back() = ExactScalar(1);
  Poly<ExactScalar> one = Poly<ExactScalar>::constant(ExactScalar(1));
  return n > 0 ? RationalMap(std::move(mono), std::move(one))
               : RationalMap(std::move(one), std::move(mono));
}

SpherePoint RationalMap::eval(const SpherePoint& z) const {
  if (z.is_infinity()) {
    int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return SpherePoint::infinity();
    if (dn < dd) return SpherePoint(ExactScalar(0));
    return SpherePoint(num_.lc());  // den monic
  }
  ExactScalar d = ::covalg::eval(den_, z.value());
  if (d.is_zero()) return SpherePoint::infinity();
  return SpherePoint(::covalg::eval(num_, z.value()) / d);
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
  const Poly<ExactScalar>& nb = inner.num_;
  const Poly<ExactScalar>& db = inner.den_;
  int D = degree();
  // Homogenize the outer map: sum_i a_i nb^i db^(D-i).
  auto lift = [&](const Poly<ExactScalar>& a) {
    Poly<ExactScalar> acc;
    Poly<ExactScalar> nb_pow = Poly<ExactScalar>::constant(ExactScalar(1));
    std::vector<Poly<ExactScalar>> db_pows(static_cast<size_t>(D) + 1);
    db_pows[0] = Poly<ExactScalar>::constant(ExactScalar(1));
    for (int i = 1; i <= D; ++i) db_pows[static_cast<size_t>(i)] = db_pows[static_cast<size_t>(i - 1)] * db;
    for (int i = 0; i <= D; ++i) {
      if (i < static_cast<int>(a.coeffs.size()) && !a.coeffs[static_cast<size_t>(i)].is_zero()) {
        Poly<ExactScalar> term = nb_pow * db_pows[static_cast<size_t>(D - i)];
        for (auto& c : term.coeffs) c = c * a.coeffs[static_cast<size_t>(i)];
        acc = acc + term;
      }
      if (i < D) nb_pow = nb_pow * nb;
    }
    return acc;
  };
  return RationalMap(lift(num_), lift(den_));
}

Poly<ExactScalar> RationalMap::wronskian() const {
  return derivative(num_) * den_ - num_ * derivative(den_);
}

std::size_t RationalMap::hash() const {
  std::size_t h = 0x51ed270b;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (const auto& c : num_.coeffs) mix(c.hash());
  mix(0);
  for (const auto& c : den_.coeffs) mix(c.hash());
  return h;
}

std::string RationalMap::str() const {
  if (is_polynomial()) return poly_str(num_);
  return "(" + poly_str(num_) + ") / (" + poly_str(den_) + ")";
}

// ---------------------------------------------------------------------------
// MoebiusTransform

MoebiusTransform::MoebiusTransform(ExactScalar a, ExactScalar b, ExactScalar c, ExactScalar d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  ExactScalar det = a_ * d_ - b_ * c_;
  if (det.is_zero()) throw InputError("moebius transform: singular coefficient matrix");
  const ExactScalar* lead = nullptr;
  for (const ExactScalar* p : {&a_, &b_, &c_, &d_})
    if (!p->is_zero()) {
      lead = p;
      break;
    }
  ExactScalar s = lead->inv();
  a_ = a_ * s;
  b_ = b_ * s;
  c_ = c_ * s;
  d_ = d_ * s;
}

MoebiusTransform MoebiusTransform::affine(ExactScalar slope, ExactScalar offset) {
  return MoebiusTransform(std::move(slope), std::move(offset), ExactScalar(0), ExactScalar(1));
}

MoebiusTransform MoebiusTransform::inversion() {
  return MoebiusTransform(ExactScalar(0), ExactScalar(1), ExactScalar(1), ExactScalar(0));
}

bool MoebiusTransform::is_identity() const {
  return a_ == ExactScalar(1) && b_.is_zero() && c_.is_zero() && d_ == ExactScalar(1);
}

SpherePoint MoebiusTransform::apply(const SpherePoint& z) const {
  if (z.is_infinity()) {
    if (c_.is_zero()) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  ExactScalar w = c_ * z.value() + d_;
  if (w.is_zero()) return SpherePoint::infinity();
  return SpherePoint((a_ * z.value() + b_) / w);
}

MoebiusTransform MoebiusTransform::compose(const MoebiusTransform& inner) const {
  return MoebiusTransform(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                          c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_);
}

MoebiusTransform MoebiusTransform::inverse() const {
  return MoebiusTransform(d_, ExactScalar(0) - b_, ExactScalar(0) - c_, a_);
}

RationalMap MoebiusTransform::as_map() const {
  Poly<ExactScalar> num, den;
  num.coeffs = {b_, a_};
  num.normalize();
  den.coeffs = {d_, c_};
  den.normalize();
  return RationalMap(std::move(num), std::move(den));
}

int MoebiusTransform::cmp(const MoebiusTransform& x, const MoebiusTransform& y) {
  int c = ExactScalar::cmp(x.a_, y.a_);
  if (c != 0) return c;
  c = ExactScalar::cmp(x.b_, y.b_);
  if (c != 0) return c;
  c = ExactScalar::cmp(x.c_, y.c_);
  if (c != 0) return c;
  return ExactScalar::cmp(x.d_, y.d_);
}

std::size_t MoebiusTransform::hash() const {
  std::size_t h = 0x6d6f6562;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(a_.hash());
  mix(b_.hash());
  mix(c_.hash());
  mix(d_.hash());
  return h;
}

std::string MoebiusTransform::str() const { return as_map().str(); }

// ---------------------------------------------------------------------------
// Portrait helpers

bool CriticalClass::uniform(int* e_out) const {
  if (profile.size() != 1) return false;
  if (e_out) *e_out = profile.front().first;
  return true;
}

long RamificationPortrait::total_branch_points() const {
  long total = 0;
  for (const CriticalClass& c : classes) {
    long per_value = 0;
    for (auto [e, n] : c.profile)
      if (e >= 2) per_value += n;
    long size = c.at_infinity() ? 1 : c.value_min_poly->degree();
    total += per_value * size;
  }
  return total;
}

ExactScalar FiberClass::exact_point() const {
  if (min_poly.degree() != 1) throw InternalError("exact_point: class is not linear");
  return ExactScalar(0) - min_poly.coeffs[0];  // monic x + c
}

long Fiber::point_count() const {
  long n = infinity_multiplicity > 0 ? 1 : 0;
  for (const FiberClass& c : classes) n += c.min_poly.degree();
  return n;
}

}  // namespace covalg
