#include "covalg/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "covalg/rational.hpp"

namespace covalg {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  const int d = static_cast<int>(img_.size());
  if (d == 0) throw InputError("permutation on an empty point set");
  std::vector<char> seen(static_cast<size_t>(d), 0);
  for (int v : img_) {
    if (v < 1 || v > d) throw InputError("permutation image out of range");
    if (seen[static_cast<size_t>(v - 1)]) throw InputError("permutation image repeated");
    seen[static_cast<size_t>(v - 1)] = 1;
  }
}

Permutation Permutation::identity(int d) {
  if (d < 1) throw InputError("permutation on an empty point set");
  std::vector<int> img(static_cast<size_t>(d));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
  Permutation p = identity(d);
  std::vector<char> seen(static_cast<size_t>(d), 0);
  for (const auto& cyc : cycles) {
    for (int v : cyc) {
      if (v < 1 || v > d) throw InputError("cycle entry out of range");
      if (seen[static_cast<size_t>(v - 1)]) throw InputError("point repeated across cycles");
      seen[static_cast<size_t>(v - 1)] = 1;
    }
    for (size_t k = 0; k < cyc.size(); ++k)
      p.img_[static_cast<size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()];
  }
  return p;
}

Permutation Permutation::parse_cycles(int d, const std::string& text) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("cycle notation: expected '('");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("cycle notation: expected a point number");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000000) throw InputError("cycle notation: point number too large");
        ++i;
      }
      cyc.push_back(v);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i == text.size()) throw InputError("cycle notation: unterminated cycle");
    ++i;  // ')'
    if (cyc.empty()) throw InputError("cycle notation: empty cycle");
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(d, cycles);
}

int Permutation::apply(int i) const {
  if (i < 1 || i > size()) throw InputError("permutation applied outside its point set");
  return img_[static_cast<size_t>(i - 1)];
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InputError("permutation sizes differ");
  std::vector<int> img(a.img_.size());
  for (size_t i = 0; i < img.size(); ++i)
    img[i] = b.img_[static_cast<size_t>(a.img_[i] - 1)];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(img_.size());
  for (size_t i = 0; i < img_.size(); ++i)
    img[static_cast<size_t>(img_[i] - 1)] = static_cast<int>(i) + 1;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int start = 1; start <= size(); ++start) {
    if (seen[static_cast<size_t>(start - 1)]) continue;
    std::vector<int> cyc;
    int v = start;
    do {
      seen[static_cast<size_t>(v - 1)] = 1;
      cyc.push_back(v);
      v = img_[static_cast<size_t>(v - 1)];
    } while (v != start);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> type;
  for (const auto& cyc : cycles()) type.push_back(static_cast<int>(cyc.size()));
  std::sort(type.rbegin(), type.rend());
  return type;
}

int Permutation::cycle_count() const {
  int n = 0;
  std::vector<char> seen(img_.size(), 0);
  for (int start = 1; start <= size(); ++start) {
    if (seen[static_cast<size_t>(start - 1)]) continue;
    ++n;
    int v = start;
    do {
      seen[static_cast<size_t>(v - 1)] = 1;
      v = img_[static_cast<size_t>(v - 1)];
    } while (v != start);
  }
  return n;
}

long Permutation::order() const {
  long ord = 1;
  for (const auto& cyc : cycles()) ord = lcm_long(ord, static_cast<long>(cyc.size()));
  return ord;
}

std::string Permutation::str() const {
  std::ostringstream os;
  for (const auto& cyc : cycles()) {
    os << '(';
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (k) os << ' ';
      os << cyc[k];
    }
    os << ')';
  }
  return os.str();
}

BranchLabel BranchLabel::at(SpherePoint p) {
  BranchLabel l;
  l.point = std::move(p);
  return l;
}

BranchLabel BranchLabel::named(std::string t) {
  BranchLabel l;
  l.tag = std::move(t);
  return l;
}

int BranchLabel::cmp(const BranchLabel& x, const BranchLabel& y) {
  if (x.point.has_value() != y.point.has_value()) return x.point.has_value() ? -1 : 1;
  if (x.point) return SpherePoint::cmp(*x.point, *y.point);
  return x.tag.compare(y.tag) < 0 ? -1 : (x.tag == y.tag ? 0 : 1);
}

std::string BranchLabel::str() const { return point ? point->str() : tag; }

void Constellation::validate() const {
  if (degree < 1) throw InputError("constellation degree must be at least 1");
  if (branch_points.size() != perms.size())
    throw InputError("constellation: one permutation per branch point required");
  for (const auto& p : perms)
    if (p.size() != degree) throw InputError("constellation: permutation size != degree");
  for (size_t i = 0; i < branch_points.size(); ++i)
    for (size_t j = i + 1; j < branch_points.size(); ++j)
      if (BranchLabel::cmp(branch_points[i], branch_points[j]) == 0)
        throw InputError("constellation: branch points must be distinct");
  if (!perms.empty()) {
    Permutation prod = perms.front();
    for (size_t i = 1; i < perms.size(); ++i) prod = prod * perms[i];
    if (!prod.is_identity())
      throw InputError("constellation: branch permutations do not multiply to the identity");
  }
  // Transitivity: breadth-first closure of 1 under all permutations.
  std::vector<char> seen(static_cast<size_t>(degree), 0);
  std::vector<int> queue{1};
  seen[0] = 1;
  size_t head = 0;
  while (head < queue.size()) {
    int v = queue[head++];
    for (const auto& p : perms) {
      int w = p.apply(v);
      if (!seen[static_cast<size_t>(w - 1)]) {
        seen[static_cast<size_t>(w - 1)] = 1;
        queue.push_back(w);
      }
    }
  }
  if (static_cast<int>(queue.size()) != degree)
    throw InputError("constellation: monodromy is not transitive");
}

long genus(const Constellation& c) {
  c.validate();
  long total = 0;
  for (const auto& p : c.perms) total += p.size() - p.cycle_count();
  if (total % 2 != 0)
    throw InputError("total branching is odd: no covering carries this data");
  // 2 - 2g = 2d - total
  return total / 2 - c.degree + 1;
}

std::vector<Constellation> align(std::vector<Constellation> cs) {
  std::vector<BranchLabel> all;
  for (const auto& c : cs) {
    c.validate();
    for (const auto& b : c.branch_points) all.push_back(b);
  }
  std::sort(all.begin(), all.end(),
            [](const BranchLabel& x, const BranchLabel& y) { return BranchLabel::cmp(x, y) < 0; });
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<Constellation> out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    Constellation a;
    a.degree = c.degree;
    a.branch_points = all;
    for (const auto& b : all) {
      auto it = std::find_if(c.branch_points.begin(), c.branch_points.end(),
                             [&](const BranchLabel& x) { return BranchLabel::cmp(x, b) == 0; });
      if (it == c.branch_points.end()) {
        a.perms.push_back(Permutation::identity(c.degree));
      } else {
        a.perms.push_back(c.perms[static_cast<size_t>(it - c.branch_points.begin())]);
      }
    }
    a.validate();
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<FiberComponent> fiber_product(const std::vector<Constellation>& cs) {
  if (cs.empty()) throw InputError("fiber product of an empty list");
  const size_t k = cs.size();
  const size_t m = cs.front().branch_points.size();
  for (const auto& c : cs) {
    c.validate();
    if (c.branch_points.size() != m)
      throw InputError("fiber product requires aligned branch point lists");
    for (size_t j = 0; j < m; ++j)
      if (BranchLabel::cmp(c.branch_points[j], cs.front().branch_points[j]) != 0)
        throw InputError("fiber product requires aligned branch point lists");
  }

  std::vector<long> dims(k);
  long total = 1;
  for (size_t i = 0; i < k; ++i) {
    dims[i] = cs[i].degree;
    if (total > (1L << 40) / dims[i])
      throw InputError("fiber product index set too large");
    total *= dims[i];
  }

  // Mixed-radix encoding of tuples; component j of tuple t is 1-based.
  auto decode = [&](long idx) {
    std::vector<int> t(k);
    for (size_t i = k; i-- > 0;) {
      t[i] = static_cast<int>(idx % dims[i]) + 1;
      idx /= dims[i];
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    long idx = 0;
    for (size_t i = 0; i < k; ++i) idx = idx * dims[i] + (t[i] - 1);
    return idx;
  };

  // Orbits of the componentwise action of the branch permutations.
  std::vector<long> comp(static_cast<size_t>(total), -1);
  std::vector<FiberComponent> out;
  for (long start = 0; start < total; ++start) {
    if (comp[static_cast<size_t>(start)] >= 0) continue;
    const long id = static_cast<long>(out.size());
    std::vector<long> orbit{start};
    comp[static_cast<size_t>(start)] = id;
    size_t head = 0;
    while (head < orbit.size()) {
      const std::vector<int> t = decode(orbit[head++]);
      for (size_t j = 0; j < m; ++j) {
        std::vector<int> img(k);
        for (size_t i = 0; i < k; ++i) img[i] = cs[i].perms[j].apply(t[i]);
        const long e = encode(img);
        if (comp[static_cast<size_t>(e)] < 0) {
          comp[static_cast<size_t>(e)] = id;
          orbit.push_back(e);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());

    FiberComponent fc;
    const long n = static_cast<long>(orbit.size());
    std::map<long, int> pos;
    for (long i = 0; i < n; ++i) {
      fc.orbit.push_back(decode(orbit[static_cast<size_t>(i)]));
      pos[orbit[static_cast<size_t>(i)]] = static_cast<int>(i) + 1;
    }
    fc.cover.degree = static_cast<int>(n);
    fc.cover.branch_points = cs.front().branch_points;
    for (size_t j = 0; j < m; ++j) {
      std::vector<int> img(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) {
        std::vector<int> t = fc.orbit[static_cast<size_t>(i)];
        for (size_t q = 0; q < k; ++q) t[q] = cs[q].perms[j].apply(t[q]);
        img[static_cast<size_t>(i)] = pos.at(encode(t));
      }
      fc.cover.perms.emplace_back(std::move(img));
    }
    fc.cover.validate();
    fc.genus = genus(fc.cover);
    for (size_t i = 0; i < k; ++i) {
      if (n % dims[i] != 0)
        throw InternalError("fiber product orbit size not divisible by a factor degree");
      fc.degrees_to_factors.push_back(n / dims[i]);
    }
    out.push_back(std::move(fc));
  }
  return out;
}

namespace {

// Deterministic closure of the generated permutation group, element count
// capped. Returns the sorted element list when not capped.
std::pair<std::vector<Permutation>, bool> perm_closure(const std::vector<Permutation>& gens,
                                                       int degree, long cap) {
  std::set<std::vector<int>> seen;
  std::vector<Permutation> elems;
  elems.push_back(Permutation::identity(degree));
  seen.insert(elems.front().images());
  size_t head = 0;
  while (head < elems.size()) {
    const Permutation cur = elems[head++];
    for (const auto& g : gens) {
      Permutation nxt = cur * g;
      if (seen.insert(nxt.images()).second) {
        if (static_cast<long>(elems.size()) + 1 > cap) return {{}, true};
        elems.push_back(std::move(nxt));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return {std::move(elems), false};
}

}  // namespace

GroupCount monodromy_group(const Constellation& c, long cap) {
  c.validate();
  if (c.perms.empty()) return {1, false};
  auto [elems, capped] = perm_closure(c.perms, c.degree, cap);
  if (capped) return {cap, true};
  return {static_cast<long>(elems.size()), false};
}

long normalization_genus(const Constellation& c, long cap) {
  c.validate();
  if (c.perms.empty()) return 0;
  auto [elems, capped] = perm_closure(c.perms, c.degree, cap);
  if (capped)
    throw UndeterminedError("normalization genus: monodromy group order exceeds cap " +
                            std::to_string(cap));
  const long n = static_cast<long>(elems.size());
  std::map<std::vector<int>, int> index;
  for (long i = 0; i < n; ++i) index[elems[static_cast<size_t>(i)].images()] = static_cast<int>(i);

  // Route 1: literal cycle counts of the right-multiplication action.
  long total_branching = 0;
  Rat chi(2);
  for (const auto& sigma : c.perms) {
    std::vector<int> img(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i)
      img[static_cast<size_t>(i)] = index.at((elems[static_cast<size_t>(i)] * sigma).images()) + 1;
    Permutation rho(std::move(img));
    total_branching += n - rho.cycle_count();
    chi += Rat(1, sigma.order()) - 1;
  }
  if (total_branching % 2 != 0)
    throw InternalError("regular action branching is odd");
  const long g = total_branching / 2 - n + 1;

  // Route 2: the orbifold identity g = 1 - |G| chi / 2, exact rationals.
  Rat g2 = Rat(1) - Rat(n) * chi / 2;
  g2.canonicalize();
  if (g2.get_den() != 1 || g2.get_num() != g)
    throw InternalError("normalization genus cross-check failed: regular action gives " +
                        std::to_string(g) + ", orbifold identity gives " + g2.get_str());
  return g;
}

long normalization_genus_tuple_oracle(const Constellation& c) {
  c.validate();
  if (c.degree > 5)
    throw InputError("tuple oracle: degree above 5 is out of scale");
  GroupCount gc = monodromy_group(c, 121);
  if (gc.capped || gc.order > 120)
    throw InputError("tuple oracle: monodromy order above 120 is out of scale");
  if (c.perms.empty()) return 0;

  // Orbit of the tuple (1,...,d) under the componentwise action.
  const int d = c.degree;
  std::vector<int> start(static_cast<size_t>(d));
  std::iota(start.begin(), start.end(), 1);
  std::map<std::vector<int>, int> pos;
  std::vector<std::vector<int>> orbit{start};
  pos[start] = 0;
  size_t head = 0;
  while (head < orbit.size()) {
    const std::vector<int> t = orbit[head++];
    for (const auto& sigma : c.perms) {
      std::vector<int> nxt(t.size());
      for (size_t i = 0; i < t.size(); ++i) nxt[i] = sigma.apply(t[i]);
      if (pos.emplace(nxt, static_cast<int>(orbit.size())).second) orbit.push_back(nxt);
    }
  }
  const long n = static_cast<long>(orbit.size());

  long total_branching = 0;
  for (const auto& sigma : c.perms) {
    std::vector<int> img(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
      std::vector<int> t = orbit[static_cast<size_t>(i)];
      for (size_t q = 0; q < t.size(); ++q) t[q] = sigma.apply(t[q]);
      img[static_cast<size_t>(i)] = pos.at(t) + 1;
    }
    total_branching += n - Permutation(std::move(img)).cycle_count();
  }
  if (total_branching % 2 != 0)
    throw InternalError("tuple action branching is odd");
  return total_branching / 2 - n + 1;
}

}  // namespace covalg
