#include "covalg/bivar.hpp"

#include <algorithm>

#include "covalg/factor_k.hpp"

namespace covalg {

namespace {

// Bivariate polynomials as polynomials in y whose coefficients live in k[x].
using BPoly = Poly<Poly<ExactScalar>>;

Poly<ExactScalar> content_x(const BPoly& a) {
  Poly<ExactScalar> g;
  for (const auto& c : a.coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : gcd_k(g, c);
    if (g.degree() == 0) break;
  }
  return g.is_zero() ? g : make_monic(g);
}

BPoly pp_x(const BPoly& a) {
  if (a.is_zero()) return a;
  Poly<ExactScalar> g = content_x(a);
  BPoly r = a;
  if (g.degree() > 0)
    for (auto& c : r.coeffs)
      if (!c.is_zero()) c = divexact(c, g);
  // normalize the leading k-unit so results are deterministic
  ExactScalar u = r.coeffs.back().lc().inv();
  if (!(u == ExactScalar(1)))
    for (auto& c : r.coeffs)
      for (auto& s : c.coeffs) s = s * u;
  return r;
}

BPoly scale_bp(const BPoly& a, const Poly<ExactScalar>& s) {
  BPoly r = a;
  for (auto& c : r.coeffs) c = c * s;
  r.normalize();
  return r;
}

// Pseudo-remainder of a by b in y (scaling factors are irrelevant: every
// caller takes primitive parts).
BPoly prem_y(BPoly a, const BPoly& b) {
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    const Poly<ExactScalar> la = a.coeffs.back();
    BPoly sub;
    sub.coeffs.assign(static_cast<size_t>(shift), Poly<ExactScalar>{});
    for (const auto& c : b.coeffs) sub.coeffs.push_back(c * la);
    sub.normalize();
    a = scale_bp(a, b.coeffs.back()) - sub;
  }
  return a;
}

BPoly gcd_bivar(BPoly a, BPoly b) {
  a = pp_x(a);
  b = pp_x(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    BPoly r = prem_y(a, b);
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : pp_x(r);
  }
  if (a.degree() == 0) {
    BPoly one;
    one.coeffs = {Poly<ExactScalar>::constant(ExactScalar(1))};
    return one;
  }
  return a;
}

// Exact division for the case b | a with b primitive in x; every leading
// k[x]-division must then come out exact (Gauss), checked as it goes.
BPoly div_bivar_exact(BPoly a, const BPoly& b) {
  if (b.is_zero()) throw InternalError("bivariate division by zero");
  BPoly q;
  q.coeffs.assign(static_cast<size_t>(std::max(a.degree() - b.degree() + 1, 0)),
                  Poly<ExactScalar>{});
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    auto [qc, rc] = divrem(a.coeffs.back(), b.coeffs.back());
    if (!rc.is_zero()) throw InternalError("bivariate division: leading term not divisible");
    BPoly sub;
    sub.coeffs.assign(static_cast<size_t>(shift), Poly<ExactScalar>{});
    for (const auto& c : b.coeffs) sub.coeffs.push_back(c * qc);
    sub.normalize();
    a = a - sub;
    if (!a.is_zero() && a.degree() >= db + shift)
      throw InternalError("bivariate division: degree did not drop");
    q.coeffs[static_cast<size_t>(shift)] = std::move(qc);
  }
  if (!a.is_zero()) throw InternalError("bivariate division: nonzero remainder");
  q.normalize();
  return q;
}

BPoly derivative_y(const BPoly& a) {
  BPoly r;
  for (size_t i = 1; i < a.coeffs.size(); ++i) {
    Poly<ExactScalar> c = a.coeffs[i];
    for (auto& s : c.coeffs) s = s * ExactScalar(static_cast<long>(i));
    r.coeffs.push_back(std::move(c));
  }
  r.normalize();
  return r;
}

int deg_x(const BPoly& a) {
  int d = -1;
  for (const auto& c : a.coeffs) d = std::max(d, c.degree());
  return d;
}

// Res_z(num_P - x den_P, num_Q - y den_Q) recovered exactly from
// specializations: nodes where the z-degree of a specialized input would drop
// (only the value the map takes at infinity) are skipped, so each evaluated
// resultant agrees with the generic one.
BPoly pair_resultant(const RationalMap& P, const RationalMap& Q) {
  const int dx = Q.degree();  // x-degree bound: number of rows carrying x entries
  const int dy = P.degree();

  auto spec = [](const RationalMap& M, long t) {
    Poly<ExactScalar> s = M.den();
    for (auto& c : s.coeffs) c = c * ExactScalar(t);
    return M.num() - s;
  };
  auto good_nodes = [&](const RationalMap& M, int count) {
    std::vector<long> nodes;
    for (long t = 0; static_cast<int>(nodes.size()) < count; t = t >= 0 ? -(t + 1) : -t)
      if (spec(M, t).degree() == M.degree()) nodes.push_back(t);
    return nodes;
  };

  std::vector<long> xs = good_nodes(P, dx + 1);
  std::vector<long> ys = good_nodes(Q, dy + 1);

  std::vector<ExactScalar> ynodes;
  for (long y : ys) ynodes.emplace_back(ExactScalar(y));

  // column j: R(x_j, y) as a poly in y
  std::vector<Poly<ExactScalar>> cols;
  for (long xj : xs) {
    Poly<ExactScalar> a = spec(P, xj);
    std::vector<ExactScalar> vals;
    for (long yl : ys) vals.push_back(resultant_k(a, spec(Q, yl)));
    cols.push_back(interpolate(ynodes, vals));
  }

  std::vector<ExactScalar> xnodes;
  for (long x : xs) xnodes.emplace_back(ExactScalar(x));

  BPoly R;
  R.coeffs.assign(static_cast<size_t>(dy) + 1, Poly<ExactScalar>{});
  for (int i = 0; i <= dy; ++i) {
    std::vector<ExactScalar> vals;
    for (const auto& c : cols)
      vals.push_back(i < static_cast<int>(c.coeffs.size()) ? c.coeffs[static_cast<size_t>(i)]
                                                           : ExactScalar(0));
    R.coeffs[static_cast<size_t>(i)] = interpolate(xnodes, vals);
  }
  R.normalize();
  return R;
}

}  // namespace

int common_right_factor_degree(const RationalMap& P, const RationalMap& Q) {
  BPoly J = pair_resultant(P, Q);
  if (J.is_zero()) throw InternalError("common right factor: zero resultant");
  BPoly H = pp_x(J);
  if (H.degree() < 1) throw InternalError("common right factor: resultant free of y");

  BPoly G = gcd_bivar(H, derivative_y(H));
  BPoly f = (G.degree() == 0) ? H : pp_x(div_bivar_exact(H, G));

  const int fy = f.degree();
  const int fx = deg_x(f);
  if (fy < 1 || fx < 1) throw InternalError("common right factor: degenerate image curve");
  if (P.degree() % fy != 0 || Q.degree() % fx != 0)
    throw InternalError("common right factor: degree quotients are not integers");
  const int wP = P.degree() / fy;
  const int wQ = Q.degree() / fx;
  if (wP != wQ) throw InternalError("common right factor: degree quotients disagree");
  return wP;
}

namespace {

// Nullspace vector of an m x n matrix over the scalar field, or empty when
// the kernel is trivial. Gauss-Jordan with first-nonzero pivoting.
std::vector<ExactScalar> nullspace_vector(std::vector<std::vector<ExactScalar>> M, int ncols) {
  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < ncols && row < static_cast<int>(M.size()); ++col) {
    int pr = -1;
    for (int r = row; r < static_cast<int>(M.size()); ++r)
      if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[static_cast<size_t>(row)], M[static_cast<size_t>(pr)]);
    ExactScalar inv = M[static_cast<size_t>(row)][static_cast<size_t>(col)].inv();
    for (int c = col; c < ncols; ++c)
      M[static_cast<size_t>(row)][static_cast<size_t>(c)] =
          M[static_cast<size_t>(row)][static_cast<size_t>(c)] * inv;
    for (int r = 0; r < static_cast<int>(M.size()); ++r) {
      if (r == row) continue;
      ExactScalar& lead = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (lead.is_zero()) continue;
      ExactScalar factor = lead;
      for (int c = col; c < ncols; ++c)
        M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            M[static_cast<size_t>(r)][static_cast<size_t>(c)] -
            factor * M[static_cast<size_t>(row)][static_cast<size_t>(c)];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  // first free column
  std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
  for (int c : pivot_col_of_row) is_pivot[static_cast<size_t>(c)] = true;
  int free_col = -1;
  for (int c = 0; c < ncols; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) {
      free_col = c;
      break;
    }
  if (free_col < 0) return {};
  std::vector<ExactScalar> v(static_cast<size_t>(ncols), ExactScalar(0));
  v[static_cast<size_t>(free_col)] = ExactScalar(1);
  for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
    v[static_cast<size_t>(pivot_col_of_row[r])] =
        ExactScalar(0) - M[r][static_cast<size_t>(free_col)];
  return v;
}

}  // namespace

std::optional<RationalMap> left_factor(const RationalMap& A, const RationalMap& P) {
  if (A.degree() % P.degree() != 0)
    throw InputError("left factor: deg P does not divide deg A");
  const int n = A.degree() / P.degree();

  // Basis num_P^i den_P^(n-i); F = (sum a_i w^i)/(sum b_i w^i) becomes the
  // linear identity den_A * sum a_i M_i - num_A * sum b_i M_i = 0.
  std::vector<Poly<ExactScalar>> M(static_cast<size_t>(n) + 1);
  {
    Poly<ExactScalar> np = Poly<ExactScalar>::constant(ExactScalar(1));
    std::vector<Poly<ExactScalar>> dp(static_cast<size_t>(n) + 1);
    dp[0] = Poly<ExactScalar>::constant(ExactScalar(1));
    for (int i = 1; i <= n; ++i) dp[static_cast<size_t>(i)] = dp[static_cast<size_t>(i - 1)] * P.den();
    for (int i = 0; i <= n; ++i) {
      M[static_cast<size_t>(i)] = np * dp[static_cast<size_t>(n - i)];
      if (i < n) np = np * P.num();
    }
  }

  int maxdeg = 0;
  std::vector<Poly<ExactScalar>> cols;
  for (int i = 0; i <= n; ++i) cols.push_back(A.den() * M[static_cast<size_t>(i)]);
  for (int i = 0; i <= n; ++i) {
    Poly<ExactScalar> c = A.num() * M[static_cast<size_t>(i)];
    for (auto& s : c.coeffs) s = ExactScalar(0) - s;
    cols.push_back(std::move(c));
  }
  for (const auto& c : cols) maxdeg = std::max(maxdeg, c.degree());

  std::vector<std::vector<ExactScalar>> mat(
      static_cast<size_t>(maxdeg) + 1,
      std::vector<ExactScalar>(cols.size(), ExactScalar(0)));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t d = 0; d < cols[j].coeffs.size(); ++d) mat[d][j] = cols[j].coeffs[d];

  std::vector<ExactScalar> v = nullspace_vector(std::move(mat), static_cast<int>(cols.size()));
  if (v.empty()) return std::nullopt;

  Poly<ExactScalar> fn, fd;
  fn.coeffs.assign(v.begin(), v.begin() + n + 1);
  fd.coeffs.assign(v.begin() + n + 1, v.end());
  fn.normalize();
  fd.normalize();
  if (fn.is_zero() || fd.is_zero()) return std::nullopt;
  RationalMap F(std::move(fn), std::move(fd));
  if (F.compose(P) != A) throw InternalError("left factor: verification failed");
  return F;
}

}  // namespace covalg
