#include "galstat/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "galstat/modular.hpp"

namespace galstat {

std::vector<Rat> CharacterTable::weights() const {
  std::vector<Rat> out;
  out.reserve(classes.size());
  for (const TableClass& c : classes) {
    Rat w(c.size, group_order);
    w.canonicalize();
    out.push_back(w);
  }
  return out;
}

Int CharacterTable::degree(int character_index) const {
  Rat d = values[character_index][0].rational_value();
  if (d.get_den() != 1) throw std::logic_error("character degree is not an integer");
  return d.get_num();
}

int CharacterTable::class_power(int class_index, long e) const {
  if (!has_power_maps()) throw std::logic_error("table carries no class power maps");
  const auto& cycle = power_classes[class_index];
  long o = static_cast<long>(cycle.size());
  long l = e % o;
  if (l < 0) l += o;
  return cycle[l];
}

std::vector<Rat> RationalCharacterTable::weights() const {
  std::vector<Rat> out;
  out.reserve(classes.size());
  for (const RationalClass& c : classes) {
    Rat w(c.size, group_order);
    w.canonicalize();
    out.push_back(w);
  }
  return out;
}

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

// ---- small dense linear algebra over F_q ----

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(Mat& rows, u64 q) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    u64 inv = invmod_u64(rows[rank][col], q);
    for (u64& v : rows[rank]) v = mulmod_u64(v, inv, q);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      u64 factor = rows[r][col];
      for (std::size_t c2 = 0; c2 < cols; ++c2) {
        u64 sub = mulmod_u64(factor, rows[rank][c2], q);
        rows[r][c2] = (rows[r][c2] >= sub) ? rows[r][c2] - sub : rows[r][c2] + q - sub;
      }
    }
    pivots.push_back(static_cast<int>(col));
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

Vec mat_vec(const Mat& M, const Vec& v, u64 q) {
  Vec out(M.size(), 0);
  for (std::size_t j = 0; j < M.size(); ++j) {
    unsigned __int128 acc = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      acc += static_cast<unsigned __int128>(M[j][k]) * v[k];
    }
    out[j] = static_cast<u64>(acc % q);
  }
  return out;
}

u64 det_mod(Mat M, u64 q) {
  const std::size_t n = M.size();
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && M[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(M[pivot], M[col]);
      det = q - det;
      if (det == q) det = 0;
    }
    det = mulmod_u64(det, M[col][col], q);
    u64 inv = invmod_u64(M[col][col], q);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      u64 factor = mulmod_u64(M[r][col], inv, q);
      for (std::size_t c2 = col; c2 < n; ++c2) {
        u64 sub = mulmod_u64(factor, M[col][c2], q);
        M[r][c2] = (M[r][c2] >= sub) ? M[r][c2] - sub : M[r][c2] + q - sub;
      }
    }
  }
  return det;
}

// Characteristic polynomial det(xI - R) by interpolation at d+1 points.
Vec char_poly(const Mat& R, u64 q) {
  const std::size_t d = R.size();
  std::vector<u64> xs(d + 1), ys(d + 1);
  for (std::size_t t = 0; t <= d; ++t) {
    Mat M(d, Vec(d, 0));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        u64 v = (q - R[r][c]) % q;
        if (r == c) v = (v + t) % q;
        M[r][c] = v;
      }
    }
    xs[t] = t % q;
    ys[t] = det_mod(std::move(M), q);
  }
  // Lagrange interpolation to monic degree-d coefficients (ascending).
  Vec poly(d + 1, 0);
  for (std::size_t t = 0; t <= d; ++t) {
    // Basis polynomial prod_{s != t} (x - x_s) / (x_t - x_s).
    Vec basis{1};
    u64 denom = 1;
    for (std::size_t s = 0; s <= d; ++s) {
      if (s == t) continue;
      Vec next(basis.size() + 1, 0);
      u64 neg = (q - xs[s]) % q;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        next[b + 1] = (next[b + 1] + basis[b]) % q;
        next[b] = (next[b] + mulmod_u64(basis[b], neg, q)) % q;
      }
      basis = std::move(next);
      u64 diff = (xs[t] + q - xs[s]) % q;
      denom = mulmod_u64(denom, diff, q);
    }
    u64 scale = mulmod_u64(ys[t], invmod_u64(denom, q), q);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      poly[b] = (poly[b] + mulmod_u64(scale, basis[b], q)) % q;
    }
  }
  return poly;
}

u64 eval_poly(const Vec& poly, u64 x, u64 q) {
  u64 acc = 0;
  for (std::size_t b = poly.size(); b-- > 0;) {
    acc = (mulmod_u64(acc, x, q) + poly[b]) % q;
  }
  return acc;
}

u64 primitive_root(u64 q) {
  u64 n = q - 1;
  std::vector<u64> prime_factors;
  u64 tmp = n;
  for (u64 p = 2; p * p <= tmp; ++p) {
    if (tmp % p == 0) {
      prime_factors.push_back(p);
      while (tmp % p == 0) tmp /= p;
    }
  }
  if (tmp > 1) prime_factors.push_back(tmp);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (u64 p : prime_factors) {
      if (powmod_u64(g, n / p, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

struct FieldData {
  u64 q;                 // prime, q = 1 mod m, q > 2 sqrt|G|
  u64 z;                 // fixed element of multiplicative order m
  std::vector<u64> zpow;  // z^0..z^{m-1}
};

FieldData choose_field(long order, long m) {
  double bound = 2.0 * std::sqrt(static_cast<double>(order));
  u64 q = static_cast<u64>(m) + 1;
  while (true) {
    if (q > bound && is_prime_u64(q) && (q - 1) % static_cast<u64>(m) == 0) break;
    q += static_cast<u64>(m);
  }
  FieldData F;
  F.q = q;
  F.z = powmod_u64(primitive_root(q), (q - 1) / static_cast<u64>(m), q);
  F.zpow.resize(m);
  u64 acc = 1;
  for (long j = 0; j < m; ++j) {
    F.zpow[j] = acc;
    acc = mulmod_u64(acc, F.z, q);
  }
  return F;
}

}  // namespace

CharacterTable character_table(const PermGroup& G) {
  const int h = G.class_count();
  const long order = G.order();
  const long m = G.exponent();
  const FieldData F = choose_field(order, m);
  const u64 q = F.q;

  // Class power maps: power_classes[k][l] = class of rep_k^l.
  std::vector<std::vector<int>> power_classes(h);
  for (int k = 0; k < h; ++k) {
    const Permutation& rep = G.classes()[k].representative;
    long o = rep.order();
    power_classes[k].reserve(o);
    Permutation g = Permutation::identity(G.degree());
    for (long l = 0; l < o; ++l) {
      power_classes[k].push_back(G.class_of(g));
      g = g * rep;
    }
  }

  // Class-algebra structure constants: a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
  // = #{(x,y) in C_i x C_j : x y = z_k}.
  std::vector<std::vector<std::vector<long>>> a(
      h, std::vector<std::vector<long>>(h, std::vector<long>(h, 0)));
  {
    std::vector<int> inverse_index(order);
    for (long idx = 0; idx < order; ++idx) {
      inverse_index[idx] = G.element_index(G.elements()[idx].inverse());
    }
    for (int k = 0; k < h; ++k) {
      const Permutation& zk = G.classes()[k].representative;
      for (long idx = 0; idx < order; ++idx) {
        int i = G.class_of_index(static_cast<int>(idx));
        int j = G.class_of(G.elements()[inverse_index[idx]] * zk);
        ++a[i][j][k];
      }
    }
  }

  // Simultaneous eigenvectors of the matrices (M_i)_{jk} = a_{ijk} over F_q:
  // split the ambient space until every invariant subspace is a line.
  std::vector<Mat> spaces;
  {
    Mat full(h, Vec(h, 0));
    for (int i = 0; i < h; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < h; ++i) {
    bool any_big = false;
    for (const Mat& S : spaces) any_big = any_big || S.size() > 1;
    if (!any_big) break;

    Mat Mi(h, Vec(h, 0));
    for (int j = 0; j < h; ++j) {
      for (int k = 0; k < h; ++k) Mi[j][k] = static_cast<u64>(a[i][j][k] % static_cast<long>(q));
    }

    std::vector<Mat> next;
    for (Mat& S : spaces) {
      const std::size_t d = S.size();
      if (d == 1) {
        next.push_back(std::move(S));
        continue;
      }
      // Pivot columns of the RREF basis give coordinates directly.
      Mat basis = S;
      std::vector<int> pivots = rref(basis, q);
      Mat R(d, Vec(d, 0));  // action: M_i b_r = sum_s R[s][r] b_s
      for (std::size_t r = 0; r < d; ++r) {
        Vec w = mat_vec(Mi, basis[r], q);
        Vec residue = w;
        for (std::size_t s = 0; s < d; ++s) {
          u64 coord = w[pivots[s]];
          R[s][r] = coord;
          for (std::size_t c = 0; c < w.size(); ++c) {
            u64 sub = mulmod_u64(coord, basis[s][c], q);
            residue[c] = (residue[c] >= sub) ? residue[c] - sub : residue[c] + q - sub;
          }
        }
        for (u64 v : residue) {
          if (v != 0) throw std::logic_error("class-algebra subspace is not invariant");
        }
      }

      Vec poly = char_poly(R, q);
      std::size_t split_total = 0;
      for (u64 lambda = 0; lambda < q; ++lambda) {
        if (eval_poly(poly, lambda, q) != 0) continue;
        // Kernel of (R - lambda I).
        Mat K(d, Vec(d, 0));
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) {
            K[r][c] = (r == c) ? (R[r][c] + q - lambda) % q : R[r][c];
          }
        }
        Mat Kc = K;
        std::vector<int> kp = rref(Kc, q);
        std::size_t kdim = d - Kc.size();
        if (kdim == 0) continue;
        // Free columns parametrize the kernel.
        std::vector<bool> is_pivot(d, false);
        for (int p : kp) is_pivot[p] = true;
        Mat sub;
        for (std::size_t free = 0; free < d; ++free) {
          if (is_pivot[free]) continue;
          Vec coords(d, 0);
          coords[free] = 1;
          for (std::size_t r = 0; r < kp.size(); ++r) {
            coords[kp[r]] = (q - Kc[r][free]) % q;
          }
          // Map back to the ambient space.
          Vec ambient(h, 0);
          for (std::size_t s = 0; s < d; ++s) {
            if (coords[s] == 0) continue;
            for (std::size_t c = 0; c < static_cast<std::size_t>(h); ++c) {
              ambient[c] = (ambient[c] + mulmod_u64(coords[s], basis[s][c], q)) % q;
            }
          }
          sub.push_back(std::move(ambient));
        }
        rref(sub, q);
        split_total += sub.size();
        next.push_back(std::move(sub));
      }
      if (split_total != d) throw std::logic_error("class-algebra matrix failed to diagonalize");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != h) {
    throw std::logic_error("expected one common eigenvector per class");
  }

  // Normalize each eigenvector so its identity-class entry is 1, recover the
  // degree from sum_k w_k w_{k*} / |C_k| = |G| / d^2, then lift each value
  // from eigenvalue multiplicities.
  std::vector<Vec> omega(h);
  for (int t = 0; t < h; ++t) {
    Vec v = spaces[t][0];
    if (spaces[t].size() != 1 || v[0] == 0) {
      throw std::logic_error("malformed eigenvector for character lifting");
    }
    u64 scale = invmod_u64(v[0], q);
    for (u64& x : v) x = mulmod_u64(x, scale, q);
    omega[t] = std::move(v);
  }

  std::vector<u64> size_mod(h), size_inv(h);
  for (int k = 0; k < h; ++k) {
    size_mod[k] = static_cast<u64>(G.classes()[k].size % static_cast<long>(q));
    size_inv[k] = invmod_u64(size_mod[k], q);
  }

  CharacterTable T;
  T.group_name = G.name();
  T.group_order = Int(order);
  T.exponent = m;
  for (int k = 0; k < h; ++k) {
    T.classes.push_back(TableClass{G.classes()[k].cycle_type, Int(G.classes()[k].size)});
  }
  T.power_classes = power_classes;

  long degree_square_sum = 0;
  std::vector<std::vector<Cyclotomic>> rows(h);
  for (int t = 0; t < h; ++t) {
    u64 S = 0;
    for (int k = 0; k < h; ++k) {
      int kinv = power_classes[k].back();  // class of rep^{o-1} = rep^{-1}
      S = (S + mulmod_u64(mulmod_u64(omega[t][k], omega[t][kinv], q), size_inv[k], q)) % q;
    }
    u64 dsq = mulmod_u64(static_cast<u64>(order % static_cast<long>(q)), invmod_u64(S, q), q);
    long degree = -1;
    for (u64 d = 1; 2 * d < q; ++d) {
      if (mulmod_u64(d, d, q) == dsq) {
        degree = static_cast<long>(d);
        break;
      }
    }
    if (degree < 1) throw std::logic_error("character degree not recoverable");
    degree_square_sum += degree * degree;

    // chi mod q on every class.
    Vec chi_mod(h);
    for (int k = 0; k < h; ++k) {
      chi_mod[k] = mulmod_u64(mulmod_u64(static_cast<u64>(degree), omega[t][k], q), size_inv[k], q);
    }

    rows[t].reserve(h);
    for (int k = 0; k < h; ++k) {
      const auto& cycle = power_classes[k];
      const long o = static_cast<long>(cycle.size());
      const long stride = m / o;
      const u64 inv_o = invmod_u64(static_cast<u64>(o % static_cast<long>(q)), q);
      std::vector<Rat> mult(o, Rat(0));
      for (long j = 0; j < o; ++j) {
        u64 acc = 0;
        for (long l = 0; l < o; ++l) {
          // z_o^{-jl} = z^{m - (stride j l mod m)}.
          long e = (stride * ((j * l) % o)) % m;
          u64 zinv = F.zpow[(m - e) % m];
          acc = (acc + mulmod_u64(chi_mod[cycle[l]], zinv, q)) % q;
        }
        u64 mu = mulmod_u64(acc, inv_o, q);
        if (mu > static_cast<u64>(degree)) {
          throw std::logic_error("eigenvalue multiplicity exceeds the degree");
        }
        mult[j] = Rat(static_cast<long>(mu));
      }
      rows[t].emplace_back(static_cast<int>(o), std::move(mult));
    }
    if (!(rows[t][0] == Cyclotomic(Rat(degree)))) {
      throw std::logic_error("lifted character value disagrees with its degree");
    }
  }
  if (degree_square_sum != order) {
    throw std::logic_error("character degrees fail the order identity");
  }

  // Canonical row order: trivial character first, then ascending by
  // (degree, value sequence).
  std::vector<int> row_order(h);
  std::iota(row_order.begin(), row_order.end(), 0);
  Cyclotomic one{Rat(1)};
  auto is_trivial = [&](int t) {
    for (int k = 0; k < h; ++k) {
      if (!(rows[t][k] == one)) return false;
    }
    return true;
  };
  std::stable_sort(row_order.begin(), row_order.end(), [&](int s, int t) {
    bool ts = is_trivial(s), tt = is_trivial(t);
    if (ts != tt) return ts;
    Rat ds = rows[s][0].rational_value(), dt = rows[t][0].rational_value();
    if (ds != dt) return ds < dt;
    for (int k = 0; k < h; ++k) {
      int c = Cyclotomic::compare(rows[s][k], rows[t][k]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  for (int t : row_order) T.values.push_back(std::move(rows[t]));

  if (!verify_orthogonality(T)) {
    throw std::logic_error("computed character table failed exact orthogonality");
  }
  return T;
}

bool verify_orthogonality(const CharacterTable& T) {
  const int h = T.size();
  std::vector<Rat> w = T.weights();
  for (int i = 0; i < h; ++i) {
    for (int j = i; j < h; ++j) {
      Cyclotomic sum;
      for (int k = 0; k < h; ++k) {
        sum += Cyclotomic(w[k]) * T.values[i][k] * T.values[j][k].conj();
      }
      if (!(sum == Cyclotomic(Rat(i == j ? 1 : 0)))) return false;
    }
  }
  return true;
}

bool verify_column_orthogonality(const CharacterTable& T) {
  const int h = T.size();
  for (int j = 0; j < h; ++j) {
    for (int k = j; k < h; ++k) {
      Cyclotomic sum;
      for (int i = 0; i < h; ++i) {
        sum += T.values[i][j] * T.values[i][k].conj();
      }
      Rat expected(0);
      if (j == k) {
        expected = Rat(T.group_order, T.classes[j].size);
        expected.canonicalize();
      }
      if (!(sum == Cyclotomic(expected))) return false;
    }
  }
  return true;
}

namespace {

std::vector<long> units_mod(long m) {
  std::vector<long> units;
  for (long k = 1; k < m; ++k) {
    if (std::gcd(k, m) == 1) units.push_back(k);
  }
  if (m == 1) units.push_back(0);  // the identity automorphism
  return units;
}

}  // namespace

std::vector<std::vector<int>> galois_orbits(const CharacterTable& T) {
  if (!T.has_power_maps()) {
    throw std::logic_error("galois orbits require class power maps (recompute the table)");
  }
  const int h = T.size();
  std::vector<int> orbit_of(h, -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < h; ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<int> orbit{i};
    orbit_of[i] = static_cast<int>(orbits.size());
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      int cur = orbit[head];
      for (long k : units_mod(T.exponent)) {
        // chi^{sigma_k}(C_j) = chi(C_j^k): match the permuted row.
        int found = -1;
        for (int cand = 0; cand < h && found < 0; ++cand) {
          bool equal = true;
          for (int j = 0; j < h && equal; ++j) {
            equal = T.values[cand][j] == T.values[cur][T.class_power(j, k)];
          }
          if (equal) found = cand;
        }
        if (found < 0) throw std::logic_error("galois image of a character is not in the table");
        if (orbit_of[found] < 0) {
          orbit_of[found] = orbit_of[i];
          orbit.push_back(found);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

RationalCharacterTable rational_character_table(const CharacterTable& T) {
  const int h = T.size();
  const auto orbits = galois_orbits(T);

  // Fuse classes under the power maps with unit exponents.
  std::vector<int> fused_of(h, -1);
  std::vector<std::vector<int>> fused;
  for (int j = 0; j < h; ++j) {
    if (fused_of[j] >= 0) continue;
    std::vector<int> group{j};
    fused_of[j] = static_cast<int>(fused.size());
    for (std::size_t head = 0; head < group.size(); ++head) {
      for (long k : units_mod(T.exponent)) {
        int img = T.class_power(group[head], k);
        if (fused_of[img] < 0) {
          fused_of[img] = fused_of[j];
          group.push_back(img);
        }
      }
    }
    std::sort(group.begin(), group.end());
    fused.push_back(std::move(group));
  }
  // Fused classes ordered by minimal member (members are canonical already).
  std::sort(fused.begin(), fused.end());

  if (fused.size() != orbits.size()) {
    throw std::logic_error("rational class count must equal rational character count");
  }

  RationalCharacterTable R;
  R.group_name = T.group_name;
  R.group_order = T.group_order;
  for (const auto& group : fused) {
    RationalClass c;
    c.cycle_type = T.classes[group[0]].cycle_type;
    c.size = 0;
    for (int j : group) {
      if (T.classes[j].cycle_type != c.cycle_type) {
        throw std::logic_error("fused classes must share a cycle type");
      }
      c.size += T.classes[j].size;
    }
    c.members = group;
    R.classes.push_back(std::move(c));
  }

  struct RowData {
    std::vector<Int> values;
    int orbit_size;
  };
  std::vector<RowData> rows;
  for (const auto& orbit : orbits) {
    RowData row;
    row.orbit_size = static_cast<int>(orbit.size());
    for (const auto& group : fused) {
      Cyclotomic sum;
      for (int i : orbit) sum += T.values[i][group[0]];
      // Orbit sums are rational integers, constant on fused classes.
      Rat value = sum.rational_value();
      if (value.get_den() != 1) throw std::logic_error("orbit sum is not an integer");
      for (int j : group) {
        Cyclotomic check;
        for (int i : orbit) check += T.values[i][j];
        if (!(check == sum)) throw std::logic_error("orbit sum varies across a fused class");
      }
      row.values.push_back(value.get_num());
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RowData& x, const RowData& y) {
    bool tx = std::all_of(x.values.begin(), x.values.end(), [](const Int& v) { return v == 1; });
    bool ty = std::all_of(y.values.begin(), y.values.end(), [](const Int& v) { return v == 1; });
    if (tx != ty) return tx;
    if (x.values[0] != y.values[0]) return x.values[0] < y.values[0];
    return x.values < y.values;
  });
  for (RowData& row : rows) {
    R.rows.push_back(std::move(row.values));
    R.orbit_sizes.push_back(row.orbit_size);
  }
  return R;
}

namespace {

nlohmann::ordered_json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return nlohmann::ordered_json(v.get_si());
  return nlohmann::ordered_json(v.get_str());
}

Int json_to_int(const nlohmann::json& v, const char* what) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError(std::string("invalid integer for ") + what);
    }
  }
  throw ParseError(std::string(what) + " must be an integer (or integer string)");
}

nlohmann::ordered_json classes_to_json(const std::vector<TableClass>& classes) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const TableClass& c : classes) {
    nlohmann::ordered_json entry;
    entry["cycle_type"] = c.cycle_type;
    entry["size"] = int_to_json(c.size);
    out.push_back(std::move(entry));
  }
  return out;
}

double max_orthogonality_deviation(const CharacterTable& T) {
  const int h = T.size();
  std::vector<Rat> w = T.weights();
  double worst = 0.0;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      std::complex<double> sum(0.0, 0.0);
      for (int k = 0; k < h; ++k) {
        sum += to_double(w[k]) * T.values[i][k].approx() * std::conj(T.values[j][k].approx());
      }
      sum -= (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

}  // namespace

std::string export_table_json(const CharacterTable& T) {
  nlohmann::ordered_json doc;
  doc["group"] = T.group_name;
  doc["order"] = int_to_json(T.group_order);
  doc["h"] = T.size();
  doc["exponent"] = T.exponent;
  doc["classes"] = classes_to_json(T.classes);
  nlohmann::ordered_json chars = nlohmann::ordered_json::array();
  for (const auto& row : T.values) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cyclotomic& v : row) {
      r.push_back(v.promote(std::lcm(v.order(), static_cast<int>(T.exponent))).to_string());
    }
    chars.push_back(std::move(r));
  }
  doc["characters"] = std::move(chars);
  if (T.has_power_maps()) doc["power_classes"] = T.power_classes;
  return doc.dump(2) + "\n";
}

std::string export_rational_table_json(const RationalCharacterTable& T) {
  nlohmann::ordered_json doc;
  doc["group"] = T.group_name;
  doc["rational"] = true;
  doc["order"] = int_to_json(T.group_order);
  doc["h"] = T.rank();
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const RationalClass& c : T.classes) {
    nlohmann::ordered_json entry;
    entry["cycle_type"] = c.cycle_type;
    entry["size"] = int_to_json(c.size);
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : T.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Int& v : row) r.push_back(int_to_json(v));
    rows.push_back(std::move(r));
  }
  doc["characters"] = std::move(rows);
  doc["orbit_sizes"] = T.orbit_sizes;
  return doc.dump(2) + "\n";
}

namespace {

std::vector<TableClass> parse_table_classes(const nlohmann::json& doc, Int* size_sum) {
  std::vector<TableClass> out;
  if (!doc.is_array() || doc.empty()) throw ParseError("classes must be a nonempty array");
  *size_sum = 0;
  for (const auto& entry : doc) {
    TableClass c;
    if (!entry.contains("cycle_type") || !entry["cycle_type"].is_array()) {
      throw ParseError("every class needs a cycle_type array");
    }
    for (const auto& part : entry["cycle_type"]) c.cycle_type.push_back(part.get<int>());
    std::sort(c.cycle_type.begin(), c.cycle_type.end());
    if (!entry.contains("size")) throw ParseError("every class needs a size");
    c.size = json_to_int(entry["size"], "class size");
    if (c.size < 1) throw ParseError("class sizes must be positive");
    *size_sum += c.size;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

ImportedTable import_table_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid character table JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("character table JSON must be an object");

  ImportedTable result;
  result.is_rational = doc.value("rational", false);
  std::string name = doc.contains("group") ? doc["group"].get<std::string>() : "";
  Int order = json_to_int(doc.contains("order") ? doc["order"] : nlohmann::json(0), "order");
  if (order < 1) throw ParseError("order must be positive");

  if (result.is_rational) {
    RationalCharacterTable& T = result.rational;
    T.group_name = name;
    T.group_order = order;
    Int size_sum;
    std::vector<TableClass> classes = parse_table_classes(doc.at("classes"), &size_sum);
    if (size_sum != order) throw ParseError("class sizes must sum to the group order");
    for (TableClass& c : classes) {
      T.classes.push_back(RationalClass{std::move(c.cycle_type), c.size, {}});
    }
    const auto& rows = doc.at("characters");
    if (!rows.is_array() || rows.size() != T.classes.size()) {
      throw ParseError("rational table must be square (one row per fused class)");
    }
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != T.classes.size()) {
        throw ParseError("rational table must be square");
      }
      std::vector<Int> r;
      for (const auto& v : row) r.push_back(json_to_int(v, "table entry"));
      T.rows.push_back(std::move(r));
    }
    // Orthogonality: Gram under the fused weights must be diagonal with
    // positive integer entries (the orbit sizes).
    const int r = T.rank();
    std::vector<Rat> w = T.weights();
    for (int i = 0; i < r; ++i) {
      for (int j = i; j < r; ++j) {
        Rat sum(0);
        for (int k = 0; k < r; ++k) sum += w[k] * Rat(T.rows[i][k] * T.rows[j][k]);
        sum.canonicalize();
        if (i != j && sum != 0) {
          throw ParseError("imported rational table fails orthogonality (off-diagonal " +
                           galstat::to_string(sum) + " at rows " + std::to_string(i) + "," +
                           std::to_string(j) + ")");
        }
        if (i == j) {
          if (sum.get_den() != 1 || sum <= 0) {
            throw ParseError("imported rational table has non-integer character norm " +
                             galstat::to_string(sum));
          }
          T.orbit_sizes.push_back(static_cast<int>(sum.get_num().get_si()));
        }
      }
    }
    if (doc.contains("orbit_sizes")) {
      std::vector<int> claimed = doc["orbit_sizes"].get<std::vector<int>>();
      if (claimed != T.orbit_sizes) {
        throw ParseError("declared orbit sizes disagree with the computed Gram diagonal");
      }
    }
    return result;
  }

  CharacterTable& T = result.cyclotomic;
  T.group_name = name;
  T.group_order = order;
  T.exponent = doc.at("exponent").get<long>();
  if (T.exponent < 1) throw ParseError("exponent must be positive");
  Int size_sum;
  T.classes = parse_table_classes(doc.at("classes"), &size_sum);
  if (size_sum != order) throw ParseError("class sizes must sum to the group order");
  const auto& chars = doc.at("characters");
  const std::size_t h = T.classes.size();
  if (!chars.is_array() || chars.size() != h) {
    throw ParseError("character table must be square (h rows, h classes)");
  }
  for (const auto& row : chars) {
    if (!row.is_array() || row.size() != h) throw ParseError("character table must be square");
    std::vector<Cyclotomic> r;
    for (const auto& v : row) {
      if (!v.is_string()) throw ParseError("character values must be strings");
      r.push_back(Cyclotomic::parse(v.get<std::string>(), static_cast<int>(T.exponent)));
    }
    T.values.push_back(std::move(r));
  }
  if (doc.contains("power_classes")) {
    T.power_classes = doc["power_classes"].get<std::vector<std::vector<int>>>();
    if (T.power_classes.size() != h) throw ParseError("power_classes must have one row per class");
    for (const auto& row : T.power_classes) {
      if (row.empty()) throw ParseError("power_classes rows must be nonempty");
      for (int c : row) {
        if (c < 0 || static_cast<std::size_t>(c) >= h) {
          throw ParseError("power_classes entries must be class indices");
        }
      }
    }
  }
  if (!verify_orthogonality(T)) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", max_orthogonality_deviation(T));
    throw ParseError(std::string("imported table fails exact orthogonality; max deviation ~ ") +
                     buffer);
  }
  return result;
}

bool tables_match_up_to_permutation(const CharacterTable& A, const CharacterTable& B) {
  const int h = A.size();
  if (B.size() != h) return false;

  // Canonical per-value keys require every value promoted to one shared order.
  long M = std::lcm(A.exponent, B.exponent);
  for (const auto& row : A.values) {
    for (const Cyclotomic& v : row) M = std::lcm(M, static_cast<long>(v.order()));
  }
  for (const auto& row : B.values) {
    for (const Cyclotomic& v : row) M = std::lcm(M, static_cast<long>(v.order()));
  }
  auto key_of = [&](const Cyclotomic& v) { return v.promote(static_cast<int>(M)).to_string(); };
  auto weights_a = A.weights();
  auto weights_b = B.weights();

  std::vector<std::vector<std::string>> ka(h, std::vector<std::string>(h)),
      kb(h, std::vector<std::string>(h));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      ka[i][j] = key_of(A.values[i][j]);
      kb[i][j] = key_of(B.values[i][j]);
    }
  }
  // Column profiles: weight plus sorted multiset of values.
  auto profile = [&](const std::vector<std::vector<std::string>>& keys,
                     const std::vector<Rat>& weights, int j) {
    std::vector<std::string> p;
    p.push_back(galstat::to_string(weights[j]));
    std::vector<std::string> vals;
    for (int i = 0; i < h; ++i) vals.push_back(keys[i][j]);
    std::sort(vals.begin(), vals.end());
    for (auto& v : vals) p.push_back(std::move(v));
    return p;
  };
  std::vector<std::vector<std::string>> pa(h), pb(h);
  for (int j = 0; j < h; ++j) {
    pa[j] = profile(ka, weights_a, j);
    pb[j] = profile(kb, weights_b, j);
  }

  std::vector<int> assign(h, -1);  // B column -> A column
  std::vector<bool> used(h, false);

  auto rows_match_under = [&]() {
    // Permute B's columns, then compare the two tables as row multisets.
    std::vector<std::vector<std::string>> bperm(h, std::vector<std::string>(h));
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < h; ++j) bperm[i][assign[j]] = kb[i][j];
    }
    std::vector<std::vector<std::string>> arows = ka, brows = bperm;
    std::sort(arows.begin(), arows.end());
    std::sort(brows.begin(), brows.end());
    return arows == brows;
  };

  std::function<bool(int)> place = [&](int j) -> bool {
    if (j == h) return rows_match_under();
    for (int c = 0; c < h; ++c) {
      if (used[c] || pa[c] != pb[j]) continue;
      used[c] = true;
      assign[j] = c;
      if (place(j + 1)) return true;
      used[c] = false;
      assign[j] = -1;
    }
    return false;
  };
  return place(0);
}

}  // namespace galstat
