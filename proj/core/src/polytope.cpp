#include <boxlogic/polytope.hpp>

#include <boxlogic/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace boxlogic {

namespace {

using Row = std::vector<Rational>;
using IntRow = std::vector<Integer>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<Row>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Integer basis of {y : m y = 0}, one vector per free column, as columns of
/// the returned row-major matrix (rows indexed by y coordinates).
std::vector<IntRow> integer_nullspace(std::vector<Row> m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  std::vector<IntRow> basis(cols, IntRow(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    Row v(cols, Rational(0));
    v[free_cols[k]] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_cols[k]];
    Integer scale = 1;
    for (const auto& x : v) scale = lcm(scale, denominator(x));
    for (std::size_t i = 0; i < cols; ++i) basis[i][k] = numerator(Rational(v[i] * scale));
  }
  return basis;
}

void make_primitive(IntRow& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

constexpr std::uint64_t kPrime = 0xffffffff00000001ull;

__extension__ typedef unsigned __int128 Wide;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(const Integer& x) {
  Integer r = x % Integer(kPrime);
  if (r < 0) r += Integer(kPrime);
  return r.convert_to<std::uint64_t>();
}

/// Rank modulo a prime. Never exceeds the rank over the rationals.
std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const std::uint64_t inv = pow_mod(m[r][c], kPrime - 2);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const std::uint64_t f = mul_mod(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t s = mul_mod(f, m[r][j]);
        m[i][j] = m[i][j] >= s ? m[i][j] - s : m[i][j] + (kPrime - s);
      }
    }
    ++r;
  }
  return r;
}

struct Ray {
  IntRow y;
  PointSet zeros;
};

class DoubleDescription {
 public:
  DoubleDescription(std::vector<IntRow> basis, AdjacencyTest test)
      : basis_(std::move(basis)), test_(test) {
    rows_ = basis_.size();
    dim_ = rows_ == 0 ? 0 : basis_[0].size();
    basis_mod_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& x : basis_[i]) basis_mod_[i].push_back(to_mod(x));
  }

  std::vector<Ray> run(std::size_t& max_rays) {
    if (dim_ == 0) return {};
    std::vector<std::size_t> initial;
    {
      std::vector<Row> picked;
      for (std::size_t i = 0; i < rows_ && initial.size() < dim_; ++i) {
        auto trial = picked;
        trial.emplace_back(basis_[i].begin(), basis_[i].end());
        if (matrix_rank(trial) == trial.size()) {
          picked = std::move(trial);
          initial.push_back(i);
        }
      }
      if (initial.size() != dim_) throw TheoremViolation("non-negativity rows do not span");
      processed_ = PointSet(rows_);
      for (auto i : initial) processed_.set(i);
      // Ray j of the simplicial cone: B z = e_j, i.e. column j of B^-1.
      for (std::size_t j = 0; j < dim_; ++j) {
        std::vector<Row> aug = picked;
        for (std::size_t k = 0; k < dim_; ++k) aug[k].push_back(k == j ? Rational(1) : Rational(0));
        rref(aug, dim_);
        Row z(dim_);
        for (std::size_t k = 0; k < dim_; ++k) z[k] = aug[k][dim_];
        rays_.push_back(make_ray(z));
      }
    }
    max_rays = rays_.size();
    for (std::size_t k = 0; k < rows_; ++k) {
      if (processed_.test(k)) continue;
      insert(k);
      processed_.set(k);
      max_rays = std::max(max_rays, rays_.size());
    }
    return std::move(rays_);
  }

 private:
  Ray make_ray(const Row& z) {
    Integer scale = 1;
    for (const auto& x : z) scale = lcm(scale, denominator(x));
    Ray ray;
    ray.y.assign(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational v = 0;
      for (std::size_t k = 0; k < dim_; ++k) v += Rational(basis_[i][k]) * z[k];
      ray.y[i] = numerator(Rational(v * scale));
    }
    make_primitive(ray.y);
    ray.zeros = zero_set(ray.y);
    return ray;
  }

  PointSet zero_set(const IntRow& y) const {
    PointSet z(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (processed_.test(i) && y[i] == 0) z.set(i);
    return z;
  }

  bool adjacent(std::size_t p, std::size_t n, const PointSet& common) const {
    if (test_ == AdjacencyTest::Combinatorial) {
      for (std::size_t r = 0; r < rays_.size(); ++r) {
        if (r == p || r == n) continue;
        if (common.is_subset_of(rays_[r].zeros)) return false;
      }
      return true;
    }
    std::vector<std::vector<std::uint64_t>> m;
    common.for_each([&](std::size_t i) { m.push_back(basis_mod_[i]); });
    if (rank_mod(std::move(m), dim_) == dim_ - 2) return true;
    std::vector<Row> exact;
    common.for_each([&](std::size_t i) { exact.emplace_back(basis_[i].begin(), basis_[i].end()); });
    return matrix_rank(std::move(exact)) == dim_ - 2;
  }

  void insert(std::size_t k) {
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      const int s = rays_[r].y[k].sign();
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    std::vector<Ray> next;
    for (auto r : pos) next.push_back(rays_[r]);
    for (auto r : zero) next.push_back(rays_[r]);
    for (auto p : pos) {
      for (auto n : neg) {
        PointSet common = rays_[p].zeros;
        common &= rays_[n].zeros;
        if (common.count() + 2 < dim_) continue;
        if (!adjacent(p, n, common)) continue;
        Ray ray;
        ray.y.resize(rows_);
        const Integer& sp = rays_[p].y[k];
        const Integer& sn = rays_[n].y[k];
        for (std::size_t i = 0; i < rows_; ++i) ray.y[i] = sp * rays_[n].y[i] - sn * rays_[p].y[i];
        make_primitive(ray.y);
        ray.zeros = std::move(common);
        ray.zeros.set(k);
        next.push_back(std::move(ray));
      }
    }
    for (auto& r : next) {
      if (r.y[k] == 0) r.zeros.set(k);
    }
    rays_ = std::move(next);
  }

  std::vector<IntRow> basis_;
  std::vector<std::vector<std::uint64_t>> basis_mod_;
  AdjacencyTest test_;
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  PointSet processed_;
  std::vector<Ray> rays_;
};

std::string variable_name(const BoxWorldSpec& spec, const AtomId& id) {
  return "p_a" + std::to_string(id.a) + "_b" + std::to_string(id.b) + "_" +
         spec.left()[id.a][id.alpha] + "_" + spec.right()[id.b][id.beta];
}

}  // namespace

std::string HRepresentation::to_json() const {
  nlohmann::json j;
  j["scenario"] = nlohmann::json::parse(spec.to_json());
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& id : variables) vars.push_back(variable_name(spec, id));
  j["variables"] = std::move(vars);
  j["nonnegative"] = true;
  nlohmann::json eqs = nlohmann::json::array();
  for (std::size_t r = 0; r < equalities.size(); ++r) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (equalities[r][i] != 0) coeffs[variable_name(spec, variables[i])] = to_string(equalities[r][i]);
    }
    eqs.push_back({{"label", labels[r]}, {"coefficients", std::move(coeffs)},
                   {"rhs", to_string(rhs[r])}});
  }
  j["equalities"] = std::move(eqs);
  return j.dump(2);
}

HRepresentation ns_polytope(const BoxWorldSpec& spec, const Limits& limits) {
  if (spec.atom_count() > limits.max_polytope_vars) {
    throw CapExceeded("polytope has " + std::to_string(spec.atom_count()) +
                      " variables, cap is " + std::to_string(limits.max_polytope_vars));
  }
  HRepresentation h;
  h.spec = spec;
  const PRState shape = PRState::for_spec(spec);
  for (std::size_t a = 0; a < spec.left_inputs(); ++a)
    for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
      for (std::size_t b = 0; b < spec.right_inputs(); ++b)
        for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
          h.variables.push_back({a, alpha, b, beta});
  std::sort(h.variables.begin(), h.variables.end());
  const std::size_t n = h.variables.size();
  auto add = [&](Row row, Rational rhs, std::string label) {
    h.equalities.push_back(std::move(row));
    h.rhs.push_back(std::move(rhs));
    h.labels.push_back(std::move(label));
  };

  for (std::size_t a = 0; a < spec.left_inputs(); ++a) {
    for (std::size_t b = 0; b < spec.right_inputs(); ++b) {
      Row row(n, Rational(0));
      for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
        for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
          row[shape.variable({a, alpha, b, beta})] = 1;
      add(std::move(row), 1, "norm a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
  }
  for (std::size_t b = 0; b < spec.right_inputs(); ++b)
    for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
      for (std::size_t a = 1; a < spec.left_inputs(); ++a) {
        Row row(n, Rational(0));
        for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
          row[shape.variable({a, alpha, b, beta})] += 1;
        for (std::size_t alpha = 0; alpha < spec.left_outcomes(0); ++alpha)
          row[shape.variable({0, alpha, b, beta})] -= 1;
        add(std::move(row), 0,
            "ns right b=" + std::to_string(b) + " beta=" + std::to_string(beta) +
                " a=" + std::to_string(a));
      }
  for (std::size_t a = 0; a < spec.left_inputs(); ++a)
    for (std::size_t alpha = 0; alpha < spec.left_outcomes(a); ++alpha)
      for (std::size_t b = 1; b < spec.right_inputs(); ++b) {
        Row row(n, Rational(0));
        for (std::size_t beta = 0; beta < spec.right_outcomes(b); ++beta)
          row[shape.variable({a, alpha, b, beta})] += 1;
        for (std::size_t beta = 0; beta < spec.right_outcomes(0); ++beta)
          row[shape.variable({a, alpha, 0, beta})] -= 1;
        add(std::move(row), 0,
            "ns left a=" + std::to_string(a) + " alpha=" + std::to_string(alpha) +
                " b=" + std::to_string(b));
      }
  return h;
}

VertexEnumeration enumerate_vertices(const HRepresentation& h, AdjacencyTest adjacency) {
  const std::size_t n = h.dimension();
  // Cone {(x, t) >= 0 : A x - rhs t = 0}; vertices are the rays with t > 0.
  std::vector<Row> homogeneous;
  for (std::size_t r = 0; r < h.equalities.size(); ++r) {
    Row row = h.equalities[r];
    row.push_back(-h.rhs[r]);
    homogeneous.push_back(std::move(row));
  }
  auto basis = integer_nullspace(std::move(homogeneous), n + 1);

  VertexEnumeration out;
  DoubleDescription dd(std::move(basis), adjacency);
  for (const auto& ray : dd.run(out.max_intermediate_rays)) {
    const Integer& t = ray.y[n];
    if (t.sign() <= 0) {
      throw TheoremViolation("polytope is unbounded along a recession direction");
    }
    std::vector<Rational> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(ray.y[i], t);
    out.vertices.push_back(std::move(v));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.affine_dimension = affine_dimension(out.vertices);
  return out;
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  return rref(rows, cols).size();
}

std::size_t affine_dimension(std::span<const std::vector<Rational>> points) {
  if (points.size() < 2) return 0;
  std::vector<Row> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Row d(points[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
    diffs.push_back(std::move(d));
  }
  return matrix_rank(std::move(diffs));
}

bool is_deterministic(std::span<const Rational> vertex) {
  return std::all_of(vertex.begin(), vertex.end(),
                     [](const Rational& x) { return x == 0 || x == 1; });
}

bool satisfies(const HRepresentation& h, std::span<const Rational> point) {
  if (point.size() != h.dimension()) return false;
  for (const auto& x : point)
    if (x < 0) return false;
  for (std::size_t r = 0; r < h.equalities.size(); ++r) {
    Rational s = 0;
    for (std::size_t i = 0; i < point.size(); ++i) s += h.equalities[r][i] * point[i];
    if (s != h.rhs[r]) return false;
  }
  return true;
}

PRState to_pr_state(const HRepresentation& h, std::span<const Rational> vertex) {
  if (vertex.size() != h.dimension()) throw InvalidInput("vertex has the wrong length");
  PRState s = PRState::for_spec(h.spec);
  for (std::size_t i = 0; i < vertex.size(); ++i) s.at(h.variables[i]) = vertex[i];
  return s;
}

std::string vertices_csv(const HRepresentation& h, const VertexEnumeration& v) {
  std::ostringstream out;
  out << "index,class";
  for (const auto& id : h.variables) out << ',' << variable_name(h.spec, id);
  out << '\n';
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    out << i << ',' << (is_deterministic(v.vertices[i]) ? "deterministic" : "nondeterministic");
    for (const auto& x : v.vertices[i]) out << ',' << to_string(x);
    out << '\n';
  }
  return out.str();
}

CheckResult check_order_determining(const Logic& logic, std::span<const LogicState> states) {
  CheckResult result("order_determining");
  const std::size_t n = logic.size();
  const std::size_t m = states.size();
  for (const auto& s : states) {
    if (s.values.size() != n) throw InvalidInput("state does not match the logic");
  }

  // Per state, scale values to a common denominator; element-major layout so
  // the scan for one pair touches consecutive memory.
  std::vector<std::int64_t> scaled(n * m);
  bool fits = true;
  for (std::size_t v = 0; v < m && fits; ++v) {
    Integer den = 1;
    for (const auto& x : states[v].values) den = lcm(den, denominator(x));
    for (std::size_t e = 0; e < n; ++e) {
      const Integer num = numerator(states[v].values[e]) * (den / denominator(states[v].values[e]));
      if (abs(num) > Integer(INT64_MAX)) {
        fits = false;
        break;
      }
      scaled[e * m + v] = num.convert_to<std::int64_t>();
    }
  }
  auto greater = [&](ElementIndex p, ElementIndex q, std::size_t v) {
    if (fits) return scaled[p * m + v] > scaled[q * m + v];
    return states[v].values[p] > states[v].values[q];
  };

  std::size_t skipped = 0;
  std::size_t last = 0;
  for (ElementIndex p = 0; p < n; ++p) {
    for (ElementIndex q = 0; q < n; ++q) {
      if (logic.leq(p, q)) {
        ++skipped;
        continue;
      }
      ++result.checked;
      bool found = m > 0 && greater(p, q, last);
      for (std::size_t v = 0; v < m && !found; ++v) {
        if (greater(p, q, v)) {
          found = true;
          last = v;
        }
      }
      if (!found) {
        result.fail("no state separates " + describe(logic, p) + " from " + describe(logic, q));
      }
    }
  }
  result.note("states", std::to_string(m));
  result.note("skipped_ordered_pairs", std::to_string(skipped));
  return result;
}

}  // namespace boxlogic
