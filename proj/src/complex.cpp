#include "harmonica/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace harmonica {

ChainComplex::ChainComplex(std::size_t vertices) : cells_{vertices}, labels_(1) {
  d_.emplace_back(0, vertices, BigInt(0));
  d_.emplace_back(vertices, 0, BigInt(0));
}

ChainComplex::ChainComplex(std::vector<Matrix<BigInt>> boundaries) {
  if (boundaries.empty()) {
    *this = ChainComplex(std::size_t{0});
    return;
  }
  cells_.push_back(boundaries.front().rows());
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].rows() != cells_.back()) {
      throw Error(ErrorCode::InvalidArgument, "d_" + std::to_string(i + 1) + " has " +
                                                  std::to_string(boundaries[i].rows()) + " rows, expected " +
                                                  std::to_string(cells_.back()));
    }
    cells_.push_back(boundaries[i].cols());
  }
  d_.emplace_back(0, cells_.front(), BigInt(0));
  for (auto& b : boundaries) d_.push_back(std::move(b));
  d_.emplace_back(cells_.back(), 0, BigInt(0));
  labels_.resize(cells_.size());
  if (!boundary_squares_to_zero(*this)) throw Error(ErrorCode::InvalidArgument, "boundary maps do not compose to zero");
}

const Matrix<BigInt>& ChainComplex::boundary(std::size_t k) const {
  if (k >= d_.size()) throw Error(ErrorCode::DegreeOutOfRange, "no boundary map d_" + std::to_string(k));
  return d_[k];
}

const std::vector<std::string>& ChainComplex::labels(std::size_t k) const {
  static const std::vector<std::string> none;
  return k < labels_.size() ? labels_[k] : none;
}

void ChainComplex::set_labels(std::size_t k, std::vector<std::string> names) {
  require_degree(k);
  if (!names.empty() && names.size() != cells_[k]) {
    throw Error(ErrorCode::InvalidArgument, "label count does not match the number of " + std::to_string(k) + "-cells");
  }
  labels_[k] = std::move(names);
}

ChainComplex ChainComplex::dual() const {
  const std::size_t top = top_degree();
  std::vector<Matrix<BigInt>> maps;
  for (std::size_t j = 1; j <= top; ++j) maps.push_back(d_[top - j + 1].transpose());
  ChainComplex out = maps.empty() ? ChainComplex(cells_.front()) : ChainComplex(std::move(maps));
  for (std::size_t j = 0; j <= top; ++j) out.labels_[j] = labels_[top - j];
  return out;
}

void ChainComplex::require_degree(std::size_t k) const {
  if (k > top_degree()) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "degree " + std::to_string(k) + " exceeds top degree " + std::to_string(top_degree()));
  }
}

bool boundary_squares_to_zero(const ChainComplex& x) {
  for (std::size_t k = 1; k < x.top_degree(); ++k) {
    const auto& a = x.boundary(k);
    const auto& b = x.boundary(k + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) {
        BigInt s = 0;
        for (std::size_t m = 0; m < a.cols(); ++m)
          if (sgn(a(i, m)) != 0 && sgn(b(m, j)) != 0) s += a(i, m) * b(m, j);
        if (sgn(s) != 0) return false;
      }
    }
  }
  return true;
}

FieldComplex instantiate(const ChainComplex& x, const FieldSpec& field) {
  FieldComplex out{field, {}};
  for (std::size_t k = 0; k <= x.top_degree() + 1; ++k) out.boundaries.push_back(x.boundary_matrix(k).over(field));
  return out;
}

Chain Chain::zero(const FieldSpec& field, std::size_t degree, std::size_t cells) {
  return Chain{degree, Vector(cells, Scalar::zero(field))};
}

Chain Chain::from_integers(const FieldSpec& field, std::size_t degree, const std::vector<long>& coeffs) {
  Chain c{degree, {}};
  for (long v : coeffs) c.coefficients.emplace_back(field, v);
  return c;
}

FieldSpec Chain::field() const {
  if (coefficients.empty()) throw Error(ErrorCode::InvalidArgument, "empty chain carries no field");
  return coefficients.front().field();
}

bool Chain::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<std::size_t> Chain::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].is_zero()) out.push_back(i);
  return out;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<long>>& facets) {
  std::vector<std::set<Simplex>> by_dim;
  for (const auto& raw : facets) {
    if (raw.empty()) throw Error(ErrorCode::MalformedFacet, "empty facet");
    if (raw.size() > 24) throw Error(ErrorCode::MalformedFacet, "facet dimension too large to close");
    Simplex f;
    for (long v : raw) {
      if (v < 0) throw Error(ErrorCode::MalformedFacet, "negative vertex label " + std::to_string(v));
      f.push_back(static_cast<std::size_t>(v));
    }
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw Error(ErrorCode::MalformedFacet, "facet repeats vertex " + std::to_string(*std::adjacent_find(f.begin(), f.end())));
    }
    if (by_dim.size() < f.size()) by_dim.resize(f.size());
    // Every nonempty subset, via bitmasks over the facet's vertices.
    const std::size_t n = f.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(f[i]);
      by_dim[face.size() - 1].insert(std::move(face));
    }
  }
  SimplicialComplex out;
  for (auto& s : by_dim) out.simplices_.emplace_back(s.begin(), s.end());
  out.rebuild_index();
  return out;
}

void SimplicialComplex::rebuild_index() {
  index_.assign(simplices_.size(), {});
  for (std::size_t d = 0; d < simplices_.size(); ++d)
    for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d].emplace(simplices_[d][i], i);
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t dim) const {
  static const std::vector<Simplex> none;
  return dim < simplices_.size() ? simplices_[dim] : none;
}

std::vector<std::size_t> SimplicialComplex::vertices() const {
  std::vector<std::size_t> out;
  for (const auto& v : simplices(0)) out.push_back(v.front());
  return out;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > index_.size()) return std::nullopt;
  auto it = index_[s.size() - 1].find(s);
  if (it == index_[s.size() - 1].end()) return std::nullopt;
  return it->second;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (std::size_t d = 0; d < simplices_.size(); ++d) {
    std::vector<bool> covered(simplices_[d].size(), false);
    if (d + 1 < simplices_.size()) {
      for (const auto& coface : simplices_[d + 1]) {
        for (std::size_t i = 0; i < coface.size(); ++i) {
          Simplex face = coface;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          covered[*index_of(face)] = true;
        }
      }
    }
    for (std::size_t i = 0; i < simplices_[d].size(); ++i)
      if (!covered[i]) out.push_back(simplices_[d][i]);
  }
  return out;
}

bool SimplicialComplex::is_closed_under_faces() const {
  for (std::size_t d = 1; d < simplices_.size(); ++d) {
    for (const auto& s : simplices_[d]) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        if (!index_of(face)) return false;
      }
    }
  }
  return true;
}

ChainComplex SimplicialComplex::chain_complex() const {
  if (simplices_.empty()) return ChainComplex(std::size_t{0});
  if (simplices_.size() == 1) return ChainComplex(simplices_[0].size());
  std::vector<Matrix<BigInt>> maps;
  for (std::size_t d = 1; d < simplices_.size(); ++d) {
    Matrix<BigInt> m(simplices_[d - 1].size(), simplices_[d].size(), BigInt(0));
    for (std::size_t j = 0; j < simplices_[d].size(); ++j) {
      const auto& s = simplices_[d][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        m(*index_of(face), j) = (i % 2 == 0) ? 1 : -1;
      }
    }
    maps.push_back(std::move(m));
  }
  return ChainComplex(std::move(maps));
}

std::size_t PointCloud::dimension() const {
  if (points.empty()) return 0;
  const std::size_t d = points.front().size();
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "point " + std::to_string(i) + " has dimension " +
                                                    std::to_string(points[i].size()) + ", expected " + std::to_string(d));
    }
  }
  return d;
}

std::vector<std::vector<double>> PointCloud::approximate() const {
  std::vector<std::vector<double>> out;
  for (const auto& p : points) {
    std::vector<double> q;
    for (const auto& x : p) q.push_back(x.get_d());
    out.push_back(std::move(q));
  }
  return out;
}

Rational parse_decimal(std::string_view text) {
  auto fail = [&]() -> Error { return Error(ErrorCode::Parse, "malformed decimal '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::size_t end = text.size();
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view s = text.substr(pos, end - pos);
  if (s.empty()) throw fail();
  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_point) throw fail();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i]);
      any_digit = true;
      if (seen_point) ++scale;
    } else {
      throw fail();
    }
  }
  if (!any_digit) throw fail();
  long exponent = 0;
  if (i < s.size()) {
    std::string exp(s.substr(i + 1));
    if (exp.empty()) throw fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != exp.size() || std::labs(exponent) > 10000) throw fail();
  }
  Rational value(BigInt(digits, 10), 1);
  long shift = exponent - scale;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

namespace {

// Decimal literal, or an exact fraction "p/q" as written for coordinates
// that have no terminating decimal form.
Rational parse_coordinate(const std::string& field) {
  if (field.find('/') == std::string::npos) return parse_decimal(field);
  const auto first = field.find_first_not_of(" \t\r");
  const auto last = field.find_last_not_of(" \t\r");
  Rational q;
  if (first == std::string::npos || q.set_str(field.substr(first, last - first + 1), 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::Parse, "malformed coordinate '" + field + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

PointCloud parse_point_cloud_csv(std::string_view text) {
  PointCloud cloud;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<Rational> point;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) point.push_back(parse_coordinate(field));
    cloud.points.push_back(std::move(point));
  }
  cloud.dimension();
  return cloud;
}

std::string point_cloud_to_csv(const PointCloud& cloud) {
  std::string out;
  for (const auto& p : cloud.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ',';
      // A denominator 2^a 5^b gives a terminating decimal with max(a, b)
      // places; anything else is written as a fraction.
      Rational q = p[i];
      BigInt rest = q.get_den();
      std::size_t twos = 0, fives = 0;
      while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
      }
      while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
      }
      if (rest != 1) {
        out += q.get_str();
        continue;
      }
      const std::size_t places = std::max(twos, fives);
      BigInt ten_pow;
      mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, places);
      q *= ten_pow;
      q.canonicalize();
      BigInt num = abs(q.get_num());
      std::string digits = num.get_str();
      if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
      if (places > 0) digits.insert(digits.size() - places, ".");
      if (sgn(q) < 0) out += '-';
      out += digits;
    }
    out += '\n';
  }
  return out;
}

SimplicialComplex vietoris_rips(const PointCloud& cloud, const Rational& radius, std::size_t max_dim) {
  if (max_dim < 1) throw Error(ErrorCode::InvalidArgument, "max_dim must be at least 1");
  if (sgn(radius) <= 0) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const std::size_t d = cloud.dimension();
  const std::size_t n = cloud.size();
  if (n == 0) return SimplicialComplex();
  const Rational threshold = radius * radius;
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> higher(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational dist2 = 0;
      for (std::size_t c = 0; c < d; ++c) {
        Rational diff = cloud.points[i][c] - cloud.points[j][c];
        dist2 += diff * diff;
      }
      if (dist2 <= threshold) {
        adjacent[i][j] = adjacent[j][i] = true;
        higher[i].push_back(j);
      }
    }
  }
  // Cliques grown in increasing vertex order; each clique is emitted once.
  std::vector<std::vector<long>> facets;
  std::vector<std::size_t> clique;
  auto extend = [&](auto&& self, const std::vector<std::size_t>& candidates) -> void {
    facets.emplace_back(clique.begin(), clique.end());
    if (clique.size() == max_dim + 1) return;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      std::size_t v = candidates[idx];
      std::vector<std::size_t> next;
      for (std::size_t jdx = idx + 1; jdx < candidates.size(); ++jdx)
        if (adjacent[v][candidates[jdx]]) next.push_back(candidates[jdx]);
      clique.push_back(v);
      self(self, next);
      clique.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    clique = {v};
    extend(extend, higher[v]);
  }
  return SimplicialComplex::from_facets(facets);
}

std::size_t betti(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  return x.cell_count(k) - integer_rank(x.boundary(k)) - integer_rank(x.boundary(k + 1));
}

std::size_t integral_free_rank(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  return x.cell_count(k) - smith_invariants(x.boundary(k)).size() - smith_invariants(x.boundary(k + 1)).size();
}

std::vector<BigInt> torsion_primes(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  std::set<BigInt> primes;
  for (const auto& a : smith_invariants(x.boundary(k + 1)))
    for (const auto& p : prime_factors(a)) primes.insert(p);
  return {primes.begin(), primes.end()};
}

bool has_p_torsion(const ChainComplex& x, std::size_t k, std::uint64_t p) {
  x.require_degree(k);
  for (const auto& a : smith_invariants(x.boundary(k + 1)))
    if (mpz_divisible_ui_p(a.get_mpz_t(), p)) return true;
  return false;
}

namespace {

Rational round6(double v) {
  Rational q(BigInt(static_cast<long>(std::llround(v * 1e6))), BigInt(1000000));
  q.canonicalize();
  return q;
}

}  // namespace

PointCloud sample_lemniscate(std::size_t n, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, noise);
  auto curve = [](double t) {
    const double denom = 1.0 + std::sin(t) * std::sin(t);
    return std::pair{std::cos(t) / denom, std::sin(t) * std::cos(t) / denom};
  };
  // Speed of the parametrization: 1 at the tips, 1/sqrt(2) at the crossing.
  auto speed = [](double t) { return 1.0 / std::sqrt(1.0 + std::sin(t) * std::sin(t)); };
  PointCloud cloud;
  while (cloud.size() < n) {
    // Rejection on speed makes the samples uniform in arc length.
    const double t = angle(rng);
    if (unit(rng) > speed(t)) continue;
    auto [x, y] = curve(t);
    if (noise > 0) {
      x += jitter(rng);
      y += jitter(rng);
    }
    cloud.points.push_back({round6(x), round6(y)});
  }
  return cloud;
}

PointCloud sample_sphere_with_circles(std::size_t sphere_points, std::size_t circle_points, double noise,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, noise);
  auto j = [&]() { return noise > 0 ? jitter(rng) : 0.0; };
  PointCloud cloud;
  for (std::size_t i = 0; i < sphere_points; ++i) {
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0) r = 1;
    cloud.points.push_back({round6(x / r + j()), round6(y / r + j()), round6(z / r + j())});
  }
  for (double side : {1.0, -1.0}) {
    // Circle of radius 1 tangent to the sphere at (side, 0, 0).
    for (std::size_t i = 0; i < circle_points; ++i) {
      double t = angle(rng);
      double x = side * (2.0 + std::cos(t));
      double y = std::sin(t);
      cloud.points.push_back({round6(x + j()), round6(y + j()), round6(j())});
    }
  }
  return cloud;
}

}  // namespace harmonica
