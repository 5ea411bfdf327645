#include "nuband/walk.hpp"

#include <cmath>
#include <cstdio>

#include "nuband/bandop.hpp"

namespace nuband {

Mat CoinU4::as_matrix() const {
  Mat c(4, 4);
  c(0, 0) = emb.alpha;
  c(0, 1) = emb.r;
  c(0, 2) = emb.beta;
  c(1, 0) = emb.q;
  c(1, 1) = emb.g;
  c(1, 2) = emb.s;
  c(2, 0) = emb.gamma;
  c(2, 1) = emb.t;
  c(2, 2) = emb.delta;
  c(3, 3) = std::polar(1.0, theta);
  return c;
}

namespace {
constexpr char kLetterChar[4] = {'a', 'b', 'A', 'B'};
constexpr char kInverseChar[4] = {'A', 'B', 'a', 'b'};
}  // namespace

std::string tree_vertex(int m) {
  if (m >= 0) return std::string(static_cast<size_t>(m), 'a');
  return std::string(static_cast<size_t>(-m), 'A');
}

std::string lattice_vertex(int x, int y) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d,%d", x, y);
  return buf;
}

namespace {
std::pair<int, int> parse_lattice(const std::string& v) {
  int x = 0, y = 0;
  std::sscanf(v.c_str(), "%d,%d", &x, &y);
  return {x, y};
}
}  // namespace

std::string walk_move(WalkGraph graph, const std::string& vertex, int letter) {
  if (graph == WalkGraph::Tree) {
    // Reduced-word concatenation: appending the inverse of the last letter
    // cancels it, anything else extends the word.
    if (!vertex.empty() && vertex.back() == kInverseChar[letter])
      return vertex.substr(0, vertex.size() - 1);
    return vertex + kLetterChar[letter];
  }
  auto [x, y] = parse_lattice(vertex);
  switch (letter) {
    case kLetterA: return lattice_vertex(x + 1, y);
    case kLetterAInv: return lattice_vertex(x - 1, y);
    case kLetterB: return lattice_vertex(x, y + 1);
    default: return lattice_vertex(x, y - 1);
  }
}

int walk_depth(WalkGraph graph, const std::string& vertex) {
  if (graph == WalkGraph::Tree) return static_cast<int>(vertex.size());
  auto [x, y] = parse_lattice(vertex);
  return std::max(std::abs(x), std::abs(y));
}

double WalkState::omega(const std::string& vertex, int letter) const {
  const std::uint64_t h = hash_string(vertex, hash_mix(seed, static_cast<std::uint64_t>(letter)));
  const double u = unit_double(h);
  switch (dist) {
    case PhaseDist::PointMass:
      return 0.0;
    case PhaseDist::UniformInterval:
      return eps * (2.0 * u - 1.0);
    case PhaseDist::UniformTorus:
      return two_pi * u;
    case PhaseDist::Explicit:
      throw std::invalid_argument("WalkState: explicit phases are not defined on graphs");
  }
  return 0.0;
}

double WalkState::norm() const {
  double s = 0.0;
  for (const auto& [v, a] : amp)
    for (const cplx z : a) s += abs2(z);
  return std::sqrt(s);
}

cplx WalkState::amplitude(const std::string& vertex, int letter) const {
  const auto it = amp.find(vertex);
  if (it == amp.end()) return 0.0;
  return it->second[static_cast<size_t>(letter)];
}

WalkState make_basis_state(WalkGraph graph, int bound, PhaseDist dist, double eps,
                           std::uint64_t seed, const std::string& vertex, int letter) {
  WalkState s;
  s.graph = graph;
  s.bound = bound;
  s.dist = dist;
  s.eps = eps;
  s.seed = seed;
  s.amp[vertex][static_cast<size_t>(letter)] = 1.0;
  return s;
}

WalkState step(const WalkState& state, const CoinU4& coin) {
  const Mat c = coin.as_matrix();
  WalkState out = state;
  out.amp.clear();
  out.amp.reserve(state.amp.size() * 3 + 8);
  for (const auto& [vertex, a] : state.amp) {
    bool occupied = false;
    for (const cplx z : a)
      if (z != cplx(0.0)) occupied = true;
    if (!occupied) continue;
    if (walk_depth(state.graph, vertex) >= state.bound)
      throw std::invalid_argument("step: support touches the truncation boundary");
    cplx u[4];
    for (int tp = 0; tp < 4; ++tp) {
      u[tp] = 0.0;
      for (int t = 0; t < 4; ++t) u[tp] += c(tp, t) * a[static_cast<size_t>(t)];
    }
    for (int tp = 0; tp < 4; ++tp) {
      if (u[tp] == cplx(0.0)) continue;
      const std::string y = walk_move(state.graph, vertex, tp);
      out.amp[y][static_cast<size_t>(tp)] +=
          std::polar(1.0, out.omega(y, tp)) * u[tp];
    }
  }
  return out;
}

PhaseField line_phase_field(WalkGraph graph, PhaseDist dist, double eps, std::uint64_t seed,
                            int jmin, int jmax) {
  WalkState probe;
  probe.graph = graph;
  probe.bound = 1 << 20;
  probe.dist = dist;
  probe.eps = eps;
  probe.seed = seed;
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(2 * (jmax - jmin + 1)));
  for (int j = jmin; j <= jmax; ++j) {
    const std::string v = graph == WalkGraph::Tree ? tree_vertex(j) : lattice_vertex(j, 0);
    vals.push_back(probe.omega(v, kLetterA));
    vals.push_back(probe.omega(v, kLetterAInv));
  }
  return PhaseField::explicit_values(std::move(vals), 2 * static_cast<std::int64_t>(jmin));
}

double dilation_check(const CoinU4& coin, WalkGraph graph, int bound, int n_max, PhaseDist dist,
                      double eps, std::uint64_t seed) {
  if (bound < n_max + 2) throw std::invalid_argument("dilation_check: bound must be >= n_max + 2");
  // Line window wide enough that the open truncation is exact for n_max steps.
  const int w = n_max + 3;
  const PhaseField line = line_phase_field(graph, dist, eps, seed, -w, w);
  // Site j lives at matrix indices 2(j + w), 2(j + w) + 1; build_band_from_coin
  // indexes phases from 0, so re-anchor the realized window there.
  const int mcells = 2 * w + 1;
  const PhaseField zero_based = PhaseField::explicit_values(line.values, 0);
  const BandMatrix t = build_band_from_coin(coin.emb.coin(), zero_based, mcells, Boundary::Open,
                                            BandKind::T);
  double worst = 0.0;
  for (int m = -1; m <= 1; ++m) {
    for (const int letter : {kLetterA, kLetterAInv}) {
      const std::string v0 = graph == WalkGraph::Tree ? tree_vertex(m) : lattice_vertex(m, 0);
      WalkState ws = make_basis_state(graph, bound, dist, eps, seed, v0, letter);
      Vec line_vec(static_cast<size_t>(2 * mcells));
      const int start = 2 * (m + w) + (letter == kLetterAInv ? 1 : 0);
      line_vec[static_cast<size_t>(start)] = 1.0;
      for (int n = 1; n <= n_max; ++n) {
        ws = step(ws, coin);
        line_vec = t.m.apply(line_vec);
        for (int j = -w; j <= w; ++j) {
          const std::string vj = graph == WalkGraph::Tree ? tree_vertex(j) : lattice_vertex(j, 0);
          const cplx wa = ws.amplitude(vj, kLetterA);
          const cplx wb = ws.amplitude(vj, kLetterAInv);
          worst = std::max(worst, std::abs(wa - line_vec[static_cast<size_t>(2 * (j + w))]));
          worst = std::max(worst, std::abs(wb - line_vec[static_cast<size_t>(2 * (j + w) + 1)]));
        }
      }
    }
  }
  return worst;
}

std::vector<cplx> walk_autocorrelation(const CoinU4& coin, WalkGraph graph, int bound, int n_max,
                                       PhaseDist dist, double eps, std::uint64_t seed) {
  const std::string root = graph == WalkGraph::Tree ? tree_vertex(0) : lattice_vertex(0, 0);
  WalkState ws = make_basis_state(graph, bound, dist, eps, seed, root, kLetterA);
  std::vector<cplx> a;
  a.reserve(static_cast<size_t>(n_max + 1));
  a.push_back(1.0);
  for (int n = 1; n <= n_max; ++n) {
    ws = step(ws, coin);
    a.push_back(ws.amplitude(root, kLetterA));
  }
  return a;
}

double escape_check(const CoinU4& coin, WalkGraph graph, int bound, int n_max, PhaseDist dist,
                    double eps, std::uint64_t seed) {
  const std::string root = graph == WalkGraph::Tree ? tree_vertex(0) : lattice_vertex(0, 0);
  double worst = 0.0;
  for (const int letter : {kLetterA, kLetterB, kLetterAInv}) {
    WalkState ws = make_basis_state(graph, bound, dist, eps, seed, root, letter);
    for (int n = 1; n <= n_max; ++n) {
      ws = step(ws, coin);
      worst = std::max(worst, std::abs(ws.amplitude(root, kLetterB)));
    }
  }
  return worst;
}

double autocorrelation_rate(const std::vector<cplx>& a, double floor) {
  // log|a_n| = log C + n log r fitted over even n >= 2.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (size_t n = 2; n < a.size(); n += 2) {
    const double mag = std::abs(a[n]);
    if (mag < floor) continue;
    const double x = static_cast<double>(n), y = std::log(mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace nuband
