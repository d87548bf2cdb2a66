#include "hdcoint/ensembles.hpp"

#include "hdcoint/errors.hpp"
#include "hdcoint/parallel.hpp"
#include "hdcoint/random.hpp"
#include "hdcoint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hdcoint {

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// Orthonormal basis of the column span of m (numerical rank tolerance 1e-10).
Matrix column_basis(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), rank);
  return q;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParameterError("");
    return v;
  } catch (const std::exception&) {
    throw ParameterError("cannot parse " + what + " value '" + s + "'");
  }
}

}  // namespace

Matrix haar_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("Haar dimension must be positive");
  Rng rng = make_rng(seed);
  const Matrix g = standard_normal_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (Eigen::PartialPivLU<Matrix>(q).determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

std::vector<double> sample_jacobi_spectrum(const JacobiParams& jp, std::uint64_t seed) {
  if (jp.N < 1) throw ParameterError("Jacobi dimension must be positive");
  if (!(jp.p > 0.0) || !(jp.q > 0.0)) throw ParameterError("Jacobi exponents p, q must be positive");
  const double n1 = 2.0 * jp.p + jp.N - 1.0;
  const double n2 = 2.0 * jp.q + jp.N - 1.0;
  if (!is_integer(n1) || !is_integer(n2)) {
    throw DomainError("the Wishart construction of J(N; p, q) needs 2p + N - 1 and 2q + N - 1 to be integers; "
                      "use projector_model_spectrum for half-integer parameters");
  }
  const auto d1 = static_cast<Eigen::Index>(std::lround(n1));
  const auto d2 = static_cast<Eigen::Index>(std::lround(n2));
  Rng rng = make_rng(seed);
  const Matrix g1 = standard_normal_matrix(rng, jp.N, d1);
  const Matrix g2 = standard_normal_matrix(rng, jp.N, d2);
  const Matrix a = g1 * g1.transpose();
  const Matrix b = g2 * g2.transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(a, a + b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("Jacobi eigenproblem did not converge");
  std::vector<double> values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

ProjectorModelSample projector_model_spectrum(const ProjectorModelSpec& spec) {
  const int N = spec.N;
  const int T = spec.T_amb;
  if (spec.k < 1 || N < 1) throw ParameterError("projector model needs k >= 1 and N >= 1");
  if (static_cast<long>(T) < static_cast<long>(spec.k + 1) * N) {
    throw ParameterError("projector model needs T_amb >= (k+1)N");
  }
  Matrix e = Matrix::Zero(T, N);
  e.bottomRows(N).setIdentity();

  ProjectorModelSample out;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 16) throw DomainError("1 + O stayed numerically singular across redraws");
    const std::uint64_t seed = attempt == 0 ? spec.seed : derive_seed(spec.seed, Stream::haar, attempt);
    const Matrix o = haar_orthogonal(T, seed);
    const Matrix ipo = Matrix::Identity(T, T) + o;
    Eigen::PartialPivLU<Matrix> lu(ipo);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
      ++out.resamples;
      continue;
    }

    Matrix span(T, static_cast<Eigen::Index>(N) * (spec.k - 1));
    Matrix power = e;
    for (int j = 1; j < spec.k; ++j) {
      power = o * power;
      span.middleCols(static_cast<Eigen::Index>(j - 1) * N, N) = power;
    }
    const Matrix qs = column_basis(span);
    auto project = [&](const Matrix& m) -> Matrix { return m - qs * (qs.transpose() * m); };

    Matrix y = lu.solve(e);
    for (int j = 1; j < spec.k; ++j) y = o * y;

    const Matrix q1 = column_basis(project(e));
    const Matrix q2 = column_basis(project(y));
    // Eigenvalues of P1 P2 P1 are the squared singular values of Q1* Q2.
    const Matrix c = q1.transpose() * q2;
    Eigen::JacobiSVD<Matrix> svd(c);
    const auto& s = svd.singularValues();
    out.values.assign(static_cast<std::size_t>(N), 0.0);
    for (Eigen::Index i = 0; i < s.size() && i < N; ++i) {
      out.values[static_cast<std::size_t>(i)] = std::clamp(s(i) * s(i), 0.0, 1.0);
    }
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
  }
}

JacobiParams projector_model_jacobi_params(int k, int N, int T_amb) {
  if (k < 1 || N < 1) throw ParameterError("need k >= 1 and N >= 1");
  const double q = (static_cast<double>(T_amb) - static_cast<double>(k + 1) * N + 1.0) / 2.0;
  if (!(q > 0.0)) throw ParameterError("projector model needs T_amb >= (k+1)N");
  return {N, N / 2.0, q};
}

long default_tridiagonal_window(long n) {
  if (n < 1) return 0;
  const auto w = static_cast<long>(std::ceil(40.0 * std::cbrt(static_cast<double>(n)))) + 20;
  return std::min(n, w);
}

std::vector<double> tridiagonal_top_eigenvalues(const std::vector<double>& diag, const std::vector<double>& offdiag,
                                                int r) {
  const std::size_t m = diag.size();
  if (m == 0) throw ParameterError("empty tridiagonal matrix");
  if (offdiag.size() + 1 != m) throw ParameterError("tridiagonal off-diagonal must have size n - 1");
  if (r < 1 || static_cast<std::size_t>(r) > m) throw ParameterError("requested eigenvalue count out of range");

  std::vector<double> b2(offdiag.size());
  double bmax = 0.0;
  for (std::size_t i = 0; i < offdiag.size(); ++i) {
    b2[i] = offdiag[i] * offdiag[i];
    bmax = std::max(bmax, std::abs(offdiag[i]));
  }
  double upper = -std::numeric_limits<double>::infinity();
  double lower = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double radius = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < m ? std::abs(offdiag[i]) : 0.0);
    upper = std::max(upper, diag[i] + radius);
    lower = std::min(lower, diag[i] - radius);
  }
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, bmax * bmax);

  // Number of eigenvalues strictly below x (LDL* inertia).
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double d = diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < m; ++i) {
      d = diag[i] - x - b2[i - 1] / d;
      if (std::abs(d) < pivmin) d = -pivmin;
      if (d < 0.0) ++count;
    }
    return count;
  };

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(r));
  double hi = upper + 1e-12 * std::max(1.0, std::abs(upper));
  const double lo0 = lower - 1e-12 * std::max(1.0, std::abs(lower));
  for (int j = 1; j <= r; ++j) {
    // mu_j is the (m - j + 1)-th smallest eigenvalue.
    const std::size_t target = m - static_cast<std::size_t>(j) + 1;
    double lo = lo0;
    double h = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + h);
      if (mid <= lo || mid >= h) break;
      if (count_below(mid) >= target) {
        h = mid;
      } else {
        lo = mid;
      }
      if (h - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(h))) break;
    }
    const double mu = 0.5 * (lo + h);
    out.push_back(mu);
    hi = h;
  }
  return out;
}

std::vector<double> goe_top_eigs(long n, int r, std::uint64_t seed, long window) {
  if (n < 1) throw ParameterError("tridiagonal dimension must be positive");
  if (r < 1 || r > n) throw ParameterError("need 1 <= r <= n");
  long m = window <= 0 ? default_tridiagonal_window(n) : std::min(window, n);
  m = std::max<long>(m, r);
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> diag(static_cast<std::size_t>(m));
  std::vector<double> off(static_cast<std::size_t>(m - 1));
  // Row i draws its diagonal entry, then the coupling to row i + 1, so a
  // window is a prefix of the full-matrix stream.
  for (long i = 0; i < m; ++i) {
    diag[static_cast<std::size_t>(i)] = std::sqrt(2.0) * normal(rng);
    if (i + 1 < m) off[static_cast<std::size_t>(i)] = chi_variate(rng, static_cast<double>(n - 1 - i));
  }
  std::vector<double> mu = tridiagonal_top_eigenvalues(diag, off, r);
  const double scale = std::pow(static_cast<double>(n), 1.0 / 6.0);
  const double edge = 2.0 * std::sqrt(static_cast<double>(n));
  for (double& v : mu) v = scale * (v - edge);
  return mu;
}

int AiryQuantileTable::r_max() const {
  int out = 0;
  for (const auto& c : cells) out = std::max(out, c.r);
  return std::max(out, static_cast<int>(partial_sums.size()));
}

std::optional<double> AiryQuantileTable::quantile(int r, double alpha) const {
  for (const auto& c : cells) {
    if (c.r == r && std::abs(c.alpha - alpha) < 1e-9) return c.quantile;
  }
  return std::nullopt;
}

bool AiryQuantileTable::has_samples(int r) const {
  return r >= 1 && static_cast<std::size_t>(r) <= partial_sums.size() &&
         !partial_sums[static_cast<std::size_t>(r - 1)].empty();
}

double AiryQuantileTable::exceedance(int r, double x) const {
  if (!has_samples(r)) throw ParameterError("quantile table holds no samples for r = " + std::to_string(r));
  const auto& s = partial_sums[static_cast<std::size_t>(r - 1)];
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(s.end() - it) / static_cast<double>(s.size());
}

std::string AiryQuantileTable::id() const {
  std::ostringstream os;
  os << "airy-sums:n=" << n << ",window=" << window << ",reps=" << reps << ",seed=" << seed;
  return os.str();
}

AiryQuantileTable airy_sum_quantiles(int r_max, const std::vector<double>& alphas, long n, int reps,
                                     std::uint64_t seed, int threads, long window) {
  if (r_max < 1) throw ParameterError("r_max must be at least 1");
  if (reps < 1000) throw ParameterError("at least 1000 replications are required for quantiles");
  if (n < r_max) throw ParameterError("tridiagonal dimension must be at least r_max");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("quantile levels must lie in (0, 1)");
  }
  const long m = window <= 0 ? default_tridiagonal_window(n) : std::min(window, n);
  std::vector<std::vector<double>> draws(static_cast<std::size_t>(reps));
  parallel_for(draws.size(), threads, [&](std::size_t i) {
    draws[i] = goe_top_eigs(n, r_max, derive_seed(seed, Stream::tridiagonal, i), m);
  });

  AiryQuantileTable table;
  table.n = n;
  table.window = m;
  table.reps = reps;
  table.seed = seed;
  table.partial_sums.assign(static_cast<std::size_t>(r_max), std::vector<double>(static_cast<std::size_t>(reps)));
  for (std::size_t i = 0; i < draws.size(); ++i) {
    double acc = 0.0;
    for (int r = 0; r < r_max; ++r) {
      acc += draws[i][static_cast<std::size_t>(r)];
      table.partial_sums[static_cast<std::size_t>(r)][i] = acc;
    }
  }
  for (int r = 1; r <= r_max; ++r) {
    auto& s = table.partial_sums[static_cast<std::size_t>(r - 1)];
    std::sort(s.begin(), s.end());
    for (double a : alphas) {
      table.cells.push_back({r, a, quantile_sorted(s, a), quantile_stderr_sorted(s, a)});
    }
  }
  return table;
}

void write_quantile_csv(const AiryQuantileTable& table, std::ostream& out) {
  out << "r,alpha,quantile,stderr,n,reps,seed\n";
  out.precision(17);
  for (const auto& c : table.cells) {
    std::ostringstream alpha;
    alpha.precision(15);
    alpha << c.alpha;
    out << c.r << ',' << alpha.str() << ',' << c.quantile << ',' << c.stderr << ',' << table.n << ',' << table.reps
        << ',' << table.seed << '\n';
  }
}

AiryQuantileTable read_quantile_csv(std::istream& in) {
  AiryQuantileTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("quantile table is empty");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"r", "alpha", "quantile", "stderr", "n", "reps", "seed"};
  if (header != expected) throw ParameterError("quantile table header must be r,alpha,quantile,stderr,n,reps,seed");
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size()) {
      throw ParameterError("quantile table row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                           " cells, expected 7");
    }
    AiryQuantileCell c;
    c.r = static_cast<int>(parse_double(cells[0], "r"));
    c.alpha = parse_double(cells[1], "alpha");
    c.quantile = parse_double(cells[2], "quantile");
    c.stderr = parse_double(cells[3], "stderr");
    table.n = static_cast<long>(parse_double(cells[4], "n"));
    table.reps = static_cast<int>(parse_double(cells[5], "reps"));
    table.seed = std::stoull(cells[6]);
    table.cells.push_back(c);
  }
  if (table.cells.empty()) throw ParameterError("quantile table has no rows");
  return table;
}

void write_partial_sums_csv(const AiryQuantileTable& table, std::ostream& out) {
  const std::size_t rmax = table.partial_sums.size();
  for (std::size_t r = 0; r < rmax; ++r) out << (r ? "," : "") << 's' << r + 1;
  out << '\n';
  out.precision(17);
  const std::size_t rows = rmax == 0 ? 0 : table.partial_sums[0].size();
  // Columns are sorted independently; each is an ascending sample.
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t r = 0; r < rmax; ++r) out << (r ? "," : "") << table.partial_sums[r][i];
    out << '\n';
  }
}

void read_partial_sums_csv(AiryQuantileTable& table, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("partial-sum sample file is empty");
  const std::size_t rmax = split_csv_line(line).size();
  std::vector<std::vector<double>> sums(rmax);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != rmax) {
      throw ParameterError("partial-sum sample row " + std::to_string(row) + " has the wrong number of cells");
    }
    for (std::size_t r = 0; r < rmax; ++r) sums[r].push_back(parse_double(cells[r], "partial sum"));
  }
  for (auto& s : sums) std::sort(s.begin(), s.end());
  table.partial_sums = std::move(sums);
}

}  // namespace hdcoint
