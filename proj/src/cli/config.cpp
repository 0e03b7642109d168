#include "cobos/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "cobos/errors.hpp"

namespace cobos::cli {

namespace {

template <class T>
T parse_number(std::string_view token, std::string_view context) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw DomainError("cannot parse '" + std::string(token) + "' in " + std::string(context));
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find(sep, pos);
    out.push_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) return out;
    pos = end + 1;
  }
}

}  // namespace

ModelKind parse_model(std::string_view text) {
  if (text == "full") return ModelKind::full;
  if (text == "effective") return ModelKind::effective;
  throw DomainError("model must be 'full' or 'effective', got '" + std::string(text) + "'");
}

GammaGrid GammaGrid::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("gamma grid must be min:max:points");
  GammaGrid g{parse_number<double>(parts[0], "gamma grid"), parse_number<double>(parts[1], "gamma grid"),
              parse_number<int>(parts[2], "gamma grid")};
  return g;
}

std::vector<double> GammaGrid::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    v[static_cast<std::size_t>(i)] = i == points - 1 ? max : min + (max - min) * i / (points - 1);
  return v;
}

IntRange IntRange::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const int v = parse_number<int>(parts[0], "range");
    return {v, v};
  }
  if (parts.size() != 2) throw DomainError("range must be first:last");
  return {parse_number<int>(parts[0], "range"), parse_number<int>(parts[1], "range")};
}

void SweepConfig::validate(bool lattice) const {
  if (lattice && d < 2) throw DomainError("d must be >= 2");
  if (n_a < 0 || n_b < 0 || (lattice && (n_a > d || n_b > d)))
    throw DomainError("particle numbers must lie in [0, d]");
  if (!std::isfinite(J) || !std::isfinite(U) || J < 0.0 || U <= 0.0)
    throw DomainError("require J >= 0 and U > 0");
  if (grid.points < 2) throw DomainError("gamma grid needs at least 2 points");
  if (!(grid.min <= grid.max) || !std::isfinite(grid.min) || !std::isfinite(grid.max))
    throw DomainError("gamma grid needs finite min <= max");
  if (grid.min < 0.0) throw DomainError("gamma grid must be non-negative");
  if (!(tol > 0.0) || !(tol_deg > 0.0)) throw DomainError("tolerances must be > 0");
  if (jobs < 1) throw DomainError("jobs must be >= 1");
  for (const IntRange* r : {&d_range, &n_range, &m_range})
    if (r->first < 1 || r->first > r->last) throw DomainError("ranges need 1 <= first <= last");
}

int SweepConfig::pairs() const {
  if (n_a != n_b) throw DomainError("pair observables require N_A == N_B");
  return n_a;
}

ModelParams SweepConfig::params_at(double gamma_u_over_j2) const {
  return {.J = J, .U = U, .gamma = gamma_u_over_j2 * J * J / U, .sites = d, .n_a = n_a, .n_b = n_b};
}

ModelParams SweepConfig::params_single() const {
  ModelParams p = params_at(gamma_reduced);
  if (gamma_absolute) p.gamma = *gamma_absolute;
  return p;
}

SolverOptions SweepConfig::solver_options() const {
  SolverOptions o;
  o.tol_res = tol;
  o.tol_deg = tol_deg;
  return o;
}

}  // namespace cobos::cli
