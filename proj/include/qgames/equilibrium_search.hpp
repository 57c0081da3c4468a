#pragma once

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgames/quantum_game.hpp"

namespace qgames {

enum class Player { alice, bob };

/// Uniform (theta, phi) grid: theta inclusive over [0, pi] so the poles are
/// on the grid, phi over [0, 2 pi).
struct StrategyGrid {
  int n;

  explicit StrategyGrid(int n_) : n(n_) {
    if (n < 8) throw std::invalid_argument("StrategyGrid: need n >= 8");
  }

  int size() const { return n * n; }
  double theta_step() const { return std::numbers::pi / (n - 1); }
  double phi_step() const { return 2.0 * std::numbers::pi / n; }

  QubitStrategy strategy(int k) const {
    return QubitStrategy{theta_step() * (k / n), phi_step() * (k % n)};
  }
};

struct BestResponse {
  QubitStrategy strategy;
  double payoff = 0.0;
};

namespace detail {

inline QubitStrategy clamp_to_chart(QubitStrategy s) {
  const double two_pi = 2.0 * std::numbers::pi;
  s.theta = std::clamp(s.theta, 0.0, std::numbers::pi);
  s.phi = std::fmod(s.phi, two_pi);
  if (s.phi < 0.0) s.phi += two_pi;
  return s;
}

template <typename Payoff>
BestResponse descend(const Payoff& payoff, QubitStrategy start,
                     double theta_step, double phi_step) {
  BestResponse best{start, payoff(start)};
  double st = theta_step, sp = phi_step;
  while (st > 1e-9 || sp > 1e-9) {
    bool improved = false;
    const QubitStrategy moves[4] = {
        clamp_to_chart({best.strategy.theta + st, best.strategy.phi}),
        clamp_to_chart({best.strategy.theta - st, best.strategy.phi}),
        clamp_to_chart({best.strategy.theta, best.strategy.phi + sp}),
        clamp_to_chart({best.strategy.theta, best.strategy.phi - sp})};
    for (const QubitStrategy& cand : moves) {
      const double value = payoff(cand);
      // the margin keeps the descent from chasing rounding noise along
      // payoff-flat directions
      if (value > best.payoff + 1e-12 * (1.0 + std::abs(best.payoff))) {
        best = {cand, value};
        improved = true;
      }
    }
    if (!improved) {
      st *= 0.5;
      sp *= 0.5;
    }
  }
  return best;
}

}  // namespace detail

/// Maximizes the responder's payoff against a fixed opponent: full grid scan
/// (ties resolved toward the lexicographically smallest (theta, phi)), then
/// coordinate descent with step halving down to 1e-9.
inline BestResponse best_response(const QuantumGame& g,
                                  const QubitStrategy& opponent,
                                  const Correlation& c, Player who,
                                  int grid_n) {
  const StrategyGrid grid(grid_n);
  const ComplexMatrix j = correlation_factor(c);
  auto value = [&](const QubitStrategy& s) {
    return who == Player::alice ? payoffs_with_factor(g, j, s, opponent).first
                                : payoffs_with_factor(g, j, opponent, s).second;
  };
  BestResponse best{grid.strategy(0), value(grid.strategy(0))};
  for (int k = 1; k < grid.size(); ++k) {
    const QubitStrategy s = grid.strategy(k);
    const double v = value(s);
    if (v > best.payoff) best = {s, v};
  }
  return detail::descend(value, best.strategy, grid.theta_step(),
                         grid.phi_step());
}

struct EquilibriumReport {
  std::vector<std::pair<QubitStrategy, QubitStrategy>> profiles;
  std::vector<std::pair<double, double>> payoffs;
  double epsilon = 0.0;
  int grid_resolution = 0;
  bool refined = false;
  /// Set when at least half of all grid profile pairs are epsilon-NE (the
  /// indifferent-game case); a single representative profile is reported and
  /// epsilon_nash_pairs carries the raw count.
  bool saturated = false;
  long long epsilon_nash_pairs = 0;
};

/// Scans all grid profile pairs, keeps those within epsilon of both players'
/// refined best responses, deduplicates clusters closer than the grid
/// spacing on the Bloch sphere, refines the representatives and re-audits.
inline EquilibriumReport nash_search(const QuantumGame& g, const Correlation& c,
                                     int grid_n, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("nash_search: epsilon <= 0");
  const StrategyGrid grid(grid_n);
  const ComplexMatrix j = correlation_factor(c);
  const int gsz = grid.size();

  std::vector<QubitStrategy> strategies(gsz);
  for (int k = 0; k < gsz; ++k) strategies[k] = grid.strategy(k);

  std::vector<double> pa(static_cast<std::size_t>(gsz) * gsz);
  std::vector<double> pb(static_cast<std::size_t>(gsz) * gsz);
  for (int i = 0; i < gsz; ++i)
    for (int jb = 0; jb < gsz; ++jb) {
      const auto [va, vb] =
          payoffs_with_factor(g, j, strategies[i], strategies[jb]);
      pa[static_cast<std::size_t>(i) * gsz + jb] = va;
      pb[static_cast<std::size_t>(i) * gsz + jb] = vb;
    }

  auto alice_value = [&](const QubitStrategy& s, const QubitStrategy& opp) {
    return payoffs_with_factor(g, j, s, opp).first;
  };
  auto bob_value = [&](const QubitStrategy& s, const QubitStrategy& opp) {
    return payoffs_with_factor(g, j, opp, s).second;
  };

  // refined best-response payoff against each grid opponent
  std::vector<double> max_a(gsz), max_b(gsz);
  for (int jb = 0; jb < gsz; ++jb) {
    int arg = 0;
    for (int i = 1; i < gsz; ++i)
      if (pa[static_cast<std::size_t>(i) * gsz + jb] >
          pa[static_cast<std::size_t>(arg) * gsz + jb])
        arg = i;
    auto value = [&](const QubitStrategy& s) {
      return alice_value(s, strategies[jb]);
    };
    max_a[jb] = detail::descend(value, strategies[arg], grid.theta_step(),
                                grid.phi_step())
                    .payoff;
  }
  for (int i = 0; i < gsz; ++i) {
    int arg = 0;
    for (int jb = 1; jb < gsz; ++jb)
      if (pb[static_cast<std::size_t>(i) * gsz + jb] >
          pb[static_cast<std::size_t>(i) * gsz + arg])
        arg = jb;
    auto value = [&](const QubitStrategy& s) {
      return bob_value(s, strategies[i]);
    };
    max_b[i] = detail::descend(value, strategies[arg], grid.theta_step(),
                               grid.phi_step())
                   .payoff;
  }

  std::vector<std::pair<int, int>> kept;
  for (int i = 0; i < gsz; ++i)
    for (int jb = 0; jb < gsz; ++jb) {
      const std::size_t idx = static_cast<std::size_t>(i) * gsz + jb;
      if (pa[idx] >= max_a[jb] - epsilon && pb[idx] >= max_b[i] - epsilon)
        kept.emplace_back(i, jb);
    }

  EquilibriumReport report;
  report.epsilon = epsilon;
  report.grid_resolution = grid_n;
  report.epsilon_nash_pairs = static_cast<long long>(kept.size());

  if (kept.empty()) return report;

  if (2 * kept.size() >= static_cast<std::size_t>(gsz) * gsz) {
    report.saturated = true;
    const auto& [i, jb] = kept.front();
    report.profiles.emplace_back(strategies[i], strategies[jb]);
    report.payoffs.emplace_back(pa[static_cast<std::size_t>(i) * gsz + jb],
                                pb[static_cast<std::size_t>(i) * gsz + jb]);
    return report;
  }

  // cluster grid hits closer than the grid spacing (Bloch-sphere distance)
  const double thr = grid.theta_step();
  std::vector<std::pair<QubitStrategy, QubitStrategy>> reps;
  for (const auto& [i, jb] : kept) {
    const QubitStrategy& sa = strategies[i];
    const QubitStrategy& sb = strategies[jb];
    bool merged = false;
    for (const auto& [ra, rb] : reps)
      if (strategy_distance(sa, ra) < thr && strategy_distance(sb, rb) < thr) {
        merged = true;
        break;
      }
    if (!merged) reps.emplace_back(sa, sb);
  }

  // refine each representative by alternating best-response descent, then
  // re-audit; fall back to the audited grid point if refinement wanders
  for (auto& [ra, rb] : reps) {
    QubitStrategy a = ra, b = rb;
    for (int round = 0; round < 4; ++round) {
      auto va = [&](const QubitStrategy& s) { return alice_value(s, b); };
      const QubitStrategy a_next =
          detail::descend(va, a, grid.theta_step(), grid.phi_step()).strategy;
      auto vb = [&](const QubitStrategy& s) { return bob_value(s, a_next); };
      const QubitStrategy b_next =
          detail::descend(vb, b, grid.theta_step(), grid.phi_step()).strategy;
      const double moved = std::max(strategy_distance(a, a_next),
                                    strategy_distance(b, b_next));
      a = a_next;
      b = b_next;
      if (moved < 1e-12) break;
    }
    auto va = [&](const QubitStrategy& s) { return alice_value(s, b); };
    auto vb = [&](const QubitStrategy& s) { return bob_value(s, a); };
    const double cur_a = alice_value(a, b);
    const double cur_b = bob_value(b, a);
    const double imp_a =
        detail::descend(va, a, grid.theta_step(), grid.phi_step()).payoff -
        cur_a;
    const double imp_b =
        detail::descend(vb, b, grid.theta_step(), grid.phi_step()).payoff -
        cur_b;
    if (imp_a <= epsilon && imp_b <= epsilon) {
      ra = a;
      rb = b;
    }
  }

  // refinement may merge clusters
  std::vector<std::pair<QubitStrategy, QubitStrategy>> final_reps;
  for (const auto& [ra, rb] : reps) {
    bool merged = false;
    for (const auto& [fa, fb] : final_reps)
      if (strategy_distance(ra, fa) < thr && strategy_distance(rb, fb) < thr) {
        merged = true;
        break;
      }
    if (!merged) final_reps.emplace_back(ra, rb);
  }

  std::sort(final_reps.begin(), final_reps.end(), [](const auto& l, const auto& r) {
    const auto key = [](const auto& p) {
      return std::array<double, 4>{p.first.theta, p.first.phi, p.second.theta,
                                   p.second.phi};
    };
    return key(l) < key(r);
  });

  report.refined = true;
  for (const auto& [a, b] : final_reps) {
    report.profiles.emplace_back(a, b);
    report.payoffs.push_back(payoffs_with_factor(g, j, a, b));
  }
  return report;
}

struct SweepRow {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  long long ne_count = 0;
  QubitStrategy alice, bob;
  double payoff_a = 0.0, payoff_b = 0.0;
  double s_residual = 0.0, t_residual = 0.0;
};

namespace detail {

inline double symmetry_residual(const SymmetryCheck& check) {
  return check.operator_identity ? check.max_relation_residual
                                 : check.operator_residual;
}

}  // namespace detail

/// One row per NE cluster on a uniform gamma grid over [0, 2 pi)^2; rows are
/// ordered by grid index and independent of each other.
inline std::vector<SweepRow> gamma_sweep(const QuantumGame& g, int grid_gamma,
                                         int grid_strategy, double epsilon,
                                         std::uint64_t seed = 17) {
  if (grid_gamma < 8 || grid_strategy < 8)
    throw std::invalid_argument("gamma_sweep: grids must be >= 8");
  std::vector<SweepRow> rows;
  const double step = 2.0 * std::numbers::pi / grid_gamma;
  for (int k = 0; k < grid_gamma; ++k)
    for (int l = 0; l < grid_gamma; ++l) {
      const Correlation c{step * k, step * l};
      const EquilibriumReport ne = nash_search(g, c, grid_strategy, epsilon);
      const std::uint64_t cell_seed =
          seed ^ (static_cast<std::uint64_t>(k) << 32 | static_cast<std::uint64_t>(l));
      const double s_res =
          detail::symmetry_residual(check_s_symmetry(g, c, 16, cell_seed));
      const double t_res =
          detail::symmetry_residual(check_t_symmetry(g, c, 16, cell_seed));
      SweepRow base;
      base.gamma1 = c.gamma1;
      base.gamma2 = c.gamma2;
      base.s_residual = s_res;
      base.t_residual = t_res;
      base.ne_count = ne.saturated ? ne.epsilon_nash_pairs
                                   : static_cast<long long>(ne.profiles.size());
      for (std::size_t q = 0; q < ne.profiles.size(); ++q) {
        SweepRow row = base;
        row.alice = ne.profiles[q].first;
        row.bob = ne.profiles[q].second;
        row.payoff_a = ne.payoffs[q].first;
        row.payoff_b = ne.payoffs[q].second;
        rows.push_back(row);
      }
      if (ne.profiles.empty()) rows.push_back(base);
    }
  return rows;
}

/// Fixed 6-significant-digit formatting used in sweep CSV output.
inline std::string format_sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows,
                            std::ostream& os) {
  os << "gamma1,gamma2,ne_count,theta_a,phi_a,theta_b,phi_b,payoff_a,"
        "payoff_b,s_residual,t_residual\n";
  for (const SweepRow& r : rows) {
    os << format_sig6(r.gamma1) << ',' << format_sig6(r.gamma2) << ','
       << r.ne_count << ',' << format_sig6(r.alice.theta) << ','
       << format_sig6(r.alice.phi) << ',' << format_sig6(r.bob.theta) << ','
       << format_sig6(r.bob.phi) << ',' << format_sig6(r.payoff_a) << ','
       << format_sig6(r.payoff_b) << ',' << format_sig6(r.s_residual) << ','
       << format_sig6(r.t_residual) << '\n';
  }
}

}  // namespace qgames
