#include "qgame/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace qgame {

double DeviationForm::max_modulus() const { return std::sqrt(std::norm(a) + std::norm(b)); }

DeviationForm deviation_form(const QuantumGame& g, Player deviator, const QubitState& opponent) {
  const GameUnitary& u = g.unitary();
  const int t = g.prefs().target(deviator);
  const Complex ox = opponent.x();
  const Complex oy = opponent.y();
  if (deviator == Player::one) {
    // amp = x1 (U_t0 x2 + U_t1 y2) + y1 (U_t2 x2 + U_t3 y2)
    return {u(t, 0) * ox + u(t, 1) * oy, u(t, 2) * ox + u(t, 3) * oy};
  }
  // amp = x2 (U_t0 x1 + U_t2 y1) + y2 (U_t1 x1 + U_t3 y1)
  return {u(t, 0) * ox + u(t, 2) * oy, u(t, 1) * ox + u(t, 3) * oy};
}

ResponseCoefficients response_coefficients(const QuantumGame& g, const Play& play) {
  const DeviationForm f1 = deviation_form(g, Player::one, play.b);
  const DeviationForm f2 = deviation_form(g, Player::two, play.a);
  return {std::abs(f1.a), std::abs(f1.b), std::abs(f2.a), std::abs(f2.b)};
}

double best_response_value(const QuantumGame& g, Player player, const QubitState& opponent) {
  return deviation_form(g, player, opponent).max_modulus();
}

QubitState best_response_strategy(const QuantumGame& g, Player player,
                                  const QubitState& opponent) {
  const DeviationForm f = deviation_form(g, player, opponent);
  if (f.max_modulus() == 0.0) return QubitState::zero();
  return QubitState::normalized(std::conj(f.a), std::conj(f.b));
}

EquilibriumCertificate verify_equilibrium(const QuantumGame& g, const Play& play, double tol) {
  const TwoQubitState s = outcome(g, play);
  const int t1 = g.prefs().player1_target();
  const int t2 = g.prefs().player2_target();

  EquilibriumCertificate cert{.play = play};
  cert.payoff1 = payoff_angle(s, t1);
  cert.payoff2 = payoff_angle(s, t2);
  cert.amplitude1 = std::abs(s[t1]);
  cert.amplitude2 = std::abs(s[t2]);
  cert.best1 = best_response_value(g, Player::one, play.b);
  cert.best2 = best_response_value(g, Player::two, play.a);

  const bool ok1 = cert.amplitude1 >= cert.best1 - tol;
  const bool ok2 = cert.amplitude2 >= cert.best2 - tol;
  cert.is_equilibrium = ok1 && ok2;
  if (!ok1) {
    cert.witness_player = Player::one;
    cert.witness = best_response_strategy(g, Player::one, play.b);
  } else if (!ok2) {
    cert.witness_player = Player::two;
    cert.witness = best_response_strategy(g, Player::two, play.a);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Grid search

StrategyParams GridSpec::params(int index) const {
  const int ti = index / phi_points;
  const int pi = index % phi_points;
  return {M_PI * ti / (theta_points - 1), 2.0 * M_PI * pi / phi_points};
}

std::vector<QubitState> GridSpec::states() const {
  validate();
  std::vector<QubitState> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) out.push_back(params(i).to_state());
  return out;
}

void GridSpec::validate() const {
  if (theta_points < 2 || phi_points < 2) {
    throw std::invalid_argument("grid resolutions must be at least 2");
  }
}

namespace {

struct Candidate {
  int a_index;
  int b_index;
};

// Squared-modulus threshold equivalent to |amp| >= best - tol; negative when
// every strategy passes.
double pass_threshold(double best, double tol) {
  return best > tol ? (best - tol) * (best - tol) : -1.0;
}

}  // namespace

std::vector<EquilibriumCertificate> search_equilibria(const QuantumGame& g, const GridSpec& grid,
                                                      const SearchOptions& options) {
  const std::vector<QubitState> states = grid.states();
  const int n = grid.size();

  // Player I's form depends only on B, Player II's only on A.
  std::vector<DeviationForm> form1(states.size()), form2(states.size());
  std::vector<double> thr1(states.size()), thr2(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    form1[k] = deviation_form(g, Player::one, states[k]);
    form2[k] = deviation_form(g, Player::two, states[k]);
    thr1[k] = pass_threshold(form1[k].max_modulus(), options.tol);
    thr2[k] = pass_threshold(form2[k].max_modulus(), options.tol);
  }

  auto scan = [&](int a_begin, int a_end, std::vector<Candidate>& out) {
    for (int i = a_begin; i < a_end; ++i) {
      const QubitState& a = states[static_cast<std::size_t>(i)];
      const DeviationForm& f2 = form2[static_cast<std::size_t>(i)];
      const double t2 = thr2[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        if (std::norm(form1[jj].evaluate(a)) < thr1[jj]) continue;
        if (std::norm(f2.evaluate(states[jj])) < t2) continue;
        out.push_back({i, j});
      }
    }
  };

  const int workers = std::clamp(options.threads, 1, n);
  std::vector<std::vector<Candidate>> chunks(static_cast<std::size_t>(workers));
  if (workers == 1) {
    scan(0, n, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
      const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
      pool.emplace_back(scan, begin, end, std::ref(chunks[static_cast<std::size_t>(w)]));
    }
    for (auto& t : pool) t.join();
  }

  // Chunks cover contiguous A ranges, so concatenation is grid order.
  std::vector<EquilibriumCertificate> kept;
  for (const auto& chunk : chunks) {
    for (const Candidate& c : chunk) {
      const Play play{states[static_cast<std::size_t>(c.a_index)],
                      states[static_cast<std::size_t>(c.b_index)]};
      const Payoffs pay = payoffs(g, play);
      const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
        return std::abs(k.payoff1 - pay.player1) <= options.dedup &&
               std::abs(k.payoff2 - pay.player2) <= options.dedup;
      });
      if (duplicate) continue;
      EquilibriumCertificate cert = verify_equilibrium(g, play, options.tol);
      if (cert.is_equilibrium) kept.push_back(std::move(cert));
    }
  }
  return kept;
}

AlternationResult alternating_best_response(const QuantumGame& g, const Play& start,
                                            int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  const int t1 = g.prefs().player1_target();
  const int t2 = g.prefs().player2_target();

  AlternationResult result{.play = start};
  TwoQubitState s = outcome(g, result.play);
  double amp1 = std::abs(s[t1]);
  double amp2 = std::abs(s[t2]);
  for (int round = 1; round <= max_iters; ++round) {
    result.play.a = best_response_strategy(g, Player::one, result.play.b);
    result.play.b = best_response_strategy(g, Player::two, result.play.a);
    result.rounds = round;
    s = outcome(g, result.play);
    const double next1 = std::abs(s[t1]);
    const double next2 = std::abs(s[t2]);
    const bool stable = std::abs(next1 - amp1) < tol && std::abs(next2 - amp2) < tol;
    amp1 = next1;
    amp2 = next2;
    if (stable && verify_equilibrium(g, result.play, tol).is_equilibrium) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double grid_best_response_value(const QuantumGame& g, Player player, const QubitState& opponent,
                                const GridSpec& grid) {
  grid.validate();
  const DeviationForm f = deviation_form(g, player, opponent);
  double best = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    best = std::max(best, std::abs(f.evaluate(grid.params(i).to_state())));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Case inequalities and regions

CaseId case_id_from_int(int id) {
  if (id < 31 || id > 34) throw std::invalid_argument("case id must be one of 31, 32, 33, 34");
  return static_cast<CaseId>(id);
}

Player case_player(CaseId id) {
  return (id == CaseId::kPlayer1Upper || id == CaseId::kPlayer1Lower) ? Player::one
                                                                        : Player::two;
}

bool case_is_upper(CaseId id) { return id == CaseId::kPlayer1Upper || id == CaseId::kPlayer2Upper; }

std::string CasePair::to_string() const {
  return std::to_string(static_cast<int>(player1)) + "/" +
         std::to_string(static_cast<int>(player2));
}

CasePair CasePair::parse(int first, int second) {
  const CaseId c1 = case_id_from_int(first);
  const CaseId c2 = case_id_from_int(second);
  if (case_player(c1) != Player::one || case_player(c2) != Player::two) {
    throw std::invalid_argument("case pair must be (31|32, 33|34)");
  }
  return {c1, c2};
}

bool case_inequality_holds(CaseId id, const ResponseCoefficients& coeffs, const Play& play,
                           const QubitState& deviation, double slack) {
  const bool first = case_player(id) == Player::one;
  const double p = first ? coeffs.p : coeffs.p_prime;
  const double q = first ? coeffs.q : coeffs.q_prime;
  const QubitState& star = first ? play.a : play.b;
  const double lhs = p * std::abs(deviation.x()) + q * std::abs(deviation.y());
  const double rhs = p * std::abs(star.x()) + q * std::abs(star.y());
  return case_is_upper(id) ? lhs <= rhs + slack : lhs >= rhs - slack;
}

namespace {

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                    : std::numeric_limits<double>::infinity();
  return num / den;
}

RegionSpec build_region(const ResponseCoefficients& coeffs, Player player,
                        const QubitState& deviation, int resolution, CasePair cases,
                        RegionForm form) {
  if (resolution < 2) throw std::invalid_argument("region resolution must be at least 2");
  const bool first = player == Player::one;
  const double p = first ? coeffs.p : coeffs.p_prime;
  const double q = first ? coeffs.q : coeffs.q_prime;
  const double divisor = form == RegionForm::kPrimary ? p : q;
  const double other = form == RegionForm::kPrimary ? q : p;
  if (divisor < kDefaultTolerances.degenerate_coefficient) {
    const std::string name = form == RegionForm::kPrimary ? (first ? "P" : "P'")
                                                          : (first ? "Q" : "Q'");
    throw DegenerateCoefficientError(
        name + " = " + std::to_string(divisor) + " is too small to divide by; use the " +
        (form == RegionForm::kPrimary ? "swapped" : "primary") + " form");
  }

  RegionSpec spec;
  spec.case_pair = cases;
  spec.player = player;
  spec.form = form;
  spec.slope1 = safe_ratio(coeffs.q, coeffs.p);
  spec.slope2 = safe_ratio(coeffs.q_prime, coeffs.p_prime);
  spec.slope = other / divisor;

  // Primary: v >= |x| + s|y| - s h with h = |y*|.  Swapped: roles exchanged.
  const double dx = std::abs(deviation.x());
  const double dy = std::abs(deviation.y());
  spec.intercept = form == RegionForm::kPrimary ? dx + spec.slope * dy : dy + spec.slope * dx;
  const bool upper = case_is_upper(cases.for_player(player));
  const double disc_slack = kDefaultTolerances.inequality;

  for (int k = 0; k < resolution; ++k) {
    const double h = static_cast<double>(k) / (resolution - 1);
    const double line = spec.intercept - spec.slope * h;
    if (upper) {
      const double v = std::max(line, 0.0);
      if (h * h + v * v <= 1.0 + disc_slack) spec.samples.push_back({h, v});
    } else {
      if (line < 0.0) continue;
      spec.samples.push_back({h, std::min(line, std::sqrt(std::max(0.0, 1.0 - h * h)))});
    }
  }
  return spec;
}

}  // namespace

RegionSpec feasibility_region(const ResponseCoefficients& coeffs, Player player,
                              const QubitState& deviation, int resolution, CasePair cases) {
  return build_region(coeffs, player, deviation, resolution, cases, RegionForm::kPrimary);
}

RegionSpec feasibility_region_swapped(const ResponseCoefficients& coeffs, Player player,
                                      const QubitState& deviation, int resolution,
                                      CasePair cases) {
  return build_region(coeffs, player, deviation, resolution, cases, RegionForm::kSwapped);
}

}  // namespace qgame
