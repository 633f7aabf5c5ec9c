#pragma once

// Brute-force references for the tests. These deliberately avoid the
// library's linear-form shortcuts: outcomes come from the written-out
// expansion of U (a (x) b), best responses from dense grid enumeration.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include "qgame/qcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = qgame::Matrix4;

struct Qubit {
  C x;
  C y;
};

inline Qubit bloch(double theta, double phi) {
  return {std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
}

inline Qubit from(const qgame::QubitState& s) { return {s.x(), s.y()}; }

// Row k of U (a (x) b): U_k1 x1 x2 + U_k2 x1 y2 + U_k3 y1 x2 + U_k4 y1 y2.
inline C amplitude(const Mat& u, int k, const Qubit& a, const Qubit& b) {
  const auto& r = u[static_cast<std::size_t>(k)];
  return r[0] * a.x * b.x + r[1] * a.x * b.y + r[2] * a.y * b.x + r[3] * a.y * b.y;
}

inline std::array<C, 4> outcome(const Mat& u, const Qubit& a, const Qubit& b) {
  return {amplitude(u, 0, a, b), amplitude(u, 1, a, b), amplitude(u, 2, a, b),
          amplitude(u, 3, a, b)};
}

/// Max over a theta_n x phi_n Bloch grid of the deviator's |target amplitude|.
inline double grid_best_response(const Mat& u, int target, int player, const Qubit& opponent,
                                 int theta_n, int phi_n) {
  double best = 0.0;
  for (int i = 0; i < theta_n; ++i) {
    for (int j = 0; j < phi_n; ++j) {
      const Qubit d = bloch(M_PI * i / (theta_n - 1), 2.0 * M_PI * j / phi_n);
      const C amp = player == 1 ? amplitude(u, target, d, opponent)
                                : amplitude(u, target, opponent, d);
      best = std::max(best, std::abs(amp));
    }
  }
  return best;
}

inline double max_entry_distance(const Mat& a, const Mat& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  }
  return worst;
}

struct ProcessResult {
  int status = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout.
inline ProcessResult run(const std::string& command) {
  ProcessResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace oracle
