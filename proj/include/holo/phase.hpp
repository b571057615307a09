#pragma once

#include <vector>

#include "holo/linalg.hpp"

namespace holo {

// Principal value in (-pi, pi].
double wrap_angle(double x);

// Distance on the unit circle, in [0, pi].
double circular_distance(double a, double b);

// Sorted arguments of the eigenvalues of M whose modulus exceeds min_modulus.
std::vector<double> eigen_phases(const CMatrix& M, double min_modulus = 1e-8);

// Turns per-sample sorted phase lists into continuous tracks: each sample is
// matched to the previous one by nearest neighbour on the circle, then
// unwrapped. Only meant for plotting; samples with a different number of
// phases restart the matching.
std::vector<std::vector<double>> phase_tracks(const std::vector<std::vector<double>>& samples);

}  // namespace holo
