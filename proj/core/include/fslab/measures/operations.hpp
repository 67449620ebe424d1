#pragma once

#include "fslab/dyadic/direction.hpp"
#include "fslab/measures/delta_measure.hpp"

namespace fslab {

/// H(mu, D_target) in bits. mu must be a probability measure.
double entropy(const Measure1D& mu, Level target);
double entropy(const Measure2D& mu, Level target);

/// H(mu, D_fine | D_coarse) computed as sum_E mu(E) H(mu_E, D_fine).
double conditional_entropy(const Measure1D& mu, Level fine, Level coarse);
double conditional_entropy(const Measure2D& mu, Level fine, Level coarse);

/// mu(S)^-1 mu|_S. S may be coarser than mu; a cell belongs to S when its ancestor does.
Measure1D restrict_normalize(const Measure1D& mu, const GridSet1D& s);
Measure2D restrict_normalize(const Measure2D& mu, const GridSet2D& s);

/// Mass of mu on S, with the same ancestor convention.
double mass_on(const Measure1D& mu, const GridSet1D& s);
double mass_on(const Measure2D& mu, const GridSet2D& s);

double l2_norm(const Measure1D& mu);

enum class ConvolutionMethod { Automatic, Direct, Fft };

/// Support size below which Automatic uses direct summation.
inline constexpr std::size_t kDirectConvolutionLimit = std::size_t{1} << 15;

Measure1D convolve(const Measure1D& mu, const Measure1D& nu, ConvolutionMethod method = ConvolutionMethod::Automatic);

/// Pushforward under (x, y) -> [x] + [theta y].
Measure1D push_project(const Measure2D& mu, const Direction& theta);

/// [theta nu]: pushforward of nu under y -> [theta y].
Measure1D scale_round(const Measure1D& nu, const Direction& theta);

}  // namespace fslab
