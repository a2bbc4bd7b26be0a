#pragma once

#include "povmcoh/linalg.hpp"

#include <random>
#include <vector>

namespace povmcoh {

using Rng = std::mt19937_64;

CMatrix random_ginibre(int rows, int cols, Rng &rng);

/// Haar-distributed unitary via QR of a Ginibre matrix.
CMatrix random_unitary(int dim, Rng &rng);

CMatrix random_hermitian(int dim, Rng &rng);

PureState random_pure(int dim, Rng &rng);

DensityMatrix random_density(int dim, Rng &rng);

/// Random n-outcome POVM effects on dimension dim: PSD blocks
/// renormalized so they sum to the identity.
std::vector<CMatrix> random_povm_effects(int dim, int n, Rng &rng);

/// Random CPTP channel as n_kraus Kraus operators (Ginibre blocks,
/// renormalized so the completeness sum is the identity).
std::vector<CMatrix> random_kraus_channel(int dim, int n_kraus, Rng &rng);

RVector random_probability_vector(int n, Rng &rng);

} // namespace povmcoh
