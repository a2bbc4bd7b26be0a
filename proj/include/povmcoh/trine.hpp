#pragma once

#include "povmcoh/coherence.hpp"
#include "povmcoh/pic.hpp"

namespace povmcoh {

/// The six unitaries that leave the trine measurement triangle invariant:
/// identity, the two z-rotations by 2pi/3 and 4pi/3 and the three pi-flips
/// about the measurement directions, each with unit determinant.
std::vector<CMatrix> trine_incoherent_unitaries();

/// Recovers the free unitaries from an extension: for every permutation of
/// the three projector range vectors, solves the subspace-preservation and
/// unit-determinant conditions for the phases and extracts the upper-left
/// 2x2 block.
std::vector<CMatrix> derive_incoherent_unitaries(const NaimarkExtension &x);

/// Distance min_phase ||u - e^{i phase} v||_F between unitaries.
double unitary_distance_up_to_phase(const CMatrix &u, const CMatrix &v);

struct LandscapeSample {
  double theta = 0.0;
  double phi = 0.0;
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
  double value = 0.0;
};

struct GridSpec {
  int n_phi = 181;  // equiangular in [0, 2 pi]
  int n_theta = 91; // equiangular in [0, pi]
};

/// Pure-state coherence over an equiangular sphere grid, ordered by
/// (theta index, phi index).
std::vector<LandscapeSample> coherence_landscape(const Povm &p,
                                                 const GridSpec &grid = {},
                                                 int threads = 0);

/// fmax from a fixed initial state to every pure target on the grid.
std::vector<LandscapeSample> conversion_landscape(const DensityMatrix &rho,
                                                  const PicContext &ctx,
                                                  const GridSpec &grid = {},
                                                  int threads = 0);

} // namespace povmcoh
