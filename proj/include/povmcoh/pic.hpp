#pragma once

#include "povmcoh/sdp.hpp"
#include "povmcoh/superop.hpp"

#include <optional>

namespace povmcoh {

struct PicOptions {
  double solver_tol = 1e-9;
  int max_iterations = 200;
  double feas_threshold = 1e-7; // feasible iff slack >= -feas_threshold
  bool verbose = false;         // forwarded to the SDP solver
};

struct PicVerdict {
  bool feasible = false;
  // Set when the slack lands within half an order of magnitude of the
  // threshold, i.e. the verdict should not be trusted blindly.
  bool marginal = false;
  double slack = 0.0; // maximized minimum-eigenvalue margin t*
  std::optional<ChoiMatrix> choi; // feasible Choi matrix on the extension space
  std::string note;
};

// Precomputed affine description of the channels-on-the-extension-space that
// are trace-preserving, block-incoherent and subspace-preserving. Building it
// costs one dense eigendecomposition in dim d'^4; reuse it across targets.
class PicContext {
public:
  explicit PicContext(const NaimarkExtension &x);

  const NaimarkExtension &extension() const { return ext_; }
  int null_dim() const { return static_cast<int>(common_.null_basis.cols()); }

  // Hermitian-matrix coordinates shared by the constraint machinery.
  CMatrix from_coords(const RVector &coords) const;
  RVector to_coords(const CMatrix &j) const;

  const AffineSubspace &common() const { return common_; }
  const std::vector<int> &reduced_indices() const { return reduced_; }

private:
  NaimarkExtension ext_;
  AffineSubspace common_;
  std::vector<int> reduced_; // coordinates outside the forced kernel
};

/// Decides whether a system channel is POVM-incoherent with respect to the
/// POVM extended by x: a feasibility SDP over Choi matrices on the extension
/// space, solved as a maximal minimum-eigenvalue margin.
PicVerdict pic_feasibility(const ProcessMatrix &target, const PicContext &ctx,
                           const PicOptions &options = {});
PicVerdict pic_feasibility(const ProcessMatrix &target, const NaimarkExtension &x,
                           const PicOptions &options = {});
PicVerdict pic_feasibility(const std::vector<CMatrix> &target_kraus,
                           const NaimarkExtension &x,
                           const PicOptions &options = {});

struct FmaxResult {
  double value = 0.0;
  ChoiMatrix choi;           // optimizing Choi matrix on the extension space
  ProcessMatrix channel;     // reconstructed system channel
  SdpStatus solver_status = SdpStatus::max_iterations;
};

/// Largest fidelity F(Lambda[rho], sigma) over POVM-incoherent channels,
/// via the SDP with the 2x2 fidelity block coupled to the Choi constraints.
FmaxResult fmax(const DensityMatrix &rho, const DensityMatrix &sigma,
                const PicContext &ctx, const PicOptions &options = {});
double fmax(const DensityMatrix &rho, const DensityMatrix &sigma,
            const NaimarkExtension &x, const PicOptions &options = {});

/// Fidelity of two states by the same SDP with no channel constraints;
/// an independent route to tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity_sdp(const DensityMatrix &rho, const DensityMatrix &sigma,
                    const PicOptions &options = {});

} // namespace povmcoh
