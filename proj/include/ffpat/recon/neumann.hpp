#ifndef FFPAT_RECON_NEUMANN_HPP
#define FFPAT_RECON_NEUMANN_HPP

#include "ffpat/recon/recon_run.hpp"
#include "ffpat/wave/time_reversal.hpp"

namespace ffpat {

/// Neumann-series inversion of U_T from exterior final-time pressure g:
/// x_0 = 0, x_{k+1} = x_k + λ V_T (g - U_T x_k), so x_1 = λ V_T g.
/// Residuals are |g - U_T x_k| over the exterior; errors and snapshots
/// refer to the first component f1 on the object grid (options.truth).
/// The full final pair is returned through `final_pair` when given.
ReconRun neumann_series_recon(const WaveModel& model, const Field2D& g, double lambda,
                              const RunOptions& options, InitialPair* final_pair = nullptr);

}  // namespace ffpat

#endif  // FFPAT_RECON_NEUMANN_HPP
