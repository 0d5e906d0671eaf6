#ifndef FFPAT_WAVE_HARMONIC_HPP
#define FFPAT_WAVE_HARMONIC_HPP

#include "ffpat/fields/grid.hpp"
#include "ffpat/wave/stepper.hpp"

namespace ffpat {

struct HarmonicStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Harmonic extension E(g): nodes strictly inside the unit disc are
/// replaced by the solution of the 5-point Dirichlet problem Δφ = 0 whose
/// boundary values are g at the neighbouring nodes outside the disc. Nodes
/// outside the disc keep g. Solved by CG; throws NumericalError if the
/// relative residual does not reach 1e-10 within 10 n iterations.
Field2D harmonic_extend(const Field2D& g, HarmonicStats* stats = nullptr);

/// (P × Q)(g, h) = ((g - φ) χ_Ω, h χ_Ω) for the harmonic extension φ of g|∂Ω.
InitialPair project_P(const Field2D& g, const Field2D& h, const Field2D& phi);

}  // namespace ffpat

#endif  // FFPAT_WAVE_HARMONIC_HPP
