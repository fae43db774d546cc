#ifndef LOGGAS_SAMPLING_ORACLE_HPP
#define LOGGAS_SAMPLING_ORACLE_HPP

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/grid_measure.hpp"

namespace loggas {

// Exact one-point correlation function of the N <= 3 ensemble by tensor
// midpoint quadrature of the unnormalized density over the remaining
// coordinates, normalized on the grid. `energy_offset` shifts the energy by a
// constant before exponentiating (cancels in the normalization; exposed as a
// stability knob). Throws for N > 3.
GridMeasure quadrature_oracle(const EnsembleSpec& spec, const GridSpec& grid,
                              double energy_offset = 0.0);

}  // namespace loggas

#endif
